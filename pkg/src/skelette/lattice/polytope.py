"""Convex polytopes with exact vertex and facet descriptions."""

from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor

from ..errors import Unbounded
from .matrix import dot, nullspace, primitive, rank, solve


def _vec(p):
    return tuple(Fraction(x) for x in p)


class Polytope:
    """Convex hull of finitely many rational points.

    Inequalities are stored as (a, b) meaning a.x <= b, equations as (w, c)
    meaning w.x == c. An optional H-representation passed at construction is
    checked against the hull.
    """

    def __init__(self, points, inequalities=None, dim=None):
        pts = sorted({_vec(p) for p in points})
        if pts:
            dim = len(pts[0])
        if dim is None:
            raise ValueError("ambient dimension unknown for empty polytope")
        self.ambient_dim = dim
        self._points = pts
        self._hull()
        if inequalities is not None:
            other = Polytope.from_inequalities(inequalities, dim)
            if other.vertices != self.vertices:
                raise ValueError("V- and H-representations disagree")

    @classmethod
    def from_inequalities(cls, inequalities, dim):
        """Vertices of {x : a.x <= b for all (a, b)}; raises Unbounded."""
        ineqs = [(_vec(a), Fraction(b)) for a, b in inequalities]
        normals = [a for a, _ in ineqs]
        if rank([list(a) for a in normals]) < dim:
            if cls._feasible(ineqs, dim):
                raise Unbounded("inequalities do not cut out a bounded set")
            return cls([], dim=dim)
        verts = set()
        for sub in combinations(range(len(ineqs)), dim):
            a = [list(ineqs[i][0]) for i in sub]
            if rank(a) < dim:
                continue
            x = solve(a, [ineqs[i][1] for i in sub])
            if all(dot(ai, x) <= bi for ai, bi in ineqs):
                verts.add(tuple(x))
        if verts and not Polytope(normals).interior_contains([0] * dim):
            raise Unbounded("inequalities do not cut out a bounded set")
        return cls(sorted(verts), dim=dim)

    @staticmethod
    def _feasible(ineqs, dim):
        # the feasible set, if nonempty, meets the span of the normals, where
        # it is pointed and therefore has a vertex cut out by r constraints
        normals = [a for a, _ in ineqs]
        r = rank([list(a) for a in normals])
        if r == 0:
            return all(b >= 0 for _, b in ineqs)
        basis = _row_basis(normals)
        for choice in combinations(range(len(ineqs)), r):
            a = [list(ineqs[i][0]) for i in choice]
            if rank(a) < r:
                continue
            coeffs = [[dot(ai, bk) for bk in basis] for ai in a]
            c = solve(coeffs, [ineqs[i][1] for i in choice])
            x = [sum(ci * bk[j] for ci, bk in zip(c, basis)) for j in range(dim)]
            if all(dot(ai, x) <= bi for ai, bi in ineqs):
                return True
        return False

    def _hull(self):
        pts = self._points
        n = self.ambient_dim
        self.equations = []
        self.inequalities = []
        if not pts:
            self.dim = -1
            self.vertices = []
            return
        p0 = pts[0]
        dirs = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
        d = rank(dirs) if dirs else 0
        self.dim = d
        span = _row_basis(dirs) if d else []
        for w in nullspace(span, n) if span else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]:
            w = primitive(w)
            self.equations.append((w, dot(w, p0)))
        if d == 0:
            self.vertices = [p0]
            return
        facets = set()
        for sub in combinations(range(len(pts)), d):
            base = pts[sub[0]]
            rel = [[x - y for x, y in zip(pts[i], base)] for i in sub[1:]]
            # normal a = sum c_k span_k orthogonal to rel
            m = [[dot(r, s) for s in span] for r in rel]
            ns = nullspace(m, d) if m else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
            if len(ns) != 1:
                continue
            a = [sum(c * s[j] for c, s in zip(ns[0], span)) for j in range(n)]
            a = primitive(a)
            b = dot(a, base)
            vals = [dot(a, p) - b for p in pts]
            if all(v <= 0 for v in vals):
                facets.add((a, b))
            elif all(v >= 0 for v in vals):
                facets.add((tuple(-x for x in a), -b))
        self.inequalities = sorted(facets)
        verts = []
        for p in pts:
            tight = [list(a) for a, b in self.inequalities if dot(a, p) == b]
            if rank(tight) == d:
                verts.append(p)
        self.vertices = verts

    def contains(self, x):
        x = _vec(x)
        if self.dim < 0:
            return False
        return (all(dot(w, x) == c for w, c in self.equations)
                and all(dot(a, x) <= b for a, b in self.inequalities))

    def relint_contains(self, x):
        x = _vec(x)
        if self.dim < 0:
            return False
        return (all(dot(w, x) == c for w, c in self.equations)
                and all(dot(a, x) < b for a, b in self.inequalities))

    def interior_contains(self, x):
        return self.dim == self.ambient_dim and self.relint_contains(x)

    def facet_vertices(self):
        """Vertex index sets of the facets, sorted."""
        out = []
        for a, b in self.inequalities:
            out.append(tuple(i for i, v in enumerate(self.vertices) if dot(a, v) == b))
        return sorted(out)

    def bounding_box(self):
        lo = [min(v[k] for v in self.vertices) for k in range(self.ambient_dim)]
        hi = [max(v[k] for v in self.vertices) for k in range(self.ambient_dim)]
        return lo, hi

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __repr__(self):
        return "Polytope(dim=%d, vertices=%d)" % (self.dim, len(self.vertices))


def _row_basis(rows):
    basis = []
    for r in rows:
        if rank(basis + [list(r)]) > len(basis):
            basis.append(list(r))
    return basis


def lattice_points(P):
    """All integer points of P by bounding-box scan and H-membership."""
    if isinstance(P, (list, tuple)):
        P = Polytope.from_inequalities(P[0], P[1])
    if P.dim < 0:
        return []
    lo, hi = P.bounding_box()
    ranges = [range(ceil(a), floor(b) + 1) for a, b in zip(lo, hi)]
    return [p for p in product(*ranges) if P.contains(p)]
