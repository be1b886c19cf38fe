"""Exact sheaf models on a stratified circle (n = 1 only).

A sheaf constructible for a finite set of points on the circle is a
representation of the exit-path poset: a graded vector space per point and
per arc, and restriction maps from each point to its two adjacent arcs.
These models give independent values for Hom Euler characteristics and
microstalks.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .consheaf import LineBundle, Skyscraper, StructureSheaf, line_bundle_polytope
from .errors import CarrierMismatch, Unsupported
from .lattice.matrix import inverse, matmul, rank


def _sign(d):
    return -1 if d % 2 else 1


@dataclass(frozen=True)
class StratifiedCircle:
    points: tuple

    @property
    def size(self):
        return len(self.points)

    def left_arc(self, j):
        return (j - 1) % self.size

    def right_arc(self, j):
        return j

    def arc_ends(self, j):
        a = self.points[j]
        b = self.points[j + 1] if j + 1 < self.size else 1 + self.points[0]
        return a, b


@dataclass
class ZigzagSheaf:
    circle: StratifiedCircle
    point_ranks: tuple   # per point: {degree: rank}
    arc_ranks: tuple     # per arc: {degree: rank}
    maps: dict = field(default_factory=dict)  # (point, "left"|"right", degree) -> matrix

    def chi_point(self, j):
        return sum(_sign(d) * r for d, r in self.point_ranks[j].items())

    def chi_arc(self, j):
        return sum(_sign(d) * r for d, r in self.arc_ranks[j].items())

    def restriction(self, j, side, degree):
        m = self.maps.get((j, side, degree))
        if m is not None:
            return m
        arc = self.circle.left_arc(j) if side == "left" else self.circle.right_arc(j)
        rows = self.arc_ranks[arc].get(degree, 0)
        cols = self.point_ranks[j].get(degree, 0)
        return [[0] * cols for _ in range(rows)]

    def monodromy(self):
        """Holonomy around the circle when all restrictions are invertible."""
        k = self.circle.size
        degs = sorted(set().union(*[set(r) for r in self.point_ranks + self.arc_ranks]))
        out = {}
        for d in degs:
            total = None
            for j in range(k):
                left = self.restriction(j, "left", d)
                right = self.restriction(j, "right", d)
                if not left or len(left) != len(left[0]) or rank(left) != len(left):
                    return None
                step = matmul(right, inverse(left))
                total = step if total is None else matmul(step, total)
            out[d] = total
        return out

    def check(self):
        """Every map has the shape its stalks dictate."""
        for (j, side, d), m in self.maps.items():
            arc = self.circle.left_arc(j) if side == "left" else self.circle.right_arc(j)
            if len(m) != self.arc_ranks[arc].get(d, 0):
                return False
            if m and len(m[0]) != self.point_ranks[j].get(d, 0):
                return False
        return True


def circle_for_fan(fan):
    if fan.rank != 1:
        raise Unsupported("zigzag models exist only for n = 1")
    pts = set()
    for (v,) in fan.rays:
        g = abs(v)
        pts.update(Fraction(j, g) for j in range(g))
    return StratifiedCircle(tuple(sorted(pts)))


def _interval_model(circle, a, b):
    """Pushforward of the extension by zero of the constant sheaf on (a, b),
    shifted into degree -1; for a == b the skyscraper at a in degree 0."""
    k = circle.size
    if a == b:
        pr = tuple({0: 1} if (a - floor(a)) == p else {} for p in circle.points)
        return ZigzagSheaf(circle, pr, tuple({} for _ in range(k)))
    point_basis = []
    for p in circle.points:
        ys = [p + t for t in range(ceil(a - p), floor(b - p) + 1) if a < p + t < b]
        point_basis.append(ys)
    arc_basis = []
    for j in range(k):
        lo, hi = circle.arc_ends(j)
        ys = [lo + t for t in range(ceil(a - lo), floor(b - hi) + 1)]
        arc_basis.append(ys)
    maps = {}
    for j in range(k):
        for side in ("left", "right"):
            arc = circle.left_arc(j) if side == "left" else circle.right_arc(j)
            m = [[0] * len(point_basis[j]) for _ in arc_basis[arc]]
            for c, y in enumerate(point_basis[j]):
                for r, start in enumerate(arc_basis[arc]):
                    lo, hi = circle.arc_ends(arc)
                    end = start + (hi - lo)
                    if (side == "right" and start == y) or (side == "left" and end == y):
                        m[r][c] = 1
            maps[(j, side, -1)] = m
    pr = tuple({-1: len(b_)} if b_ else {} for b_ in point_basis)
    ar = tuple({-1: len(b_)} if b_ else {} for b_ in arc_basis)
    return ZigzagSheaf(circle, pr, ar, maps)


def zigzag_model(fan, G):
    circle = circle_for_fan(fan)
    k = circle.size
    if isinstance(G, Skyscraper):
        ident = {(j, s, -1): [[1]] for j in range(k) for s in ("left", "right")}
        return ZigzagSheaf(circle, tuple({-1: 1} for _ in range(k)),
                           tuple({-1: 1} for _ in range(k)), ident)
    if isinstance(G, StructureSheaf):
        G = LineBundle((0,) * len(fan.rays))
    P = line_bundle_polytope(fan, G.coeffs)
    a = min(v[0] for v in P.vertices)
    b = max(v[0] for v in P.vertices)
    return _interval_model(circle, a, b)


def zigzag_hom_euler(A, B):
    """Ringel form of the exit-path quiver on graded Euler dimension vectors."""
    if A.circle != B.circle:
        raise CarrierMismatch("zigzag sheaves live on different stratified circles")
    c = A.circle
    total = 0
    for j in range(c.size):
        total += A.chi_point(j) * B.chi_point(j) + A.chi_arc(j) * B.chi_arc(j)
        total -= A.chi_point(j) * (B.chi_arc(c.left_arc(j)) + B.chi_arc(c.right_arc(j)))
    return total


def microstalk_euler(F, j, direction):
    """Euler characteristic of the microstalk at point j.

    For a positive covector the microstalk is the cone of the restriction to
    the arc on the left; for a negative covector, to the arc on the right.
    """
    side = "left" if direction > 0 else "right"
    arc = F.circle.left_arc(j) if side == "left" else F.circle.right_arc(j)
    degs = set(F.point_ranks[j]) | set(F.arc_ranks[arc])
    chi = 0
    for d in degs:
        m = F.restriction(j, side, d)
        r = rank(m) if m and m[0] else 0
        dim_p = F.point_ranks[j].get(d, 0)
        dim_a = F.arc_ranks[arc].get(d, 0)
        kernel = dim_p - r
        coker = dim_a - r
        chi += _sign(d) * (kernel - coker)
    return chi


def zero_section_euler(F, arc):
    return F.chi_arc(arc)
