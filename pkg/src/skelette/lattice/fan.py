"""Simplicial complete Fano stacky fans."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..errors import (ConeNotInFan, DuplicateRay, FanError, InconsistentFaces,
                      NotComplete, NotFano, NotSimplicial)
from .matrix import det, dot, nullspace, rank, solve
from .polytope import Polytope


@dataclass(frozen=True, order=True)
class Cone:
    rays: tuple = ()

    @property
    def ray_indices(self):
        return self.rays

    @property
    def dim(self):
        return len(self.rays)

    def faces(self):
        for k in range(len(self.rays) + 1):
            for sub in combinations(self.rays, k):
                yield Cone(sub)

    def __contains__(self, i):
        return i in self.rays


ZERO_CONE = Cone(())


@dataclass(frozen=True)
class StackyFan:
    rank: int
    rays: tuple
    cones: tuple
    maximal: tuple = field(compare=False)
    polytope: Polytope = field(compare=False, repr=False)

    @property
    def n(self):
        return self.rank

    def ray(self, i):
        return self.rays[i]

    def cone(self, rays):
        c = Cone(tuple(sorted(rays)))
        if c not in self.cones:
            raise ConeNotInFan("cone %r is not in the fan" % (list(c.rays),))
        return c

    def nonzero_cones(self):
        return [c for c in self.cones if c.dim]

    @property
    def triangulation(self):
        """Maximal simplices of the star triangulation: origin plus a cone."""
        return tuple(("origin",) + c.rays for c in self.maximal)

    def is_smooth(self):
        return all(abs(det([list(self.rays[i]) for i in c.rays])) == 1
                   for c in self.maximal)

    def summary(self):
        return "Fano, complete, %d rays" % len(self.rays)

    def to_json(self):
        return {"rank": self.rank, "rays": [list(r) for r in self.rays],
                "cones": [list(c.rays) for c in self.maximal]}


def _sides(fan_rays, facet, apex):
    """Sign of ``apex`` relative to the hyperplane spanned by ``facet``."""
    n = len(fan_rays[0])
    rows = [list(fan_rays[i]) for i in facet]
    w = nullspace(rows, n)[0] if rows else [Fraction(1)]
    return 1 if dot(w, fan_rays[apex]) > 0 else -1


def _coefficients(fan_rays, cone, x):
    a = [[fan_rays[i][k] for i in cone] for k in range(len(x))]
    return solve(a, list(x))


def validate_stacky_fan(rays, cones, rank_=None):
    """Check the raw data and return a StackyFan, or raise a FanError."""
    rays = [tuple(int(x) for x in r) for r in rays]
    if not rays:
        raise FanError("no rays")
    n = rank_ if rank_ is not None else len(rays[0])
    for r in rays:
        if len(r) != n:
            raise InconsistentFaces("ray %r has the wrong dimension" % (r,))
        if not any(r):
            raise FanError("zero ray")
    if len(set(rays)) != len(rays):
        raise DuplicateRay("repeated ray generator")
    if not cones:
        raise InconsistentFaces("empty cone list")
    raw = set()
    for c in cones:
        c = tuple(sorted(int(i) for i in c))
        if len(set(c)) != len(c) or any(i < 0 or i >= len(rays) for i in c):
            raise InconsistentFaces("cone %r references invalid rays" % (c,))
        raw.add(c)
    for c in raw:
        if rank([list(rays[i]) for i in c]) < len(c):
            raise NotSimplicial("cone %r has dependent rays" % (c,))
    all_cones = set()
    for c in raw:
        for k in range(len(c) + 1):
            all_cones.update(combinations(c, k))
    maximal = sorted(c for c in all_cones
                     if not any(set(c) < set(d) for d in all_cones))
    used = {i for c in maximal for i in c}
    if used != set(range(len(rays))):
        raise InconsistentFaces("some rays lie in no cone")
    for c in maximal:
        if len(c) != n:
            raise NotComplete("maximal cone %r is not full-dimensional" % (c,))
    _check_complete(rays, maximal, n)
    P = Polytope(rays)
    _check_fano(rays, maximal, P, n)
    cone_objs = tuple(sorted((Cone(c) for c in all_cones), key=lambda c: (c.dim, c.rays)))
    return StackyFan(n, tuple(rays), cone_objs, tuple(Cone(c) for c in maximal), P)


def _check_complete(rays, maximal, n):
    facets = {}
    for c in maximal:
        for i in c:
            f = tuple(j for j in c if j != i)
            facets.setdefault(f, []).append((c, _sides(rays, f, i)))
    for f, owners in sorted(facets.items()):
        if len(owners) == 1:
            raise NotComplete("facet %r lies on the boundary of the support" % (f,))
        if len(owners) > 2:
            raise InconsistentFaces("facet %r is shared by %d maximal cones" % (f, len(owners)))
        if owners[0][1] == owners[1][1]:
            raise NotComplete("cones %r and %r fold over facet %r"
                              % (owners[0][0], owners[1][0], f))
    # the facet matching makes the covering degree constant; count it at one
    # generic point of the first cone
    first = maximal[0]
    for shift in range(1, 50):
        weights = [Fraction(1) + Fraction(k, n + shift) for k in range(n)]
        x = [sum(w * rays[i][k] for w, i in zip(weights, first)) for k in range(n)]
        hits, boundary = 0, False
        for c in maximal:
            coef = _coefficients(rays, c, x)
            if all(t > 0 for t in coef):
                hits += 1
            elif all(t >= 0 for t in coef):
                boundary = True
        if not boundary:
            break
    if hits != 1:
        raise InconsistentFaces("maximal cones overlap (covering degree %d)" % hits)


def _check_fano(rays, maximal, P, n):
    if not P.interior_contains([0] * n):
        raise NotFano("origin is not interior to the ray polytope")
    verts = set(P.vertices)
    for r in rays:
        if tuple(Fraction(x) for x in r) not in verts:
            raise NotFano("ray %r is not a vertex of the ray polytope" % (r,))
    for c in maximal:
        if not any(all(dot(a, rays[i]) == b for i in c) for a, b in P.inequalities):
            raise NotFano("cone %r is not the cone over a facet" % (c,))


def cone_membership(fan, x):
    """The unique cone whose relative interior contains x."""
    x = [Fraction(t) for t in x]
    if not any(x):
        return ZERO_CONE
    for c in fan.maximal:
        coef = _coefficients(fan.rays, c.rays, x)
        if all(t >= 0 for t in coef):
            return Cone(tuple(i for i, t in zip(c.rays, coef) if t > 0))
    raise NotComplete("point %r is not covered" % (x,))


def fan_from_json(data):
    return validate_stacky_fan(data["rays"], data["cones"], data.get("rank"))
