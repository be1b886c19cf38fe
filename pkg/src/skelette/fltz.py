"""The conic Lagrangian built from a stacky fan, stratum by stratum.

For a cone sigma the subtorus sigma-perp is the set of theta in the torus with
<theta, v> integral for every generator v of sigma. The skeleton is the union
of sigma-perp x (-sigma) over all cones.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor

from .errors import ConeNotInFan, Unsupported
from .lattice.fan import Cone, ZERO_CONE, cone_membership
from .lattice.matrix import inverse, int_inverse, matmul, matvec, nullspace, solve
from .lattice.snf import smith_normal_form
from .torus import TorusComplex, reduce_point


@dataclass(frozen=True)
class TorusCosetUnion:
    ambient_dim: int
    direction: tuple
    coset_reps: tuple
    generators: tuple = field(repr=False)
    _U: tuple = field(repr=False, default=())
    _orders: tuple = field(repr=False, default=())

    @property
    def count(self):
        return len(self.coset_reps)

    @property
    def dim(self):
        return len(self.direction)

    def class_of(self, theta):
        """Component label of theta, or None if theta is not in the union."""
        y = [sum(Fraction(t) * v for t, v in zip(theta, g)) for g in self.generators]
        if any(t.denominator != 1 for t in y):
            return None
        z = matvec([list(r) for r in self._U], [int(t) for t in y]) if self._U else []
        return tuple(zi % d for zi, d in zip(z, self._orders))

    def component_of(self, theta):
        c = self.class_of(theta)
        if c is None:
            return None
        for i, rep in enumerate(self.coset_reps):
            if self.class_of(rep) == c:
                return i
        raise AssertionError("coset enumeration is incomplete")

    def contains(self, theta):
        return self.class_of(theta) is not None


def perp_subtorus(fan, sigma):
    """All theta with <theta, v> integral on the generators of sigma."""
    if not isinstance(sigma, Cone):
        sigma = Cone(tuple(sorted(sigma)))
    if sigma not in fan.cones:
        raise ConeNotInFan("cone %r is not in the fan" % (list(sigma.rays),))
    n = fan.rank
    if sigma.dim == 0:
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return TorusCosetUnion(n, ident, ((Fraction(0),) * n,), ())
    bt = [list(fan.rays[i]) for i in sigma.rays]
    k = len(bt)
    dec = smith_normal_form(bt)
    orders = tuple(dec.S[j, j] for j in range(k))
    u = [list(r) for r in dec.U.entries]
    uinv = int_inverse(u)
    b = [[bt[j][i] for j in range(k)] for i in range(n)]
    gram_inv = inverse(matmul(bt, b))
    lift = matmul(b, gram_inv)
    reps = []
    for c in product(*(range(d) for d in orders)):
        y = matvec(uinv, list(c))
        theta = reduce_point(matvec(lift, y))
        reps.append(theta)
    reps.sort()
    direction = tuple(tuple(v) for v in nullspace(bt, n))
    return TorusCosetUnion(n, direction, tuple(reps), tuple(tuple(r) for r in bt),
                           tuple(tuple(r) for r in u), orders)


@dataclass(frozen=True)
class FLTZStratum:
    cone: Cone
    component: int
    rep: tuple
    base_dim: int
    negated: bool = True

    @property
    def fiber_dim(self):
        return self.cone.dim


@dataclass
class FLTZSkeleton:
    fan: object
    strata: list
    perps: dict
    base_refinement: TorusComplex = None

    def stratum_of(self, theta, xi):
        """The stratum containing (theta, xi), or None."""
        sigma = cone_membership(self.fan, [-x for x in xi])
        comp = self.perps[sigma].component_of(theta)
        if comp is None:
            return None
        for s in self.strata:
            if s.cone == sigma and s.component == comp:
                return s
        return None

    def contains(self, theta, xi):
        return self.stratum_of(theta, xi) is not None

    def zero_section(self):
        return [s for s in self.strata if s.cone.dim == 0]

    def sample_point(self, stratum):
        """An exact point in the relative interior of a stratum."""
        perp = self.perps[stratum.cone]
        theta = list(stratum.rep)
        for j, d in enumerate(perp.direction):
            w = Fraction(1, 7 + 2 * j)
            theta = [t + w * x for t, x in zip(theta, d)]
        xi = [Fraction(0)] * self.fan.rank
        for j, i in enumerate(stratum.cone.rays):
            w = Fraction(1) + Fraction(j, 5)
            xi = [x - w * v for x, v in zip(xi, self.fan.rays[i])]
        return reduce_point(theta), tuple(xi)

    def check_disjoint(self):
        for s in self.strata:
            theta, xi = self.sample_point(s)
            hits = [t for t in self.strata if self._strictly_contains(t, theta, xi)]
            if hits != [s]:
                return False
        return True

    def _strictly_contains(self, s, theta, xi):
        sigma = cone_membership(self.fan, [-x for x in xi])
        return sigma == s.cone and self.perps[sigma].component_of(theta) == s.component

    def cells_of(self, stratum):
        """Base cells (ids) contained in the closure of the stratum's base."""
        perp = self.perps[stratum.cone]
        return [c.id for c in self.base_refinement.cells
                if c.dim <= stratum.base_dim
                and perp.component_of(c.point) == stratum.component]


@dataclass(frozen=True)
class LegendrianBoundary:
    strata: tuple

    @property
    def count(self):
        return len(self.strata)


def build_fltz(fan):
    perps = {}
    strata = []
    for sigma in fan.cones:
        perp = perp_subtorus(fan, sigma)
        perps[sigma] = perp
        for i, rep in enumerate(perp.coset_reps):
            strata.append(FLTZStratum(sigma, i, rep, fan.rank - sigma.dim))
    skel = FLTZSkeleton(fan, strata, perps)
    if fan.rank <= 2:
        skel.base_refinement = TorusComplex.from_rays(fan.rays, fan.rank)
    return skel


def boundary_legendrian(skel):
    return LegendrianBoundary(tuple(s for s in skel.strata if s.cone.dim))


def refine_base(skel):
    if skel.base_refinement is None:
        if skel.fan.rank > 2:
            raise Unsupported("base refinement is implemented for n <= 2")
        skel.base_refinement = TorusComplex.from_rays(skel.fan.rays, skel.fan.rank)
    return skel.base_refinement
