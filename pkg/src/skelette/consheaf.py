"""Constructible functions on the torus and their characteristic cycles.

A constructible function is an integer per open cell of the base cell
structure. Line bundles map to the Verdier dual of the pushforward of the
indicator of their closed moment polytope; for a closed convex polytope of
dimension d this is (-1)^d times the indicator of its relative interior.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor

from .errors import (CarrierMismatch, DegenerateCovector, NotNef,
                     RegionNotSubordinate, SupportEscapesLambda, Unsupported)
from .lattice.fan import cone_membership
from .lattice.matrix import dot, solve
from .lattice.polytope import Polytope
from .torus import TorusComplex, reduce_point


# ---------------------------------------------------------------------------
# coherent class descriptors

@dataclass(frozen=True)
class StructureSheaf:
    kind = "StructureSheaf"

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class LineBundle:
    coeffs: tuple
    kind = "LineBundle"

    def to_json(self):
        return {"kind": self.kind, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Skyscraper:
    point: tuple = None
    kind = "Skyscraper"

    def to_json(self):
        out = {"kind": self.kind}
        if self.point is not None:
            out["point"] = [str(x) for x in self.point]
        return out


def descriptor_from_json(data):
    kind = data["kind"]
    if kind == "StructureSheaf":
        return StructureSheaf()
    if kind == "LineBundle":
        return LineBundle(tuple(int(x) for x in data["coeffs"]))
    if kind == "Skyscraper":
        pt = data.get("point")
        return Skyscraper(tuple(Fraction(x) for x in pt) if pt is not None else None)
    raise ValueError("unknown sheaf kind %r" % kind)


# ---------------------------------------------------------------------------
# constructible functions

@dataclass(frozen=True)
class ConstructibleFunction:
    torus: TorusComplex = field(compare=False, repr=False)
    values: tuple
    presentation: str = field(default="open", compare=False)

    @classmethod
    def zero(cls, torus):
        return cls(torus, (0,) * len(torus.cells))

    @classmethod
    def indicator(cls, torus, cells):
        cells = set(cells)
        return cls(torus, tuple(int(c.id in cells) for c in torus.cells))

    @classmethod
    def from_closed(cls, torus, coeffs):
        """Build sum a_G * 1_{closure G} from a map cell id -> a_G."""
        vals = [0] * len(torus.cells)
        for g, a in coeffs.items():
            for f in torus.closure(g):
                vals[f] += a
        return cls(torus, tuple(vals), "closed")

    def _same(self, other):
        if self.torus.families != other.torus.families or len(self.values) != len(other.values):
            raise CarrierMismatch("functions live on different cell structures")

    def __add__(self, other):
        self._same(other)
        return ConstructibleFunction(self.torus, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, k):
        return ConstructibleFunction(self.torus, tuple(k * a for a in self.values))

    def __neg__(self):
        return (-1) * self

    def value(self, cid):
        return self.values[cid]

    def value_at(self, p):
        return self.values[self.torus.locate(p)]

    def support(self):
        return [i for i, v in enumerate(self.values) if v]

    def is_zero(self):
        return not any(self.values)

    def closed_coefficients(self):
        """Coefficients a_G with self = sum a_G 1_{closure G}."""
        cells = sorted(self.torus.cells, key=lambda c: -c.dim)
        a = {}
        for c in cells:
            above = sum(a[h] for h in a if h != c.id and c.id in self.torus.closure(h))
            coeff = self.values[c.id] - above
            if coeff:
                a[c.id] = coeff
        return a

    def dual(self):
        """Verdier dual; a face reached k times from a cell counts k times."""
        out = [0] * len(self.values)
        for g in self.torus.cells:
            v = self.values[g.id]
            if not v:
                continue
            sign = (-1) ** g.dim
            for f, _ in self.torus.lifts(g.id):
                out[f] += sign * v
        return ConstructibleFunction(self.torus, tuple(out))

    def to_json(self):
        return {"presentation": self.presentation,
                "values": [{"cellId": i, "value": v} for i, v in enumerate(self.values)]}


def euler_integral(phi, region=None, weighting="compact-support"):
    torus = phi.torus
    ids = list(range(len(torus.cells))) if region is None else sorted(set(region))
    if any(i < 0 or i >= len(torus.cells) for i in ids):
        raise RegionNotSubordinate("region names cells outside the carrier")
    if weighting == "compact-support":
        return sum(phi.values[i] * (-1) ** torus.cells[i].dim for i in ids)
    if weighting != "ordinary":
        raise ValueError("unknown weighting %r" % weighting)
    idset = set(ids)
    for i in ids:
        if not torus.closure(i) <= idset:
            raise RegionNotSubordinate("ordinary weighting needs a closed region")
    restricted = ConstructibleFunction(torus, tuple(v if i in idset else 0
                                                    for i, v in enumerate(phi.values)))
    total = 0
    for g, a in restricted.closed_coefficients().items():
        chi = sum((-1) ** torus.cells[f].dim for f in torus.closure(g))
        total += a * chi
    return total


def hom_euler(phi_a, phi_b):
    """Euler characteristic of Hom between the sheaves behind two functions."""
    phi_a._same(phi_b)
    d = phi_b.dual()
    return sum(a * b * (-1) ** c.dim
               for a, b, c in zip(phi_a.values, d.values, phi_a.torus.cells))


# ---------------------------------------------------------------------------
# the Euler-level mirror map

def nef_vertices(fan, coeffs):
    """Cone vertices m_sigma of a nef divisor; raises NotNef otherwise."""
    coeffs = tuple(int(a) for a in coeffs)
    if len(coeffs) != len(fan.rays):
        raise ValueError("need one coefficient per ray")
    verts = []
    for sigma in fan.maximal:
        a = [list(fan.rays[i]) for i in sigma.rays]
        m = solve(a, [-coeffs[i] for i in sigma.rays])
        for j, v in enumerate(fan.rays):
            if dot(m, v) < -coeffs[j]:
                raise NotNef("divisor %r is not nef on cone %r" % (list(coeffs), list(sigma.rays)))
        verts.append(m)
    return verts


def line_bundle_polytope(fan, coeffs):
    """Moment polytope {m : <m, v_i> >= -a_i}; raises NotNef if not nef."""
    return Polytope(nef_vertices(fan, coeffs))


def mirror_function(fan, G, torus=None):
    if torus is None:
        torus = TorusComplex.from_rays(fan.rays, fan.rank)
    n = fan.rank
    if isinstance(G, Skyscraper):
        return ConstructibleFunction(torus, ((-1) ** n,) * len(torus.cells))
    if isinstance(G, StructureSheaf):
        G = LineBundle((0,) * len(fan.rays))
    P = line_bundle_polytope(fan, G.coeffs)
    sign = (-1) ** P.dim
    lo, hi = P.bounding_box()
    vals = []
    for c in torus.cells:
        x = c.point
        ranges = [range(ceil(l - t), floor(h - t) + 1) for l, h, t in zip(lo, hi, x)]
        count = 0
        for k in _grid(ranges):
            if P.relint_contains([t + s for t, s in zip(x, k)]):
                count += 1
        vals.append(sign * count)
    return ConstructibleFunction(torus, tuple(vals))


def _grid(ranges):
    if not ranges:
        yield ()
        return
    for a in ranges[0]:
        for rest in _grid(ranges[1:]):
            yield (a,) + rest


# ---------------------------------------------------------------------------
# local Morse multiplicities

@dataclass(frozen=True)
class MicrolocalGerm:
    cell: int
    cone: tuple
    xi: tuple
    x: tuple


def _sup(v):
    return max(abs(t) for t in v)


def feature_radius(torus, x):
    """Half the sup-norm distance from x to the nearest line missing x."""
    best = Fraction(1, 2)
    for f in torus.families:
        t = f.value(x)
        gap = min(f.above(t) - t, t - f.below(t))
        best = min(best, gap / sum(abs(u) for u in f.normal))
    return best / 2


def local_multiplicity(phi, x, xi):
    """phi(x) minus the Euler integral of phi over a small slice below x."""
    torus = phi.torus
    x = tuple(Fraction(t) for t in x)
    xi = tuple(Fraction(t) for t in xi)
    if not any(xi):
        return phi.value_at(x)
    eps = feature_radius(torus, x)
    if torus.n == 1:
        y = (x[0] - (eps / 2) * (1 if xi[0] > 0 else -1),)
        return phi.value_at(x) - phi.value_at(y)
    if torus.n != 2:
        raise Unsupported("local multiplicities are implemented for n <= 2")
    through = torus.families_through(x)
    xx = dot(xi, xi)
    bound = eps * xx / _sup(xi)
    for f in through:
        d = f.direction()
        s = abs(dot(xi, d))
        if s:
            bound = min(bound, eps * s / _sup(d))
    delta = bound / 2
    y0 = tuple(a - delta * b / xx for a, b in zip(x, xi))
    w = (-xi[1], xi[0])
    t_lo, t_hi = None, None
    for k in range(2):
        if w[k] == 0:
            continue
        a = (x[k] - eps - y0[k]) / w[k]
        b = (x[k] + eps - y0[k]) / w[k]
        a, b = min(a, b), max(a, b)
        t_lo = a if t_lo is None else max(t_lo, a)
        t_hi = b if t_hi is None else min(t_hi, b)
    cuts = set()
    for f in through:
        s = dot(f.normal, w)
        if s:
            t = (dot(f.normal, x) - dot(f.normal, y0)) / s
            if t_lo < t < t_hi:
                cuts.add(t)
    pts = [t_lo] + sorted(cuts) + [t_hi]

    def at(t):
        return phi.value_at(tuple(a + t * b for a, b in zip(y0, w)))

    slice_chi = sum(at(t) for t in pts) - sum(at((a + b) / 2) for a, b in zip(pts, pts[1:]))
    return phi.value_at(x) - slice_chi


def make_germ(fan, torus, cell, cone, x=None, xi=None):
    cone = tuple(cone)
    if x is None:
        x = torus.cells[cell].point
    if xi is None:
        xi = [Fraction(0)] * fan.rank
        for j, i in enumerate(cone):
            xi = [a - (1 + Fraction(j, 3)) * v for a, v in zip(xi, fan.rays[i])]
    return MicrolocalGerm(cell, cone, tuple(Fraction(t) for t in xi), tuple(Fraction(t) for t in x))


def check_germ(fan, torus, germ):
    if torus.locate(germ.x) != germ.cell:
        raise ValueError("base point is not in the named cell")
    if cone_membership(fan, [-t for t in germ.xi]).rays != germ.cone:
        raise DegenerateCovector("covector %r is not interior to the negated cone %r"
                                 % ([str(t) for t in germ.xi], list(germ.cone)))


def cc_multiplicity(phi, germ, fan=None):
    if fan is not None:
        check_germ(fan, phi.torus, germ)
    elif germ.cone and not any(germ.xi):
        raise DegenerateCovector("zero covector on a nonzero cone")
    return local_multiplicity(phi, germ.x, germ.xi)


def random_point(torus, cid, rng):
    """A random rational point of the open cell ``cid``."""
    cell = torus.cells[cid]
    if cell.dim == 0:
        return cell.point
    verts = [tuple(torus.cells[f].point[k] + t[k] for k in range(torus.n))
             for f, t in torus.lifts(cid) if torus.cells[f].dim == 0]
    weights = [Fraction(rng.randint(1, 20)) for _ in verts]
    tot = sum(weights)
    p = tuple(sum(w * v[k] for w, v in zip(weights, verts)) / tot for k in range(torus.n))
    return reduce_point(p)


def random_covector(fan, cone, rng):
    xi = [Fraction(0)] * fan.rank
    for i in cone:
        w = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        xi = [a - w * v for a, v in zip(xi, fan.rays[i])]
    return tuple(xi)


# ---------------------------------------------------------------------------
# characteristic cycles

def _chamber_covectors(fan, torus, cell):
    """One covector per chamber of the conormal space of ``cell``."""
    n = torus.n
    if cell.dim == n:
        return []
    if n == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    if cell.dim == 1:
        dx, dy = cell.direction
        return [(Fraction(-dy), Fraction(dx)), (Fraction(dy), Fraction(-dx))]
    walls = []
    for f in torus.families_through(cell.point):
        u = f.normal
        walls += [u, tuple(-a for a in u)]
    walls.sort(key=_angle_key)
    out = []
    rays = [r for r in fan.rays]
    for a, b in zip(walls, walls[1:] + walls[:1]):
        for k in range(1, 20):
            xi = tuple(Fraction(p + k * q) for p, q in zip(a, b))
            if not any(xi[0] * r[1] - xi[1] * r[0] == 0 for r in rays):
                break
        out.append(xi)
    return out


def _angle_key(v):
    """Exact monotone stand-in for the polar angle (diamond angle)."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if y >= 0:
        return y / (x + y) if x >= 0 else 1 - x / (-x + y)
    return 2 - y / (-x - y) if x < 0 else 3 + x / (x - y)


@dataclass
class LagrangianCycle:
    complex: object = field(repr=False, compare=False)
    weights: dict

    def __post_init__(self):
        self.weights = {k: v for k, v in sorted(self.weights.items()) if v}

    def __add__(self, other):
        out = dict(self.weights)
        for k, v in other.weights.items():
            out[k] = out.get(k, 0) + v
        return LagrangianCycle(self.complex, out)

    def __rmul__(self, k):
        return LagrangianCycle(self.complex, {c: k * v for c, v in self.weights.items()})

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        return isinstance(other, LagrangianCycle) and self.weights == other.weights

    def weight(self, cell, cone):
        return self.weights.get((cell, tuple(cone)), 0)

    def chain(self):
        lam = self.complex
        return {lam.id(("lam", c, "cone", t)): w for (c, t), w in self.weights.items()}

    def to_json(self):
        return [{"baseCellId": c, "coneRays": list(t), "weight": w}
                for (c, t), w in self.weights.items()]


def cc(phi, skel, lam=None, check_support=True):
    """Characteristic cycle of phi, with the support precondition checked."""
    from .skeleton import in_perp, lagrangian_complex
    fan = skel.fan
    torus = phi.torus
    if lam is None:
        lam = lagrangian_complex(skel)
    weights = {}
    for c in lam.top_cells():
        _, cid, _, tau = c.label
        germ = make_germ(fan, torus, cid, tau)
        weights[(cid, tau)] = local_multiplicity(phi, germ.x, germ.xi)
    if check_support:
        for cell in torus.cells:
            for xi in _chamber_covectors(fan, torus, cell):
                sigma = cone_membership(fan, [-t for t in xi])
                m = local_multiplicity(phi, cell.point, xi)
                inside = (sigma.dim == fan.rank - cell.dim and in_perp(fan, cell.point, sigma.rays))
                expected = weights.get((cell.id, sigma.rays), 0) if inside else 0
                if m != expected:
                    raise SupportEscapesLambda(
                        "germ at cell %d with covector %r has multiplicity %d"
                        % (cell.id, [str(t) for t in xi], m),
                        cell=cell.id, covector=xi)
    return LagrangianCycle(lam, weights)
