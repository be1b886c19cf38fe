"""Cycle checks on the truncated Lagrangian, the boundary at infinity, and
the Cap extension onto the capped skeleton."""

from dataclasses import dataclass, field
from functools import lru_cache

from .consheaf import LagrangianCycle, cc, mirror_function
from .errors import CycleConditionBroken
from .fltz import build_fltz
from .skeleton import PHASE_EDGES, build_skeleton, lagrangian_complex


def validate_cycle(c):
    """Interior codimension-one cells where the weighted boundary fails to cancel.

    An empty list means the cycle condition holds.
    """
    lam = c.complex
    bd = lam.boundary_of_chain(c.chain())
    return [lam.cells[f].label for f in bd if lam.cells[f].label[2] == "cone"]


@dataclass
class InfinityCycle:
    complex: object = field(repr=False, compare=False)
    weights: dict

    def __post_init__(self):
        self.weights = {k: v for k, v in sorted(self.weights.items()) if v}

    def __eq__(self, other):
        return isinstance(other, InfinityCycle) and self.weights == other.weights

    def chain(self):
        lam = self.complex
        return {lam.id(("lam", c, "outer", t)): w for (c, t), w in self.weights.items()}

    def violations(self):
        lam = self.complex
        return [lam.cells[f].label for f in lam.boundary_of_chain(self.chain())]

    def to_json(self):
        return [{"baseCellId": c, "coneRays": list(t), "weight": w}
                for (c, t), w in self.weights.items()]


def boundary_at_infinity(c):
    return InfinityCycle(c.complex, {(cid, t): w for (cid, t), w in c.weights.items() if t})


@dataclass
class CappedCycle:
    complex: object = field(repr=False, compare=False)
    weights: dict  # skeleton cell id -> weight

    def __post_init__(self):
        self.weights = {k: v for k, v in sorted(self.weights.items()) if v}

    def __eq__(self, other):
        return isinstance(other, CappedCycle) and self.weights == other.weights

    def __add__(self, other):
        out = dict(self.weights)
        for k, v in other.weights.items():
            out[k] = out.get(k, 0) + v
        return CappedCycle(self.complex, out)

    def piece(self, name):
        cells = self.complex.cells
        return {k: v for k, v in self.weights.items() if cells[k].piece == name}

    @property
    def cylinder(self):
        return self.piece("cylinder")

    @property
    def collar(self):
        return self.piece("collar")

    @property
    def cap(self):
        return self.piece("cap")

    def violations(self):
        return [self.complex.cells[f].label
                for f in self.complex.boundary_of_chain(self.weights)]

    def to_json(self):
        return {name: [{"cellId": k, "weight": v} for k, v in self.piece(name).items()]
                for name in ("cylinder", "collar", "cap")}


def cap(c, C):
    """Extend c across the cylinder, collar and cap with the global sign -1."""
    out = {}
    for (cid, tau), w in c.weights.items():
        top = ("lam", cid, "cone", tau)
        for g in PHASE_EDGES:
            out[C.id(("cyl", top, g))] = -w
        if tau:
            x = ("lam", cid, "outer", tau)
            for g in PHASE_EDGES:
                out[C.id(("col", x, g))] = -w
                out[C.id(("cap", x, ("cone", g)))] = -w
    result = CappedCycle(C, out)
    bad = result.violations()
    if bad:
        raise CycleConditionBroken("capped cycle has boundary on %d cells" % len(bad), cells=bad)
    return result


def support_complex(c, C):
    return C.subcomplex(list(c.weights))


@dataclass
class SkeletonBundle:
    fan: object
    fltz: object
    lagrangian: object
    skeleton: object


@lru_cache(maxsize=32)
def skeleton_bundle(fan):
    skel = build_fltz(fan)
    lam = lagrangian_complex(skel)
    sk = build_skeleton(fan, skel)
    # share the Lagrangian complex so cycle labels line up
    sk.lagrangian = lam
    return SkeletonBundle(fan, skel, lam, sk)


def cc_of(fan, G):
    b = skeleton_bundle(fan)
    phi = mirror_function(fan, G, b.fltz.base_refinement)
    return cc(phi, b.fltz, b.lagrangian)


def mirror_cycle(fan, G):
    b = skeleton_bundle(fan)
    return cap(cc_of(fan, G), b.skeleton)
