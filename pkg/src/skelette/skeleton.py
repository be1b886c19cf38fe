"""Compact cell models of the conic Lagrangian and of the capped skeleton.

The truncated Lagrangian has cells C x cone(tau) and C x outer(tau), where C
is a base cell inside tau-perp, cone(tau) is the simplex conv(0, -v_i : i in
tau) and outer(tau) its face opposite the origin. The skeleton is

    cylinder = truncated Lagrangian x G
    collar   = outer cells x G x I
    cap      = outer cells x cone(G)

with G the four-vertex, four-edge phase circle.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complex import CellComplex
from .errors import Unsupported
from .fltz import refine_base
from .lattice.matrix import det
from .lattice.polytope import Polytope

PHASE_VERTICES = (("u", 1), ("u", -1), ("v", 1), ("v", -1))
PHASE_EDGES = tuple(("e", a, b) for a in (1, -1) for b in (1, -1))


def phase_boundary(g):
    """Occurrences of the faces of a phase-graph cell."""
    if g[0] != "e":
        return []
    _, a, b = g
    if a * b == 1:
        return [(("u", a), -1), (("v", b), 1)]
    return [(("v", b), -1), (("u", a), 1)]


def phase_cells():
    return [(g, 0) for g in PHASE_VERTICES] + [(g, 1) for g in PHASE_EDGES]


def fiber_boundary(kind, tau):
    out = []
    if kind == "cone":
        if tau:
            out.append((("outer", tau), 1))
        for j, i in enumerate(tau):
            out.append((("cone", tau[:j] + tau[j + 1:]), (-1) ** (j + 1)))
    elif len(tau) > 1:
        for j, i in enumerate(tau):
            out.append((("outer", tau[:j] + tau[j + 1:]), (-1) ** j))
    return out


def fiber_dim(kind, tau):
    return len(tau) if kind == "cone" else len(tau) - 1


def in_perp(fan, point, tau):
    return all(sum(Fraction(x) * v for x, v in zip(point, fan.rays[i])).denominator == 1
               for i in tau)


def orientation_sign(fan, cell, tau):
    """Sign of the conormal frame of (cell, tau) against the product frame.

    The conormal directions complete the base orientation to a positive basis
    of M; the sign compares the fiber generators -v_i (in ray order) with the
    negated conormal frame, which reduces to comparing v_i with it.
    """
    n = fan.rank
    if not tau:
        return 1
    if cell.dim == 0:
        d = det([list(fan.rays[i]) for i in tau])
        return 1 if d > 0 else -1
    if n == 2 and cell.dim == 1:
        dx, dy = cell.direction
        normal = (-dy, dx)
        v = fan.rays[tau[0]]
        return 1 if v[0] * normal[0] + v[1] * normal[1] > 0 else -1
    raise Unsupported("orientation frames are implemented for n <= 2")


class LagrangianComplex(CellComplex):
    """Truncated Lagrangian with reference orientations on its top cells."""

    def top_cells(self):
        return [c for c in self.cells if c.dim == self.n and c.label[2] == "cone"]

    def infinity_cells(self):
        return [c for c in self.cells if c.label[2] == "outer"]

    def interior_cells(self, k):
        return [c for c in self.cells if c.dim == k and c.label[2] == "cone"]


def lagrangian_complex(skel):
    fan = skel.fan
    torus = refine_base(skel)
    n = fan.rank
    cx = LagrangianComplex()
    cx.n = n
    cx.torus = torus
    cx.fan = fan
    cand = []
    for tau in fan.cones:
        t = tau.rays
        for c in torus.cells:
            if c.dim + len(t) > n or not in_perp(fan, c.point, t):
                continue
            kinds = ["cone"] + (["outer"] if t else [])
            for kind in kinds:
                cand.append((c.dim + fiber_dim(kind, t), c.id, kind, t))
    cand.sort(key=lambda x: (x[0], x[2] == "cone", x[3], x[1]))
    for dim, cid, kind, t in cand:
        occ = []
        for f, coeff, _ in torus.cells[cid].faces:
            occ.append((("lam", f, kind, t), coeff))
        for (k2, t2), coeff in fiber_boundary(kind, t):
            occ.append((("lam", cid, k2, t2), (-1) ** torus.cells[cid].dim * coeff))
        piece = "lambda" if kind == "cone" else "infinity"
        cx.add(("lam", cid, kind, t), dim, piece, occ)
    signs = {}
    for c in cx.cells:
        _, cid, kind, t = c.label
        base = torus.cells[cid]
        if base.dim + len(t) != n:
            continue
        s = orientation_sign(fan, base, t)
        signs[c.id] = s if kind == "cone" else s * (-1) ** base.dim
    cx.reorient(signs)
    cx.identifications = torus.identifications()
    return cx


# ---------------------------------------------------------------------------
# Newton data

@dataclass(frozen=True)
class PhaseComponent:
    kind: str
    choice: tuple = ()


@dataclass(frozen=True)
class NewtonData:
    delta: Polytope
    triangulation: tuple
    cone_K: tuple
    vertex_names: tuple

    def simplices_avoiding_origin(self):
        return [s for s in self.triangulation if "0" not in s]


def build_newton_data(fan):
    n = fan.rank
    pts = {"0": (0,) * (n + 2), "2eu": (0,) * n + (2, 0), "2ev": (0,) * n + (0, 2)}
    for i, v in enumerate(fan.rays):
        pts["v%d" % i] = tuple(v) + (0, 0)
    delta = Polytope(list(pts.values()))
    if delta.dim != n + 2:
        raise ValueError("Newton polytope has dimension %d" % delta.dim)
    tp = set()
    for c in fan.cones:
        names = tuple("v%d" % i for i in c.rays)
        tp.add(("0",) + names)
        if names:
            tp.add(names)
    tp = sorted(tp)
    te = [(), ("2eu",), ("2ev",), ("2eu", "2ev")]
    simplices = []
    for a in [()] + tp:
        for b in te:
            if a or b:
                simplices.append(a + b)
    simplices.sort(key=lambda s: (len(s), s))
    return NewtonData(delta, tuple(simplices), (n, n + 1),
                      tuple(sorted(pts.items())))


def phase_components(simplex):
    """Phase factor over a simplex, by which E-vertices it contains."""
    hu, hv = "2eu" in simplex, "2ev" in simplex
    if hu and hv:
        return [PhaseComponent("cylinder", (a, b)) for a in (1, -1) for b in (1, -1)]
    if hu:
        return [PhaseComponent("halfU", (a,)) for a in (1, -1)]
    if hv:
        return [PhaseComponent("halfV", (b,)) for b in (1, -1)]
    return [PhaseComponent("collapsed")]


# ---------------------------------------------------------------------------
# the capped skeleton

class SkeletonComplex(CellComplex):
    pass


def build_skeleton(fan, skel):
    if fan.rank > 2:
        raise Unsupported("skeleton cellulation is implemented for n <= 2")
    lam = lagrangian_complex(skel)
    n = fan.rank
    cx = SkeletonComplex()
    cx.n = n
    cx.lagrangian = lam
    cx.fan = fan
    cx.torus = lam.torus
    cx.identifications = lam.identifications
    gcells = phase_cells()
    outer = [c for c in lam.cells if c.label[2] == "outer"]

    def lam_occ(c):
        return [(lam.cells[f].label, lam.boundary[c.id].get(f, 0)) for f in sorted(lam.faces[c.id])]

    items = []
    for y in lam.cells:
        for g, gd in gcells:
            items.append((y.dim + gd, 0, y, g, gd))
    for x in outer:
        for g, gd in gcells:
            items.append((x.dim + gd + 1, 1, x, g, gd))
            items.append((x.dim + gd, 2, x, ("rim", g), gd))
            items.append((x.dim + gd + 1, 2, x, ("cone", g), gd))
        items.append((x.dim, 2, x, ("apex",), 0))
    items.sort(key=lambda t: (t[0], t[1], t[2].id, str(t[3])))
    for dim, kind, y, g, gd in items:
        sy = (-1) ** y.dim
        occ = []
        if kind == 0:
            occ += [(("cyl", fl, g), c) for fl, c in lam_occ(y)]
            occ += [(("cyl", y.label, h), sy * c) for h, c in phase_boundary(g)]
            cx.add(("cyl", y.label, g), dim, "cylinder", occ)
        elif kind == 1:
            occ += [(("col", fl, g), c) for fl, c in lam_occ(y)]
            occ += [(("col", y.label, h), sy * c) for h, c in phase_boundary(g)]
            s = (-1) ** (y.dim + gd)
            occ += [(("cap", y.label, ("rim", g)), s), (("cyl", y.label, g), -s)]
            cx.add(("col", y.label, g), dim, "collar", occ)
        else:
            occ += [(("cap", fl, g), c) for fl, c in lam_occ(y)]
            if g[0] == "rim":
                occ += [(("cap", y.label, ("rim", h)), sy * c) for h, c in phase_boundary(g[1])]
            elif g[0] == "cone":
                if gd == 0:
                    local = [(("rim", g[1]), 1), (("apex",), -1)]
                else:
                    local = [(("rim", g[1]), 1)]
                    local += [(("cone", h), -c) for h, c in phase_boundary(g[1])]
                occ += [(("cap", y.label, h), sy * c) for h, c in local]
            cx.add(("cap", y.label, g), dim, "cap", occ)
    twist = (-1) ** n
    if twist < 0:
        cx.reorient({c.id: -1 for c in cx.cells
                     if c.dim == n + 1 and c.piece in ("collar", "cap")})
    return cx


def phase_graph_complex():
    cx = CellComplex()
    for g in PHASE_VERTICES:
        cx.add(g, 0, "phase", [])
    for g in PHASE_EDGES:
        cx.add(g, 1, "phase", phase_boundary(g))
    return cx


def homology(cx):
    return cx.homology()


def euler_characteristic(cx):
    return cx.euler_characteristic()
