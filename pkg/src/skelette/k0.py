"""Grothendieck-group bookkeeping for smooth toric Fano varieties.

Numerical classes are tracked through Euler pairings of line bundles, which
reduce to lattice-point counts of moment polytopes.
"""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import product

from .consheaf import LineBundle, line_bundle_polytope, nef_vertices
from .errors import BasisSearchFailed, NotNef, NotSmooth, Unsupported
from .lattice.matrix import IntMatrix, det, dot, rank, solve
from .lattice.polytope import lattice_points
from .lattice.snf import smith_normal_form


def require_smooth(fan):
    if not fan.is_smooth():
        raise NotSmooth("a maximal cone is not unimodular")


@lru_cache(maxsize=None)
def is_nef(fan, coeffs):
    try:
        nef_vertices(fan, coeffs)
    except NotNef:
        return False
    return True


def chi_line_bundle(fan, coeffs):
    # chi only depends on the linear equivalence class
    return _chi(fan, divisor_class(fan, tuple(int(a) for a in coeffs)))


@lru_cache(maxsize=None)
def _chi(fan, coeffs):
    """Holomorphic Euler characteristic of O(sum a_i D_i).

    Nef divisors count lattice points; others are reached by twisting with
    the anticanonical divisor and interpolating the degree-n polynomial.
    """
    if is_nef(fan, coeffs):
        return len(lattice_points(line_bundle_polytope(fan, coeffs)))
    n = fan.rank
    k = 1
    while not all(is_nef(fan, _twist(coeffs, k + j)) for j in range(n + 1)):
        k += 1
    xs = list(range(k, k + n + 1))
    ys = [len(lattice_points(line_bundle_polytope(fan, _twist(coeffs, x)))) for x in xs]
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(0 - xj, xi - xj)
        total += term
    assert total.denominator == 1
    return int(total)


def _twist(coeffs, k):
    return tuple(a + k for a in coeffs)


@dataclass(frozen=True)
class BoundaryClass:
    component: int
    twist: int
    kind: str  # "point" or "curve"

    def to_json(self):
        return {"kind": self.kind, "component": self.component, "twist": self.twist}


@dataclass(frozen=True)
class K0Lattice:
    rank: int
    basis: tuple
    gram: IntMatrix

    def to_json(self):
        return {"rank": self.rank, "basis": [b.to_json() for b in self.basis],
                "gram": self.gram.to_lists()}


@dataclass(frozen=True)
class K0Map:
    name: str
    matrix: IntMatrix


def divisor_class(fan, coeffs):
    """Canonical representative of sum a_i D_i modulo principal divisors."""
    n = fan.rank
    coeffs = list(coeffs)
    # the first maximal cone is unimodular, so its rays can be zeroed out
    idx = list(fan.maximal[0].rays)
    basis = [fan.rays[i] for i in idx]
    rhs = [-coeffs[i] for i in idx]
    m = solve(basis, rhs)
    return tuple(int(a + dot(m, v)) for a, v in zip(coeffs, fan.rays))


def _candidates(fan, bound):
    m = len(fan.rays)
    cands = sorted(product(range(bound + 1), repeat=m), key=lambda c: (sum(c), c))
    seen, out = set(), []
    for c in cands:
        key = divisor_class(fan, c)
        if key not in seen and is_nef(fan, c):
            seen.add(key)
            out.append(c)
    return out


def k0_toric(fan, order=None):
    """Numerical K0 of a smooth toric Fano variety with a nef line-bundle basis."""
    require_smooth(fan)
    basis = list(_nef_basis(fan))
    if order is not None:
        basis = [basis[i] for i in order]
    gram = [[chi_line_bundle(fan, tuple(b - a for a, b in zip(bi, bj))) for bj in basis]
            for bi in basis]
    if abs(det(gram)) != 1:
        raise BasisSearchFailed("gram matrix of the nef basis is not unimodular")
    return K0Lattice(len(basis), tuple(LineBundle(b) for b in basis), IntMatrix.from_rows(gram))


@lru_cache(maxsize=32)
def _nef_basis(fan):
    target = len(fan.maximal)
    for bound in (2, 3, 4):
        cands = _candidates(fan, bound)
        basis, rows = [], []
        for c in cands:
            # pairing vector chi(O(c), O(s)) against every candidate s
            vec = [chi_line_bundle(fan, tuple(t - a for a, t in zip(c, s))) for s in cands]
            if rank(rows + [vec]) > len(rows):
                basis.append(c)
                rows.append(vec)
            if len(basis) == target:
                break
        if len(basis) == target:
            break
    else:
        raise BasisSearchFailed("no nef basis of the expected rank")
    return tuple(basis)


def intersection_matrix(fan):
    """D_i . D_j for a smooth complete toric surface."""
    m = len(fan.rays)
    inter = [[0] * m for _ in range(m)]
    for c in fan.maximal:
        i, j = c.rays
        inter[i][j] = inter[j][i] = 1
    for i, v in enumerate(fan.rays):
        mvec = next(e for e in ([1, 0], [0, 1]) if dot(e, v))
        s = Fraction(-sum(dot(mvec, fan.rays[j]) * inter[i][j] for j in range(m) if j != i),
                     dot(mvec, v))
        inter[i][i] = int(s)
    return inter


def boundary_k0(fan):
    """K0 of the toric boundary, as the sum over its components."""
    require_smooth(fan)
    if fan.rank == 1:
        basis = tuple(BoundaryClass(i, 0, "point") for i in range(len(fan.rays)))
        gram = [[int(i == j) for j in range(len(basis))] for i in range(len(basis))]
    elif fan.rank == 2:
        basis = tuple(BoundaryClass(i, e, "curve") for i in range(len(fan.rays)) for e in (0, 1))
        gram = [[0] * len(basis) for _ in basis]
        for a, x in enumerate(basis):
            for b, y in enumerate(basis):
                if x.component == y.component:
                    gram[a][b] = y.twist - x.twist + 1
    else:
        raise Unsupported("boundary K0 is implemented for n <= 2")
    return K0Lattice(len(basis), basis, IntMatrix.from_rows(gram))


def _pair_with_pushforward(fan, lattice_s, f):
    """chi(b_i, i_* f (x) O(P)) for every basis element b_i of K0(S)."""
    out = []
    if fan.rank == 1:
        return [1] * lattice_s.rank
    inter = intersection_matrix(fan)
    for b in lattice_s.basis:
        div = [1 - a for a in b.coeffs]
        deg = sum(div[k] * inter[k][f.component] for k in range(len(div)))
        out.append(f.twist + deg + 1)
    return out


def k_times(fan, lattice_s=None, lattice_p=None):
    """Matrix of F -> (i_P)_* F (x) O(P)[-1] from K0(P) to K0(S)."""
    lattice_s = lattice_s or k0_toric(fan)
    lattice_p = lattice_p or boundary_k0(fan)
    g = [list(r) for r in lattice_s.gram.entries]
    cols = []
    for f in lattice_p.basis:
        y = _pair_with_pushforward(fan, lattice_s, f)
        x = solve(g, y)
        if any(t.denominator != 1 for t in x):
            raise BasisSearchFailed("pushforward class is not integral in the basis")
        cols.append([-int(t) for t in x])
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(lattice_s.rank)]
    return K0Map("k_times", IntMatrix.from_rows(mat, len(cols)))


@dataclass(frozen=True)
class PushoutPresentation:
    rank: int
    torsion: tuple
    matrix: IntMatrix

    def to_json(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


def pushout_presentation(fan, zero_k=False, order=None):
    """Cokernel of (i^*, -k_times): K0(D) -> K0(H) + K0(X)."""
    ls = k0_toric(fan, order=order)
    lp = boundary_k0(fan)
    rp, rs = lp.rank, ls.rank
    kt = k_times(fan, ls, lp).matrix
    rows = []
    for i in range(rp):
        rows.append([int(i == j) for j in range(rp)])
    for i in range(rs):
        rows.append([0 if zero_k else -kt[i, j] for j in range(rp)])
    mat = IntMatrix.from_rows(rows, rp)
    diag = smith_normal_form(mat).diagonal
    r = sum(1 for d in diag if d)
    return PushoutPresentation(rp + rs - r, tuple(d for d in diag if d > 1), mat)


def sod_rank_check(fan):
    ls = k0_toric(fan)
    lp = boundary_k0(fan)
    x = ls.rank        # K0(S x G_m) has the rank of K0(S)
    d = lp.rank        # K0(P x G_m)
    h = lp.rank        # K0(P x {1})
    codim = (fan.rank + 1) - (fan.rank - 1)
    blow_up = x + (codim - 1) * h
    pres = pushout_presentation(fan)
    return {"ranks": {"S": ls.rank, "P": lp.rank, "X": x, "D": d, "H": h,
                      "BlowUp": blow_up, "XCirc": pres.rank},
            "sodCheck": blow_up == x + h,
            "cokernel": pres.to_json()}
