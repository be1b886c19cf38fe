from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skelette.errors import (ConeNotInFan, DuplicateRay, NotComplete, NotFano,
                             NotSimplicial, Unbounded)
from skelette.lattice import (Cone, IntMatrix, Polytope, cone_membership, lattice_points,
                              smith_normal_form, validate_stacky_fan)
from skelette.lattice import snf as snf_mod
from skelette.lattice.matrix import det, inverse, nullspace, rank, solve
from skelette.lattice.snf import invariant_factors, snf_raw

small = st.integers(-9, 9)


@st.composite
def int_matrices(draw, max_dim=5, elements=small):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(elements) for _ in range(n)] for _ in range(m)]


def _check_decomposition(a, dec):
    A = IntMatrix.from_rows(a)
    assert dec.U @ A @ dec.V == dec.S
    assert dec.S.is_diagonal()
    assert abs(dec.U.det()) == 1 and abs(dec.V.det()) == 1
    d = dec.diagonal
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_small_example():
    dec = smith_normal_form([[2, 4], [6, 8]])
    assert dec.diagonal == [2, 4]
    _check_decomposition([[2, 4], [6, 8]], dec)


def test_snf_torsion_of_rp2_boundary():
    # the attaching map of the 2-cell of RP^2 is multiplication by 2
    assert invariant_factors([[2]], 1) == [2]
    assert invariant_factors([[0, 0], [0, 0]], 2) == []


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_snf_is_a_valid_decomposition(a):
    for backend in ("python", snf_mod.BACKEND):
        _check_decomposition(a, smith_normal_form(a, backend=backend))


@settings(max_examples=150, deadline=None)
@given(int_matrices())
def test_backends_agree(a):
    m, n = len(a), len(a[0])
    assert snf_raw(a, m, n, True, "python") == snf_raw(a, m, n, True, "compiled")


@settings(max_examples=100, deadline=None)
@given(int_matrices(max_dim=4))
def test_rank_of_snf_matches_rank(a):
    assert smith_normal_form(a).rank == rank(a)


def test_overflow_falls_back_to_python():
    big = 1 << 61
    a = [[big, 3], [5, big]]
    dec = smith_normal_form(a, backend="compiled")
    _check_decomposition(a, dec)
    assert dec.diagonal == smith_normal_form(a, backend="python").diagonal


def test_huge_entries_skip_the_kernel():
    a = [[1 << 80, 2], [2, 6]]
    _check_decomposition(a, smith_normal_form(a))


def test_matrix_helpers():
    a = [[2, 1], [1, 1]]
    assert det(a) == 1
    assert inverse(a) == [[1, -1], [-1, 2]]
    assert solve(a, [3, 2]) == [1, 1]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2
    assert all(sum(v) == 0 for v in ns)


def test_simplex_lattice_points():
    P = Polytope([(0, 0), (2, 0), (0, 2)])
    assert P.dim == 2
    assert len(lattice_points(P)) == 6
    assert P.relint_contains((Fraction(1, 2), Fraction(1, 2)))
    assert not P.relint_contains((0, 1))


def test_segment_in_the_plane():
    P = Polytope([(0, 0), (2, 2)])
    assert P.dim == 1
    assert len(lattice_points(P)) == 3
    assert P.relint_contains((1, 1))
    assert not P.relint_contains((0, 0))


def test_from_inequalities():
    P = Polytope.from_inequalities([((-1, 0), 0), ((0, -1), 0), ((1, 1), 3)], 2)
    assert len(lattice_points(P)) == 10
    with pytest.raises(Unbounded):
        Polytope.from_inequalities([((-1, 0), 0), ((0, -1), 0)], 2)
    empty = Polytope.from_inequalities([((1,), -1), ((-1,), -1)], 1)
    assert lattice_points(empty) == []


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5),
       st.sampled_from([[[1, 0], [0, 1]], [[1, 1], [0, 1]], [[0, -1], [1, 0]], [[2, 1], [1, 1]],
                        [[1, 0], [3, 1]]]),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_lattice_point_count_is_unimodular_invariant(pts, g, shift):
    moved = [tuple(g[i][0] * x + g[i][1] * y + shift[i] for i in range(2)) for x, y in pts]
    assert len(lattice_points(Polytope(pts))) == len(lattice_points(Polytope(moved)))


def test_p1_fan(p1):
    assert p1.summary() == "Fano, complete, 2 rays"
    assert len(p1.cones) == 3
    assert p1.is_smooth()


def test_p2_fan(p2):
    assert len(p2.cones) == 7
    assert len(p2.maximal) == 3
    assert cone_membership(p2, [1, 1]) == Cone((0, 1))
    assert cone_membership(p2, [1, 0]) == Cone((0,))
    assert cone_membership(p2, [0, 0]) == Cone(())


def test_cone_lookup(p2):
    assert p2.cone((1, 0)).rays == (0, 1)
    with pytest.raises(ConeNotInFan):
        p2.cone((0, 1, 2))


def test_stacky_fan_is_not_smooth(stacky):
    assert not stacky.is_smooth()
    assert stacky.rays == ((2,), (-1,))


@pytest.mark.parametrize("rays,cones,err", [
    ([[1], [2]], [[0], [1]], NotComplete),
    ([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2]], NotComplete),
    ([[1, 0], [0, 1], [-1, 0], [0, -1]], [[0, 1, 2], [2, 3]], NotSimplicial),
    ([[1, 0], [0, 1], [-1, 3], [0, -1]], [[0, 1], [1, 2], [2, 3], [0, 3]], NotFano),
    ([[1], [1], [-1]], [[0], [1], [2]], DuplicateRay),
])
def test_validation_errors(rays, cones, err):
    with pytest.raises(err) as info:
        validate_stacky_fan(rays, cones)
    assert info.value.invariant == err.invariant


def test_ray_permutation_gives_equivalent_fan():
    a = validate_stacky_fan([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]])
    b = validate_stacky_fan([[-1, -1], [1, 0], [0, 1]], [[1, 2], [2, 0], [1, 0]])
    assert sorted(a.rays) == sorted(b.rays)
    assert len(a.cones) == len(b.cones)


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    env = dict(os.environ, SKELETTE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c",
                          "from skelette.lattice.snf import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"


@settings(max_examples=60, deadline=None)
@given(int_matrices(max_dim=5))
def test_invariant_factors_match_sympy(a):
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    s = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
    expected = [abs(int(s[i, i])) for i in range(min(s.shape)) if s[i, i] != 0]
    assert invariant_factors(a, len(a[0])) == expected
