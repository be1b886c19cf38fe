from fractions import Fraction

import pytest

from skelette.errors import Unsupported
from skelette.fltz import boundary_legendrian, build_fltz, perp_subtorus, refine_base
from skelette.lattice import Cone, validate_stacky_fan
from skelette.torus import TorusComplex


@pytest.mark.parametrize("name,census", [
    ("p1", [1, 1]), ("stacky", [2, 2]), ("p2", [1, 3, 2]), ("p1xp1", [1, 2, 1]),
])
def test_torus_census(fans, name, census):
    f = fans[name]
    tc = TorusComplex.from_rays(f.rays, f.rank)
    assert [len(tc.cells_of_dim(d)) for d in range(f.rank + 1)] == census
    assert tc.euler_characteristic() == 0


def test_torus_faces_reach_vertices(p2):
    tc = TorusComplex.from_rays(p2.rays, 2)
    for c in tc.cells_of_dim(2):
        verts = [f for f, _ in tc.lifts(c.id) if tc.cells[f].dim == 0]
        assert len(verts) == 3
    assert tc.identifications()


def test_torus_rank_three_is_unsupported():
    with pytest.raises(Unsupported):
        TorusComplex.from_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)], 3)


@pytest.mark.parametrize("name,strata,boundary", [
    ("p1", 3, 2), ("stacky", 4, 3), ("p2", 7, 6), ("p1xp1", 9, 8),
])
def test_fltz_census(fans, name, strata, boundary):
    skel = build_fltz(fans[name])
    assert len(skel.strata) == strata
    assert boundary_legendrian(skel).count == boundary
    assert skel.check_disjoint()


def test_stacky_perp_components(stacky):
    perp = perp_subtorus(stacky, Cone((0,)))
    assert perp.count == 2
    assert sorted(perp.coset_reps) == [(Fraction(0),), (Fraction(1, 2),)]
    assert perp_subtorus(stacky, Cone((1,))).count == 1
    assert perp_subtorus(stacky, Cone(())).dim == 1


def test_perp_of_maximal_cone_is_a_point(p2):
    perp = perp_subtorus(p2, Cone((0, 1)))
    assert perp.dim == 0 and perp.count == 1


def test_stratum_lookup(p1):
    skel = build_fltz(p1)
    s = skel.stratum_of((Fraction(1, 3),), (0,))
    assert s is not None and s.cone == Cone(())
    assert skel.stratum_of((Fraction(0),), (Fraction(-2),)).cone == Cone((0,))
    assert skel.stratum_of((Fraction(1, 3),), (Fraction(-2),)) is None


def test_sample_points_lie_in_their_strata(p1xp1):
    skel = build_fltz(p1xp1)
    for s in skel.strata:
        theta, xi = skel.sample_point(s)
        assert skel.stratum_of(theta, xi) == s


def test_rank_three_fltz_has_strata_but_no_refinement():
    f = validate_stacky_fan([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]],
                            [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    skel = build_fltz(f)
    assert len(skel.strata) == 15
    with pytest.raises(Unsupported):
        refine_base(skel)
