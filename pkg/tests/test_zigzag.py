import pytest

from skelette.consheaf import (LineBundle, MicrolocalGerm, Skyscraper, StructureSheaf,
                               cc_multiplicity, hom_euler, mirror_function)
from skelette.cycles import skeleton_bundle
from skelette.errors import CarrierMismatch, Unsupported
from skelette.zigzag import (circle_for_fan, microstalk_euler, zero_section_euler,
                             zigzag_hom_euler, zigzag_model)


def line_bundles(d):
    return [LineBundle((d, 0)), LineBundle((0, d))]


def germ_pairs(fan, G):
    """(constructible-function multiplicity, zigzag microstalk) for every germ."""
    tc = skeleton_bundle(fan).fltz.base_refinement
    phi = mirror_function(fan, G, tc)
    F = zigzag_model(fan, G)
    pts = F.circle.points
    out = []
    for c in tc.cells:
        if c.dim == 0:
            j = pts.index(c.point[0])
            out.append((phi.value(c.id), F.chi_point(j)))
            for xi in (1, -1):
                germ = MicrolocalGerm(c.id, (), (xi,), c.point)
                out.append((cc_multiplicity(phi, germ), microstalk_euler(F, j, xi)))
        else:
            arc = max(i for i, p in enumerate(pts) if p < c.point[0])
            out.append((phi.value(c.id), zero_section_euler(F, arc)))
    return out


@pytest.mark.parametrize("name", ["p1", "stacky"])
@pytest.mark.parametrize("d", range(6))
def test_microstalks_match_constructible_functions(fans, name, d):
    for G in line_bundles(d):
        pairs = germ_pairs(fans[name], G)
        assert pairs and all(a == b for a, b in pairs)


@pytest.mark.parametrize("name", ["p1", "stacky"])
def test_skyscraper_germs_match(fans, name):
    pairs = germ_pairs(fans[name], Skyscraper(None))
    assert all(a == b for a, b in pairs)


@pytest.mark.parametrize("d", range(6))
def test_hom_euler_of_line_bundles(p1, d):
    O = zigzag_model(p1, StructureSheaf())
    for G in line_bundles(d):
        assert zigzag_hom_euler(O, zigzag_model(p1, G)) == d + 1


@pytest.mark.parametrize("d", range(6))
def test_hom_euler_agrees_with_functions_on_stacky(stacky, d):
    tc = skeleton_bundle(stacky).fltz.base_refinement
    O = zigzag_model(stacky, StructureSheaf())
    L = zigzag_model(stacky, LineBundle((d, 0)))
    phi_o = mirror_function(stacky, StructureSheaf(), tc)
    phi_l = mirror_function(stacky, LineBundle((d, 0)), tc)
    assert zigzag_hom_euler(O, L) == hom_euler(phi_o, phi_l) == d // 2 + 1


def test_skyscraper_pairings(p1):
    O = zigzag_model(p1, StructureSheaf())
    K = zigzag_model(p1, Skyscraper(None))
    assert zigzag_hom_euler(O, K) == 1
    assert zigzag_hom_euler(K, O) == -1
    assert zigzag_hom_euler(K, K) == 0


def test_models_are_consistent(p1, stacky):
    for f in (p1, stacky):
        for d in range(4):
            assert zigzag_model(f, LineBundle((d, 0))).check()


def test_stacky_circle_has_two_points(stacky):
    assert len(circle_for_fan(stacky).points) == 2


def test_carrier_mismatch(p1, stacky):
    with pytest.raises(CarrierMismatch):
        zigzag_hom_euler(zigzag_model(p1, StructureSheaf()),
                         zigzag_model(stacky, StructureSheaf()))


def test_rank_two_is_unsupported(p2):
    with pytest.raises(Unsupported):
        circle_for_fan(p2)
