"""End-to-end acceptance checks, one test per criterion.

Expected values are frozen here; limits are wall-clock seconds.
"""

import io
import subprocess
import sys
import time

from hypothesis import HealthCheck, given, settings, strategies as st

from skelette.cli import main
from skelette.consheaf import (LineBundle, MicrolocalGerm, Skyscraper, StructureSheaf,
                               cc_multiplicity, descriptor_from_json, mirror_function)
from skelette.cycles import (boundary_at_infinity, cap, cc_of, mirror_cycle, skeleton_bundle,
                             support_complex, validate_cycle)
from skelette.fltz import boundary_legendrian, build_fltz, perp_subtorus
from skelette.io import load_fan, load_json
from skelette import k0
from skelette.k0 import pushout_presentation, sod_rank_check
from skelette.lattice import Cone, validate_stacky_fan
from skelette.skeleton import (PHASE_EDGES, PHASE_VERTICES, build_newton_data, build_skeleton,
                               phase_boundary, phase_components, phase_graph_complex)
from skelette.zigzag import (microstalk_euler, zero_section_euler, zigzag_hom_euler,
                             zigzag_model)

# frozen oracles
P1_SKELETON_HOMOLOGY = (1, 1, 2, 0)   # T^2 glued to S^2 along a longitude
P1_SKELETON_EULER = 2
SPHERE_2 = (1, 0, 1)
SPHERE_3 = (1, 0, 0, 1)
TORUS_2 = (1, 2, 1)
SOD_EXPECTED = {"p1": (4, 2, 2, 2), "p2": (9, 3, 6, 3), "p1xp1": (12, 4, 8, 4)}

LIMIT_FLTZ_P1 = 1.0
LIMIT_P1 = 5.0
LIMIT_P2_MIRROR = 60.0
LIMIT_K0 = 5.0


def clear_caches():
    skeleton_bundle.cache_clear()
    for fn in (k0._nef_basis, k0._chi, k0.is_nef):
        fn.cache_clear()


def timed(fn, *args):
    """Wall-clock time of a cold run."""
    clear_caches()
    t = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t


def test_p1_fltz_census(acceptance):
    def run():
        fan = load_fan("p1.json")
        skel = build_fltz(fan)
        return len(skel.strata), boundary_legendrian(skel).count
    (strata, bd), dt = timed(run)
    ok = strata == 3 and bd == 2 and dt < LIMIT_FLTZ_P1
    acceptance(1, "P1 FLTZ census", ok, "%d strata, %d boundary points, %.3fs" % (strata, bd, dt))
    assert ok


def test_p1_skeleton_homology(acceptance):
    def run():
        fan = load_fan("p1.json")
        cx = build_skeleton(fan, build_fltz(fan))
        return cx, cx.homology()
    (cx, h), dt = timed(run)
    ranks = h.as_tuple(4)
    ok = (cx.check_dd() and ranks == P1_SKELETON_HOMOLOGY and all(t == () for t in h.torsion)
          and cx.euler_characteristic() == P1_SKELETON_EULER and dt < LIMIT_P1)
    acceptance(2, "P1 capped skeleton homology", ok, "H=%s, chi=%d, %.3fs"
               % (ranks, cx.euler_characteristic(), dt))
    assert ok


def test_phase_graph_structure(acceptance, fans):
    problems = []
    g = phase_graph_complex()
    if g.census() != [4, 4] or g.homology().as_tuple() != (1, 1):
        problems.append("phase graph is not a circle")
    for e in PHASE_EDGES:
        if sorted(v[0] for v, _ in phase_boundary(e)) != ["u", "v"]:
            problems.append("edge %r is not bipartite" % (e,))
    k22 = set(PHASE_VERTICES) | set(PHASE_EDGES)
    for name, fan in fans.items():
        nd = build_newton_data(fan)
        for s in nd.triangulation:
            if "2eu" in s and "2ev" in s:
                choices = {(c.choice[0], c.choice[1]) for c in phase_components(s)}
                if choices != {(e[1], e[2]) for e in PHASE_EDGES}:
                    problems.append("%s: simplex %r" % (name, s))
        b = skeleton_bundle(fan)
        C = b.skeleton
        over = {}
        apex = {}
        for c in C.cells:
            if c.label[0] == "cyl":
                over.setdefault(c.label[1], set()).add(c.label[2])
            if c.label[0] == "cap" and c.label[2] == ("apex",):
                apex[c.label[1]] = apex.get(c.label[1], 0) + 1
        lam_labels = {c.label for c in b.lagrangian.cells}
        if set(over) != lam_labels or any(v != k22 for v in over.values()):
            problems.append("%s: cylinder phase factor" % name)
        outer = {c.label for c in b.lagrangian.infinity_cells()}
        if set(apex) != outer or any(k != 1 for k in apex.values()):
            problems.append("%s: cap cone points" % name)
    ok = not problems
    acceptance(3, "phase graph K22 and collapsed cap points", ok, "; ".join(problems[:3]))
    assert ok, problems


def _support_homology(name, G):
    fan = load_fan(name + ".json")
    C = mirror_cycle(fan, G)
    return support_complex(C, skeleton_bundle(fan).skeleton).homology()


def test_structure_sheaf_support_is_a_sphere(acceptance):
    h1, dt1 = timed(_support_homology, "p1", StructureSheaf())
    h2, dt2 = timed(_support_homology, "p2", StructureSheaf())
    ok = (h1.as_tuple(3) == SPHERE_2 and h2.as_tuple(4) == SPHERE_3 and dt2 < LIMIT_P2_MIRROR
          and all(t == () for t in h1.torsion + h2.torsion))
    acceptance(4, "support of the structure sheaf cycle is a sphere", ok,
               "P1 %s, P2 %s, P2 run %.3fs" % (h1.as_tuple(3), h2.as_tuple(4), dt2))
    assert ok


def test_skyscraper_support_is_a_torus(acceptance):
    h, dt = timed(_support_homology, "p1", Skyscraper(None))
    ok = h.as_tuple(3) == TORUS_2 and all(t == () for t in h.torsion) and dt < LIMIT_P1
    acceptance(5, "support of the skyscraper cycle is a 2-torus", ok,
               "H=%s, %.3fs" % (h.as_tuple(3), dt))
    assert ok


def test_cap_sign_structure(acceptance):
    fans = {"p1": load_fan("p1.json"), "p2": load_fan("p2.json")}
    checked = []

    @settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.sampled_from(sorted(fans)), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
    def prop(name, ks):
        f = fans[name]
        C = skeleton_bundle(f).skeleton
        pad = (0,) * (len(f.rays) - 1)
        c = None
        for d, k in enumerate(ks):
            term = k * cc_of(f, LineBundle((d,) + pad))
            c = term if c is None else c + term
        capped = cap(c, C)
        for (cid, tau), w in c.weights.items():
            top = ("lam", cid, "cone", tau)
            cells = [x for x in C.cells if x.label[0] == "cyl" and x.label[1] == top
                     and x.dim == C.n + 1]
            assert len(cells) == 4
            assert all(capped.weights.get(x.id, 0) == -w for x in cells)
        assert capped.violations() == []
        checked.append(name)

    try:
        prop()
    except Exception:
        acceptance(6, "cap negates every cylinder weight", False,
                   "failed after %d combinations" % len(checked))
        raise
    acceptance(6, "cap negates every cylinder weight", True,
               "%d random combinations" % len(checked))


def test_cycle_conditions_on_fixtures(acceptance, fans):
    pairs = []
    for name in fans:
        for sheaf in ("structure_sheaf.json", "skyscraper.json"):
            pairs.append((name, sheaf))
    pairs += [("p1", "p1_O1.json"), ("p2", "p2_O1.json")]
    bad = []
    for name, sheaf in pairs:
        f = fans[name]
        G = descriptor_from_json(load_json(sheaf))
        c = cc_of(f, G)
        if validate_cycle(c) or boundary_at_infinity(c).violations():
            bad.append((name, sheaf, "cc"))
        if cap(c, skeleton_bundle(f).skeleton).violations():
            bad.append((name, sheaf, "cap"))
    ok = not bad
    acceptance(7, "cycle conditions for every fixture pair", ok, "%d pairs" % len(pairs))
    assert ok, bad


def test_zigzag_oracle(acceptance, fans):
    mismatches = []
    germs = 0
    for name in ("p1", "stacky"):
        f = fans[name]
        tc = skeleton_bundle(f).fltz.base_refinement
        for d in range(6):
            for G in (LineBundle((d, 0)), LineBundle((0, d))):
                phi = mirror_function(f, G, tc)
                F = zigzag_model(f, G)
                pts = F.circle.points
                for c in tc.cells:
                    if c.dim == 0:
                        j = pts.index(c.point[0])
                        for xi in (1, -1):
                            germ = MicrolocalGerm(c.id, (), (xi,), c.point)
                            germs += 1
                            if cc_multiplicity(phi, germ) != microstalk_euler(F, j, xi):
                                mismatches.append((name, G, c.id, xi))
                    else:
                        arc = max(i for i, p in enumerate(pts) if p < c.point[0])
                        germs += 1
                        if phi.value(c.id) != zero_section_euler(F, arc):
                            mismatches.append((name, G, c.id, 0))
    p1 = fans["p1"]
    O = zigzag_model(p1, StructureSheaf())
    homs = [zigzag_hom_euler(O, zigzag_model(p1, LineBundle((d, 0)))) for d in range(6)]
    ok = not mismatches and homs == [d + 1 for d in range(6)]
    acceptance(8, "microstalks match the zigzag oracle", ok,
               "%d germs, hom(O, O(d)) = %s" % (germs, homs))
    assert ok, mismatches


def test_k0_shadows(acceptance, fans):
    details, ok = [], True
    for name, (total, x, h, cok) in SOD_EXPECTED.items():
        r, dt = timed(sod_rank_check, fans[name])
        pres = pushout_presentation(fans[name])
        good = (r["sodCheck"] and r["ranks"]["BlowUp"] == total == x + h
                and r["ranks"]["X"] == x and r["ranks"]["H"] == h
                and pres.rank == cok and pres.torsion == () and dt < LIMIT_K0)
        ok = ok and good
        details.append("%s %d=%d+%d rank %d %.2fs" % (name, r["ranks"]["BlowUp"], x, h,
                                                     pres.rank, dt))
    acceptance(9, "K0 ranks and pushout cokernels", ok, "; ".join(details))
    assert ok


def test_stacky_coverage(acceptance, stacky):
    comps = perp_subtorus(stacky, Cone((0,))).count
    bd = boundary_legendrian(build_fltz(stacky)).count
    cx = build_skeleton(stacky, build_fltz(stacky))
    ok = comps == 2 and bd == 3 and cx.check_dd()
    acceptance(10, "stacky fan coverage", ok, "%d perp components, %d boundary points" % (comps, bd))
    assert ok


COMMANDS = [
    ("fan-validate", "p2.json", "--format", "json"),
    ("skeleton", "p1.json", "--piece", "fltz"),
    ("skeleton", "p2.json", "--piece", "rstz", "--homology"),
    ("mirror-cycle", "p1.json", "--sheaf", "skyscraper.json", "--homology"),
    ("mirror-cycle", "p2.json", "--sheaf", "structure_sheaf.json", "--homology"),
    ("k0", "p1xp1.json"),
]

# images of the fixture fans under permutations and unimodular maps
VARIANTS = {
    "p1": [([[-1], [1]], [[0], [1]])],
    "stacky": [([[1], [-2]], [[0], [1]]), ([[-1], [2]], [[1], [0]])],
    "p2": [([[0, 1], [-1, -1], [1, 0]], [[0, 1], [1, 2], [0, 2]]),
           ([[1, 0], [1, 1], [-2, -1]], [[0, 1], [1, 2], [0, 2]]),
           ([[-1, -1], [0, 1], [1, 0]], [[2, 1], [1, 0], [2, 0]])],
    "p1xp1": [([[1, 0], [1, 1], [-1, 0], [-1, -1]], [[0, 1], [1, 2], [2, 3], [0, 3]]),
              ([[0, -1], [1, 0], [0, 1], [-1, 0]], [[0, 1], [1, 2], [2, 3], [0, 3]])],
}


def _profiles(fan):
    b = skeleton_bundle(fan)
    out = [b.skeleton.homology(), b.lagrangian.homology()]
    for G in (StructureSheaf(), Skyscraper(None)):
        out.append(support_complex(mirror_cycle(fan, G), b.skeleton).homology())
    return out


def _run_cli(argv):
    buf = io.StringIO()
    main(list(argv), buf, io.StringIO())
    return buf.getvalue()


def test_determinism_and_invariance(acceptance, fans):
    problems = []
    for argv in COMMANDS:
        if _run_cli(argv) != _run_cli(argv):
            problems.append("in-process %s" % argv[0])
    cmd = [sys.executable, "-m", "skelette.cli"] + list(COMMANDS[2])
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    if a != b or a.decode() != _run_cli(COMMANDS[2]):
        problems.append("subprocess output differs")
    variants = 0
    for name, items in VARIANTS.items():
        ref = _profiles(fans[name])
        for rays, cones in items:
            variants += 1
            if _profiles(validate_stacky_fan(rays, cones)) != ref:
                problems.append("%s variant %r" % (name, rays))
    ok = not problems
    acceptance(11, "determinism and invariance", ok,
               "%d commands, %d fan variants" % (len(COMMANDS), variants)
               + ("; " + "; ".join(problems) if problems else ""))
    assert ok, problems
