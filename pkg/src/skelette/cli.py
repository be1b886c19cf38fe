"""Command line: fan-validate, skeleton, mirror-cycle, k0.

Exit codes: 0 success, 1 validation failure, 2 unsupported input.
"""

import argparse
import sys

from . import __version__
from .consheaf import descriptor_from_json
from .cycles import boundary_at_infinity, cc_of, cap, skeleton_bundle, support_complex
from .errors import SkeletteError
from .fltz import boundary_legendrian, build_fltz
from .io import RunManifest, dumps, fltz_to_json, load_fan, load_json
from .k0 import k0_toric, sod_rank_check
from .skeleton import build_skeleton


def _manifest(args, command, options, inputs):
    return RunManifest.for_inputs(command, args.fan, options, inputs).to_json()


def _emit_homology(out, h, fmt, stream):
    if fmt == "csv":
        stream.write(h.csv())
    elif fmt == "table":
        stream.write(h.table() + "\n")
    else:
        out["homology"] = h.to_json()


def cmd_fan_validate(args, stream):
    fan = load_fan(args.fan)
    if args.format == "json":
        stream.write(dumps({"manifest": _manifest(args, "fan-validate", {}, [args.fan]),
                            "valid": True, "summary": fan.summary(), "fan": fan.to_json()}))
    else:
        stream.write(fan.summary() + "\n")
    return 0


def cmd_skeleton(args, stream):
    fan = load_fan(args.fan)
    opts = {"piece": args.piece, "homology": args.homology, "format": args.format}
    out = {"manifest": _manifest(args, "skeleton", opts, [args.fan]), "piece": args.piece}
    want_h = args.homology or args.format != "json"
    if args.piece == "fltz":
        skel = build_fltz(fan)
        out.update(fltz_to_json(skel))
        out["strataCount"] = len(skel.strata)
        out["boundaryPoints"] = boundary_legendrian(skel).count
        if want_h:
            h = skeleton_bundle(fan).lagrangian.homology()
            _emit_homology(out, h, args.format, stream)
        if args.format == "table":
            stream.write("strata %d, boundary points %d\n"
                         % (out["strataCount"], out["boundaryPoints"]))
    else:
        cx = build_skeleton(fan, build_fltz(fan))
        out["census"] = cx.census()
        out["boundarySquaredZero"] = cx.check_dd()
        out["complex"] = cx.to_json()
        if want_h:
            _emit_homology(out, cx.homology(), args.format, stream)
        if args.format == "table":
            stream.write("census %s, dd=0 %s\n"
                         % (" ".join(map(str, out["census"])),
                            "yes" if out["boundarySquaredZero"] else "no"))
    if args.format == "json":
        stream.write(dumps(out))
    return 0


def cmd_mirror_cycle(args, stream):
    fan = load_fan(args.fan)
    G = descriptor_from_json(load_json(args.sheaf))
    opts = {"sheaf": args.sheaf, "homology": args.homology, "format": args.format}
    b = skeleton_bundle(fan)
    c = cc_of(fan, G)
    capped = cap(c, b.skeleton)
    out = {"manifest": _manifest(args, "mirror-cycle", opts, [args.fan, args.sheaf]),
           "sheaf": G.to_json(),
           "characteristicCycle": c.to_json(),
           "boundaryAtInfinity": boundary_at_infinity(c).to_json(),
           "cappedCycle": capped.to_json()}
    if args.homology or args.format != "json":
        _emit_homology(out, support_complex(capped, b.skeleton).homology(), args.format, stream)
    if args.format == "json":
        stream.write(dumps(out))
    return 0


def cmd_k0(args, stream):
    fan = load_fan(args.fan)
    report = sod_rank_check(fan)
    out = {"manifest": _manifest(args, "k0", {}, [args.fan])}
    out.update(report)
    out["basis"] = k0_toric(fan).to_json()
    if args.format == "json":
        stream.write(dumps(out))
    else:
        r = report["ranks"]
        stream.write("ranks " + " ".join("%s=%d" % (k, r[k]) for k in sorted(r)) + "\n")
        stream.write("sodCheck %s, cokernel rank %d\n"
                     % (str(report["sodCheck"]).lower(), report["cokernel"]["rank"]))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="skelette", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version="skelette " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("json", "table")):
        sp.add_argument("fan", help="fan JSON file or fixture name")
        sp.add_argument("--format", choices=formats, default="json")

    sp = sub.add_parser("fan-validate", help="validate a stacky fan")
    common(sp, ("text", "json"))
    sp.set_defaults(func=cmd_fan_validate, format="text")

    sp = sub.add_parser("skeleton", help="build the FLTZ or capped skeleton")
    common(sp, ("json", "table", "csv"))
    sp.add_argument("--piece", choices=("fltz", "rstz"), default="fltz")
    sp.add_argument("--homology", action="store_true")
    sp.add_argument("--csv", dest="format", action="store_const", const="csv",
                    help="shorthand for --format csv")
    sp.set_defaults(func=cmd_skeleton)

    sp = sub.add_parser("mirror-cycle", help="capped characteristic cycle of a sheaf")
    common(sp, ("json", "table", "csv"))
    sp.add_argument("--sheaf", required=True, help="sheaf descriptor JSON")
    sp.add_argument("--homology", action="store_true")
    sp.add_argument("--csv", dest="format", action="store_const", const="csv")
    sp.set_defaults(func=cmd_mirror_cycle)

    sp = sub.add_parser("k0", help="K0 ranks and the pushout presentation")
    common(sp)
    sp.set_defaults(func=cmd_k0)
    return p


def main(argv=None, stream=None, err=None):
    stream = stream or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stream)
    except SkeletteError as e:
        err.write("%s: %s\n" % (e.invariant, e))
        return e.exit_code
    except FileNotFoundError as e:
        err.write("FileNotFound: %s\n" % e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
