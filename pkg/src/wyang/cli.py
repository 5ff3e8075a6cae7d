"""Command-line interface: pyramid inspection/conversion, generator
emission, and the verification suites."""

import argparse
import json
import sys

from .pyramid import (SignedPyramid, TruncationSpec, PyramidError,
                      canonical_json)
from .wsuper import WModel
from . import verify as harness


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_pyramid(path):
    data = _load_json(path)
    if "rows" in data:
        return SignedPyramid.from_dict(data)
    if "sigma" in data:
        return SignedPyramid.from_shift_and_level(TruncationSpec.from_dict(data))
    raise PyramidError("file %s is neither a pyramid nor a truncation spec" % path)


def _parse_mu(text):
    return tuple(int(x) for x in text.split(",")) if text else None


def cmd_pyramid(args):
    if args.action == "info":
        py = _load_pyramid(args.file)
        print("rows (top to bottom):")
        for r in py.rows:
            print("  %s length=%d offset=%d" % (r.sign, r.length, r.left_offset))
        print("algebra: gl(%d|%d), boxes=%d" % (py.M, py.N, py.M + py.N))
        print("grading element h:", list(py.build_h()))
        grading = py.check_good_grading()
        print("good grading:", "pass" if grading["passed"] else "FAIL")
        if py.is_main_mode():
            spec = py.to_shift_and_level()
            print("level:", spec.level)
            print("shift matrix:")
            for row in spec.sigma.entries:
                print("  ", list(row))
            print("row lengths p:", list(spec.p))
            print("minimal shape:", list(spec.sigma.minimal_admissible_shape()))
            print("centralizer dimension:", len(py.centralizer_basis()))
        else:
            print("(not in main-theorem mode: multiple '+' rows)")
        return 0
    # convert: pyramid file <-> truncation file
    data = _load_json(args.file)
    if "rows" in data:
        out = SignedPyramid.from_dict(data).to_shift_and_level().to_dict()
    elif "sigma" in data:
        out = SignedPyramid.from_shift_and_level(
            TruncationSpec.from_dict(data)).to_dict()
    else:
        raise PyramidError("unrecognized input file")
    print(canonical_json(out))
    return 0


def cmd_wgen(args):
    py = _load_pyramid(args.pyramid)
    model = WModel(py)
    mu = _parse_mu(args.mu) or model.sigma.minimal_admissible_shape()
    fam = model.parabolic(mu, args.order)
    family = args.family
    a, b, i, j, r = args.a, args.b, args.i, args.j, args.r
    if args.oracle == "gauss":
        if family == "D":
            elem = fam.gauss_D(a, i, j, r)
        elif family == "Dp":
            elem = fam.gauss_Dprime(a, i, j, r)
        elif family == "E":
            if b not in (None, a + 1):
                raise PyramidError("the factorization route only yields adjacent blocks")
            elem = fam.gauss_E(a, i, j, r)
        else:
            if b not in (None, a - 1):
                raise PyramidError("the factorization route only yields adjacent blocks")
            elem = fam.gauss_F(a, i, j, r)
    else:
        if family == "D":
            elem = fam.D(a, i, j, r)
        elif family == "Dp":
            elem = fam.Dprime(a, i, j, r)
        elif family == "E":
            elem = (fam.E(a, i, j, r) if b in (None, a + 1)
                    else fam.E_composite(a, b, i, j, r))
        else:
            elem = (fam.F(a, i, j, r) if b in (None, a - 1)
                    else fam.F_composite(a, b, i, j, r))
    print(json.dumps(elem.serialize()))
    return 0


def cmd_verify(args):
    py = _load_pyramid(args.pyramid)
    mu = _parse_mu(args.mu)
    reports = []
    if args.suite == "main":
        reports.append(harness.check_main_theorem(
            py, mu=mu, r_max=args.rmax, jobs=args.jobs))
    elif args.suite == "relations":
        reports.append(harness.check_relations(
            py, mu=mu, r_max=args.rmax, jobs=args.jobs))
    elif args.suite == "dims":
        reports.append(harness.check_dimensions(py, d_max=args.dmax))
    elif args.suite == "baby":
        sides = [args.side] if args.side else ["R", "L"]
        for side in sides:
            reports.append(harness.check_baby(py, side, r_max=args.rmax))
    elif args.suite == "shift":
        if not args.shifted:
            raise PyramidError("shift suite needs --shifted <file>")
        reports.append(harness.check_shift_independence(
            py, _load_pyramid(args.shifted), d_max=args.dmax))
    payload = {"checks": [rep.to_dict() for rep in reports]}
    text = json.dumps(payload, indent=2, default=str)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    for rep in reports:
        print("%-20s %-8s instances=%d skipped=%d failures=%d (%d ms)" % (
            rep.check_id, rep.status, rep.instances, rep.skipped,
            len(rep.failures), rep.millis))
    ok = all(rep.status != "fail" for rep in reports)
    if not ok and not args.json:
        print(text)
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="wyang",
        description="Exact computer algebra for truncated shifted super "
                    "Yangians and finite W-superalgebra invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    p_py = sub.add_parser("pyramid", help="inspect or convert pyramid files")
    p_py.add_argument("action", choices=["info", "convert"])
    p_py.add_argument("file")
    p_py.set_defaults(func=cmd_pyramid)

    p_gen = sub.add_parser("wgen", help="emit one invariant generator")
    p_gen.add_argument("--pyramid", required=True)
    p_gen.add_argument("--mu", default=None, help="comma-separated shape, e.g. 1,1,1")
    p_gen.add_argument("--family", required=True, choices=["D", "Dp", "E", "F"])
    p_gen.add_argument("--a", type=int, required=True)
    p_gen.add_argument("--b", type=int, default=None,
                       help="second block index for composites")
    p_gen.add_argument("--i", type=int, default=1)
    p_gen.add_argument("--j", type=int, default=1)
    p_gen.add_argument("--r", type=int, required=True)
    p_gen.add_argument("--oracle", choices=["brute", "gauss"], default="brute")
    p_gen.add_argument("--order", type=int, default=8,
                       help="series truncation order for the gauss route")
    p_gen.set_defaults(func=cmd_wgen)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("suite", choices=["main", "dims", "relations", "baby", "shift"])
    p_ver.add_argument("--pyramid", required=True)
    p_ver.add_argument("--shifted", default=None,
                       help="second pyramid for the shift suite")
    p_ver.add_argument("--mu", default=None)
    p_ver.add_argument("--rmax", type=int, default=None)
    p_ver.add_argument("--dmax", type=int, default=6)
    p_ver.add_argument("--side", choices=["R", "L"], default=None)
    p_ver.add_argument("--json", default=None, help="write the report here")
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (PyramidError, OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
