"""Command line front end: single invariants, the invariant grid, and the
verification suites."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from .abv import NeedsSeedError, Session
from .config import FAMILY_IDS, builtin_presets, load_config_dir, parse_class
from .engine import DiskCache
from . import verify as verify_mod


def _build_session(args) -> Session:
    presets = load_config_dir(args.config_dir) if args.config_dir \
        else builtin_presets()
    cache = None
    path = None if args.no_cache else (args.cache or os.environ.get("WDP_CACHE"))
    if path:
        cache = DiskCache(path)
    return Session(presets, cache)


def _finish(session: Session):
    if session.cache is not None:
        session.cache.flush()


def _record(family, class_expr, phi, kind, value, elapsed_ms):
    return {
        "family": family,
        "class": class_expr,
        "phi": phi,
        "kind": kind,
        "value": str(value),
        "elapsed_ms": elapsed_ms,
    }


def cmd_compute(args) -> int:
    session = _build_session(args)
    cfg = session.config(args.family)
    d = parse_class(args.cls, cfg.ctx)
    t0 = time.monotonic()
    if args.gw:
        value = session.gw(args.family, d)
        kind = "GW"
    else:
        value = session.welschinger(args.family, d, args.phi)
        kind = "W"
    ms = int((time.monotonic() - t0) * 1000)
    _finish(session)
    if args.raw:
        print(value)
    else:
        print(json.dumps(_record(args.family, args.cls, args.phi, kind,
                                 value, ms)))
    return 0


def cmd_table(args) -> int:
    session = _build_session(args)
    families = args.families.split(",") if args.families else list(FAMILY_IDS)
    classes = args.classes.split(",") if args.classes else ["-K", "-2K"]
    phis = args.phi.split(",") if args.phi else ["phi0", "phiF"]
    cells = [(cls, phi, fam) for cls in classes for phi in phis
             for fam in families]

    def one(cell):
        cls, phi, fam = cell
        t0 = time.monotonic()
        try:
            d = parse_class(cls, session.config(fam).ctx)
            value = str(session.welschinger(fam, d, phi))
        except NeedsSeedError:
            value = "seed"
        except ValueError as exc:
            value = f"n/a ({exc})"
        return _record(fam, cls, phi, "W", value,
                       int((time.monotonic() - t0) * 1000))

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(one, cells))
    else:
        records = [one(c) for c in cells]
    _finish(session)
    if args.csv:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(records[0]))
        writer.writeheader()
        writer.writerows(records)
        sys.stdout.write(buf.getvalue())
    else:
        print(json.dumps(records, indent=None))
    return 0


def cmd_verify(args) -> int:
    session = _build_session(args)
    suite = verify_mod.SUITES[args.suite]
    kwargs = {}
    if args.suite == "oracle":
        kwargs["rmax"] = args.rmax
    if args.suite in ("congruence",) and args.family:
        kwargs["family"] = args.family
    if args.suite in ("congruence",) and args.kmax:
        kwargs["kmax"] = args.kmax
    if args.suite in ("positivity", "monotonicity") and args.kmax:
        kwargs["kmax"] = args.kmax
    checks = suite(session, **kwargs)
    _finish(session)
    payload = {
        "suite": args.suite,
        "passed": all(c.ok for c in checks),
        "checks": [c.as_dict() for c in checks],
    }
    print(json.dumps(payload))
    return 0 if payload["passed"] else 1


def _join_class_args(argv):
    # class expressions like -K start with a dash; glue them to their flag
    # so the argument parser does not mistake them for options
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--class", "--classes") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    top = argparse.ArgumentParser(
        prog="wdp",
        description="Exact Welschinger / Gromov-Witten invariants of real "
                    "del Pezzo surfaces of degree two")
    top.add_argument("--cache", help="path of the on-disk value cache "
                                     "(default: $WDP_CACHE)")
    top.add_argument("--no-cache", action="store_true",
                     help="disable the disk cache")
    top.add_argument("--config-dir",
                     help="directory of preset files overriding built-ins")
    sub = top.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("compute", help="one invariant value")
    pc.add_argument("--family", required=True, choices=list(FAMILY_IDS))
    pc.add_argument("--class", dest="cls", required=True,
                    help="class expression, e.g. -2K or 3L-E1-E7")
    pc.add_argument("--phi", default="phi0", choices=["phi0", "phiF"])
    pc.add_argument("--gw", action="store_true",
                    help="Gromov-Witten instead of Welschinger")
    pc.add_argument("--raw", action="store_true", help="print a bare integer")
    pc.set_defaults(func=cmd_compute)

    pt = sub.add_parser("table", help="grid of invariant values")
    pt.add_argument("--families", help="comma separated families (default all)")
    pt.add_argument("--classes", help="comma separated classes (default -K,-2K)")
    pt.add_argument("--phi", help="comma separated phi ids (default both)")
    pt.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    pt.add_argument("--jobs", type=int, default=1,
                    help="evaluate cells concurrently")
    pt.set_defaults(func=cmd_table)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=sorted(verify_mod.SUITES))
    pv.add_argument("--rmax", type=int, default=3,
                    help="dimension bound for the oracle suite")
    pv.add_argument("--kmax", type=int, default=None,
                    help="degree bound where a suite admits one")
    pv.add_argument("--family", default=None,
                    help="family for the congruence suite")
    pv.set_defaults(func=cmd_verify)

    if argv is None:
        argv = sys.argv[1:]
    argv = _join_class_args(list(argv))
    args = top.parse_args(argv)
    try:
        return args.func(args)
    except NeedsSeedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
