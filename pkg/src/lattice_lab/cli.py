"""Command-line interface: ``lattice-lab <command> [options]``.

Every command prints canonical JSON (sorted keys, no floats) on stdout.
Exit codes: 0 success, 1 a reported check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__


def canonical(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def digest(payload: dict) -> str:
    return hashlib.sha256(canonical(payload).encode()).hexdigest()


def _emit(payload: dict, args, ok: bool = True) -> int:
    payload = dict(payload)
    manifest = {"command": args.command, "seed": args.seed, "version": __version__}
    manifest["digest"] = digest(payload)
    if getattr(args, "manifest", False):
        payload["manifest"] = manifest
    if getattr(args, "tsv", False):
        for k in sorted(payload):
            print(f"{k}\t{canonical(payload[k])}")
    else:
        print(canonical(payload))
    return 0 if ok else 1


# --------------------------------------------------------------------------
# commands


def cmd_weights(args) -> int:
    from .roots import fundamental_weights, weight_pairings

    w = fundamental_weights()
    return _emit({"weights": {f"w{i + 1}": list(v) for i, v in enumerate(w)},
                  "pairings": weight_pairings()}, args)


def cmd_norm4(args) -> int:
    from .roots import enumerate_dominant_norm4, weight_vector

    sols = enumerate_dominant_norm4()
    return _emit({"solutions": [{"n": list(n), "vector": list(weight_vector(n))} for n in sols]}, args)


def cmd_avectors(args) -> int:
    from .roots import ROOTEMB_TYPES, a_vector, build_root_lattice, is_even_in_lattice

    out = {}
    for t in ROOTEMB_TYPES:
        a = a_vector(t)
        out[t] = {"a": list(a), "norm": build_root_lattice(t).norm(a), "even": is_even_in_lattice(t)}
    return _emit({"avectors": out}, args)


def cmd_classify(args) -> int:
    from .configs import classify, disc_report

    odd, even, reports = classify()
    ok = [str(c) for c in odd] == ["12A1", "8A1+D4", "6A1+D6", "5A1+E7"] and \
        [str(c) for c in even] == ["3D4", "D4+D8", "D4+E8", "D12"]
    return _emit({"odd": [str(c) for c in odd], "even": [str(c) for c in even],
                  "reports": [r.to_json() for r in reports],
                  "disc": {str(c): disc_report(c) for c in odd + even}}, args, ok)


def cmd_superlattices(args) -> int:
    from .standard import e2_superlattice_witnesses, m_superlattice_witnesses

    if args.lattice == "M":
        w = m_superlattice_witnesses()
    else:
        w = e2_superlattice_witnesses()
    missing = [list(x) for x, v in w if v is None]
    return _emit({"lattice": args.lattice, "classes": len(w), "missing": missing,
                  "examples": [{"class": list(x), "witness": list(v)} for x, v in w[:5]]},
                 args, not missing)


def _lattice_by_name(name: str):
    from . import standard
    from .roots import build_root_lattice

    table = {"N": standard.n_lattice, "M": standard.m_lattice, "E": standard.e_lattice,
             "E2": standard.e2_lattice, "E1": standard.e1_lattice}
    if name in table:
        return table[name]()
    return build_root_lattice(name)


def cmd_disc(args) -> int:
    from .lattice import discriminant_group, is_two_elementary

    try:
        lat = _lattice_by_name(args.lattice)
    except Exception as exc:  # noqa: BLE001 - report as usage error
        print(f"unknown lattice {args.lattice!r}: {exc}", file=sys.stderr)
        return 2
    dg = discriminant_group(lat)
    two = is_two_elementary(lat)
    out = {"lattice": args.lattice, "rank": lat.rank, "det": lat.det,
           "elementary_divisors": list(dg.elementary_divisors), "two_elementary": two,
           "even": lat.is_even, "inertia": list(lat.inertia())}
    if two:
        out["sigma"] = len(dg.elementary_divisors) // 2
    if args.lattice == "N":
        from .discform import arf_and_witt, discriminant_space
        D = discriminant_space()
        arf, witt = arf_and_witt(D.space)
        out["n0"] = {"dim": D.space.dim, "arf": arf, "witt_index_f2": witt}
    return _emit(out, args)


def cmd_period(args) -> int:
    from .periods import (Constraints, SamplerError, dump_periods, load_periods, period_report,
                          sample_period)

    if args.action == "sample":
        if args.defect:
            i, j = (int(x) for x in args.defect.split(","))
            cons = Constraints("defect", (i, j))
        elif args.non_12a1:
            cons = Constraints("non12a1")
        else:
            cons = Constraints("generic")
        try:
            pts = [sample_period(args.seed + k, args.field_degree, cons) for k in range(args.count)]
        except SamplerError as exc:
            return _emit({"error": str(exc), "stats": exc.stats}, args, ok=False)
        text = dump_periods(pts)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        return _emit({"count": len(pts), "field_degree": args.field_degree,
                      "periods": json.loads(text)["periods"] if not args.out else args.out}, args)
    if not args.input:
        print("period check needs --in", file=sys.stderr)
        return 2
    with open(args.input) as fh:
        pts = load_periods(fh.read())
    reports = [period_report(p) for p in pts]
    ok = all(r["valid"] and r.get("agree") is not False for r in reports)
    return _emit({"reports": reports}, args, ok)


def cmd_census(args) -> int:
    from .census import census, ramification_table

    data = census(args.cache, use_cache=not args.no_cache)
    s = data["summary"]
    payload = {"summary": s, "ramification": ramification_table(s), "version_hash": data["version_hash"]}
    if args.json:
        payload["records"] = data["records"]
    return _emit(payload, args, s["class_count"] == 171)


def cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(quick=args.quick, seed=args.seed, cache=args.cache)
    ok = all(r["passed"] for r in results)
    return _emit({"results": results, "all_passed": ok, "quick": args.quick}, args, ok)


# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lattice-lab", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tsv", action="store_true", help="print key<TAB>json lines")
    p.add_argument("--manifest", action="store_true", help="attach the run manifest")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("weights").set_defaults(func=cmd_weights)
    sub.add_parser("norm4").set_defaults(func=cmd_norm4)
    sub.add_parser("avectors").set_defaults(func=cmd_avectors)
    sub.add_parser("classify-configs").set_defaults(func=cmd_classify)
    s = sub.add_parser("superlattices")
    s.add_argument("--lattice", choices=["M", "E2"], required=True)
    s.set_defaults(func=cmd_superlattices)
    s = sub.add_parser("disc")
    s.add_argument("--lattice", default="N")
    s.set_defaults(func=cmd_disc)
    s = sub.add_parser("period")
    s.add_argument("action", choices=["sample", "check"])
    s.add_argument("--field-degree", type=int, default=8)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--defect")
    s.add_argument("--non-12a1", action="store_true")
    s.add_argument("--out")
    s.add_argument("--in", dest="input")
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s.set_defaults(func=cmd_period)
    s = sub.add_parser("census")
    s.add_argument("--cache")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_census)
    s = sub.add_parser("verify-paper")
    s.add_argument("--quick", action="store_true")
    s.add_argument("--cache")
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
