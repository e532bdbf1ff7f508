"""Command-line front end.

Subcommands: construct, analyze, oracle-check, sweep, separate, examples.
All output is machine-readable (family files, JSON, CSV) and deterministic:
identical inputs give byte-identical outputs. Exit codes: 0 success,
1 check failure, 2 input error, 3 cap exceeded, 4 internal inconsistency,
5 scaling-band failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional

from . import __version__, asymptotics, construction, metrics, setfam
from ._strfmt import int_str
from .errors import CapExceeded, InternalInconsistency, UclabError

FAMILY_FORMAT_VERSION = 1
SWEEP_CSV_VERSION = 1

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_INTERNAL = 4
EXIT_BAND = 5

WITNESS_SAMPLE = 20


class _InputError(UclabError):
    """CLI-level argument/flag combination problem."""


def _default_cap() -> int:
    raw = os.environ.get("UCLAB_CAP")
    if raw is None:
        return setfam.DEFAULT_CAP
    if not raw.isdigit() or int(raw) < 1:
        raise _InputError(f"UCLAB_CAP must be a positive integer, got {raw!r}")
    return int(raw)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


def _emit_json(obj, path: Optional[str] = None) -> None:
    _write_text(path, json.dumps(obj, indent=2) + "\n")


def _read_family(path: str) -> setfam.Family:
    with open(path, "r", encoding="ascii", newline="") as fh:
        return setfam.parse_family(fh.read())


def _size_json(v: int):
    # JSON numbers only up to 63 bits; bigger counts become decimal strings
    return v if v.bit_length() < 63 else int_str(v)


def _bounds_json(br: construction.BoundReport) -> dict:
    return {
        "tau": metrics.rational_json(br.tau),
        "tau_ok": br.tau_ok,
        "gamma_out_lower": br.gamma_out_lower,
        "gamma_out_series": br.gamma_out_series,
        "gamma_out_linear": br.gamma_out_linear,
        "gamma_out_double": br.gamma_out_double,
        "gamma_in_range": br.gamma_in_range,
        "t_fraction_ok": br.t_fraction_ok,
        "aod_lower": br.aod_lower,
        "aod_upper_mix": br.aod_upper_mix,
        "aod_upper_simple": br.aod_upper_simple,
        "all_ok": br.all_ok,
    }


def _band_json(b: asymptotics.BandReport) -> dict:
    return {
        "quantity": b.quantity,
        "min_ratio": b.min_ratio,
        "max_ratio": b.max_ratio,
        "spread": b.spread,
        "band_ok": b.band_ok,
    }


def _parse_t_sets(raw: Optional[str]):
    if raw is None:
        return None
    try:
        parsed = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise _InputError(f"--t-sets is not valid JSON: {exc}") from exc
    if not isinstance(parsed, list) or not all(isinstance(ts, list) for ts in parsed):
        raise _InputError("--t-sets must be a JSON list of element lists")
    return parsed


def cmd_construct(args) -> int:
    params = construction.BlockParams(k=args.k, m=args.m, s=args.s)
    bf = construction.build_block_family(params, _parse_t_sets(args.t_sets))
    if args.materialize:
        fam = construction.materialize(bf, cap=args.cap)
        _write_text(args.out, setfam.serialize_family(fam))
    else:
        obj = {
            "k": params.k,
            "m": params.m,
            "s": params.s,
            "t_sets": [list(elems) for elems in bf.t_elements],
        }
        _emit_json(obj, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    have_params = not (args.k is None and args.m is None and args.s is None)
    if args.family_file is not None and have_params:
        raise _InputError("give either FILE or --k/--m/--s, not both")
    if args.family_file is not None:
        fam = _read_family(args.family_file)
        rep = metrics.metrics_report(fam)
        _emit_json(metrics.report_json(rep))
        return EXIT_OK
    if args.k is None or args.m is None or args.s is None:
        raise _InputError("parameter mode needs all of --k, --m, --s")
    params = construction.BlockParams(k=args.k, m=args.m, s=args.s)
    bf = construction.build_block_family(params, _parse_t_sets(args.t_sets))
    ct = construction.count_table(bf)
    bm = construction.exact_metrics(bf)
    br = construction.verify_bounds(bf)
    max_elem = min(min(elems) for elems in bf.t_elements)
    obj = {
        "n": params.n,
        "size": _size_json(ct.total),
        "aod": metrics.rational_json(bm.aod),
        "avg_abundance": metrics.rational_json(bm.avg_abundance),
        "max_abundance": {
            "element": max_elem,
            "num": int_str(bm.gamma_in.numerator),
            "den": int_str(bm.gamma_in.denominator),
        },
        "knill_ratio": float(bm.gamma_in) * math.log2(ct.total),
        "is_union_closed": True,
        "separates": False,
        "gamma_out": metrics.rational_json(bm.gamma_out),
        "gamma_in": metrics.rational_json(bm.gamma_in),
        "params": {"k": params.k, "m": params.m, "s": params.s, "n": params.n},
        "bounds": _bounds_json(br),
    }
    _emit_json(obj)
    return EXIT_OK


def _oracle_cell(bf: construction.BlockFamily, cap: int) -> Optional[str]:
    """Run every cross-check for one grid cell; return a witness on failure."""
    ct = construction.count_table(bf)
    fam = construction.materialize(bf, cap=cap)
    closure = setfam.union_closure(bf.generators(), bf.params.n, cap=cap)

    fam_bits = fam.bits_set()
    clo_bits = closure.bits_set()
    if fam_bits != clo_bits:
        extra = sorted(fam_bits - clo_bits)
        missing = sorted(clo_bits - fam_bits)
        which, bits = ("extra", extra[0]) if extra else ("missing", missing[0])
        witness = setfam.SetBits(bf.params.n, bits).elements()
        return f"materialized family differs from union closure; {which} set {witness}"
    if fam.size() != ct.total:
        return f"size {fam.size()} != count-table total {ct.total}"
    if not setfam.is_union_closed(fam):
        return "materialized family is not union-closed"

    bm = construction.exact_metrics(bf)
    s = bf.params.s
    tagged = min(bf.t_elements[0])
    untagged = s + 1  # first untagged element of block 1 (canonical tags)
    checks = (
        ("gamma_in", metrics.abundance(fam, tagged), bm.gamma_in),
        ("gamma_out", metrics.abundance(fam, untagged), bm.gamma_out),
        ("avg_abundance", metrics.average_abundance(fam), bm.avg_abundance),
        ("aod(gamma_weighted)", metrics.aod(fam, "gamma_weighted"), bm.aod),
        ("aod(pairwise)", metrics.aod(fam, "pairwise"), bm.aod),
    )
    for name, got, expected in checks:
        if got != expected:
            return f"{name}: explicit family gives {got}, class decomposition {expected}"
    return None


def cmd_oracle_check(args) -> int:
    failures = 0
    cells = 0
    for m in range(2, args.m_max + 1):
        for k in range(3, args.k_max + 1):
            for s in range(1, k - 1):
                params = construction.BlockParams(k=k, m=m, s=s)
                bf = construction.build_block_family(params)
                total = construction.count_table(bf).total
                if total > args.cap:
                    print(f"k={k} m={m} s={s} N={total} SKIP (N > cap)")
                    continue
                cells += 1
                witness = _oracle_cell(bf, args.cap)
                if witness is None:
                    print(f"k={k} m={m} s={s} N={total} PASS")
                else:
                    failures += 1
                    print(f"k={k} m={m} s={s} N={total} FAIL")
                    print(f"  {witness}")
    print(f"{cells - failures}/{cells} cells passed")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILED


def cmd_sweep(args) -> int:
    if args.to_exp < args.from_exp:
        raise _InputError("--to must be >= --from")
    targets = [2**e for e in range(args.from_exp, args.to_exp + 1)]
    records = asymptotics.sweep(targets, workers=args.workers)
    band_aod = asymptotics.theta_band(records, "aod", args.spread)
    band_avg = asymptotics.theta_band(records, "avg_abundance", args.spread)
    csv_text = asymptotics.sweep_csv(records)
    band_obj = {
        "rows": len(records),
        "aod": _band_json(band_aod),
        "avg_abundance": _band_json(band_avg),
        "band_ok": band_aod.band_ok and band_avg.band_ok,
    }
    if args.csv is not None:
        _write_text(args.csv, csv_text)
        _emit_json(band_obj)
    else:
        sys.stdout.write(csv_text)
        sys.stderr.write(json.dumps(band_obj, indent=2) + "\n")
    return EXIT_OK if band_obj["band_ok"] else EXIT_BAND


def cmd_separate(args) -> int:
    have_params = not (args.k is None and args.m is None and args.s is None)
    if args.family_file is not None and have_params:
        raise _InputError("give either FILE or --k/--m/--s, not both")
    if args.family_file is not None:
        fam = _read_family(args.family_file)
    else:
        if args.k is None or args.m is None or args.s is None:
            raise _InputError("parameter mode needs all of --k, --m, --s")
        if not args.materialize:
            raise _InputError("parameter mode requires --materialize")
        params = construction.BlockParams(k=args.k, m=args.m, s=args.s)
        bf = construction.build_block_family(params)
        fam = construction.materialize(bf, cap=args.cap)

    n = fam.universe_n
    # augment_cosingletons re-validates; checking here gives exit code 2
    # with a readable message instead of a traceback-level error.
    if (1 << n) - 1 not in fam.bits_set():
        raise _InputError("input family must contain the full set [n]")
    if not setfam.is_union_closed(fam):
        raise _InputError("input family must be union-closed")

    def _aod_checked(family: setfam.Family):
        a = metrics.aod(family, "gamma_weighted")
        b = metrics.aod(family, "pairwise")
        if a != b:
            raise InternalInconsistency(f"AOD forms disagree: {a} vs {b}")
        return a

    before = setfam.separates_points(fam)
    aod_before = _aod_checked(fam)
    augmented = setfam.augment_cosingletons(fam)
    after = setfam.separates_points(augmented)
    aod_after = _aod_checked(augmented)
    change = abs(aod_after - aod_before) / aod_before

    obj = {
        "n": n,
        "before": {
            "size": fam.size(),
            "separates": before.separates,
            "witness_count": len(before.witness_pairs),
            "witness_sample": [list(p) for p in before.witness_pairs[:WITNESS_SAMPLE]],
            "aod": metrics.rational_json(aod_before),
        },
        "after": {
            "size": augmented.size(),
            "separates": after.separates,
            "witness_count": len(after.witness_pairs),
            "aod": metrics.rational_json(aod_after),
        },
        "aod_relative_change": metrics.rational_json(change),
    }
    _emit_json(obj)
    return EXIT_OK


def cmd_examples(args) -> int:
    fam = metrics.reference_family(args.name, args.n)
    _write_text(args.out, setfam.serialize_family(fam))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uclab",
        description="Union-closed block families: exact densities, oracle checks, scaling sweeps.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=(
            f"uclab {__version__} "
            f"(family-format {FAMILY_FORMAT_VERSION}, sweep-csv {SWEEP_CSV_VERSION})"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a block family (implicit JSON or materialized file)")
    p.add_argument("--k", type=int, required=True, help="block size")
    p.add_argument("--m", type=int, required=True, help="number of blocks")
    p.add_argument("--s", type=int, required=True, help="tag-set size per block")
    p.add_argument("--t-sets", help="explicit tag sets as JSON, e.g. [[1],[4]]")
    p.add_argument("--materialize", action="store_true", help="write the explicit family file")
    p.add_argument("--cap", type=int, default=None, help="materialization cap (default UCLAB_CAP or 1000000)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("analyze", help="exact metrics of a family file, or of block parameters")
    p.add_argument("family_file", nargs="?", help="family file to analyze")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t-sets", help="explicit tag sets as JSON (parameter mode)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("oracle-check", help="validate the structured representation against union closure")
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--cap", type=int, default=100_000, help="skip cells with more members than this")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("sweep", help="canonical scaling sweep over n_target = 2^from .. 2^to")
    p.add_argument("--from", dest="from_exp", type=int, required=True)
    p.add_argument("--to", dest="to_exp", type=int, required=True)
    p.add_argument("--spread", type=float, default=8.0, help="allowed max/min theta-ratio spread")
    p.add_argument("--csv", help="write the CSV here (band JSON then goes to stdout)")
    p.add_argument("--workers", type=int, default=1, help="parallel sweep rows (results identical)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("separate", help="co-singleton augmentation: separation and AOD before/after")
    p.add_argument("family_file", nargs="?", help="family file (union-closed, containing [n])")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--materialize", action="store_true", help="required in parameter mode")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser("examples", help="emit a named reference family as a family file")
    p.add_argument("name", choices=["triple", "chain"])
    p.add_argument("--n", type=int, help="universe size (chain only)")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_examples)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap", None) is None and hasattr(args, "cap"):
        try:
            args.cap = _default_cap()
        except UclabError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInconsistency as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except UclabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
