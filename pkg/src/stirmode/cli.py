"""Command-line front end: ``stirmode {stirling,kn,verify,implications,conjecture}``.

Exit codes: 0 all selected checks pass, 1 a check failed or a counterexample
was found, 2 usage error, 3 precision-cap diagnostic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from datetime import datetime, timezone

from .errors import PrecisionCapError, SizeLimitError, DomainError, StirmodeError
from .poisson_binomial import conjecture_search
from .stirling import locate_mode, stirling, stirling_row
from .dobinski import corollary_bounds, dobinski_mode
from .verifier import CHECKS, iter_reports, RangeSummary, verify_implications

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3

log = logging.getLogger("stirmode")


class UsageError(Exception):
    pass


def _generated_at(use_clock: bool) -> str | None:
    # wall-clock stamps only on request so identical invocations give identical bytes
    if use_clock:
        return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch:
        return datetime.fromtimestamp(int(epoch), timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return None


def report_document(command: str, parameters: dict, results: list, summary: dict,
                    use_clock: bool = False) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "results": results,
        "summary": summary,
        "generated_at": _generated_at(use_clock),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _positive(name: str, value: int, minimum: int = 1) -> int:
    if value < minimum:
        raise UsageError(f"{name} must be >= {minimum}, got {value}")
    return value


# -- subcommands -----------------------------------------------------------

def cmd_stirling(args) -> int:
    _positive("n", args.n)
    if args.k is not None:
        value = stirling(args.n, args.k)
        _emit(json.dumps(str(value)) + "\n" if args.format == "json" else f"{value}\n", None)
        return EXIT_OK
    row = stirling_row(args.n)
    if args.format == "json":
        _emit(json.dumps([str(v) for v in row]) + "\n", None)
    else:
        _emit(" ".join(str(v) for v in row) + "\n", None)
    return EXIT_OK


def cmd_kn(args) -> int:
    _positive("n", args.n, 2)
    mode = locate_mode(stirling_row(args.n))
    dm = dobinski_mode(args.n)
    lo, hi = corollary_bounds(args.n)
    rec = {
        "n": args.n,
        "K_n": mode.index,
        "k_star": dm.k_star,
        "corollary_interval": [lo, hi],
        "ties": mode.ties_right,
    }
    if args.format == "json":
        _emit(json.dumps(rec) + "\n", None)
    else:
        _emit(f"K_n={mode.index} k_star={dm.k_star} interval=[{lo},{hi}] "
              f"ties={'true' if mode.ties_right else 'false'}\n", None)
    return EXIT_OK


def _parse_checks(text: str | None) -> tuple[str, ...]:
    if not text:
        return CHECKS
    chosen = tuple(c.strip() for c in text.split(",") if c.strip())
    bad = [c for c in chosen if c not in CHECKS]
    if bad or not chosen:
        raise UsageError(f"unknown checks {bad}; choose from {', '.join(CHECKS)}")
    return chosen


CSV_FIELDS = ("n", "K_n", "ties_right", "k_star", "branch_greater", "corollary_lo", "corollary_hi",
              "corollary_ok", "theorem1_ok", "cp_membership_ok", "wegner_upper_ok", "wegner_lower_ok",
              "implication_upper_ok", "implication_lower_ok", "equality_event")


def _csv_text(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        d = r.as_dict()
        lo, hi = d.pop("corollary_interval")
        d["corollary_lo"], d["corollary_hi"] = lo, hi
        w.writerow({k: ("" if d[k] is None else d[k]) for k in CSV_FIELDS})
    return buf.getvalue()


def cmd_verify(args) -> int:
    checks = _parse_checks(args.checks)
    if args.start < 2 or args.stop < args.start:
        raise UsageError(f"need 2 <= from <= to, got from={args.start} to={args.stop}")
    summary = RangeSummary(args.start, args.stop)
    for r in iter_reports(args.start, args.stop):
        summary.add(r)
        if r.n % 500 == 0:
            log.info("verified through n=%d", r.n)
    if args.format == "csv":
        text = _csv_text(summary.reports)
    else:
        doc = report_document(
            "verify",
            {"from": args.start, "to": args.stop, "checks": list(checks)},
            [r.as_dict() for r in summary.reports],
            summary.as_dict(checks),
            args.timestamp,
        )
        text = _dump_json(doc)
    _emit(text, args.out)
    for c in checks:
        if summary.failures[c]:
            log.warning("check %s failed at n=%s", c, summary.failures[c][:20])
    return EXIT_OK if summary.passed(checks) else EXIT_FAIL


def cmd_implications(args) -> int:
    if args.start < 1 or args.stop < args.start:
        raise UsageError(f"need 1 <= from <= to, got from={args.start} to={args.stop}")
    rep = verify_implications(args.start, args.stop)
    doc = report_document("implications", {"from": args.start, "to": args.stop}, [],
                          rep.as_dict(), args.timestamp)
    _emit(_dump_json(doc), args.out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_conjecture(args) -> int:
    _positive("n", args.n)
    if args.trials < 0:
        raise UsageError("trials must be >= 0")
    if args.grid is not None:
        _positive("grid", args.grid)
    if args.trials == 0 and args.grid is None:
        raise UsageError("nothing to do: give --trials > 0 and/or --grid")
    rep = conjecture_search(args.n, args.trials, args.seed, args.grid)
    d = rep.as_dict()
    results = d.pop("witnesses") + d.pop("prop1_violations")
    d["prop1_violation_count"] = len(rep.prop1_violations)
    doc = report_document("conjecture",
                          {"n": args.n, "trials": args.trials, "seed": args.seed, "grid": args.grid},
                          results, d, args.timestamp)
    _emit(_dump_json(doc), args.out)
    if rep.counterexample_found or rep.prop1_violations:
        log.warning("shift >= 2 witnesses: %d, Proposition-1 violations: %d",
                    len(rep.witnesses), len(rep.prop1_violations))
        return EXIT_FAIL
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stirmode",
                                description="Exact Stirling numbers of the second kind and the location of their maximum.")
    p.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stirling", help="print S(n, k) or the whole row n")
    s.add_argument("n", type=int)
    s.add_argument("k", type=int, nargs="?")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_stirling)

    s = sub.add_parser("kn", help="mode K_n, k_star and the branch-selected interval")
    s.add_argument("n", type=int)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_kn)

    s = sub.add_parser("verify", help="run per-n checks over a range")
    s.add_argument("--from", dest="start", type=int, required=True)
    s.add_argument("--to", dest="stop", type=int, required=True)
    s.add_argument("--checks", help=f"comma-separated subset of: {','.join(CHECKS)}")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--out")
    s.add_argument("--timestamp", action="store_true", help="record wall-clock time in generated_at")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("implications", help="numeric form of the Theorem-1 => Wegner implications")
    s.add_argument("--from", dest="start", type=int, required=True)
    s.add_argument("--to", dest="stop", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--timestamp", action="store_true")
    s.set_defaults(func=cmd_implications)

    s = sub.add_parser("conjecture", help="search for m1 = m0 + 2 under Poisson(1) convolution")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--trials", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid", type=int)
    s.add_argument("--out")
    s.add_argument("--timestamp", action="store_true")
    s.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, SizeLimitError, DomainError) as exc:
        print(f"stirmode: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionCapError as exc:
        print(f"stirmode: precision cap: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except StirmodeError as exc:
        print(f"stirmode: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
