"""Command-line front end.

Subcommands::

    qsupercong verify STATEMENT [range flags]
    qsupercong scan STATEMENT [range flags] [--jobs N]
    qsupercong identity [identity4|identity5|identity6] [--precision D]
    qsupercong reproduce-all [--quick]

Exit codes: 0 all hold, 1 something fails, 2 undefined (gcd) or skipped,
3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from dataclasses import dataclass, fields
from math import gcd
from typing import Optional, Sequence

from .numeric import DEFAULT_DPS, IDENTITY_POINTS
from .padic import primes_upto
from .registry import STATEMENTS, UnknownStatement, lookup
from .report import CSV_COLUMNS, CongruenceReport, Outcome, Witness

EXIT_OK, EXIT_FAIL, EXIT_UNDEFINED, EXIT_USAGE = 0, 1, 2, 3

log = logging.getLogger("qsupercong")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    statement: Optional[str] = None
    n: Optional[list[int]] = None
    n_odd_upto: Optional[int] = None
    primes_upto: Optional[int] = None
    m: Optional[list[int]] = None
    format: str = "json"
    out: Optional[str] = None
    precision: int = DEFAULT_DPS
    jobs: int = 0
    quick: bool = False
    verbose: bool = False
    inject_fault: Optional[str] = None

    def __post_init__(self):
        if self.precision < 30:
            raise UsageError("precision must be at least 30 digits")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.jobs <= 0:
            self.jobs = os.cpu_count() or 1


# -- parsing helpers ---------------------------------------------------------


def parse_int_list(text: str) -> list[int]:
    """``"5"``, ``"5,7,11"`` or ``"1..21"`` (inclusive); negatives allowed."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"malformed range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def read_config(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


_CONVERT = {
    "n": parse_int_list,
    "m": parse_int_list,
    "n_odd_upto": int,
    "primes_upto": int,
    "precision": int,
    "jobs": int,
    "quick": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "verbose": lambda s: s.lower() in ("1", "true", "yes", "on"),
    "format": str,
    "out": str,
}


def build_config(args: argparse.Namespace) -> RunConfig:
    """Flags override the config file, which overrides defaults."""
    merged: dict = {}
    if getattr(args, "config", None):
        for key, value in read_config(args.config).items():
            if key not in _CONVERT:
                raise UsageError(f"unknown config key {key!r}")
            try:
                merged[key] = _CONVERT[key](value)
            except ValueError:
                raise UsageError(f"bad value for {key}: {value!r}") from None
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None and flag is not False:
            merged[f.name] = flag
    return RunConfig(**merged)


# -- parameter points ---------------------------------------------------------


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


def points_for(statement: str, cfg: RunConfig) -> list[dict]:
    """Parameter points for ``statement`` from the configured ranges."""
    kind = lookup(statement).kind
    numeric_kind = kind in ("q", "q_m", "d", "limits")
    if kind == "n_odd":
        if cfg.n is not None:
            ns = cfg.n
        else:
            hi = cfg.n_odd_upto or ((11 if cfg.quick else 25) if statement in ("eq1", "eq2")
                                    else (9 if cfg.quick else 21))
            ns = list(range(1, hi + 1, 2))
        for n in ns:
            _need(n >= 1 and n % 2 == 1, f"{statement} needs odd positive n, got {n}")
        pts = [{"n": n} for n in ns]
    elif kind in ("n_coprime6", "n_sign", "n_m"):
        ns = cfg.n or ([5, 7] if cfg.quick or kind == "n_m" else [5, 7, 11, 13])
        for n in ns:
            ok = n >= 1 and gcd(n, 6) == 1 and (n > 1 or kind != "n_coprime6")
            _need(ok, f"{statement} needs n coprime to 6" + (" and > 1" if kind == "n_coprime6" else "")
                  + f", got {n}")
        if kind == "n_coprime6":
            pts = [{"n": n} for n in ns]
        elif kind == "n_sign":
            pts = [{"n": n, "sign": s} for n in ns for s in (1, -1)]
        else:
            ms = cfg.m or [2, 3]
            for n in ns:
                for m in ms:
                    _need(m not in (n, -n), f"eq3 modulus vanishes at m = {m}; use s5")
            pts = [{"n": n, "m": m} for n in ns for m in ms]
    elif kind in ("prime", "prime5"):
        hi = cfg.primes_upto or (50 if cfg.quick else (99 if kind == "prime5" else 199))
        lo = 5 if kind == "prime5" else 3
        pts = [{"p": p} for p in primes_upto(hi) if p >= lo]
        _need(bool(pts), f"no primes >= {lo} up to {hi}")
    elif kind == "q":
        pts = [{"q": q} for q in IDENTITY_POINTS]
    elif kind == "q_m":
        pts = [{"q": q, "m": m} for m in (cfg.m or [1, 2]) for q in IDENTITY_POINTS]
    elif kind == "d":
        ds = cfg.n or [3, 5, 7, 9]
        for d in ds:
            _need(d >= 3 and d % 2 == 1, f"zeta needs odd d >= 3, got {d}")
        pts = [{"d": d} for d in ds]
    elif kind == "limits":
        ds = cfg.n or [3, 5]
        for d in ds:
            _need(d >= 3 and d % 2 == 1, f"limits needs odd d >= 3, got {d}")
        pts = [{"series": "central"}] + [{"series": s, "d": d, "l": l}
                                         for s in ("S1", "S2") for d in ds for l in range(5)]
    elif kind == "lemma":
        ds = cfg.n or [3, 5, 7]
        for d in ds:
            _need(d >= 3 and d % 2 == 1, f"lemma1 needs odd d >= 3, got {d}")
        pts = [{"series": s, "d": d} for s in ("S1", "S2") for d in ds]
        pts += [{"series": "synthetic", "d": d, "trials": 100, "seed": d} for d in ds]
    else:  # pragma: no cover - registry and this table are kept in sync
        raise UsageError(f"no range rule for {statement}")
    if numeric_kind and cfg.precision != DEFAULT_DPS:
        for p in pts:
            p["dps"] = cfg.precision
    return pts


# -- running ------------------------------------------------------------------


def _faulty(report: CongruenceReport) -> CongruenceReport:
    return CongruenceReport(report.statement_id, report.parameters, report.modulus_description,
                            Outcome.FAILS, Witness(None, ("injected fault",)), report.ms,
                            note="injected fault")


def make_runner(cfg: RunConfig):
    from .engine import scan

    def run(statement: str, points: list[dict]) -> list[CongruenceReport]:
        if cfg.inject_fault == statement:
            if lookup(statement).exact:
                points = [dict(p, perturb=(0, 1)) for p in points]
                return scan(statement, points, cfg.jobs)
            return [_faulty(r) for r in scan(statement, points, cfg.jobs)]
        return scan(statement, points, cfg.jobs)
    return run


def exit_code(reports: Sequence[CongruenceReport]) -> int:
    verdicts = {r.verdict for r in reports}
    if Outcome.FAILS in verdicts:
        return EXIT_FAIL
    if verdicts & {Outcome.UNDEFINED_GCD, Outcome.SKIPPED}:
        return EXIT_UNDEFINED
    return EXIT_OK


def render(reports: Sequence[CongruenceReport], fmt: str, verbose: bool = False) -> str:
    if fmt == "json":
        return "".join(r.to_json(verbose) + "\n" for r in reports)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in reports:
            w.writerow(r.csv_row())
        return buf.getvalue()
    return "".join(r.text_line() + "\n" for r in reports)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: RunConfig, statements: Sequence[str]) -> int:
    runner = make_runner(cfg)
    reports = []
    for sid in statements:
        reports.extend(runner(sid, points_for(sid, cfg)))
    _emit(render(reports, cfg.format, cfg.verbose), cfg.out)
    code = exit_code(reports)
    log.info("%d reports, exit %d", len(reports), code)
    return code


def cmd_reproduce_all(cfg: RunConfig) -> int:
    from .reproduce import plan, run_plan, summary_table

    results = run_plan(plan(cfg.quick), make_runner(cfg))
    if cfg.inject_fault == "reproduce-all" and results:
        results[0].passed = False
    table = summary_table(results)
    if cfg.out:
        reports = [r for res in results for r in res.reports]
        _emit(render(reports, cfg.format, cfg.verbose), cfg.out)
    sys.stdout.write(table + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=parse_int_list, help="n values, e.g. 5 or 5,7,11 or 1..21")
    p.add_argument("--n-odd-upto", type=int, help="all odd n from 1 up to this bound")
    p.add_argument("--primes-upto", type=int, help="odd primes up to this bound")
    p.add_argument("--m", type=parse_int_list, help="exponents m for a = q^m")
    p.add_argument("--format", choices=("json", "csv", "text"))
    p.add_argument("--out", help="write records here instead of stdout")
    p.add_argument("--precision", type=int, help=f"decimal digits (default {DEFAULT_DPS})")
    p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    p.add_argument("--quick", action="store_true", help="reduced ranges")
    p.add_argument("--verbose", action="store_true", help="log progress, dump remainders")
    p.add_argument("--config", help="flat key = value file; flags take precedence")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsupercong", description="Exact verification of q-supercongruences.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    ids = ", ".join(STATEMENTS)
    for name, helptext in (("verify", "verify one statement"),
                           ("scan", "verify one statement over a parameter range")):
        p = sub.add_parser(name, help=helptext, description=f"statements: {ids}")
        p.add_argument("statement")
        _add_common(p)
    p = sub.add_parser("identity", help="series = product identities")
    p.add_argument("statement", nargs="?", choices=("identity4", "identity5", "identity6"))
    _add_common(p)
    p = sub.add_parser("reproduce-all", help="run every acceptance check and print a summary")
    _add_common(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = build_config(args)
        logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.command == "reproduce-all":
            return cmd_reproduce_all(cfg)
        if args.command == "identity":
            sids = [args.statement] if args.statement else ["identity4", "identity5", "identity6"]
        else:
            lookup(args.statement)
            sids = [args.statement]
        return cmd_verify(cfg, sids)
    except UnknownStatement as exc:
        print(f"qsupercong: unknown statement {exc.args[0]!r}; choose from {', '.join(STATEMENTS)}",
              file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"qsupercong: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
