"""Command-line driver: run verification cases and print (or emit as JSON) their reports."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from .groebner import Ideal, IncompleteBasis, ResourceLimitExceeded, resource_limits
from .poly import dump_polynomials
from .report import FAIL, RESOURCE_LIMIT, VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

ALL_CASES = ("adjoint", "blowup", "orbits", "poincare", "sl2c2", "sp:1:1", "sp:1:2", "sp:1:3", "sym3", "sym4")
_SP = re.compile(r"^sp:(\d+):(\d+)$")


def _case_runner(case: str, seed: int) -> Callable[[], VerificationReport]:
    from . import blowup, sl2, sp
    m = _SP.match(case)
    if m:
        n, k = int(m.group(1)), int(m.group(2))
        if n < 1 or k < 1:
            raise KeyError(case)
        return lambda: sp.reducedness_witnesses(n, k)
    table = {
        "sym3": sl2.sym3_quotient_check,
        "sym4": sl2.sym4_quotient_check,
        "adjoint": sl2.so3_quotient_checks,
        "sl2c2": sl2.sl2c2_presentation_check,
        "poincare": sl2.poincare_check,
        "blowup": lambda: blowup.blowup_suite(seed),
        "orbits": lambda: sp.orbit_checks(seed),
    }
    return table[case]


def _base_ideals(case: str) -> dict[str, Ideal]:
    """Ideals a case builds from scratch, for export alongside those it records."""
    from . import blowup, sl2, sp
    m = _SP.match(case)
    if m:
        return {"moment": sp.sp_moment_ideal(int(m.group(1)), int(m.group(2)))}
    if case in ("sym3", "sym4"):
        return {"moment": sl2.sym_moment_ideal(int(case[-1]))}
    if case == "adjoint":
        return {f"moment_theta{n}": sl2.so3_moment_ideal(n) for n in (1, 2)}
    if case == "sl2c2":
        return {"moment": sl2.sl2c2_moment_ideal(), "h": sl2.h_ideal(), "sing": sl2.z_sing_ideal()}
    if case == "blowup":
        out = {}
        for c in blowup.build_ztilde_charts() + blowup.build_y_charts():
            out[f"strict_{c.chart_var}"] = c.strict_transform
        return out
    return {}


def resolve_cases(names: Sequence[str]) -> list[str]:
    out: list[str] = []
    for name in names:
        for case in (ALL_CASES if name == "all" else (name,)):
            _case_runner(case, 0)  # KeyError for unknown names
            if case not in out:
                out.append(case)
    return sorted(out)


def run_case(case: str, seed: int = 0, degree_bound: int = 0, timeout: float | None = None,
             export: bool = False) -> tuple[dict, dict[str, str]]:
    """Run one case under the given caps; returns its JSON record and exported ideal texts."""
    runner = _case_runner(case, seed)
    try:
        with resource_limits(max_degree=degree_bound or None, timeout=timeout):
            rep = runner()
    except (ResourceLimitExceeded, IncompleteBasis) as exc:
        rep = VerificationReport(case, "case did not finish", "")
        rep.mark_resource_limit(str(exc))
    texts: dict[str, str] = {}
    if export:
        ideals = dict(_base_ideals(case))
        ideals.update({k: v for k, v in rep.data.items() if isinstance(v, Ideal)})
        for name, I in sorted(ideals.items()):
            texts[name] = f"# ring: {','.join(I.ring.names)}\n" + dump_polynomials(I.generators)
    return {"report": rep.to_json(), "summary": rep.summary()}, texts


def _export_file(directory: str, case: str, name: str) -> str:
    return os.path.join(directory, f"{case.replace(':', '_')}__{name}.txt")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="symred", description="Machine-check the computational claims on symplectic reductions.")
    ap.add_argument("cases", nargs="+", help="sp:<n>:<m>, sym3, sym4, adjoint, sl2c2, blowup, orbits, poincare or all")
    ap.add_argument("--json", action="store_true", help="emit a JSON array of reports")
    ap.add_argument("--seed", type=int, default=0, help="seed for sampled points (default 0)")
    ap.add_argument("--degree-bound", type=int, default=0, help="cap Buchberger degrees (0 = unlimited)")
    ap.add_argument("--timeout", type=float, default=None, help="seconds per case")
    ap.add_argument("--export-ideals", metavar="DIR", help="write constructed ideals, one polynomial per line")
    ap.add_argument("--workers", type=int, default=1, help="run cases in this many processes")
    ap.add_argument("--no-timing", action="store_true", help="report millis as 0 (byte-identical JSON)")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cases = resolve_cases(args.cases)
    except KeyError as exc:
        print(f"symred: unknown case {exc.args[0]!r}", file=sys.stderr)
        return EXIT_USAGE
    if args.seed < 0 or args.degree_bound < 0 or args.workers < 1:
        print("symred: --seed and --degree-bound must be >= 0, --workers >= 1", file=sys.stderr)
        return EXIT_USAGE

    job = dict(seed=args.seed, degree_bound=args.degree_bound, timeout=args.timeout,
               export=bool(args.export_ideals))
    if args.workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            futures = {c: pool.submit(run_case, c, **job) for c in cases}
            results = {c: f.result() for c, f in futures.items()}
    else:
        results = {c: run_case(c, **job) for c in cases}

    records = []
    for case in cases:  # canonical order regardless of completion order
        rec, texts = results[case]
        if args.no_timing:
            rec["report"]["millis"] = 0
        records.append(rec)
        if args.export_ideals:
            os.makedirs(args.export_ideals, exist_ok=True)
            for name, text in texts.items():
                with open(_export_file(args.export_ideals, case, name), "w") as fh:
                    fh.write(text)

    if args.json:
        print(json.dumps([r["report"] for r in records], indent=2))
    else:
        for r in records:
            print(r["summary"] if not args.no_timing else _strip_ms(r["summary"]))
    verdicts = [r["report"]["verdict"] for r in records]
    if FAIL in verdicts:
        return EXIT_FAIL
    if RESOURCE_LIMIT in verdicts:
        return EXIT_LIMIT
    return EXIT_OK


def _strip_ms(summary: str) -> str:
    head, _, rest = summary.partition("\n")
    head = re.sub(r" \(\d+ ms\)$", "", head)
    return head + ("\n" + rest if rest else "")


if __name__ == "__main__":
    sys.exit(main())
