"""Command-line interface: ``mirrormaps {series,check,modular,critical,radius,batch}``.

Exit codes: 0 when every requested check passes or conforms, 1 on a
failure, 2 on invalid arguments, 3 when a result stays indeterminate.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import List

from . import analytic, mirrormap, modular
from .cache import CacheKey, SeriesCache
from .interval import digits_to_bits
from .numbers import NTuple, NTupleError, multisets
from .report import FAIL, INDETERMINATE, CheckReport, elapsed_ms, exit_code
from .series import TruncatedSeries, revert

__all__ = ["main", "CheckReport", "UnknownCheck"]

EXIT_BAD_ARGS = 2


class UnknownCheck(KeyError):
    pass


# ---------------------------------------------------------------------------
# series with caching
# ---------------------------------------------------------------------------

def compute_series(n: NTuple, order: int, which: str, cache: SeriesCache) -> TruncatedSeries:
    key = CacheKey(which, n.label, order)

    def compute() -> TruncatedSeries:
        if which == "f":
            return mirrormap.f_series(n, order)
        if which == "g":
            return mirrormap.g_series(n, order)
        if which == "q":
            return mirrormap.canonical_coordinate(n, order)
        if which == "z":
            q = compute_series(n, order, "q", cache)
            return revert(q) if order >= 1 else TruncatedSeries.zero(order)
        raise ValueError(f"unknown series kind {which!r}")

    return cache.get_or_compute(key, compute)


def cached_build(n: NTuple, order: int, cache: SeriesCache) -> mirrormap.MirrorData:
    if not cache.enabled:
        return mirrormap.build(n, order)
    f = compute_series(n, order, "f", cache)
    g = compute_series(n, order, "g", cache)
    q = compute_series(n, order, "q", cache)
    z = compute_series(n, order, "z", cache)
    return mirrormap.MirrorData(n=n, order=order, f_series=f, g_series=g, q_series=q, z_series=z)


def _coeff_text(c) -> str:
    f = Fraction(c)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_series(s: TruncatedSeries, which: str, fmt: str, n: NTuple) -> str:
    start = 1 if which in ("q", "z") else 0
    idx = list(range(start, s.order + 1))
    if fmt == "plain":
        return " ".join(_coeff_text(s[m]) for m in idx)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["m", "coefficient"])
        for m in idx:
            w.writerow([m, _coeff_text(s[m])])
        return buf.getvalue().rstrip("\n")
    coeffs = [s[m] if type(s[m]) is int else _coeff_text(s[m]) for m in idx]
    return json.dumps({"n": n.label, "which": which, "order": s.order, "start": start,
                       "coefficients": coeffs}, sort_keys=True)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

CHECKS = ("positivity", "kaluza", "conj2", "conj5", "critical", "krit", "stirling",
          "asymptotic", "round-trip", "g-over-f", "partial-sum")


def run_check(name: str, n: NTuple, order: int, prec: int, cache: SeriesCache,
              power: int = 1, budget: int = analytic.DEFAULT_BUDGET) -> CheckReport:
    t0 = time.perf_counter()
    if name not in CHECKS:
        raise UnknownCheck(name)
    if name == "kaluza":
        return mirrormap.check_kaluza(n, order)
    if name == "critical":
        return analytic.check_critical_inequality(n, prec, budget)
    if name == "krit":
        if n.phi_total < 4:
            return CheckReport("krit", {"n": n.label}, INDETERMINATE,
                               [(0, "the criterion is only stated for Phi >= 4")], elapsed_ms(t0))
        return analytic.krit_report_to_check(analytic.krit_check(n, prec), t0)
    if name == "stirling":
        return analytic.stirling_bound_check(n, order, prec)
    d = cached_build(n, order, cache)
    if name == "positivity":
        return mirrormap.check_positivity(d)
    if name == "round-trip":
        return mirrormap.check_round_trip(d)
    if name == "g-over-f":
        return mirrormap.check_log_ratio(d)
    if name == "partial-sum":
        return mirrormap.check_partial_sum(d)
    if name == "asymptotic":
        return analytic.asymptotic_fit(d)
    if name == "conj2":
        rep = mirrormap.classify_z_signs(d)
        return mirrormap.sign_report_to_check("conj2", d, rep, t0)
    # conj5
    rep = mirrormap.conj5_transform(d, power)
    return mirrormap.sign_report_to_check("conj5", d, rep, t0, power=power)


def _emit(reports: List[CheckReport]) -> None:
    if len(reports) == 1:
        print(reports[0].to_json())
    else:
        print(json.dumps([r.to_dict() for r in reports], sort_keys=True, default=str))


def cmd_series(args, cache: SeriesCache) -> int:
    n = NTuple.parse(args.n)
    s = compute_series(n, args.order, args.which, cache)
    print(format_series(s, args.which, args.format, n))
    return 0


def cmd_check(args, cache: SeriesCache) -> int:
    n = NTuple.parse(args.n)
    rep = run_check(args.name, n, args.order, digits_to_bits(args.digits), cache, args.power, args.budget)
    _emit([rep])
    return exit_code([rep])


def cmd_modular(args, cache: SeriesCache) -> int:
    case = modular.get_case(args.case)
    label = case.n.label
    names = [args.identity] if args.identity else case.names + (
        ["clausen"] if label in modular.CLAUSEN_PARAMETERS else [])
    reports = []
    for name in names:
        if name == "clausen":
            reports.append(modular.check_clausen(case, args.order))
        elif name == "quadratic":
            reports.append(modular.check_quadratic_transform(args.order))
        else:
            reports.append(modular.verify_identity(case, name, args.order))
    _emit(reports)
    return exit_code(reports)


def critical_summary(n: NTuple, prec: int, budget: int) -> dict:
    cv = analytic.critical_values(n, prec, budget)
    return {
        "n": n.label, "phi": n.phi_total, "c": n.c_constant,
        "rho": str(cv.rho), "s": str(cv.s_value),
        "f_at_c": "divergent" if cv.f_at_c is None else str(cv.f_at_c),
        "qc": str(cv.qc), "terms_used": cv.terms_used,
    }


def cmd_critical(args, cache: SeriesCache) -> int:
    n = NTuple.parse(args.n)
    prec = digits_to_bits(args.digits)
    rep = analytic.check_critical_inequality(n, prec, args.budget)
    out = {"values": critical_summary(n, prec, args.budget), "report": rep.to_dict()}
    print(json.dumps(out, sort_keys=True, default=str))
    return exit_code([rep])


def reference_radius(n: NTuple, prec: int = 64, budget: int = analytic.DEFAULT_BUDGET) -> float:
    """Known radius for ``Phi <= 3``; the conjectured value ``q_N(1/C)`` otherwise."""
    if n.phi_total <= 3:
        return float(analytic.rho_value(n, prec))
    return float(analytic.qc_value(n, prec, budget))


def cmd_radius(args, cache: SeriesCache) -> int:
    n = NTuple.parse(args.n)
    z = compute_series(n, args.order, "z", cache)
    fit = analytic.radius_fit(z, args.method)
    ref = reference_radius(n)
    print(json.dumps({"n": n.label, "order": args.order, "method": args.method, "estimate": fit.radius,
                      "error_estimate": fit.error, "fit_residual": fit.residual, "certified": False,
                      "reference": ref, "relative_difference": abs(fit.radius / ref - 1)},
                     sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# batch sweeps
# ---------------------------------------------------------------------------

CSV_COLUMNS = ["tuple", "phi", "c", "rho", "qc", "conj2_class", "radius_est", "radius_ref"]


def _batch_one(label: str, order: int, prec: int, budget: int, out_dir: str, cache_dir, use_cache: bool):
    n = NTuple.parse(label)
    cache = SeriesCache(cache_dir, use_cache)
    reports = []
    row = {"tuple": f"({label})", "phi": n.phi_total, "c": n.c_constant}
    try:
        d = cached_build(n, order, cache)
        for name in ("positivity", "round-trip", "g-over-f", "partial-sum"):
            reports.append(run_check(name, n, order, prec, cache))
        reports.append(mirrormap.check_kaluza(n, order))
        reports.append(analytic.stirling_bound_check(n, min(order, 200), prec))
        if order >= 5:
            t0 = time.perf_counter()
            sign = mirrormap.classify_z_signs(d)
            reports.append(mirrormap.sign_report_to_check("conj2", d, sign, t0))
            row["conj2_class"] = sign.pattern
        crit = analytic.check_critical_inequality(n, prec, budget)
        reports.append(crit)
        if n.phi_total >= 4:
            t0 = time.perf_counter()
            reports.append(analytic.krit_report_to_check(analytic.krit_check(n, prec), t0))
        row["rho"] = crit.parameters.get("rho")
        row["qc"] = crit.parameters.get("qc")
        try:
            row["radius_est"] = analytic.radius_fit(d.z_series).radius
        except analytic.InsufficientCoefficients:
            row["radius_est"] = ""
        row["radius_ref"] = reference_radius(n, 64, budget)
    except Exception as exc:  # record and keep sweeping
        reports.append(CheckReport("pipeline", {"n": label}, FAIL, [(0, f"{type(exc).__name__}: {exc}")]))
    payload = {"tuple": label, "order": order, "reports": [r.to_dict() for r in reports]}
    path = Path(out_dir) / f"tuple_{label.replace(',', '_')}.json"
    path.write_text(json.dumps(payload, sort_keys=True, indent=1, default=str) + "\n")
    return label, row, [r.outcome for r in reports]


def cmd_batch(args, cache: SeriesCache) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tuples = [n.label for n in multisets(args.max_entry, args.max_k)]
    prec = digits_to_bits(args.digits)
    jobs = [(lab, args.order, prec, args.budget, str(out), str(cache.directory), cache.enabled) for lab in tuples]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_one, *zip(*jobs)))
    else:
        results = [_batch_one(*j) for j in jobs]
    with open(out / "aggregate.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        w.writeheader()
        for _, row, _ in results:
            w.writerow(row)
    outcomes = [o for _, _, os_ in results for o in os_]
    failed = sorted({lab for lab, _, os_ in results if FAIL in os_})
    summary = {"tuples": len(results), "checks": len(outcomes), "failed_tuples": failed,
               "indeterminate": outcomes.count(INDETERMINATE), "out_dir": str(out)}
    print(json.dumps(summary, sort_keys=True))
    if failed:
        return 1
    return 3 if INDETERMINATE in outcomes else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=100, help="truncation order M")
    common.add_argument("--digits", type=int, default=30, help="decimal digits for interval work")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch sweeps")
    common.add_argument("--cache", dest="cache", action="store_true", default=True,
                        help="use the series cache (default; directory from $MIRRORMAP_CACHE)")
    common.add_argument("--no-cache", dest="cache", action="store_false")
    common.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    common.add_argument("--budget", type=int, default=analytic.DEFAULT_BUDGET,
                        help="maximum number of summed terms for critical values")

    p = argparse.ArgumentParser(prog="mirrormaps", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="print coefficients of f, g, q or z")
    s.add_argument("--n", required=True, help="comma-separated entries, e.g. 2,2,3")
    s.add_argument("--which", choices=("f", "g", "q", "z"), default="q")
    s.set_defaults(func=cmd_series)

    c = sub.add_parser("check", parents=[common], help="run one named check")
    c.add_argument("name", choices=CHECKS)
    c.add_argument("--n", required=True)
    c.add_argument("--power", type=int, default=1, help="exponent for conj5")
    c.set_defaults(func=cmd_check)

    m = sub.add_parser("modular", parents=[common], help="verify modular identities")
    m.add_argument("--case", required=True, choices=modular.case_labels())
    m.add_argument("--identity", help="identity name, 'clausen' or 'quadratic'; default all")
    m.set_defaults(func=cmd_modular)

    cr = sub.add_parser("critical", parents=[common], help="certified critical values")
    cr.add_argument("--n", required=True)
    cr.set_defaults(func=cmd_critical)

    r = sub.add_parser("radius", parents=[common], help="heuristic radius of the mirror map")
    r.add_argument("--n", required=True)
    r.add_argument("--method", choices=("domb_sykes", "ratio"), default="domb_sykes")
    r.set_defaults(func=cmd_radius)

    b = sub.add_parser("batch", parents=[common], help="sweep all small tuples")
    b.add_argument("--max-entry", type=int, required=True)
    b.add_argument("--max-k", type=int, required=True)
    b.add_argument("--out-dir", required=True)
    b.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.order < 0 or args.digits < 1 or args.jobs < 1 or args.budget < 2:
        parser.error("order must be >= 0, digits and jobs >= 1, budget >= 2")
    if args.command == "batch" and (args.max_entry < 2 or args.max_k < 1):
        parser.error("batch bounds must be positive (max-entry >= 2)")
    cache = SeriesCache(enabled=args.cache)
    try:
        return args.func(args, cache)
    except (NTupleError, modular.UnknownIdentity, UnknownCheck) as exc:
        print(f"mirrormaps: error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
