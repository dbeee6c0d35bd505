"""Command-line front end: per-degree bounds, tables, star reports, oracles.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 verification
failure.  All behavior is flag-driven (no environment variables) and every
output for a fixed seed is byte-identical across runs; reported bounds are
truncated toward zero at the requested precision, never rounded up.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal

import numpy as np

from . import augment, oracles, search, stars
from .coupling import f_value, gamma_star
from .entropy import MAX_DEGREE, sigma_rate
from .errors import DomainError, NumericalError, SupercriticalError

__all__ = ["OutputRecord", "main", "run"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_VERIFY = 3

TABLE_HEADER = "d,alpha,alpha_hat,gw_margin"


@dataclass(frozen=True)
class OutputRecord:
    """One degree's worth of results, as emitted by ``alpha`` and ``table``."""

    d: int
    alpha: float
    alpha_hat: float
    gw_margin: float
    elapsed_ms: float
    thinning: tuple = ()
    stars: tuple = ()


def _truncate(x: float, digits: int) -> str:
    """Fixed-point rendering, rounding toward zero on the decimal value."""
    quantum = Decimal(1).scaleb(-digits)
    return str(Decimal(repr(float(x))).quantize(quantum, rounding=ROUND_DOWN))


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this CLI reserves 2 for
    # numerical failures, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=1e-9,
                        help="bisection tolerance on alpha (default 1e-9)")
    parser.add_argument("--format", choices=("csv", "json", "pretty"),
                        default="pretty", help="output format (default pretty)")
    parser.add_argument("--precision", type=int, default=6,
                        help="printed decimal digits; bounds are truncated, "
                             "not rounded (default 6)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="regindep",
                     description="Lower bounds on the independence ratio of "
                                 "random d-regular graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_alpha = sub.add_parser("alpha", help="bound for a single degree")
    p_alpha.add_argument("d", type=int)
    _add_common(p_alpha)
    p_alpha.set_defaults(func=cmd_alpha)

    p_table = sub.add_parser("table", help="bounds for a degree range")
    p_table.add_argument("d_min", type=int)
    p_table.add_argument("d_max", type=int)
    _add_common(p_table)
    p_table.add_argument("--jobs", type=int, default=None,
                         help="worker processes (default: available cores)")
    p_table.set_defaults(func=cmd_table)

    p_stars = sub.add_parser("stars", help="thinning table and star-decomposition "
                                           "candidates for one degree")
    p_stars.add_argument("d", type=int)
    _add_common(p_stars)
    p_stars.add_argument("--dhat", type=str, default=None, metavar="LO..HI",
                         help="thinness-cap range (default 1..min(d-1, 32))")
    p_stars.add_argument("--alpha", type=float, default=None,
                         help="starting density (default: computed threshold)")
    p_stars.set_defaults(func=cmd_stars)

    p_verify = sub.add_parser("verify", help="run the oracle suite for one degree")
    p_verify.add_argument("d", type=int)
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--samples", type=int, default=1_000_000)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _record_fields(record: OutputRecord, digits: int) -> list[str]:
    return [
        str(record.d),
        _truncate(record.alpha, digits),
        _truncate(record.alpha_hat, digits),
        _truncate(record.gw_margin, digits),
    ]


def _emit_records(records, fmt: str, digits: int) -> None:
    if fmt == "csv":
        print(TABLE_HEADER)
        for rec in records:
            print(",".join(_record_fields(rec, digits)))
    elif fmt == "json":
        for rec in records:
            d, alpha, alpha_hat, gw_margin = _record_fields(rec, digits)
            print(json.dumps({
                "d": int(d),
                "alpha": float(alpha),
                "alpha_hat": float(alpha_hat),
                "gw_margin": float(gw_margin),
            }))
    else:
        for rec in records:
            d, alpha, alpha_hat, gw_margin = _record_fields(rec, digits)
            print(f"d = {d}")
            print(f"  alpha      = {alpha}   (threshold density)")
            print(f"  alpha_hat  = {alpha_hat}   (augmented lower bound)")
            print(f"  gw margin  = {gw_margin}   (1 - offspring mean)")
            print(f"  elapsed    = {rec.elapsed_ms:.1f} ms")


def _compute_record(d: int, tol: float) -> OutputRecord:
    start = time.perf_counter()
    outcome = search.alpha_star(d, tol)
    report = augment.augmentation_report(d, outcome.alpha_star)
    elapsed_ms = (time.perf_counter() - start) * 1e3
    return OutputRecord(
        d=d,
        alpha=report.alpha,
        alpha_hat=report.alpha_hat,
        gw_margin=1.0 - report.gw_offspring_mean,
        elapsed_ms=elapsed_ms,
    )


def _table_worker(args):
    d, tol = args
    return _compute_record(d, tol)


def cmd_alpha(args) -> int:
    record = _compute_record(args.d, args.tol)
    _emit_records([record], args.format, args.precision)
    return EXIT_OK


def cmd_table(args) -> int:
    if args.d_min > args.d_max:
        raise DomainError(f"empty degree range [{args.d_min}, {args.d_max}]")
    degrees = list(range(args.d_min, args.d_max + 1))
    jobs = args.jobs
    if jobs is None:
        jobs = min(len(degrees), max(1, os.cpu_count() or 1))
    if jobs > 1 and len(degrees) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_table_worker, [(d, args.tol) for d in degrees]))
    else:
        records = [_compute_record(d, args.tol) for d in degrees]
    _emit_records(records, args.format, args.precision)
    return EXIT_OK


def _parse_dhat_range(spec: str, d: int):
    try:
        lo_text, hi_text = spec.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise DomainError(f"--dhat expects LO..HI, got {spec!r}") from None
    if not 1 <= lo <= hi < d:
        raise DomainError(f"--dhat range must satisfy 1 <= LO <= HI < d, got {spec!r}")
    return lo, hi


def cmd_stars(args) -> int:
    d = args.d
    if args.dhat is not None:
        dhat_lo, dhat_hi = _parse_dhat_range(args.dhat, d)
    else:
        dhat_lo, dhat_hi = 1, min(d - 1, 32)
    if args.alpha is not None:
        alpha = args.alpha
    else:
        alpha = search.alpha_star(d, args.tol).alpha_star

    rows = stars.thinning_table(d, alpha, dhat_lo, dhat_hi)
    candidates = stars.star_candidates(d, alpha)
    upper = stars.load_upper_bounds().get(d)
    digits = args.precision

    if args.format == "json":
        print(json.dumps({"type": "density", "d": d,
                          "alpha": float(_truncate(alpha, max(digits, 8)))}))
        for row in rows:
            print(json.dumps({
                "type": "thinning", "d": d, "dhat": row.dhat,
                "deleted": float(_truncate(row.deleted, digits)),
                "alpha_thin": float(_truncate(row.alpha_thin, digits)),
            }))
        for cand in candidates:
            print(json.dumps({
                "type": "star", "d": d, "k": cand.k,
                "alpha_req": float(_truncate(cand.alpha_req, digits)),
                "dhat_min": cand.dhat_min,
                "status": cand.status,
                "note": cand.external_conditions_note,
            }))
        if upper is not None:
            print(json.dumps({"type": "necessary", "d": d, "alpha_upper": upper,
                              "k_max": stars.necessary_bound_k(d, upper)}))
    elif args.format == "csv":
        print("dhat,deleted,alpha_thin")
        for row in rows:
            print(f"{row.dhat},{_truncate(row.deleted, digits)},"
                  f"{_truncate(row.alpha_thin, digits)}")
        print()
        print("k,alpha_req,dhat_min,status")
        for cand in candidates:
            dhat_min = "" if cand.dhat_min is None else str(cand.dhat_min)
            print(f"{cand.k},{_truncate(cand.alpha_req, digits)},{dhat_min},"
                  f"{cand.status}")
    else:
        print(f"degree d = {d}, starting density alpha = {_truncate(alpha, max(digits, 8))}")
        print()
        print("thinning (cap, deleted density, thinned density):")
        for row in rows:
            print(f"  dhat={row.dhat:>4d}  deleted={_truncate(row.deleted, digits)}"
                  f"  alpha_thin={_truncate(row.alpha_thin, digits)}")
        print()
        print("star-decomposition candidates (density test only):")
        for cand in candidates:
            via = f"via dhat={cand.dhat_min}" if cand.dhat_min is not None else "no cap suffices"
            print(f"  k={cand.k:>4d}  requires {_truncate(cand.alpha_req, digits)}:"
                  f" {cand.status} ({via})")
        print()
        print(f"note: {stars.EXTERNAL_CONDITIONS_NOTE}")
        if upper is not None:
            k_max = stars.necessary_bound_k(d, upper)
            print(f"necessary condition: with ratio upper bound {upper},"
                  f" k-star decompositions need k <= {k_max}")
    return EXIT_OK


def _verify_checks(d: int, tol: float, samples: int, seed: int):
    """Yield (name, passed, detail) for every oracle check at degree d."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(10_000,)))
    outcome = search.alpha_star(d, tol)
    a_star = outcome.alpha_star
    yield ("threshold", True,
           f"alpha_star={a_star:.12g} margin={outcome.margin_at_threshold:.3g} "
           f"iterations={outcome.iterations}")

    sigma = sigma_rate(d, a_star)
    yield ("first-moment", sigma >= -1e-12, f"sigma={sigma:.12g}")

    # Grid argmax vs the search, decisively below and above the threshold.
    a_below = a_star * 0.99
    ok_below, _ = search.condition_holds(d, a_below)
    grid_beta, _ = oracles.grid_argmax_f(d, a_below, 10**6)
    dev_below = abs(grid_beta - a_below * a_below)
    yield ("grid-argmax-below", ok_below and dev_below <= 1e-5,
           f"|grid - alpha^2| = {dev_below:.3g}")

    a_above = min(0.499, a_star * 1.01)
    points = search.local_maxima(d, a_above)
    search_beta = max(points, key=lambda bf: bf[1])[0]
    grid_beta, _ = oracles.grid_argmax_f(d, a_above, 10**6)
    dev_above = abs(grid_beta - search_beta)
    yield ("grid-argmax-above", dev_above <= 1e-5,
           f"|grid - search| = {dev_above:.3g}")

    # Stationarity of the inner maximizer on random points.
    alphas = rng.uniform(0.01, 0.49, size=1000)
    betas = rng.uniform(0.0, 1.0, size=1000) * alphas
    worst = 0.0
    for a, b in zip(alphas, betas):
        g = gamma_star(a, b)
        residual = abs((a - b - g) ** 2 - g * (1.0 - 4.0 * a + 2.0 * b + 2.0 * g))
        worst = max(worst, residual / max(1.0, g))
    yield ("gamma-stationarity", worst <= 1e-12, f"max residual = {worst:.3g}")

    # Analytic derivative vs central differences at this degree.
    worst = 0.0
    for _ in range(200):
        a = rng.uniform(0.02, 0.45)
        b = rng.uniform(0.05, 0.95) * a
        worst = max(worst, oracles.fd_derivative_check(d, a, b))
    yield ("derivative-fd", worst <= 1e-6, f"max relative error = {worst:.3g}")

    # Rate identities at the independent and identical couplings.
    worst = 0.0
    for _ in range(20):
        a = rng.uniform(0.01, 0.45)
        sigma = sigma_rate(d, a)
        worst = max(worst, abs(f_value(d, a, a * a) - 2.0 * sigma),
                    abs(f_value(d, a, a) - sigma))
    yield ("rate-identities", worst <= 1e-10, f"max deviation = {worst:.3g}")

    # Monte Carlo broadcast vs the closed forms.
    est_fz, est_iso = oracles.mc_broadcast_full_zero(d, a_star, samples, seed)
    exact_fz = augment.full_zero_prob(d, a_star)
    exact_iso = augment.isolated_full_zero_prob(d, a_star)
    z_fz = abs(est_fz.mean - exact_fz) / est_fz.std_error
    z_iso = abs(est_iso.mean - exact_iso) / est_iso.std_error
    yield ("mc-full-zero", z_fz <= 3.0,
           f"estimate={est_fz.mean:.8f} exact={exact_fz:.8f} z={z_fz:.2f}")
    yield ("mc-isolated", z_iso <= 3.0,
           f"estimate={est_iso.mean:.8f} exact={exact_iso:.8f} z={z_iso:.2f}")

    # Component simulation: subcritical processes must never hit the cap.
    mean = augment.gw_offspring_mean(d, a_star)
    gw_samples = min(samples, 100_000)
    est_size, truncated = oracles.mc_gw_component(d, a_star, gw_samples, seed=seed)
    expected_size = 1.0 + d * (mean / (d - 1)) / (1.0 - mean)
    z_size = abs(est_size.mean - expected_size) / est_size.std_error
    ok_gw = mean <= 1.0 and z_size <= 4.0
    if mean <= 1.0 - 1e-3:
        ok_gw = ok_gw and truncated == 0.0
    yield ("gw-component", ok_gw,
           f"offspring mean={mean:.6f} mean size={est_size.mean:.4f} "
           f"expected={expected_size:.4f} truncated={truncated:.3g}")


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise DomainError(f"--samples must be positive, got {args.samples}")
    failures = 0
    for name, passed, detail in _verify_checks(args.d, args.tol, args.samples, args.seed):
        status = "PASS" if passed else "FAIL"
        print(f"{status} {name}: {detail}")
        failures += 0 if passed else 1
    if failures:
        print(f"{failures} check(s) failed")
        return EXIT_VERIFY
    print("all checks passed")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, SupercriticalError) as exc:
        print(f"regindep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"regindep: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def run() -> None:
    sys.exit(main())
