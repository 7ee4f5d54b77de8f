"""Command-line harness: table reproduction, error sweeps, benchmarks, and
ad-hoc pricing from JSON model files.

Exit codes: 0 success, 1 input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

import numpy as np

from .density import (DensityJob, FilonConvergenceError, density_filon,
                      density_midpoint_fft, density_trapezoidal_fft,
                      density_vieta_direct)
from .models import HestonParams, ModelSpec, cumulants, model_from_json
from .payoff import (PayoffJob, payoff_classic_si_ein, payoff_classic_simpson,
                     payoff_classic_vieta, payoff_fft_euler_maclaurin,
                     payoff_forward_si_ein)
from .pricer import (GridSelectionError, PricingContext, ReferenceError,
                     WaveletGrid, auto_grid, reference_put, truncation_interval)

# The two Heston experiment configurations used by the built-in tables.
# The quoted-price tables pair the short-maturity dynamics with F = 1 and
# the heavy-tail dynamics with F = 1e6; the tabulated strikes are the
# out-of-the-money side (put below the forward, call above).
EXPERIMENT_SHORT = dict(
    model=ModelSpec(1.0, 2.0 / 365.0, 1.0,
                    HestonParams(v0=0.1, kappa=1.0, theta=0.1, sigma=1.0, rho=-0.9)),
    m=6, J=5, k1=-16, k2=16,
    strikes=((1.0064, "call"), (1.064, "call")),
)
EXPERIMENT_HEAVY = dict(
    model=ModelSpec(1e6, 1.0, 1.0,
                    HestonParams(v0=0.0225, kappa=0.1, theta=0.01, sigma=2.0, rho=0.5)),
    m=8, J=12, k1=-2048, k2=2048,
    strikes=((250000.0, "put"), (4000000.0, "call")),
)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _fmt_err(x) -> str:
    return f"{x:.17e}" if isinstance(x, float) else str(x)


def _emit(rows, header, err_cols, args):
    """Write rows as CSV (17 significant digits, scientific errors) or JSON."""
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        text = json.dumps(payload, indent=2, default=str) + "\n"
    else:
        lines = [",".join(header)]
        for row in rows:
            cells = []
            for name, cell in zip(header, row):
                cells.append(_fmt_err(cell) if name in err_cols else _fmt(cell))
            lines.append(",".join(cells))
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _grid_for(model: ModelSpec, args) -> WaveletGrid:
    """Grid from CLI overrides, auto-selected where absent."""
    if args.m is not None and args.J is not None:
        m, J = args.m, args.J
        if args.L is not None:
            a, b = truncation_interval(cumulants(model), args.L)
            k1 = int(np.floor(2.0**m * a))
            k2 = int(np.ceil(2.0**m * b)) + 1
        else:
            k1, k2 = -(1 << (J - 1)), 1 << (J - 1)
            a, b = k1 / 2.0**m, k2 / 2.0**m
        n = args.N if args.N is not None else max(32, k2 - k1)
        if n & (n - 1):
            n = 1 << int(np.ceil(np.log2(n)))
        return WaveletGrid(m=m, k1=k1, k2=k2, J=J, N=n,
                           a=min(a, k1 / 2.0**m), b=max(b, k2 / 2.0**m),
                           L=args.L)
    grid = auto_grid(model, L=args.L if args.L is not None else 10.0,
                     mass_tol=args.mass_tol, m=args.m)
    if args.N is not None:
        grid = WaveletGrid(m=grid.m, k1=grid.k1, k2=grid.k2, J=grid.J,
                           N=args.N, a=grid.a, b=grid.b, L=grid.L)
    return grid


def cmd_table1(args) -> int:
    rows = [
        ("Vieta J=5", payoff_classic_vieta(1.0, 6, -1, -1.0, 5)),
        ("Simpson J=5", payoff_classic_simpson(1.0, 6, -1, -1.0, 16)),
        ("Vieta J=10", payoff_classic_vieta(1.0, 6, -1, -1.0, 10)),
        ("Simpson J=10", payoff_classic_simpson(1.0, 6, -1, -1.0, 512)),
        ("SiEin", payoff_classic_si_ein(1.0, 6, -1, -1.0)),
    ]
    _emit(rows, ("method", "value"), set(), args)
    return 0


def cmd_price(args) -> int:
    model = model_from_json(args.model)
    grid = _grid_for(model, args)
    ctx = PricingContext(model, grid, args.density)
    strikes = args.strike or [model.forward]
    results = []
    for K in strikes:
        res = ctx.price_put(K, args.payoff)
        results.append({
            "strike": K,
            "price": res.price,
            "grid": {"m": grid.m, "k1": grid.k1, "k2": grid.k2, "J": grid.J,
                     "N": grid.N, "a": grid.a, "b": grid.b},
            "density_strategy": res.density_strategy,
            "payoff_strategy": res.payoff_strategy,
            "cf_evals": res.cf_evals,
            "elapsed_seconds": res.elapsed,
        })
    text = json.dumps(results if len(results) > 1 else results[0], indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_price_table(args) -> int:
    rows = []
    for name, exp in (("short", EXPERIMENT_SHORT), ("heavy", EXPERIMENT_HEAVY)):
        model = exp["model"]
        grid = WaveletGrid(m=exp["m"], k1=exp["k1"], k2=exp["k2"], J=exp["J"],
                           N=max(32, exp["k2"] - exp["k1"]),
                           a=exp["k1"] / 2.0**exp["m"], b=exp["k2"] / 2.0**exp["m"])
        for strategy in ("midpoint", "trapezoidal"):
            ctx = PricingContext(model, grid, strategy)
            for K, side in exp["strikes"]:
                ref = reference_put(model, K)
                res = ctx.price_put(K, args.payoff)
                price, refp = res.price, ref
                if side == "call":
                    parity = model.discount * (model.forward - K)
                    price, refp = price + parity, refp + parity
                rows.append((name, strategy, K, side, price, price - refp))
    _emit(rows, ("set", "density", "strike", "side", "price", "error"),
          {"error"}, args)
    return 0


def cmd_density_table(args) -> int:
    model = model_from_json(args.model)
    grid = _grid_for(model, args)
    job = DensityJob(model, grid.m, grid.J, grid.k1, grid.k2)
    mid = density_midpoint_fft(job)
    trap = density_trapezoidal_fft(job)
    fil, _ = density_filon(model, grid.m, grid.k1, grid.k2, tol=1e-8)
    rows = []
    for i, k in enumerate(range(grid.k1, grid.k2)):
        vieta = density_vieta_direct(model, grid.m, k, grid.J)
        rows.append((k, mid.values[i], trap.values[i], fil.values[i], vieta))
    _emit(rows, ("k", "midpoint", "trapezoidal", "filon", "vieta_direct"), set(), args)
    return 0


def cmd_init_table(args) -> int:
    model = model_from_json(args.model)
    grid = _grid_for(model, args)
    reps = max(1, args.reps)
    rows = []
    job = DensityJob(model, grid.m, grid.J, grid.k1, grid.k2)
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        density_trapezoidal_fft(job)
        times.append(time.perf_counter() - t0)
    rows.append(("trapezoidal_fft", 1 << (grid.J - 1), statistics.median(times) * 1e6))
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        _, ne = density_filon(model, grid.m, grid.k1, grid.k2, tol=1e-8)
        times.append(time.perf_counter() - t0)
    rows.append(("filon", ne, statistics.median(times) * 1e6))
    _emit(rows, ("method", "cf_evals", "median_microseconds"), set(), args)
    return 0


def cmd_error_sweep(args) -> int:
    model = model_from_json(args.model)
    m = args.m if args.m is not None else 8
    L = args.L if args.L is not None else 12.0
    a, b = truncation_interval(cumulants(model), L)
    if args.strike is not None:
        strikes = list(args.strike)  # may be empty: emit the header only
    else:
        strikes = list(
            model.forward * np.linspace(np.exp(0.25 * a), np.exp(b) * (1 - 1e-9), 40))
    z_max = b if not strikes else max(np.log(max(strikes) / model.forward), b)
    z_min = 0.0 if not strikes else min(np.log(min(strikes) / model.forward), 0.0)
    # density range wide enough for the strike-shifted classic windows
    k1 = int(np.floor(2.0**m * (a + z_min))) - 1
    k2 = int(np.ceil(2.0**m * (b + max(z_max, 0.0)))) + 2
    J = args.J if args.J is not None else max(10, int(np.ceil(np.log2(k2 - k1))) + 2)
    n_pay = 1 << int(np.ceil(np.log2(max(32, k2 - k1))))
    grid = WaveletGrid(m=m, k1=k1, k2=k2, J=J, N=n_pay, a=a, b=b, L=L)
    ctx = PricingContext(model, grid, args.density)
    rows = []
    for K in strikes:
        z = np.log(K / model.forward)
        flag = "beyond_truncation" if z > b else ""
        ref = reference_put(model, K)
        fwd = ctx.price_put(K, "forward").price
        try:
            cls = ctx.price_put(K, "classic").price
            err_cls = cls - ref
        except ValueError:
            cls, err_cls, flag = float("nan"), float("nan"), flag or "window_uncovered"
        rows.append((K, cls, fwd, ref, err_cls, fwd - ref, flag))
    _emit(rows, ("strike", "price_classic", "price_forward", "reference",
                 "err_classic", "err_forward", "flag"),
          {"err_classic", "err_forward"}, args)
    return 0


def cmd_bench(args) -> int:
    model = model_from_json(args.model)
    grid = _grid_for(model, args)
    reps = max(1, args.reps)
    warn = "single-sample" if reps == 1 else ""
    rows = []

    job = PayoffJob(K=model.forward, F=model.forward, m=grid.m, a=grid.a,
                    b=grid.b, k1=grid.k1, k2=grid.k2, N=grid.N)

    def med(fn):
        ts = []
        for _ in range(reps):
            t0 = time.perf_counter()
            fn()
            ts.append(time.perf_counter() - t0)
        return statistics.median(ts)

    t_fft = med(lambda: payoff_fft_euler_maclaurin(job))
    rows.append(("payoff", "em_fft", grid.k2 - grid.k1, t_fft, "", warn))
    t_direct = med(lambda: [payoff_forward_si_ein(model.forward, model.forward,
                                                  grid.m, k, grid.a)
                            for k in range(grid.k1, grid.k2)])
    rows.append(("payoff", "si_ein_per_k", grid.k2 - grid.k1, t_direct, "", warn))

    djob = DensityJob(model, grid.m, grid.J, grid.k1, grid.k2)
    t_trap = med(lambda: density_trapezoidal_fft(djob))
    rows.append(("density", "trapezoidal_fft", grid.k2 - grid.k1, t_trap,
                 1 << (grid.J - 1), warn))
    fil_evals = []
    t_fil = med(lambda: fil_evals.append(
        density_filon(model, grid.m, grid.k1, grid.k2, tol=1e-8)[1]))
    rows.append(("density", "filon", grid.k2 - grid.k1, t_fil, fil_evals[-1], warn))

    ctx = PricingContext(model, grid, "trapezoidal")
    t_price = med(lambda: ctx.price_put(model.forward, "em_fft"))
    rows.append(("pricing_warm_density", "em_fft", grid.k2 - grid.k1, t_price, "", warn))
    _emit(rows, ("task", "variant", "k_count", "median_seconds", "cf_evals",
                 "warning"), set(), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="swiftpricer",
                                 description="Shannon-wavelet option pricing harness")
    sub = ap.add_subparsers(dest="command", required=True)
    commands = {
        "price": cmd_price,
        "table1": cmd_table1,
        "price-table": cmd_price_table,
        "density-table": cmd_density_table,
        "init-table": cmd_init_table,
        "error-sweep": cmd_error_sweep,
        "bench": cmd_bench,
    }
    for name, fn in commands.items():
        p = sub.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--model", help="path to a JSON model file")
        p.add_argument("--strike", type=float, action="append",
                       help="strike (repeatable)")
        p.add_argument("--m", type=int, default=None, help="wavelet scale")
        p.add_argument("--J", type=int, default=None, help="density resolution exponent")
        p.add_argument("--N", type=int, default=None, help="payoff FFT size")
        p.add_argument("--L", type=float, default=None, help="cumulant truncation level")
        p.add_argument("--mass-tol", type=float, default=1e-8, dest="mass_tol")
        p.add_argument("--density", choices=("midpoint", "trapezoidal", "filon"),
                       default="trapezoidal")
        p.add_argument("--payoff", choices=("classic", "forward", "em-fft"),
                       default="forward")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--reps", type=int, default=3)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.payoff = args.payoff.replace("-", "_")
    needs_model = args.fn in (cmd_price, cmd_density_table, cmd_init_table,
                              cmd_error_sweep, cmd_bench)
    try:
        if needs_model and not args.model:
            raise ValueError(f"{args.command} requires --model PATH")
        return args.fn(args)
    except json.JSONDecodeError as exc:
        print(f"error: cannot parse model file: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (GridSelectionError, FilonConvergenceError, ReferenceError,
            FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
