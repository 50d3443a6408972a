"""Command-line front end: ``python -m dcearma <command> [options]``.

Exit status is 0 on success, 2 on a bad command line or model file, and 1
when a computation fails. The seed falls back to ``$DCE_ARMA_SEED``, then 0.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import figures, svg
from .arma import simulate_path
from .errors import DceArmaError, SpecParseError
from .io import load_model_spec, write_csv, write_path_csv
from .rng import resolve_seed, stream


class ConfigError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number list: {text!r}") from None


def _decoder(text: str) -> tuple[str, int]:
    if text == "genie":
        return "genie", 1
    if text.startswith("search:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            k = 0
        if k >= 1:
            return "search", k
    raise argparse.ArgumentTypeError("decoder must be 'genie' or 'search:K' with K >= 1")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=Path, help="model spec file (key = value lines)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--svg", action="store_true", help="also write a simple SVG plot")

    parser = argparse.ArgumentParser(prog="dcearma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("simulate", parents=[common], help="simulate one path (t,x,xi,nu)")
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--burn-in", type=int, default=None)

    s = sub.add_parser("rid", parents=[common], help="RID slope of the excitation law")
    s.add_argument("--m-grid", type=_int_list, default=[2**k for k in range(4, 13)])
    s.add_argument("--samples", type=int, default=100_000)

    s = sub.add_parser("bid", parents=[common], help="BID bounds and genie estimate")
    s.add_argument("--m-max", type=int, default=200)
    s.add_argument("--trials", type=int, default=1000)

    s = sub.add_parser("idr", parents=[common], help="finite-scale IDR probe")
    s.add_argument("--m", type=int, default=16)
    s.add_argument("--n-grid", type=_int_list, default=[1, 2])
    s.add_argument("--samples", type=int, default=100_000)

    for name, helptext in (
        ("histogram", "histogram of singular dimensions"),
        ("concentration", "empirical tails vs exponential bounds"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--n", type=int, default=100)
        s.add_argument("--trials", type=int, default=10_000)
        if name == "concentration":
            s.add_argument("--k-grid", type=_int_list, default=None)

    s = sub.add_parser("compress", parents=[common], help="rate/success curve")
    s.add_argument("--n", type=int, default=80)
    s.add_argument(
        "--rates", type=_float_list,
        default=[round(0.30 + 0.05 * i, 2) for i in range(11)],
    )
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--decoder", type=_decoder, default=("genie", 1))
    s.add_argument("--tol", type=float, default=1e-6)

    s = sub.add_parser("hankel", parents=[common], help="Hankel rank checks")
    s.add_argument("--filters", type=int, default=200)

    s = sub.add_parser("cantor", parents=[common], help="Bernoulli convolution CDF")
    s.add_argument("--a", type=float, default=1 / 3)
    s.add_argument("--depth", type=int, default=25)
    s.add_argument("--count", type=int, default=100_000)

    s = sub.add_parser("figures", parents=[common], help="reproduce a figure's data")
    s.add_argument("which", choices=("bid", "histogram", "cantor", "scatter", "all"))
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--n", type=int, default=None)
    return parser


def _model(args, default):
    if args.model is None:
        if default is None:
            raise ConfigError(f"{args.command}: --model is required")
        return default
    try:
        return load_model_spec(args.model)
    except OSError as exc:
        raise ConfigError(f"cannot read model file: {exc}") from None
    except SpecParseError as exc:
        raise ConfigError(f"{args.model}: {exc}") from None


def _emit(args, name, header, rows, seed, plot=None):
    out = write_csv(args.out / f"{name}.csv", header, rows, {"seed": seed, "command": args.command})
    print(out)
    if args.svg and plot is not None:
        print(plot(args.out / f"{name}.svg"))


def _fig_bid(args, seed, trials=None):
    model = _model(args, figures.AR2_HALF) if args.command != "figures" else figures.AR2_HALF
    m_max = getattr(args, "m_max", 200)
    header, rows = figures.bid_table(model, m_max, trials if trials is not None else 1000, seed)
    ms = [r[0] for r in rows]
    plot = lambda p: svg.line_plot(  # noqa: E731
        p, {"lower": (ms, [r[1] for r in rows]), "upper": (ms, [r[2] for r in rows])}, "BID bounds"
    )
    _emit(args, "bid", header, rows, seed, plot)


def _fig_histogram(args, seed, n, trials):
    model = _model(args, figures.ARMA23_SIXTY) if args.command != "figures" else figures.ARMA23_SIXTY
    header, rows, hist = figures.histogram_table(model, n, trials, seed)
    plot = lambda p: svg.bar_plot(p, hist.support / n, hist.counts, "d_V / n")  # noqa: E731
    _emit(args, "histogram", header, rows, seed, plot)
    print(f"mean d_V/n = {hist.mean_normalized:.4f}")


def _fig_cantor(args, seed):
    a = getattr(args, "a", 1 / 3)
    header, rows = figures.cantor_table(a, getattr(args, "depth", 25), getattr(args, "count", 100_000), seed)
    xs = [r[0] for r in rows]
    series = {"empirical": (xs, [r[1] for r in rows])}
    if rows[0][2] is not None:
        series["cantor"] = (xs, [r[2] for r in rows])
        gap = max(abs(r[1] - r[2]) for r in rows)
        print(f"max |ecdf - cantor| on grid = {gap:.4g}")
    _emit(args, "cantor", header, rows, seed, lambda p: svg.line_plot(p, series, "CDF"))


def _fig_scatter(args, seed):
    header, rows = figures.scatter_table(figures.AR1_THIRD, 1, 2000, seed)
    _emit(args, "scatter", header, rows, seed)


def run(args) -> int:
    seed = resolve_seed(args.seed)
    cmd = args.command
    args.out.mkdir(parents=True, exist_ok=True)

    if cmd == "simulate":
        model = _model(args, None)
        path = simulate_path(model, args.n, stream(seed), args.burn_in)
        out = write_path_csv(args.out / "path.csv", path, {"seed": seed, "command": cmd})
        print(out)
        if args.svg:
            print(svg.line_plot(args.out / "path.svg", {"x": (np.arange(1, args.n + 1), path.x)}, "X_t"))
    elif cmd == "rid":
        model = _model(args, None)
        header, rows, est = figures.rid_table(model, args.m_grid, args.samples, seed)
        plot = lambda p: svg.line_plot(  # noqa: E731
            p, {"H": (np.log2([r[0] for r in rows]), [r[1] for r in rows])}, "H([X]_m) vs log2 m"
        )
        _emit(args, "rid", header, rows, seed, plot)
        print(f"slope = {est.slope:.4f} +- {est.stderr:.4f} over m in {est.m_range}")
    elif cmd == "bid":
        _fig_bid(args, seed, args.trials)
    elif cmd == "idr":
        model = _model(args, None)
        header, rows = figures.idr_table(model, args.m, args.n_grid, args.samples, seed)
        _emit(args, "idr", header, rows, seed)
    elif cmd == "histogram":
        _fig_histogram(args, seed, args.n, args.trials)
    elif cmd == "concentration":
        model = _model(args, figures.ARMA23_SIXTY)
        header, rows = figures.concentration_table(model, args.n, args.trials, args.k_grid, seed)
        _emit(args, "concentration", header, rows, seed)
        failed = [r for r in rows if r[5] is False]
        print(f"{len(failed)} of {sum(r[1] != 'void' for r in rows)} bounded tails violated")
    elif cmd == "compress":
        model = _model(args, figures.ARMA11_HALF)
        mode, k = args.decoder
        header, rows, results = figures.rate_table(model, args.n, args.rates, args.trials, seed, mode, k, args.tol)
        plot = lambda p: svg.line_plot(  # noqa: E731
            p, {"success": ([r[1] for r in rows], [r[4] / r[3] for r in rows])}, "success vs rate"
        )
        _emit(args, "rate_curve", header, rows, seed, plot)
    elif cmd == "hankel":
        model = _model(args, None) if args.model is not None else None
        header, rows = figures.hankel_table(args.filters, seed, model)
        _emit(args, "hankel", header, rows, seed)
        print(f"{sum(1 for r in rows if not r[7])} rank-deficient of {len(rows)} checks")
    elif cmd == "cantor":
        _fig_cantor(args, seed)
    elif cmd == "figures":
        which = ("bid", "histogram", "cantor", "scatter") if args.which == "all" else (args.which,)
        for w in which:
            if w == "bid":
                _fig_bid(args, seed, args.trials if args.trials is not None else 1000)
            elif w == "histogram":
                _fig_histogram(args, seed, args.n or 100, args.trials or 10_000)
            elif w == "cantor":
                _fig_cantor(args, seed)
            else:
                _fig_scatter(args, seed)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ConfigError as exc:
        parser.print_usage(sys.stderr)
        print(f"dcearma: error: {exc}", file=sys.stderr)
        return 2
    except (DceArmaError, ArithmeticError, ValueError) as exc:
        print(f"dcearma: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
