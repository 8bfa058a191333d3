"""Command-line front end.

Commands (via --command): figures, pdf, cdf, tail, sample, validate.

Tables are written as CSV (17 significant digits, header row, newline
terminated, locale independent) or JSON (identical columns plus a metadata
object).  When an output path is given, report-style commands also render a
PNG figure next to each table unless --no-plots is passed.  Every command
honours --seed; omitting it uses the fixed default 42 so published
artifacts stay reproducible.

Exit codes: 0 success, 1 validation failure, 2 usage/config error,
3 numeric non-convergence.

A flat key/value config file (--config) mirrors the flags: one
`name = value` pair per line, `#` comments allowed, names equal to the long
flag names without the leading dashes.  Explicit flags override the file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, channels, plots, sim, stable, validate

__all__ = ["main", "build_parser"]

DEFAULT_SEED = 42
_EXIT_OK = 0
_EXIT_VALIDATION = 1
_EXIT_USAGE = 2
_EXIT_NUMERIC = 3


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _write_csv(path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


def _write_json(path, header: list[str], rows, metadata: dict) -> None:
    payload = {
        "metadata": metadata,
        "columns": header,
        "rows": [[(v if isinstance(v, (bool, str)) else float(v)) for v in row]
                 for row in rows],
    }
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


def _metadata(args, **extra) -> dict:
    md = {
        "tool": "stablemc",
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "format": args.format,
    }
    md.update(extra)
    return md


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stablemc",
        description="Stable-distribution noise models for molecular-communication "
                    "timing channels: tables, figures, sampling and validation.",
    )
    p.add_argument("--command", required=False,
                   choices=["pdf", "cdf", "tail", "sample", "validate", "figures"],
                   help="what to run")
    p.add_argument("--config", type=str, default=None,
                   help="flat key/value file mirroring the flags; flags override it")
    p.add_argument("--channel-kind", choices=["A", "B", "C"], default=None)
    p.add_argument("--d", type=float, default=None, help="transmitter-receiver distance (m)")
    p.add_argument("--D", type=float, default=None, help="diffusion coefficient (m^2/s)")
    p.add_argument("--Da", type=float, default=None, help="diffusion coefficient of type a")
    p.add_argument("--Db", type=float, default=None, help="diffusion coefficient of type b")
    p.add_argument("--scale3d", type=float, default=None,
                   help="user-supplied 3D spherical-receiver scale multiplier")
    p.add_argument("--beta", type=float, action="append", default=None,
                   help="skewness for standardized curves (repeatable)")
    p.add_argument("--grid-min", type=float, default=None)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"RNG seed; fixed default {DEFAULT_SEED}, never entropy")
    p.add_argument("--n", type=int, default=100_000, help="number of Monte Carlo samples")
    p.add_argument("--out", type=str, default=None,
                   help="output file (directory for --command figures); default stdout")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--ks-threshold", type=float, default=sim.KS_COEFFICIENT,
                   help="KS critical coefficient c in c/sqrt(n)")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads for sampling/table evaluation")
    p.add_argument("--no-plots", action="store_true",
                   help="suppress the PNG figures next to file outputs")
    return p


def _apply_config_file(args: argparse.Namespace, argv: list[str]) -> argparse.Namespace:
    """Fill unset flags from the config file; explicit flags win."""
    if args.config is None:
        return args
    path = Path(args.config)
    if not path.is_file():
        raise ValueError(f"config file not found: {path}")
    given = {a.split("=")[0].lstrip("-").replace("-", "_")
             for a in argv if a.startswith("--")}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'name = value', got {raw!r}")
        name, value = (s.strip() for s in line.split("=", 1))
        attr = name.replace("-", "_")
        if not hasattr(args, attr) or attr == "config":
            raise ValueError(f"{path}:{lineno}: unknown option {name!r}")
        if attr in given:
            continue
        if attr == "beta":
            setattr(args, attr, [float(v) for v in value.split(",")])
        elif attr in ("channel_kind", "out", "format", "command"):
            setattr(args, attr, value)
        elif attr == "no_plots":
            setattr(args, attr, value.lower() in ("1", "true", "yes"))
        elif attr in ("grid_points", "seed", "n", "workers"):
            setattr(args, attr, int(value))
        else:
            setattr(args, attr, float(value))
    return args


def _channel_from_args(args) -> channels.ChannelConfig | None:
    if args.channel_kind is None:
        return None
    return channels.ChannelConfig(kind=args.channel_kind, d=args.d,
                                  D=args.D, D_a=args.Da, D_b=args.Db,
                                  scale3d=args.scale3d)


def _grid(args, lo: float, hi: float, points: int) -> np.ndarray:
    gmin = args.grid_min if args.grid_min is not None else lo
    gmax = args.grid_max if args.grid_max is not None else hi
    n = args.grid_points if args.grid_points is not None else points
    if not gmin < gmax:
        raise ValueError(f"grid: requires min < max, got [{gmin}, {gmax}]")
    if n < 2:
        raise ValueError(f"grid: requires at least 2 points, got {n}")
    return np.linspace(gmin, gmax, n)


def _log_grid(args, lo: float, hi: float, points: int) -> np.ndarray:
    gmin = args.grid_min if args.grid_min is not None else lo
    gmax = args.grid_max if args.grid_max is not None else hi
    n = args.grid_points if args.grid_points is not None else points
    if not 0 < gmin < gmax:
        raise ValueError(f"log grid: requires 0 < min < max, got [{gmin}, {gmax}]")
    if n < 2:
        raise ValueError(f"grid: requires at least 2 points, got {n}")
    return np.logspace(math.log10(gmin), math.log10(gmax), n)


def _betas(args) -> list[float]:
    betas = args.beta if args.beta else [0.0, 0.5, 1.0]
    for b in betas:
        if not -1.0 <= b <= 1.0:
            raise ValueError(f"beta must lie in [-1, 1], got {b}")
    return betas


def _table_out(args, name: str):
    """Resolve the table path for multi-file commands (figures)."""
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir / f"{name}.{args.format}"


def _maybe_plot(args, table_path) -> Path | None:
    if args.no_plots or table_path is None:
        return None
    return Path(table_path).with_suffix(".png")


def _map_grid(f, xs, workers: int) -> np.ndarray:
    """Order-preserving map of a scalar function over a grid.  Point
    evaluations are independent, so the result is bit-identical for any
    worker count."""
    if workers <= 1:
        return np.array([f(float(x)) for x in xs])
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return np.array(list(pool.map(f, [float(x) for x in xs])))


def _std_normal_pdf(x: np.ndarray) -> np.ndarray:
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def _std_normal_cdf(x: np.ndarray) -> np.ndarray:
    from scipy.special import erfc
    return 0.5 * erfc(-x / math.sqrt(2.0))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _standardized_tables(args, with_gaussian=True):
    betas = _betas(args)
    grid = _grid(args, -10.0, 10.0, 1001)
    pdf_cols = {}
    cdf_cols = {}
    for b in betas:
        pdf_cols[b] = _map_grid(lambda x, b=b: stable.std_half_pdf(x, b), grid, args.workers)
        cdf_cols[b] = stable.cdf_grid(grid, stable.StableParams(0.0, 1.0, 0.5, b))
    gauss_pdf = _std_normal_pdf(grid) if with_gaussian else None
    gauss_cdf = _std_normal_cdf(grid) if with_gaussian else None
    return grid, betas, pdf_cols, cdf_cols, gauss_pdf, gauss_cdf


def _tail_table(args):
    betas = _betas(args)
    xs = _log_grid(args, 1.0, 1e4, 161)
    cols = {}
    for b in betas:
        pairs = _map_grid(lambda x, b=b: stable.tail_comparison(x, "stable_half", b),
                          xs, args.workers)
        cols[b] = (np.array([t.p_exact for t in pairs]),
                   np.array([t.p_approx for t in pairs]))
    g_exact = np.empty_like(xs)
    g_approx = np.empty_like(xs)
    for i, x in enumerate(xs):
        t = stable.tail_comparison(float(x), "gaussian")
        g_exact[i], g_approx[i] = t.p_exact, t.p_approx
    return xs, betas, cols, g_exact, g_approx


def cmd_figures(args) -> int:
    """Regenerate the three report tables (standardized PDFs, CDFs, tails),
    each with a rendered figure alongside."""
    if args.out is None:
        raise ValueError("--command figures requires --out DIRECTORY")
    grid, betas, pdf_cols, cdf_cols, g_pdf, g_cdf = _standardized_tables(args)

    header = ["x"] + [f"pdf_beta_{b:g}" for b in betas] + ["pdf_gaussian"]
    rows = [[x] + [pdf_cols[b][i] for b in betas] + [g_pdf[i]]
            for i, x in enumerate(grid)]
    path = _table_out(args, "fig1_pdf")
    _write_table(args, path, header, rows, _metadata(args, betas=betas, table="fig1_pdf"))
    if (png := _maybe_plot(args, path)) is not None:
        curves = {f"alpha=1/2, beta={b:g}": pdf_cols[b] for b in betas}
        curves["standard gaussian"] = g_pdf
        plots.save_curve_figure(png, grid, curves, "x", "density",
                                "Standardized stable densities")

    header = ["x"] + [f"cdf_beta_{b:g}" for b in betas] + ["cdf_gaussian"]
    rows = [[x] + [cdf_cols[b][i] for b in betas] + [g_cdf[i]]
            for i, x in enumerate(grid)]
    path = _table_out(args, "fig2_cdf")
    _write_table(args, path, header, rows, _metadata(args, betas=betas, table="fig2_cdf"))
    if (png := _maybe_plot(args, path)) is not None:
        curves = {f"alpha=1/2, beta={b:g}": cdf_cols[b] for b in betas}
        curves["standard gaussian"] = g_cdf
        plots.save_curve_figure(png, grid, curves, "x", "P(X <= x)",
                                "Standardized stable distribution functions")

    xs, betas, cols, g_exact, g_approx = _tail_table(args)
    header = ["x"]
    for b in betas:
        header += [f"tail_exact_beta_{b:g}", f"tail_approx_beta_{b:g}"]
    header += ["tail_exact_gaussian", "tail_approx_gaussian"]
    rows = []
    for i, x in enumerate(xs):
        row = [x]
        for b in betas:
            row += [cols[b][0][i], cols[b][1][i]]
        row += [g_exact[i], g_approx[i]]
        rows.append(row)
    path = _table_out(args, "fig3_tails")
    _write_table(args, path, header, rows, _metadata(args, betas=betas, table="fig3_tails"))
    if (png := _maybe_plot(args, path)) is not None:
        exact = {f"beta={b:g} exact": cols[b][0] for b in betas}
        exact["gaussian exact"] = g_exact
        approx = {f"beta={b:g} approx": cols[b][1] for b in betas}
        approx["gaussian approx"] = g_approx
        plots.save_tail_figure(png, xs, exact, approx, "Tail probabilities")
    return _EXIT_OK


def _write_table(args, path, header, rows, metadata) -> None:
    if args.format == "csv":
        _write_csv(path, header, rows)
    else:
        _write_json(path, header, rows, metadata)


def _print_channel_report(model: channels.ChannelNoiseModel, dest) -> None:
    p = model.params
    print(f"stable law: S(mu={_fmt(p.mu)}, c={_fmt(p.c)}, "
          f"alpha={_fmt(p.alpha)}, beta={_fmt(p.beta)})", file=dest)
    print(f"symmetric: {model.symmetric}", file=dest)
    print(f"support: {model.support}", file=dest)


def _report_dest(args):
    # keep stdout machine-clean when the table itself goes to stdout
    return sys.stdout if args.out is not None else sys.stderr


def cmd_point_tables(args) -> int:
    """pdf / cdf / tail tables, either for a physical channel (in seconds)
    or for the standardized laws."""
    cfg = _channel_from_args(args)
    single_path = Path(args.out) if args.out is not None else None

    if args.command == "tail":
        xs, betas, cols, g_exact, g_approx = _tail_table(args)
        header = ["x"]
        for b in betas:
            header += [f"tail_exact_beta_{b:g}", f"tail_approx_beta_{b:g}"]
        header += ["tail_exact_gaussian", "tail_approx_gaussian"]
        rows = []
        for i, x in enumerate(xs):
            row = [x]
            for b in betas:
                row += [cols[b][0][i], cols[b][1][i]]
            row += [g_exact[i], g_approx[i]]
            rows.append(row)
        _write_table(args, single_path, header, rows, _metadata(args, betas=betas))
        if (png := _maybe_plot(args, single_path)) is not None:
            exact = {f"beta={b:g} exact": cols[b][0] for b in betas}
            exact["gaussian exact"] = g_exact
            approx = {f"beta={b:g} approx": cols[b][1] for b in betas}
            approx["gaussian approx"] = g_approx
            plots.save_tail_figure(png, xs, exact, approx, "Tail probabilities")
        return _EXIT_OK

    if cfg is not None:
        model = channels.noise_model(cfg)
        _print_channel_report(model, _report_dest(args))
        p = model.params
        if p.beta == 1.0:  # nonnegative support: default grid over (0, spread]
            grid = _grid(args, p.c * 1e-3, p.c * 20.0, 1001)
        else:
            grid = _grid(args, -10.0 * p.c, 10.0 * p.c, 1001)
        if args.command == "pdf":
            vals = _map_grid(lambda t: stable.pdf(t, p), grid, args.workers)
            header, ylab = ["t_seconds", "pdf_per_second"], "density (1/s)"
        else:
            vals = stable.cdf_grid(grid, p)
            header, ylab = ["t_seconds", "cdf"], "P(T <= t)"
        rows = list(zip(grid, vals))
        md = _metadata(args, channel_kind=cfg.kind,
                       params={"mu": p.mu, "c": p.c, "alpha": p.alpha, "beta": p.beta})
        _write_table(args, single_path, header, rows, md)
        if (png := _maybe_plot(args, single_path)) is not None:
            plots.save_curve_figure(png, grid, {f"kind {cfg.kind}": vals},
                                    "t (s)", ylab, f"Channel {cfg.kind} noise {args.command}")
        return _EXIT_OK

    grid, betas, pdf_cols, cdf_cols, g_pdf, g_cdf = _standardized_tables(args)
    if args.command == "pdf":
        header = ["x"] + [f"pdf_beta_{b:g}" for b in betas] + ["pdf_gaussian"]
        rows = [[x] + [pdf_cols[b][i] for b in betas] + [g_pdf[i]]
                for i, x in enumerate(grid)]
        curves = {f"beta={b:g}": pdf_cols[b] for b in betas}
        curves["standard gaussian"] = g_pdf
        ylab, title = "density", "Standardized stable densities"
    else:
        header = ["x"] + [f"cdf_beta_{b:g}" for b in betas] + ["cdf_gaussian"]
        rows = [[x] + [cdf_cols[b][i] for b in betas] + [g_cdf[i]]
                for i, x in enumerate(grid)]
        curves = {f"beta={b:g}": cdf_cols[b] for b in betas}
        curves["standard gaussian"] = g_cdf
        ylab, title = "P(X <= x)", "Standardized stable distribution functions"
    _write_table(args, single_path, header, rows, _metadata(args, betas=betas))
    if (png := _maybe_plot(args, single_path)) is not None:
        plots.save_curve_figure(png, grid, curves, "x", ylab, title)
    return _EXIT_OK


def cmd_sample(args) -> int:
    cfg = _channel_from_args(args)
    if cfg is None:
        raise ValueError("--command sample requires --channel-kind")
    if args.n <= 0:
        raise ValueError(f"--n must be positive, got {args.n}")
    batch = sim.sample_channel(cfg, args.n, args.seed, workers=args.workers)
    model = batch.model
    dest = _report_dest(args)
    _print_channel_report(model, dest)
    rep = sim.ks_test(batch, threshold_coefficient=args.ks_threshold)
    print(f"ks: statistic={_fmt(rep.ks_statistic)} threshold={_fmt(rep.threshold)} "
          f"passed={rep.passed}", file=dest)
    header = ["value_seconds"]
    rows = [[v] for v in batch.values]
    single_path = Path(args.out) if args.out is not None else None
    md = _metadata(args, channel_kind=cfg.kind, n=batch.count,
                   ks_statistic=rep.ks_statistic, ks_threshold=rep.threshold,
                   ks_passed=rep.passed)
    _write_table(args, single_path, header, rows, md)
    if (png := _maybe_plot(args, single_path)) is not None:
        p = model.params
        lo, hi = np.quantile(batch.values, [0.001, 0.95])
        xs = np.linspace(lo, hi, 600)
        ys = np.array([stable.pdf(float(x), p) for x in xs])
        plots.save_histogram_figure(png, batch.values, xs, ys,
                                    f"Channel {cfg.kind} noise samples")
    return _EXIT_OK


def cmd_validate(args) -> int:
    report = validate.run_validation(n_samples=args.n, seed=args.seed,
                                     workers=args.workers,
                                     threshold_coefficient=args.ks_threshold)
    text = json.dumps(report, indent=2, sort_keys=False) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="ascii")
    dest = _report_dest(args)
    for c in report["checks"]:
        status = "pass" if c["passed"] else "FAIL"
        print(f"[{status}] {c['suite']}.{c['check']}: "
              f"{_fmt(c['measured'])} vs {_fmt(c['tolerance'])}", file=dest)
    return _EXIT_OK if report["passed"] else _EXIT_VALIDATION


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return _EXIT_USAGE if exc.code not in (0, None) else _EXIT_OK
    try:
        args = _apply_config_file(args, argv)
        if args.command is None:
            raise ValueError("--command is required (flag or config file)")
        if args.command == "figures":
            return cmd_figures(args)
        if args.command in ("pdf", "cdf", "tail"):
            return cmd_point_tables(args)
        if args.command == "sample":
            return cmd_sample(args)
        if args.command == "validate":
            return cmd_validate(args)
        raise ValueError(f"unknown command {args.command!r}")
    except stable.ConvergenceError as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
