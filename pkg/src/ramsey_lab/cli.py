"""Command-line interface.

Every subcommand is a thin wrapper over one core function: read inputs
(edge-list files, key=value configs), call, print.  Exit codes: 0 on
success (for check-containment: pattern found), 1 for a negative
containment result, 2 for invalid input.
"""

from __future__ import annotations

import sys

import click

from . import __version__
from .analytic import ThresholdParams, threshold_summary
from .arrows import decide_arrow
from .graphs import random_halving, read_edge_list, sample_gnp, write_edge_list
from .harness import (
    parse_sweep_config,
    run_sweep,
    verify_halving_statistical,
)
from .rng import RngStream
from .witness import contains_book, contains_kmn


def _fail(message: str) -> "click.ClickException":
    err = click.ClickException(message)
    err.exit_code = 2
    return err


def _fmt(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    if value is None:
        return "undefined"
    return str(value)


@click.group()
@click.version_option(version=__version__, prog_name="ramsey-lab")
def main() -> None:
    """Random-graph laboratory: thresholds, halvings, arrows, sweeps."""


@main.command()
@click.option("--vertices", "-N", "vertices", type=int, required=True, help="Vertex count N.")
@click.option("--p", type=float, required=True, help="Edge probability in [0,1].")
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option("--out", type=click.File("w"), default="-", help="Output edge-list file (default stdout).")
def gen(vertices: int, p: float, seed: int, out) -> None:
    """Sample G(N, p) and write it as an edge list."""
    try:
        g = sample_gnp(vertices, p, RngStream(seed))
    except ValueError as exc:
        raise _fail(str(exc))
    write_edge_list(g, out)


@main.command()
@click.option("--graph", type=click.File("r"), required=True, help="Input edge-list file.")
@click.option("--seed", type=int, default=0, show_default=True, help="Coloring seed.")
@click.option("--red-out", type=click.File("w"), required=True, help="Red class output file.")
@click.option("--blue-out", type=click.File("w"), required=True, help="Blue class output file.")
def halve(graph, seed: int, red_out, blue_out) -> None:
    """Fair random red/blue coloring of a graph's edges."""
    try:
        F = read_edge_list(graph)
        split = random_halving(F, RngStream(seed))
    except ValueError as exc:
        raise _fail(str(exc))
    write_edge_list(split.red, red_out)
    write_edge_list(split.blue, blue_out)


@main.command("check-containment")
@click.option("--pattern", type=click.Choice(["kmn", "book"]), required=True)
@click.option("--m", type=int, required=True, help="Core size.")
@click.option("--n", type=int, required=True, help="Leaf/page count.")
@click.option("--graph", type=click.File("r"), required=True, help="Input edge-list file.")
def check_containment(pattern: str, m: int, n: int, graph) -> None:
    """Search for K_{m,n} or the book K_m+n·pages; exit 0 iff found."""
    try:
        F = read_edge_list(graph)
        check = contains_kmn if pattern == "kmn" else contains_book
        witness = check(F, m, n)
    except ValueError as exc:
        raise _fail(str(exc))
    if witness is None:
        click.echo("none")
        sys.exit(1)
    core = ",".join(str(v) for v in witness.core)
    leaves = ",".join(str(v) for v in witness.leaves)
    click.echo(f"core={core} leaves={leaves}")


@main.command()
@click.option("--mode", type=click.Choice(["certificate", "exhaustive", "refute"]), required=True)
@click.option("--pattern", type=click.Choice(["kmn", "book"]), required=True)
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--graph", type=click.File("r"), required=True, help="Input edge-list file.")
@click.option("--trials", type=int, default=128, show_default=True, help="Refutation trials.")
@click.option("--seed", type=int, default=0, show_default=True)
def arrow(mode: str, pattern: str, m: int, n: int, graph, trials: int, seed: int) -> None:
    """Query the arrow relation F -> pattern at the chosen tier."""
    try:
        F = read_edge_list(graph)
        report = decide_arrow(
            F, mode=mode, pattern_kind=pattern, m=m, n=n,
            trials=trials, rng=RngStream(seed),
        )
    except ValueError as exc:
        raise _fail(str(exc))
    click.echo(f"verdict={report.verdict} tier={report.tier}")


@main.command()
@click.option("--c", type=float, required=True, help="Window constant, N = floor(c 2^m n).")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--omega", type=float, default=None, help="Divergence parameter (default max(10, ln(n)^2)).")
@click.option("--M", "big_m", type=float, default=None, help="Lower-threshold margin (default 2 * m_min).")
def thresholds(c: float, m: int, n: int, omega: float | None, big_m: float | None) -> None:
    """Print N, the threshold pair, and the margin constants."""
    try:
        params = ThresholdParams(m=m, c=c, n=n, omega=omega, M=big_m)
        summary = threshold_summary(params)
    except ValueError as exc:
        raise _fail(str(exc))
    for key in ("N", "m_min", "omega", "M", "p_upper", "p_upper_clamped",
                "p_lower", "p_lower_defined"):
        click.echo(f"{key}={_fmt(summary[key])}")


@main.command()
@click.option("--config", type=click.File("r"), required=True, help="key=value sweep config file.")
@click.option("--out", type=click.File("w"), default="-", help="Output CSV file (default stdout).")
@click.option("--workers", type=int, default=None, help="Worker threads (capped by RAMSEY_LAB_THREADS).")
def sweep(config, out, workers: int | None) -> None:
    """Run a probability-grid sweep and emit CSV."""
    try:
        cfg = parse_sweep_config(config.read())
        result = run_sweep(cfg, workers=workers)
    except ValueError as exc:
        raise _fail(str(exc))
    out.write(result.to_csv())


@main.command("verify-halving")
@click.option("--vertices", "-N", "vertices", type=int, required=True)
@click.option("--p", type=float, required=True)
@click.option("--samples", type=int, default=100_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--red-bias", type=float, default=0.5, show_default=True,
              help="Coin bias; 0.5 tests the fair-halving law.")
def verify_halving(vertices: int, p: float, samples: int, seed: int, red_bias: float) -> None:
    """Chi-square test of red edge counts against Binomial(C, p/2)."""
    try:
        report = verify_halving_statistical(
            vertices, p, samples, RngStream(seed), red_bias=red_bias
        )
    except ValueError as exc:
        raise _fail(str(exc))
    click.echo(f"vertex_count={report.vertex_count}")
    click.echo(f"p={_fmt(report.p)}")
    click.echo(f"samples={report.samples}")
    click.echo(f"red_bias={_fmt(report.red_bias)}")
    click.echo(f"statistic={_fmt(report.statistic)}")
    click.echo(f"dof={report.dof}")
    click.echo(f"p_value={_fmt(report.p_value)}")
    click.echo(f"bin_count={report.bin_count}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("ramsey_lab.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
