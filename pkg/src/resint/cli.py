"""Command line entry point: ``resint verify ...``."""

from __future__ import annotations

import re
import sys

import click

from .harness import SUITES, RunConfig, emit_report, run_verification


def _parse_seconds(text: str) -> float | None:
    text = text.strip().lower()
    if text in ("none", "0", "inf"):
        return None
    m = re.fullmatch(r"(\d+(?:\.\d+)?)\s*(s|m|h)?", text)
    if not m:
        raise click.BadParameter(f"cannot read a duration from {text!r}")
    value = float(m.group(1))
    return value * {"s": 1, None: 1, "m": 60, "h": 3600}[m.group(2)]


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Exact checks of depth, duality and Betti statements for residual
    intersections of the ideal of 2x2 minors of a generic 2 x n matrix."""


@main.command()
@click.option("--n", "n", type=int, default=4, show_default=True, help="Number of matrix columns.")
@click.option("--prime", type=int, default=32003, show_default=True, help="Coefficient field characteristic.")
@click.option("--reduction", type=click.Choice(["sparse", "generic"]), default="sparse", show_default=True)
@click.option("--seed", type=int, default=17, show_default=True, help="Seed for generic reductions and fallbacks.")
@click.option("--jmax", type=int, default=None, help="Largest power j (default n-1 for n=4, else 3).")
@click.option("--suite", "suite", type=click.Choice(("all",) + SUITES), default="all", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True)
@click.option("--cell-timeout", default="600s", show_default=True, help="Per-cell budget, e.g. 600s, 10m, none.")
@click.option("--heavy", is_flag=True, help="Allow n >= 5 spot cells and Hom computations beyond n = 4.")
@click.option("--workers", type=int, default=1, show_default=True, help="Worker processes for independent cells.")
@click.option("--cache/--no-cache", default=False, show_default=True,
              help="Reuse cell results stored under $RESINT_CACHE_DIR.")
@click.option("--output", "-o", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Write the report here instead of stdout.")
@click.option("--quiet", "-q", is_flag=True, help="No progress lines on stderr.")
def verify(n, prime, reduction, seed, jmax, suite, fmt, cell_timeout, heavy, workers, cache, output, quiet):
    """Run verification suites and emit a report; exit status 1 on any
    theorem mismatch."""
    if n >= 5 and not heavy:
        raise click.UsageError("n >= 5 needs --heavy")
    if n < 4:
        raise click.UsageError("n must be at least 4")
    cfg = RunConfig(n=n, prime=prime, reduction=reduction, seed=seed, jmax=jmax,
                    suites=SUITES if suite == "all" else (suite,),
                    cell_timeout=_parse_seconds(cell_timeout), heavy=heavy, workers=workers, use_cache=cache)
    progress = None if quiet else (lambda line: click.echo(line, err=True))
    report = run_verification(cfg, progress=progress)
    text = emit_report(report, fmt)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    s = report.summary
    if not quiet:
        click.echo(f"cells: {len(report.cells)}  match: {s['match']}  fatal: {s['fatal']}  "
                   f"timeout: {s['timeout']}  skipped: {s['skipped']}", err=True)
    sys.exit(report.exit_code())


if __name__ == "__main__":
    main()
