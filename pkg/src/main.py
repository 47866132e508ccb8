"""CLI entry point for Color Code Thermal Entanglement."""

import sys
from pathlib import Path

import click
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .config import settings
from .data.cache_manager import CacheManager
from .errors import ColorCodeError
from .lattice.colex import parse_lattice_spec, validate as validate_colex
from .output.lattice_dump import dump_lattice
from .output.writer import write_rows
from .sweep.sweeper import EntropySweeper, SweepConfig, parse_hard_colors, parse_lambda_x
from .verification.checks import CheckReport
from .verification.verifier import Verifier

console = Console(stderr=True)


@click.group()
@click.version_option(version="1.0.0", prog_name="Color Code Thermal Entanglement")
def cli():
    """Color Code Thermal Entanglement - entropies of 2D color codes at finite temperature."""
    pass


def display_report(report: CheckReport, title: str) -> None:
    """Display check results in a table."""
    table = Table(title=title, show_header=True, header_style="bold blue")
    table.add_column("Check", style="cyan")
    table.add_column("Result")
    table.add_column("Details")

    for check in report.checks:
        status = "[green]PASS[/green]" if check.passed else "[bold red]FAIL[/bold red]"
        table.add_row(check.name, status, check.reason)

    console.print(table)
    console.print(f"{report.passed_count}/{len(report.checks)} checks passed")


def _run_sweep(lattice, region, lambda_x, temps, ksigma, hard_x, fmt, out, mutual) -> None:
    try:
        config = SweepConfig(
            lattice=lattice,
            region=region,
            lambda_x=parse_lambda_x(lambda_x),
            temps=temps,
            ksigma=ksigma,
            hard=parse_hard_colors(hard_x),
            format=fmt,
            mutual=mutual,
        )
        rows = EntropySweeper(config).run()
    except ColorCodeError as e:
        raise click.UsageError(str(e)) from None

    text = write_rows(rows, config.format, Path(out) if out else None)
    if out:
        console.print(f"[bold green]Wrote {len(rows)} rows to:[/bold green] {out}")
    else:
        click.echo(text, nl=False)


def sweep_options(func):
    """Options shared by sweep and mutual."""
    options = [
        click.option("--lattice", "-l", required=True, help="Lattice spec: torus:LUxLV or triangular:SIZE"),
        click.option("--region", "-r", required=True,
                     help="Region spec: hexagon:ID, annulus:R,r, levinwen:R,r or qubits:1,2,5"),
        click.option("--lambda-x", default=",".join(f"{v:g}" for v in settings.sweep.lambda_x),
                     show_default=True, help="lambda_x per color as R,B,G ('inf' = hard)"),
        click.option("--temps", default=None, help=f"Temperature grid a:b:step (default: {settings.sweep.temps})"),
        click.option("--ksigma", default=None, help="KSigma grid a:b:step (thermodynamic S_topo)"),
        click.option("--hard-x", default=None, help="Hard-constrained colors, e.g. r,b"),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True),
        click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Output path (default: stdout)"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@cli.command()
@sweep_options
@click.option("--mutual", is_flag=True, help="Also emit I_AB")
def sweep(lattice, region, lambda_x, temps, ksigma, hard_x, fmt, out, mutual):
    """Sweep S_A (and S_topo for levinwen regions) over a grid."""
    _run_sweep(lattice, region, lambda_x, temps, ksigma, hard_x, fmt, out, mutual)


@cli.command()
@sweep_options
def mutual(lattice, region, lambda_x, temps, ksigma, hard_x, fmt, out):
    """Sweep with the mutual information I_AB."""
    _run_sweep(lattice, region, lambda_x, temps, ksigma, hard_x, fmt, out, True)


@cli.command()
@click.option("--lattice", "-l", required=True, help="Lattice spec")
def validate(lattice):
    """Check the structural invariants of a lattice."""
    try:
        colex = parse_lattice_spec(lattice)
    except ColorCodeError as e:
        raise click.UsageError(str(e)) from None
    report = validate_colex(colex)
    display_report(report, f"Lattice {colex.label}")
    if not report.passed:
        sys.exit(1)


@cli.command()
@click.option("--lattice", "-l", required=True, help="Lattice spec within the oracle guards")
@click.option("--seed", default=None, type=int, help=f"Random seed (default: {settings.verify.seed})")
@click.option("--grid", "points", default=None, type=int,
              help=f"Temperatures per lambda setting (default: {settings.verify.points})")
@click.option("--no-cache", is_flag=True, help="Ignore and do not store cached oracle results")
def verify(lattice, seed, points, no_cache):
    """Compare the closed forms with the brute-force oracle."""
    console.print(Panel.fit(
        "[bold blue]Color Code Thermal Entanglement[/bold blue]\n"
        f"Verifying closed forms on {lattice}",
        border_style="blue"
    ))
    cache = None if no_cache else CacheManager()
    try:
        colex = parse_lattice_spec(lattice)
        report = Verifier(colex, lattice, points=points, seed=seed, cache=cache).run()
    except ColorCodeError as e:
        raise click.UsageError(str(e)) from None
    except KeyboardInterrupt:
        console.print("\n[yellow]Verification interrupted by user.[/yellow]")
        sys.exit(1)
    finally:
        if cache is not None:
            cache.close()

    display_report(report, f"Verification of {colex.label}")
    if not report.passed:
        sys.exit(1)


@cli.command("dump-lattice")
@click.option("--lattice", "-l", required=True, help="Lattice spec")
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Output path (default: stdout)")
def dump_lattice_cmd(lattice, out):
    """Write a JSON description of a lattice."""
    try:
        colex = parse_lattice_spec(lattice)
    except ColorCodeError as e:
        raise click.UsageError(str(e)) from None
    text = dump_lattice(colex, Path(out) if out else None)
    if out:
        console.print(f"[bold green]Lattice saved to:[/bold green] {out}")
    else:
        click.echo(text, nl=False)


@cli.command()
def clear_cache():
    """Clear all cached oracle results."""
    console.print("Clearing cache...")
    cache = CacheManager()
    cache.clear()
    cache.close()
    console.print("[green]Cache cleared successfully.[/green]")


def main():
    """Main entry point."""
    cli()


if __name__ == "__main__":
    main()
