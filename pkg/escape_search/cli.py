#
# This file is part of Escape Search.
# Copyright (C) 2025 INPE.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <https://www.gnu.org/licenses/gpl-3.0.html>.
#

"""Command line interface for Escape Search."""

import functools
import logging
import sys

import click
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from .exceptions import GroundingError, NodeCapExceeded, PDDLError, SpecError
from .laboratory import EscapeLab
from .strips import GOAL_UNSATISFIED
from .utils import Utils


# pylint: disable=too-few-public-methods
class Config:
    """A simple decorator class for command line options."""

    def __init__(self):
        """Initialize of Config decorator."""
        self.service = None


pass_config = click.make_pass_decorator(Config, ensure=True)

console = Console()

FORMATS = click.Choice(["csv", "json"], case_sensitive=False)


def _setup_logging(verbose: bool) -> None:
    logger = logging.getLogger("escape_search")
    if not logger.handlers:
        logger.addHandler(RichHandler(console=Console(stderr=True), show_path=False))
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _handle_errors(command):
    """Map library errors to exit codes: 2 for bad input, 1 for failed runs."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (SpecError, PDDLError) as e:
            console.print(f"[bold red]Error:[/bold red] {e}")
            sys.exit(2)
        except (GroundingError, NodeCapExceeded, RuntimeError) as e:
            console.print(f"[bold red]Error:[/bold red] {e}")
            sys.exit(1)

    return wrapper


def _digits(config: Config) -> int:
    return int(config.service.manager.setting("output", "significant_digits", 6))


def _emit(text: str, out) -> None:
    if out:
        Utils.write_text(out, text)
        console.print(f"[bold green]Saved[/] in {out}")
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="escape-search")
@pass_config
def cli(config): # pylint: disable=unused-argument
    """Escape Search experiments on command line."""
    config.service = EscapeLab


@cli.command()
@click.option("--spec", "spec", required=True, type=str,
              help="Inline JSON or path; its 'figure' key selects the table")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file")
@click.option("--format", "fmt", type=FORMATS, default="csv", show_default=True)
@click.option("-v", "--verbose", is_flag=True, default=False)
@pass_config
@_handle_errors
def analyze(config: Config, spec, out, fmt, verbose):
    """Tabulate the closed-form runtimes and crossovers."""
    _setup_logging(verbose)
    params = Utils.load_json(spec)
    with console.status("Evaluating closed forms...", spinner="dots"):
        frame = config.service.analyze(params)

    if fmt == "json":
        _emit(Utils.to_json(Utils.frame_records(frame)), out)
    else:
        _emit(Utils.to_csv(frame, digits=_digits(config)), out)


@cli.command()
@click.option("--spec", "spec", required=True, type=str, help="Task spec, inline JSON or path")
@click.option("--algo", required=True, type=str,
              help="brfs | crrw:<l> | luby:<m> | ehc:brfs | ehc:crrw:<l> | ehc:luby:<m>")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Number of trials")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--max-generations", type=click.IntRange(min=0), default=None)
@click.option("--max-walks", type=click.IntRange(min=0), default=None)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes")
@click.option("--placement", type=click.Choice(["fixed", "per_trial"]), default=None,
              help="Keep the spec's goals or redraw them for every trial")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file")
@click.option("--format", "fmt", type=FORMATS, default="csv", show_default=True)
@click.option("-v", "--verbose", is_flag=True, default=False)
@pass_config
@_handle_errors
def simulate(config: Config, spec, algo, trials, seed, max_generations, max_walks,
             jobs, placement, out, fmt, verbose):
    """Run seeded trials of an algorithm on a synthetic task."""
    _setup_logging(verbose)
    with console.status("Running trials...", spinner="dots"):
        summary = config.service.simulate(
            Utils.load_json(spec), algo, trials=trials, seed=seed,
            max_generations=max_generations, max_walks=max_walks,
            jobs=jobs, placement=placement,
        )

    if fmt == "json":
        _emit(Utils.to_json(summary.to_dict()), out)
    else:
        digits = _digits(config)
        _emit(Utils.to_csv(summary.rows, summary.footer(digits), digits), out)

    if out:
        table = Table(title="Solved trials", show_header=True, header_style="bold magenta")
        table.add_column("Counter", style="green", no_wrap=True)
        for column in ("mean", "std", "se"):
            table.add_column(column, justify="right")
        for counter, values in summary.aggregates.items():
            if isinstance(values, dict):
                table.add_row(counter, *(f"{values[c]:.6g}" for c in ("mean", "std", "se")))
        console.print(
            Panel(
                table,
                title=f"[bold green]{algo}: {summary.solved}/{len(summary.rows)} solved",
                expand=False,
                border_style="bright_blue",
            )
        )


@cli.command()
@click.argument("domain", type=click.Path(exists=True, dir_okay=False))
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@click.option("--algo", default="ehc:brfs", show_default=True, type=str)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True,
              help="First seed")
@click.option("--trials", type=click.IntRange(min=1), default=None,
              help="Number of seeds (default from the configuration)")
@click.option("--max-generations", type=click.IntRange(min=0), default=None)
@click.option("--max-walks", type=click.IntRange(min=0), default=None)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("-v", "--verbose", is_flag=True, default=False)
@pass_config
@_handle_errors
def plan(config: Config, domain, problem, algo, seed, trials, max_generations, max_walks,
         out, fmt, verbose):
    """Solve a STRIPS task with enforced hill-climbing, once per seed.

    Exits with 1 when some seed ends without a valid plan.
    """
    _setup_logging(verbose)
    count = trials or int(config.service.manager.setting("plan", "seeds", 5))
    with console.status("Planning...", spinner="dots"):
        reports = config.service.plan(
            domain, problem, algo, seeds=list(range(seed, seed + count)),
            max_generations=max_generations, max_walks=max_walks,
        )

    records = [report.to_dict() for report in reports]
    if fmt == "json":
        _emit(Utils.to_json(records), out)
    else:
        frame = pd.DataFrame(records)
        frame["plan"] = frame["plan"].map(" ".join)
        _emit(Utils.to_csv(frame, digits=_digits(config)), out)

    table = Table(title="Planner runs", show_header=True, header_style="bold magenta")
    for column in ("Seed", "Status", "Length", "Evaluations", "Time (s)"):
        table.add_column(column, justify="right")
    for report in reports:
        table.add_row(
            str(report.seed), report.status, str(report.plan_length or "-"),
            str(report.heuristic_evals), f"{report.wall_time:.3f}",
        )
    Console(stderr=True).print(table)

    if not all(report.solved for report in reports):
        sys.exit(1)


@cli.command()
@click.argument("domain", type=click.Path(exists=True, dir_okay=False))
@click.argument("problem", type=click.Path(exists=True, dir_okay=False))
@click.argument("plan_file", type=click.Path(exists=True, dir_okay=False))
@click.option("-v", "--verbose", is_flag=True, default=False)
@pass_config
@_handle_errors
def validate(config: Config, domain, problem, plan_file, verbose):
    """Replay a plan file; exits with 0 iff the plan is valid."""
    _setup_logging(verbose)
    result, steps = config.service.validate(domain, problem, plan_file)
    if result.valid:
        console.print(f"[bold green]Valid plan[/] with {len(steps)} steps.")
        return
    if result.reason == GOAL_UNSATISFIED:
        console.print(f"[bold red]Invalid plan:[/] goal not satisfied after step {len(steps)}")
    else:
        console.print(
            f"[bold red]Invalid plan:[/] precondition of step {result.failed_step} not satisfied"
        )
    sys.exit(1)
