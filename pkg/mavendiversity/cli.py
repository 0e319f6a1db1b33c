# -*- coding: utf-8 -*-
#
# mavendiversity -- Diversity metrics for versioned dependency graphs
# Copyright (C) 2020 the mavendiversity contributors.
#
# This file is part of mavendiversity.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
# For information on the complete list of contributors to the
# mavendiversity library, see: <http://mavendiversity.readthedocs.io/>
#

"""Console script for mavendiversity."""

import functools
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

import click

from . import __version__
from .api import (
    HISTOGRAM_METRICS,
    compute_metrics,
    correlation_report,
    graph_stats,
    histogram_report,
    libraries_report,
    lifespans_report,
    load_graph,
    pattern_endings_report,
    patterns_report,
    spearman_report,
    summary_report,
    ternary_report,
    timeliness_by_status_report,
    timeliness_correlations_report,
    versions_report,
)
from .config import RunConfig, load_config
from .exceptions import ConfigError, ConvergenceError, DiversityError
from .report import Report, write_reports

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_CONVERGENCE = 3


@click.group(invoke_without_command=True)
@click.version_option(prog_name="mavendiversity", version=__version__)
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, resolve_path=True),
    default=None,
    metavar="<config>",
    help="YAML run configuration, overridden by command-line flags",
)
@click.option("-v", "--verbose", count=True, help="more logging, repeat for debug")
@click.option("-q", "--quiet", is_flag=True, help="only log errors")
@click.pass_context
def cli(ctx: click.Context, config_file: Optional[str], verbose: int, quiet: bool):
    """Diversity metrics for versioned dependency graphs."""
    if quiet:
        level = logging.ERROR
    else:
        level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("mavendiversity").setLevel(level)
    ctx.ensure_object(dict)
    ctx.obj["config_file"] = config_file
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


def pipeline_options(f: Callable) -> Callable:
    """Flags shared by every subcommand.

    All default to ``None`` so that the configuration file, then the built-in
    defaults, apply when a flag is not given.
    """
    options = [
        click.option(
            "--input",
            "-i",
            "inputs",
            multiple=True,
            type=click.Path(exists=True, dir_okay=False),
            metavar="<file>",
            help="NDJSON or CSV record file, repeat for multiple files",
        ),
        click.option(
            "--format",
            type=click.Choice(["csv", "json"]),
            default=None,
            help="report format  [default: csv]",
        ),
        click.option(
            "--out",
            type=click.Path(file_okay=False),
            default=None,
            metavar="<dir>",
            help="output directory  [default: .]",
        ),
        click.option(
            "--snapshot",
            default=None,
            metavar="<YYYY-MM-DD>",
            help="capture date  [default: latest release date]",
        ),
        click.option(
            "--on-missing",
            type=click.Choice(["stub", "skip", "strict"]),
            default=None,
            help="endpoints without artifact record  [default: stub]",
        ),
        click.option(
            "--exclude-scopes",
            default=None,
            metavar="<scopes>",
            help="comma-separated dependency scopes to leave out",
        ),
        click.option(
            "--damping",
            type=float,
            default=None,
            help="popularity damping factor  [default: 0.85]",
        ),
        click.option(
            "--mode",
            type=click.Choice(["literal", "normalized"]),
            default=None,
            help="version popularity recurrence  [default: literal]",
        ),
        click.option(
            "--tol",
            "tolerance",
            type=float,
            default=None,
            help="popularity convergence tolerance  [default: 1e-9]",
        ),
        click.option(
            "--max-iter",
            "max_iterations",
            type=int,
            default=None,
            help="popularity sweeps before giving up  [default: 200]",
        ),
        click.option(
            "--timeliness-numerator",
            type=click.Choice(["all", "lifespan", "period"]),
            default=None,
            help="direct users counted by timeliness  [default: all]",
        ),
        click.option(
            "--bins", type=int, default=None, help="histogram bins  [default: 30]"
        ),
        click.option(
            "--study-subjects/--all-libraries",
            default=None,
            help="restrict the analyses to multi-version libraries within bounds",
        ),
        click.option(
            "--min-versions",
            type=int,
            default=None,
            help="study subjects lower bound  [default: 5]",
        ),
        click.option(
            "--max-versions",
            type=int,
            default=None,
            help="study subjects upper bound  [default: 200]",
        ),
        click.option(
            "--threads", type=int, default=None, help="metric workers  [default: 1]"
        ),
    ]
    return functools.reduce(lambda g, option: option(g), reversed(options), f)


def _config(ctx: click.Context, flags: Dict[str, Any]) -> RunConfig:
    if flags.get("inputs") == ():
        flags["inputs"] = None
    config = load_config(ctx.obj.get("config_file"), overrides=flags)
    if not config.inputs:
        raise click.UsageError("No input files, use --input or the configuration file.")
    log.debug("Run configuration: %s", config)
    return config


def _write(config: RunConfig, reports: List[Report]) -> None:
    for path in write_reports(reports, config.format, config.out):
        click.echo(str(path))


def _metrics_command(name: str, doc: str) -> Callable:
    """Turn a function from a metrics table to reports into a subcommand."""

    def decorator(build: Callable) -> click.Command:
        @click.command(name=name, help=doc)
        @pipeline_options
        @click.pass_context
        def command(ctx: click.Context, **flags):
            config = _config(ctx, flags)
            table = compute_metrics(load_graph(config), config)
            _write(config, build(table, config))

        return command

    return decorator


@click.command(name="stats")
@pipeline_options
@click.pass_context
def _stats(ctx: click.Context, **flags):
    """Print counts describing the dependency graph."""
    config = _config(ctx, flags)
    for key, value in graph_stats(load_graph(config)).items():
        click.echo(f"{key}: {value}")


@_metrics_command("versions", "Write one row of metrics per version.")
def _versions(table, config):
    return [versions_report(table)]


@_metrics_command("libraries", "Write one row of metrics per library.")
def _libraries(table, config):
    return [libraries_report(table)]


@_metrics_command(
    "patterns", "Write compressed status patterns by frequency and their endings."
)
def _patterns(table, config):
    return [patterns_report(table), pattern_endings_report(table)]


@_metrics_command(
    "correlate", "Write active shares against library popularity, with Spearman's test."
)
def _correlate(table, config):
    return [correlation_report(table), spearman_report(table)]


@_metrics_command("summary", "Write status counts of versions and libraries.")
def _summary(table, config):
    return [summary_report(table)]


@_metrics_command(
    "lifespans", "Write lifespan quartiles per status and first-use delays."
)
def _lifespans(table, config):
    return [lifespans_report(table)]


@_metrics_command(
    "timeliness",
    "Write timeliness proportions per library and per status, with Spearman's tests.",
)
def _timeliness(table, config):
    return [
        ternary_report(table),
        timeliness_by_status_report(table),
        timeliness_correlations_report(table),
    ]


@click.command(name="hist")
@click.option(
    "--metric",
    type=click.Choice(HISTOGRAM_METRICS),
    default="positional-active",
    show_default=True,
    help="which positional indices to bin",
)
@pipeline_options
@click.pass_context
def _hist(ctx: click.Context, metric: str, **flags):
    """Write a histogram of positional indices over [0, 1]."""
    config = _config(ctx, flags)
    table = compute_metrics(load_graph(config), config)
    _write(config, [histogram_report(table, metric, config.bins)])


for command in [
    _stats,
    _versions,
    _libraries,
    _patterns,
    _hist,
    _correlate,
    _summary,
    _lifespans,
    _timeliness,
]:
    cli.add_command(command)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the console script and map failures to exit statuses.

    Returns
    -------
    status : int
        0 on success, 1 on usage and configuration errors, 2 on data errors,
        3 when a popularity iteration does not converge.
    """
    try:
        rv = cli.main(args=argv, prog_name="mavendiversity", standalone_mode=False)
    except click.exceptions.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except ConfigError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_USAGE
    except ConvergenceError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_CONVERGENCE
    except DiversityError as e:
        click.echo(f"Error: {e}", err=True)
        return EXIT_DATA
    return rv if isinstance(rv, int) else EXIT_OK


def main() -> None:
    sys.exit(run())
