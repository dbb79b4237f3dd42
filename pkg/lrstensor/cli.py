import logging
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .errors import (
    ConfigError,
    LRSTError,
    NonFiniteError,
    OutputExistsError,
    RankDeficientError,
    RankError,
)

EXIT_USAGE = 64


class SpecUsageError(click.UsageError):
    exit_code = EXIT_USAGE


class NumericalFailure(click.ClickException):
    exit_code = 3


class _UsageExit:
    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise


class LRSTCommand(_UsageExit, click.Command):
    pass


class LRSTGroup(_UsageExit, click.Group):
    command_class = LRSTCommand


@dataclass
class RunOptions:
    seed: Optional[int] = None
    out: Optional[Path] = None
    force: bool = False
    threads: int = 1

    def output_dir(self, spec, default):
        out = self.out or spec.out or default
        return Path(out).resolve()


@contextmanager
def handle_errors():
    try:
        yield
    except (ConfigError, OutputExistsError, RankError) as e:
        raise SpecUsageError(str(e)) from e
    except (NonFiniteError, RankDeficientError) as e:
        raise NumericalFailure(str(e)) from e
    except (LRSTError, OSError) as e:
        raise click.ClickException(str(e)) from e


def load_spec(path):
    from .experiment import ExperimentSpec

    with handle_errors():
        return ExperimentSpec.from_file(path)


def configure_logging(verbose):
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG if verbose > 1 else logging.INFO,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )


@click.group(cls=LRSTGroup)
@click.version_option(
    __version__, "-v", "--version", message="lrst version %(version)s"
)
@click.option("--seed", type=int, default=None, help="Overrides the spec seeds.")
@click.option(
    "--out", type=click.Path(file_okay=False, path_type=Path), default=None
)
@click.option("--force", is_flag=True, help="Write into a non-empty directory.")
@click.option("--threads", type=click.IntRange(min=1), default=1)
@click.option("-V", "--verbose", count=True, help="INFO logging, DEBUG if repeated.")
@click.pass_context
def cli(ctx, seed, out, force, threads, verbose):
    configure_logging(verbose)
    ctx.obj = RunOptions(seed, out, force, threads)


@cli.command("synth")
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def generate_instance(opts, spec):
    from .experiment import run_synth

    spec = load_spec(spec)
    seed = opts.seed if opts.seed is not None else spec.seeds[0]
    out = opts.output_dir(spec, "instance")
    with handle_errors():
        run_synth(spec, seed, out, opts.force)
    click.echo(f"Instance generated successfully: {out}")


@cli.command("fit")
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.argument("source", type=click.Path(exists=True))
@click.pass_context
def fit_instance(ctx, spec, source):
    from .experiment import run_fit

    opts = ctx.obj
    spec = load_spec(spec)
    out = opts.output_dir(spec, "fit")
    with handle_errors():
        outcome = run_fit(spec, source, out, opts.force)
    fit = outcome.fit
    click.echo(
        f"Fit {fit.terminated_by.value} after {fit.iterations} iterations: {out}"
    )
    if fit.diagnostic:
        click.echo(f"Diagnostic: {fit.diagnostic}", err=True)
    ctx.exit(outcome.exit_code)


@cli.command("bic")
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.argument("source", type=click.Path(exists=True))
@click.option("--ranks", default=None, help='Rank grid, e.g. "2,2,2;3,3,3".')
@click.option("--alphas", default=None, help='Alpha grid, e.g. "0.02,0.05".')
@click.pass_obj
def scan_bic(opts, spec, source, ranks, alphas):
    from .experiment import parse_alpha_grid, parse_rank_grid, run_bic

    spec = load_spec(spec)
    with handle_errors():
        if ranks is None:
            spec.require("rank")
            rank_grid = [spec.rank]
        else:
            rank_grid = parse_rank_grid(ranks)
        alpha_grid = [spec.alpha] if alphas is None else parse_alpha_grid(alphas)
        out = opts.output_dir(spec, "bic")
        outcome = run_bic(
            spec, source, rank_grid, alpha_grid, out, opts.force, opts.threads
        )
    best = outcome.scan.best
    if best is None:
        raise click.ClickException("every BIC cell failed")
    rank = ",".join(str(r) for r in best.rank)
    click.echo(f"Best rank {rank} alpha {best.alpha:g} (bic {best.bic:.6g}): {out}")


@cli.command("compare")
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def compare_solvers(opts, spec):
    from .experiment import run_compare

    spec = load_spec(spec)
    seeds = [opts.seed] if opts.seed is not None else list(spec.seeds)
    out = opts.output_dir(spec, "compare")
    with handle_errors():
        runs = run_compare(spec, seeds, out, opts.force, opts.threads)
    click.echo(f"Compared {len(runs)} seed(s): {out}")


@cli.command("report")
@click.argument("result_dir", type=click.Path(exists=True, file_okay=False))
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def generate_report(result_dir, output):
    try:
        from .report import render_report
    except ImportError:
        click.echo("Error: the report extra (fpdf2) is not installed.")
        return

    with handle_errors():
        path = render_report(result_dir, output)
    click.echo(f"Report generated successfully: {path}")
