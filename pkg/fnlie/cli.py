"""
Command-line interface for fnlie.
"""

import functools
import logging
import sys
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .commands import PROPERTIES, cmd_check, cmd_classify, cmd_eval, cmd_verify
from .dsl import format_model, load_model
from .errors import FnlieError, ModelError, UnknownSuiteError
from .generators import GeneratorParams
from .models import Report
from .reporters import generate_report
from .settings import FORMATS, Settings, load_settings, read_config, write_config
from .suites import list_suites

EXIT_FAILURE = 1
EXIT_USAGE = 2


def setup_logging(verbose: bool):
    """Setup logging configuration. Reports own stdout, so logs go to stderr."""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr),
        ]
    )


def _settings() -> Settings:
    try:
        return load_settings()
    except ValueError as e:
        click.echo(f"Error: invalid configuration: {e}", err=True)
        sys.exit(EXIT_USAGE)


def _emit(report: Report, output_format: str, output: Optional[str]):
    content = generate_report(report, output_format)
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(content)
        click.echo(f"Report saved to {output}", err=True)
    else:
        click.echo(content, nl=False)
    if report.failed:
        sys.exit(EXIT_FAILURE)


def report_options(command):
    """--format, --output and --verbose, shared by every reporting command."""
    @click.option('--format', 'output_format', type=click.Choice(FORMATS, case_sensitive=False),
                  default=None, help='Output format (default from settings: text)')
    @click.option('--output', '-o', type=click.Path(), help='Output file path (default: stdout)')
    @click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
    @functools.wraps(command)
    def wrapper(*args, verbose: bool, **kwargs):
        setup_logging(verbose)
        return command(*args, **kwargs)
    return wrapper


def guarded(command):
    """Map fnlie errors onto exit codes: model and lookup errors are usage errors."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        logger = logging.getLogger(__name__)
        try:
            return command(*args, **kwargs)
        except click.ClickException:
            raise
        except (ModelError, UnknownSuiteError, OSError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_USAGE)
        except FnlieError as e:
            logger.error(f"{command.__name__} failed: {e}")
            click.echo(f"Error: {type(e).__name__}: {e}", err=True)
            sys.exit(EXIT_FAILURE)
        except ValueError as e:
            logger.exception(f"{command.__name__} failed")
            click.echo(f"Error: internal error: {e}", err=True)
            sys.exit(EXIT_FAILURE)
    return wrapper


model_file = click.option('--file', '-f', 'model_path', type=click.Path(exists=True, dir_okay=False),
                          required=True, help='ModelFile defining the named objects')


@click.command('eval')
@model_file
@click.argument('expression')
@report_options
@guarded
def eval_command(model_path: str, expression: str, output_format: Optional[str], output: Optional[str]):
    """
    Evaluate an expression over the definitions of a model.

    Examples:

        fnlie eval --file model.fn "fn(X, Y)"

        fnlie eval --file model.fn "curv(c)" --format json
    """
    settings = _settings()
    report = cmd_eval(load_model(model_path), expression, source=model_path)
    _emit(report, output_format or settings.format, output)


@click.command()
@model_file
@click.argument('name')
@click.argument('prop', metavar='PROPERTY', type=click.Choice(PROPERTIES))
@report_options
@guarded
def check(model_path: str, name: str, prop: str, output_format: Optional[str], output: Optional[str]):
    """
    Check a property of a named object; exits 1 if it does not hold.
    """
    settings = _settings()
    report = cmd_check(load_model(model_path), name, prop, source=model_path)
    _emit(report, output_format or settings.format, output)


@click.command()
@model_file
@click.argument('connection')
@click.argument('name')
@click.option('--inverse', is_flag=True,
              help='Reconstruct the form from the pair NAME_underline, NAME_bar')
@report_options
@guarded
def classify(model_path: str, connection: str, name: str, inverse: bool,
             output_format: Optional[str], output: Optional[str]):
    """
    Split a Hermitian form into its pair under a Hermitian connection, or back.

    Examples:

        fnlie classify --file model.fn c Xi

        fnlie classify --file model.fn c P --inverse
    """
    settings = _settings()
    report = cmd_classify(load_model(model_path), connection, name, inverse=inverse, source=model_path)
    _emit(report, output_format or settings.format, output)


@click.command()
@click.argument('suite')
@click.option('--file', '-f', 'model_path', type=click.Path(exists=True, dir_okay=False),
              help='Re-check a counterexample model instead of generating trials')
@click.option('--seed', type=int, help='Seed of the run (default from settings: 0)')
@click.option('--trials', type=click.IntRange(min=1), help='Number of trials (default from settings: 20)')
@click.option('--dim', type=click.IntRange(min=1), help='Base dimension')
@click.option('--max-degree', type=click.IntRange(min=0), help='Largest form degree')
@click.option('--coeff-degree', type=click.IntRange(min=0), help='Largest polynomial degree of coefficients')
@click.option('--jobs', '-j', type=click.IntRange(min=1), help='Worker processes for the trials')
@click.option('--dump', type=click.Path(dir_okay=False), help='Where to write a counterexample model')
@click.option('--progress/--no-progress', default=False, help='Show a progress bar on stderr')
@report_options
@guarded
def verify(suite: str, model_path: Optional[str], seed: Optional[int], trials: Optional[int],
           dim: Optional[int], max_degree: Optional[int], coeff_degree: Optional[int],
           jobs: Optional[int], dump: Optional[str], progress: bool,
           output_format: Optional[str], output: Optional[str]):
    """
    Run a verification suite; exits 1 and dumps a counterexample model on failure.

    Examples:

        fnlie verify fn-jacobi --dim 2 --max-degree 1 --trials 50 --seed 42

        fnlie verify jacobi-defect --file counterexample-jacobi-defect-seed0.fn
    """
    settings = _settings()
    try:
        params = GeneratorParams(
            dim=dim if dim is not None else settings.dim,
            max_degree=max_degree if max_degree is not None else settings.max_degree,
            coeff_degree=coeff_degree if coeff_degree is not None else settings.coeff_degree,
        )
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="'--dim' / '--max-degree' / '--coeff-degree'")
    report = cmd_verify(
        suite, params,
        seed=seed if seed is not None else settings.seed,
        trials=trials or settings.trials,
        jobs=jobs or settings.jobs,
        progress=progress,
        dump=dump,
        model_path=model_path,
    )
    _emit(report, output_format or settings.format, output)


@click.command()
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@guarded
def fmt(path: str):
    """Print the canonical form of a model file."""
    click.echo(format_model(load_model(path)), nl=False)


@click.command()
def suites():
    """List the verification suites."""
    for name, description in list_suites():
        click.echo(f"{name:<22} {description}")


@click.command()
@click.argument('config_name', required=False)
@click.argument('config_value', required=False)
def config(config_name: Optional[str], config_value: Optional[str]):
    """Show the effective settings, or set one in ~/.fnlie/config."""
    if config_name is None:
        for key, value in _settings().as_dict().items():
            click.echo(f"{key}={value}")
        return
    if config_value is None:
        value = read_config().get(config_name)
        if value is None:
            click.echo(f"Error: '{config_name}' is not set", err=True)
            sys.exit(EXIT_FAILURE)
        click.echo(f"{config_name}={value}")
        return
    try:
        path = write_config(config_name, config_value)
    except (KeyError, ValueError) as e:
        click.echo(f"Error: {e.args[0] if e.args else e}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(f"Set {config_name} = {config_value} in {Path(path)}")


@click.group()
@click.version_option(version=__version__)
def cli():
    """
    fnlie: exact Frölicher-Nijenhuis calculus on Hermitian line bundles.

    Evaluate brackets and curvatures of models, check properties, classify
    Hermitian forms and run the randomized verification suites.
    """
    pass


cli.add_command(eval_command)
cli.add_command(check)
cli.add_command(classify)
cli.add_command(verify)
cli.add_command(fmt)
cli.add_command(suites)
cli.add_command(config)


if __name__ == '__main__':
    cli()
