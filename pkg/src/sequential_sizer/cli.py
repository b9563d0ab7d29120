"""Command-line interface for sequential sample-size determination."""

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click
from rich.markup import escape
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn, TimeRemainingColumn
from rich.table import Table

from . import __version__
from .config import load_config_file, resolve_procedure_config
from .config.defaults import (
    DEFAULT_B,
    DEFAULT_ERROR_SD,
    DEFAULT_K,
    DEFAULT_M0,
    DEFAULT_REPLICATIONS,
    DEFAULT_RHO,
    DEFAULT_SEED,
    DEFAULT_TAIL_GAMMA,
    REAL_DATA_B,
    REAL_DATA_K,
    REAL_DATA_M0,
    REAL_DATA_RHO,
)
from .core.chi_square import eta as compute_eta
from .core.engine import run_procedure_traced
from .formatter import FORMATS, ReportWriter
from .ingest import DataSchema, interleave_sources, open_csv_source, validate_schema
from .output import Report
from .resources import resolve_workers
from .simulation import ReplicationSummary, SimulationDesign, run_study
from .utils.errors import InvalidConfigError, SequentialSizerError, SourceExhaustedError
from .utils.logging import console, setup_logging

POSITIVE = click.FloatRange(min=0, min_open=True)
PROPORTION = click.FloatRange(min=0, max=1, min_open=True)
STEP = click.IntRange(min=1)
SEED = click.IntRange(min=0, max=2 ** 64 - 1)


def _output_options(command):
    command = click.option('--format', '-f', 'format', type=click.Choice(sorted(FORMATS)),
                           default='json', help='Report format')(command)
    command = click.option('--out', '-o', type=click.Path(dir_okay=False, path_type=Path),
                           help='Report file (standard output if omitted)')(command)
    return command


def _parse_floats(ctx, param, value: Optional[str]) -> Optional[Tuple[float, ...]]:
    if value is None:
        return None
    try:
        return tuple(float(token) for token in value.split(','))
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from None


def _parse_predictors(ctx, param, values: Sequence[str]) -> Optional[Tuple[Tuple[float, float], ...]]:
    if not values:
        return None
    specs = []
    for value in values:
        try:
            mean, variance = value.split(':')
            specs.append((float(mean), float(variance)))
        except ValueError:
            raise click.BadParameter(f"expected MEAN:VAR, got {value!r}") from None
    return tuple(specs)


def _split_names(value: Optional[str]) -> Optional[List[str]]:
    if value is None:
        return None
    return [name.strip() for name in value.split(',') if name.strip()]


def _emit(report: Report, format: str, out: Optional[Path]) -> None:
    text = ReportWriter(format).write(report, out)
    if out is None:
        click.echo(text, nl=False)
    else:
        console.print(f"✅ Saved: {out}")


def _fail(ctx: click.Context, error: Exception) -> None:
    console.print(f"❌ [red]{escape(str(error))}[/red]")
    ctx.exit(1)


@click.group()
@click.version_option(__version__)
@click.option('--verbose', '-v', is_flag=True, help='Show debug diagnostics')
def cli(verbose: bool):
    """Sequential Sizer - decide how many observations a regression needs for a risk bound."""
    setup_logging(verbose)


@cli.command()
@click.option('--k', 'k', type=STEP, required=True, help='Observations drawn per sequential step')
@click.option('--rho', type=PROPORTION, help='Also report the projected overshoot eta(k)/rho')
@_output_options
def eta(k: int, rho: Optional[float], out: Optional[Path], format: str):
    """Compute the second-order efficiency constant eta(k)."""
    value = compute_eta(k)
    result = value.to_dict()
    result['overshoot'] = value.value / rho if rho is not None else None

    table = Table(title=f"eta({k})")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("eta(k)", f"{value.value:.4f}")
    table.add_row("Series terms", str(value.terms_used))
    if rho is not None:
        table.add_row("Overshoot eta/rho", f"{result['overshoot']:.3f}")
    console.print(table)

    _emit(Report(command='eta', config={'k': k, 'rho': rho}, result=result), format, out)


@cli.command()
@click.option('--b', 'b', type=POSITIVE, default=DEFAULT_B, show_default=True, help='Risk bound')
@click.option('--k', 'k', type=STEP, default=DEFAULT_K, show_default=True, help='Step size')
@click.option('--rho', type=PROPORTION, default=DEFAULT_RHO, show_default=True,
              help='Share of the projected sample gathered sequentially')
@click.option('--m0', type=STEP, default=DEFAULT_M0, show_default=True, help='Pilot steps')
@click.option('--R', '--replications', 'replications', type=STEP, default=DEFAULT_REPLICATIONS,
              show_default=True, help='Monte Carlo replications')
@click.option('--seed', type=SEED, default=DEFAULT_SEED, show_default=True, help='Master seed')
@click.option('--workers', '-w', type=STEP,
              help='Worker processes (auto-detected if not specified; results do not depend on it)')
@click.option('--beta', callback=_parse_floats, help='True coefficients, intercept first, e.g. 100,-4,3,2')
@click.option('--predictor', 'predictors', multiple=True, callback=_parse_predictors,
              help='Normal predictor as MEAN:VAR (repeat once per predictor)')
@click.option('--error-sd', type=click.FloatRange(min=0), default=DEFAULT_ERROR_SD,
              show_default=True, help='Error standard deviation')
@click.option('--gamma', type=click.FloatRange(min=0, max=1, min_open=True, max_open=True),
              default=DEFAULT_TAIL_GAMMA, show_default=True,
              help='Count replications with N <= gamma * n*')
@_output_options
@click.pass_context
def simulate(ctx: click.Context, b: float, k: int, rho: float, m0: int, replications: int,
             seed: int, workers: Optional[int], beta: Optional[Tuple[float, ...]],
             predictors: Optional[Tuple[Tuple[float, float], ...]], error_sd: float,
             gamma: float, out: Optional[Path], format: str):
    """Replicate the procedure on simulated normal regression data."""
    try:
        design = SimulationDesign.from_settings(
            b=b, k=k, rho=rho, m0=m0, replications=replications, seed=seed,
            beta=beta, predictors=predictors, error_sd=error_sd, tail_gamma=gamma
        )
        workers = resolve_workers(workers)
    except InvalidConfigError as e:
        raise click.UsageError(str(e), ctx) from e

    console.print(f"🎲 Running {replications} replications on {workers} worker(s), seed {seed}")
    try:
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
            TimeRemainingColumn(),
            console=console,
            transient=True,
        ) as progress:
            task = progress.add_task("Replicating", total=replications)
            summary = run_study(design, workers, progress, task)
    except SequentialSizerError as e:
        _fail(ctx, e)
        return

    console.print(_summary_table(summary))
    _emit(Report(command='simulate', config=design.to_dict(), result=summary.to_dict()), format, out)


def _summary_table(summary: ReplicationSummary) -> Table:
    table = Table(title=f"Study summary (R={summary.replications})")
    table.add_column("Statistic", style="cyan")
    table.add_column("Value", style="green")
    table.add_column("Reference", style="magenta")
    ratio = f"{summary.ratio:.4f}" if summary.ratio is not None else "-"
    table.add_row("N mean", f"{summary.n_bar:.3f} ± {summary.se_n:.3f}", f"n* = {summary.n_star:.3f}")
    table.add_row("N range", f"{summary.n_min} .. {summary.n_max}", f"N/n* = {ratio}")
    table.add_row("N - n*", f"{summary.diff:.3f}", f"eta/rho = {summary.overshoot_theory:.3f}")
    table.add_row("sigma-hat mean", f"{summary.sigma_bar:.4f} ± {summary.se_sigma:.4f}", "")
    table.add_row("Risk mean", f"{summary.r_bar:.4f} ± {summary.se_r:.4f}",
                  f"r* = {summary.r_star:.4f}, p*s2*E[1/N] = {summary.r_predicted:.4f}")
    table.add_row(f"N <= {summary.tail_gamma:g} n*", str(summary.low_tail_count), "")
    return table


@cli.command()
@click.argument('data', nargs=-1, required=True, type=click.Path(dir_okay=False, path_type=Path))
@click.option('--config', '-c', 'config_path', type=click.Path(dir_okay=False, path_type=Path),
              help='YAML file with schema and procedure sections')
@click.option('--response', help='Response column')
@click.option('--predictors', help='Comma-separated continuous predictor columns')
@click.option('--log-columns', help='Comma-separated columns to transform with ln(v + 1)')
@click.option('--dummies', help='Comma-separated 0/1 indicator columns')
@click.option('--intercept/--no-intercept', default=None, help='Model an intercept (default: yes)')
@click.option('--b', 'b', type=POSITIVE, help=f'Risk bound [default: {REAL_DATA_B}]')
@click.option('--k', 'k', type=STEP, help=f'Step size [default: {REAL_DATA_K}]')
@click.option('--rho', type=PROPORTION, help=f'Sequential share [default: {REAL_DATA_RHO}]')
@click.option('--m0', type=STEP, help=f'Pilot steps [default: {REAL_DATA_M0}]')
@click.option('--trace', is_flag=True, help='Include every stopping-rule evaluation in the report')
@_output_options
@click.pass_context
def run(ctx: click.Context, data: Tuple[Path, ...], config_path: Optional[Path],
        response: Optional[str], predictors: Optional[str], log_columns: Optional[str],
        dummies: Optional[str], intercept: Optional[bool], b: Optional[float], k: Optional[int],
        rho: Optional[float], m0: Optional[int], trace: bool, out: Optional[Path], format: str):
    """Run the procedure on CSV DATA files, interleaved row by row in the order given."""
    try:
        run_config = load_config_file(config_path) if config_path else None
    except SequentialSizerError as e:
        _fail(ctx, e)
        return

    schema_layer: Dict[str, Any] = run_config.schema.to_dict() if run_config and run_config.schema else {}
    flag_layer = {
        'response': response,
        'predictors': _split_names(predictors),
        'dummies': _split_names(dummies),
        'log_columns': _split_names(log_columns),
        'intercept': intercept
    }
    schema_layer.update({key: value for key, value in flag_layer.items() if value is not None})
    if not schema_layer.get('response'):
        raise click.UsageError("a response column is required (--response or the config schema)", ctx)

    defaults = {'rho': REAL_DATA_RHO, 'k': REAL_DATA_K, 'm0': REAL_DATA_M0, 'b': REAL_DATA_B}
    flags = {'rho': rho, 'k': k, 'm0': m0, 'b': b}
    try:
        schema = DataSchema.from_dict(schema_layer)
        validation = validate_schema(schema)
        if not validation.is_valid:
            raise InvalidConfigError("schema", schema_layer, validation.error)
        cfg = resolve_procedure_config(schema.p, defaults,
                                       run_config.procedure if run_config else None, flags)
    except InvalidConfigError as e:
        raise click.UsageError(str(e), ctx) from e

    config_echo = {
        'data': [str(path) for path in data],
        'schema': schema.to_dict(),
        'procedure': cfg.to_dict()
    }
    console.print(f"📁 Reading {len(data)} file(s): pilot m={cfg.m}, k={cfg.k}, rho={cfg.rho}, b={cfg.b}")

    sources = []
    try:
        for path in data:
            sources.append(open_csv_source(path, schema))
        result, entries = run_procedure_traced(cfg, interleave_sources(sources))
    except SourceExhaustedError as e:
        console.print(f"⚠️  [yellow]Risk bound not certified: {escape(str(e))}[/yellow]")
        report = Report(command='run', config=config_echo,
                        result=_partial_result(e, schema.coefficient_names), certified=False)
        _emit(report, format, out)
        ctx.exit(1)
        return
    except SequentialSizerError as e:
        _fail(ctx, e)
        return
    finally:
        for source in sources:
            source.close()

    payload = result.to_dict(schema.coefficient_names)
    if trace:
        payload['trace'] = [entry.to_dict() for entry in entries]
    console.print(_coefficient_table(payload, result.t_steps))
    _emit(Report(command='run', config=config_echo, result=payload), format, out)


def _partial_result(error: SourceExhaustedError, names: List[str]) -> Dict[str, Any]:
    """What is known when the data ran out: the stage and, if solvable, the partial fit."""
    result: Dict[str, Any] = {
        'stage': error.stage,
        'obtained': error.obtained,
        'needed': error.needed,
        's2': None,
        'coefficients': []
    }
    fit = error.fit
    if fit is not None and fit.solvable:
        result['s2'] = fit.solution.s2
        result['coefficients'] = [
            {'name': name, 'estimate': float(est), 'std_error': float(se)}
            for name, est, se in zip(names, fit.solution.beta_hat, fit.standard_errors())
        ]
    return result


def _coefficient_table(payload: Dict[str, Any], t_steps: int) -> Table:
    table = Table(title=f"T={t_steps}, N*={payload['n_projected']:.3f}, N={payload['n_final']}")
    table.add_column("Coefficient", style="cyan")
    table.add_column("Estimate", style="green", justify="right")
    table.add_column("Std. error", style="green", justify="right")
    for row in payload['coefficients']:
        table.add_row(row['name'], f"{row['estimate']:.6g}", f"{row['std_error']:.6g}")
    footer = f"S2={payload['s2']:.6g}"
    if payload['r_squared'] is not None:
        footer += f", R2={payload['r_squared']:.4f}"
    table.caption = footer
    return table


def main():
    """Main entry point."""
    cli()


if __name__ == '__main__':
    main()
