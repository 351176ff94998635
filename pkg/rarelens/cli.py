import functools
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional

import click
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .data import load_csv, profile as profile_dataset, write_csv
from .errors import ConfigError, DatasetError, RareLensError
from .harness import load_config, run_experiment
from .metrics import UtilityContext, evaluate_batch
from .metrics.sera import DEFAULT_STEP, SCHEMES
from .metrics.utility import DEFAULT_BETA, DEFAULT_P
from .models import (DEFAULT_DELTA, DEFAULT_K, DEFAULT_THRESHOLD, PredictionBatch,
                     RateMode, ResampleSpec, Strategy)
from .output import ConsoleOutput, CsvExporter, JsonExporter
from .relevance import RelevanceFunction, bump_partition, fit_relevance, load_control_points
from .resampling import Resampler
from .rng import DEFAULT_SEED, RngStream


log = logging.getLogger(__name__)

THRESHOLD = click.FloatRange(0, 1, min_open=True)


def setup_logging(verbose: int):
    """Rich log handler on stderr: WARNING, INFO with -v, DEBUG with -vv"""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def handle_errors(func):
    """Turn library errors into a one-line message and exit code 1"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except RareLensError as e:
            ConsoleOutput(stderr=True).print_error(str(e))
            sys.exit(1)
        except KeyboardInterrupt:
            ConsoleOutput(stderr=True).console.print("\n[yellow]Interrupted[/]")
            sys.exit(130)
    return wrapper


def _relevance_for(data_path: Path, target: str,
                   control_points: Optional[Path]) -> tuple:
    dataset = load_csv(data_path, target)
    points = load_control_points(control_points) if control_points else None
    return dataset, fit_relevance(dataset.targets, points)


@click.group()
@click.option('-v', '--verbose', count=True, help='Increase log verbosity (-v, -vv)')
@click.version_option(version=__version__)
def main(verbose: int):
    """
    RareLens - Imbalanced Regression Toolkit

    Relevance functions, resampling strategies for rare target values,
    rarity-aware metrics and a cross-validated benchmark.
    """
    setup_logging(verbose)


@main.command()
@click.argument('data', type=click.Path(path_type=Path))
@click.option('-t', '--target', required=True, help='Target column name')
@click.option('--control-points', type=click.Path(path_type=Path),
              help='CSV of domain control points (columns y, rel[, deriv])')
@click.option('--bumps', 'bump_method', default='analytic',
              type=click.Choice(['analytic', 'grid']), show_default=True,
              help='How relevance extrema are located')
@click.option('-o', '--output', type=click.Path(path_type=Path),
              help='Write the relevance JSON here instead of stdout')
@click.option('--curve', type=click.Path(path_type=Path),
              help='Write a sampled (y, phi) curve CSV')
@click.option('--samples', default=200, type=click.IntRange(min=2), show_default=True,
              help='Number of curve samples')
@handle_errors
def relevance(data: Path, target: str, control_points: Optional[Path], bump_method: str,
              output: Optional[Path], curve: Optional[Path], samples: int):
    """Fit the relevance function of a dataset's target"""
    _, rel = _relevance_for(data, target, control_points)
    bumps = bump_partition(rel, method=bump_method)

    exporter = JsonExporter()
    payload = {"relevance": rel.to_dict(), "bumps": bumps.to_list()}

    if curve:
        ys, phis = rel.sample(samples)
        pd.DataFrame({"y": ys, "phi": phis}).to_csv(curve, index=False)

    if output:
        console = ConsoleOutput()
        exporter.export(payload, output)
        console.print_relevance(rel, bumps)
        console.print_success(f"Relevance written to {output}")
        if curve:
            console.print_success(f"Curve written to {curve}")
    else:
        click.echo(exporter.dumps(exporter.export(payload)))


@main.command()
@click.argument('data', type=click.Path(path_type=Path))
@click.option('-t', '--target', required=True, help='Target column name')
@click.option('-s', '--strategy', required=True,
              type=click.Choice([s.value for s in Strategy if s != Strategy.NONE]),
              help='Resampling strategy')
@click.option('--threshold', default=DEFAULT_THRESHOLD, type=THRESHOLD, show_default=True,
              help='Relevance threshold for rare values')
@click.option('--rates', type=click.Choice([m.value for m in RateMode]),
              help='Rate mode (default: explicit if --u/--o given, else balance)')
@click.option('--u', type=click.FloatRange(min=0), help='Undersampling rate')
@click.option('--o', type=click.FloatRange(min=0), help='Oversampling rate')
@click.option('-k', default=DEFAULT_K, type=click.IntRange(min=1), show_default=True,
              help='Neighbours for SmoteR/SMOGN')
@click.option('--delta', default=DEFAULT_DELTA, type=click.FloatRange(min=0), show_default=True,
              help='Gaussian noise amplitude')
@click.option('--seed', default=DEFAULT_SEED, type=click.IntRange(min=0), show_default=True,
              help='Random seed')
@click.option('--control-points', type=click.Path(path_type=Path),
              help='CSV of domain control points (columns y, rel[, deriv])')
@click.option('--output', required=True, type=click.Path(path_type=Path),
              help='Resampled CSV path (a JSON report is written alongside)')
@handle_errors
def resample(data: Path, target: str, strategy: str, threshold: float, rates: Optional[str],
             u: Optional[float], o: Optional[float], k: int, delta: float, seed: int,
             control_points: Optional[Path], output: Path):
    """Resample a training set toward its rare target values"""
    dataset, rel = _relevance_for(data, target, control_points)

    if rates is None:
        rates = RateMode.EXPLICIT.value if (u is not None or o is not None) else RateMode.BALANCE.value

    spec = ResampleSpec(
        strategy=Strategy(strategy),
        threshold=threshold,
        rate_mode=RateMode(rates),
        u=u,
        o=o,
        k=k,
        delta=delta,
        rng=RngStream(seed),
    )
    resampler = Resampler(spec)
    result = resampler.resample(dataset, rel)

    write_csv(result, output)
    sidecar = output.with_suffix('.json')
    JsonExporter().export(resampler.report.to_dict(), sidecar)

    console = ConsoleOutput()
    console.print_resample_report(resampler.report)
    console.print_success(f"Resampled data written to {output} (report: {sidecar})")


@main.command()
@click.argument('predictions', type=click.Path(path_type=Path))
@click.option('--data', type=click.Path(path_type=Path),
              help='Dataset whose target defines the relevance function')
@click.option('-t', '--target', help='Target column of --data')
@click.option('--relevance', 'relevance_path', type=click.Path(path_type=Path),
              help='Saved relevance JSON (output of the relevance command)')
@click.option('--control-points', type=click.Path(path_type=Path),
              help='CSV of domain control points, used with --data')
@click.option('--true-column', default='y_true', show_default=True)
@click.option('--pred-column', default='y_pred', show_default=True)
@click.option('--threshold', default=DEFAULT_THRESHOLD, type=THRESHOLD, show_default=True,
              help='Relevance threshold for rare values')
@click.option('--p', 'p', default=DEFAULT_P, type=click.FloatRange(0, 1), show_default=True,
              help='Weight of the true value in the utility relevance blend')
@click.option('--beta', default=DEFAULT_BETA, type=click.FloatRange(min=0, min_open=True),
              show_default=True, help='F-score beta')
@click.option('--sera-scheme', default=SCHEMES[0], type=click.Choice(SCHEMES), show_default=True)
@click.option('--step', default=DEFAULT_STEP, type=click.FloatRange(0, 1, min_open=True),
              show_default=True, help='Threshold step of the trapezoid SERA scheme')
@click.option('--curve', is_flag=True, help='Include the SER curve')
@click.option('-o', '--output', type=click.Path(path_type=Path),
              help='Write the report JSON here instead of stdout')
@handle_errors
def evaluate(predictions: Path, data: Optional[Path], target: Optional[str],
             relevance_path: Optional[Path], control_points: Optional[Path],
             true_column: str, pred_column: str, threshold: float, p: float, beta: float,
             sera_scheme: str, step: float, curve: bool, output: Optional[Path]):
    """Score predictions with MSE, MAE, SERA and utility-based F1"""
    if relevance_path:
        rel = _load_relevance(relevance_path)
    elif data and target:
        _, rel = _relevance_for(data, target, control_points)
    else:
        raise ConfigError("Provide --relevance, or --data together with --target")

    batch = _load_predictions(predictions, true_column, pred_column)
    ctx = UtilityContext(rel, p=p, threshold=threshold, beta=beta)
    report = evaluate_batch(batch, ctx, scheme=sera_scheme, step=step, with_curve=curve)

    exporter = JsonExporter()
    if output:
        exporter.export_report(report, output)
        console = ConsoleOutput()
        console.print_eval_report(report)
        console.print_success(f"Report written to {output}")
    else:
        click.echo(exporter.dumps(exporter.export_report(report)))


def _load_relevance(path: Path) -> RelevanceFunction:
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise ConfigError(f"Relevance file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in {path}: {e}")
    return RelevanceFunction.from_dict(data.get("relevance", data))


def _load_predictions(path: Path, true_column: str, pred_column: str) -> PredictionBatch:
    try:
        frame = pd.read_csv(path)
    except FileNotFoundError:
        raise DatasetError(f"Predictions file not found: {path}")
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise DatasetError(f"Cannot parse {path}: {e}")

    missing = [c for c in (true_column, pred_column) if c not in frame.columns]
    if missing:
        raise DatasetError(f"Predictions file lacks column(s): {', '.join(missing)}")

    try:
        y_true = pd.to_numeric(frame[true_column]).to_numpy(dtype=float)
        y_pred = pd.to_numeric(frame[pred_column]).to_numpy(dtype=float)
        return PredictionBatch(y_true, y_pred)
    except ValueError as e:
        raise DatasetError(f"Invalid predictions in {path}: {e}")


@main.command()
@click.argument('config_path', type=click.Path(path_type=Path))
@click.option('-d', '--output-dir', default='results', type=click.Path(path_type=Path),
              show_default=True, help='Directory for runs.json and the CSV reports')
@click.option('-w', '--workers', type=click.IntRange(min=1), help='Override config workers')
@click.option('--seed', type=click.IntRange(min=0), help='Override config seed')
@click.option('--quiet', is_flag=True, help='No progress bar or summary tables')
@handle_errors
def bench(config_path: Path, output_dir: Path, workers: Optional[int], seed: Optional[int],
          quiet: bool):
    """Run a cross-validated resampling benchmark"""
    config = load_config(config_path)
    overrides = {k: v for k, v in (('workers', workers), ('seed', seed)) if v is not None}
    if overrides:
        config = replace(config, **overrides)
    log.info("Loaded %s: %d runs", config_path, config.n_runs)

    console = ConsoleOutput()
    if quiet:
        records = run_experiment(config)
    else:
        console.print_header("benchmark", {
            "Datasets": ", ".join(d.name for d in config.datasets),
            "Strategies": ", ".join(g.strategy.value for g in config.strategies),
            "Protocol": f"{config.repeats}x{config.folds}-fold CV, "
                        f"{config.inner_folds}-fold inner selection",
            "Seed": config.seed,
        })
        progress, task_id = console.create_progress(config.n_runs)

        def on_run(record):
            status = f"{record.dataset}/{record.strategy}"
            progress.update(task_id, advance=1, status=status)

        with progress:
            records = run_experiment(config, on_run)

    output_dir.mkdir(parents=True, exist_ok=True)
    runs_path = output_dir / "runs.json"
    JsonExporter(timestamp=False).export_runs(records, config.seed, runs_path)
    written = CsvExporter(output_dir).export_all(records)

    if not quiet:
        console.print_bench_summary(records)
        console.print_success(f"Runs written to {runs_path}")
        for path in written.values():
            console.console.print(f"  [dim]{path}[/]")


@main.command()
@click.argument('data', nargs=-1, type=click.Path(path_type=Path))
@click.option('-t', '--target', help='Target column name (all files)')
@click.option('-c', '--config', 'config_path', type=click.Path(path_type=Path),
              help='Profile the datasets of a benchmark config instead')
@click.option('--threshold', default=DEFAULT_THRESHOLD, type=THRESHOLD, show_default=True,
              help='Relevance threshold for rare values')
@click.option('-o', '--output', type=click.Path(path_type=Path), help='Write profiles JSON here')
@click.option('--json', 'as_json', is_flag=True,
              help='Print the profiles JSON to stdout instead of the table')
@handle_errors
def profile(data: tuple[Path, ...], target: Optional[str], config_path: Optional[Path],
            threshold: float, output: Optional[Path], as_json: bool):
    """Summarize size, attribute mix and rarity of datasets"""
    if config_path:
        entries = [(e.name, e.path, e.target, e.hints) for e in load_config(config_path).datasets]
    elif data and target:
        entries = [(path.stem, path, target, None) for path in data]
    else:
        raise ConfigError("Provide dataset files with --target, or --config")

    profiles = {}
    for name, path, column, hints in entries:
        dataset = load_csv(path, column, hints)
        profiles[name] = profile_dataset(dataset, fit_relevance(dataset.targets), threshold)

    exporter = JsonExporter()
    document = exporter.export_profiles(profiles, output)
    if as_json:
        click.echo(exporter.dumps(document))
        return

    console = ConsoleOutput()
    console.print_profiles(profiles, threshold)
    if output:
        console.print_success(f"Profiles written to {output}")


if __name__ == '__main__':
    main()
