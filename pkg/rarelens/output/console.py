"""
Rich console output for RareLens
"""

import math
from typing import Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn
from rich.table import Table
from rich.text import Text

from .. import __version__
from ..harness.aggregate import (REPORTED_METRICS, avg_rank, failures, metric_summary,
                                 size_change, win_table)
from ..models import DatasetProfile, EvalReport, RunRecord
from ..relevance.bumps import BumpPartition
from ..relevance.pchip import RelevanceFunction
from ..resampling.resampler import ResampleReport


class ConsoleOutput:
    """
    Rich console output for relevance, resampling, evaluation and
    benchmark results.
    """

    def __init__(self, stderr: bool = False):
        self.console = Console(stderr=stderr)

    def print_header(self, title: str, details: Optional[dict] = None):
        content = Text()
        content.append("RareLens", style="bold cyan")
        content.append(f" v{__version__}", style="dim")
        content.append(f"  {title}", style="bold")
        for key, value in (details or {}).items():
            content.append(f"\n{key}: ", style="dim")
            content.append(str(value))

        self.console.print(Panel(content, border_style="cyan", padding=(0, 1)))

    def create_progress(self, total: int) -> tuple[Progress, int]:
        """Progress bar over benchmark runs"""
        progress = Progress(
            SpinnerColumn(),
            TextColumn("[bold blue]Benchmarking..."),
            BarColumn(complete_style="cyan", finished_style="green"),
            TaskProgressColumn(),
            TextColumn("[dim]{task.fields[status]}"),
            console=self.console
        )
        task_id = progress.add_task("bench", total=total, status="")
        return progress, task_id

    def print_relevance(self, relevance: RelevanceFunction, bumps: BumpPartition):
        table = self._table()
        table.add_column("y", justify="right")
        table.add_column("phi", justify="right")
        table.add_column("phi'", justify="right")
        points = relevance.control_points
        derivs = points.derivs if points is not None else [math.nan] * len(relevance.knots)
        for y, rel, deriv in zip(relevance.knots, relevance.rels, derivs):
            table.add_row(f"{y:.4g}", f"{rel:.3f}", f"{deriv:.3f}")
        self.console.print(Panel(table, title=Text("Control points", style="bold"),
                                 border_style="blue", padding=(0, 0)))

        bump_table = self._table()
        for column in ("#", "b-", "b*", "b- next", "max loss"):
            bump_table.add_column(column, justify="right")
        for i, bump in enumerate(bumps, start=1):
            bump_table.add_row(str(i), _fmt(bump.lower), _fmt(bump.peak),
                               _fmt(bump.upper), _fmt(bump.max_loss))
        self.console.print(Panel(bump_table, title=Text("Bumps", style="bold"),
                                 border_style="blue", padding=(0, 0)))

    def print_profiles(self, profiles: dict[str, DatasetProfile], threshold: float):
        table = self._table()
        table.add_column("Dataset")
        for column in ("N", "p", "p_nom", "p_num", "nRare", "IR", "%Rare"):
            table.add_column(column, justify="right")
        for name, p in profiles.items():
            table.add_row(name, str(p.n), str(p.p_total), str(p.p_nom), str(p.p_num),
                          str(p.n_rare), _fmt(p.ir, 3), f"{p.pct_rare:.1f}")
        title = Text(f"Dataset profiles (t_R = {threshold})", style="bold")
        self.console.print(Panel(table, title=title, border_style="blue", padding=(0, 0)))

    def print_resample_report(self, report: ResampleReport):
        content = Text()
        content.append("Strategy: ", style="bold")
        content.append(report.strategy, style="cyan")
        if report.params:
            params = ", ".join(f"{k}={v}" for k, v in report.params.items())
            content.append(f"  ({params})", style="dim")
        content.append("\nRows: ", style="bold")
        content.append(f"{report.size_before} -> {report.size_after} ")
        style = "green" if report.pct_change >= 0 else "yellow"
        content.append(f"({report.pct_change:+.1f}%)", style=style)
        self.console.print(Panel(content, title=Text("Resampling", style="bold"),
                                 border_style="green", padding=(0, 1)))

    def print_eval_report(self, report: EvalReport):
        table = self._table()
        table.add_column("Metric")
        table.add_column("Value", justify="right")
        for name, value in report.metrics().items():
            table.add_row(name.upper() if len(name) <= 4 else name.capitalize(),
                          "undefined" if value is None else f"{value:.4f}")
        self.console.print(Panel(table, title=Text("Evaluation", style="bold"),
                                 border_style="green", padding=(0, 0)))
        for side in report.undefined:
            self.print_warning(f"{side} undefined: no case above the relevance threshold")

    def print_bench_summary(self, records: list[RunRecord]):
        """Wins, average ranks, per-dataset mean and sd, size changes and failures"""
        strategies = list(dict.fromkeys(r.strategy for r in records))

        for title, builder, digits in (("Wins", win_table, 2), ("Average rank", avg_rank, 2)):
            table = self._table()
            table.add_column("Metric")
            for strategy in strategies:
                table.add_column(strategy, justify="right")
            for metric in REPORTED_METRICS:
                row = builder(records, metric)
                table.add_row(metric, *(_fmt(row.get(s), digits) for s in strategies))
            self.console.print(Panel(table, title=Text(title, style="bold"),
                                     border_style="blue", padding=(0, 0)))

        summaries = metric_summary(records)
        for metric in REPORTED_METRICS:
            cells = {(s.dataset, s.strategy): f"{s.mean:.4g} ± {s.sd:.2g}"
                     for s in summaries if s.metric == metric}
            table = self._table()
            table.add_column("Dataset")
            for strategy in strategies:
                table.add_column(strategy, justify="right")
            for dataset in dict.fromkeys(r.dataset for r in records):
                table.add_row(dataset, *(cells.get((dataset, s), "-") for s in strategies))
            self.console.print(Panel(table, title=Text(f"{metric} (mean ± sd)", style="bold"),
                                     border_style="blue", padding=(0, 0)))

        sizes = self._table()
        for column in ("Dataset", "Strategy", "Before", "After", "Change"):
            sizes.add_column(column, justify="left" if column in ("Dataset", "Strategy") else "right")
        for change in size_change(records):
            sizes.add_row(change.dataset, change.strategy, f"{change.size_before:.1f}",
                          f"{change.size_after:.1f}", f"{change.pct_change:+.1f}%")
        self.console.print(Panel(sizes, title=Text("Training set size", style="bold"),
                                 border_style="blue", padding=(0, 0)))

        failed = failures(records)
        if failed:
            self.print_warning(f"{len(failed)} of {len(records)} runs failed")
            for r in failed[:5]:
                self.console.print(f"  [dim]{r.dataset}/{r.strategy} "
                                   f"repeat {r.repeat} fold {r.fold}:[/] {r.failure}")

    def print_success(self, message: str):
        self.console.print(f"[green]✓[/] {message}")

    def print_error(self, message: str):
        """Print error message"""
        self.console.print(f"[bold red]Error:[/] {message}")

    def print_warning(self, message: str):
        """Print warning message"""
        self.console.print(f"[yellow]Warning:[/] {message}")

    @staticmethod
    def _table() -> Table:
        return Table(show_header=True, header_style="bold magenta", box=box.ROUNDED,
                     border_style="dim", padding=(0, 1))


def _fmt(value: Optional[float], digits: int = 4) -> str:
    if value is None:
        return "-"
    if math.isinf(value):
        return "∞" if value > 0 else "-∞"
    return f"{value:.{digits}g}" if digits == 4 else f"{value:.{digits}f}"
