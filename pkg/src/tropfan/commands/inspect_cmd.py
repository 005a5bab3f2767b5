"""Implementation of the validate, info and balancing commands."""

import logging

import typer
from rich.table import Table

from ..config import ConfigManager
from ..core.fanio import FanData, dumps, summarize, to_fan_file
from ..core.weights import check_balancing
from ..core.zoo import load_source
from ..models import BalancingReport, FanFile, FanSummary
from ..utils import console, print_json, verdict

logger = logging.getLogger(__name__)


class InspectCommand:
    """Reads a fan and reports on its structure."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def _load(self, source: str) -> FanData:
        return load_source(source, self.config.max_ambient_rank)

    def validate(self, source: str) -> FanFile:
        """Validate a fan and return its canonical description."""
        data = self._load(source)
        logger.info(f"{source} is a valid fan: {data.fan}")
        return to_fan_file(data.fan, data.weights, data.function)

    def info(self, source: str) -> FanSummary:
        data = self._load(source)
        return summarize(data.fan, data.weights)

    def balancing(self, source: str) -> BalancingReport:
        data = self._load(source)
        return check_balancing(data.fan, data.weights_or_default())

    def show_validated(self, ff: FanFile, output_format: str) -> None:
        if output_format == "json":
            typer.echo(dumps(ff), nl=False)
            return
        console.print(
            f"[green]Valid fan[/green]: rank {ff.ambient_rank}, "
            f"{len(ff.rays)} rays, {len(ff.cones)} nonzero cones"
        )

    def show_summary(self, summary: FanSummary, output_format: str) -> None:
        if output_format == "json":
            print_json(summary)
            return
        table = Table(title="Fan")
        table.add_column("Property", style="cyan")
        table.add_column("Value")
        table.add_row("Ambient rank", str(summary.ambient_rank))
        table.add_row("Dimension", str(summary.dim))
        table.add_row("Rays", str(summary.rays))
        table.add_row("Cones per dimension", str(summary.cone_counts))
        table.add_row("Pure", _yes_no(summary.pure))
        table.add_row("Simplicial", _yes_no(summary.simplicial))
        if summary.unimodular is not None:
            table.add_row("Unimodular", _yes_no(summary.unimodular))
        if summary.balanced is not None:
            table.add_row("Balanced", _yes_no(summary.balanced))
        console.print(table)

    def show_balancing(self, report: BalancingReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        for violation in report.violations:
            console.print(
                f"[red]Unbalanced[/red] at cone {violation.cone}: "
                f"residual {violation.residual}"
            )
        console.print(f"Balancing: {verdict(report.balanced)}")


def _yes_no(value: bool) -> str:
    return "yes" if value else "no"
