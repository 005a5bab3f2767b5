"""Implementation of the pd and smooth commands."""

import logging

from rich.table import Table

from ..config import ConfigManager
from ..core.homology import pd_check, smooth_check
from ..core.zoo import load_source
from ..models import PDReport, SmoothReport
from ..utils import console, grid_table, print_json, verdict

logger = logging.getLogger(__name__)


class DualityCommand:
    """Poincaré duality and homological smoothness checks."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def pd(self, source: str) -> PDReport:
        data = load_source(source, self.config.max_ambient_rank)
        return pd_check(data.fan, data.weights_or_default(), threads=self.config.threads)

    def smooth(self, source: str, criterion: str = "local") -> SmoothReport:
        data = load_source(source, self.config.max_ambient_rank)
        return smooth_check(data.fan, data.weights_or_default(), criterion)

    def show_pd(self, report: PDReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        console.print(grid_table("H^BM_{p,q}", report.borel_moore))
        if not report.vanishing:
            console.print(
                f"[red]Nonzero Borel-Moore groups off degree {report.dim}:[/red] "
                f"{report.nonvanishing}"
            )
        table = Table(title="Cap with the fundamental class, q = 0")
        for column in ("p", "dim F^p(0)", "dim H^BM_{d-p,d}", "rank", "status"):
            table.add_column(column, justify="right")
        for cap in report.cap:
            table.add_row(
                str(cap.p),
                str(cap.source_dim),
                str(cap.target_dim),
                str(cap.rank),
                verdict(cap.injective and cap.surjective),
            )
        console.print(table)
        console.print(f"Poincaré duality: {verdict(report.passed)}")

    def show_smooth(self, report: SmoothReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        table = Table(title=f"Star fans ({report.criterion} criterion)")
        table.add_column("Cone", style="cyan")
        table.add_column("Status")
        table.add_column("Detail")
        for star in report.stars:
            table.add_row(str(star.cone), verdict(star.passed), star.detail or "")
        console.print(table)
        console.print(f"Homologically smooth: {verdict(report.passed)}")
