"""Implementation of the chow and fy commands."""

import logging

from ..config import ConfigManager
from ..core.chow import chow_pd_check, fy_crosscheck
from ..core.zoo import load_source
from ..models import CheckReport, ChowReport
from ..utils import console, print_check_report, print_json, verdict

logger = logging.getLogger(__name__)


class ChowCommand:
    """Chow rings of simplicial fans and their comparison with Σ̄."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def chow(self, source: str) -> ChowReport:
        data = load_source(source, self.config.max_ambient_rank)
        return chow_pd_check(data.fan, data.weights_or_default())

    def fy(self, source: str, hodge: bool = True) -> CheckReport:
        data = load_source(source, self.config.max_ambient_rank)
        return fy_crosscheck(data.fan, data.weights_or_default(), hodge=hodge)

    def show_chow(self, report: ChowReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        console.print(f"dim A^k: {report.dims}")
        if report.degree_mode == "pairing":
            console.print(f"Pairing ranks: {report.pairing_ranks}")
        else:
            console.print("[yellow]Checked by dimension symmetry only[/yellow]")
        console.print(f"Poincaré duality: {verdict(report.passed)}")

    def show_fy(self, report: CheckReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        print_check_report(report)
