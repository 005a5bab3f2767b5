"""Implementation of the verify-tm command."""

import logging

from ..config import ConfigManager
from ..core.homology import (
    modification_smoothness,
    verify_tm_coefficients,
    verify_tm_homology,
)
from ..core.zoo import load_source
from ..models import CheckSuite
from ..utils import console, print_check_report, print_json, verdict
from .construct_cmd import function_of

logger = logging.getLogger(__name__)


class VerifyTmCommand:
    """Checks the coefficient and homology formulas for a tropical modification."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def run(self, source: str, smoothness: bool = True) -> CheckSuite:
        """Execute the verify-tm command on a fan carrying a function."""
        data = load_source(source, self.config.max_ambient_rank)
        fan, w = data.fan, data.weights_or_default()
        fn = function_of(data, source)
        reports = [
            verify_tm_coefficients(fan, w, fn),
            verify_tm_homology(fan, w, fn),
        ]
        if smoothness:
            reports.append(modification_smoothness(fan, w, fn))
        for report in reports:
            logger.debug(f"{report.title}: {'pass' if report.passed else 'fail'}")
        return CheckSuite(
            title=f"Tropical modification of {source}",
            reports=reports,
            passed=all(r.passed for r in reports),
        )

    def show(self, suite: CheckSuite, output_format: str) -> None:
        if output_format == "json":
            print_json(suite)
            return
        for report in suite.reports:
            print_check_report(report)
        console.print(f"[bold]{suite.title}[/bold]: {verdict(suite.passed)}")
