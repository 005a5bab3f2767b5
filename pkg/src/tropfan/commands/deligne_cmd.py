"""Implementation of the deligne command."""

import logging
from typing import Optional, Union

from rich.table import Table

from ..config import ConfigManager
from ..core.deligne import (
    build_double_complex,
    cokernel_check,
    deligne_sequence,
    row_exactness_check,
)
from ..core.zoo import load_source
from ..exceptions import ComplexError
from ..models import CheckReport, DeligneReport, RowExactnessReport
from ..utils import console, print_check_report, print_json, verdict

logger = logging.getLogger(__name__)

MODES = ("euler", "full", "rows", "cokernel")

DeligneResult = Union[DeligneReport, RowExactnessReport, CheckReport]


class DeligneCommand:
    """Deligne sequences and the double complex behind them."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def run(
        self,
        source: str,
        p: Optional[int] = None,
        mode: str = "euler",
        k: Optional[int] = None,
    ) -> DeligneResult:
        """Execute the deligne command.

        ``euler`` and ``full`` work at degree p. ``rows`` and ``cokernel``
        work at coefficient degree k, which defaults to d - p.
        """
        if mode not in MODES:
            raise ComplexError(f"Unknown mode '{mode}': choose from {', '.join(MODES)}")
        data = load_source(source, self.config.max_ambient_rank)
        fan, w = data.fan, data.weights_or_default()
        if mode in ("euler", "full"):
            if p is None:
                raise ComplexError(f"Mode '{mode}' needs --p")
            return deligne_sequence(fan, w, p, mode)

        if k is None:
            if p is None:
                raise ComplexError(f"Mode '{mode}' needs --k or --p")
            k = fan.dim - p
        if mode == "rows":
            return row_exactness_check(build_double_complex(fan, w, k))
        return cokernel_check(fan, w, k)

    def show(self, report: DeligneResult, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        if isinstance(report, CheckReport):
            print_check_report(report)
        elif isinstance(report, RowExactnessReport):
            self._show_rows(report)
        else:
            self._show_sequence(report)

    def _show_rows(self, report: RowExactnessReport) -> None:
        table = Table(title=f"Rows of the double complex, k = {report.k}")
        table.add_column("b", justify="right", style="cyan")
        table.add_column("dims (a = -1, 0, ...)")
        table.add_column("Status")
        for row in report.rows:
            table.add_row(str(row.b), str(row.dims), verdict(row.exact, "NOT EXACT"))
        console.print(table)
        console.print(f"Rows exact: {verdict(report.passed, 'NOT EXACT')}")

    def _show_sequence(self, report: DeligneReport) -> None:
        console.print(f"Deligne sequence at p = {report.p} ({report.mode} mode)")
        console.print(f"Dimensions: {report.dims}")
        console.print(f"Euler characteristic: {report.euler_characteristic}")
        if report.exact_at:
            marks = " ".join("ok" if e else "X" for e in report.exact_at)
            console.print(f"Exact at positions: {marks}")
        if report.compact_support_dim is not None:
            console.print(
                f"dim H_c = {report.compact_support_dim}, "
                f"final term {report.final_term}, "
                f"rank onto it {report.final_rank}"
            )
        if report.passed is None:
            console.print(
                "Verdict: [yellow]UNDECIDED[/yellow] "
                "(Euler characteristic 0; run --mode full for exactness)"
            )
            return
        console.print(f"Verdict: {verdict(report.passed, 'NOT EXACT')}")
