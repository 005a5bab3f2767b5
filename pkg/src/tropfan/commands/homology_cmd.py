"""Implementation of the homology command."""

import logging
from typing import Dict, Optional, Union

from ..config import ConfigManager
from ..core.compact import compactify, open_subcomplex
from ..core.fan import Fan
from ..core.homology import (
    Space,
    compactification_duality,
    homology_dims,
    kunneth_check,
)
from ..core.zoo import load_source
from ..exceptions import ComplexError
from ..models import CheckReport, HomologyTable
from ..utils import console, grid_table, print_check_report, print_json

logger = logging.getLogger(__name__)

# command-line theory names
THEORY_NAMES: Dict[str, str] = {
    "ordinary": "ordinary",
    "bm": "borel_moore",
    "compact": "compact_support",
    "cohomology": "cohomology",
}

_TITLES = {
    "ordinary": "H_{p,q}",
    "borel_moore": "H^BM_{p,q}",
    "compact_support": "H_c^{p,q}",
    "cohomology": "H^{p,q}",
    "semi_open": "H^BM_{p,q}",
}


def parse_degree(text: str) -> Optional[int]:
    """``all`` or a single coefficient degree."""
    if text == "all":
        return None
    try:
        return int(text)
    except ValueError:
        raise ComplexError(f"--p takes 'all' or an integer, got '{text}'")


class HomologyCommand:
    """Computes tropical (co)homology tables of fans and their compactifications."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def _space(self, fan_space: str, fan: Fan) -> Space:
        if fan_space == "fan":
            return fan
        if fan_space == "compactification":
            return compactify(fan)
        if fan_space.startswith("open:"):
            try:
                seds = [int(s) for s in fan_space[len("open:") :].split(",") if s]
            except ValueError:
                raise ComplexError(f"'{fan_space}' needs comma-separated cone ids")
            return open_subcomplex(compactify(fan), seds)
        raise ComplexError(
            f"Unknown space '{fan_space}': use fan, compactification or open:SEDS"
        )

    def run(
        self,
        source: str,
        theory: str = "ordinary",
        space: str = "fan",
        p: str = "all",
        kunneth_with: Optional[str] = None,
        duality: bool = False,
    ) -> Union[HomologyTable, CheckReport]:
        """Execute the homology command."""
        if theory not in THEORY_NAMES:
            raise ComplexError(
                f"Unknown theory '{theory}': choose from {', '.join(THEORY_NAMES)}"
            )
        data = load_source(source, self.config.max_ambient_rank)
        if kunneth_with is not None:
            other = load_source(kunneth_with, self.config.max_ambient_rank)
            return kunneth_check(data.fan, other.fan)
        if duality:
            return compactification_duality(data.fan, threads=self.config.threads)
        return homology_dims(
            self._space(space, data.fan),
            THEORY_NAMES[theory],
            threads=self.config.threads,
            keep_representatives=self.config.keep_representatives,
            p=parse_degree(p),
        )

    def show(self, report: Union[HomologyTable, CheckReport], output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        if isinstance(report, CheckReport):
            print_check_report(report)
            return
        title = f"{_TITLES.get(report.theory, report.theory)} on {report.space}"
        if report.p is None:
            console.print(grid_table(title, report.dims))
        else:
            console.print(f"{title}, p = {report.p}: {report.dims[0]}")
        if report.representatives:
            for key, basis in report.representatives.items():
                console.print(f"({key}): {len(basis)} representative(s)")
