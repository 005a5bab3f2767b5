"""Implementation of the examples command."""

import logging
from typing import List, Optional

import typer
from rich.table import Table

from ..config import ConfigManager
from ..core.fanio import build_fan, dumps
from ..core.zoo import example, example_names
from ..models import FanFile
from ..utils import console

logger = logging.getLogger(__name__)


class ExamplesCommand:
    """Lists the built-in example fans or emits one of them."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager

    def run(self, name: Optional[str] = None) -> Optional[FanFile]:
        if name is None:
            return None
        ff = example(name)
        # examples must always validate
        build_fan(ff)
        return ff

    def names(self) -> List[str]:
        return list(example_names())

    def show(self, ff: Optional[FanFile]) -> None:
        if ff is not None:
            typer.echo(dumps(ff), nl=False)
            return
        table = Table(title="Built-in examples")
        table.add_column("Name", style="cyan")
        for name in self.names():
            table.add_row(name)
        console.print(table)
