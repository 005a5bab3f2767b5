"""General utility functions for tropfan."""

import logging
import platform
from pathlib import Path
from typing import Sequence

import typer
from pydantic import BaseModel
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from .models import CheckReport

# reports go to stdout, logs and diagnostics to stderr
console = Console()
err_console = Console(stderr=True)


def setup_logging(verbose: bool = False) -> None:
    """Set up logging configuration."""
    level = logging.DEBUG if verbose else logging.WARNING

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True)],
        force=True,
    )


def get_platform_config_dir() -> Path:
    """Get the platform-specific configuration directory."""
    system = platform.system()

    if system == "Darwin":  # macOS
        return Path.home() / "Library" / "Application Support"
    elif system == "Windows":
        return Path.home() / "AppData" / "Roaming"
    else:  # Linux and others
        return Path.home() / ".config"


def get_tropfan_config_path() -> Path:
    """Get the path where tropfan stores its settings."""
    return get_platform_config_dir() / "tropfan" / "config.json"


def verdict(passed: bool, fail: str = "FAIL") -> str:
    return "[green]PASS[/green]" if passed else f"[red]{fail}[/red]"


def print_json(report: BaseModel) -> None:
    """Write a report as indented JSON, bypassing Rich markup and wrapping."""
    typer.echo(report.model_dump_json(indent=2))


def grid_table(title: str, dims: Sequence[Sequence[int]], row: str = "p") -> Table:
    """A dims[p][q] grid with p down the rows and q across the columns."""
    width = max((len(r) for r in dims), default=0)
    table = Table(title=title)
    table.add_column(f"{row} \\ q", style="cyan", justify="right")
    for q in range(width):
        table.add_column(str(q), justify="right")
    for p, values in enumerate(dims):
        table.add_row(str(p), *(str(x) for x in values))
    return table


def check_table(report: CheckReport) -> Table:
    table = Table(title=report.title)
    table.add_column("Check", style="cyan")
    table.add_column("Expected")
    table.add_column("Actual")
    table.add_column("Status")
    for item in report.checks:
        table.add_row(item.name, item.expected, item.actual, verdict(item.passed))
    return table


def print_check_report(report: CheckReport) -> None:
    console.print(check_table(report))
    if report.hypothesis is False:
        console.print("[yellow]Hypothesis of the statement does not hold.[/yellow]")
    console.print(f"Verdict: {verdict(report.passed)}")
