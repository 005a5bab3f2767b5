"""Main CLI application for tropfan."""

import logging
from enum import Enum
from pathlib import Path
from typing import Dict, NoReturn, Optional

import typer

from . import __version__
from .config import ConfigManager
from .exceptions import TropFanError
from .utils import console, err_console, setup_logging

logger = logging.getLogger(__name__)

VERDICT_FAILED = 1
INPUT_ERROR = 2

# Create the main Typer app
app = typer.Typer(
    name="tropfan",
    help="Exact tropical homology, Chow rings and modification checks for fans",
    rich_markup_mode="rich",
    no_args_is_help=True,
)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"


class Theory(str, Enum):
    ordinary = "ordinary"
    bm = "bm"
    compact = "compact"
    cohomology = "cohomology"


class Criterion(str, Enum):
    local = "local"
    aksnes = "aksnes"


class DeligneMode(str, Enum):
    euler = "euler"
    full = "full"
    rows = "rows"
    cokernel = "cokernel"


_settings: Dict[str, Optional[Path]] = {"config_path": None}

FAN_HELP = "Fan file (JSON) or the name of a built-in example"
FORMAT_HELP = "Report format; defaults to the configured output_format"


def version_callback(value: bool) -> None:
    """Show version information."""
    if value:
        console.print(f"tropfan version {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    verbose: bool = typer.Option(
        False, "--verbose", "-v", help="Enable verbose output"
    ),
    version: Optional[bool] = typer.Option(
        None, "--version", callback=version_callback, help="Show version"
    ),
    config: Optional[Path] = typer.Option(
        None, "--config", help="Settings file (default: ~/.config/tropfan/config.json)"
    ),
) -> None:
    """tropfan: exact computations on tropical fans."""
    setup_logging(verbose)
    _settings["config_path"] = config


def _config_manager() -> ConfigManager:
    return ConfigManager(_settings["config_path"])


def _format(output_format: Optional[OutputFormat], config_manager: ConfigManager) -> str:
    if output_format is not None:
        return output_format.value
    return config_manager.config.output_format


def _fail(e: TropFanError) -> NoReturn:
    err_console.print(f"[red]Error:[/red] {e}")
    raise typer.Exit(INPUT_ERROR)


def _verdict(passed: Optional[bool]) -> None:
    # None is an undecided verdict, not a failure
    if passed is False:
        raise typer.Exit(VERDICT_FAILED)


@app.command()
def validate(
    fan: str = typer.Argument(..., help=FAN_HELP),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Validate a fan; with --format json print its canonical form."""
    try:
        from .commands.inspect_cmd import InspectCommand

        config_manager = _config_manager()
        command = InspectCommand(config_manager)
        command.show_validated(command.validate(fan), _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)


@app.command()
def info(
    fan: str = typer.Argument(..., help=FAN_HELP),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Show dimension, cone counts and structural flags of a fan."""
    try:
        from .commands.inspect_cmd import InspectCommand

        config_manager = _config_manager()
        command = InspectCommand(config_manager)
        command.show_summary(command.info(fan), _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)


@app.command()
def balancing(
    fan: str = typer.Argument(..., help=FAN_HELP),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Check the balancing condition at every codimension-one cone."""
    try:
        from .commands.inspect_cmd import InspectCommand

        config_manager = _config_manager()
        command = InspectCommand(config_manager)
        report = command.balancing(fan)
        command.show_balancing(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.balanced)


@app.command()
def star(
    fan: str = typer.Argument(..., help=FAN_HELP),
    cone: str = typer.Argument(..., help="Comma-separated ray ids of the cone"),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Compute the star fan at a cone."""
    try:
        from .commands.construct_cmd import ConstructCommand

        config_manager = _config_manager()
        command = ConstructCommand(config_manager)
        command.show_star(command.star(fan, cone), _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)


@app.command()
def product(
    first: str = typer.Argument(..., help=FAN_HELP),
    second: str = typer.Argument(..., help=FAN_HELP),
) -> None:
    """Print the product of two fans as a fan file."""
    try:
        from .commands.construct_cmd import ConstructCommand

        command = ConstructCommand(_config_manager())
        command.show_fan(command.product(first, second))
    except TropFanError as e:
        _fail(e)


@app.command()
def divisor(
    fan: str = typer.Argument(..., help="Fan carrying a function"),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Compute orders of vanishing and the divisor of the fan's function."""
    try:
        from .commands.construct_cmd import ConstructCommand

        config_manager = _config_manager()
        command = ConstructCommand(config_manager)
        command.show_divisor(command.divisor(fan), _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)


@app.command()
def modify(
    fan: str = typer.Argument(..., help="Fan carrying a function"),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Build the tropical modification along the fan's function."""
    try:
        from .commands.construct_cmd import ConstructCommand

        config_manager = _config_manager()
        command = ConstructCommand(config_manager)
        command.show_modification(
            command.modify(fan), _format(output_format, config_manager)
        )
    except TropFanError as e:
        _fail(e)


@app.command()
def homology(
    fan: str = typer.Argument(..., help=FAN_HELP),
    theory: Theory = typer.Option(Theory.ordinary, "--theory", help="Homology theory"),
    space: str = typer.Option(
        "fan", "--space", help="fan, compactification or open:SEDS (cone ids)"
    ),
    p: str = typer.Option("all", "--p", help="Coefficient degree or 'all'"),
    kunneth_with: Optional[str] = typer.Option(
        None, "--kunneth-with", help="Check the Künneth formula against this fan"
    ),
    duality: bool = typer.Option(
        False, "--duality", help="Check Poincaré duality of the compactification"
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Compute tropical (co)homology dimensions."""
    try:
        from .commands.homology_cmd import HomologyCommand

        config_manager = _config_manager()
        command = HomologyCommand(config_manager)
        report = command.run(
            fan,
            theory=theory.value,
            space=space,
            p=p,
            kunneth_with=kunneth_with,
            duality=duality,
        )
        command.show(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(getattr(report, "passed", True))


@app.command()
def pd(
    fan: str = typer.Argument(..., help=FAN_HELP),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Check tropical Poincaré duality of a fan."""
    try:
        from .commands.duality_cmd import DualityCommand

        config_manager = _config_manager()
        command = DualityCommand(config_manager)
        report = command.pd(fan)
        command.show_pd(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.passed)


@app.command()
def smooth(
    fan: str = typer.Argument(..., help=FAN_HELP),
    criterion: Criterion = typer.Option(
        Criterion.local, "--criterion", help="Star-fan criterion"
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Check homological smoothness through the star fans."""
    try:
        from .commands.duality_cmd import DualityCommand

        config_manager = _config_manager()
        command = DualityCommand(config_manager)
        report = command.smooth(fan, criterion.value)
        command.show_smooth(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.passed)


@app.command()
def chow(
    fan: str = typer.Argument(..., help=FAN_HELP),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Compute the Chow ring dimensions and check its Poincaré duality."""
    try:
        from .commands.chow_cmd import ChowCommand

        config_manager = _config_manager()
        command = ChowCommand(config_manager)
        report = command.chow(fan)
        command.show_chow(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.passed)


@app.command()
def fy(
    fan: str = typer.Argument(..., help=FAN_HELP),
    hodge: bool = typer.Option(
        True, "--hodge/--no-hodge", help="Also check H^{p,q} = 0 for p > q on smooth fans"
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Compare the Chow ring with the cohomology of the compactification."""
    try:
        from .commands.chow_cmd import ChowCommand

        config_manager = _config_manager()
        command = ChowCommand(config_manager)
        report = command.fy(fan, hodge=hodge)
        command.show_fy(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.passed)


@app.command()
def deligne(
    fan: str = typer.Argument(..., help=FAN_HELP),
    p: Optional[int] = typer.Option(None, "--p", help="Degree of the sequence"),
    mode: DeligneMode = typer.Option(DeligneMode.euler, "--mode", help="What to check"),
    k: Optional[int] = typer.Option(
        None, "--k", help="Coefficient degree for rows and cokernel (default d - p)"
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Verify Deligne sequences through the cellular double complex."""
    try:
        from .commands.deligne_cmd import DeligneCommand

        config_manager = _config_manager()
        command = DeligneCommand(config_manager)
        report = command.run(fan, p=p, mode=mode.value, k=k)
        command.show(report, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(report.passed)


@app.command("verify-tm")
def verify_tm(
    fan: str = typer.Argument(..., help="Fan carrying a function"),
    smoothness: bool = typer.Option(
        True, "--smoothness/--no-smoothness", help="Include the smoothness report"
    ),
    output_format: Optional[OutputFormat] = typer.Option(
        None, "--format", "-f", help=FORMAT_HELP
    ),
) -> None:
    """Check the coefficient and homology formulas of a tropical modification."""
    try:
        from .commands.verify_tm_cmd import VerifyTmCommand

        config_manager = _config_manager()
        command = VerifyTmCommand(config_manager)
        suite = command.run(fan, smoothness=smoothness)
        command.show(suite, _format(output_format, config_manager))
    except TropFanError as e:
        _fail(e)
    _verdict(suite.passed)


@app.command()
def examples(
    name: Optional[str] = typer.Argument(
        None, help="Example to print; lists the examples when omitted"
    ),
) -> None:
    """List the built-in examples or print one as a fan file."""
    try:
        from .commands.examples_cmd import ExamplesCommand

        command = ExamplesCommand(_config_manager())
        command.show(command.run(name))
    except TropFanError as e:
        _fail(e)


if __name__ == "__main__":
    app()
