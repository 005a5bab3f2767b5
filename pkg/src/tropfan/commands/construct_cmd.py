"""Implementation of the star, product, divisor and modify commands."""

import logging
from typing import List

import typer

from ..config import ConfigManager
from ..core.fan import product, star_fan
from ..core.fanio import FanData, dumps, summarize, to_fan_file
from ..core.weights import (
    PLFunction,
    check_balancing,
    divisor,
    product_orientation,
    star_orientation,
    tropical_modification,
)
from ..core.zoo import load_source
from ..exceptions import FanValidationError, FunctionError
from ..models import DivisorReport, FanFile, ModificationReport, StarReport
from ..utils import console, print_json, verdict

logger = logging.getLogger(__name__)


def parse_cone(text: str) -> List[int]:
    """Ray ids from a comma-separated list; an empty string is the zero cone."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise FanValidationError(f"Cone '{text}' is not a list of ray ids")


def _echo_fan(ff: FanFile) -> None:
    typer.echo(dumps(ff), nl=False)


def function_of(data: FanData, source: str) -> PLFunction:
    if data.function is None:
        raise FunctionError(f"{source} carries no function")
    return data.function


class ConstructCommand:
    """Builds new fans out of a given one."""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.config = config_manager.config

    def _load(self, source: str) -> FanData:
        return load_source(source, self.config.max_ambient_rank)

    def star(self, source: str, cone: str) -> StarReport:
        data = self._load(source)
        rays = parse_cone(cone)
        if not data.fan.has_cone(rays):
            raise FanValidationError(f"{sorted(rays)} is not a cone of {source}")
        star = star_fan(
            data.fan, data.fan.cone_id(rays), data.weights_or_default().by_rays()
        )
        weights = star_orientation(star)
        return StarReport(
            cone=sorted(rays),
            summary=summarize(star.star, weights),
            fan=to_fan_file(star.star, weights),
        )

    def product(self, first: str, second: str) -> FanFile:
        a, b = self._load(first), self._load(second)
        fan = product(a.fan, b.fan)
        weights = product_orientation(
            fan, a.weights_or_default(), b.weights_or_default()
        )
        return to_fan_file(fan, weights)

    def divisor(self, source: str) -> DivisorReport:
        data = self._load(source)
        fan = data.fan
        div = divisor(fan, data.weights_or_default(), function_of(data, source))
        orders = {str(list(fan.cones[tau].rays)): o for tau, o in div.orders.items()}
        if div.is_empty:
            return DivisorReport(orders=orders, empty=True)
        return DivisorReport(
            orders=orders,
            empty=False,
            support=summarize(div.support, div.weights),  # type: ignore[arg-type]
            fan=to_fan_file(div.support, div.weights),  # type: ignore[arg-type]
        )

    def modify(self, source: str) -> ModificationReport:
        data = self._load(source)
        mod = tropical_modification(
            data.fan, data.weights_or_default(), function_of(data, source)
        )
        kinds = [kind for kind, _ in mod.face_map.values()]
        return ModificationReport(
            total=summarize(mod.total, mod.weights),
            graph_faces=kinds.count("graph"),
            up_faces=kinds.count("up"),
            special_ray=mod.special_ray,
            balanced=check_balancing(mod.total, mod.weights).balanced,
            fan=to_fan_file(mod.total, mod.weights),
        )

    def show_fan(self, ff: FanFile) -> None:
        _echo_fan(ff)

    def show_star(self, report: StarReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        s = report.summary
        console.print(
            f"Star at {report.cone}: rank {s.ambient_rank}, dimension {s.dim}, "
            f"cones {s.cone_counts}"
        )
        _echo_fan(report.fan)

    def show_divisor(self, report: DivisorReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        for cone, order in report.orders.items():
            console.print(f"ord at {cone}: {order}")
        if report.empty:
            console.print("The divisor is empty.")
        else:
            _echo_fan(report.fan)  # type: ignore[arg-type]

    def show_modification(self, report: ModificationReport, output_format: str) -> None:
        if output_format == "json":
            print_json(report)
            return
        console.print(
            f"Modification: {report.graph_faces} graph cones, {report.up_faces} "
            f"up cones, special ray {report.special_ray}"
        )
        console.print(f"Balanced: {verdict(report.balanced)}")
        _echo_fan(report.fan)
