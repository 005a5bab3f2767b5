"""Conversion between FanFile JSON and validated fans."""

import json
import logging
from pathlib import Path
from typing import Dict, NamedTuple, Optional, Tuple

from pydantic import ValidationError

from ..exceptions import FanFileError, FunctionError, GuardrailError
from ..models import FanFile, FanSummary, PLFunctionSpec
from .fan import DEFAULT_MAX_AMBIENT_RANK, Fan, is_unimodular, product, validate
from .weights import Orientation, PLFunction, check_balancing, product_orientation

logger = logging.getLogger(__name__)


class FanData(NamedTuple):
    """A validated fan with the decorations its file carried."""

    fan: Fan
    weights: Optional[Orientation]
    function: Optional[PLFunction]

    def weights_or_default(self) -> Orientation:
        """The file's weights, or weight 1 on every facet."""
        if self.weights is not None:
            return self.weights
        return Orientation.constant(self.fan)


def _schema_message(e: ValidationError) -> str:
    first = e.errors()[0]
    where = ".".join(str(part) for part in first["loc"]) or "<root>"
    return f"{where}: {first['msg']}"


def parse_fan_file(text: str) -> FanFile:
    """Parse FanFile JSON, reporting syntax errors by line and column."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanFileError(e.msg, e.lineno, e.colno)
    try:
        return FanFile.model_validate(raw)
    except ValidationError as e:
        raise FanFileError(f"Invalid fan file: {_schema_message(e)}")


def load_fan_file(path: Path) -> FanFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FanFileError(f"Cannot read {path}: {e}")
    logger.debug(f"Read fan file {path}")
    return parse_fan_file(text)


def _facet_index(ff: FanFile, fan: Fan, key: str, what: str) -> int:
    try:
        index = int(key)
    except ValueError:
        raise FanFileError(f"{what} key '{key}' is not a cone index")
    if index < 0 or index >= len(ff.cones):
        raise FanFileError(f"{what} key {index} is outside the cone list")
    return fan.cone_id(ff.cones[index])


def _build_function(
    ff: FanFile, fan: Fan, spec: PLFunctionSpec
) -> PLFunction:
    if spec.ray_values is not None:
        return PLFunction.from_ray_values(fan, spec.ray_values)
    forms = {
        _facet_index(ff, fan, key, "Function"): form
        for key, form in (spec.facet_forms or {}).items()
    }
    return PLFunction(fan, forms)


def build_fan(
    ff: FanFile, max_ambient_rank: int = DEFAULT_MAX_AMBIENT_RANK
) -> FanData:
    """Validate a parsed FanFile and attach its weights and function."""
    if ff.product_of is not None:
        return _build_product(ff, max_ambient_rank)

    fan = validate(
        ff.ambient_rank, ff.rays, ff.cones, max_ambient_rank=max_ambient_rank
    )
    weights = None
    if ff.weights is not None:
        weights = Orientation(
            fan,
            {_facet_index(ff, fan, k, "Weight"): v for k, v in ff.weights.items()},
        )
    function = None
    if ff.function is not None:
        function = _build_function(ff, fan, ff.function)
    return FanData(fan, weights, function)


def _build_product(ff: FanFile, max_ambient_rank: int) -> FanData:
    if ff.rays or ff.cones:
        raise FanFileError("A product fan file lists its factors only")
    if ff.function is not None or ff.weights is not None:
        raise FanFileError("Weights of a product come from its factors")
    left, right = (build_fan(x, max_ambient_rank) for x in ff.product_of or [])
    if left.fan.ambient_rank + right.fan.ambient_rank != ff.ambient_rank:
        raise FanFileError(
            f"Factors have ranks {left.fan.ambient_rank} and "
            f"{right.fan.ambient_rank}, not summing to {ff.ambient_rank}"
        )
    # validate() enforces the limit on the factors only
    if ff.ambient_rank > max_ambient_rank:
        raise GuardrailError(
            f"Ambient rank {ff.ambient_rank} exceeds the limit {max_ambient_rank}"
        )
    fan = product(left.fan, right.fan)
    weights = None
    if left.weights is not None or right.weights is not None:
        weights = product_orientation(
            fan, left.weights_or_default(), right.weights_or_default()
        )
    return FanData(fan, weights, None)


def load_fan(
    path: Path, max_ambient_rank: int = DEFAULT_MAX_AMBIENT_RANK
) -> FanData:
    return build_fan(load_fan_file(path), max_ambient_rank)


def to_fan_file(
    fan: Fan,
    weights: Optional[Orientation] = None,
    function: Optional[PLFunction] = None,
) -> FanFile:
    """Describe a fan in canonical form: cones in fan order, zero cone omitted."""
    if fan.product_of is not None and function is None:
        f1, f2 = fan.product_of
        w1 = w2 = None
        if weights is not None:
            w1, w2 = _factor_weights(fan, weights)
        if w1 is not None or weights is None:
            return FanFile(
                ambient_rank=fan.ambient_rank,
                product_of=[to_fan_file(f1, w1), to_fan_file(f2, w2)],
            )

    cones = [c for c in fan.cones if c.dim > 0]
    position = {c.id: i for i, c in enumerate(cones)}
    ff = FanFile(
        ambient_rank=fan.ambient_rank,
        rays=[list(r) for r in fan.rays],
        cones=[list(c.rays) for c in cones],
    )
    if weights is not None and cones:
        ff.weights = {str(position[s]): w for s, w in sorted(weights.weights.items())}
    if function is not None:
        if fan.is_simplicial:
            ff.function = PLFunctionSpec(ray_values=function.ray_values())
        else:
            ff.function = PLFunctionSpec(
                facet_forms={
                    str(position[s]): list(form)
                    for s, form in sorted(function.forms.items())
                }
            )
    return ff


def _factor_weights(
    fan: Fan, weights: Orientation
) -> Tuple[Optional[Orientation], Optional[Orientation]]:
    """Split product weights back into factor weights when they factor as 1 × w."""
    f1, f2 = fan.product_of  # type: ignore[misc]
    m1 = len(f1.rays)
    left: Dict[int, int] = {}
    right: Dict[int, int] = {}
    for facet, value in weights.weights.items():
        rays = fan.cones[facet].rays
        a = f1.cone_id(r for r in rays if r < m1)
        b = f2.cone_id(r - m1 for r in rays if r >= m1)
        left.setdefault(a, 1)
        if right.setdefault(b, value) != value:
            return None, None
    w1, w2 = Orientation(f1, left), Orientation(f2, right)
    if product_orientation(fan, w1, w2).weights != weights.weights:
        return None, None
    return w1, w2


def dumps(ff: FanFile) -> str:
    """Canonical serialization: sorted keys, two-space indent, no nulls."""
    data = ff.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def canonicalize(
    text: str, max_ambient_rank: int = DEFAULT_MAX_AMBIENT_RANK
) -> str:
    """Parse, validate and re-serialize a fan file."""
    data = build_fan(parse_fan_file(text), max_ambient_rank)
    try:
        return dumps(to_fan_file(data.fan, data.weights, data.function))
    except FunctionError as e:
        raise FanFileError(f"Function cannot be written back: {e}")


def summarize(fan: Fan, weights: Optional[Orientation] = None) -> FanSummary:
    """Counts and flags of a fan; balancing uses weight 1 when none are given."""
    balanced = None
    if fan.is_pure:
        w = weights if weights is not None else Orientation.constant(fan)
        balanced = check_balancing(fan, w).balanced
    return FanSummary(
        ambient_rank=fan.ambient_rank,
        dim=fan.dim,
        rays=len(fan.rays),
        cone_counts=list(fan.cone_counts()),
        pure=fan.is_pure,
        simplicial=fan.is_simplicial,
        unimodular=is_unimodular(fan) if fan.is_simplicial else None,
        balanced=balanced,
    )
