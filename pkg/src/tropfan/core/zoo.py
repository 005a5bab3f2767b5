"""Built-in example fans.

Every example comes as a :class:`FanFile` carrying weight 1 on each facet.
Names follow the pattern ``bergman-u(r,n)`` for uniform matroids and
``product:A×B`` (or ``product:A*B``) for products of two examples.
"""

import logging
import re
from itertools import combinations, product as cartesian
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from ..exceptions import ExampleNotFoundError, FanFileError
from ..models import FanFile, PLFunctionSpec
from .fan import DEFAULT_MAX_AMBIENT_RANK, validate
from .fanio import FanData, build_fan, load_fan, to_fan_file
from .weights import Orientation, pullback_function, tropical_modification

logger = logging.getLogger(__name__)

MAX_BERGMAN_N = 6

_BERGMAN = re.compile(r"^bergman-u\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_PRODUCT_SEPARATORS = ("×", "*")

# rays e1, -e1, e2, -e2 of the plane examples
_PLANE_RAYS = [[1, 0], [-1, 0], [0, 1], [0, -1]]


def _unit_weights(ambient_rank: int, rays: List[List[int]], cones: List[List[int]]) -> FanFile:
    fan = validate(ambient_rank, rays, cones)
    return to_fan_file(fan, Orientation.constant(fan))


def point() -> FanFile:
    return FanFile(ambient_rank=1)


def line1() -> FanFile:
    return _unit_weights(1, [[1], [-1]], [[0], [1]])


def lambda2() -> FanFile:
    """The complete fan of the plane, with f = min(0, x) + min(0, y)."""
    ff = _unit_weights(2, _PLANE_RAYS, [[0, 2], [0, 3], [1, 2], [1, 3]])
    ff.function = PLFunctionSpec(ray_values=[0, -1, 0, -1])
    return ff


def cross() -> FanFile:
    """The four coordinate half-axes, with g = max(0, x) - max(0, y)."""
    ff = _unit_weights(2, _PLANE_RAYS, [[0], [1], [2], [3]])
    ff.function = PLFunctionSpec(ray_values=[1, 0, -1, 0])
    return ff


def cube_skeleton() -> FanFile:
    """Cones over the edges of the cube [-1, 1]^3."""
    rays = [list(v) for v in cartesian([1, -1], repeat=3)]
    edges = [
        [i, j]
        for i, j in combinations(range(len(rays)), 2)
        if sum(a != b for a, b in zip(rays[i], rays[j])) == 1
    ]
    return _unit_weights(3, rays, edges)


def tropline3() -> FanFile:
    rays = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]
    return _unit_weights(3, rays, [[i] for i in range(4)])


def mod_lambda_cross() -> FanFile:
    """TM_f(Λ): the plane fan modified along the cross, the divisor of its function.

    Carries f = min(0, x) + min(0, y) pulled back along the projection.
    """
    base = build_fan(lambda2())
    fan, w = base.fan, base.weights_or_default()
    f = base.function
    mod = tropical_modification(fan, w, f)  # type: ignore[arg-type]
    return to_fan_file(mod.total, mod.weights, pullback_function(mod, f))  # type: ignore[arg-type]


def bergman_uniform(r: int, n: int) -> FanFile:
    """Bergman fan of the uniform matroid U(r, n) in Z^n / Z(1, ..., 1).

    Rays are the proper nonempty flats, that is subsets of size below r,
    written in coordinates relative to the last basis vector.
    """
    if not 1 <= r <= n or not 2 <= n <= MAX_BERGMAN_N:
        raise ExampleNotFoundError(
            f"bergman-u(r,n) needs 1 <= r <= n and 2 <= n <= {MAX_BERGMAN_N}"
        )
    flats = [
        frozenset(s) for size in range(1, r) for s in combinations(range(n), size)
    ]
    index = {flat: i for i, flat in enumerate(flats)}

    def coords(flat: frozenset) -> List[int]:
        last = 1 if n - 1 in flat else 0
        return [(1 if i in flat else 0) - last for i in range(n - 1)]

    rays = [coords(flat) for flat in flats]
    chains: List[List[int]] = []

    def extend(chain: List[frozenset]) -> None:
        chains.append(sorted(index[m] for m in chain))
        for flat in flats:
            if chain[-1] < flat:
                extend(chain + [flat])

    for flat in flats:
        extend([flat])
    if not flats:
        return FanFile(ambient_rank=n - 1)
    return _unit_weights(n - 1, rays, chains)


def _product(name: str) -> FanFile:
    body = name[len("product:") :]
    for sep in _PRODUCT_SEPARATORS:
        if sep in body:
            left, right = body.split(sep, 1)
            a, b = example(left.strip()), example(right.strip())
            return FanFile(ambient_rank=a.ambient_rank + b.ambient_rank, product_of=[a, b])
    raise ExampleNotFoundError(f"Product example '{name}' needs the form product:A×B")


EXAMPLES: Dict[str, Callable[[], FanFile]] = {
    "point": point,
    "line1": line1,
    "lambda2": lambda2,
    "cross": cross,
    "cube-skeleton": cube_skeleton,
    "tropline3": tropline3,
    "mod-lambda-cross": mod_lambda_cross,
}


def example_names() -> Tuple[str, ...]:
    """Names of the fixed examples; parametrized families are not expanded."""
    return tuple(EXAMPLES) + ("bergman-u(r,n)", "product:A×B")


def example(name: str) -> FanFile:
    """The FanFile of a named example."""
    if name in EXAMPLES:
        return EXAMPLES[name]()
    match = _BERGMAN.match(name)
    if match:
        return bergman_uniform(int(match.group(1)), int(match.group(2)))
    if name.startswith("product:"):
        return _product(name)
    raise ExampleNotFoundError(
        f"Unknown example '{name}'. Available: {', '.join(example_names())}"
    )


def load_example(name: str) -> FanData:
    logger.debug(f"Loading example {name}")
    return build_fan(example(name))


def load_source(source: str, max_ambient_rank: int = DEFAULT_MAX_AMBIENT_RANK) -> FanData:
    """A fan from a file path, or from an example name when no such file exists."""
    path = Path(source).expanduser()
    if path.is_file():
        return load_fan(path, max_ambient_rank)
    try:
        ff = example(source)
    except ExampleNotFoundError:
        if path.suffix == ".json" or "/" in source:
            raise FanFileError(f"No such fan file: {source}")
        raise
    return build_fan(ff, max_ambient_rank)
