"""Tropical structure on fans.

Orientations and balancing, conewise integral linear functions, orders of
vanishing, divisors, tropical modifications and induced functions on star
fans.
"""

import logging
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

import numpy as np

from ..exceptions import FanValidationError, FunctionError
from ..models import BalancingReport, BalancingViolation
from .exactla import (
    columns_matrix,
    integer_solution,
    lattice_coordinates,
    primitive,
    quotient_lattice,
)
from .fan import Fan, RaySet, StarData, star_fan, validate

logger = logging.getLogger(__name__)

Form = Tuple[int, ...]


def _dot(form: Iterable[int], v: Iterable[int]) -> int:
    return sum(int(a) * int(b) for a, b in zip(form, v))


class Orientation:
    """Nonzero integer weights on the facets of a pure fan."""

    def __init__(self, fan: Fan, weights: Mapping[int, int]):
        if not fan.is_pure:
            raise FanValidationError("An orientation needs a pure fan")
        facets = set(fan.facets)
        if set(weights) != facets:
            missing = sorted(facets - set(weights))
            extra = sorted(set(weights) - facets)
            raise FanValidationError(
                f"Weights must be given exactly on facets "
                f"(missing {missing}, not facets {extra})"
            )
        for facet, value in weights.items():
            if value == 0:
                raise FanValidationError(
                    f"Weight of facet {list(fan.cones[facet].rays)} is zero"
                )
        self.fan = fan
        self.weights: Dict[int, int] = {k: int(v) for k, v in weights.items()}

    @classmethod
    def constant(cls, fan: Fan, value: int = 1) -> "Orientation":
        return cls(fan, {s: value for s in fan.facets})

    @classmethod
    def from_rays(cls, fan: Fan, weights: Mapping[RaySet, int]) -> "Orientation":
        return cls(fan, {fan.cone_id(rays): w for rays, w in weights.items()})

    def by_rays(self) -> Dict[RaySet, int]:
        return {self.fan.cones[s].rays: w for s, w in self.weights.items()}

    def __getitem__(self, facet: int) -> int:
        return self.weights[facet]

    def __repr__(self) -> str:
        return f"Orientation({self.by_rays()})"


class PLFunction:
    """A continuous conewise integral linear function, one form per facet."""

    def __init__(self, fan: Fan, forms: Mapping[int, Iterable[int]]):
        facets = set(fan.facets)
        if set(forms) != facets:
            raise FunctionError("A function needs exactly one form per facet")
        self.fan = fan
        self.forms: Dict[int, Form] = {}
        for facet, form in forms.items():
            form = tuple(int(x) for x in form)
            if len(form) != fan.ambient_rank:
                raise FunctionError(
                    f"Form on facet {list(fan.cones[facet].rays)} has length "
                    f"{len(form)}, expected {fan.ambient_rank}"
                )
            self.forms[facet] = form
        self._check_compatible()

    @classmethod
    def from_ray_values(cls, fan: Fan, values: Iterable[int]) -> "PLFunction":
        """Build facet forms on a simplicial fan from the values on the rays."""
        values = [int(v) for v in values]
        if len(values) != len(fan.rays):
            raise FunctionError(
                f"Got {len(values)} ray values for {len(fan.rays)} rays"
            )
        if not fan.is_simplicial:
            raise FunctionError("Ray values determine a function only on simplicial fans")
        forms = {}
        for facet in fan.facets:
            rays = fan.cones[facet].rays
            # rows of the system are the ray generators
            system = fan.generators(facet).T.copy()
            form = integer_solution(system, [values[r] for r in rays])
            if form is None:
                raise FunctionError(
                    f"No integral linear form on facet {list(rays)} "
                    f"takes the values {[values[r] for r in rays]}"
                )
            forms[facet] = form
        return cls(fan, forms)

    @classmethod
    def linear(cls, fan: Fan, form: Iterable[int]) -> "PLFunction":
        form = tuple(int(x) for x in form)
        return cls(fan, {s: form for s in fan.facets})

    def _check_compatible(self) -> None:
        facets = list(self.forms)
        for i, a in enumerate(facets):
            for b in facets[i + 1 :]:
                common = self.fan.meet(a, b)
                for r in self.fan.cones[common].rays:
                    ray = self.fan.rays[r]
                    if _dot(self.forms[a], ray) != _dot(self.forms[b], ray):
                        raise FunctionError(
                            f"Forms on facets {list(self.fan.cones[a].rays)} and "
                            f"{list(self.fan.cones[b].rays)} disagree on ray {r}"
                        )

    def form_on(self, cone_id: int) -> Form:
        """Form of the lexicographically smallest facet containing the cone."""
        facet = min(
            (c for c in self.fan.cofaces(cone_id) if c in self.forms),
            key=lambda c: self.fan.cones[c].rays,
        )
        return self.forms[facet]

    def ray_value(self, ray: int) -> int:
        return _dot(self.form_on(self.fan.cone_id((ray,))), self.fan.rays[ray])

    def ray_values(self) -> List[int]:
        return [self.ray_value(r) for r in range(len(self.fan.rays))]

    def is_linear(self) -> bool:
        return len(set(self.forms.values())) <= 1

    def add_linear(self, form: Iterable[int]) -> "PLFunction":
        form = tuple(int(x) for x in form)
        return PLFunction(
            self.fan,
            {s: tuple(a + b for a, b in zip(f, form)) for s, f in self.forms.items()},
        )


def cone_normal(fan: Fan, tau: int, sigma: int) -> Tuple[int, ...]:
    """Primitive generator of the ray image of sigma in N^τ, for τ ⋖ σ."""
    q = fan.lattice(tau)
    extra = set(fan.cones[sigma].rays) - set(fan.cones[tau].rays)
    for r in sorted(extra):
        image = q.project(fan.rays[r])
        if any(image):
            return primitive(image)
    raise FanValidationError(
        f"Cone {list(fan.cones[sigma].rays)} does not cover {list(fan.cones[tau].rays)}"
    )


def unit_normal(fan: Fan, tau: int, sigma: int) -> Tuple[int, ...]:
    """A vector v of N_σ with N_τ + Zv = N_σ, on the side of σ."""
    basis = fan.lattice(sigma).sub_basis
    k = basis.shape[1]
    tau_coords = [
        lattice_coordinates(basis, fan.rays[r]) for r in fan.cones[tau].rays
    ]
    split = quotient_lattice(columns_matrix(tau_coords, k), k)
    v = tuple(int(x) for x in basis @ split.quot_basis[:, 0])
    extra = sorted(set(fan.cones[sigma].rays) - set(fan.cones[tau].rays))
    outer = lattice_coordinates(basis, fan.rays[extra[0]])
    if split.project(outer)[0] < 0:
        v = tuple(-x for x in v)
    return v


def check_balancing(fan: Fan, w: Orientation) -> BalancingReport:
    """Test the balancing condition at every codimension-one cone."""
    if not fan.is_pure:
        raise FanValidationError("Balancing is defined for pure fans only")
    violations = []
    for tau in fan.cones_of_dim(fan.dim - 1) if fan.dim > 0 else ():
        q = fan.lattice(tau)
        total = [0] * q.quotient_rank
        for sigma in fan.cofaces(tau):
            if fan.cones[sigma].dim != fan.dim:
                continue
            e = cone_normal(fan, tau, sigma)
            total = [t + w[sigma] * x for t, x in zip(total, e)]
        if any(total):
            logger.debug(f"Balancing fails at {list(fan.cones[tau].rays)}: {total}")
            violations.append(
                BalancingViolation(cone=list(fan.cones[tau].rays), residual=total)
            )
    return BalancingReport(balanced=not violations, violations=violations)


def order_of_vanishing(fan: Fan, w: Orientation, fn: PLFunction, tau: int) -> int:
    """ord_τ(f) for a codimension-one cone τ."""
    if fan.cones[tau].dim != fan.dim - 1:
        raise FunctionError(f"Cone {list(fan.cones[tau].rays)} is not of codimension one")
    correction = [0] * fan.ambient_rank
    order = 0
    for sigma in fan.cofaces(tau):
        if fan.cones[sigma].dim != fan.dim:
            continue
        n = unit_normal(fan, tau, sigma)
        order -= w[sigma] * _dot(fn.forms[sigma], n)
        correction = [c + w[sigma] * x for c, x in zip(correction, n)]
    order += _dot(fn.form_on(tau), correction)
    return order


class Divisor(NamedTuple):
    """div(f): the codimension-one cones of nonzero order with their faces.

    ``support`` and ``weights`` are ``None`` for the empty divisor. ``cone_map``
    sends a cone of ``support`` to the cone of the ambient fan it came from.
    """

    orders: Dict[int, int]
    support: Optional[Fan]
    weights: Optional[Orientation]
    cone_map: Dict[int, int]

    @property
    def is_empty(self) -> bool:
        return self.support is None

    def base_cones(self) -> Tuple[int, ...]:
        return tuple(sorted(self.cone_map.values()))


def divisor(fan: Fan, w: Orientation, fn: PLFunction) -> Divisor:
    """The divisor of a conewise linear function on a tropical fan."""
    if fan.dim == 0:
        return Divisor({}, None, None, {})
    orders = {
        tau: order_of_vanishing(fan, w, fn, tau)
        for tau in fan.cones_of_dim(fan.dim - 1)
    }
    nonzero = {tau: o for tau, o in orders.items() if o != 0}
    logger.debug(f"Orders of vanishing: {nonzero}")
    if not nonzero:
        return Divisor(orders, None, None, {})

    # the support gets its own ray numbering; cone_map leads back to the parent cones
    cones = sorted({c for tau in nonzero for c in fan.faces(tau)})
    used_rays = sorted({r for c in cones for r in fan.cones[c].rays})
    renumber = {r: i for i, r in enumerate(used_rays)}
    support = validate(
        fan.ambient_rank,
        [fan.rays[r] for r in used_rays],
        [[renumber[r] for r in fan.cones[c].rays] for c in cones if c != fan.zero],
        max_ambient_rank=fan.ambient_rank,
    )
    cone_map = {
        support.cone_id(renumber[r] for r in fan.cones[c].rays): c for c in cones
    }
    back = {v: k for k, v in cone_map.items()}
    weights = Orientation(support, {back[tau]: o for tau, o in nonzero.items()})
    return Divisor(orders, support, weights, cone_map)


class ModificationData(NamedTuple):
    """The tropical modification TM_f(Σ) and its relation to Σ.

    ``face_map`` sends each cone of ``total`` to ("graph", σ) or ("up", δ)
    with σ, δ cones of the base fan.
    """

    base: Fan
    base_weights: Orientation
    function: PLFunction
    divisor: Divisor
    total: Fan
    weights: Orientation
    proj_map: np.ndarray
    special_vector: Tuple[int, ...]
    special_ray: Optional[int]
    face_map: Dict[int, Tuple[str, int]]

    def graph_cone(self, sigma: int) -> int:
        return self.total.cone_id(self.base.cones[sigma].rays)

    def up_cone(self, delta: int) -> int:
        if self.special_ray is None:
            raise KeyError("Degenerate modification has no up cones")
        return self.total.cone_id(self.base.cones[delta].rays + (self.special_ray,))


def tropical_modification(
    fan: Fan, w: Orientation, fn: PLFunction
) -> ModificationData:
    """TM_f(Σ) in N ⊕ Z along the divisor of ``fn``."""
    n = fan.ambient_rank
    div = divisor(fan, w, fn)
    values = fn.ray_values()
    rays = [tuple(fan.rays[r]) + (values[r],) for r in range(len(fan.rays))]
    special = tuple([0] * n + [1])
    cones: List[RaySet] = [c.rays for c in fan.cones if c.dim > 0]
    special_ray = None
    up_of: Dict[RaySet, int] = {}
    if not div.is_empty:
        special_ray = len(rays)
        rays.append(special)
        for delta in div.base_cones():
            key = fan.cones[delta].rays + (special_ray,)
            cones.append(key)
            up_of[key] = delta

    total = validate(n + 1, rays, cones, max_ambient_rank=n + 1)
    face_map: Dict[int, Tuple[str, int]] = {}
    for c in total.cones:
        if c.rays in up_of:
            face_map[c.id] = ("up", up_of[c.rays])
        else:
            face_map[c.id] = ("graph", fan.cone_id(c.rays))

    weights: Dict[int, int] = {}
    for facet in total.facets:
        kind, source = face_map[facet]
        weights[facet] = w[source] if kind == "graph" else div.orders[source]
    orientation = Orientation(total, weights)

    report = check_balancing(total, orientation)
    if not report.balanced:
        raise FunctionError(
            "Divisor weights are inconsistent: the modification is not balanced at "
            + ", ".join(str(v.cone) for v in report.violations)
        )
    proj_map = np.zeros((n, n + 1), dtype=object)
    for i in range(n):
        proj_map[i, i] = 1
    logger.info(f"Tropical modification: {total}")
    return ModificationData(
        fan, w, fn, div, total, orientation, proj_map, special, special_ray, face_map
    )


def induced_function(
    fan: Fan, fn: PLFunction, sigma: int, star: Optional[StarData] = None
) -> Tuple[StarData, PLFunction]:
    """The function f^σ = π^σ_*(f − ℓ) on the star fan at σ."""
    if sigma < 0 or sigma >= len(fan.cones):
        raise FunctionError(f"{sigma} is not a cone id")
    data = star if star is not None else star_fan(fan, sigma)
    ell = fn.form_on(sigma)
    lift = data.proj.quot_basis
    forms = {}
    for star_facet in data.star.facets:
        source = data.cone_origin[star_facet]
        diff = np.array(
            [a - b for a, b in zip(fn.forms[source], ell)], dtype=object
        )
        forms[star_facet] = tuple(int(x) for x in diff @ lift) if lift.size else ()
    return data, PLFunction(data.star, forms)


def pullback_function(mod: ModificationData, g: PLFunction) -> PLFunction:
    """δ_pr^*(g): the function g ∘ pr on the total fan of a modification."""
    forms = {}
    for facet in mod.total.facets:
        kind, source = mod.face_map[facet]
        base_form = g.forms[source] if kind == "graph" else g.form_on(source)
        forms[facet] = tuple(base_form) + (0,)
    return PLFunction(mod.total, forms)


def product_orientation(fan: Fan, w1: Orientation, w2: Orientation) -> Orientation:
    """Weights ω(σ₁×σ₂) = ω₁(σ₁)ω₂(σ₂) on a product fan."""
    f1, f2 = fan.product_of  # type: ignore[misc]
    m1 = len(f1.rays)
    weights = {}
    for facet in fan.facets:
        rays = fan.cones[facet].rays
        a = f1.cone_id(r for r in rays if r < m1)
        b = f2.cone_id(r - m1 for r in rays if r >= m1)
        weights[facet] = w1[a] * w2[b]
    return Orientation(fan, weights)


def factor_pullback(fan: Fan, fn: PLFunction, factor: int = 0) -> PLFunction:
    """Pull a function on one factor of a product fan back along the projection."""
    f1, f2 = fan.product_of  # type: ignore[misc]
    m1 = len(f1.rays)
    forms = {}
    for facet in fan.facets:
        rays = fan.cones[facet].rays
        if factor == 0:
            source = f1.cone_id(r for r in rays if r < m1)
            forms[facet] = fn.forms[source] + (0,) * f2.ambient_rank
        else:
            source = f2.cone_id(r - m1 for r in rays if r >= m1)
            forms[facet] = (0,) * f1.ambient_rank + fn.forms[source]
    return PLFunction(fan, forms)


def star_orientation(data: StarData) -> Optional[Orientation]:
    if data.weights is None:
        return None
    return Orientation.from_rays(data.star, data.weights)
