"""Rational fans: validation, face poset, star fans and products."""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import FanValidationError, GuardrailError, UnsupportedStarError
from .exactla import (
    QMat,
    QuotientData,
    columns_matrix,
    kernel,
    lattice_index,
    primitive,
    quotient_lattice,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_AMBIENT_RANK = 12

RaySet = Tuple[int, ...]


class Cone(NamedTuple):
    """A cone of a fan, identified by its sorted ray indices."""

    id: int
    rays: RaySet
    dim: int


class Fan:
    """A validated rational fan.

    Build instances with :func:`validate`. Cones are sorted by dimension and
    then by ray tuple, so the zero cone always has id 0.
    """

    def __init__(
        self,
        ambient_rank: int,
        rays: Sequence[Tuple[int, ...]],
        cones: Sequence[Tuple[RaySet, int]],
        product_of: Optional[Tuple["Fan", "Fan"]] = None,
    ):
        self.ambient_rank = ambient_rank
        self.rays: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in rays)
        ordered = sorted(cones, key=lambda c: (c[1], c[0]))
        self.cones: Tuple[Cone, ...] = tuple(
            Cone(i, rs, dim) for i, (rs, dim) in enumerate(ordered)
        )
        self._index: Dict[RaySet, int] = {c.rays: c.id for c in self.cones}
        self.product_of = product_of
        self.dim = max((c.dim for c in self.cones), default=0)

        ray_sets = [frozenset(c.rays) for c in self.cones]
        self._faces: List[Tuple[int, ...]] = []
        self._cofaces: List[List[int]] = [[] for _ in self.cones]
        for c in self.cones:
            faces = tuple(
                t.id
                for t in self.cones
                if t.dim <= c.dim and ray_sets[t.id] <= ray_sets[c.id]
            )
            self._faces.append(faces)
            for t in faces:
                self._cofaces[t].append(c.id)
        self.covers: Tuple[Tuple[int, int], ...] = tuple(
            (t, c.id)
            for c in self.cones
            for t in self._faces[c.id]
            if self.cones[t].dim == c.dim - 1
        )
        self.maximal: Tuple[int, ...] = tuple(
            c.id for c in self.cones if len(self._cofaces[c.id]) == 1
        )

    # --- poset -------------------------------------------------------------

    def cone_id(self, rays: Iterable[int]) -> int:
        key = tuple(sorted(rays))
        if key not in self._index:
            raise KeyError(f"{key} is not a cone of this fan")
        return self._index[key]

    def has_cone(self, rays: Iterable[int]) -> bool:
        return tuple(sorted(rays)) in self._index

    def cone(self, cone_id: int) -> Cone:
        return self.cones[cone_id]

    def faces(self, cone_id: int) -> Tuple[int, ...]:
        """All faces of a cone, itself included."""
        return self._faces[cone_id]

    def cofaces(self, cone_id: int) -> Tuple[int, ...]:
        """All cones containing a cone, itself included."""
        return tuple(self._cofaces[cone_id])

    def is_face(self, tau: int, sigma: int) -> bool:
        return tau in self._faces[sigma]

    def cones_of_dim(self, k: int) -> Tuple[int, ...]:
        return tuple(c.id for c in self.cones if c.dim == k)

    @property
    def zero(self) -> int:
        return 0

    @property
    def facets(self) -> Tuple[int, ...]:
        return self.cones_of_dim(self.dim) if self.is_pure else self.maximal

    @property
    def is_pure(self) -> bool:
        return all(self.cones[m].dim == self.dim for m in self.maximal)

    @property
    def is_simplicial(self) -> bool:
        return all(len(c.rays) == c.dim for c in self.cones)

    def cone_counts(self) -> Tuple[int, ...]:
        return tuple(len(self.cones_of_dim(k)) for k in range(self.dim + 1))

    def meet(self, sigma: int, delta: int) -> int:
        """The cone sigma ∩ delta."""
        common = set(self.cones[sigma].rays) & set(self.cones[delta].rays)
        return self.cone_id(common)

    def generators(self, cone_id: int) -> np.ndarray:
        """Ray generators of a cone as the columns of an integer matrix."""
        return columns_matrix(
            [self.rays[r] for r in self.cones[cone_id].rays], self.ambient_rank
        )

    def lattice(self, cone_id: int) -> QuotientData:
        """N_σ (saturated span of the cone) and the quotient N^σ."""
        return quotient_lattice(self.generators(cone_id), self.ambient_rank)

    def __repr__(self) -> str:
        return (
            f"Fan(rank={self.ambient_rank}, rays={len(self.rays)}, "
            f"cones={self.cone_counts()})"
        )


def _rank(vectors: Sequence[Sequence[int]], n: int) -> int:
    if not vectors:
        return 0
    return QMat.from_columns(vectors, n).rank()


def _contains_line(vectors: Sequence[Sequence[int]], n: int) -> bool:
    """Whether some nontrivial nonnegative combination of the vectors is zero.

    Checked on circuits: a nonnegative dependency exists iff some minimal
    dependent subset has a kernel vector with entries of one sign.
    """
    k = len(vectors)
    top = min(k, _rank(vectors, n) + 1)
    for size in range(2, top + 1):
        for subset in combinations(range(k), size):
            mat = QMat.from_columns([vectors[i] for i in subset], n)
            ker = kernel(mat)
            if ker.ncols != 1:
                continue
            v = ker.column(0)
            if any(x == 0 for x in v):
                continue
            if all(x > 0 for x in v) or all(x < 0 for x in v):
                return True
    return False


def validate(
    ambient_rank: int,
    rays: Sequence[Sequence[int]],
    cones: Iterable[Iterable[int]],
    *,
    max_ambient_rank: int = DEFAULT_MAX_AMBIENT_RANK,
    product_of: Optional[Tuple[Fan, Fan]] = None,
) -> Fan:
    """Check a raw fan description and build a :class:`Fan`.

    The cone list must contain every face of every non-simplicial cone. For
    simplicial cones the missing faces are inserted. The zero cone and the
    one-dimensional cones of the rays are implicit.
    """
    if ambient_rank < 0:
        raise FanValidationError("Ambient rank must be non-negative")
    if ambient_rank > max_ambient_rank:
        raise GuardrailError(
            f"Ambient rank {ambient_rank} exceeds the limit {max_ambient_rank}"
        )

    clean_rays: List[Tuple[int, ...]] = []
    for i, ray in enumerate(rays):
        if len(ray) != ambient_rank:
            raise FanValidationError(
                f"Ray {i} has length {len(ray)}, expected {ambient_rank}"
            )
        try:
            prim = primitive(ray)
        except ValueError:
            raise FanValidationError(f"Ray {i} is the zero vector")
        if prim != tuple(int(x) for x in ray):
            logger.warning(f"Ray {i} {tuple(ray)} is not primitive, using {prim}")
        if prim in clean_rays:
            raise FanValidationError(
                f"Ray {i} duplicates ray {clean_rays.index(prim)}"
            )
        clean_rays.append(prim)

    declared: Dict[RaySet, int] = {(): 0}
    seen: set = set()
    for raw in cones:
        raw_list = [int(r) for r in raw]
        key = tuple(sorted(raw_list))
        if len(set(raw_list)) != len(raw_list):
            raise FanValidationError(f"Cone {raw_list} repeats a ray")
        if any(r < 0 or r >= len(clean_rays) for r in key):
            raise FanValidationError(f"Cone {raw_list} refers to an unknown ray")
        if key in seen:
            raise FanValidationError(f"Duplicate cone {list(key)}")
        seen.add(key)
        dim = _rank([clean_rays[r] for r in key], ambient_rank)
        declared[key] = dim

    for r in range(len(clean_rays)):
        declared.setdefault((r,), 1)

    # simplicial cones carry all their faces
    for key, dim in list(declared.items()):
        if len(key) == dim:
            for size in range(2, len(key)):
                for sub in combinations(key, size):
                    declared.setdefault(sub, size)

    for key, dim in declared.items():
        if len(key) == dim:
            continue
        if _contains_line([clean_rays[r] for r in key], ambient_rank):
            raise FanValidationError(f"Cone {list(key)} contains a line")
        inner = [
            (sub, d)
            for sub, d in declared.items()
            if sub != key and set(sub) <= set(key)
        ]
        for sub, d in inner:
            if d >= dim:
                raise FanValidationError(
                    f"Cone {list(sub)} has rank {d} but is a proper face of "
                    f"{list(key)} of rank {dim}"
                )
        covered = {r for sub, d in inner if d == dim - 1 for r in sub}
        if covered != set(key):
            raise FanValidationError(
                f"Face-closure violation: the facets of cone {list(key)} "
                f"are not all declared"
            )

    keys = list(declared)
    for a, b in combinations(keys, 2):
        common = tuple(sorted(set(a) & set(b)))
        if common not in declared:
            raise FanValidationError(
                f"Face-closure violation: {list(a)} ∩ {list(b)} is not a cone"
            )

    fan = Fan(ambient_rank, clean_rays, list(declared.items()), product_of=product_of)
    logger.debug(f"Validated {fan}")
    return fan


class StarData(NamedTuple):
    """The star fan Σ^σ with its bookkeeping back to Σ."""

    base_cone: Cone
    star: Fan
    proj: QuotientData
    ray_origin: Dict[int, int]
    cone_origin: Dict[int, int]
    weights: Optional[Dict[RaySet, int]]


def _block_quotient(q1: QuotientData, q2: QuotientData) -> QuotientData:
    def block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=object)
        out[: a.shape[0], : a.shape[1]] = a
        out[a.shape[0] :, a.shape[1] :] = b
        return out

    return QuotientData(
        block(q1.sub_basis, q2.sub_basis),
        block(q1.quot_basis, q2.quot_basis),
        block(q1.proj, q2.proj),
    )


def _star_weights(
    f: Fan,
    weights: Optional[Mapping[RaySet, int]],
    star: Fan,
    cone_origin: Mapping[int, int],
) -> Optional[Dict[RaySet, int]]:
    if weights is None:
        return None
    out = {}
    for star_id, source in cone_origin.items():
        rays = f.cones[source].rays
        if rays in weights and star.cones[star_id].dim == star.dim:
            out[star.cones[star_id].rays] = weights[rays]
    return out


def star_fan(
    f: Fan, sigma: int, weights: Optional[Mapping[RaySet, int]] = None
) -> StarData:
    """The star fan of ``f`` at ``sigma`` in the quotient N^σ.

    Supported for simplicial fans, for recorded products, at the zero cone
    and at maximal cones.
    """
    base = f.cones[sigma]
    proj = f.lattice(sigma)
    quotient_rank = proj.quotient_rank
    above = f.cofaces(sigma)

    if f.product_of is not None and base.dim > 0:
        return _product_star(f, sigma, weights)

    if base.dim == 0:
        cone_origin = {c.id: c.id for c in f.cones}
        star = Fan(f.ambient_rank, f.rays, [(c.rays, c.dim) for c in f.cones],
                   product_of=f.product_of)
        ray_origin = {r: f.cone_id((r,)) for r in range(len(f.rays))}
        return StarData(base, star, proj, ray_origin, cone_origin,
                        _star_weights(f, weights, star, cone_origin))

    if len(above) == 1:
        star = validate(quotient_rank, [], [])
        cone_origin = {0: sigma}
        return StarData(base, star, proj, {}, cone_origin,
                        _star_weights(f, weights, star, cone_origin))

    if not all(len(f.cones[eta].rays) == f.cones[eta].dim for eta in above):
        raise UnsupportedStarError(
            f"Star at non-simplicial cone {list(base.rays)} needs a product structure"
        )

    base_rays = set(base.rays)
    covers = [eta for eta in above if f.cones[eta].dim == base.dim + 1]
    star_rays: List[Tuple[int, ...]] = []
    ray_of_extra: Dict[int, int] = {}
    ray_origin: Dict[int, int] = {}
    for eta in covers:
        (extra,) = set(f.cones[eta].rays) - base_rays
        ray_of_extra[extra] = len(star_rays)
        ray_origin[len(star_rays)] = eta
        star_rays.append(primitive(proj.project(f.rays[extra])))

    star_cones = []
    for eta in above:
        extras = sorted(ray_of_extra[r] for r in set(f.cones[eta].rays) - base_rays)
        star_cones.append((tuple(extras), eta))
    star = validate(quotient_rank, star_rays, [c for c, _ in star_cones if c])
    cone_origin = {star.cone_id(c): eta for c, eta in star_cones}
    logger.debug(f"Star at {list(base.rays)}: {star}")
    return StarData(base, star, proj, ray_origin, cone_origin,
                    _star_weights(f, weights, star, cone_origin))


def _product_star(
    f: Fan, sigma: int, weights: Optional[Mapping[RaySet, int]]
) -> StarData:
    f1, f2 = f.product_of  # type: ignore[misc]
    m1 = len(f1.rays)
    rays = f.cones[sigma].rays
    s1 = f1.cone_id(r for r in rays if r < m1)
    s2 = f2.cone_id(r - m1 for r in rays if r >= m1)
    star1, star2 = star_fan(f1, s1), star_fan(f2, s2)
    star = product(star1.star, star2.star)
    k1 = len(star1.star.rays)

    def lift(c1: int, c2: int) -> int:
        return f.cone_id(
            list(f1.cones[c1].rays) + [m1 + r for r in f2.cones[c2].rays]
        )

    cone_origin = {}
    for c in star.cones:
        a = star1.star.cone_id(r for r in c.rays if r < k1)
        b = star2.star.cone_id(r - k1 for r in c.rays if r >= k1)
        cone_origin[c.id] = lift(star1.cone_origin[a], star2.cone_origin[b])
    ray_origin = {r: cone_origin[star.cone_id((r,))] for r in range(len(star.rays))}
    proj = _block_quotient(star1.proj, star2.proj)
    return StarData(f.cones[sigma], star, proj, ray_origin, cone_origin,
                    _star_weights(f, weights, star, cone_origin))


def product(f1: Fan, f2: Fan) -> Fan:
    """The product fan f1 × f2 in the direct sum of the two lattices."""
    n1, n2 = f1.ambient_rank, f2.ambient_rank
    rays = [tuple(r) + (0,) * n2 for r in f1.rays]
    rays += [(0,) * n1 + tuple(r) for r in f2.rays]
    m1 = len(f1.rays)
    cones = [
        (tuple(c1.rays) + tuple(m1 + r for r in c2.rays), c1.dim + c2.dim)
        for c1 in f1.cones
        for c2 in f2.cones
    ]
    fan = Fan(n1 + n2, rays, cones, product_of=(f1, f2))
    logger.debug(f"Product {f1} x {f2} = {fan}")
    return fan


def product_cone(f: Fan, c1: int, c2: int) -> int:
    """Id of σ₁ × σ₂ in a product fan."""
    f1, f2 = f.product_of  # type: ignore[misc]
    m1 = len(f1.rays)
    return f.cone_id(list(f1.cones[c1].rays) + [m1 + r for r in f2.cones[c2].rays])


def is_unimodular(f: Fan) -> bool:
    """Whether every cone's rays form a basis of its saturated lattice."""
    return all(multiplicity(f, c.id) == 1 for c in f.cones if c.dim > 0)


def multiplicity(f: Fan, cone_id: int) -> int:
    """Index of the lattice spanned by the rays of a simplicial cone in N_σ."""
    if f.cones[cone_id].dim == 0:
        return 1
    return lattice_index(f.generators(cone_id))


def permute_rays(f: Fan, perm: Sequence[int]) -> Fan:
    """Relabel ray i as perm[i]."""
    rays: List[Tuple[int, ...]] = [()] * len(f.rays)
    for i, target in enumerate(perm):
        rays[target] = f.rays[i]
    cones = [(tuple(sorted(perm[r] for r in c.rays)), c.dim) for c in f.cones]
    return Fan(f.ambient_rank, rays, cones)
