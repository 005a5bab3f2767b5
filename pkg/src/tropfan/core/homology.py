"""Cellular tropical (co)homology of fans, compactifications and open strata.

Complexes are assembled from the face data of :mod:`compact` and the
coefficient spaces of :mod:`sheaf`. Cohomology and compact-support
cohomology use the transposed complexes, so their dimensions agree with the
corresponding homology over Q.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from sympy import QQ

from ..exceptions import ComplexError, SubfanError
from ..models import (
    CapRank,
    CheckItem,
    CheckReport,
    HomologyTable,
    PDReport,
    SmoothReport,
    StarVerdict,
)
from .compact import ExtComplex, FaceSubset, compactify, open_subcomplex
from .exactla import QMat, column_echelon, kernel, sign
from .fan import Fan, product, star_fan, validate
from .sheaf import (
    CoeffBasis,
    Sheaf,
    canonical_multivector,
    contract,
    exterior_power,
    sheaf_for,
    wedge_index,
)
from .weights import (
    Orientation,
    ModificationData,
    PLFunction,
    divisor,
    star_orientation,
    tropical_modification,
)

logger = logging.getLogger(__name__)

THEORIES = ("ordinary", "borel_moore", "compact_support", "cohomology")
COCHAIN_THEORIES = ("compact_support", "cohomology")

Space = Union[Fan, ExtComplex, FaceSubset]


class ChainComplex:
    """A bounded complex of finite-dimensional Q-vector spaces.

    ``boundaries[q]`` is ∂_q: C_q -> C_{q-1}. A cochain complex keeps the
    boundaries of its dual chain complex and differentiates with transposes.
    """

    def __init__(
        self,
        theory: str,
        p: int,
        dims: Dict[int, int],
        boundaries: Dict[int, QMat],
        cochain: bool = False,
        terms: Optional[Dict[int, Tuple[int, ...]]] = None,
    ):
        self.theory = theory
        self.p = p
        self.dims = dict(dims)
        self.boundaries = dict(boundaries)
        self.cochain = cochain
        self.terms = terms or {}

    @property
    def degrees(self) -> List[int]:
        return sorted(self.dims)

    def dim(self, q: int) -> int:
        return self.dims.get(q, 0)

    def boundary(self, q: int) -> QMat:
        if q in self.boundaries:
            return self.boundaries[q]
        return QMat.zeros(self.dim(q - 1), self.dim(q))

    def differential(self, q: int) -> QMat:
        """d^q: C^q -> C^{q+1} for cochain complexes, ∂_q otherwise."""
        if self.cochain:
            return self.boundary(q + 1).T
        return self.boundary(q)

    def transpose(self) -> "ChainComplex":
        theory = {
            "borel_moore": "compact_support",
            "ordinary": "cohomology",
        }.get(self.theory, self.theory)
        return ChainComplex(
            theory, self.p, self.dims, self.boundaries, not self.cochain, self.terms
        )

    def is_complex(self) -> bool:
        return all(
            (self.boundary(q) @ self.boundary(q + 1)).is_zero() for q in self.degrees
        )

    def homology_dim(self, q: int) -> int:
        return self.dim(q) - self.boundary(q).rank() - self.boundary(q + 1).rank()

    def homology_dims(self) -> Dict[int, int]:
        return {q: self.homology_dim(q) for q in self.degrees}

    def cycles(self, q: int) -> QMat:
        if self.cochain:
            return kernel(self.boundary(q + 1).T)
        return kernel(self.boundary(q))

    def boundaries_of(self, q: int) -> QMat:
        """Image of the incoming differential in degree q."""
        if self.cochain:
            return column_echelon(self.boundary(q).T).basis
        return column_echelon(self.boundary(q + 1)).basis

    def representatives(self, q: int) -> QMat:
        """Cycles completing a basis of the boundaries, chosen by echelon pivots."""
        return complement(self.boundaries_of(q), self.cycles(q))

    def __repr__(self) -> str:
        kind = "cochain" if self.cochain else "chain"
        return f"ChainComplex({self.theory}, p={self.p}, {kind}, dims={self.dims})"


def complement(sub: QMat, space: QMat) -> QMat:
    """Columns of ``space`` that extend a basis of ``sub`` to one of the span."""
    chosen: List[Tuple] = []
    current = sub
    rank = sub.rank()
    for col in space.columns():
        trial = current.hstack(QMat.from_columns([col], space.nrows))
        if trial.rank() > rank:
            chosen.append(col)
            current, rank = trial, rank + 1
    return QMat.from_columns(chosen, space.nrows)


class ChainMap(NamedTuple):
    source: ChainComplex
    target: ChainComplex
    maps: Dict[int, QMat]

    def at(self, q: int) -> QMat:
        if q in self.maps:
            return self.maps[q]
        return QMat.zeros(self.target.dim(q), self.source.dim(q))

    def is_chain_map(self) -> bool:
        degrees = set(self.source.degrees) | set(self.target.degrees)
        return all(
            self.target.boundary(q) @ self.at(q)
            == self.at(q - 1) @ self.source.boundary(q)
            for q in degrees
        )


# --- assembly ------------------------------------------------------------------


def _faces_for(space: Space, theory: str) -> Tuple[ExtComplex, List[int], str]:
    if theory not in THEORIES:
        raise ComplexError(f"Unknown theory '{theory}'")
    if isinstance(space, Fan):
        c = compactify(space, sed_zero_only=True)
        if theory in ("ordinary", "cohomology"):
            return c, [c.face(space.zero, space.zero)], theory
        return c, [x.id for x in c.faces], theory
    if isinstance(space, ExtComplex):
        return space, [x.id for x in space.faces], theory
    if isinstance(space, FaceSubset):
        if theory in ("ordinary", "cohomology"):
            raise ComplexError(
                "Only Borel-Moore and compact-support theories "
                "are defined on open strata"
            )
        return space.complex, list(space.faces), "semi_open"
    raise ComplexError(f"Cannot build a complex on {type(space).__name__}")


def assemble(
    c: ExtComplex, faces: Sequence[int], p: int, theory: str, cochain: bool = False
) -> ChainComplex:
    """The complex ⊕ F_p(γ) over the given faces with the signed structure maps."""
    sheaf = sheaf_for(c)
    chosen = set(faces)
    by_dim: Dict[int, List[int]] = {q: [] for q in range(c.base.dim + 1)}
    for face in sorted(chosen):
        by_dim[c.faces[face].dim].append(face)

    offsets: Dict[int, int] = {}
    dims: Dict[int, int] = {}
    for q, members in by_dim.items():
        total = 0
        for face in members:
            offsets[face] = total
            total += sheaf.space(face, p).dim
        dims[q] = total

    boundaries: Dict[int, QMat] = {}
    for q in range(1, c.base.dim + 1):
        rows = [[QQ(0)] * dims[q] for _ in range(dims[q - 1])]
        for delta in by_dim[q]:
            for cover in c.covers_below(delta):
                gamma = cover.face
                if gamma not in chosen:
                    continue
                block = sheaf.map(gamma, delta, p)
                s = c.sign(gamma, delta)
                r0, c0 = offsets[gamma], offsets[delta]
                for i, row in enumerate(block.rows):
                    for j, x in enumerate(row):
                        if x:
                            rows[r0 + i][c0 + j] += s * x
        boundaries[q] = QMat(rows, (dims[q - 1], dims[q]))
    terms = {q: tuple(m) for q, m in by_dim.items()}
    return ChainComplex(theory, p, dims, boundaries, cochain, terms)


def build_complex(
    space: Space, theory: str, p: int, check: bool = True
) -> ChainComplex:
    """Cellular complex of a space for one coefficient degree."""
    c, faces, tag = _faces_for(space, theory)
    complex_ = assemble(c, faces, p, tag, cochain=theory in COCHAIN_THEORIES)
    if check and not complex_.is_complex():
        raise ComplexError(f"Boundary does not square to zero in {complex_}")
    logger.debug(f"Built {complex_}")
    return complex_


def _space_label(space: Space) -> str:
    if isinstance(space, Fan):
        return "fan"
    if isinstance(space, FaceSubset):
        return "open:" + ",".join(str(s) for s in sorted(space.seds))
    return "compactification"


def _grid_from(
    build: Callable[[int], ChainComplex], top: int, threads: int
) -> List[ChainComplex]:
    if threads > 1 and top > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(build, range(top + 1)))
    return [build(p) for p in range(top + 1)]


def homology_dims(
    space: Space,
    theory: str,
    threads: int = 1,
    keep_representatives: bool = False,
    p: Optional[int] = None,
) -> HomologyTable:
    """dims[p][q] of the chosen theory for 0 <= p, q <= d.

    With ``p`` given only that coefficient degree is computed.
    """
    c, faces, tag = _faces_for(space, theory)
    d = c.base.dim
    cochain = theory in COCHAIN_THEORIES

    def build(degree: int) -> ChainComplex:
        return assemble(c, faces, degree, tag, cochain=cochain)

    if p is None:
        complexes = _grid_from(build, d, threads)
    elif 0 <= p <= d:
        complexes = [build(p)]
    else:
        raise ComplexError(f"Coefficient degree {p} is outside 0..{d}")
    dims = []
    reps: Dict[str, List[List[str]]] = {}
    for cx in complexes:
        if not cx.is_complex():
            raise ComplexError(f"Boundary does not square to zero in {cx}")
        dims.append([cx.homology_dim(q) for q in range(d + 1)])
        if keep_representatives:
            for q in range(d + 1):
                basis = cx.representatives(q)
                if basis.ncols:
                    reps[f"{cx.p},{q}"] = [
                        [str(x) for x in col] for col in basis.columns()
                    ]
    logger.info(f"{tag} dims on {_space_label(space)}: {dims}")
    return HomologyTable(
        theory=tag,
        space=_space_label(space),
        cohomology=cochain,
        p=p,
        dims=dims,
        representatives=reps if keep_representatives else None,
    )


def table_from_complexes(
    complexes: Sequence[ChainComplex], top: int
) -> List[List[int]]:
    return [[cx.homology_dim(q) for q in range(top + 1)] for cx in complexes]


# --- relative homology and mapping cones ----------------------------------------


class Subfan(NamedTuple):
    """A fan whose cones are cones of an ambient fan."""

    fan: Fan
    cone_map: Dict[int, int]


def subfan_of(f: Fan, cones: Iterable[int]) -> Optional[Subfan]:
    """The subfan on a face-closed set of cones of f; ``None`` when empty."""
    chosen = sorted(set(cones))
    if not chosen:
        return None
    for cone in chosen:
        if cone < 0 or cone >= len(f.cones):
            raise SubfanError(f"{cone} is not a cone id")
        missing = [t for t in f.faces(cone) if t not in chosen]
        if missing:
            raise SubfanError(
                f"Cone {list(f.cones[cone].rays)} has faces outside the subfan"
            )
    used = sorted({r for cone in chosen for r in f.cones[cone].rays})
    renumber = {r: i for i, r in enumerate(used)}
    sub = validate(
        f.ambient_rank,
        [f.rays[r] for r in used],
        [[renumber[r] for r in f.cones[c].rays] for c in chosen if c != f.zero],
        max_ambient_rank=f.ambient_rank,
    )
    cone_map = {sub.cone_id(renumber[r] for r in f.cones[c].rays): c for c in chosen}
    return Subfan(sub, cone_map)


def _check_subfan(f: Fan, delta: Subfan) -> None:
    for sub_id, cone in delta.cone_map.items():
        sub_rays = sorted(delta.fan.rays[r] for r in delta.fan.cones[sub_id].rays)
        rays = sorted(f.rays[r] for r in f.cones[cone].rays)
        if sub_rays != rays:
            raise SubfanError(
                f"Cone {list(delta.fan.cones[sub_id].rays)} of the subfan does not "
                f"match cone {list(f.cones[cone].rays)}"
            )
    if len(delta.cone_map) != len(delta.fan.cones):
        raise SubfanError("Every cone of the subfan needs a counterpart")


def _orientation_factor(nu_sub: Sequence[int], nu: Sequence[int]) -> int:
    for a, b in zip(nu_sub, nu):
        if a != 0:
            return sign(a) * sign(b)
    return 1


def inclusion_map(f: Fan, delta: Subfan, p: int) -> ChainMap:
    """C^BM_p(Δ) -> C^BM_p(Σ) with orientation factors ±1 per face."""
    _check_subfan(f, delta)
    big_c = compactify(f, sed_zero_only=True)
    small_c = compactify(delta.fan, sed_zero_only=True)
    big = assemble(big_c, [x.id for x in big_c.faces], p, "borel_moore")
    small = assemble(small_c, [x.id for x in small_c.faces], p, "borel_moore")
    big_sheaf, small_sheaf = sheaf_for(big_c), sheaf_for(small_c)

    maps: Dict[int, QMat] = {}
    for q in range(f.dim + 1):
        rows = [[QQ(0)] * small.dim(q) for _ in range(big.dim(q))]
        big_offsets = term_offsets(big_sheaf, big.terms.get(q, ()), p)
        col = 0
        for face in small.terms.get(q, ()):
            cone = delta.cone_map[small_c.faces[face].top]
            target = big_c.face(f.zero, cone)
            eps = _orientation_factor(
                canonical_multivector(small_c, face), canonical_multivector(big_c, target)
            )
            source_space = small_sheaf.space(face, p)
            coords = big_sheaf.space(target, p).echelon.coordinate_matrix(
                source_space.basis
            )
            r0 = big_offsets[target]
            for j in range(coords.ncols):
                for i in range(coords.nrows):
                    rows[r0 + i][col + j] = eps * coords.rows[i][j]
            col += source_space.dim
        maps[q] = QMat(rows, (big.dim(q), small.dim(q)))
    chain_map = ChainMap(small, big, maps)
    if not chain_map.is_chain_map():
        raise ComplexError("Inclusion of the subfan is not a chain map")
    return chain_map


def term_offsets(sheaf: Sheaf, faces: Sequence[int], p: int) -> Dict[int, int]:
    out, total = {}, 0
    for face in faces:
        out[face] = total
        total += sheaf.space(face, p).dim
    return out


def quotient_complex(
    cx: ChainComplex, images: Dict[int, QMat], theory: str
) -> ChainComplex:
    """The quotient of a complex by a subcomplex given by its image columns."""
    sections: Dict[int, QMat] = {}
    quotients: Dict[int, QMat] = {}
    dims: Dict[int, int] = {}
    for q in cx.degrees:
        size = cx.dim(q)
        image = images.get(q, QMat.zeros(size, 0))
        ech = column_echelon(image)
        pivots = list(ech.pivots)
        free = [i for i in range(size) if i not in ech.pivots]
        Q = [[QQ(0)] * size for _ in free]
        for i, row in enumerate(free):
            Q[i][row] = QQ(1)
            for j, pivot in enumerate(pivots):
                Q[i][pivot] = -ech.basis.rows[row][j]
        S = [[QQ(0)] * len(free) for _ in range(size)]
        for i, row in enumerate(free):
            S[row][i] = QQ(1)
        quotients[q] = QMat(Q, (len(free), size))
        sections[q] = QMat(S, (size, len(free)))
        dims[q] = len(free)
    boundaries = {
        q: quotients[q - 1] @ cx.boundary(q) @ sections[q]
        for q in cx.degrees
        if q - 1 in quotients
    }
    return ChainComplex(theory, cx.p, dims, boundaries)


def relative_complex(f: Fan, delta: Optional[Subfan], p: int) -> ChainComplex:
    """C^BM_p(Σ, Δ): the cokernel of C^BM_p(Δ) -> C^BM_p(Σ)."""
    if delta is None:
        cx = build_complex(f, "borel_moore", p)
        return ChainComplex("relative", p, cx.dims, cx.boundaries)
    phi = inclusion_map(f, delta, p)
    result = quotient_complex(phi.target, phi.maps, "relative")
    if not result.is_complex():
        raise ComplexError("Relative boundary does not square to zero")
    return result


def mapping_cone(phi: ChainMap) -> ChainComplex:
    """Cone_k = C_{k-1} ⊕ D_k with ∂(a, b) = (−∂a, φa + ∂b)."""
    if not phi.is_chain_map():
        raise ComplexError("Mapping cone needs a chain map")
    C, D = phi.source, phi.target
    top = max(C.degrees + D.degrees, default=0) + 1
    dims = {k: C.dim(k - 1) + D.dim(k) for k in range(top + 1)}
    boundaries = {}
    for k in range(1, top + 1):
        upper = (-C.boundary(k - 1)).hstack(QMat.zeros(C.dim(k - 2), D.dim(k)))
        lower = phi.at(k - 1).hstack(D.boundary(k))
        boundaries[k] = upper.vstack(lower)
    cone = ChainComplex("mapping_cone", C.p, dims, boundaries)
    if not cone.is_complex():
        raise ComplexError("Mapping cone boundary does not square to zero")
    return cone


def identity_map(cx: ChainComplex) -> ChainMap:
    return ChainMap(cx, cx, {q: QMat.identity(cx.dim(q)) for q in cx.degrees})


# --- fundamental class, cap map and duality -------------------------------------


class FundamentalCycle(NamedTuple):
    vector: Tuple
    boundary: Tuple
    closed: bool


def _facet_faces(c: ExtComplex) -> List[Tuple[int, int]]:
    f = c.base
    return [(facet, c.face(f.zero, facet)) for facet in f.facets]


def fundamental_cycle(f: Fan, w: Orientation) -> FundamentalCycle:
    """ν_Σ = (ω(σ)ν_σ) in C^BM_{d,d} and its boundary."""
    c = compactify(f, sed_zero_only=True)
    cx = assemble(c, [x.id for x in c.faces], f.dim, "borel_moore")
    sheaf = sheaf_for(c)
    vector = []
    for facet, face in _facet_faces(c):
        nu = canonical_multivector(c, face)
        coords = sheaf.space(face, f.dim).coordinates(nu)
        vector.extend(w[facet] * x for x in coords)
    column = QMat.from_columns([vector], cx.dim(f.dim))
    boundary = cx.boundary(f.dim) @ column
    return FundamentalCycle(tuple(vector), boundary.column(0), boundary.is_zero())


class CapData(NamedTuple):
    rank: CapRank
    matrix: QMat
    cycles: QMat


def cap_degree0(
    f: Fan, w: Orientation, p: int, complex_: Optional[ExtComplex] = None
) -> CapData:
    """The map F^p(0) -> H^BM_{d-p,d}(Σ), α ↦ ι_α(ν_Σ)."""
    c = complex_ or compactify(f, sed_zero_only=True)
    d, n = f.dim, f.ambient_rank
    sheaf = sheaf_for(c)
    source = sheaf.space(c.face(f.zero, f.zero), p)
    cx = assemble(c, [x.id for x in c.faces], d - p, "borel_moore")
    facets = _facet_faces(c)

    columns = []
    for j in range(source.dim):
        alpha = source.multiform([1 if i == j else 0 for i in range(source.dim)])
        column: List = []
        for facet, face in facets:
            nu = [w[facet] * x for x in canonical_multivector(c, face)]
            image = contract(alpha, p, nu, d, n)
            column.extend(sheaf.space(face, d - p).coordinates(image))
        columns.append(column)
    matrix = QMat.from_columns(columns, cx.dim(d))
    if not (cx.boundary(d) @ matrix).is_zero():
        raise ComplexError("Cap product image does not consist of cycles")
    cycles = kernel(cx.boundary(d))
    rank = matrix.rank()
    report = CapRank(
        p=p,
        source_dim=source.dim,
        target_dim=cycles.ncols,
        rank=rank,
        injective=rank == source.dim,
        surjective=rank == cycles.ncols,
    )
    if not report.injective:
        logger.warning(f"Cap map is not injective in degree {p}")
    return CapData(report, matrix, cycles)


def pd_check(f: Fan, w: Orientation, threads: int = 1) -> PDReport:
    """Poincaré duality: BM vanishing off degree d and bijective degree-0 caps."""
    d = f.dim
    table = homology_dims(f, "borel_moore", threads=threads).dims
    nonvanishing = [
        [p, q] for p in range(d + 1) for q in range(d + 1) if q != d and table[p][q]
    ]
    c = compactify(f, sed_zero_only=True)
    caps = [cap_degree0(f, w, p, c).rank for p in range(d + 1)]
    passed = not nonvanishing and all(cap.injective and cap.surjective for cap in caps)
    logger.debug(f"PD on {f}: {'pass' if passed else 'fail'}")
    return PDReport(
        dim=d,
        borel_moore=table,
        vanishing=not nonvanishing,
        nonvanishing=nonvanishing,
        cap=caps,
        passed=passed,
    )


def _pd_detail(report: PDReport) -> str:
    if not report.vanishing:
        return f"H^BM nonzero at {report.nonvanishing}"
    bad = [cap.p for cap in report.cap if not (cap.injective and cap.surjective)]
    return f"cap map not bijective for p in {bad}"


def _aksnes_verdict(star: Fan, codim_one: bool) -> Tuple[bool, Optional[str]]:
    top = star.dim
    table = homology_dims(star, "borel_moore").dims
    bad = [
        [p, q] for p in range(top + 1) for q in range(top + 1) if q != top and table[p][q]
    ]
    if bad:
        return False, f"H^BM nonzero at {bad}"
    if codim_one:
        rank = QMat.from_columns(star.rays, star.ambient_rank).rank()
        if rank != len(star.rays) - 1:
            return False, f"{len(star.rays)} rays of rank {rank}"
    return True, None


def smooth_check(f: Fan, w: Orientation, criterion: str = "local") -> SmoothReport:
    """Homological smoothness through the star fans of every cone.

    ``local`` asks for Poincaré duality on every star fan. ``aksnes`` asks
    for a single relation among the rays of each codimension-one star and
    for Borel-Moore homology concentrated in top degree on every star.
    """
    if criterion not in ("local", "aksnes"):
        raise ComplexError(f"Unknown smoothness criterion '{criterion}'")
    verdicts = []
    weights = w.by_rays()
    for cone in f.cones:
        data = star_fan(f, cone.id, weights)
        if criterion == "local":
            report = pd_check(data.star, star_orientation(data))  # type: ignore[arg-type]
            passed = report.passed
            detail = None if passed else _pd_detail(report)
        else:
            passed, detail = _aksnes_verdict(data.star, cone.dim == f.dim - 1)
        verdicts.append(StarVerdict(cone=list(cone.rays), passed=passed, detail=detail))
    return SmoothReport(
        criterion=criterion,  # type: ignore[arg-type]
        stars=verdicts,
        passed=all(v.passed for v in verdicts),
    )


# --- checks built on the theories above ------------------------------------------


def _item(name: str, expected: object, actual: object) -> CheckItem:
    return CheckItem(
        name=name, expected=str(expected), actual=str(actual), passed=expected == actual
    )


def _divisor_subfan(f: Fan, w: Orientation, fn: PLFunction) -> Optional[Subfan]:
    div = divisor(f, w, fn)
    if div.is_empty:
        return None
    return Subfan(div.support, div.cone_map)  # type: ignore[arg-type]


def _fdim(sheaf: Sheaf, cone: int, p: int) -> int:
    if p < 0:
        return 0
    return sheaf.space(sheaf.complex.face(0, cone), p).dim


def verify_tm_coefficients(f: Fan, w: Orientation, fn: PLFunction) -> CheckReport:
    """Local modification formula for the coefficient spaces."""
    hypothesis = pd_check(f, w).passed
    if not hypothesis:
        logger.warning("Base fan fails Poincaré duality; checking the formula anyway")
    mod = tropical_modification(f, w, fn)
    d = f.dim
    base = sheaf_for(compactify(f, sed_zero_only=True))
    total = sheaf_for(compactify(mod.total, sed_zero_only=True))
    sub = _divisor_subfan(f, w, fn)
    in_divisor = {} if sub is None else {v: k for k, v in sub.cone_map.items()}
    checks: List[CheckItem] = []

    for cone in f.cones:
        if cone.id in in_divisor:
            continue
        graph = mod.graph_cone(cone.id)
        for p in range(d + 1):
            checks.append(
                _item(
                    f"dim F_{p} of graph cone over {list(cone.rays)}",
                    _fdim(base, cone.id, p),
                    _fdim(total, graph, p),
                )
            )

    if sub is not None:
        div = sheaf_for(compactify(sub.fan, sed_zero_only=True))
        for base_cone, sub_cone in sorted(in_divisor.items()):
            rays = list(f.cones[base_cone].rays)
            up, graph = mod.up_cone(base_cone), mod.graph_cone(base_cone)
            for p in range(d + 1):
                lower = _fdim(div, sub_cone, p - 1)
                checks.append(
                    _item(
                        f"dim F_{p} of up cone over {rays}",
                        lower + _fdim(div, sub_cone, p),
                        _fdim(total, up, p),
                    )
                )
                checks.append(
                    _item(
                        f"dim F_{p} of graph cone over {rays}",
                        lower + _fdim(base, base_cone, p),
                        _fdim(total, graph, p),
                    )
                )
                if p == 0:
                    continue
                checks.extend(
                    _split_checks(
                        mod,
                        rays,
                        p,
                        div.space(div.complex.face(0, sub_cone), p - 1),
                        (
                            total.space(total.complex.face(0, up), p),
                            div.space(div.complex.face(0, sub_cone), p),
                        ),
                        (
                            total.space(total.complex.face(0, graph), p),
                            base.space(base.complex.face(0, base_cone), p),
                        ),
                    )
                )
    return CheckReport(
        title="Local tropical modification formula",
        hypothesis=hypothesis,
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def _split_checks(
    mod: ModificationData,
    rays: List[int],
    p: int,
    lower: CoeffBasis,
    up: Tuple[CoeffBasis, CoeffBasis],
    graph: Tuple[CoeffBasis, CoeffBasis],
) -> List[CheckItem]:
    """The maps v ↦ e ∧ (v, 0) and pr_* around the up and graph cones.

    ``up`` and ``graph`` pair the coefficient space of the cone in the
    modification with the space its projection should land onto.
    """
    n = mod.base.ambient_rank
    big = {s: i for i, s in enumerate(wedge_index(n + 1, p))}
    # e ∧ e_I = ± e_{I ∪ {n}}; the sign does not affect rank or containment
    lifted = []
    for col in lower.basis.columns():
        v = [QQ(0)] * len(big)
        for subset, x in zip(wedge_index(n, p - 1), col):
            v[big[subset + (n,)]] = x
        lifted.append(v)
    lifted_m = QMat.from_columns(lifted, len(big))
    pr = exterior_power(mod.proj_map, p)
    items = [
        _item(f"e ∧ F_{p - 1}(Δ) injective over {rays}", lower.dim, lifted_m.rank()),
        _item(f"pr kills e ∧ F_{p - 1}(Δ) over {rays}", True, (pr @ lifted_m).is_zero()),
    ]
    for name, (space, target) in (("up", up), ("graph", graph)):
        items.append(
            _item(
                f"e ∧ F_{p - 1}(Δ) inside F_{p} of the {name} cone over {rays}",
                True,
                all(space.echelon.contains(v) for v in lifted),
            )
        )
        image = pr @ space.basis
        inside = all(target.echelon.contains(col) for col in image.columns())
        items.append(
            _item(
                f"pr maps F_{p} of the {name} cone over {rays} onto its target",
                (True, target.dim),
                (inside, image.rank()),
            )
        )
    return items


def verify_tm_homology(f: Fan, w: Orientation, fn: PLFunction) -> CheckReport:
    """Homology of a modification against the base fan and the divisor."""
    hypothesis = pd_check(f, w).passed
    if not hypothesis:
        logger.warning("Base fan fails Poincaré duality; checking the equalities anyway")
    mod = tropical_modification(f, w, fn)
    sub = _divisor_subfan(f, w, fn)
    d = f.dim
    checks: List[CheckItem] = []

    total_bm = homology_dims(mod.total, "borel_moore").dims
    relative = [relative_complex(f, sub, p) for p in range(d + 1)]
    relative_bm = table_from_complexes(relative, d)
    checks.append(
        _item("H^BM of the modification vs H^BM(Σ, Δ)", relative_bm, total_bm)
    )
    total_c = homology_dims(mod.total, "compact_support").dims
    relative_c = table_from_complexes([r.transpose() for r in relative], d)
    checks.append(_item("H_c of the modification vs H_c(Σ, Δ)", relative_c, total_c))
    if sub is not None:
        cones = [mapping_cone(inclusion_map(f, sub, p)) for p in range(d + 1)]
        cone_dims = table_from_complexes(cones, d)
        checks.append(_item("mapping cone vs relative complex", relative_bm, cone_dims))

    total_bar = compactify(mod.total)
    seds = [mod.total.zero]
    if mod.special_ray is not None:
        seds.append(mod.total.cone_id((mod.special_ray,)))
    semi_open = homology_dims(open_subcomplex(total_bar, seds), "borel_moore").dims
    base_bm = homology_dims(f, "borel_moore").dims
    checks.append(
        _item("H^BM of the semi-open modification vs H^BM(Σ)", base_bm, semi_open)
    )

    checks.append(
        _item(
            "H of the compactified modification vs H of the compactified base",
            homology_dims(compactify(f), "cohomology").dims,
            homology_dims(total_bar, "cohomology").dims,
        )
    )
    return CheckReport(
        title="Homology of tropical modifications",
        hypothesis=hypothesis,
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def modification_smoothness(f: Fan, w: Orientation, fn: PLFunction) -> CheckReport:
    """Smoothness of a fan, its divisor and the modification along it."""
    mod = tropical_modification(f, w, fn)
    base = smooth_check(f, w).passed
    div = mod.divisor
    if div.is_empty:
        divisor_smooth = True
    else:
        divisor_smooth = smooth_check(
            div.support, div.weights  # type: ignore[arg-type]
        ).passed
    total = smooth_check(mod.total, mod.weights).passed
    checks = [
        CheckItem(name="base smooth", expected="-", actual=str(base), passed=True),
        CheckItem(
            name="divisor smooth", expected="-", actual=str(divisor_smooth), passed=True
        ),
    ]
    hypothesis = base and divisor_smooth
    checks.append(
        CheckItem(
            name="modification smooth",
            expected="True" if hypothesis else "-",
            actual=str(total),
            passed=total or not hypothesis,
        )
    )
    return CheckReport(
        title="Smoothness under tropical modification",
        hypothesis=hypothesis,
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def compactification_duality(f: Fan, threads: int = 1) -> CheckReport:
    """dim H^{p,q}(Σ̄) = dim H_{d-p,d-q}(Σ̄) for all (p, q)."""
    bar = compactify(f)
    d = f.dim
    coh = homology_dims(bar, "cohomology", threads=threads).dims
    hom = homology_dims(bar, "ordinary", threads=threads).dims
    checks = [
        _item(f"H^{{{p},{q}}} vs H_{{{d - p},{d - q}}}", coh[p][q], hom[d - p][d - q])
        for p in range(d + 1)
        for q in range(d + 1)
    ]
    return CheckReport(
        title="Poincaré duality of the compactification",
        checks=checks,
        passed=all(c.passed for c in checks),
    )


def kunneth_check(f1: Fan, f2: Fan) -> CheckReport:
    """BM dimensions of a product fan against the convolution of the factors."""
    prod = product(f1, f2)
    a = homology_dims(f1, "borel_moore").dims
    b = homology_dims(f2, "borel_moore").dims
    top = prod.dim
    expected = [[0] * (top + 1) for _ in range(top + 1)]
    for p1, row1 in enumerate(a):
        for q1, x in enumerate(row1):
            for p2, row2 in enumerate(b):
                for q2, y in enumerate(row2):
                    expected[p1 + p2][q1 + q2] += x * y
    actual = homology_dims(prod, "borel_moore").dims
    return CheckReport(
        title="Künneth formula for Borel-Moore homology",
        checks=[_item("H^BM of the product", expected, actual)],
        passed=expected == actual,
    )

