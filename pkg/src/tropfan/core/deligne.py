"""The cellular Deligne double complex and the sequences it produces.

For a coefficient degree k the double complex has columns

    E^{-1,b} = C_c^{k,b}(Σ),    E^{a,b} = ⊕_{σ ∈ Σ_a} C^{k,b}(Σ̄^σ)  (a >= 0),

where Σ̄^σ is realized inside Σ̄ as the faces of sedentarity containing σ.
Horizontal maps copy the coefficient of a face into every summand it belongs
to, signed by the cover signs of the fan; vertical maps are the tropical
cochain differentials.
"""

import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from sympy import QQ

from ..exceptions import ComplexError, NonSimplicialError
from ..models import (
    CheckItem,
    CheckReport,
    DeligneReport,
    RowExactnessReport,
    RowReport,
)
from .compact import ExtComplex, compactify, star_subposet
from .exactla import QMat, solve_matrix
from .fan import Fan
from .homology import (
    ChainComplex,
    assemble,
    cap_degree0,
    homology_dims,
    term_offsets,
)
from .sheaf import sheaf_for
from .weights import Orientation, check_balancing

logger = logging.getLogger(__name__)

# summand label of the a = -1 column
FAN = -1


class Column(NamedTuple):
    """One column of the double complex: a direct sum of cochain complexes."""

    a: int
    summands: Tuple[int, ...]
    complexes: Tuple[ChainComplex, ...]

    def dim(self, b: int) -> int:
        return sum(cx.dim(b) for cx in self.complexes)

    def differential(self, b: int) -> QMat:
        """The vertical map E^{a,b} -> E^{a,b+1}, block diagonal."""
        return _block_diagonal([cx.differential(b) for cx in self.complexes])


def _block_diagonal(blocks: Sequence[QMat]) -> QMat:
    nrows = sum(m.nrows for m in blocks)
    ncols = sum(m.ncols for m in blocks)
    rows = [[QQ(0)] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for m in blocks:
        for i, row in enumerate(m.rows):
            rows[r0 + i][c0 : c0 + m.ncols] = row
        r0, c0 = r0 + m.nrows, c0 + m.ncols
    return QMat(rows, (nrows, ncols))


class DoubleComplex(NamedTuple):
    k: int
    complex: ExtComplex
    columns: Dict[int, Column]
    horizontal: Dict[Tuple[int, int], QMat]

    @property
    def top(self) -> int:
        return max(self.columns)

    @property
    def dim(self) -> int:
        return self.complex.base.dim

    def entry_dim(self, a: int, b: int) -> int:
        column = self.columns.get(a)
        return column.dim(b) if column is not None else 0

    def h(self, a: int, b: int) -> QMat:
        """The horizontal map E^{a,b} -> E^{a+1,b}."""
        if (a, b) in self.horizontal:
            return self.horizontal[(a, b)]
        return QMat.zeros(self.entry_dim(a + 1, b), self.entry_dim(a, b))

    def d_h_squares_to_zero(self) -> bool:
        return all(
            (self.h(a + 1, b) @ self.h(a, b)).is_zero()
            for a in range(-1, self.top - 1)
            for b in range(self.dim + 1)
        )

    def commutes(self) -> bool:
        """h ∘ d_v = d_v ∘ h in every square."""
        return all(
            self.h(a, b + 1) @ self.columns[a].differential(b)
            == self.columns[a + 1].differential(b) @ self.h(a, b)
            for a in range(-1, self.top)
            for b in range(self.dim)
        )


def _column(c: ExtComplex, a: int, summands: Sequence[int], k: int) -> Column:
    complexes = []
    for sigma in summands:
        if sigma == FAN:
            faces: Sequence[int] = c.faces_with_sed(c.base.zero)
            theory = "compact_support"
        else:
            faces = star_subposet(c, sigma)
            theory = "cohomology"
        complexes.append(assemble(c, faces, k, theory, cochain=True))
    return Column(a, tuple(summands), tuple(complexes))


def _edge_sign(c: ExtComplex, sigma: int, target: int) -> int:
    if sigma == FAN:
        return 1
    zero = c.base.zero
    return c.sign(c.face(zero, sigma), c.face(zero, target))


def _horizontal(
    c: ExtComplex, source: Column, target: Column, b: int, k: int
) -> QMat:
    sheaf = sheaf_for(c)
    base = c.base
    rows = [[QQ(0)] * source.dim(b) for _ in range(target.dim(b))]
    col_start = 0
    for sigma, cx in zip(source.summands, source.complexes):
        faces = cx.terms.get(b, ())
        cols = term_offsets(sheaf, faces, k)
        row_start = 0
        for tau, tcx in zip(target.summands, target.complexes):
            tfaces = tcx.terms.get(b, ())
            if sigma == FAN or base.is_face(sigma, tau):
                eps = _edge_sign(c, sigma, tau)
                trows = term_offsets(sheaf, tfaces, k)
                for face in tfaces:
                    if face not in cols:
                        continue
                    r0 = row_start + trows[face]
                    c0 = col_start + cols[face]
                    for i in range(sheaf.space(face, k).dim):
                        rows[r0 + i][c0 + i] = QQ(eps)
            row_start += tcx.dim(b)
        col_start += cx.dim(b)
    return QMat(rows, (target.dim(b), source.dim(b)))


def build_double_complex(
    f: Fan,
    w: Optional[Orientation],
    k: int,
    complex_: Optional[ExtComplex] = None,
    check: bool = True,
) -> DoubleComplex:
    """Assemble the rows E^{•,b}, b = 0..d, for coefficient degree k.

    ``complex_`` replaces the compactification of ``f``, which lets a caller
    feed in a complex with a corrupted sign table.
    """
    if not f.is_simplicial:
        raise NonSimplicialError("The Deligne complex is only built for simplicial fans")
    if k < 0:
        raise ComplexError(f"Coefficient degree {k} is negative")
    if w is not None and not check_balancing(f, w).balanced:
        logger.warning("Fan is not balanced; building the double complex anyway")
    c = complex_ or compactify(f)
    top = max(f.dim - k, -1)
    columns = {-1: _column(c, -1, (FAN,), k)}
    for a in range(top + 1):
        columns[a] = _column(c, a, f.cones_of_dim(a), k)
    horizontal = {
        (a, b): _horizontal(c, columns[a], columns[a + 1], b, k)
        for a in range(-1, top)
        for b in range(f.dim + 1)
    }
    dc = DoubleComplex(k, c, columns, horizontal)
    if check:
        if not dc.d_h_squares_to_zero():
            raise ComplexError("Horizontal differential does not square to zero")
        if not dc.commutes():
            raise ComplexError("Horizontal and vertical differentials do not commute")
    logger.debug(f"Double complex k={k}: columns -1..{top}")
    return dc


def _exactness(dims: List[int], maps: List[QMat]) -> List[bool]:
    """Exactness of 0 -> V_0 -> V_1 -> ... -> V_n -> 0 at every position."""
    ranks = [m.rank() for m in maps]
    result = []
    for i, size in enumerate(dims):
        incoming = ranks[i - 1] if i > 0 else 0
        outgoing = ranks[i] if i < len(ranks) else 0
        composable = 0 < i < len(maps)
        closed = not composable or (maps[i] @ maps[i - 1]).is_zero()
        result.append(closed and size == incoming + outgoing)
    return result


def row_exactness_check(dc: DoubleComplex) -> RowExactnessReport:
    """Exactness of every row E^{-1,b} -> E^{0,b} -> ... -> 0."""
    rows = []
    for b in range(dc.dim + 1):
        degrees = range(-1, dc.top + 1)
        dims = [dc.entry_dim(a, b) for a in degrees]
        maps = [dc.h(a, b) for a in range(-1, dc.top)]
        exact_at = _exactness(dims, maps)
        rows.append(RowReport(b=b, dims=dims, exact_at=exact_at, exact=all(exact_at)))
    passed = all(r.exact for r in rows)
    if not passed:
        logger.warning(f"Double complex rows are not exact for k={dc.k}")
    return RowExactnessReport(k=dc.k, rows=rows, passed=passed)


class VerticalCohomology(NamedTuple):
    """Cocycle representatives completing the coboundaries of one column entry."""

    coboundaries: QMat
    representatives: QMat

    @property
    def dim(self) -> int:
        return self.representatives.ncols

    def classes(self, cocycles: QMat) -> QMat:
        """Coordinates of the classes of cocycles in the representative basis."""
        basis = self.coboundaries.hstack(self.representatives)
        coords = solve_matrix(basis, cocycles)
        if coords is None:
            raise ComplexError("Image of a cocycle is not a cocycle")
        skip = self.coboundaries.ncols
        return coords.select(rows=range(skip, skip + self.dim))


def _vertical(column: Column, b: int) -> VerticalCohomology:
    reps, bounds = [], []
    for cx in column.complexes:
        reps.append(cx.representatives(b))
        bounds.append(cx.boundaries_of(b))
    return VerticalCohomology(_block_diagonal(bounds), _block_diagonal(reps))


class E1Page(NamedTuple):
    """Vertical cohomology of the a >= 0 columns and the induced maps on row k."""

    k: int
    dims: List[List[int]]
    row_maps: Dict[int, QMat]

    def row(self, b: int) -> List[int]:
        return [column[b] for column in self.dims]

    def e2_row(self) -> List[int]:
        """Cohomology of the row b = k complex of the first page."""
        dims = self.row(self.k) if self.dims else []
        out = []
        for a, size in enumerate(dims):
            incoming = self.row_maps[a - 1].rank() if a > 0 else 0
            outgoing = self.row_maps[a].rank() if a in self.row_maps else 0
            out.append(size - incoming - outgoing)
        return out

    def cokernel_dim(self) -> int:
        """dim coker(E_1^{top-1,k} -> E_1^{top,k})."""
        dims = self.row(self.k)
        if not dims:
            return 0
        last = len(dims) - 1
        incoming = self.row_maps[last - 1].rank() if last > 0 else 0
        return dims[last] - incoming


def e1_page(dc: DoubleComplex) -> E1Page:
    """E_1^{a,b} = ⊕_{σ∈Σ_a} H^{k,b}(Σ̄^σ) and the maps of its row b = k."""
    d = dc.dim
    columns = [dc.columns[a] for a in range(dc.top + 1)]
    dims = [
        [sum(cx.homology_dim(b) for cx in col.complexes) for b in range(d + 1)]
        for col in columns
    ]
    row_maps: Dict[int, QMat] = {}
    if dc.k <= d:
        b = dc.k
        vertical = [_vertical(col, b) for col in columns]
        for a in range(len(columns) - 1):
            image = dc.h(a, b) @ vertical[a].representatives
            row_maps[a] = vertical[a + 1].classes(image)
    for a, column in enumerate(dims):
        if any(column[b] for b in range(dc.k + 1, d + 1)):
            logger.warning(f"E_1^{{{a},b}} is nonzero above b = {dc.k}")
    return E1Page(dc.k, dims, row_maps)


def _total_blocks(dc: DoubleComplex, n: int) -> List[Tuple[int, int]]:
    """Entries (a, b) of the a >= 0 columns with a + b = n."""
    return [(a, n - a) for a in range(dc.top + 1) if 0 <= n - a <= dc.dim]


def _total_dim(dc: DoubleComplex, n: int) -> int:
    return sum(dc.entry_dim(a, b) for a, b in _total_blocks(dc, n))


def _total_differential(dc: DoubleComplex, n: int) -> QMat:
    """D = d_h + (-1)^a d_v from total degree n to n + 1."""
    source, target = _total_blocks(dc, n), _total_blocks(dc, n + 1)
    if not source or not target:
        return QMat.zeros(_total_dim(dc, n + 1), _total_dim(dc, n))
    rows: List[QMat] = []
    for ta, tb in target:
        parts = []
        for sa, sb in source:
            if (ta, tb) == (sa + 1, sb):
                parts.append(dc.h(sa, sb))
            elif (ta, tb) == (sa, sb + 1):
                parts.append(dc.columns[sa].differential(sb).scale((-1) ** sa))
            else:
                parts.append(QMat.zeros(dc.entry_dim(ta, tb), dc.entry_dim(sa, sb)))
        rows.append(parts[0].hstack(*parts[1:]))
    return rows[0].vstack(*rows[1:])


def hypercohomology_dims(dc: DoubleComplex) -> List[int]:
    """Cohomology of the total complex of the a >= 0 columns, per total degree."""
    degrees = range(dc.top + dc.dim + 1)
    dims = {n: _total_dim(dc, n) for n in degrees}
    boundaries = {n + 1: _total_differential(dc, n).T for n in degrees}
    total = ChainComplex("hypercohomology", dc.k, dims, boundaries, cochain=True)
    if not total.is_complex():
        raise ComplexError("Total differential does not square to zero")
    return [total.homology_dim(n) for n in degrees]


def _placed(dc: DoubleComplex, n: int, a: int, block: QMat) -> QMat:
    """Columns of E^{a,n-a} written in the coordinates of total degree n."""
    parts = [
        block if ta == a else QMat.zeros(dc.entry_dim(ta, tb), block.ncols)
        for ta, tb in _total_blocks(dc, n)
    ]
    return parts[0].vstack(*parts[1:])


def edge_lifts(dc: DoubleComplex) -> Optional[QMat]:
    """Compact-support cochains representing the top classes of E_1 row k.

    A cocycle x in E^{d-k,k} is a cocycle of the total complex. Since the
    rows are exact, x = ι(y) + D z with y in C_c^{k,d}(Σ) and ι the horizontal
    map out of the a = -1 column; the columns of the result are these y.
    ``None`` when no such y exists, which only happens for inexact rows.
    """
    d, k, top = dc.dim, dc.k, dc.top
    if top < 0:
        raise ComplexError(f"Coefficient degree {k} leaves no columns above the fan")
    reps = _vertical(dc.columns[top], k).representatives
    target = _placed(dc, d, top, reps)
    augmentation = _placed(dc, d, 0, dc.h(FAN, d))
    system = augmentation.hstack(_total_differential(dc, d - 1))
    solution = solve_matrix(system, target)
    if solution is None:
        logger.warning(f"Top row of the first page does not lift for k={k}")
        return None
    return solution.select(rows=range(dc.entry_dim(FAN, d)))


def _cap_pairing(f: Fan, w: Orientation, dc: DoubleComplex) -> QMat:
    """Transposed degree-0 cap map, read on the cochains C_c^{k,d}(Σ) of ``dc``.

    Row j evaluates a cochain on ι_{α_j}(ν_Σ), so the rows span the map
    H_c^{k,d}(Σ) -> F_{d-k}(0) dual to F^{d-k}(0) -> H^BM_{k,d}(Σ).
    """
    d, k = dc.dim, dc.k
    c0 = compactify(f, sed_zero_only=True)
    cap = cap_degree0(f, w, d - k, c0).matrix
    top_faces = sorted(x.id for x in c0.faces if x.dim == d)
    source = term_offsets(sheaf_for(c0), top_faces, k)
    c = dc.complex
    faces = dc.columns[FAN].complexes[0].terms.get(d, ())
    target = term_offsets(sheaf_for(c), faces, k)
    rows = [[QQ(0)] * cap.ncols for _ in range(dc.entry_dim(FAN, d))]
    for face in faces:
        face0 = c0.face(f.zero, c.faces[face].top)
        for i in range(sheaf_for(c).space(face, k).dim):
            rows[target[face] + i] = list(cap.rows[source[face0] + i])
    return QMat(rows, (len(rows), cap.ncols)).T


def _exact_between(incoming: QMat, outgoing: QMat, size: int) -> bool:
    """ker(outgoing) = im(incoming) on a space of dimension ``size``."""
    if not (outgoing @ incoming).is_zero():
        return False
    return incoming.rank() + outgoing.rank() == size


def _incoming_top(page: E1Page, top: int, size: int) -> QMat:
    if top > 0:
        return page.row_maps[top - 1]
    return QMat.zeros(size, 0)


def _star_even_dims(c: ExtComplex, sigma: int, degree: int) -> int:
    """dim H^{degree}(Σ̄^σ) = Σ_{p+q=degree} dim H^{p,q}(Σ̄^σ)."""
    faces = star_subposet(c, sigma)
    total = 0
    for p in range(degree + 1):
        q = degree - p
        if q > c.base.dim:
            continue
        total += assemble(c, faces, p, "cohomology", cochain=True).homology_dim(q)
    return total


def _f_dim(f: Fan, p: int) -> int:
    c = compactify(f, sed_zero_only=True)
    return sheaf_for(c).space(c.face(f.zero, f.zero), p).dim


def deligne_sequence(
    f: Fan, w: Orientation, p: int, mode: str = "euler"
) -> DeligneReport:
    """The sequence 0 -> F^p(0) -> ⊕_{Σ_p} H^0 -> ... -> H^{2p}(Σ̄) -> 0.

    ``euler`` lists its dimensions and alternating sum; a nonzero sum rules
    exactness out, a zero sum leaves it undecided. ``full`` runs the dual
    sequence for k = d - p through the first page of the double complex. Its
    last map is the edge map into H_c^{k,d}(Σ) followed by the transposed cap
    map, and exactness is read off ranks at every position.
    """
    if mode not in ("euler", "full"):
        raise ComplexError(f"Unknown mode '{mode}'")
    d = f.dim
    if p < 0 or p > d:
        raise ComplexError(f"p = {p} is outside 0..{d}")
    if not f.is_simplicial:
        raise NonSimplicialError("The Deligne sequence needs a simplicial fan")

    if mode == "euler":
        c = compactify(f)
        dims = [_f_dim(f, p)]
        for j in range(p + 1):
            dims.append(
                sum(_star_even_dims(c, sigma, 2 * j) for sigma in f.cones_of_dim(p - j))
            )
        euler = sum((-1) ** i * x for i, x in enumerate(dims))
        logger.info(f"Deligne dims for p={p}: {dims}, Euler characteristic {euler}")
        return DeligneReport(
            p=p,
            mode="euler",
            dims=dims,
            euler_characteristic=euler,
            passed=False if euler else None,
        )

    k = d - p
    dc = build_double_complex(f, w, k)
    page = e1_page(dc)
    row = page.row(k)
    final = _f_dim(f, p)
    compact = homology_dims(f, "compact_support", p=k).dims[0][d]
    dims = row + [final]
    exact_at = [x == 0 for x in page.e2_row()[:-1]]
    lifts = edge_lifts(dc)
    final_rank = None
    if lifts is None:
        exact_at += [False, False]
    else:
        last = _cap_pairing(f, w, dc) @ lifts
        final_rank = last.rank()
        incoming = _incoming_top(page, dc.top, row[-1])
        exact_at.append(_exact_between(incoming, last, row[-1]))
        exact_at.append(final_rank == final)
    euler = sum((-1) ** i * x for i, x in enumerate(dims))
    return DeligneReport(
        p=p,
        mode="full",
        dims=dims,
        euler_characteristic=euler,
        exact_at=exact_at,
        final_term=final,
        final_rank=final_rank,
        compact_support_dim=compact,
        passed=all(exact_at),
    )


def cokernel_check(f: Fan, w: Optional[Orientation], k: int) -> CheckReport:
    """⊕_{Σ_{d-k-1}} H^{k,k} -> ⊕_{Σ_{d-k}} H^{k,k} -> H_c^{k,d}(Σ) -> 0.

    Compares the cokernel dimension with H_c^{k,d}(Σ) and checks the edge
    map into H_c^{k,d}(Σ) for surjectivity and for kernel equal to image.
    """
    d = f.dim
    if k < 0 or k > d:
        raise ComplexError(f"k = {k} is outside 0..{d}")
    dc = build_double_complex(f, w, k)
    page = e1_page(dc)
    coker = page.cokernel_dim()
    compact = homology_dims(f, "compact_support", p=k).dims[0][d]
    checks = [
        CheckItem(
            name=f"dim coker vs dim H_c^{{{k},{d}}}",
            expected=str(compact),
            actual=str(coker),
            passed=coker == compact,
        )
    ]
    lifts = edge_lifts(dc)
    size = page.row(k)[-1]
    if lifts is None:
        edge_rank, exact = 0, False
    else:
        edge = _vertical(dc.columns[FAN], d).classes(lifts)
        edge_rank = edge.rank()
        exact = _exact_between(_incoming_top(page, dc.top, size), edge, size)
    checks.append(
        CheckItem(
            name=f"rank of the edge map onto H_c^{{{k},{d}}}",
            expected=str(compact),
            actual=str(edge_rank),
            passed=edge_rank == compact,
        )
    )
    checks.append(
        CheckItem(
            name="kernel of the edge map is the image",
            expected="True",
            actual=str(exact),
            passed=exact,
        )
    )
    return CheckReport(
        title="Cokernel description of top compact-support cohomology",
        checks=checks,
        passed=all(c.passed for c in checks),
    )
