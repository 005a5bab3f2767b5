"""Exact rational and integer linear algebra.

Rational matrices are wrapped in :class:`QMat`, a small immutable layer over
sympy's ``DomainMatrix`` on ``QQ``. Integer lattice work (Smith normal form,
saturations, quotient lattices) uses numpy object arrays so entries stay
Python integers of arbitrary size.
"""

import logging
from math import gcd
from typing import Any, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Rat = QQ.dtype


def rat(num: int, den: int = 1) -> Any:
    """Build an exact rational ``num/den`` in lowest terms."""
    return QQ(int(num), int(den))


def to_rat(x: Any) -> Any:
    """Coerce an int, numpy integer, fraction-like or QQ element to QQ."""
    if isinstance(x, Rat):
        return x
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return QQ(int(x.numerator), int(x.denominator))
    return QQ(int(x))


def sign(x: Any) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class QMat:
    """Immutable dense matrix over QQ."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(
        self,
        entries: Sequence[Sequence[Any]] = (),
        shape: Optional[Tuple[int, int]] = None,
    ):
        rows = tuple(tuple(to_rat(x) for x in row) for row in entries)
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        nrows, ncols = shape
        if len(rows) != nrows or any(len(row) != ncols for row in rows):
            raise ValueError(f"Entries do not match shape {shape}")
        self.rows: Tuple[Tuple[Any, ...], ...] = rows
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMat":
        zero = QQ(0)
        return cls([[zero] * ncols for _ in range(nrows)], (nrows, ncols))

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls(
            [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)], (n, n)
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Any]], nrows: int) -> "QMat":
        cols = [list(c) for c in columns]
        return cls(
            [[col[i] for col in cols] for i in range(nrows)], (nrows, len(cols))
        )

    @classmethod
    def from_dm(cls, dm: DomainMatrix) -> "QMat":
        nrows, ncols = dm.shape
        if nrows == 0 or ncols == 0:
            return cls.zeros(nrows, ncols)
        return cls(dm.to_list(), (nrows, ncols))

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> "QMat":
        return QMat(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            (self.ncols, self.nrows),
        )

    def to_dm(self) -> DomainMatrix:
        return DomainMatrix([list(r) for r in self.rows], self.shape, QQ)

    def column(self, j: int) -> Tuple[Any, ...]:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> Iterator[Tuple[Any, ...]]:
        for j in range(self.ncols):
            yield self.column(j)

    def select(
        self, rows: Optional[Sequence[int]] = None, cols: Optional[Sequence[int]] = None
    ) -> "QMat":
        """Submatrix on the given row and column indices (all when ``None``)."""
        ri = list(range(self.nrows)) if rows is None else list(rows)
        ci = list(range(self.ncols)) if cols is None else list(cols)
        return QMat([[self.rows[i][j] for j in ci] for i in ri], (len(ri), len(ci)))

    def hstack(self, *others: "QMat") -> "QMat":
        rows = [list(r) for r in self.rows]
        ncols = self.ncols
        for other in others:
            if other.nrows != self.nrows:
                raise ValueError("hstack row count mismatch")
            for i in range(self.nrows):
                rows[i].extend(other.rows[i])
            ncols += other.ncols
        return QMat(rows, (self.nrows, ncols))

    def vstack(self, *others: "QMat") -> "QMat":
        rows = list(self.rows)
        for other in others:
            if other.ncols != self.ncols:
                raise ValueError("vstack column count mismatch")
            rows.extend(other.rows)
        return QMat(rows, (len(rows), self.ncols))

    def __matmul__(self, other: "QMat") -> "QMat":
        if self.ncols != other.nrows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return QMat.zeros(self.nrows, other.ncols)
        return QMat.from_dm(self.to_dm().matmul(other.to_dm()))

    def __add__(self, other: "QMat") -> "QMat":
        if self.shape != other.shape:
            raise ValueError("Shape mismatch in addition")
        return QMat(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.shape,
        )

    def __neg__(self) -> "QMat":
        return QMat([[-a for a in r] for r in self.rows], self.shape)

    def scale(self, c: Any) -> "QMat":
        c = to_rat(c)
        return QMat([[c * a for a in r] for r in self.rows], self.shape)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QMat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"QMat([{body}], shape={self.shape})"

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def rref(self) -> Tuple["QMat", Tuple[int, ...]]:
        """Reduced row echelon form with pivot entries 1, leftmost pivot rule."""
        if self.nrows == 0 or self.ncols == 0 or self.is_zero():
            return QMat.zeros(self.nrows, self.ncols), ()
        reduced, pivots = self.to_dm().rref()
        return QMat.from_dm(reduced), tuple(int(p) for p in pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Any:
        if self.nrows != self.ncols:
            raise ValueError("Determinant of a non-square matrix")
        if self.nrows == 0:
            return QQ(1)
        return self.to_dm().det()


class RankKernelImage(NamedTuple):
    rank: int
    kernel: QMat
    image: QMat


class Echelon(NamedTuple):
    """Canonical column basis of a subspace and the pivot coordinates."""

    basis: QMat
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.ncols

    def coordinates(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        """Coordinates of a vector of the subspace in the echelon basis."""
        return tuple(to_rat(vector[p]) for p in self.pivots)

    def contains(self, vector: Sequence[Any]) -> bool:
        coords = self.coordinates(vector)
        for i in range(self.basis.nrows):
            value = sum((c * self.basis.rows[i][j] for j, c in enumerate(coords)), QQ(0))
            if value != to_rat(vector[i]):
                return False
        return True

    def coordinate_matrix(self, vectors: QMat) -> QMat:
        """Coordinates of each column of ``vectors`` (assumed in the span)."""
        return vectors.select(rows=self.pivots)


def column_echelon(m: QMat) -> Echelon:
    """Reduced column echelon basis of the column span of ``m``.

    Basis vectors have a 1 at their pivot coordinate and zeros at the pivot
    coordinates of the others, so two subspaces are equal iff their echelon
    bases are equal.
    """
    reduced, pivots = m.T.rref()
    basis = reduced.select(rows=range(len(pivots))).T
    if not pivots:
        basis = QMat.zeros(m.nrows, 0)
    return Echelon(basis, pivots)


def kernel(m: QMat) -> QMat:
    """Column basis of the right kernel of ``m`` in canonical echelon form."""
    reduced, pivots = m.rref()
    free = [j for j in range(m.ncols) if j not in pivots]
    vectors = []
    for f in free:
        v = [QQ(0)] * m.ncols
        v[f] = QQ(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced.rows[i][f]
        vectors.append(v)
    return column_echelon(QMat.from_columns(vectors, m.ncols)).basis


def rank_kernel_image(m: QMat) -> RankKernelImage:
    """Rank, kernel basis and image basis of ``m``, both bases canonical."""
    image = column_echelon(m)
    ker = kernel(m)
    logger.debug(f"rank_kernel_image: shape {m.shape}, rank {image.dim}")
    return RankKernelImage(image.dim, ker, image.basis)


def solve(m: QMat, b: Sequence[Any]) -> Optional[Tuple[Any, ...]]:
    """One exact solution ``x`` of ``m x = b``, or ``None`` when inconsistent."""
    if len(b) != m.nrows:
        raise ValueError("Right-hand side length mismatch")
    if m.ncols == 0:
        return () if all(to_rat(x) == 0 for x in b) else None
    augmented = m.hstack(QMat([[x] for x in b], (m.nrows, 1)))
    reduced, pivots = augmented.rref()
    if m.ncols in pivots:
        return None
    x = [QQ(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = reduced.rows[i][m.ncols]
    return tuple(x)


def solve_matrix(m: QMat, b: QMat) -> Optional[QMat]:
    """Solve ``m X = b`` column by column."""
    columns = []
    for col in b.columns():
        x = solve(m, col)
        if x is None:
            return None
        columns.append(x)
    return QMat.from_columns(columns, m.ncols)


# --- integer lattices -------------------------------------------------------


class SnfResult(NamedTuple):
    """``A = U @ D @ V``; ``U_inv`` and ``V_inv`` are the exact inverses."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def invariant_factors(self) -> List[int]:
        return [
            int(self.D[i, i])
            for i in range(min(self.D.shape))
            if self.D[i, i] != 0
        ]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def int_matrix(
    entries: Any, nrows: Optional[int] = None, ncols: Optional[int] = None
) -> np.ndarray:
    """Object-dtype integer matrix from nested row sequences."""
    rows = [[int(x) for x in row] for row in entries]
    if nrows is None:
        nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if rows and (len(rows) != nrows or any(len(r) != ncols for r in rows)):
        raise ValueError(f"Entries do not match shape ({nrows}, {ncols})")
    out = np.zeros((nrows, ncols), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            out[i, j] = x
    return out


def columns_matrix(vectors: Sequence[Sequence[int]], nrows: int) -> np.ndarray:
    """Integer matrix whose columns are the given vectors."""
    out = np.zeros((nrows, len(vectors)), dtype=object)
    for j, v in enumerate(vectors):
        if len(v) != nrows:
            raise ValueError(f"Vector {tuple(v)} does not have length {nrows}")
        for i, x in enumerate(v):
            out[i, j] = int(x)
    return out


def int_eye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _exgcd_matrix(a: int, b: int) -> np.ndarray:
    """Determinant-one M with M @ [a, b] = [gcd(a, b), 0]."""
    if a == 0 and b == 0:
        return int_eye(2)
    if a != 0 and b % a == 0:
        s = 1 if a > 0 else -1
        return int_matrix([[s, 0], [-s * (b // a), s]])
    g, s, t = _ext_gcd(a, b)
    return int_matrix([[s, t], [-b // g, a // g]])


def _inv2(m: np.ndarray) -> np.ndarray:
    return int_matrix([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def smith_normal_form(a: Any) -> SnfResult:
    """Smith normal form ``A = U @ D @ V`` with unimodular U, V.

    D is diagonal with positive invariant factors d_1 | d_2 | ... placed
    first. The inverses of U and V are tracked through every elementary
    operation so no rational inversion is ever needed.
    """
    A = a if isinstance(a, np.ndarray) else int_matrix(a)
    m, n = A.shape
    D = A.copy()
    U, U_inv = int_eye(m), int_eye(m)
    V, V_inv = int_eye(n), int_eye(n)

    def clear_col(i: int) -> None:
        for j in range(i + 1, m):
            if D[j, i] == 0:
                continue
            M = _exgcd_matrix(D[i, i], D[j, i])
            D[[i, j]] = M @ D[[i, j]]
            U[:, [i, j]] = U[:, [i, j]] @ _inv2(M)
            U_inv[[i, j]] = M @ U_inv[[i, j]]

    def clear_row(i: int) -> bool:
        if all(D[i, j] == 0 for j in range(i + 1, n)):
            return False
        for j in range(i + 1, n):
            if D[i, j] == 0:
                continue
            M = _exgcd_matrix(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]] @ M
            V[[i, j]] = _inv2(M) @ V[[i, j]]
            V_inv[:, [i, j]] = V_inv[:, [i, j]] @ M
        return True

    rank = 0
    for i in range(min(m, n)):
        candidates = [
            (abs(D[r, c]), r, c)
            for r in range(i, m)
            for c in range(i, n)
            if D[r, c] != 0
        ]
        if not candidates:
            break
        _, r, c = min(candidates)
        if r != i:
            D[[i, r]] = D[[r, i]]
            U[:, [i, r]] = U[:, [r, i]]
            U_inv[[i, r]] = U_inv[[r, i]]
        if c != i:
            D[:, [i, c]] = D[:, [c, i]]
            V[[i, c]] = V[[c, i]]
            V_inv[:, [i, c]] = V_inv[:, [c, i]]
        while True:
            clear_col(i)
            if not clear_row(i):
                break
        rank += 1

    # divisibility chain d_i | d_j
    for i in range(rank):
        for j in range(i + 1, rank):
            x, y = D[i, i], D[j, j]
            if y % x == 0:
                continue
            g, s, t = _ext_gcd(x, y)
            L = int_matrix([[s, t], [-y // g, x // g]])
            R = int_matrix([[1, -t * y // g], [1, s * x // g]])
            D[i, i], D[j, j] = g, x * y // g
            U[:, [i, j]] = U[:, [i, j]] @ _inv2(L)
            U_inv[[i, j]] = L @ U_inv[[i, j]]
            V[[i, j]] = _inv2(R) @ V[[i, j]]
            V_inv[:, [i, j]] = V_inv[:, [i, j]] @ R

    for i in range(rank):
        if D[i, i] < 0:
            D[i, i] = -D[i, i]
            U[:, i] = -U[:, i]
            U_inv[i, :] = -U_inv[i, :]

    if m and n and not (U @ D @ V == A).all():
        raise ArithmeticError("Smith normal form reconstruction failed")
    return SnfResult(U, D, V, U_inv, V_inv)


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    entries = [int(x) for x in v]
    g = 0
    for x in entries:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("The zero vector has no primitive generator")
    return tuple(x // g for x in entries)


class QuotientData(NamedTuple):
    """Bases for a saturated sublattice L of Z^n and for Z^n / L.

    ``sub_basis`` (n x r) spans L, ``quot_basis`` (n x (n-r)) lifts a basis of
    the quotient, and ``proj`` ((n-r) x n, integral) is the projection in
    quotient coordinates: ``proj @ sub_basis == 0`` and
    ``proj @ quot_basis == I``.
    """

    sub_basis: np.ndarray
    quot_basis: np.ndarray
    proj: np.ndarray

    @property
    def ambient_rank(self) -> int:
        return int(self.proj.shape[1])

    @property
    def sub_rank(self) -> int:
        return int(self.sub_basis.shape[1])

    @property
    def quotient_rank(self) -> int:
        return int(self.proj.shape[0])

    def project(self, v: Sequence[int]) -> Tuple[int, ...]:
        vec = np.array([int(x) for x in v], dtype=object)
        if self.quotient_rank == 0:
            return ()
        return tuple(int(x) for x in self.proj @ vec)


def quotient_lattice(sub_gens: Any, ambient_rank: int) -> QuotientData:
    """Saturated sublattice spanned by the columns of ``sub_gens`` and its quotient.

    ``sub_gens`` is an ``ambient_rank x k`` integer matrix (numpy or nested
    rows); ``k`` may be zero.
    """
    if isinstance(sub_gens, np.ndarray):
        G = sub_gens
    elif len(sub_gens) == 0:
        G = np.zeros((ambient_rank, 0), dtype=object)
    else:
        G = int_matrix(sub_gens)
    if G.shape[0] != ambient_rank:
        raise ValueError(f"Generators have {G.shape[0]} rows, expected {ambient_rank}")
    snf = smith_normal_form(G)
    r = snf.rank
    sub_basis = snf.U[:, :r].copy()
    quot_basis = snf.U[:, r:].copy()
    proj = snf.U_inv[r:, :].copy()
    return QuotientData(sub_basis, quot_basis, proj)


def lattice_index(gens: np.ndarray) -> int:
    """Index of the lattice spanned by the columns of ``gens`` in its saturation."""
    index = 1
    for d in smith_normal_form(gens).invariant_factors:
        index *= d
    return index


def int_det(rows: Sequence[Sequence[Any]]) -> int:
    """Exact determinant of a small square integer matrix given by rows."""
    if not rows:
        return 1
    size = len(rows)
    dm = DomainMatrix([[ZZ(int(x)) for x in r] for r in rows], (size, size), ZZ)
    return int(dm.det())


def integer_solution(a: np.ndarray, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """One integral solution ``x`` of ``a @ x == b``, or ``None`` if there is none."""
    m, n = a.shape
    if len(b) != m:
        raise ValueError("Right-hand side length mismatch")
    if n == 0:
        return () if all(int(x) == 0 for x in b) else None
    snf = smith_normal_form(a)
    rhs = snf.U_inv @ np.array([int(x) for x in b], dtype=object)
    y = np.zeros(n, dtype=object)
    factors = snf.invariant_factors
    for i, d in enumerate(factors):
        if rhs[i] % d != 0:
            return None
        y[i] = rhs[i] // d
    if any(rhs[i] != 0 for i in range(len(factors), m)):
        return None
    return tuple(int(x) for x in snf.V_inv @ y)


def lattice_coordinates(basis: np.ndarray, v: Sequence[int]) -> Tuple[int, ...]:
    """Coordinates of a lattice vector in a basis of a saturated sublattice."""
    coords = integer_solution(basis, v)
    if coords is None:
        raise ValueError(f"{tuple(v)} is not in the lattice")
    return coords
