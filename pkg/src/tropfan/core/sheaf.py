"""Multi-tangent coefficient spaces F_p and their structure maps.

F_p of a face C^τ_σ is the span inside ∧^p N^τ of the p-th wedge powers of
the lattices of the faces above it with the same sedentarity. Wedges are
written in the lexicographic basis of p-subsets; subspaces are stored in
canonical column echelon form so that the coordinates of a vector are its
entries at the pivot rows.
"""

import logging
import threading
import weakref
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, List, NamedTuple, Sequence, Tuple

import numpy as np
from sympy import QQ

from ..exceptions import ComplexError
from .compact import ExtComplex
from .exactla import Echelon, QMat, column_echelon, int_det, to_rat

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def wedge_index(n: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    """p-subsets of range(n) in lexicographic order."""
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def _positions(n: int, p: int) -> Dict[Tuple[int, ...], int]:
    return {subset: i for i, subset in enumerate(wedge_index(n, p))}


def wedge(vectors: np.ndarray) -> Tuple[int, ...]:
    """Coordinates of v_1 ∧ ... ∧ v_p for the columns of an integer matrix."""
    n, p = vectors.shape
    rows = [[int(x) for x in row] for row in vectors]
    return tuple(
        int_det([rows[i] for i in subset]) for subset in wedge_index(n, p)
    )


def exterior_power(m: np.ndarray, p: int) -> QMat:
    """∧^p of an integer matrix: entry [I, J] is the minor on rows I, columns J."""
    nrows, ncols = m.shape
    rows_idx, cols_idx = wedge_index(nrows, p), wedge_index(ncols, p)
    entries = [
        [int_det([[m[i, j] for j in J] for i in I]) for J in cols_idx]
        for I in rows_idx
    ]
    return QMat(entries, (len(rows_idx), len(cols_idx)))


def _shuffle_sign(sub: Tuple[int, ...], full: Tuple[int, ...]) -> int:
    positions = sum(full.index(i) + 1 for i in sub)
    k = len(sub)
    return -1 if (positions - k * (k + 1) // 2) % 2 else 1


def contract(
    alpha: Sequence[Any], k: int, nu: Sequence[Any], p: int, n: int
) -> Tuple[Any, ...]:
    """Contraction ι_α(ν) of a p-vector by a k-form on Q^n.

    ``alpha`` and ``nu`` are coordinate vectors in the lexicographic wedge
    bases of degree k and p; the result has degree p − k.
    """
    if k > p:
        raise ComplexError(f"Cannot contract a {p}-vector by a {k}-form")
    if len(alpha) != len(wedge_index(n, k)) or len(nu) != len(wedge_index(n, p)):
        raise ComplexError("Coordinate vector does not match the wedge degree")
    out = [QQ(0)] * len(wedge_index(n, p - k))
    target = _positions(n, p - k)
    a_pos = _positions(n, k)
    for K, coeff in zip(wedge_index(n, p), nu):
        if coeff == 0:
            continue
        for I in combinations(K, k):
            a = alpha[a_pos[I]]
            if a == 0:
                continue
            rest = tuple(i for i in K if i not in I)
            out[target[rest]] += _shuffle_sign(I, K) * to_rat(a) * to_rat(coeff)
    return tuple(out)


class CoeffBasis(NamedTuple):
    """Canonical basis of F_p of a face inside ∧^p N^sed."""

    face: int
    degree: int
    echelon: Echelon

    @property
    def dim(self) -> int:
        return self.echelon.dim

    @property
    def basis(self) -> QMat:
        return self.echelon.basis

    def coordinates(self, vector: Sequence[Any]) -> Tuple[Any, ...]:
        return self.echelon.coordinates(vector)

    def multiform(self, alpha: Sequence[Any]) -> Tuple[Any, ...]:
        """Extend dual coordinates on F_p to a p-form on the whole wedge space."""
        size = self.basis.nrows
        full = [QQ(0)] * size
        for pivot, a in zip(self.echelon.pivots, alpha):
            full[pivot] = to_rat(a)
        return tuple(full)


class Sheaf:
    """Coefficient spaces and structure maps over one compactification."""

    def __init__(self, c: ExtComplex):
        self.complex = c
        self._spaces: Dict[Tuple[int, int], CoeffBasis] = {}
        self._projections: Dict[Tuple[int, int], np.ndarray] = {}
        self._lock = threading.Lock()

    def _maximal_above(self, gamma: int) -> List[int]:
        face = self.complex.faces[gamma]
        base = self.complex.base
        tops = [
            eta
            for eta in base.cofaces(face.top)
            if eta in base.maximal
        ]
        return [self.complex.face(face.sed, eta) for eta in tops]

    def space(self, gamma: int, p: int) -> CoeffBasis:
        key = (gamma, p)
        cached = self._spaces.get(key)
        if cached is not None:
            return cached
        face = self.complex.faces[gamma]
        size = len(wedge_index(face.rank, p))
        vectors = []
        for delta in self._maximal_above(gamma):
            basis = self.complex.faces[delta].basis
            for cols in combinations(range(basis.shape[1]), p):
                vectors.append(wedge(basis[:, list(cols)]))
        if p == 0:
            vectors = [(1,)]
        echelon = column_echelon(QMat.from_columns(vectors, size))
        result = CoeffBasis(gamma, p, echelon)
        with self._lock:
            self._spaces.setdefault(key, result)
        return self._spaces[key]

    def projection(self, outer_sed: int, inner_sed: int) -> np.ndarray:
        """The integral map N^outer -> N^inner for outer ≼ inner."""
        key = (outer_sed, inner_sed)
        if key not in self._projections:
            lattices = self.complex.sed_lattices
            matrix = lattices[inner_sed].proj @ lattices[outer_sed].quot_basis
            with self._lock:
                self._projections.setdefault(key, matrix)
        return self._projections[key]

    def map(self, gamma: int, delta: int, p: int) -> QMat:
        """Matrix of i_{δ≻γ}: F_p(δ) -> F_p(γ) in the canonical bases."""
        c = self.complex
        if gamma == delta:
            return QMat.identity(self.space(gamma, p).dim)
        if not c.is_face(gamma, delta):
            raise ComplexError(f"Face {gamma} is not below face {delta}")
        source, target = self.space(delta, p), self.space(gamma, p)
        g, d = c.faces[gamma], c.faces[delta]
        vectors = source.basis
        if g.sed != d.sed:
            P = self.projection(d.sed, g.sed)
            vectors = exterior_power(P, p) @ vectors
        return target.echelon.coordinate_matrix(vectors)


_SHEAVES: "weakref.WeakKeyDictionary[ExtComplex, Sheaf]" = weakref.WeakKeyDictionary()
_SHEAVES_LOCK = threading.Lock()


def sheaf_for(c: ExtComplex) -> Sheaf:
    with _SHEAVES_LOCK:
        sheaf = _SHEAVES.get(c)
        if sheaf is None:
            sheaf = Sheaf(c)
            _SHEAVES[c] = sheaf
            logger.debug(f"New coefficient cache for {c}")
        return sheaf


def coeff_space(c: ExtComplex, gamma: int, p: int) -> CoeffBasis:
    """F_p of a face, as a canonical column basis."""
    if p < 0 or p > c.base.ambient_rank:
        raise ComplexError(f"Degree {p} is out of range")
    return sheaf_for(c).space(gamma, p)


def coeff_map(c: ExtComplex, gamma: int, delta: int, p: int) -> QMat:
    """i_{δ≻γ}: F_p(δ) -> F_p(γ), inclusion or projection then inclusion."""
    return sheaf_for(c).map(gamma, delta, p)


def canonical_multivector(c: ExtComplex, face: int) -> Tuple[int, ...]:
    """ν of a face: the wedge of its ordered lattice basis."""
    return wedge(c.faces[face].basis)
