"""The canonical compactification as a finite face complex.

Faces are the pairs τ ≼ σ of cones, written C^τ_σ: the closure of the
stratum of σ at infinity in the direction of τ. Each face lives in the
quotient lattice N^τ and carries the lattice N_σ/N_τ with an ordered basis
whose wedge is the canonical multivector of the face.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Tuple

import numpy as np

from ..exceptions import ComplexError
from .exactla import (
    QMat,
    QuotientData,
    columns_matrix,
    lattice_coordinates,
    primitive,
    quotient_lattice,
    sign,
    solve_matrix,
)
from .fan import Fan

logger = logging.getLogger(__name__)


class ExtFace(NamedTuple):
    """The face C^sed_top of the compactification."""

    id: int
    sed: int
    top: int
    dim: int
    rank: int
    lattice: QuotientData

    @property
    def basis(self) -> np.ndarray:
        """Ordered basis of N_top/N_sed in N^sed coordinates."""
        return self.lattice.sub_basis


class Cover(NamedTuple):
    face: int
    coface: int
    kind: str  # "same" or "drop"


def _face_lattice(
    f: Fan, sed_lattice: QuotientData, tau: int, sigma: int
) -> QuotientData:
    rank = sed_lattice.quotient_rank
    images = [sed_lattice.project(f.rays[r]) for r in f.cones[sigma].rays]
    lattice = quotient_lattice(columns_matrix(images, rank), rank)
    if lattice.sub_rank == 1:
        extra = set(f.cones[sigma].rays) - set(f.cones[tau].rays)
        toward = primitive(sed_lattice.project(f.rays[min(extra)]))
        if tuple(int(x) for x in lattice.sub_basis[:, 0]) != toward:
            sub = -lattice.sub_basis
            lattice = QuotientData(sub, lattice.quot_basis, lattice.proj)
    return lattice


class ExtComplex:
    """Face poset, cover relations and sign table of the compactification."""

    def __init__(
        self,
        base: Fan,
        faces: Tuple[ExtFace, ...],
        covers: Tuple[Cover, ...],
        signs: Dict[Tuple[int, int], int],
        sed_lattices: Dict[int, QuotientData],
    ):
        self.base = base
        self.faces = faces
        self.covers = covers
        self.signs = signs
        self.sed_lattices = sed_lattices
        self._index = {(x.sed, x.top): x.id for x in faces}
        self._below: Dict[int, List[Cover]] = {x.id: [] for x in faces}
        for c in covers:
            self._below[c.coface].append(c)

    @property
    def dim(self) -> int:
        return self.base.dim

    def face(self, sed: int, top: int) -> int:
        if (sed, top) not in self._index:
            raise ComplexError(f"No face with sedentarity {sed} and top cone {top}")
        return self._index[(sed, top)]

    def faces_of_dim(self, q: int) -> Tuple[int, ...]:
        return tuple(x.id for x in self.faces if x.dim == q)

    def faces_with_sed(self, sed: int) -> Tuple[int, ...]:
        return tuple(x.id for x in self.faces if x.sed == sed)

    def covers_below(self, delta: int) -> List[Cover]:
        """Covers γ ⋖ δ for a fixed δ."""
        return self._below[delta]

    def is_face(self, gamma: int, delta: int) -> bool:
        """C^{τ1}_{σ1} ≼ C^{τ2}_{σ2} iff τ2 ≼ τ1 ≼ σ1 ≼ σ2."""
        g, d = self.faces[gamma], self.faces[delta]
        return (
            self.base.is_face(d.sed, g.sed)
            and self.base.is_face(g.top, d.top)
        )

    def sign(self, gamma: int, delta: int) -> int:
        if (gamma, delta) not in self.signs:
            raise ComplexError(f"Faces {gamma} and {delta} do not form a cover")
        return self.signs[(gamma, delta)]

    def with_flipped_sign(self, gamma: int, delta: int) -> "ExtComplex":
        """A copy whose sign table differs on one cover."""
        signs = dict(self.signs)
        signs[(gamma, delta)] = -self.sign(gamma, delta)
        return ExtComplex(self.base, self.faces, self.covers, signs, self.sed_lattices)

    def reoriented(self, face: int) -> "ExtComplex":
        """A copy with the canonical multivector of one face negated."""
        signs = {
            key: -s if face in key else s for key, s in self.signs.items()
        }
        lattice = self.faces[face].lattice
        flipped = lattice.sub_basis.copy()
        if flipped.shape[1]:
            flipped[:, 0] = -flipped[:, 0]
        faces = list(self.faces)
        faces[face] = faces[face]._replace(
            lattice=QuotientData(flipped, lattice.quot_basis, lattice.proj)
        )
        return ExtComplex(self.base, tuple(faces), self.covers, signs, self.sed_lattices)

    def __repr__(self) -> str:
        return f"ExtComplex(faces={len(self.faces)}, covers={len(self.covers)})"


def _same_sed_sign(
    f: Fan, gamma: ExtFace, delta: ExtFace, sed_lattice: QuotientData
) -> int:
    extra = sorted(set(f.cones[delta.top].rays) - set(f.cones[gamma.top].rays))
    normal = lattice_coordinates(delta.basis, sed_lattice.project(f.rays[extra[0]]))
    columns = [normal]
    for j in range(gamma.dim):
        columns.append(lattice_coordinates(delta.basis, gamma.basis[:, j]))
    return sign(QMat.from_columns(columns, delta.dim).det())


def _drop_sign(
    f: Fan, gamma: ExtFace, delta: ExtFace, lattices: Dict[int, QuotientData]
) -> int:
    outer, inner = lattices[delta.sed], lattices[gamma.sed]
    # N^τ -> N^τ' in quotient coordinates
    P = inner.proj @ outer.quot_basis
    image = QMat(P @ delta.basis, shape=(P.shape[0], delta.dim))
    targets = QMat.from_columns(
        [tuple(gamma.basis[:, j]) for j in range(gamma.dim)], gamma.rank
    )
    lifts = solve_matrix(image, targets)
    if lifts is None:
        raise ComplexError("Projection of face lattices is not surjective")
    extra = sorted(set(f.cones[gamma.sed].rays) - set(f.cones[delta.sed].rays))
    e = lattice_coordinates(delta.basis, primitive(outer.project(f.rays[extra[0]])))
    columns = [e] + [lifts.column(j) for j in range(lifts.ncols)]
    return -sign(QMat.from_columns(columns, delta.dim).det())


def compactify(f: Fan, sed_zero_only: bool = False) -> ExtComplex:
    """Enumerate the faces C^τ_σ, their covers and the sign of every cover.

    With ``sed_zero_only`` only the faces C^0_σ are built: the fan itself.
    """
    seds = [f.zero] if sed_zero_only else range(len(f.cones))
    sed_lattices = {t: f.lattice(t) for t in seds}
    pairs = sorted(
        (f.cones[s].dim - f.cones[t].dim, t, s)
        for s in range(len(f.cones))
        for t in f.faces(s)
        if t in sed_lattices
    )
    faces: List[ExtFace] = []
    by_pair: Dict[Tuple[int, int], ExtFace] = {}
    for dim, tau, sigma in pairs:
        lattice = _face_lattice(f, sed_lattices[tau], tau, sigma)
        face = ExtFace(
            len(faces), tau, sigma, dim, sed_lattices[tau].quotient_rank, lattice
        )
        faces.append(face)
        by_pair[(tau, sigma)] = face

    covers: List[Cover] = []
    signs: Dict[Tuple[int, int], int] = {}
    for delta in faces:
        for lower, upper in f.covers:
            if upper == delta.top and f.is_face(delta.sed, lower):
                gamma = by_pair[(delta.sed, lower)]
                covers.append(Cover(gamma.id, delta.id, "same"))
                signs[(gamma.id, delta.id)] = _same_sed_sign(
                    f, gamma, delta, sed_lattices[delta.sed]
                )
            if (
                lower == delta.sed
                and f.is_face(upper, delta.top)
                and (upper, delta.top) in by_pair
            ):
                gamma = by_pair[(upper, delta.top)]
                covers.append(Cover(gamma.id, delta.id, "drop"))
                signs[(gamma.id, delta.id)] = _drop_sign(f, gamma, delta, sed_lattices)

    complex_ = ExtComplex(f, tuple(faces), tuple(covers), signs, sed_lattices)
    logger.debug(f"Compactified {f}: {complex_}")
    return complex_


class FaceSubset(NamedTuple):
    """The faces of an open union of strata, with the induced covers."""

    complex: ExtComplex
    faces: Tuple[int, ...]
    seds: FrozenSet[int]

    def __contains__(self, face: object) -> bool:
        return face in self.faces


def open_subcomplex(c: ExtComplex, seds: Iterable[int]) -> FaceSubset:
    """All faces whose sedentarity lies in ``seds``."""
    chosen = frozenset(seds)
    base = c.base
    for s in chosen:
        if s < 0 or s >= len(base.cones):
            raise ComplexError(f"{s} is not a cone id")
        for t in base.faces(s):
            if t not in chosen:
                raise ComplexError(
                    f"Sedentarities are not down-closed: {list(base.cones[t].rays)} "
                    f"is a face of {list(base.cones[s].rays)}"
                )
    faces = tuple(x.id for x in c.faces if x.sed in chosen)
    return FaceSubset(c, faces, chosen)


def fan_faces(c: ExtComplex) -> FaceSubset:
    """The sedentarity-zero faces, that is the fan itself."""
    return open_subcomplex(c, [c.base.zero])


def star_subposet(c: ExtComplex, sigma: int) -> Tuple[int, ...]:
    """Faces whose sedentarity contains sigma: the compactified star fan at sigma."""
    return tuple(x.id for x in c.faces if c.base.is_face(sigma, x.sed))


def face_label(c: ExtComplex, face: int) -> str:
    x = c.faces[face]
    sed = list(c.base.cones[x.sed].rays)
    top = list(c.base.cones[x.top].rays)
    return f"C^{sed}_{top}"

