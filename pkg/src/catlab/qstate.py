"""States, density matrices and operators on small labelled Hilbert spaces.

Every type here is an immutable value: constructors validate their input,
freeze the underlying numpy buffers and never mutate afterwards, so instances
can be shared freely between threads and reused as dictionary payloads.

Numeric conventions used throughout the package:

* vectors are unit norm within ``NORM_TOL``;
* matrices are Hermitian / idempotent / unitary within elementwise 1e-10;
* density matrices may dip to ``PSD_FLOOR`` below zero in their spectrum;
* amplitudes below ``ZERO_AMP`` count as zero when fixing the global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence, Union

import numpy as np

from . import jacobi
from .errors import (
    BadWeights,
    CatlabError,
    DimensionCeiling,
    DimensionMismatch,
    NotInSpan,
    NotOrthogonal,
    NotProductSpace,
    ZeroVector,
)

DIM_CEILING = 16
NORM_TOL = 1e-10
HERM_TOL = 1e-10
PSD_FLOOR = -1e-9
ZERO_AMP = 1e-12
SPAN_TOL = 1e-9
MATCH_TOL = 1e-9  # squared-overlap slack when deciding two states are the same
TENSOR_SEP = "⊗"  # the circled-times sign used in product labels

OperatorKind = Literal["projector", "unitary", "general"]


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class HilbertSpace:
    """An ordered, labelled basis.  Dimension 2..16.

    ``factors`` carries the tensor factorisation when the space was built by
    :func:`tensor_space`; it is what makes :func:`partial_trace` possible.
    """

    labels: tuple[str, ...]
    name: str | None = None
    factors: tuple["HilbertSpace", ...] | None = None

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) < 2:
            raise CatlabError("a space needs at least two basis labels")
        if len(labels) > DIM_CEILING:
            raise DimensionCeiling(
                f"dimension {len(labels)} exceeds the ceiling of {DIM_CEILING}"
            )
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise CatlabError("basis labels must be non-empty strings")
        if len(set(labels)) != len(labels):
            raise CatlabError("basis labels must be unique within a space")
        if self.factors is not None:
            object.__setattr__(self, "factors", tuple(self.factors))
            prod = 1
            for f in self.factors:
                prod *= f.dim
            if prod != len(labels):
                raise DimensionMismatch("factor dimensions do not multiply to dim")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise CatlabError(f"unknown basis label {label!r}") from None

    def __repr__(self) -> str:  # compact; full labels still visible
        head = f"{self.name}:" if self.name else ""
        return f"HilbertSpace({head}{'|'.join(self.labels)})"


def tensor_space(a: HilbertSpace, b: HilbertSpace) -> HilbertSpace:
    """Kronecker-ordered product space with factor metadata retained."""
    dim = a.dim * b.dim
    if dim > DIM_CEILING:
        raise DimensionCeiling(
            f"product dimension {dim} exceeds the ceiling of {DIM_CEILING}"
        )
    labels = tuple(
        f"{la}{TENSOR_SEP}{lb}" for la in a.labels for lb in b.labels
    )
    factors = (a.factors or (a,)) + (b.factors or (b,))
    name = None
    if a.name and b.name:
        name = f"{a.name}{TENSOR_SEP}{b.name}"
    return HilbertSpace(labels, name=name, factors=factors)


# ---------------------------------------------------------------------------
# states


def _frozen_array(data, shape: tuple[int, ...], what: str) -> np.ndarray:
    arr = np.array(data, dtype=np.complex128)
    if arr.shape != shape:
        raise DimensionMismatch(f"{what}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise CatlabError(f"{what}: non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateVector:
    """A unit vector over a labelled basis."""

    space: HilbertSpace
    amps: np.ndarray

    def __post_init__(self) -> None:
        arr = _frozen_array(self.amps, (self.space.dim,), "state vector")
        norm2 = float(np.real(np.vdot(arr, arr)))
        if abs(norm2 - 1.0) > NORM_TOL:
            raise CatlabError(f"state vector norm^2 = {norm2!r}, expected 1")
        object.__setattr__(self, "amps", arr)

    def amplitude(self, label: str) -> complex:
        return complex(self.amps[self.space.index(label)])

    def __repr__(self) -> str:
        return f"StateVector({format_state(self)})"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A trace-one positive-semidefinite Hermitian matrix over a basis."""

    space: HilbertSpace
    mat: np.ndarray

    def __post_init__(self) -> None:
        d = self.space.dim
        arr = _frozen_array(self.mat, (d, d), "density matrix")
        if float(np.max(np.abs(arr - arr.conj().T))) > HERM_TOL:
            raise CatlabError("density matrix is not Hermitian")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > NORM_TOL:
            raise CatlabError(f"density matrix trace = {tr!r}, expected 1")
        if jacobi.min_eigenvalue(arr) < PSD_FLOOR:
            raise CatlabError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "mat", arr)

    def probability(self, label: str) -> float:
        i = self.space.index(label)
        return float(self.mat[i, i].real)

    def __repr__(self) -> str:
        diag = ", ".join(f"{v.real:.6g}" for v in self.mat.diagonal())
        return f"DensityMatrix(diag=[{diag}])"


State = Union[StateVector, DensityMatrix]


@dataclass(frozen=True, eq=False)
class Operator:
    """A matrix tagged with the contract it must satisfy."""

    space: HilbertSpace
    mat: np.ndarray
    kind: OperatorKind = "general"

    def __post_init__(self) -> None:
        d = self.space.dim
        arr = _frozen_array(self.mat, (d, d), "operator")
        if self.kind == "projector":
            if float(np.max(np.abs(arr - arr.conj().T))) > HERM_TOL:
                raise CatlabError("projector is not Hermitian")
            if float(np.max(np.abs(arr @ arr - arr))) > HERM_TOL:
                raise CatlabError("projector is not idempotent")
        elif self.kind == "unitary":
            if float(np.max(np.abs(arr.conj().T @ arr - np.eye(d)))) > HERM_TOL:
                raise CatlabError("matrix is not unitary")
        elif self.kind != "general":
            raise CatlabError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "mat", arr)

    @property
    def rank(self) -> int:
        """Numerical rank via the eigenvalues (meaningful for projectors)."""
        w, _ = jacobi.eigh(self.mat @ self.mat.conj().T)
        return int(np.sum(w > 1e-9))


# ---------------------------------------------------------------------------
# constructors


def make_state(space: HilbertSpace, raw_amps: Sequence[complex]) -> StateVector:
    """Normalise raw amplitudes into a state, preserving relative phases.

    Raises ``ZeroVector`` when the input has (numerically) no length and
    ``DimensionMismatch`` when the length disagrees with the space.
    """
    arr = np.asarray(list(raw_amps), dtype=np.complex128)
    if arr.shape != (space.dim,):
        raise DimensionMismatch(
            f"{arr.shape[0] if arr.ndim == 1 else arr.shape} amplitudes for dim {space.dim}"
        )
    norm2 = float(np.real(np.vdot(arr, arr)))
    if norm2 < 1e-20:
        raise ZeroVector("cannot normalise an all-zero amplitude list")
    # skip the division when already normalised so reloading a serialised
    # state reproduces it bit for bit
    if abs(norm2 - 1.0) > 1e-15:
        arr = arr / math.sqrt(norm2)
    return StateVector(space, arr)


def basis_state(space: HilbertSpace, label: str) -> StateVector:
    amps = np.zeros(space.dim, dtype=np.complex128)
    amps[space.index(label)] = 1.0
    return StateVector(space, amps)


def make_mixture(parts: Iterable[tuple[float, StateVector]]) -> DensityMatrix:
    """Convex mixture of pure states.  Weights must be >= 0 and sum to 1."""
    parts = list(parts)
    if not parts:
        raise BadWeights("empty mixture")
    space = parts[0][1].space
    total = 0.0
    mat = np.zeros((space.dim, space.dim), dtype=np.complex128)
    for w, psi in parts:
        w = float(w)
        if w < 0.0 or not math.isfinite(w):
            raise BadWeights(f"weight {w!r} is negative or non-finite")
        if psi.space != space:
            raise DimensionMismatch("mixture components live on different spaces")
        total += w
        mat += w * np.outer(psi.amps, psi.amps.conj())
    if abs(total - 1.0) > NORM_TOL:
        raise BadWeights(f"weights sum to {total!r}, expected 1")
    return DensityMatrix(space, mat)


def pure_density(psi: StateVector) -> DensityMatrix:
    """The rank-one density matrix of a pure state."""
    return DensityMatrix(psi.space, np.outer(psi.amps, psi.amps.conj()))


def projector_from_state(psi: StateVector) -> Operator:
    """Rank-one projector onto a pure state."""
    return Operator(psi.space, np.outer(psi.amps, psi.amps.conj()), "projector")


def identity_operator(space: HilbertSpace) -> Operator:
    return Operator(space, np.eye(space.dim, dtype=np.complex128), "projector")


def unitary_operator(space: HilbertSpace, mat) -> Operator:
    return Operator(space, mat, "unitary")


# ---------------------------------------------------------------------------
# algebra


def tensor(a: State, b: State) -> State:
    """Tensor product of two states of the same kind."""
    space = tensor_space(a.space, b.space)
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(space, np.kron(a.amps, b.amps))
    if isinstance(a, DensityMatrix) and isinstance(b, DensityMatrix):
        return DensityMatrix(space, np.kron(a.mat, b.mat))
    raise CatlabError("tensor operands must both be vectors or both matrices")


def partial_trace(dm: DensityMatrix, keep: int | str) -> DensityMatrix:
    """Reduced density matrix over one declared tensor factor.

    ``keep`` selects the factor to retain, by position or by factor name;
    every other factor is traced out.
    """
    factors = dm.space.factors
    if factors is None:
        raise NotProductSpace("space carries no tensor factorisation")
    if isinstance(keep, str):
        hits = [i for i, f in enumerate(factors) if f.name == keep]
        if not hits:
            raise CatlabError(f"no factor named {keep!r}")
        if len(hits) > 1:
            raise CatlabError(f"factor name {keep!r} is ambiguous")
        keep_idx = hits[0]
    else:
        keep_idx = int(keep)
        if not 0 <= keep_idx < len(factors):
            raise CatlabError(f"factor index {keep} out of range")
    dims = [f.dim for f in factors]
    t = dm.mat.reshape(dims + dims)
    nfac = len(dims)
    # trace out the unwanted axes from the right so earlier indices stay put
    for ax in sorted((i for i in range(nfac) if i != keep_idx), reverse=True):
        t = np.trace(t, axis1=ax, axis2=ax + nfac)
        nfac -= 1
    d = dims[keep_idx]
    return DensityMatrix(factors[keep_idx], t.reshape(d, d))


def apply_unitary(u: Operator, x: State) -> State:
    """Evolve a state by a unitary: U|psi> or U rho U^dagger."""
    if u.kind != "unitary":
        raise CatlabError("apply_unitary needs an operator of kind 'unitary'")
    if u.space != x.space:
        raise DimensionMismatch("unitary and state live on different spaces")
    if isinstance(x, StateVector):
        amps = u.mat @ x.amps
        # unitarity keeps the norm up to rounding; renormalise the dust away
        amps = amps / math.sqrt(float(np.real(np.vdot(amps, amps))))
        return StateVector(x.space, amps)
    return DensityMatrix(x.space, u.mat @ x.mat @ u.mat.conj().T)


def overlap(a: StateVector, b: StateVector) -> complex:
    """The inner product <a|b>."""
    if a.space != b.space:
        raise DimensionMismatch("states live on different spaces")
    return complex(np.vdot(a.amps, b.amps))


def squared_overlap(a: StateVector, b: StateVector) -> float:
    return abs(overlap(a, b)) ** 2


def overlap_probability(x: State, projector: Operator) -> float:
    """Born probability of a projector on a pure or mixed state, in [0, 1]."""
    if projector.kind != "projector":
        raise CatlabError("overlap_probability needs a projector operator")
    if projector.space != x.space:
        raise DimensionMismatch("projector and state live on different spaces")
    if isinstance(x, StateVector):
        p = float(np.real(np.vdot(x.amps, projector.mat @ x.amps)))
    else:
        p = float(np.real(np.trace(projector.mat @ x.mat)))
    return min(1.0, max(0.0, p))


def states_match(x: State, target: StateVector) -> bool:
    """Is ``x`` the pure state ``target`` (up to global phase)?"""
    if isinstance(x, StateVector):
        return squared_overlap(x, target) > 1.0 - MATCH_TOL
    fid = float(np.real(np.vdot(target.amps, x.mat @ target.amps)))
    return fid > 1.0 - MATCH_TOL


def canonical_state(psi: StateVector) -> StateVector:
    """Fix the global phase: first non-negligible amplitude real positive."""
    amps = psi.amps
    idx = int(np.argmax(np.abs(amps) > ZERO_AMP))
    a0 = amps[idx]
    r = abs(a0)
    if r <= ZERO_AMP:  # degenerate; a valid state always has one
        return psi
    phase = a0 / r
    out = amps * np.conj(phase)
    out[idx] = r  # exact zero imaginary part on the anchor entry
    return StateVector(psi.space, out)


def orthogonal_in_span(psi: StateVector, basis2: tuple[StateVector, StateVector]) -> StateVector:
    """The unique (up to phase) state orthogonal to psi inside a 2d span.

    ``basis2`` must be an orthonormal pair and ``psi`` must lie in its span
    within ``SPAN_TOL``; the result comes back phase-canonicalised.
    """
    e1, e2 = basis2
    if e1.space != psi.space or e2.space != psi.space:
        raise DimensionMismatch("span basis lives on a different space")
    if abs(overlap(e1, e2)) > SPAN_TOL:
        raise NotOrthogonal("span basis pair is not orthogonal")
    c1 = overlap(e1, psi)
    c2 = overlap(e2, psi)
    residual = psi.amps - c1 * e1.amps - c2 * e2.amps
    if math.sqrt(float(np.real(np.vdot(residual, residual)))) > SPAN_TOL:
        raise NotInSpan("state lies outside the given two-dimensional span")
    raw = np.conj(c2) * e1.amps - np.conj(c1) * e2.amps
    raw = raw / math.sqrt(float(np.real(np.vdot(raw, raw))))
    return canonical_state(StateVector(psi.space, raw))


# ---------------------------------------------------------------------------
# formatting and JSON


def format_state(x: State) -> str:
    """Human-oriented one-line rendering; basis states print as their label."""
    if isinstance(x, StateVector):
        for i, lab in enumerate(x.space.labels):
            if abs(abs(x.amps[i]) - 1.0) < 1e-9:
                return lab
        terms = []
        for lab, a in zip(x.space.labels, x.amps):
            if abs(a) <= ZERO_AMP:
                continue
            if abs(a.imag) <= ZERO_AMP:
                coef = f"{a.real:.6g}"
            else:
                coef = f"({a.real:.6g}{a.imag:+.6g}i)"
            terms.append(f"{coef}*{lab}")
        return " + ".join(terms) if terms else "0"
    for i, lab in enumerate(x.space.labels):
        if abs(x.mat[i, i].real - 1.0) < 1e-9:
            return lab
    diag = ", ".join(
        f"{lab}: {x.mat[i, i].real:.6g}" for i, lab in enumerate(x.space.labels)
    )
    return f"mixed({diag})"


def space_to_json(space: HilbertSpace) -> dict:
    doc: dict = {"labels": list(space.labels)}
    if space.name:
        doc["name"] = space.name
    if space.factors is not None:
        doc["factors"] = [
            {"labels": list(f.labels), **({"name": f.name} if f.name else {})}
            for f in space.factors
        ]
    return doc


def space_from_json(doc: dict) -> HilbertSpace:
    factors = None
    if "factors" in doc:
        factors = tuple(
            HilbertSpace(tuple(f["labels"]), name=f.get("name"))
            for f in doc["factors"]
        )
    return HilbertSpace(tuple(doc["labels"]), name=doc.get("name"), factors=factors)


def state_to_json(psi: StateVector) -> dict:
    doc = space_to_json(psi.space)
    doc["re"] = [float(v) for v in psi.amps.real]
    doc["im"] = [float(v) for v in psi.amps.imag]
    return doc


def state_from_json(doc: dict) -> StateVector:
    space = space_from_json(doc)
    amps = np.asarray(doc["re"], dtype=np.float64) + 1j * np.asarray(
        doc["im"], dtype=np.float64
    )
    return StateVector(space, amps)


def density_to_json(dm: DensityMatrix) -> dict:
    doc = space_to_json(dm.space)
    flat = dm.mat.reshape(-1)  # row-major
    doc["re"] = [float(v) for v in flat.real]
    doc["im"] = [float(v) for v in flat.imag]
    return doc


def density_from_json(doc: dict) -> DensityMatrix:
    space = space_from_json(doc)
    d = space.dim
    flat = np.asarray(doc["re"], dtype=np.float64) + 1j * np.asarray(
        doc["im"], dtype=np.float64
    )
    if flat.shape != (d * d,):
        raise DimensionMismatch("matrix payload length disagrees with labels")
    return DensityMatrix(space, flat.reshape(d, d))
