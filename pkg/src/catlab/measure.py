"""Projective measurements: Born-rule statistics, collapse and sampling.

A measurement is a list of labelled, mutually orthogonal projectors that
resolve the identity.  Incomplete projector lists are completed with a
catch-all outcome labelled ``"⊥"`` at construction.  Collapse follows the
projection postulate: vectors go to ``P|psi>/||..||``, matrices to
``P rho P / tr(P rho)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CatlabError, DimensionMismatch, NotOrthogonal
from .qstate import (
    DensityMatrix,
    HilbertSpace,
    Operator,
    State,
    StateVector,
    projector_from_state,
)
from .rng import RandomStream

PRUNE_TOL = 1e-12  # outcomes below this probability carry no post state
ORTHO_TOL = 1e-9  # overlap allowed between outcome-defining states
COMPLETE_TOL = 1e-10
COMPLEMENT_LABEL = "⊥"


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Labelled orthogonal projectors summing to the identity."""

    space: HilbertSpace
    outcomes: tuple[tuple[str, Operator], ...]

    def __post_init__(self) -> None:
        outcomes = tuple((str(l), op) for l, op in self.outcomes)
        object.__setattr__(self, "outcomes", outcomes)
        if not outcomes:
            raise CatlabError("a measurement needs at least one outcome")
        labels = [l for l, _ in outcomes]
        if len(set(labels)) != len(labels):
            raise CatlabError("outcome labels must be unique")
        if any(not l for l in labels):
            raise CatlabError("outcome labels must be non-empty")
        d = self.space.dim
        for label, op in outcomes:
            if op.space != self.space:
                raise DimensionMismatch(f"outcome {label!r} lives on another space")
            if op.kind != "projector":
                raise CatlabError(f"outcome {label!r} is not a projector")
        mats = [op.mat for _, op in outcomes]
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if float(np.max(np.abs(mats[i] @ mats[j]))) > COMPLETE_TOL:
                    raise NotOrthogonal(
                        f"projectors {labels[i]!r} and {labels[j]!r} overlap"
                    )
        total = sum(mats)
        if float(np.max(np.abs(total - np.eye(d)))) > COMPLETE_TOL:
            raise CatlabError("projectors do not resolve the identity")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(l for l, _ in self.outcomes)

    def projector(self, label: str) -> Operator:
        for l, op in self.outcomes:
            if l == label:
                return op
        raise CatlabError(f"no outcome labelled {label!r}")


def make_measurement(
    space: HilbertSpace, outcomes: Sequence[tuple[str, Operator]]
) -> ProjectiveMeasurement:
    """Build a measurement, appending a complement outcome when needed.

    The appended outcome is ``I - sum(P_i)`` labelled ``"⊥"``; if the given
    projectors are not mutually orthogonal that complement fails its own
    projector check, which surfaces the problem immediately.
    """
    outcomes = [(str(l), op) for l, op in outcomes]
    d = space.dim
    total = np.zeros((d, d), dtype=np.complex128)
    for label, op in outcomes:
        if op.space != space:
            raise DimensionMismatch(f"outcome {label!r} lives on another space")
        total = total + op.mat
    defect = np.eye(d) - total
    if float(np.max(np.abs(defect))) > COMPLETE_TOL:
        if any(l == COMPLEMENT_LABEL for l, _ in outcomes):
            raise CatlabError(
                f"cannot auto-complete: label {COMPLEMENT_LABEL!r} already used"
            )
        outcomes.append((COMPLEMENT_LABEL, Operator(space, defect, "projector")))
    return ProjectiveMeasurement(space, tuple(outcomes))


def measurement_from_states(
    states: Sequence[StateVector], labels: Sequence[str]
) -> ProjectiveMeasurement:
    """Rank-one measurement defined by pairwise-orthogonal pure states."""
    states = list(states)
    labels = [str(l) for l in labels]
    if not states:
        raise CatlabError("need at least one state")
    if len(states) != len(labels):
        raise DimensionMismatch("one label per state required")
    space = states[0].space
    if len(states) > space.dim:
        raise DimensionMismatch("more states than the dimension allows")
    for s in states:
        if s.space != space:
            raise DimensionMismatch("states live on different spaces")
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            ov = abs(np.vdot(states[i].amps, states[j].amps))
            if ov > ORTHO_TOL:
                raise NotOrthogonal(
                    f"states {labels[i]!r} and {labels[j]!r} overlap (|<i|j>| = {ov:.3g})"
                )
    outcomes = [(lab, projector_from_state(s)) for lab, s in zip(labels, states)]
    return make_measurement(space, outcomes)


@dataclass(frozen=True)
class OutcomeRecord:
    """One row of a Born distribution: label, probability, collapsed state."""

    label: str
    probability: float
    post_state: State | None


def outcome_distribution(m: ProjectiveMeasurement, x: State) -> list[OutcomeRecord]:
    """Born probabilities and post-measurement states for every outcome.

    Probabilities are clamped into [0, 1]; outcomes below ``PRUNE_TOL``
    keep their row but carry ``post_state=None``.
    """
    if x.space != m.space:
        raise DimensionMismatch("state and measurement live on different spaces")
    records: list[OutcomeRecord] = []
    if isinstance(x, StateVector):
        for label, op in m.outcomes:
            proj = op.mat @ x.amps
            p = float(np.real(np.vdot(x.amps, proj)))
            p = min(1.0, max(0.0, p))
            post = None
            if p >= PRUNE_TOL:
                post = StateVector(m.space, proj / math.sqrt(p))
            records.append(OutcomeRecord(label, p, post))
    else:
        for label, op in m.outcomes:
            p = float(np.real(np.trace(op.mat @ x.mat)))
            p = min(1.0, max(0.0, p))
            post = None
            if p >= PRUNE_TOL:
                post = DensityMatrix(m.space, (op.mat @ x.mat @ op.mat) / p)
            records.append(OutcomeRecord(label, p, post))
    return records


def sample_outcome(
    m: ProjectiveMeasurement, x: State, rng: RandomStream
) -> tuple[str, State]:
    """Draw one outcome by inverse CDF on the stream's next uniform."""
    records = outcome_distribution(m, x)
    u = rng.uniform()
    acc = 0.0
    chosen = None
    for rec in records:
        if rec.probability < PRUNE_TOL:
            continue
        chosen = rec
        acc += rec.probability
        if u < acc:
            break
    if chosen is None:
        raise CatlabError("distribution carries no probability mass")
    return chosen.label, chosen.post_state


def records_to_json(records: Sequence[OutcomeRecord]) -> list[dict]:
    """JSON-ready rows; post states embed as labels/re/im payloads."""
    from .qstate import density_to_json, state_to_json  # local to avoid cycle noise

    rows = []
    for rec in records:
        row: dict = {"label": rec.label, "probability": rec.probability}
        if isinstance(rec.post_state, StateVector):
            row["post_state"] = state_to_json(rec.post_state)
        elif isinstance(rec.post_state, DensityMatrix):
            row["post_state"] = density_to_json(rec.post_state)
        else:
            row["post_state"] = None
        rows.append(row)
    return rows
