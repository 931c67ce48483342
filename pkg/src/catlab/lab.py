"""Laboratories and the steering search.

A laboratory declares which measurements and unitaries are physically
available and which state transitions are forbidden.  The steering search
asks whether chaining allowed operations can drag an initial state onto a
target state with positive probability; the no-go check adjoins a candidate
projector to the lab and runs that search across a forbidden transition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .errors import CatlabError, DimensionMismatch, PreconditionFailed
from .measure import (
    PRUNE_TOL,
    ProjectiveMeasurement,
    make_measurement,
    outcome_distribution,
)
from .qstate import (
    DensityMatrix,
    HilbertSpace,
    Operator,
    State,
    StateVector,
    apply_unitary,
    canonical_state,
    overlap,
    squared_overlap,
    state_to_json,
    states_match,
)

GRID = 1e-6  # amplitude grid for dedup keys
MATCH_TOL = 1e-9  # squared-overlap slack for "reached the target"
ORTHO_TOL = 1e-9
DEFAULT_MAX_DEPTH = 8
DEFAULT_MIN_PROB = 1e-12


def state_key(x: State) -> tuple:
    """Hashable dedup key: canonical phase, then a 1e-6 amplitude grid."""
    if isinstance(x, StateVector):
        amps = canonical_state(x).amps
        flat = np.empty(2 * amps.size)
        flat[0::2] = amps.real
        flat[1::2] = amps.imag
        return ("v",) + tuple(int(v) for v in np.round(flat / GRID))
    flat = x.mat.reshape(-1)
    grid = np.round(np.concatenate([flat.real, flat.imag]) / GRID)
    return ("m",) + tuple(int(v) for v in grid)


@dataclass(frozen=True, eq=False)
class Laboratory:
    """Declared operations plus forbidden transitions, all on one space."""

    space: HilbertSpace
    measurements: Mapping[str, ProjectiveMeasurement] = field(default_factory=dict)
    unitaries: Mapping[str, Operator] = field(default_factory=dict)
    forbidden: tuple[tuple[StateVector, StateVector], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "measurements", dict(self.measurements))
        object.__setattr__(self, "unitaries", dict(self.unitaries))
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        for name, m in self.measurements.items():
            if m.space != self.space:
                raise DimensionMismatch(f"measurement {name!r} on another space")
        for name, u in self.unitaries.items():
            if u.space != self.space:
                raise DimensionMismatch(f"unitary {name!r} on another space")
            if u.kind != "unitary":
                raise CatlabError(f"operator {name!r} is not unitary")
        for frm, to in self.forbidden:
            if frm.space != self.space or to.space != self.space:
                raise DimensionMismatch("forbidden pair on another space")
            if abs(overlap(frm, to)) > ORTHO_TOL:
                raise CatlabError(
                    "forbidden pair must be distinct orthogonal states"
                )

    def operations(self) -> Iterator[tuple[str, str, object]]:
        """(name, kind, op) in declaration order: measurements, then unitaries."""
        for name, m in self.measurements.items():
            yield name, "measurement", m
        for name, u in self.unitaries.items():
            yield name, "unitary", u

    def with_measurement(self, name: str, m: ProjectiveMeasurement) -> "Laboratory":
        """A copy of this lab with one more allowed measurement appended."""
        if name in self.measurements or name in self.unitaries:
            raise CatlabError(f"operation name {name!r} already in use")
        meas = dict(self.measurements)
        meas[name] = m
        return Laboratory(self.space, meas, self.unitaries, self.forbidden)


@dataclass(frozen=True)
class SteeringPath:
    """A successful chain of operations; unitary steps carry an empty label."""

    steps: tuple[tuple[str, str], ...]
    probability: float
    final_state: StateVector


@dataclass(frozen=True)
class NoGoVerdict:
    operator_name: str
    violated: bool
    witness: SteeringPath | None
    bound_reached: bool


def check_conditions(lab: Laboratory, l_state: StateVector, d_state: StateVector) -> bool:
    """Both hypotheses of the no-go check: orthogonality of the pair and
    the d->l transition being declared forbidden."""
    if l_state.space != lab.space or d_state.space != lab.space:
        raise DimensionMismatch("states live outside the laboratory space")
    if abs(overlap(l_state, d_state)) >= ORTHO_TOL:
        return False
    for frm, to in lab.forbidden:
        if states_match(frm, d_state) and states_match(to, l_state):
            return True
    return False


def _branches(lab, name, kind, op, state, cache):
    """Outcome branches of one operation: (label, probability, post state)."""
    if kind == "unitary":
        return (("", 1.0, canonical_state(apply_unitary(op, state))),)
    key = (name, state_key(state))
    hit = cache.get(key)
    if hit is None:
        hit = tuple(
            (r.label, r.probability, _canon(r.post_state))
            for r in outcome_distribution(op, state)
            if r.probability >= PRUNE_TOL
        )
        cache[key] = hit
    return hit


def _canon(x: State | None) -> State | None:
    if isinstance(x, StateVector):
        return canonical_state(x)
    return x


def _search(
    lab: Laboratory,
    start: StateVector,
    target: StateVector,
    max_depth: int,
    min_prob: float,
) -> tuple[SteeringPath | None, bool]:
    """Breadth-first steering search.  Returns (path, bound_reached).

    Deterministic: operations expand in declaration order and outcomes in
    outcome order; revisited states keep their highest-probability
    representative (position in the frontier is fixed by first arrival).
    """
    if start.space != lab.space or target.space != lab.space:
        raise DimensionMismatch("states live outside the laboratory space")
    root = canonical_state(start)
    if squared_overlap(root, target) > 1.0 - MATCH_TOL:
        return SteeringPath((), 1.0, root), False
    visited: dict[tuple, float] = {state_key(root): 1.0}
    frontier: dict[tuple, tuple[StateVector, tuple, float]] = {
        state_key(root): (root, (), 1.0)
    }
    ops = list(lab.operations())
    cache: dict = {}
    for _depth in range(1, max_depth + 1):
        next_frontier: dict[tuple, tuple[StateVector, tuple, float]] = {}
        for state, steps, prob in frontier.values():
            for name, kind, op in ops:
                for label, p, post in _branches(lab, name, kind, op, state, cache):
                    new_prob = prob * p
                    if new_prob < min_prob:
                        continue
                    new_steps = steps + ((name, label),)
                    if squared_overlap(post, target) > 1.0 - MATCH_TOL:
                        return SteeringPath(new_steps, new_prob, post), False
                    k = state_key(post)
                    best = visited.get(k)
                    if best is not None and best >= new_prob:
                        continue
                    visited[k] = new_prob
                    next_frontier[k] = (post, new_steps, new_prob)
        if not next_frontier:
            return None, False
        frontier = next_frontier
    return None, True


def find_steering_path(
    lab: Laboratory,
    start: StateVector,
    target: StateVector,
    max_depth: int = DEFAULT_MAX_DEPTH,
    min_prob: float = DEFAULT_MIN_PROB,
) -> SteeringPath | None:
    """Minimal-depth chain of allowed operations steering start onto target,
    or None when no such chain exists within the depth bound."""
    path, _ = _search(lab, start, target, max_depth, min_prob)
    return path


def total_reach_probability(
    lab: Laboratory,
    start: State,
    target: StateVector,
    protocol,
) -> float:
    """Probability that a protocol run from ``start`` ends on ``target``,
    summed exactly over the full outcome tree."""
    from . import protocols as _protocols

    tree = _protocols.enumerate_protocol(protocol, lab, start)
    return _protocols.leaf_mass(tree, target)


def nogo_verdict(
    lab: Laboratory,
    candidate: Operator,
    l_state: StateVector,
    d_state: StateVector,
    max_depth: int = DEFAULT_MAX_DEPTH,
    *,
    name: str = "candidate",
    outcome_label: str = "S",
    min_prob: float = DEFAULT_MIN_PROB,
) -> NoGoVerdict:
    """Adjoin {candidate, complement} to the lab and hunt for a steering
    path that realises the forbidden d->l transition.

    Raises ``PreconditionFailed`` unless the pair is orthogonal and d->l is
    declared forbidden.  ``violated=True`` means a witness path exists; with
    ``violated=False``, ``bound_reached`` distinguishes an exhausted search
    space (conclusive relative to the declared operations) from a depth cut.
    """
    if candidate.kind != "projector":
        raise CatlabError("the no-go candidate must be a projector")
    if candidate.space != lab.space:
        raise DimensionMismatch("candidate lives outside the laboratory space")
    if not check_conditions(lab, l_state, d_state):
        raise PreconditionFailed(
            "need orthogonal states with the d->l transition declared forbidden"
        )
    m = make_measurement(lab.space, [(outcome_label, candidate)])
    adjoined = name
    while adjoined in lab.measurements or adjoined in lab.unitaries:
        adjoined += "'"
    extended = lab.with_measurement(adjoined, m)
    path, bound = _search(extended, d_state, l_state, max_depth, min_prob)
    return NoGoVerdict(
        operator_name=name,
        violated=path is not None,
        witness=path,
        bound_reached=bound,
    )


def replay_path(lab: Laboratory, start: State, path: SteeringPath) -> tuple[float, State]:
    """Re-run a steering path step by step; returns (probability, final state).

    Used to audit witnesses: the product of the replayed branch
    probabilities must reproduce ``path.probability``.
    """
    state: State = start
    prob = 1.0
    for name, label in path.steps:
        if name in lab.measurements:
            records = outcome_distribution(lab.measurements[name], state)
            rec = next((r for r in records if r.label == label), None)
            if rec is None or rec.post_state is None:
                raise CatlabError(f"cannot replay step ({name!r}, {label!r})")
            prob *= rec.probability
            state = rec.post_state
        elif name in lab.unitaries:
            state = apply_unitary(lab.unitaries[name], state)
        else:
            raise CatlabError(f"operation {name!r} not in the laboratory")
    return prob, state


def verdict_to_json(v: NoGoVerdict) -> dict:
    doc: dict = {
        "operator": v.operator_name,
        "violated": v.violated,
        "bound_reached": v.bound_reached,
        "witness": None,
    }
    if v.witness is not None:
        doc["witness"] = {
            "steps": [
                {"operation": name, "outcome": label}
                for name, label in v.witness.steps
            ],
            "probability": v.witness.probability,
            "final_state": state_to_json(v.witness.final_state),
        }
    return doc
