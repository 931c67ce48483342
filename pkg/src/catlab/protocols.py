"""Protocol programs over a laboratory.

A protocol is a list of steps: apply a named measurement, apply a named
unitary, repeat a block, or stop the current branch when the last outcome
label matched.  Protocols can be expanded into an exact outcome tree, run
as seeded Monte Carlo trials, or used to compare two state-preparation
sources through one measurement.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.stats import chi2

from .errors import CatlabError, DepthCeiling, DimensionMismatch, DisallowedOperation
from .lab import Laboratory, state_key
from .measure import PRUNE_TOL, ProjectiveMeasurement, outcome_distribution
from .qstate import (
    DensityMatrix,
    State,
    StateVector,
    apply_unitary,
    canonical_state,
    format_state,
    states_match,
)
from .rng import RandomStream

MAX_UNROLLED_STEPS = 64
TRIALS_PER_BLOCK = 4096  # fixed partition unit; stream id = block index
CHI2_MIN_EXPECTED = 5.0
LEAF_SUM_TOL = 1e-8
CHILD_SUM_TOL = 1e-9


# ---------------------------------------------------------------------------
# protocol programs


@dataclass(frozen=True)
class MeasureStep:
    measurement: str


@dataclass(frozen=True)
class UnitaryStep:
    unitary: str


@dataclass(frozen=True)
class StopIfStep:
    """Halt the branch when the last outcome label equals ``outcome``."""

    outcome: str


@dataclass(frozen=True)
class RepeatStep:
    body: tuple["Step", ...]
    count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "body", tuple(self.body))
        if self.count < 0:
            raise CatlabError("repeat count must be >= 0")


Step = Union[MeasureStep, UnitaryStep, StopIfStep, RepeatStep]


@dataclass(frozen=True)
class ProtocolSpec:
    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))

    def unrolled(self) -> tuple[Step, ...]:
        """Flatten repeats; raises ``DepthCeiling`` past MAX_UNROLLED_STEPS."""
        out: list[Step] = []
        _unroll(self.steps, out)
        if len(out) > MAX_UNROLLED_STEPS:
            raise DepthCeiling(
                f"protocol unrolls to {len(out)} steps (max {MAX_UNROLLED_STEPS})"
            )
        return tuple(out)


def _unroll(steps: Sequence[Step], out: list[Step]) -> None:
    for step in steps:
        if isinstance(step, RepeatStep):
            for _ in range(step.count):
                _unroll(step.body, out)
        elif isinstance(step, (MeasureStep, UnitaryStep, StopIfStep)):
            out.append(step)
        else:
            raise CatlabError(f"unknown protocol step {step!r}")
        if len(out) > MAX_UNROLLED_STEPS:
            raise DepthCeiling(
                f"protocol unrolls past {MAX_UNROLLED_STEPS} steps"
            )


def _resolve_steps(steps: Sequence[Step], lab: Laboratory) -> None:
    for step in steps:
        if isinstance(step, MeasureStep) and step.measurement not in lab.measurements:
            raise DisallowedOperation(
                f"measurement {step.measurement!r} is not allowed in this laboratory"
            )
        if isinstance(step, UnitaryStep) and step.unitary not in lab.unitaries:
            raise DisallowedOperation(
                f"unitary {step.unitary!r} is not allowed in this laboratory"
            )


# ---------------------------------------------------------------------------
# exact enumeration


@dataclass(slots=True)
class OutcomeNode:
    """One branch point of the exact outcome tree.

    ``operation``/``label`` describe the edge from the parent (both None at
    the root; ``label`` is None for unitary edges).  ``probability`` is the
    branch probability, ``cumulative`` the product along the path.
    """

    operation: str | None
    label: str | None
    probability: float
    cumulative: float
    state: State
    children: list["OutcomeNode"] = field(default_factory=list)
    stopped: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class OutcomeTree:
    root: OutcomeNode
    pruned_mass: float

    def leaves(self) -> list[OutcomeNode]:
        out: list[OutcomeNode] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                out.append(node)
            else:
                stack.extend(reversed(node.children))
        return out

    def n_nodes(self) -> int:
        count = 0
        stack = [self.root]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children)
        return count


def enumerate_protocol(
    protocol: ProtocolSpec, lab: Laboratory, initial: State
) -> OutcomeTree:
    """Exact outcome tree of a protocol from an initial state.

    Branches with probability below ``PRUNE_TOL`` are dropped; their mass is
    accounted in ``tree.pruned_mass``.  Pure states are kept in canonical
    phase throughout so identical branches share identical payloads.
    """
    if initial.space != lab.space:
        raise DimensionMismatch("initial state lives outside the laboratory space")
    steps = protocol.unrolled()
    _resolve_steps(steps, lab)
    root_state = canonical_state(initial) if isinstance(initial, StateVector) else initial
    root = OutcomeNode(None, None, 1.0, 1.0, root_state)
    pruned = 0.0
    cache: dict = {}
    # (node, step index, last outcome label, dedup key of node.state)
    stack = [(root, 0, None, state_key(root_state))]
    while stack:
        node, i, last, key = stack.pop()
        if i >= len(steps):
            continue
        step = steps[i]
        if isinstance(step, StopIfStep):
            if last is not None and last == step.outcome:
                node.stopped = True
            else:
                stack.append((node, i + 1, last, key))
            continue
        if isinstance(step, UnitaryStep):
            ckey = (step.unitary, key)
            hit = cache.get(ckey)
            if hit is None:
                nxt = apply_unitary(lab.unitaries[step.unitary], node.state)
                if isinstance(nxt, StateVector):
                    nxt = canonical_state(nxt)
                hit = (nxt, state_key(nxt))
                cache[ckey] = hit
            nxt, nkey = hit
            child = OutcomeNode(step.unitary, None, 1.0, node.cumulative, nxt)
            node.children.append(child)
            stack.append((child, i + 1, last, nkey))
            continue
        # measurement step; transition tables memoised per (name, state)
        name = step.measurement
        ckey = (name, key)
        branches = cache.get(ckey)
        if branches is None:
            branches = []
            for rec in outcome_distribution(lab.measurements[name], node.state):
                if rec.probability < PRUNE_TOL:
                    branches.append((rec.label, rec.probability, None, None))
                    continue
                post = rec.post_state
                if isinstance(post, StateVector):
                    post = canonical_state(post)
                branches.append((rec.label, rec.probability, post, state_key(post)))
            branches = tuple(branches)
            cache[ckey] = branches
        cum = node.cumulative
        for label, p, post, pkey in branches:
            if post is None:
                pruned += cum * p
                continue
            child = OutcomeNode(name, label, p, cum * p, post)
            node.children.append(child)
            stack.append((child, i + 1, label, pkey))
    return OutcomeTree(root, pruned)


def leaf_mass(tree: OutcomeTree, target: StateVector) -> float:
    """Total probability of leaves whose state matches ``target``."""
    return sum(
        leaf.cumulative for leaf in tree.leaves() if states_match(leaf.state, target)
    )


def aggregate_leaves(tree: OutcomeTree) -> list[tuple[State, float]]:
    """Leaf masses merged by canonical final state, in first-leaf order."""
    order: list[tuple] = []
    acc: dict[tuple, tuple[State, float]] = {}
    for leaf in tree.leaves():
        k = state_key(leaf.state)
        if k in acc:
            st, mass = acc[k]
            acc[k] = (st, mass + leaf.cumulative)
        else:
            order.append(k)
            acc[k] = (leaf.state, leaf.cumulative)
    return [acc[k] for k in order]


def tree_to_json(tree: OutcomeTree) -> dict:
    def node_doc(node: OutcomeNode) -> dict:
        return {
            "operation": node.operation,
            "label": node.label,
            "probability": node.probability,
            "cumulative": node.cumulative,
            "state": format_state(node.state),
            "stopped": node.stopped,
            "children": [node_doc(c) for c in node.children],
        }

    return {"pruned_mass": tree.pruned_mass, "root": node_doc(tree.root)}


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass
class MonteCarloResult:
    """Histogram of final states over ``n`` seeded trials."""

    n: int
    seed: int
    bins: dict[tuple, tuple[State, int]]

    def rows(self) -> list[tuple[State, int, float]]:
        """(state, count, frequency) sorted by dedup key for stable output."""
        out = []
        for k in sorted(self.bins):
            st, c = self.bins[k]
            out.append((st, c, c / self.n if self.n else 0.0))
        return out

    def frequency(self, target: StateVector) -> float:
        total = sum(c for st, c in self.bins.values() if states_match(st, target))
        return total / self.n if self.n else 0.0


def merge_histograms(a: MonteCarloResult, b: MonteCarloResult) -> MonteCarloResult:
    """Associative merge of partial histograms (same seed, disjoint blocks)."""
    if a.seed != b.seed:
        raise CatlabError("cannot merge histograms from different seeds")
    bins = dict(a.bins)
    for k, (st, c) in b.bins.items():
        if k in bins:
            bins[k] = (bins[k][0], bins[k][1] + c)
        else:
            bins[k] = (st, c)
    return MonteCarloResult(a.n + b.n, a.seed, bins)


def run_monte_carlo(
    protocol: ProtocolSpec,
    lab: Laboratory,
    initial: State,
    n: int,
    seed: int,
) -> MonteCarloResult:
    """Run ``n`` independent seeded trials of a protocol.

    Trials are partitioned into fixed blocks of ``TRIALS_PER_BLOCK``; block
    ``j`` draws from stream ``(seed, j)`` with a fixed per-trial stride, so
    the histogram does not depend on how blocks would be spread over
    workers.  Transition tables are memoised per (operation, state), which
    keeps the inner loop at one dictionary lookup and one uniform per step.
    """
    if n < 0:
        raise CatlabError("trial count must be >= 0")
    if initial.space != lab.space:
        raise DimensionMismatch("initial state lives outside the laboratory space")
    steps = protocol.unrolled()
    _resolve_steps(steps, lab)
    n_measure = sum(1 for s in steps if isinstance(s, MeasureStep))
    start: State = (
        canonical_state(initial) if isinstance(initial, StateVector) else initial
    )
    start_key = state_key(start)

    # transition tables: key -> (next keys, cumulative probs, labels)
    states: dict[tuple, State] = {start_key: start}
    trans: dict[tuple, tuple[list[tuple], list[float], list[str]]] = {}
    uni: dict[tuple, tuple] = {}

    def measure_table(name: str, key: tuple):
        tkey = (name, key)
        tab = trans.get(tkey)
        if tab is None:
            recs = outcome_distribution(lab.measurements[name], states[key])
            keys: list[tuple] = []
            cums: list[float] = []
            labels: list[str] = []
            acc = 0.0
            for rec in recs:
                if rec.probability < PRUNE_TOL:
                    continue
                post = rec.post_state
                if isinstance(post, StateVector):
                    post = canonical_state(post)
                pk = state_key(post)
                states.setdefault(pk, post)
                acc += rec.probability
                keys.append(pk)
                cums.append(acc)
                labels.append(rec.label)
            tab = (keys, cums, labels)
            trans[tkey] = tab
        return tab

    def unitary_next(name: str, key: tuple) -> tuple:
        tkey = (name, key)
        nk = uni.get(tkey)
        if nk is None:
            post = apply_unitary(lab.unitaries[name], states[key])
            if isinstance(post, StateVector):
                post = canonical_state(post)
            nk = state_key(post)
            states.setdefault(nk, post)
            uni[tkey] = nk
        return nk

    bins: dict[tuple, int] = {}
    stride = max(n_measure, 1)
    done = 0
    block_index = 0
    while done < n:
        block_n = min(TRIALS_PER_BLOCK, n - done)
        u = RandomStream(seed, block_index).uniforms(block_n * stride)
        for t in range(block_n):
            base = t * stride
            draw = 0
            key = start_key
            last: str | None = None
            for step in steps:
                if isinstance(step, StopIfStep):
                    if last is not None and last == step.outcome:
                        break
                    continue
                if isinstance(step, UnitaryStep):
                    key = unitary_next(step.unitary, key)
                    continue
                keys, cums, labels = measure_table(step.measurement, key)
                if not keys:
                    raise CatlabError("ran out of probability mass mid-trial")
                idx = bisect_right(cums, u[base + draw])
                draw += 1
                if idx >= len(keys):
                    idx = len(keys) - 1
                key = keys[idx]
                last = labels[idx]
            bins[key] = bins.get(key, 0) + 1
        done += block_n
        block_index += 1
    return MonteCarloResult(n, seed, {k: (states[k], c) for k, c in bins.items()})


# ---------------------------------------------------------------------------
# discrimination


@dataclass(frozen=True)
class DiscriminationReport:
    """Exact and sampled comparison of two sources through one measurement.

    ``p_value`` is a chi-square test of source B's sampled counts against
    source A's exact distribution; small values mean the two sources are
    statistically distinguishable by this measurement.
    """

    measurement: str
    labels: tuple[str, ...]
    dist_a: Mapping[str, float]
    dist_b: Mapping[str, float]
    total_variation: float
    n_trials: int
    seed: int
    freq_a: Mapping[str, float]
    freq_b: Mapping[str, float]
    chi_square: float
    chi_square_df: int
    p_value: float

    def to_json(self) -> dict:
        return {
            "measurement": self.measurement,
            "total_variation": self.total_variation,
            "n_trials": self.n_trials,
            "seed": self.seed,
            "outcomes": [
                {
                    "label": lab,
                    "exact_a": self.dist_a[lab],
                    "exact_b": self.dist_b[lab],
                    "freq_a": self.freq_a[lab],
                    "freq_b": self.freq_b[lab],
                }
                for lab in self.labels
            ],
            "chi_square": {
                "statistic": self.chi_square,
                "df": self.chi_square_df,
                "p_value": self.p_value,
            },
        }

    def to_csv_rows(self) -> list[list]:
        rows = [["source", "label", "exact_p", "empirical_freq", "n"]]
        for src, dist, freq in (("A", self.dist_a, self.freq_a), ("B", self.dist_b, self.freq_b)):
            for lab in self.labels:
                rows.append([src, lab, repr(dist[lab]), repr(freq[lab]), self.n_trials])
        return rows


def total_variation(dist_a: Mapping[str, float], dist_b: Mapping[str, float]) -> float:
    """Total variation distance between two label distributions."""
    labels = set(dist_a) | set(dist_b)
    return 0.5 * sum(abs(dist_a.get(l, 0.0) - dist_b.get(l, 0.0)) for l in labels)


def exact_distribution(m: ProjectiveMeasurement, x: State) -> dict[str, float]:
    return {rec.label: rec.probability for rec in outcome_distribution(m, x)}


def _sample_counts(
    probs: Sequence[float], n: int, stream: RandomStream
) -> np.ndarray:
    cum = np.cumsum(np.asarray(probs, dtype=np.float64))
    u = stream.uniforms(n)
    idx = np.searchsorted(cum, u, side="right")
    idx = np.minimum(idx, len(cum) - 1)
    return np.bincount(idx, minlength=len(cum))


def chi_square_test(
    counts: Mapping[str, int], expected: Mapping[str, float], n: int
) -> tuple[float, int, float]:
    """Pearson chi-square of observed counts against expected probabilities.

    Labels whose expected count falls below ``CHI2_MIN_EXPECTED`` are merged
    into one catch-all bin (labelled like the measurement complement).
    Returns (statistic, degrees of freedom, p-value).
    """
    exp: dict[str, float] = {}
    obs: dict[str, int] = {}
    catch = "⊥"
    for label, p in expected.items():
        e = n * p
        target = label if e >= CHI2_MIN_EXPECTED else catch
        exp[target] = exp.get(target, 0.0) + e
        obs[target] = obs.get(target, 0) + int(counts.get(label, 0))
    stat = 0.0
    df = -1
    for label, e in exp.items():
        o = obs.get(label, 0)
        if e <= 0.0:
            if o > 0:
                return math.inf, max(df, 0), 0.0
            continue  # empty bin carries no information
        stat += (o - e) ** 2 / e
        df += 1
    if df <= 0:
        return stat, max(df, 0), 1.0 if stat == 0.0 else 0.0
    return stat, df, float(chi2.sf(stat, df))


def discriminate(
    source_a: State,
    source_b: State,
    m: ProjectiveMeasurement,
    n: int,
    seed: int,
    *,
    name: str = "measurement",
) -> DiscriminationReport:
    """Compare two sources through one measurement, exactly and by sampling.

    Exact Born distributions give the total variation distance; ``n``
    seeded draws per source (streams 0 and 1 under ``seed``) give the
    empirical frequencies and the chi-square p-value of B against A.
    """
    if n < 1:
        raise CatlabError("discrimination needs at least one trial")
    dist_a = exact_distribution(m, source_a)
    dist_b = exact_distribution(m, source_b)
    labels = m.labels
    tv = total_variation(dist_a, dist_b)
    pa = [dist_a[l] for l in labels]
    pb = [dist_b[l] for l in labels]
    counts_a = _sample_counts(pa, n, RandomStream(seed, 0))
    counts_b = _sample_counts(pb, n, RandomStream(seed, 1))
    freq_a = {l: int(counts_a[i]) / n for i, l in enumerate(labels)}
    freq_b = {l: int(counts_b[i]) / n for i, l in enumerate(labels)}
    stat, df, p = chi_square_test(
        {l: int(counts_b[i]) for i, l in enumerate(labels)}, dist_a, n
    )
    return DiscriminationReport(
        measurement=name,
        labels=labels,
        dist_a=dist_a,
        dist_b=dist_b,
        total_variation=tv,
        n_trials=n,
        seed=seed,
        freq_a=freq_a,
        freq_b=freq_b,
        chi_square=stat,
        chi_square_df=df,
        p_value=p,
    )
