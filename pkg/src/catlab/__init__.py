"""Projective measurements over forbidden transitions.

Build small labelled Hilbert spaces, declare which measurements and
unitaries a laboratory allows and which state transitions are forbidden,
then check whether a candidate superposition readout would let chained
measurements steer across a forbidden transition.  Includes exact outcome
enumeration, seeded Monte Carlo, source discrimination statistics, a
scenario file format and a CLI.
"""

from .catalog import (
    SCENARIO_NAMES,
    Scenario,
    build_scenario,
    cat_mixture,
    cat_plus,
    cat_minus,
    cat_space,
    chamber_mixture,
    composite_space,
    device_minus,
    device_plus,
    device_space,
    photon_mixture,
    photon_space,
    schroedinger_minus,
    schroedinger_plus,
    stone_bread_space,
    superposition_projector,
    x_minus,
    x_plus,
)
from .errors import (
    BadWeights,
    CatlabError,
    DepthCeiling,
    DimensionCeiling,
    DimensionMismatch,
    DisallowedOperation,
    NotInSpan,
    NotOrthogonal,
    NotProductSpace,
    ParseError,
    PreconditionFailed,
    UnknownScenario,
    ValidationError,
    ZeroVector,
)
from .jacobi import eigh, min_eigenvalue
from .lab import (
    Laboratory,
    NoGoVerdict,
    SteeringPath,
    check_conditions,
    find_steering_path,
    nogo_verdict,
    replay_path,
    state_key,
    total_reach_probability,
    verdict_to_json,
)
from .measure import (
    OutcomeRecord,
    ProjectiveMeasurement,
    make_measurement,
    measurement_from_states,
    outcome_distribution,
    sample_outcome,
)
from .protocols import (
    DiscriminationReport,
    MeasureStep,
    MonteCarloResult,
    OutcomeNode,
    OutcomeTree,
    ProtocolSpec,
    RepeatStep,
    StopIfStep,
    UnitaryStep,
    aggregate_leaves,
    chi_square_test,
    discriminate,
    enumerate_protocol,
    exact_distribution,
    leaf_mass,
    merge_histograms,
    run_monte_carlo,
    total_variation,
    tree_to_json,
)
from .qstate import (
    DensityMatrix,
    HilbertSpace,
    Operator,
    StateVector,
    apply_unitary,
    basis_state,
    canonical_state,
    format_state,
    identity_operator,
    make_mixture,
    make_state,
    orthogonal_in_span,
    overlap,
    overlap_probability,
    partial_trace,
    projector_from_state,
    pure_density,
    squared_overlap,
    states_match,
    tensor,
    tensor_space,
    unitary_operator,
)
from .rng import RandomStream
from .scenario import (
    ScenarioDoc,
    load_scenario,
    parse_scenario,
    parse_scenario_text,
    scenario_sha256,
    serialize_scenario,
    shipped_scenario_path,
)

__version__ = "0.1.0"

__all__ = [
    "BadWeights",
    "CatlabError",
    "DensityMatrix",
    "DepthCeiling",
    "DimensionCeiling",
    "DimensionMismatch",
    "DisallowedOperation",
    "DiscriminationReport",
    "HilbertSpace",
    "Laboratory",
    "MeasureStep",
    "MonteCarloResult",
    "NoGoVerdict",
    "NotInSpan",
    "NotOrthogonal",
    "NotProductSpace",
    "Operator",
    "OutcomeNode",
    "OutcomeRecord",
    "OutcomeTree",
    "ParseError",
    "PreconditionFailed",
    "ProjectiveMeasurement",
    "ProtocolSpec",
    "RandomStream",
    "RepeatStep",
    "SCENARIO_NAMES",
    "Scenario",
    "ScenarioDoc",
    "StateVector",
    "SteeringPath",
    "StopIfStep",
    "UnitaryStep",
    "UnknownScenario",
    "ValidationError",
    "ZeroVector",
    "aggregate_leaves",
    "apply_unitary",
    "basis_state",
    "build_scenario",
    "canonical_state",
    "cat_minus",
    "cat_mixture",
    "cat_plus",
    "cat_space",
    "chamber_mixture",
    "check_conditions",
    "chi_square_test",
    "composite_space",
    "device_minus",
    "device_plus",
    "device_space",
    "discriminate",
    "eigh",
    "enumerate_protocol",
    "exact_distribution",
    "find_steering_path",
    "format_state",
    "identity_operator",
    "leaf_mass",
    "load_scenario",
    "make_measurement",
    "make_mixture",
    "make_state",
    "measurement_from_states",
    "merge_histograms",
    "min_eigenvalue",
    "nogo_verdict",
    "orthogonal_in_span",
    "outcome_distribution",
    "overlap",
    "overlap_probability",
    "parse_scenario",
    "parse_scenario_text",
    "partial_trace",
    "photon_mixture",
    "photon_space",
    "projector_from_state",
    "pure_density",
    "replay_path",
    "run_monte_carlo",
    "sample_outcome",
    "scenario_sha256",
    "schroedinger_minus",
    "schroedinger_plus",
    "serialize_scenario",
    "shipped_scenario_path",
    "squared_overlap",
    "state_key",
    "states_match",
    "stone_bread_space",
    "superposition_projector",
    "tensor",
    "tensor_space",
    "total_reach_probability",
    "total_variation",
    "tree_to_json",
    "unitary_operator",
    "verdict_to_json",
    "x_minus",
    "x_plus",
]
