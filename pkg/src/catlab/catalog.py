"""Built-in scenarios.

Five laboratories ship with the package:

* ``cat`` - a two-level alive/dead system readable only in that basis, with
  the dead -> alive transition forbidden; the plus/minus basis is declared
  for discrimination experiments but is not an allowed operation.
* ``composite`` - a decaying two-level device tensored with the cat; the
  collective product-basis readout and a device-local plus/minus readout
  are allowed, the all-dead -> all-alive transition is forbidden.
* ``photon`` - linear polarisation: both the 0/1 and the diagonal basis are
  measurable and the 45-degree rotation (and its inverse) is available, so
  nothing here is forbidden.
* ``stone-bread`` - two classical configurations forbidden to convert in
  either direction.
* ``resurrection`` - the hypothetical cat laboratory where the equal-weight
  superposition readout exists as an allowed operation; running its repeat
  protocols shows how the forbidden transition would be amplified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import CatlabError, UnknownScenario
from .lab import Laboratory
from .measure import ProjectiveMeasurement, make_measurement, measurement_from_states
from .protocols import (
    MeasureStep,
    ProtocolSpec,
    RepeatStep,
    Step,
    StopIfStep,
    UnitaryStep,
)
from .qstate import (
    DensityMatrix,
    HilbertSpace,
    Operator,
    State,
    StateVector,
    basis_state,
    make_mixture,
    make_state,
    projector_from_state,
    tensor_space,
    unitary_operator,
)

SCENARIO_NAMES = ("cat", "composite", "photon", "stone-bread", "resurrection")


@dataclass(frozen=True, eq=False)
class Scenario:
    """A laboratory bundled with every named object declared around it."""

    name: str
    space: HilbertSpace
    states: Mapping[str, StateVector]
    mixtures: Mapping[str, DensityMatrix]
    measurements: Mapping[str, ProjectiveMeasurement]
    unitaries: Mapping[str, Operator]
    lab: Laboratory
    protocols: Mapping[str, ProtocolSpec] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", dict(self.states))
        object.__setattr__(self, "mixtures", dict(self.mixtures))
        object.__setattr__(self, "measurements", dict(self.measurements))
        object.__setattr__(self, "unitaries", dict(self.unitaries))
        object.__setattr__(self, "protocols", dict(self.protocols))
        clash = set(self.states) & set(self.mixtures)
        if clash:
            raise CatlabError(f"names declared as both state and mixture: {clash}")

    def initial(self, name: str) -> State:
        """Resolve a state or mixture name."""
        if name in self.states:
            return self.states[name]
        if name in self.mixtures:
            return self.mixtures[name]
        raise CatlabError(f"no state or mixture named {name!r}")


# ---------------------------------------------------------------------------
# spaces and states


def cat_space() -> HilbertSpace:
    return HilbertSpace(("alive", "dead"), name="cat")


def device_space() -> HilbertSpace:
    return HilbertSpace(("undecayed", "decayed"), name="device")


def composite_space() -> HilbertSpace:
    return tensor_space(device_space(), cat_space())


def photon_space() -> HilbertSpace:
    return HilbertSpace(("0", "1"), name="photon")


def stone_bread_space() -> HilbertSpace:
    return HilbertSpace(("stone", "bread"), name="pantry")


def cat_plus(space: HilbertSpace | None = None) -> StateVector:
    return make_state(space or cat_space(), [1, 1])


def cat_minus(space: HilbertSpace | None = None) -> StateVector:
    return make_state(space or cat_space(), [1, -1])


def cat_mixture(space: HilbertSpace | None = None) -> DensityMatrix:
    """The even alive/dead mixture."""
    space = space or cat_space()
    return make_mixture(
        [(0.5, basis_state(space, "alive")), (0.5, basis_state(space, "dead"))]
    )


def schroedinger_plus(space: HilbertSpace | None = None) -> StateVector:
    """(|undecayed, alive> + |decayed, dead>)/sqrt(2)."""
    return make_state(space or composite_space(), [1, 0, 0, 1])


def schroedinger_minus(space: HilbertSpace | None = None) -> StateVector:
    return make_state(space or composite_space(), [1, 0, 0, -1])


def chamber_mixture(space: HilbertSpace | None = None) -> DensityMatrix:
    """Even mixture of the two correlated product configurations."""
    space = space or composite_space()
    return make_mixture(
        [
            (0.5, make_state(space, [1, 0, 0, 0])),
            (0.5, make_state(space, [0, 0, 0, 1])),
        ]
    )


def device_plus() -> StateVector:
    return make_state(device_space(), [1, 1])


def device_minus() -> StateVector:
    return make_state(device_space(), [1, -1])


def x_plus(space: HilbertSpace | None = None) -> StateVector:
    return make_state(space or photon_space(), [1, 1])


def x_minus(space: HilbertSpace | None = None) -> StateVector:
    return make_state(space or photon_space(), [1, -1])


def photon_mixture(space: HilbertSpace | None = None) -> DensityMatrix:
    space = space or photon_space()
    return make_mixture(
        [(0.5, basis_state(space, "0")), (0.5, basis_state(space, "1"))]
    )


def superposition_projector(space: HilbertSpace, a: complex, b: complex) -> Operator:
    """Rank-one projector onto a*|first> + b*|second> of a two-level space."""
    if space.dim != 2:
        raise CatlabError("superposition_projector expects a two-level space")
    return projector_from_state(make_state(space, [a, b]))


# ---------------------------------------------------------------------------
# scenario builders


def _resurrect_protocol(k: int) -> ProtocolSpec:
    body: tuple[Step, ...] = (
        MeasureStep("pm"),
        MeasureStep("basis"),
        StopIfStep("alive"),
    )
    return ProtocolSpec((RepeatStep(body, k),))


def _cat() -> Scenario:
    space = cat_space()
    alive = basis_state(space, "alive")
    dead = basis_state(space, "dead")
    plus = cat_plus(space)
    minus = cat_minus(space)
    basis_m = measurement_from_states([alive, dead], ["alive", "dead"])
    pm_m = measurement_from_states([plus, minus], ["+", "-"])
    lab = Laboratory(space, {"basis": basis_m}, {}, ((dead, alive),))
    return Scenario(
        name="cat",
        space=space,
        states={"alive": alive, "dead": dead, "cat_plus": plus, "cat_minus": minus},
        mixtures={"rho_cat": cat_mixture(space)},
        measurements={"basis": basis_m, "plusminus": pm_m},
        unitaries={},
        lab=lab,
        protocols={"observe": ProtocolSpec((MeasureStep("basis"),))},
    )


def _composite() -> Scenario:
    space = composite_space()
    names = space.labels  # undecayed/decayed x alive/dead, kron order
    prod_states = {lab: basis_state(space, lab) for lab in names}
    psi_plus = schroedinger_plus(space)
    psi_minus = schroedinger_minus(space)
    collective = measurement_from_states(list(prod_states.values()), list(names))
    sch_plus = make_measurement(
        space, [("Ψ+", projector_from_state(psi_plus))]
    )
    # device-local plus/minus readout: |dev+-><dev+-| (x) identity
    eye2 = np.eye(2)
    dev_p = np.kron(projector_from_state(device_plus()).mat, eye2)
    dev_m = np.kron(projector_from_state(device_minus()).mat, eye2)
    device_pm = make_measurement(
        space,
        [
            ("+", Operator(space, dev_p, "projector")),
            ("-", Operator(space, dev_m, "projector")),
        ],
    )
    dd = prod_states["decayed⊗dead"]
    ua = prod_states["undecayed⊗alive"]
    lab = Laboratory(
        space,
        {"collective": collective, "device_pm": device_pm},
        {},
        ((dd, ua),),
    )
    states = {
        "ua": ua,
        "ud": prod_states["undecayed⊗dead"],
        "da": prod_states["decayed⊗alive"],
        "dd": dd,
        "psi_plus": psi_plus,
        "psi_minus": psi_minus,
    }
    return Scenario(
        name="composite",
        space=space,
        states=states,
        mixtures={"rho_s": chamber_mixture(space)},
        measurements={
            "collective": collective,
            "device_pm": device_pm,
            "sch_plus": sch_plus,
        },
        unitaries={},
        lab=lab,
        protocols={"collective_observe": ProtocolSpec((MeasureStep("collective"),))},
    )


def _photon() -> Scenario:
    space = photon_space()
    z0 = basis_state(space, "0")
    z1 = basis_state(space, "1")
    xp = x_plus(space)
    xm = x_minus(space)
    zbasis = measurement_from_states([z0, z1], ["0", "1"])
    xbasis = measurement_from_states([xp, xm], ["+", "-"])
    c = np.sqrt(0.5)
    rot = unitary_operator(space, np.array([[c, -c], [c, c]]))
    rot_inv = unitary_operator(space, np.array([[c, c], [-c, c]]))
    lab = Laboratory(
        space,
        {"zbasis": zbasis, "xbasis": xbasis},
        {"rotate45": rot, "rotate45_inv": rot_inv},
        (),
    )
    return Scenario(
        name="photon",
        space=space,
        states={"z0": z0, "z1": z1, "x_plus": xp, "x_minus": xm},
        mixtures={"rho_ph": photon_mixture(space)},
        measurements={"zbasis": zbasis, "xbasis": xbasis},
        unitaries={"rotate45": rot, "rotate45_inv": rot_inv},
        lab=lab,
        protocols={
            "through_straight": ProtocolSpec((MeasureStep("zbasis"),)),
            "through_rotated": ProtocolSpec(
                (UnitaryStep("rotate45_inv"), MeasureStep("zbasis"))
            ),
        },
    )


def _stone_bread() -> Scenario:
    space = stone_bread_space()
    stone = basis_state(space, "stone")
    bread = basis_state(space, "bread")
    plus = make_state(space, [1, 1])
    minus = make_state(space, [1, -1])
    basis_m = measurement_from_states([stone, bread], ["stone", "bread"])
    mix_m = measurement_from_states([plus, minus], ["+", "-"])
    lab = Laboratory(
        space, {"basis": basis_m}, {}, ((stone, bread), (bread, stone))
    )
    return Scenario(
        name="stone-bread",
        space=space,
        states={"stone": stone, "bread": bread, "mix_plus": plus, "mix_minus": minus},
        mixtures={},
        measurements={"basis": basis_m, "mixbasis": mix_m},
        unitaries={},
        lab=lab,
        protocols={"observe": ProtocolSpec((MeasureStep("basis"),))},
    )


def _resurrection() -> Scenario:
    space = cat_space()
    alive = basis_state(space, "alive")
    dead = basis_state(space, "dead")
    s = cat_plus(space)
    s_perp = cat_minus(space)
    basis_m = measurement_from_states([alive, dead], ["alive", "dead"])
    pm_m = make_measurement(space, [("S", projector_from_state(s))])
    lab = Laboratory(
        space, {"pm": pm_m, "basis": basis_m}, {}, ((dead, alive),)
    )
    return Scenario(
        name="resurrection",
        space=space,
        states={"alive": alive, "dead": dead, "s": s, "s_perp": s_perp},
        mixtures={"rho_cat": cat_mixture(space)},
        measurements={"pm": pm_m, "basis": basis_m},
        unitaries={},
        lab=lab,
        protocols={
            "resurrect1": _resurrect_protocol(1),
            "resurrect3": _resurrect_protocol(3),
            "resurrect10": _resurrect_protocol(10),
        },
    )


_BUILDERS = {
    "cat": _cat,
    "composite": _composite,
    "photon": _photon,
    "stone-bread": _stone_bread,
    "resurrection": _resurrection,
}


def build_scenario(name: str) -> Scenario:
    """Construct a built-in scenario by name."""
    builder = _BUILDERS.get(name)
    if builder is None:
        raise UnknownScenario(
            f"unknown scenario {name!r}; available: {', '.join(SCENARIO_NAMES)}"
        )
    return builder()
