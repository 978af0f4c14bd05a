"""Inertia estimation, always-on/transient partition, and block clustering.

The reduced model drives a single center-of-inertia swing state with
aggregated governor/turbine blocks. Always-on units cluster by
(model_type, deadband quantized to 1 mHz); gains and headrooms add exactly
within a cluster, time constants aggregate by capacity-weighted mean.
Shoulder/peak units stay as singleton blocks so commitment changes touch
exactly one block.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ValidationError, ZeroBase
from .fleet import (
    Fleet,
    ModelType,
    PARAMS_FOR_MODEL,
    TurbineParams,
    Unit,
    validate_fleet,
)

DEADBAND_QUANTUM_HZ = 0.001


@dataclass(frozen=True)
class InertiaEstimate:
    h_sys_s: float
    s_base_mva: float
    kinetic_energy_mws: float
    contributing_unit_ids: tuple[str, ...]


@dataclass(frozen=True)
class ResponderBlock:
    label: str
    model_type: ModelType
    gain_pu: float           # sum of S_i/(R_i*s_base) over members
    deadband_hz: float
    headroom_up_pu: float    # on s_base
    headroom_down_pu: float
    turbine_params: TurbineParams
    member_unit_ids: tuple[str, ...]
    activation_delay_s: float = 0.0

    @property
    def n_states(self) -> int:
        return 1 if self.model_type is ModelType.SYNTHETIC else 2


@dataclass(frozen=True)
class ReducedModel:
    inertia: InertiaEstimate
    blocks: tuple[ResponderBlock, ...]
    damping_pu: float   # D*load/s_base
    f0: float

    @property
    def s_base_mva(self) -> float:
        return self.inertia.s_base_mva

    @property
    def n_states(self) -> int:
        return 1 + sum(b.n_states for b in self.blocks)


def resolve_s_base(fleet: Fleet) -> float:
    """System MVA base: the configured override, else online synchronous MVA."""
    if fleet.system.s_base_mva is not None:
        if fleet.system.s_base_mva <= 0:
            raise ZeroBase("configured s_base_mva must be positive")
        return fleet.system.s_base_mva
    base = sum(u.rated_mva for u in fleet.online_units if u.is_synchronous)
    if base <= 0:
        base = sum(u.rated_mva for u in fleet.online_units)
    if base <= 0:
        base = fleet.system.load_mw
    if base <= 0:
        raise ZeroBase("no online capacity or load to derive an MVA base from")
    return base


def estimate_system_inertia(fleet: Fleet) -> InertiaEstimate:
    """Aggregate H on the system base from the current commitment.

    Synchronous units contribute H_i*S_i; inverter-based units contribute
    only a configured synthetic inertia (turbine_params.h_synth_s).
    """
    s_base = resolve_s_base(fleet)
    kinetic = 0.0
    ids: list[str] = []
    for u in fleet.online_units:
        if u.is_synchronous:
            h = u.inertia_h_s
        elif u.model_type is ModelType.SYNTHETIC:
            h = u.turbine_params.h_synth_s
        else:
            h = 0.0
        if h > 0:
            kinetic += h * u.rated_mva
            ids.append(u.id)
    return InertiaEstimate(
        h_sys_s=kinetic / s_base,
        s_base_mva=s_base,
        kinetic_energy_mws=kinetic,
        contributing_unit_ids=tuple(ids),
    )


def partition_fleet(fleet: Fleet) -> tuple[tuple[Unit, ...], tuple[Unit, ...]]:
    """Split online governor-bearing units into (always_on, transient)."""
    always_on = tuple(u for u in fleet.online_governed_units if u.always_on)
    transient = tuple(u for u in fleet.online_governed_units if not u.always_on)
    return always_on, transient


def _db_key(db_hz: float) -> int:
    """Deadband quantized to integer mHz (the clustering key)."""
    return round(db_hz * 1000.0)


def _weighted_params(units: list[Unit], model: ModelType) -> TurbineParams:
    cls = PARAMS_FOR_MODEL[model]
    total = sum(u.rated_mva for u in units)
    values = {}
    for f in fields(cls):
        values[f.name] = (
            sum(getattr(u.turbine_params, f.name) * u.rated_mva for u in units) / total
        )
    return cls(**values)


def singleton_block(unit: Unit, s_base: float) -> ResponderBlock:
    """One unit as its own block, parameters taken verbatim."""
    if s_base <= 0:
        raise ZeroBase("s_base must be positive")
    return ResponderBlock(
        label=unit.id,
        model_type=unit.model_type,
        gain_pu=unit.rated_mva / (unit.droop_pu * s_base),
        deadband_hz=unit.deadband_hz,
        headroom_up_pu=unit.headroom_up_mw / s_base,
        headroom_down_pu=unit.headroom_down_mw / s_base,
        turbine_params=unit.turbine_params,
        member_unit_ids=(unit.id,),
    )


def cluster_always_on(units, s_base: float) -> list[ResponderBlock]:
    """Group by (model_type, quantized deadband); gains and headrooms add."""
    if s_base <= 0:
        raise ZeroBase("s_base must be positive")
    groups: dict[tuple[str, int], list[Unit]] = {}
    for u in units:
        key = (u.model_type.value, _db_key(u.deadband_hz))
        groups.setdefault(key, []).append(u)
    blocks = []
    for key in sorted(groups):
        members = groups[key]
        model = ModelType(key[0])
        db = key[1] / 1000.0  # exact reconstruction of the quantized value
        blocks.append(
            ResponderBlock(
                label=f"{model.value}@{key[1]}mHz",
                model_type=model,
                gain_pu=sum(u.rated_mva / (u.droop_pu * s_base) for u in members),
                deadband_hz=db,
                headroom_up_pu=sum(u.headroom_up_mw for u in members) / s_base,
                headroom_down_pu=sum(u.headroom_down_mw for u in members) / s_base,
                turbine_params=_weighted_params(members, model),
                member_unit_ids=tuple(u.id for u in members),
            )
        )
    return blocks


def build_reduced_model(fleet: Fleet) -> ReducedModel:
    """Fast-assessment model: clustered always-on blocks + singleton transients."""
    diags = validate_fleet(fleet)
    if diags:
        raise ValidationError("; ".join(str(d) for d in diags))
    inertia = estimate_system_inertia(fleet)
    s_base = inertia.s_base_mva
    always_on, transient = partition_fleet(fleet)
    blocks = tuple(cluster_always_on(always_on, s_base)) + tuple(
        singleton_block(u, s_base) for u in transient
    )
    damping_pu = fleet.system.load_damping_pu * fleet.system.load_mw / s_base
    return ReducedModel(
        inertia=inertia,
        blocks=blocks,
        damping_pu=damping_pu,
        f0=fleet.system.f0,
    )
