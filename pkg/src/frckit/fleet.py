"""System and unit data model, fleet-file ingestion, and synthetic fleets.

A fleet file is a UTF-8 JSON document with top-level ``system`` and ``units``
keys whose fields match the dataclasses below verbatim (snake_case). Unknown
keys are rejected with their path named. Fleet values are immutable; all
operations return new snapshots.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Union

import numpy as np

from .errors import InvalidSpec, ParseError, UnknownUnit, ValidationError


class Technology(str, Enum):
    STEAM = "steam"
    GAS = "gas"
    HYDRO = "hydro"
    NUCLEAR = "nuclear"
    WIND = "wind"
    SOLAR = "solar"
    STORAGE = "storage"


class ModelType(str, Enum):
    STEAM_REHEAT = "STEAM_REHEAT"
    GAS_CT = "GAS_CT"
    HYDRO = "HYDRO"
    SYNTHETIC = "SYNTHETIC"
    NONE = "NONE"


SYNCHRONOUS_TECH = frozenset(
    {Technology.STEAM, Technology.GAS, Technology.HYDRO, Technology.NUCLEAR}
)

# model assumed when a fleet file omits model_type
DEFAULT_MODEL = {
    Technology.STEAM: ModelType.STEAM_REHEAT,
    Technology.GAS: ModelType.GAS_CT,
    Technology.HYDRO: ModelType.HYDRO,
    Technology.NUCLEAR: ModelType.NONE,
    Technology.WIND: ModelType.NONE,
    Technology.SOLAR: ModelType.NONE,
    Technology.STORAGE: ModelType.NONE,
}


# ---- turbine parameter records --------------------------------------------

@dataclass(frozen=True)
class SteamReheatParams:
    t_g_s: float = 0.2   # governor servo
    t_r_s: float = 8.0   # reheat time constant
    f_h: float = 0.3     # high-pressure power fraction


@dataclass(frozen=True)
class GasCtParams:
    t_g_s: float = 0.5
    t_c_s: float = 0.4   # combustor/turbine lag


@dataclass(frozen=True)
class HydroParams:
    t_g_s: float = 0.5
    t_w_s: float = 1.0   # water starting time


@dataclass(frozen=True)
class SyntheticParams:
    t_inv_s: float = 0.05   # inverter response lag
    h_synth_s: float = 0.0  # synthetic inertia on rated MVA, 0 = none


@dataclass(frozen=True)
class NoGovernorParams:
    pass


TurbineParams = Union[
    SteamReheatParams, GasCtParams, HydroParams, SyntheticParams, NoGovernorParams
]

PARAMS_FOR_MODEL = {
    ModelType.STEAM_REHEAT: SteamReheatParams,
    ModelType.GAS_CT: GasCtParams,
    ModelType.HYDRO: HydroParams,
    ModelType.SYNTHETIC: SyntheticParams,
    ModelType.NONE: NoGovernorParams,
}


# ---- core records ----------------------------------------------------------

@dataclass(frozen=True)
class SystemParams:
    load_mw: float
    load_damping_pu: float
    f0: float = 60.0
    s_base_mva: float | None = None  # None: total online synchronous MVA
    ufls_first_stage_hz: float = 59.5


@dataclass(frozen=True)
class Unit:
    id: str
    technology: Technology
    rated_mva: float
    pgen_mw: float
    pmax_mw: float
    model_type: ModelType
    pmin_mw: float = 0.0
    inertia_h_s: float = 0.0
    droop_pu: float = 0.05
    deadband_hz: float = 0.0
    turbine_params: TurbineParams | None = None
    status: str = "on"
    always_on: bool = False

    def __post_init__(self):
        if self.turbine_params is None:
            object.__setattr__(
                self, "turbine_params", PARAMS_FOR_MODEL[self.model_type]()
            )

    @property
    def is_on(self) -> bool:
        return self.status == "on"

    @property
    def has_governor(self) -> bool:
        return self.model_type != ModelType.NONE

    @property
    def is_synchronous(self) -> bool:
        return self.technology in SYNCHRONOUS_TECH

    @property
    def headroom_up_mw(self) -> float:
        return self.pmax_mw - self.pgen_mw

    @property
    def headroom_down_mw(self) -> float:
        return self.pgen_mw - self.pmin_mw


@dataclass(frozen=True)
class Fleet:
    system: SystemParams
    units: tuple[Unit, ...]

    def unit(self, unit_id: str) -> Unit:
        for u in self.units:
            if u.id == unit_id:
                return u
        raise UnknownUnit(unit_id)

    def has_unit(self, unit_id: str) -> bool:
        return any(u.id == unit_id for u in self.units)

    @property
    def online_units(self) -> tuple[Unit, ...]:
        return tuple(u for u in self.units if u.is_on)

    @property
    def online_governed_units(self) -> tuple[Unit, ...]:
        return tuple(u for u in self.units if u.is_on and u.has_governor)

    @property
    def online_capacity_mw(self) -> float:
        return sum(u.pmax_mw for u in self.online_units)


@dataclass(frozen=True)
class Diagnostic:
    unit_id: str | None
    message: str

    def __str__(self) -> str:
        scope = self.unit_id if self.unit_id is not None else "system"
        return f"{scope}: {self.message}"


# ---- validation ------------------------------------------------------------

def _finite(x: float) -> bool:
    return isinstance(x, (int, float)) and math.isfinite(x)


def validate_fleet(fleet: Fleet) -> list[Diagnostic]:
    """Return one diagnostic per violated invariant (empty list iff valid)."""
    diags: list[Diagnostic] = []
    sysp = fleet.system

    if not (_finite(sysp.f0) and sysp.f0 > 0):
        diags.append(Diagnostic(None, f"f0 must be positive, got {sysp.f0}"))
    if not (_finite(sysp.load_mw) and sysp.load_mw >= 0):
        diags.append(Diagnostic(None, f"load_mw must be >= 0, got {sysp.load_mw}"))
    if not (_finite(sysp.load_damping_pu) and sysp.load_damping_pu >= 0):
        diags.append(
            Diagnostic(None, f"load_damping_pu must be >= 0, got {sysp.load_damping_pu}")
        )
    if sysp.s_base_mva is not None and not (_finite(sysp.s_base_mva) and sysp.s_base_mva > 0):
        diags.append(
            Diagnostic(None, f"s_base_mva must be positive, got {sysp.s_base_mva}")
        )
    if not (_finite(sysp.ufls_first_stage_hz) and sysp.ufls_first_stage_hz < sysp.f0):
        diags.append(
            Diagnostic(
                None,
                f"ufls_first_stage_hz must be below f0, got {sysp.ufls_first_stage_hz}",
            )
        )

    seen: set[str] = set()
    for u in fleet.units:
        if u.id in seen:
            diags.append(Diagnostic(u.id, "duplicate id"))
        seen.add(u.id)
        diags.extend(_validate_unit(u))

    if not fleet.units and sysp.load_damping_pu == 0:
        diags.append(
            Diagnostic(None, "fleet needs at least one unit or nonzero load damping")
        )
    return diags


def _validate_unit(u: Unit) -> list[Diagnostic]:
    d: list[Diagnostic] = []
    for name in ("rated_mva", "pgen_mw", "pmax_mw", "pmin_mw",
                 "inertia_h_s", "droop_pu", "deadband_hz"):
        if not _finite(getattr(u, name)):
            d.append(Diagnostic(u.id, f"{name} must be a finite number"))
            return d
    if u.rated_mva <= 0:
        d.append(Diagnostic(u.id, f"rated_mva must be positive, got {u.rated_mva}"))
    if not (u.pmin_mw <= u.pgen_mw <= u.pmax_mw <= u.rated_mva):
        d.append(
            Diagnostic(
                u.id,
                "dispatch ordering violated: need pmin_mw <= pgen_mw <= pmax_mw <= "
                f"rated_mva, got {u.pmin_mw} / {u.pgen_mw} / {u.pmax_mw} / {u.rated_mva}",
            )
        )
    if u.has_governor and u.droop_pu <= 0:
        d.append(Diagnostic(u.id, f"droop_pu must be positive, got {u.droop_pu}"))
    if u.deadband_hz < 0:
        d.append(Diagnostic(u.id, f"deadband_hz must be >= 0, got {u.deadband_hz}"))
    if u.inertia_h_s < 0:
        d.append(Diagnostic(u.id, f"inertia_h_s must be >= 0, got {u.inertia_h_s}"))
    if u.status not in ("on", "off"):
        d.append(Diagnostic(u.id, f"status must be 'on' or 'off', got {u.status!r}"))
    expected_cls = PARAMS_FOR_MODEL[u.model_type]
    if type(u.turbine_params) is not expected_cls:
        d.append(
            Diagnostic(
                u.id,
                f"turbine_params {type(u.turbine_params).__name__} does not match "
                f"model_type {u.model_type.value}",
            )
        )
        return d
    for f in fields(u.turbine_params):
        v = getattr(u.turbine_params, f.name)
        if not _finite(v):
            d.append(Diagnostic(u.id, f"turbine_params.{f.name} must be finite"))
        elif f.name == "f_h":
            if not 0 <= v <= 1:
                d.append(Diagnostic(u.id, f"f_h must be in [0,1], got {v}"))
        elif f.name == "h_synth_s":
            if v < 0:
                d.append(Diagnostic(u.id, f"h_synth_s must be >= 0, got {v}"))
        elif v <= 0:
            d.append(Diagnostic(u.id, f"turbine_params.{f.name} must be positive, got {v}"))
    return d


# ---- fleet file parsing / serialization ------------------------------------

_MISSING = object()


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple):
    for k in obj:
        if k not in required and k not in optional:
            raise ParseError(f"{path}.{k}", "unknown field")
    for k in required:
        if k not in obj:
            raise ParseError(f"{path}.{k}", "missing required field")


def _num(obj: dict, key: str, path: str, default=_MISSING) -> float:
    if key not in obj:
        if default is _MISSING:
            raise ParseError(f"{path}.{key}", "missing required field")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{path}.{key}", f"expected a number, got {type(v).__name__}")
    if not math.isfinite(v):
        raise ParseError(f"{path}.{key}", "must be finite")
    return float(v)


def _str(obj: dict, key: str, path: str, default=_MISSING) -> str:
    if key not in obj:
        if default is _MISSING:
            raise ParseError(f"{path}.{key}", "missing required field")
        return default
    v = obj[key]
    if not isinstance(v, str):
        raise ParseError(f"{path}.{key}", f"expected a string, got {type(v).__name__}")
    return v


def _bool(obj: dict, key: str, path: str, default: bool) -> bool:
    if key not in obj:
        return default
    v = obj[key]
    if not isinstance(v, bool):
        raise ParseError(f"{path}.{key}", f"expected a boolean, got {type(v).__name__}")
    return v


def _parse_unit(obj: dict, path: str) -> Unit:
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    _check_keys(
        obj,
        path,
        required=("id", "technology", "rated_mva", "pgen_mw", "pmax_mw"),
        optional=("model_type", "pmin_mw", "inertia_h_s", "droop_pu", "deadband_hz",
                  "turbine_params", "status", "always_on"),
    )
    uid = _str(obj, "id", path)
    tech_raw = _str(obj, "technology", path)
    try:
        tech = Technology(tech_raw)
    except ValueError:
        raise ParseError(f"{path}.technology", f"unknown technology {tech_raw!r}")
    model_raw = _str(obj, "model_type", path, default=None)
    if model_raw is None:
        model = DEFAULT_MODEL[tech]
    else:
        try:
            model = ModelType(model_raw)
        except ValueError:
            raise ParseError(f"{path}.model_type", f"unknown model_type {model_raw!r}")

    params_cls = PARAMS_FOR_MODEL[model]
    tp_obj = obj.get("turbine_params", {})
    if not isinstance(tp_obj, dict):
        raise ParseError(f"{path}.turbine_params", "expected an object")
    allowed = tuple(f.name for f in fields(params_cls))
    _check_keys(tp_obj, f"{path}.turbine_params", required=(), optional=allowed)
    params = params_cls(
        **{k: _num(tp_obj, k, f"{path}.turbine_params") for k in tp_obj}
    )

    status = _str(obj, "status", path, default="on")
    if status not in ("on", "off"):
        raise ParseError(f"{path}.status", f"must be 'on' or 'off', got {status!r}")

    return Unit(
        id=uid,
        technology=tech,
        model_type=model,
        rated_mva=_num(obj, "rated_mva", path),
        pgen_mw=_num(obj, "pgen_mw", path),
        pmax_mw=_num(obj, "pmax_mw", path),
        pmin_mw=_num(obj, "pmin_mw", path, default=0.0),
        inertia_h_s=_num(obj, "inertia_h_s", path, default=0.0),
        droop_pu=_num(obj, "droop_pu", path,
                      default=0.05 if model != ModelType.NONE else 0.0),
        deadband_hz=_num(obj, "deadband_hz", path, default=0.0),
        turbine_params=params,
        status=status,
        always_on=_bool(obj, "always_on", path, default=False),
    )


def parse_fleet(text: str) -> Fleet:
    """Parse and fully validate a fleet file; unknown fields are errors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("$", f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ParseError("$", "expected a top-level object")
    _check_keys(doc, "$", required=("system", "units"), optional=())

    sys_obj = doc["system"]
    if not isinstance(sys_obj, dict):
        raise ParseError("$.system", "expected an object")
    _check_keys(
        sys_obj,
        "$.system",
        required=("load_mw", "load_damping_pu"),
        optional=("f0", "s_base_mva", "ufls_first_stage_hz"),
    )
    s_base = None
    if sys_obj.get("s_base_mva") is not None:
        s_base = _num(sys_obj, "s_base_mva", "$.system")
    system = SystemParams(
        load_mw=_num(sys_obj, "load_mw", "$.system"),
        load_damping_pu=_num(sys_obj, "load_damping_pu", "$.system"),
        f0=_num(sys_obj, "f0", "$.system", default=60.0),
        s_base_mva=s_base,
        ufls_first_stage_hz=_num(sys_obj, "ufls_first_stage_hz", "$.system", default=59.5),
    )

    units_obj = doc["units"]
    if not isinstance(units_obj, list):
        raise ParseError("$.units", "expected an array")
    units = tuple(
        _parse_unit(u, f"$.units[{i}]") for i, u in enumerate(units_obj)
    )

    fleet = Fleet(system=system, units=units)
    diags = validate_fleet(fleet)
    if diags:
        err = ValidationError("; ".join(str(d) for d in diags))
        err.diagnostics = diags
        raise err
    return fleet


def serialize_fleet(fleet: Fleet) -> str:
    """Inverse of parse_fleet: explicit snake_case JSON, round-trip exact."""
    sysp = fleet.system
    doc = {
        "system": {
            "f0": sysp.f0,
            "load_mw": sysp.load_mw,
            "load_damping_pu": sysp.load_damping_pu,
            "s_base_mva": sysp.s_base_mva,
            "ufls_first_stage_hz": sysp.ufls_first_stage_hz,
        },
        "units": [
            {
                "id": u.id,
                "technology": u.technology.value,
                "model_type": u.model_type.value,
                "rated_mva": u.rated_mva,
                "pgen_mw": u.pgen_mw,
                "pmax_mw": u.pmax_mw,
                "pmin_mw": u.pmin_mw,
                "inertia_h_s": u.inertia_h_s,
                "droop_pu": u.droop_pu,
                "deadband_hz": u.deadband_hz,
                "turbine_params": {
                    f.name: getattr(u.turbine_params, f.name)
                    for f in fields(u.turbine_params)
                },
                "status": u.status,
                "always_on": u.always_on,
            }
            for u in fleet.units
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


# ---- commitment toggling ----------------------------------------------------

def apply_toggles(fleet: Fleet, toggles: list[tuple[str, str]]) -> Fleet:
    """New fleet with statuses changed; last write wins for repeated ids."""
    final: dict[str, str] = {}
    for uid, status in toggles:
        if status not in ("on", "off"):
            raise ValueError(f"toggle status must be 'on' or 'off', got {status!r}")
        if not fleet.has_unit(uid):
            raise UnknownUnit(uid)
        final[uid] = status
    if not final:
        return fleet
    units = tuple(
        replace(u, status=final[u.id]) if u.id in final else u for u in fleet.units
    )
    return Fleet(system=fleet.system, units=units)


# ---- synthetic fleet generation ---------------------------------------------

@dataclass(frozen=True)
class GenSpec:
    n_units: int
    renewable_fraction: float
    total_capacity_mw: float
    seed: int
    dispatch_level: float = 0.8
    synthetic_share: float = 0.0       # share of renewable units given synthetic governors
    always_on_fraction: float = 0.6
    load_damping_pu: float = 1.0
    f0: float = 60.0
    ufls_first_stage_hz: float = 59.5
    droop_range: tuple[float, float] = (0.04, 0.06)
    deadband_range: tuple[float, float] = (0.036, 0.036)
    inertia_range_s: tuple[float, float] = (2.5, 6.0)
    t_g_range_s: tuple[float, float] = (0.15, 0.6)
    t_r_range_s: tuple[float, float] = (6.0, 10.0)
    f_h_range: tuple[float, float] = (0.25, 0.35)
    t_c_range_s: tuple[float, float] = (0.3, 0.5)
    t_w_range_s: tuple[float, float] = (0.8, 1.2)
    t_inv_range_s: tuple[float, float] = (0.03, 0.08)


def _check_spec(spec: GenSpec):
    if spec.n_units < 1:
        raise InvalidSpec(f"n_units must be >= 1, got {spec.n_units}")
    if not 0.0 <= spec.renewable_fraction <= 1.0:
        raise InvalidSpec(f"renewable_fraction must be in [0,1], got {spec.renewable_fraction}")
    if spec.total_capacity_mw <= 0:
        raise InvalidSpec(f"total_capacity_mw must be positive, got {spec.total_capacity_mw}")
    if not 0.0 < spec.dispatch_level <= 1.0:
        raise InvalidSpec(f"dispatch_level must be in (0,1], got {spec.dispatch_level}")
    if not 0.0 <= spec.synthetic_share <= 1.0:
        raise InvalidSpec(f"synthetic_share must be in [0,1], got {spec.synthetic_share}")
    if not 0.0 <= spec.always_on_fraction <= 1.0:
        raise InvalidSpec(f"always_on_fraction must be in [0,1], got {spec.always_on_fraction}")
    for name in ("droop_range", "deadband_range", "inertia_range_s", "t_g_range_s",
                 "t_r_range_s", "f_h_range", "t_c_range_s", "t_w_range_s",
                 "t_inv_range_s"):
        lo, hi = getattr(spec, name)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise InvalidSpec(f"{name} must be a non-empty finite range, got ({lo}, {hi})")
    if spec.droop_range[0] <= 0:
        raise InvalidSpec("droop_range lower bound must be positive")
    if spec.deadband_range[0] < 0:
        raise InvalidSpec("deadband_range lower bound must be >= 0")


def _uniform(rng: np.random.Generator, lohi: tuple[float, float]) -> float:
    lo, hi = lohi
    return lo if lo == hi else float(rng.uniform(lo, hi))


_SYNC_TECH_CHOICES = (Technology.STEAM, Technology.GAS, Technology.HYDRO)
_SYNC_TECH_WEIGHTS = (0.5, 0.3, 0.2)


def generate_fleet(spec: GenSpec) -> Fleet:
    """Seeded synthetic fleet; pure function of the spec.

    ``renewable_fraction`` of the capacity goes to wind/solar units with zero
    inertia and no governor (or a synthetic one for the ``synthetic_share`` of
    them); the remainder is split among steam/gas/hydro with parameters drawn
    uniformly from the spec ranges. Total pmax equals total_capacity_mw.
    """
    _check_spec(spec)
    rng = np.random.default_rng(spec.seed)

    if spec.renewable_fraction >= 1.0:
        n_sync = 0
    else:
        n_sync = max(1, round(spec.n_units * (1.0 - spec.renewable_fraction)))
        n_sync = min(n_sync, spec.n_units)
    n_ren = spec.n_units - n_sync

    # capacity split honors the fraction; rounding that leaves one side with
    # no units must not lose its capacity share
    if n_ren == 0:
        cap_sync = spec.total_capacity_mw
    elif n_sync == 0:
        cap_sync = 0.0
    else:
        cap_sync = spec.total_capacity_mw * (1.0 - spec.renewable_fraction)
    cap_ren = spec.total_capacity_mw - cap_sync

    units: list[Unit] = []

    if n_sync:
        w = rng.uniform(0.5, 1.5, n_sync)
        caps = w / w.sum() * cap_sync
        techs = rng.choice(len(_SYNC_TECH_CHOICES), size=n_sync, p=_SYNC_TECH_WEIGHTS)
        for i in range(n_sync):
            tech = _SYNC_TECH_CHOICES[techs[i]]
            model = DEFAULT_MODEL[tech]
            if model is ModelType.STEAM_REHEAT:
                params: TurbineParams = SteamReheatParams(
                    t_g_s=_uniform(rng, spec.t_g_range_s),
                    t_r_s=_uniform(rng, spec.t_r_range_s),
                    f_h=_uniform(rng, spec.f_h_range),
                )
            elif model is ModelType.GAS_CT:
                params = GasCtParams(
                    t_g_s=_uniform(rng, spec.t_g_range_s),
                    t_c_s=_uniform(rng, spec.t_c_range_s),
                )
            else:
                params = HydroParams(
                    t_g_s=_uniform(rng, spec.t_g_range_s),
                    t_w_s=_uniform(rng, spec.t_w_range_s),
                )
            pmax = float(caps[i])
            units.append(
                Unit(
                    id=f"G{i + 1:03d}",
                    technology=tech,
                    model_type=model,
                    rated_mva=pmax,
                    pgen_mw=spec.dispatch_level * pmax,
                    pmax_mw=pmax,
                    pmin_mw=0.0,
                    inertia_h_s=_uniform(rng, spec.inertia_range_s),
                    droop_pu=_uniform(rng, spec.droop_range),
                    deadband_hz=_uniform(rng, spec.deadband_range),
                    turbine_params=params,
                    status="on",
                    always_on=bool(rng.random() < spec.always_on_fraction),
                )
            )

    if n_ren:
        w = rng.uniform(0.5, 1.5, n_ren)
        caps = w / w.sum() * cap_ren
        is_wind = rng.random(n_ren) < 0.5
        n_synth = round(n_ren * spec.synthetic_share)
        for i in range(n_ren):
            tech = Technology.WIND if is_wind[i] else Technology.SOLAR
            synthetic = i < n_synth
            pmax = float(caps[i])
            units.append(
                Unit(
                    id=f"R{i + 1:03d}",
                    technology=tech,
                    model_type=ModelType.SYNTHETIC if synthetic else ModelType.NONE,
                    rated_mva=pmax,
                    pgen_mw=spec.dispatch_level * pmax,
                    pmax_mw=pmax,
                    pmin_mw=0.0,
                    inertia_h_s=0.0,
                    droop_pu=_uniform(rng, spec.droop_range) if synthetic else 0.0,
                    deadband_hz=_uniform(rng, spec.deadband_range) if synthetic else 0.0,
                    turbine_params=SyntheticParams(
                        t_inv_s=_uniform(rng, spec.t_inv_range_s)
                    ) if synthetic else NoGovernorParams(),
                    status="on",
                    always_on=False,
                )
            )

    load_mw = sum(u.pgen_mw for u in units)
    system = SystemParams(
        load_mw=load_mw,
        load_damping_pu=spec.load_damping_pu,
        f0=spec.f0,
        s_base_mva=None,
        ufls_first_stage_hz=spec.ufls_first_stage_hz,
    )
    return Fleet(system=system, units=tuple(units))


def convert_to_renewable(fleet: Fleet, target_fraction: float) -> Fleet:
    """Raise the renewable capacity share by stripping synchronous units.

    Walks the fleet in order, replacing synchronous units with inertia-less,
    governor-less wind units of identical capacity and dispatch until at
    least ``target_fraction`` of total capacity is renewable. Dispatch and
    load are untouched, so variants differ only in frequency response.
    """
    if not 0.0 <= target_fraction <= 1.0:
        raise InvalidSpec(f"target_fraction must be in [0,1], got {target_fraction}")
    total = sum(u.pmax_mw for u in fleet.units)
    renewable = sum(u.pmax_mw for u in fleet.units if not u.is_synchronous)
    units = list(fleet.units)
    for i, u in enumerate(units):
        if renewable >= target_fraction * total - 1e-9:
            break
        if not u.is_synchronous:
            continue
        units[i] = replace(
            u,
            technology=Technology.WIND,
            model_type=ModelType.NONE,
            inertia_h_s=0.0,
            droop_pu=0.0,
            deadband_hz=0.0,
            turbine_params=NoGovernorParams(),
            always_on=False,
        )
        renewable += u.pmax_mw
    return Fleet(system=fleet.system, units=tuple(units))


# ---- scenario file -----------------------------------------------------------

@dataclass(frozen=True)
class Scenario:
    loss_mw: float
    event_time_s: float = 1.0
    horizon_s: float = 60.0
    step_s: float = 0.005


def parse_scenario(text: str) -> Scenario:
    """Parse `{loss_mw, event_time_s, horizon_s, step_s}` documents."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("$", f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise ParseError("$", "expected a top-level object")
    _check_keys(doc, "$", required=("loss_mw",),
                optional=("event_time_s", "horizon_s", "step_s"))
    return Scenario(
        loss_mw=_num(doc, "loss_mw", "$"),
        event_time_s=_num(doc, "event_time_s", "$", default=1.0),
        horizon_s=_num(doc, "horizon_s", "$", default=60.0),
        step_s=_num(doc, "step_s", "$", default=0.005),
    )
