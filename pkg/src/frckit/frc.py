"""Unit FRC curves, system-curve assembly/update, inversion, and beta metrics.

Sign conventions: df < 0 is under-frequency, corrective response is positive,
so every FRC curve is monotone non-increasing in df. A unit's curve ramps
from zero outside its (offset-style) deadband at slope rated_mva/(droop*f0)
MW/Hz and saturates flat at its headroom in each direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curve import PwlCurve, add, invert_monotone, make_curve, simplify, subtract
from .errors import (
    InconsistentBaseline,
    InvalidParams,
    NoGovernor,
    TargetUnreachable,
    UnknownUnit,
    ValidationError,
)
from .fleet import Fleet, SystemParams, Unit, validate_fleet

_CURVE_ZERO_TOL = 1e-6  # |curve(0)| allowed in an assembled system curve


@dataclass(frozen=True)
class UnitFrc:
    unit_id: str
    curve: PwlCurve


@dataclass(frozen=True)
class FrcCurve:
    curve: PwlCurve
    f0: float
    contributing_unit_ids: tuple[str, ...]
    includes_load_damping: bool
    # per-component curves kept for decomposition and incremental updates
    unit_curves: dict[str, PwlCurve] = field(repr=False)
    damping_curve: PwlCurve = field(repr=False)

    def __post_init__(self):
        if abs(self.curve.eval(0.0)) > _CURVE_ZERO_TOL:
            raise InvalidParams(
                f"system FRC curve must pass through the origin, got {self.curve.eval(0.0)} MW"
            )
        if not self.curve.is_nonincreasing():
            raise InvalidParams("system FRC curve must be monotone non-increasing")


@dataclass(frozen=True)
class BetaMetric:
    df: float
    beta_secant: float  # MW per 0.1 Hz, chord from the origin
    beta_local: float   # MW per 0.1 Hz, local segment slope


@dataclass(frozen=True)
class SteadyStateResult:
    df_ss: float
    f_ss: float
    governor_mw: float
    load_relief_mw: float
    saturated_unit_ids: tuple[str, ...]


@dataclass(frozen=True)
class AdequacyReport:
    loss_mw: float
    collapsed: bool
    adequate: bool
    df_ss: float | None
    f_ss: float | None
    governor_mw: float
    load_relief_mw: float
    remaining_headroom_mw: float
    ufls_margin_hz: float | None
    saturated_unit_ids: tuple[str, ...]


def build_unit_frc(unit: Unit, f0: float) -> UnitFrc:
    """Offset-deadband droop curve for one unit, clipped at its headroom."""
    if not unit.has_governor:
        raise NoGovernor(f"unit {unit.id} has model_type NONE")
    if f0 <= 0:
        raise InvalidParams(f"f0 must be positive, got {f0}")
    if unit.droop_pu <= 0 or unit.rated_mva <= 0:
        raise InvalidParams(
            f"unit {unit.id}: droop_pu and rated_mva must be positive"
        )
    if unit.deadband_hz < 0 or unit.headroom_up_mw < 0 or unit.headroom_down_mw < 0:
        raise InvalidParams(
            f"unit {unit.id}: deadband and headrooms must be non-negative"
        )
    gain = unit.rated_mva / (unit.droop_pu * f0)  # MW per Hz
    db = unit.deadband_hz
    hr_up = unit.headroom_up_mw
    hr_dn = unit.headroom_down_mw

    points = [(-db, 0.0), (db, 0.0)]
    if hr_up > 0:
        points.append((-db - hr_up / gain, hr_up))
    if hr_dn > 0:
        points.append((db + hr_dn / gain, -hr_dn))
    points.sort()
    deduped = [points[0]]
    for p in points[1:]:
        if p[0] - deduped[-1][0] >= 1e-12:
            deduped.append(p)
    return UnitFrc(unit.id, make_curve(deduped, left_slope=0.0, right_slope=0.0))


def build_load_damping_curve(system: SystemParams) -> PwlCurve:
    """Linear load-relief line through the origin, slope -D*load/f0 MW/Hz."""
    if system.load_mw < 0 or system.load_damping_pu < 0:
        raise InvalidParams("load_mw and load_damping_pu must be non-negative")
    slope = -system.load_damping_pu * system.load_mw / system.f0
    return make_curve([(0.0, 0.0)], left_slope=slope, right_slope=slope)


def assemble_system_frc(fleet: Fleet) -> FrcCurve:
    """Sum of online governed-unit curves plus the load damping line."""
    diags = validate_fleet(fleet)
    if diags:
        raise ValidationError("; ".join(str(d) for d in diags))
    damping = build_load_damping_curve(fleet.system)
    total = damping
    unit_curves: dict[str, PwlCurve] = {}
    for u in fleet.units:
        if u.is_on and u.has_governor:
            c = build_unit_frc(u, fleet.system.f0).curve
            unit_curves[u.id] = c
            total = add(total, c)
    return FrcCurve(
        curve=simplify(total, 0.0),
        f0=fleet.system.f0,
        contributing_unit_ids=tuple(unit_curves),
        includes_load_damping=True,
        unit_curves=unit_curves,
        damping_curve=damping,
    )


def update_system_frc(
    frc: FrcCurve, fleet_before: Fleet, toggles: list[tuple[str, str]]
) -> FrcCurve:
    """Incremental curve update: superimpose curves of units switching on,
    subtract those switching off. Pointwise equals a fresh rebuild."""
    expected = {u.id for u in fleet_before.units if u.is_on and u.has_governor}
    if set(frc.contributing_unit_ids) != expected:
        raise InconsistentBaseline(
            "frc contributing units do not match the given baseline fleet"
        )
    final: dict[str, str] = {}
    for uid, status in toggles:
        if status not in ("on", "off"):
            raise ValueError(f"toggle status must be 'on' or 'off', got {status!r}")
        if not fleet_before.has_unit(uid):
            raise UnknownUnit(uid)
        final[uid] = status

    curve = frc.curve
    unit_curves = dict(frc.unit_curves)
    for uid, status in final.items():
        u = fleet_before.unit(uid)
        if not u.has_governor:
            continue
        if status == "on" and not u.is_on:
            c = build_unit_frc(u, frc.f0).curve
            curve = add(curve, c)
            unit_curves[uid] = c
        elif status == "off" and u.is_on:
            curve = subtract(curve, unit_curves.pop(uid))

    contributing = tuple(
        u.id for u in fleet_before.units if u.id in unit_curves
    )
    return FrcCurve(
        curve=simplify(curve, 0.0),
        f0=frc.f0,
        contributing_unit_ids=contributing,
        includes_load_damping=frc.includes_load_damping,
        unit_curves=unit_curves,
        damping_curve=frc.damping_curve,
    )


def solve_steady_state(frc: FrcCurve, loss_mw: float) -> SteadyStateResult:
    """Operating point of the curve for a generation loss (positive MW)."""
    direction = "under" if loss_mw >= 0 else "over"
    df_ss = invert_monotone(frc.curve, loss_mw, direction)
    governor_mw = 0.0
    saturated: list[str] = []
    for uid in frc.contributing_unit_ids:
        c = frc.unit_curves[uid]
        governor_mw += c.eval(df_ss)
        if (df_ss < 0 and df_ss <= c.dfs[0]) or (df_ss > 0 and df_ss >= c.dfs[-1]):
            saturated.append(uid)
    load_relief_mw = (
        frc.damping_curve.eval(df_ss) if frc.includes_load_damping else 0.0
    )
    return SteadyStateResult(
        df_ss=df_ss,
        f_ss=frc.f0 + df_ss,
        governor_mw=governor_mw,
        load_relief_mw=load_relief_mw,
        saturated_unit_ids=tuple(saturated),
    )


def beta_metrics(frc: FrcCurve, df: float) -> BetaMetric:
    """Scalar frequency-response measures at a deviation, in MW per 0.1 Hz."""
    if df == 0:
        raise ZeroDivisionError("beta secant is undefined at df=0")
    if df > 0:
        raise ValueError(f"beta is measured at under-frequency deviations, got df={df}")
    beta_secant = frc.curve.eval(df) * 0.1 / (-df)
    beta_local = -frc.curve.slope_at(df) * 0.1
    return BetaMetric(df=df, beta_secant=beta_secant, beta_local=beta_local)


def headroom_adequacy(frc: FrcCurve, fleet: Fleet, loss_mw: float) -> AdequacyReport:
    """Operator summary: steady state, spare headroom, and UFLS margin."""
    ufls = fleet.system.ufls_first_stage_hz
    try:
        ss = solve_steady_state(frc, loss_mw)
    except TargetUnreachable:
        return AdequacyReport(
            loss_mw=loss_mw,
            collapsed=True,
            adequate=False,
            df_ss=None,
            f_ss=None,
            governor_mw=0.0,
            load_relief_mw=0.0,
            remaining_headroom_mw=0.0,
            ufls_margin_hz=None,
            saturated_unit_ids=(),
        )
    remaining = 0.0
    for uid in frc.contributing_unit_ids:
        out = frc.unit_curves[uid].eval(ss.df_ss)
        remaining += max(0.0, fleet.unit(uid).headroom_up_mw - out)
    margin = ss.f_ss - ufls
    return AdequacyReport(
        loss_mw=loss_mw,
        collapsed=False,
        adequate=margin > 0,
        df_ss=ss.df_ss,
        f_ss=ss.f_ss,
        governor_mw=ss.governor_mw,
        load_relief_mw=ss.load_relief_mw,
        remaining_headroom_mw=remaining,
        ufls_margin_hz=margin,
        saturated_unit_ids=ss.saturated_unit_ids,
    )
