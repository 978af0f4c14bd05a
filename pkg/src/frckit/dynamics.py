"""Reduced-order frequency dynamics and nadir metric extraction.

A single center-of-inertia swing state couples every responder block:

    2*H_sys * d(dw)/dt = sum(block outputs) - L(t) - D_pu*dw

with dw the per-unit frequency deviation and L a step generation loss. Each
block is a 2-state (1 for inverters) unity-DC-gain governor/turbine model fed
by the deadbanded deviation and clamped at its headroom with anti-windup:

    STEAM_REHEAT  (1 + f_h*t_r*s) / ((1 + t_g*s)(1 + t_r*s))
    GAS_CT        1 / ((1 + t_g*s)(1 + t_c*s))
    HYDRO         (1 - t_w*s) / ((1 + 0.5*t_w*s)(1 + t_g*s))
    SYNTHETIC     1 / (1 + t_inv*s)

Unity DC gain makes the dynamic settling point coincide with the FRC-curve
steady state. Integration is fixed-step classical RK4 (numba-compiled), with
the deadband/limit nonlinearities evaluated inside the derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .aggregation import (
    ReducedModel,
    ResponderBlock,
    estimate_system_inertia,
    singleton_block,
)
from .errors import (
    DimensionMismatch,
    InvalidParams,
    NumericalDivergence,
    TrajectoryTooShort,
    ValidationError,
)
from .fleet import Fleet, ModelType, validate_fleet


@dataclass(frozen=True)
class SimConfig:
    step_s: float = 0.005
    horizon_s: float = 60.0
    output_every_s: float = 0.1
    event_time_s: float = 1.0

    def __post_init__(self):
        if self.step_s <= 0:
            raise InvalidParams(f"step_s must be positive, got {self.step_s}")
        if self.horizon_s <= self.event_time_s:
            raise InvalidParams("horizon_s must exceed event_time_s")
        if self.output_every_s < self.step_s:
            raise InvalidParams("output_every_s must be at least step_s")


@dataclass(frozen=True)
class Contingency:
    loss_mw: float  # positive = generation trip
    event_time_s: float | None = None  # None: take the SimConfig default

    def __post_init__(self):
        if not math.isfinite(self.loss_mw):
            raise InvalidParams("loss_mw must be finite")


@dataclass(frozen=True)
class Trajectory:
    t_s: np.ndarray
    delta_f_hz: np.ndarray
    freq_hz: np.ndarray
    pm_total_mw: np.ndarray
    block_outputs_mw: np.ndarray  # (n_samples, n_blocks)
    block_labels: tuple[str, ...]
    f0: float
    s_base_mva: float
    event_time_s: float
    config: SimConfig
    contingency: Contingency


@dataclass(frozen=True)
class NadirReport:
    nadir_hz: float
    nadir_time_s: float
    rocof_initial_hz_per_s: float
    settling_hz: float
    ufls_margin_hz: float
    breached: bool


def deadband_apply(x: float, db: float):
    """Offset deadband: sign(x) * max(0, |x| - db); units follow the input."""
    if np.any(np.asarray(db) < 0):
        raise InvalidParams("deadband must be non-negative")
    return np.sign(x) * np.maximum(0.0, np.abs(x) - db)


def _block_coeffs(block: ResponderBlock) -> tuple[float, float, float, float, float]:
    """(t0, t1, k10, c0, c1) of the unified 2-state realization:
    dx0 = (u - x0)/t0, dx1 = (k10*x0 - x1)/t1, y = c0*x0 + c1*x1."""
    p = block.turbine_params
    m = block.model_type
    if m is ModelType.STEAM_REHEAT:
        return p.t_g_s, p.t_r_s, 1.0 - p.f_h, p.f_h, 1.0
    if m is ModelType.GAS_CT:
        return p.t_g_s, p.t_c_s, 1.0, 0.0, 1.0
    if m is ModelType.HYDRO:
        return p.t_g_s, 0.5 * p.t_w_s, 3.0, -2.0, 1.0
    if m is ModelType.SYNTHETIC:
        return p.t_inv_s, 1.0, 0.0, 1.0, 0.0
    raise InvalidParams(f"block {block.label} has no dynamic model")


def block_derivative(
    block: ResponderBlock, state: np.ndarray, domega: float, f0: float = 60.0
) -> tuple[np.ndarray, float]:
    """Single-block state derivative and clamped output (per unit on s_base)."""
    state = np.asarray(state, dtype=float)
    if state.shape != (block.n_states,):
        raise DimensionMismatch(
            f"block {block.label} expects {block.n_states} states, got {state.shape}"
        )
    t0, t1, k10, c0, c1 = _block_coeffs(block)
    u = block.gain_pu * float(deadband_apply(-domega, block.deadband_hz / f0))
    x0 = state[0]
    x1 = state[1] if block.n_states == 2 else 0.0
    d0 = (u - x0) / t0
    d1 = (k10 * x0 - x1) / t1
    y = c0 * x0 + c1 * x1
    if y >= block.headroom_up_pu:
        y = block.headroom_up_pu
        if c0 * d0 > 0.0:
            d0 = 0.0
        if c1 * d1 > 0.0:
            d1 = 0.0
    elif y <= -block.headroom_down_pu:
        y = -block.headroom_down_pu
        if c0 * d0 < 0.0:
            d0 = 0.0
        if c1 * d1 < 0.0:
            d1 = 0.0
    deriv = np.array([d0, d1][: block.n_states])
    return deriv, y


@njit(cache=True)
def _derivative(t, dw, x, dx, y, t_event, l_pu, two_h, damping_pu,
                gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay):
    pm = 0.0
    for b in range(gain.shape[0]):
        u = 0.0
        if delay[b] <= 0.0 or t >= t_event + delay[b]:
            e = -dw
            if e > db[b]:
                u = gain[b] * (e - db[b])
            elif e < -db[b]:
                u = gain[b] * (e + db[b])
        d0 = (u - x[b, 0]) / t0[b]
        d1 = (k10[b] * x[b, 0] - x[b, 1]) / t1[b]
        yr = c0[b] * x[b, 0] + c1[b] * x[b, 1]
        if yr >= hr_up[b]:
            yr = hr_up[b]
            if c0[b] * d0 > 0.0:
                d0 = 0.0
            if c1[b] * d1 > 0.0:
                d1 = 0.0
        elif yr <= -hr_dn[b]:
            yr = -hr_dn[b]
            if c0[b] * d0 < 0.0:
                d0 = 0.0
            if c1[b] * d1 < 0.0:
                d1 = 0.0
        dx[b, 0] = d0
        dx[b, 1] = d1
        y[b] = yr
        pm += yr
    l_now = l_pu if t >= t_event else 0.0
    return (pm - l_now - damping_pu * dw) / two_h, pm


@njit(cache=True)
def _rk4_loop(step, n_steps, dec, t_event, l_pu, two_h, damping_pu,
              gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay,
              out_t, out_dw, out_pm, out_y):
    nb = gain.shape[0]
    x = np.zeros((nb, 2))
    xs = np.zeros((nb, 2))
    k1 = np.zeros((nb, 2))
    k2 = np.zeros((nb, 2))
    k3 = np.zeros((nb, 2))
    k4 = np.zeros((nb, 2))
    y = np.zeros(nb)
    dw = 0.0

    ddw, pm = _derivative(0.0, dw, x, k1, y, t_event, l_pu, two_h, damping_pu,
                          gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay)
    out_t[0] = 0.0
    out_dw[0] = 0.0
    out_pm[0] = pm
    for b in range(nb):
        out_y[0, b] = y[b]
    si = 1

    for i in range(n_steps):
        t = i * step
        ddw1, _ = _derivative(t, dw, x, k1, y, t_event, l_pu, two_h, damping_pu,
                              gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay)
        for b in range(nb):
            xs[b, 0] = x[b, 0] + 0.5 * step * k1[b, 0]
            xs[b, 1] = x[b, 1] + 0.5 * step * k1[b, 1]
        ddw2, _ = _derivative(t + 0.5 * step, dw + 0.5 * step * ddw1, xs, k2, y,
                              t_event, l_pu, two_h, damping_pu,
                              gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay)
        for b in range(nb):
            xs[b, 0] = x[b, 0] + 0.5 * step * k2[b, 0]
            xs[b, 1] = x[b, 1] + 0.5 * step * k2[b, 1]
        ddw3, _ = _derivative(t + 0.5 * step, dw + 0.5 * step * ddw2, xs, k3, y,
                              t_event, l_pu, two_h, damping_pu,
                              gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay)
        for b in range(nb):
            xs[b, 0] = x[b, 0] + step * k3[b, 0]
            xs[b, 1] = x[b, 1] + step * k3[b, 1]
        ddw4, _ = _derivative(t + step, dw + step * ddw3, xs, k4, y,
                              t_event, l_pu, two_h, damping_pu,
                              gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay)

        dw = dw + step / 6.0 * (ddw1 + 2.0 * ddw2 + 2.0 * ddw3 + ddw4)
        check = dw
        for b in range(nb):
            x[b, 0] = x[b, 0] + step / 6.0 * (k1[b, 0] + 2.0 * k2[b, 0]
                                              + 2.0 * k3[b, 0] + k4[b, 0])
            x[b, 1] = x[b, 1] + step / 6.0 * (k1[b, 1] + 2.0 * k2[b, 1]
                                              + 2.0 * k3[b, 1] + k4[b, 1])
            check += x[b, 0] + x[b, 1]
        if not np.isfinite(check):
            return i + 1

        if (i + 1) % dec == 0 or (i + 1) == n_steps:
            t_next = (i + 1) * step
            ddw, pm = _derivative(t_next, dw, x, k1, y, t_event, l_pu, two_h,
                                  damping_pu, gain, db, hr_up, hr_dn,
                                  t0, t1, k10, c0, c1, delay)
            out_t[si] = t_next
            out_dw[si] = dw
            out_pm[si] = pm
            for b in range(nb):
                out_y[si, b] = y[b]
            si += 1
    return -1


def simulate(model: ReducedModel, contingency: Contingency,
             config: SimConfig = SimConfig()) -> Trajectory:
    """Integrate the reduced model through a step loss; deterministic."""
    if model.inertia.h_sys_s <= 0:
        raise InvalidParams("system inertia must be positive to simulate")
    event = (contingency.event_time_s if contingency.event_time_s is not None
             else config.event_time_s)
    if config.horizon_s <= event:
        raise InvalidParams("horizon_s must exceed the event time")
    s_base = model.s_base_mva
    nb = len(model.blocks)

    gain = np.empty(nb)
    db = np.empty(nb)
    hr_up = np.empty(nb)
    hr_dn = np.empty(nb)
    t0 = np.empty(nb)
    t1 = np.empty(nb)
    k10 = np.empty(nb)
    c0 = np.empty(nb)
    c1 = np.empty(nb)
    delay = np.empty(nb)
    for i, blk in enumerate(model.blocks):
        gain[i] = blk.gain_pu
        db[i] = blk.deadband_hz / model.f0
        hr_up[i] = blk.headroom_up_pu
        hr_dn[i] = blk.headroom_down_pu
        t0[i], t1[i], k10[i], c0[i], c1[i] = _block_coeffs(blk)
        delay[i] = blk.activation_delay_s

    step = config.step_s
    n_steps = max(1, int(round(config.horizon_s / step)))
    dec = max(1, int(round(config.output_every_s / step)))
    n_samples = 1 + n_steps // dec + (1 if n_steps % dec else 0)

    out_t = np.empty(n_samples)
    out_dw = np.empty(n_samples)
    out_pm = np.empty(n_samples)
    out_y = np.empty((n_samples, nb))

    status = _rk4_loop(
        step, n_steps, dec, event, contingency.loss_mw / s_base,
        2.0 * model.inertia.h_sys_s, model.damping_pu,
        gain, db, hr_up, hr_dn, t0, t1, k10, c0, c1, delay,
        out_t, out_dw, out_pm, out_y,
    )
    if status >= 0:
        raise NumericalDivergence(status * step)

    delta_f = out_dw * model.f0
    return Trajectory(
        t_s=out_t,
        delta_f_hz=delta_f,
        freq_hz=model.f0 + delta_f,
        pm_total_mw=out_pm * s_base,
        block_outputs_mw=out_y * s_base,
        block_labels=tuple(b.label for b in model.blocks),
        f0=model.f0,
        s_base_mva=s_base,
        event_time_s=event,
        config=config,
        contingency=contingency,
    )


def build_per_unit_model(fleet: Fleet) -> ReducedModel:
    """Reference model with every online governed unit as its own block.

    Same inertia and damping as build_reduced_model, no clustering; this is
    the in-repo oracle the clustered fast model is validated against.
    """
    diags = validate_fleet(fleet)
    if diags:
        raise ValidationError("; ".join(str(d) for d in diags))
    inertia = estimate_system_inertia(fleet)
    blocks = tuple(
        singleton_block(u, inertia.s_base_mva) for u in fleet.online_governed_units
    )
    damping_pu = (
        fleet.system.load_damping_pu * fleet.system.load_mw / inertia.s_base_mva
    )
    return ReducedModel(
        inertia=inertia, blocks=blocks, damping_pu=damping_pu, f0=fleet.system.f0
    )


def extract_metrics(traj: Trajectory, ufls_hz: float) -> NadirReport:
    """Nadir, initial ROCOF, settling mean of the final 5 s, UFLS margin."""
    t = traj.t_s
    f = traj.freq_hz
    event = traj.event_time_s
    if len(t) < 2 or t[-1] < event + 5.0:
        raise TrajectoryTooShort(
            f"trajectory must cover at least 5 s beyond the event, ends at {t[-1]} s"
        )
    post = np.searchsorted(t, event)
    i_nadir = post + int(np.argmin(f[post:]))
    nadir_hz = float(f[i_nadir])
    nadir_time_s = float(t[i_nadir])

    i0 = int(np.argmin(np.abs(t - event)))
    i1 = int(np.argmin(np.abs(t - (event + 0.1))))
    rocof = float((f[i1] - f[i0]) / 0.1)

    tail = t >= t[-1] - 5.0 - 1e-12
    settling_hz = float(np.mean(f[tail]))
    return NadirReport(
        nadir_hz=nadir_hz,
        nadir_time_s=nadir_time_s,
        rocof_initial_hz_per_s=rocof,
        settling_hz=settling_hz,
        ufls_margin_hz=nadir_hz - ufls_hz,
        breached=bool(nadir_hz < ufls_hz),
    )


def trajectory_to_csv(traj: Trajectory) -> str:
    """CSV: time_s,freq_hz,delta_f_hz,pm_total_mw plus one column per block."""
    header = ["time_s", "freq_hz", "delta_f_hz", "pm_total_mw", *traj.block_labels]
    lines = [",".join(header)]
    for i in range(len(traj.t_s)):
        row = [
            repr(float(traj.t_s[i])),
            repr(float(traj.freq_hz[i])),
            repr(float(traj.delta_f_hz[i])),
            repr(float(traj.pm_total_mw[i])),
        ]
        row.extend(repr(float(v)) for v in traj.block_outputs_mw[i])
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
