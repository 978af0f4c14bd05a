"""HTTP what-if API over a fleet snapshot.

All computation delegates to the pure modules; the only mutable state is the
committed snapshot, guarded by a lock and replaced atomically on commit.
What-if requests run against immutable copies and never change it. A curve
collapse (loss beyond the attainable response) is a first-class 422 payload,
not a server error.
"""

from __future__ import annotations

import threading
from typing import Literal

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .aggregation import build_reduced_model
from .curve import PwlCurve
from .dynamics import Contingency, SimConfig, extract_metrics, simulate
from .errors import InvalidParams, TargetUnreachable, UnknownUnit
from .fleet import Fleet, apply_toggles
from .frc import FrcCurve, assemble_system_frc, beta_metrics, solve_steady_state, update_system_frc

_TRAJECTORY_MAX_POINTS = 601


class TogglePayload(BaseModel):
    id: str
    status: Literal["on", "off"]


class WhatIfRequest(BaseModel):
    toggles: list[TogglePayload] = Field(default_factory=list)
    loss_mw: float = 0.0
    include_trajectory: bool = False
    horizon_s: float | None = None


class CommitRequest(BaseModel):
    toggles: list[TogglePayload] = Field(default_factory=list)
    expected_version: int | None = None


class FleetStore:
    """Single committed snapshot; readers get consistent (fleet, frc, version)."""

    def __init__(self, fleet: Fleet):
        self._lock = threading.Lock()
        self._fleet = fleet
        self._frc = assemble_system_frc(fleet)
        self._version = 1

    def snapshot(self) -> tuple[Fleet, FrcCurve, int]:
        with self._lock:
            return self._fleet, self._frc, self._version

    def commit(self, toggles: list[tuple[str, str]], expected: int | None):
        with self._lock:
            if expected is not None and expected != self._version:
                raise _VersionConflict(self._version)
            new_fleet = apply_toggles(self._fleet, toggles)
            self._frc = update_system_frc(self._frc, self._fleet, toggles)
            self._fleet = new_fleet
            self._version += 1
            return self._fleet, self._version


class _VersionConflict(Exception):
    def __init__(self, current: int):
        super().__init__(f"snapshot version is {current}")
        self.current = current


def _curve_payload(curve: PwlCurve) -> dict:
    return {
        "breakpoints": [[b.df, b.mw] for b in curve.breakpoints],
        "left_slope": curve.left_slope,
        "right_slope": curve.right_slope,
    }


def _unit_payload(u) -> dict:
    return {
        "id": u.id,
        "technology": u.technology.value,
        "model_type": u.model_type.value,
        "status": u.status,
        "always_on": u.always_on,
        "rated_mva": u.rated_mva,
        "pgen_mw": u.pgen_mw,
        "pmax_mw": u.pmax_mw,
        "pmin_mw": u.pmin_mw,
        "headroom_up_mw": u.headroom_up_mw,
        "headroom_down_mw": u.headroom_down_mw,
        "inertia_h_s": u.inertia_h_s,
        "droop_pu": u.droop_pu,
        "deadband_hz": u.deadband_hz,
    }


def _fleet_payload(fleet: Fleet, version: int) -> dict:
    s = fleet.system
    return {
        "snapshot_version": version,
        "system": {
            "f0": s.f0,
            "load_mw": s.load_mw,
            "load_damping_pu": s.load_damping_pu,
            "s_base_mva": s.s_base_mva,
            "ufls_first_stage_hz": s.ufls_first_stage_hz,
        },
        "units": [_unit_payload(u) for u in fleet.units],
    }


def _error(status: int, message: str, version: int, **extra) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": message, "snapshot_version": version, **extra},
    )


def create_app(fleet: Fleet) -> FastAPI:
    app = FastAPI(title="frckit what-if service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = FleetStore(fleet)
    app.state.store = store

    @app.get("/api/health")
    def health():
        _, _, version = store.snapshot()
        return {"status": "ok", "version": __version__, "snapshot_version": version}

    @app.get("/api/fleet")
    def get_fleet():
        snap, _, version = store.snapshot()
        return _fleet_payload(snap, version)

    @app.post("/api/whatif")
    def post_whatif(req: WhatIfRequest):
        snap, frc, version = store.snapshot()
        if req.horizon_s is not None and req.horizon_s < 6.0:
            return _error(400, "horizon_s must be at least 6 s", version)
        toggles = [(t.id, t.status) for t in req.toggles]
        try:
            toggled = apply_toggles(snap, toggles)
            updated = update_system_frc(frc, snap, toggles)
        except UnknownUnit as e:
            return _error(400, str(e), version)

        beta = beta_metrics(updated, -0.1)
        try:
            ss = solve_steady_state(updated, req.loss_mw)
        except TargetUnreachable as e:
            return _error(
                422,
                f"insufficient frequency response for {req.loss_mw} MW loss",
                version,
                collapse=True,
                detail=str(e),
                frc_curve=_curve_payload(updated.curve),
                beta_at_100mhz=beta.beta_secant,
            )

        model = build_reduced_model(toggled)
        horizon = req.horizon_s if req.horizon_s is not None else 60.0
        nadir_payload = None
        nadir_unavailable = None
        trajectory = None
        try:
            traj = simulate(
                model,
                Contingency(loss_mw=req.loss_mw),
                SimConfig(horizon_s=horizon),
            )
            report = extract_metrics(traj, snap.system.ufls_first_stage_hz)
            nadir_payload = {
                "nadir_hz": report.nadir_hz,
                "nadir_time_s": report.nadir_time_s,
                "rocof_initial_hz_per_s": report.rocof_initial_hz_per_s,
                "settling_hz": report.settling_hz,
                "ufls_margin_hz": report.ufls_margin_hz,
                "breached": report.breached,
                "ufls_first_stage_hz": snap.system.ufls_first_stage_hz,
            }
            if req.include_trajectory:
                stride = max(1, len(traj.t_s) // _TRAJECTORY_MAX_POINTS)
                trajectory = {
                    "t_s": traj.t_s[::stride].tolist(),
                    "freq_hz": traj.freq_hz[::stride].tolist(),
                    "pm_total_mw": traj.pm_total_mw[::stride].tolist(),
                }
        except InvalidParams as e:
            nadir_unavailable = str(e)

        return {
            "snapshot_version": version,
            "loss_mw": req.loss_mw,
            "frc_curve": _curve_payload(updated.curve),
            "f0": updated.f0,
            "beta_at_100mhz": beta.beta_secant,
            "steady_state": {
                "df_ss": ss.df_ss,
                "f_ss": ss.f_ss,
                "governor_mw": ss.governor_mw,
                "load_relief_mw": ss.load_relief_mw,
                "saturated_unit_ids": list(ss.saturated_unit_ids),
            },
            "nadir": nadir_payload,
            "nadir_unavailable": nadir_unavailable,
            "reduced_model_summary": {
                "h_sys_s": model.inertia.h_sys_s,
                "s_base_mva": model.s_base_mva,
                "block_count": len(model.blocks),
                "damping_pu": model.damping_pu,
            },
            "trajectory": trajectory,
        }

    @app.post("/api/commit")
    def post_commit(req: CommitRequest):
        toggles = [(t.id, t.status) for t in req.toggles]
        try:
            new_fleet, version = store.commit(toggles, req.expected_version)
        except UnknownUnit as e:
            _, _, version = store.snapshot()
            return _error(400, str(e), version)
        except _VersionConflict as e:
            return _error(409, str(e), e.current)
        return _fleet_payload(new_fleet, version)

    return app
