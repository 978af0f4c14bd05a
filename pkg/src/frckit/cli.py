"""Batch command-line front end.

Machine-readable output (CSV/JSON) goes to stdout or --out files; human
diagnostics go to stderr, so pipelines compose. Exit codes: 0 success,
1 domain error (bad fleet, collapse, divergence), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .curve import curve_to_csv
from .dynamics import (
    Contingency,
    SimConfig,
    build_per_unit_model,
    extract_metrics,
    simulate,
    trajectory_to_csv,
)
from .aggregation import build_reduced_model
from .errors import FrckitError, TargetUnreachable
from .fleet import (
    Fleet,
    GenSpec,
    apply_toggles,
    generate_fleet,
    parse_fleet,
    parse_scenario,
    serialize_fleet,
)
from .frc import assemble_system_frc, beta_metrics, solve_steady_state, update_system_frc


class _UsageError(Exception):
    pass


def _load_fleet(path: str) -> Fleet:
    if not os.path.isfile(path):
        raise _UsageError(f"fleet file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        return parse_fleet(fh.read())


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_toggles(raw: list[str]) -> list[tuple[str, str]]:
    toggles = []
    for item in raw:
        uid, sep, status = item.partition("=")
        if not sep or status not in ("on", "off"):
            raise _UsageError(f"toggle must look like ID=on or ID=off, got {item!r}")
        toggles.append((uid, status))
    return toggles


def cmd_frc_build(args) -> int:
    fleet = _load_fleet(args.fleet)
    frc = assemble_system_frc(fleet)
    _emit(curve_to_csv(frc.curve, frc.f0, args.dense_step), args.out)
    beta = beta_metrics(frc, -0.1)
    print(
        f"breakpoints: {len(frc.curve.breakpoints)}; "
        f"beta at -0.1 Hz: {beta.beta_secant:.3f} MW/0.1Hz",
        file=sys.stderr,
    )
    return 0


def cmd_frc_update(args) -> int:
    fleet = _load_fleet(args.fleet)
    toggles = _parse_toggles(args.toggle or [])
    frc = assemble_system_frc(fleet)
    updated = update_system_frc(frc, fleet, toggles)
    _emit(curve_to_csv(updated.curve, updated.f0, args.dense_step), args.out)
    if args.check:
        rebuilt = assemble_system_frc(apply_toggles(fleet, toggles))
        grid = np.union1d(
            np.linspace(-1.0, 1.0, 2001),
            np.union1d(updated.curve.dfs, rebuilt.curve.dfs),
        )
        dev = float(np.max(np.abs(updated.curve.eval(grid) - rebuilt.curve.eval(grid))))
        print(f"max deviation vs rebuild: {dev:.3e} MW", file=sys.stderr)
    return 0


def cmd_steady(args) -> int:
    fleet = _load_fleet(args.fleet)
    frc = assemble_system_frc(fleet)
    try:
        ss = solve_steady_state(frc, args.loss)
    except TargetUnreachable as e:
        raise FrckitError(
            f"frequency response insufficient for {args.loss} MW loss (collapse): {e}"
        )
    payload = {
        "loss_mw": args.loss,
        "f_ss_hz": ss.f_ss,
        "df_ss_hz": ss.df_ss,
        "governor_mw": ss.governor_mw,
        "load_relief_mw": ss.load_relief_mw,
        "saturated_unit_ids": list(ss.saturated_unit_ids),
    }
    print(json.dumps(payload))
    print(
        f"steady state after {args.loss} MW loss: {ss.f_ss:.4f} Hz "
        f"(governors {ss.governor_mw:.1f} MW, load relief {ss.load_relief_mw:.1f} MW, "
        f"{len(ss.saturated_unit_ids)} unit(s) saturated)",
        file=sys.stderr,
    )
    return 0


def _nadir_payload(report) -> dict:
    return {
        "nadir_hz": report.nadir_hz,
        "nadir_time_s": report.nadir_time_s,
        "rocof_initial_hz_per_s": report.rocof_initial_hz_per_s,
        "settling_hz": report.settling_hz,
        "ufls_margin_hz": report.ufls_margin_hz,
        "breached": report.breached,
    }


def cmd_nadir(args) -> int:
    fleet = _load_fleet(args.fleet)
    if (args.loss is None) == (args.scenario is None):
        raise _UsageError("give exactly one of --loss or --scenario")
    if args.scenario is not None:
        if not os.path.isfile(args.scenario):
            raise _UsageError(f"scenario file not found: {args.scenario}")
        with open(args.scenario, encoding="utf-8") as fh:
            sc = parse_scenario(fh.read())
        loss = sc.loss_mw
        config = SimConfig(step_s=sc.step_s, horizon_s=sc.horizon_s,
                           event_time_s=sc.event_time_s)
    else:
        loss = args.loss
        config = SimConfig()
    ufls = fleet.system.ufls_first_stage_hz
    contingency = Contingency(loss_mw=loss)

    payload: dict = {"loss_mw": loss}
    traj_for_csv = None
    if args.model in ("clustered", "both"):
        traj = simulate(build_reduced_model(fleet), contingency, config)
        payload["clustered"] = _nadir_payload(extract_metrics(traj, ufls))
        traj_for_csv = traj
    if args.model in ("per-unit", "both"):
        traj = simulate(build_per_unit_model(fleet), contingency, config)
        payload["per_unit"] = _nadir_payload(extract_metrics(traj, ufls))
        if traj_for_csv is None:
            traj_for_csv = traj
    if args.model == "both":
        payload["nadir_difference_hz"] = (
            payload["clustered"]["nadir_hz"] - payload["per_unit"]["nadir_hz"]
        )
    print(json.dumps(payload))
    for key in ("clustered", "per_unit"):
        if key in payload:
            r = payload[key]
            print(
                f"{key}: nadir {r['nadir_hz']:.4f} Hz at {r['nadir_time_s']:.2f} s, "
                f"settling {r['settling_hz']:.4f} Hz"
                + (" [UFLS BREACH]" if r["breached"] else ""),
                file=sys.stderr,
            )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(trajectory_to_csv(traj_for_csv))
    return 0


def cmd_validate(args) -> int:
    fleet = _load_fleet(args.fleet)
    if args.losses is not None:
        items = [s for s in args.losses.split(",") if s.strip()]
        if not items:
            raise _UsageError("loss list is empty")
        try:
            losses = [float(s) for s in items]
        except ValueError:
            raise _UsageError(f"losses must be numbers, got {args.losses!r}")
    else:
        cap = fleet.online_capacity_mw
        losses = [0.005 * cap, 0.01 * cap, 0.02 * cap]

    frc = assemble_system_frc(fleet)
    model = build_per_unit_model(fleet)
    config = SimConfig(horizon_s=120.0)
    rows = []
    worst = 0.0
    for loss in losses:
        try:
            ss = solve_steady_state(frc, loss)
        except TargetUnreachable as e:
            print(f"loss {loss:.1f} MW skipped: {e}", file=sys.stderr)
            rows.append({"loss_mw": loss, "skipped": True})
            continue
        traj = simulate(model, Contingency(loss_mw=loss), config)
        report = extract_metrics(traj, fleet.system.ufls_first_stage_hz)
        dev = abs(report.settling_hz - ss.f_ss)
        worst = max(worst, dev)
        rows.append({
            "loss_mw": loss,
            "curve_f_ss_hz": ss.f_ss,
            "simulated_settling_hz": report.settling_hz,
            "deviation_hz": dev,
        })
        print(
            f"loss {loss:.1f} MW: curve {ss.f_ss:.5f} Hz, "
            f"simulated {report.settling_hz:.5f} Hz, |dev| {dev * 1e3:.4f} mHz",
            file=sys.stderr,
        )
    print(json.dumps({"rows": rows, "max_deviation_hz": worst}))
    if worst > 2e-3:
        print(f"FAIL: max deviation {worst * 1e3:.3f} mHz exceeds 2 mHz", file=sys.stderr)
        return 1
    return 0


def cmd_gen_fleet(args) -> int:
    from .errors import InvalidSpec

    try:
        spec = GenSpec(
            n_units=args.units,
            renewable_fraction=args.renewable,
            total_capacity_mw=args.capacity,
            seed=args.seed,
            dispatch_level=args.dispatch,
            synthetic_share=args.synthetic_share,
            load_damping_pu=args.damping,
        )
        fleet = generate_fleet(spec)
    except InvalidSpec as e:
        raise _UsageError(str(e))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(serialize_fleet(fleet))
    print(
        f"wrote {len(fleet.units)} units, {fleet.online_capacity_mw:.1f} MW "
        f"capacity to {args.out}",
        file=sys.stderr,
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    fleet = _load_fleet(args.fleet)
    app = create_app(fleet)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, ValueError, SystemExit) as e:
        print(f"server failed to start: {e}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="frckit",
        description="Frequency response characteristic curves and nadir assessment",
    )
    p.add_argument("--version", action="version", version=f"frckit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("frc-build", help="assemble the system FRC curve")
    b.add_argument("--fleet", required=True)
    b.add_argument("--out", default=None)
    b.add_argument("--dense-step", type=float, default=None,
                   help="extra resampling rows every this many Hz")
    b.set_defaults(func=cmd_frc_build)

    u = sub.add_parser("frc-update", help="incrementally update the FRC curve")
    u.add_argument("--fleet", required=True)
    u.add_argument("--toggle", action="append", metavar="ID=on|off")
    u.add_argument("--out", default=None)
    u.add_argument("--dense-step", type=float, default=None)
    u.add_argument("--check", action="store_true",
                   help="also rebuild from scratch and report the max deviation")
    u.set_defaults(func=cmd_frc_update)

    s = sub.add_parser("steady", help="steady-state frequency for a loss")
    s.add_argument("--fleet", required=True)
    s.add_argument("--loss", type=float, required=True, help="generation loss, MW")
    s.set_defaults(func=cmd_steady)

    n = sub.add_parser("nadir", help="predict the frequency nadir")
    n.add_argument("--fleet", required=True)
    n.add_argument("--loss", type=float, default=None)
    n.add_argument("--scenario", default=None, help="JSON scenario file")
    n.add_argument("--model", choices=("clustered", "per-unit", "both"),
                   default="clustered")
    n.add_argument("--out", default=None, help="write the trajectory CSV here")
    n.set_defaults(func=cmd_nadir)

    v = sub.add_parser("validate",
                       help="cross-check curve inversion against 120 s simulations")
    v.add_argument("--fleet", required=True)
    v.add_argument("--losses", default=None,
                   help="comma-separated MW losses (default 0.5%%/1%%/2%% of capacity)")
    v.set_defaults(func=cmd_validate)

    g = sub.add_parser("gen-fleet", help="write a seeded synthetic fleet file")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--units", type=int, required=True)
    g.add_argument("--renewable", type=float, required=True)
    g.add_argument("--capacity", type=float, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--dispatch", type=float, default=0.8)
    g.add_argument("--synthetic-share", type=float, default=0.0)
    g.add_argument("--damping", type=float, default=1.0)
    g.set_defaults(func=cmd_gen_fleet)

    sv = sub.add_parser("serve", help="run the what-if HTTP service")
    sv.add_argument("--fleet", required=True)
    sv.add_argument("--port", type=int, default=8000)
    sv.add_argument("--host", default="127.0.0.1")
    sv.set_defaults(func=cmd_serve)

    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except FrckitError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
