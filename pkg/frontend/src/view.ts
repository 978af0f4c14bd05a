import type { Dashboard } from './state.js';
import type { NadirPayload, SteadyStatePayload } from './types.js';

export interface UnitRowView {
  id: string;
  technology: string;
  committedStatus: 'on' | 'off';
  effectiveStatus: 'on' | 'off';
  pending: boolean;
  pgenMw: number;
  headroomUpMw: number;
  inertiaHs: number;
  alwaysOn: boolean;
}

export interface Readouts {
  collapse: boolean;
  lossMw: number;
  betaMwPer01Hz: number;
  steadyState: SteadyStatePayload | null;
  nadir: NadirPayload | null;
  nadirUnavailable: string | null;
  breached: boolean;
  hSysS: number | null;
  blockCount: number | null;
  responseVersion: number;
}

export interface ViewModel {
  banner: string | null;
  loading: boolean;
  snapshotVersion: number | null;
  rows: UnitRowView[];
  pendingCount: number;
  lossMw: number;
  readouts: Readouts | null;
}

/**
 * Pure projection of the store onto what gets rendered. Every number in
 * `readouts` is copied verbatim from a single service response; the console
 * performs no physics of its own.
 */
export function buildViewModel(d: Dashboard): ViewModel {
  const rows: UnitRowView[] = (d.fleet?.units ?? []).map((u) => {
    const pendingStatus = d.pending.get(u.id);
    return {
      id: u.id,
      technology: u.technology,
      committedStatus: u.status,
      effectiveStatus: pendingStatus ?? u.status,
      pending: pendingStatus !== undefined,
      pgenMw: u.pgen_mw,
      headroomUpMw: u.headroom_up_mw,
      inertiaHs: u.inertia_h_s,
      alwaysOn: u.always_on,
    };
  });

  let readouts: Readouts | null = null;
  const r = d.lastResult;
  if (r && r.kind === 'ok') {
    readouts = {
      collapse: false,
      lossMw: r.resp.loss_mw,
      betaMwPer01Hz: r.resp.beta_at_100mhz,
      steadyState: r.resp.steady_state,
      nadir: r.resp.nadir,
      nadirUnavailable: r.resp.nadir_unavailable,
      breached: r.resp.nadir !== null && r.resp.nadir.breached,
      hSysS: r.resp.reduced_model_summary.h_sys_s,
      blockCount: r.resp.reduced_model_summary.block_count,
      responseVersion: r.resp.snapshot_version,
    };
  } else if (r && r.kind === 'collapse') {
    readouts = {
      collapse: true,
      lossMw: d.lossMw,
      betaMwPer01Hz: r.resp.beta_at_100mhz,
      steadyState: null,
      nadir: null,
      nadirUnavailable: null,
      breached: false,
      hSysS: null,
      blockCount: null,
      responseVersion: r.resp.snapshot_version,
    };
  }

  return {
    banner: d.banner,
    loading: d.loading,
    snapshotVersion: d.fleet?.snapshot_version ?? null,
    rows,
    pendingCount: d.pending.size,
    lossMw: d.lossMw,
    readouts,
  };
}
