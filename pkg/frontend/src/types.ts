// Payload shapes of the frequency-response service API (snake_case fields
// come from the wire verbatim; the console never recomputes physics).

export interface SystemPayload {
  f0: number;
  load_mw: number;
  load_damping_pu: number;
  s_base_mva: number | null;
  ufls_first_stage_hz: number;
}

export interface UnitPayload {
  id: string;
  technology: string;
  model_type: string;
  status: 'on' | 'off';
  always_on: boolean;
  rated_mva: number;
  pgen_mw: number;
  pmax_mw: number;
  pmin_mw: number;
  headroom_up_mw: number;
  headroom_down_mw: number;
  inertia_h_s: number;
  droop_pu: number;
  deadband_hz: number;
}

export interface FleetPayload {
  snapshot_version: number;
  system: SystemPayload;
  units: UnitPayload[];
}

export interface CurvePayload {
  breakpoints: [number, number][]; // [delta_f_hz, response_mw]
  left_slope: number;
  right_slope: number;
}

export interface SteadyStatePayload {
  df_ss: number;
  f_ss: number;
  governor_mw: number;
  load_relief_mw: number;
  saturated_unit_ids: string[];
}

export interface NadirPayload {
  nadir_hz: number;
  nadir_time_s: number;
  rocof_initial_hz_per_s: number;
  settling_hz: number;
  ufls_margin_hz: number;
  breached: boolean;
  ufls_first_stage_hz: number;
}

export interface TrajectoryPayload {
  t_s: number[];
  freq_hz: number[];
  pm_total_mw: number[];
}

export interface ReducedModelSummary {
  h_sys_s: number;
  s_base_mva: number;
  block_count: number;
  damping_pu: number;
}

export interface WhatIfResponse {
  snapshot_version: number;
  loss_mw: number;
  frc_curve: CurvePayload;
  f0: number;
  beta_at_100mhz: number;
  steady_state: SteadyStatePayload;
  nadir: NadirPayload | null;
  nadir_unavailable: string | null;
  reduced_model_summary: ReducedModelSummary;
  trajectory: TrajectoryPayload | null;
}

export interface CollapsePayload {
  error: string;
  snapshot_version: number;
  collapse: true;
  detail: string;
  frc_curve: CurvePayload;
  beta_at_100mhz: number;
}

export interface HealthPayload {
  status: string;
  version: string;
  snapshot_version: number;
}

export interface Toggle {
  id: string;
  status: 'on' | 'off';
}

export type WhatIfResult =
  | { kind: 'ok'; resp: WhatIfResponse }
  | { kind: 'collapse'; resp: CollapsePayload };
