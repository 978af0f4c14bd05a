// Canned service payloads used by the unit tests (shapes match the wire).

import type { FleetPayload, WhatIfResponse } from '../src/types.js';

export function fleetFixture(): FleetPayload {
  return {
    snapshot_version: 1,
    system: {
      f0: 60.0,
      load_mw: 800.0,
      load_damping_pu: 1.0,
      s_base_mva: null,
      ufls_first_stage_hz: 59.5,
    },
    units: [
      {
        id: 'G001',
        technology: 'steam',
        model_type: 'STEAM_REHEAT',
        status: 'on',
        always_on: true,
        rated_mva: 500.0,
        pgen_mw: 400.0,
        pmax_mw: 500.0,
        pmin_mw: 0.0,
        headroom_up_mw: 100.0,
        headroom_down_mw: 400.0,
        inertia_h_s: 4.5,
        droop_pu: 0.05,
        deadband_hz: 0.036,
      },
      {
        id: 'G002',
        technology: 'gas',
        model_type: 'GAS_CT',
        status: 'on',
        always_on: false,
        rated_mva: 300.0,
        pgen_mw: 240.0,
        pmax_mw: 300.0,
        pmin_mw: 0.0,
        headroom_up_mw: 60.0,
        headroom_down_mw: 240.0,
        inertia_h_s: 3.0,
        droop_pu: 0.04,
        deadband_hz: 0.036,
      },
      {
        id: 'R001',
        technology: 'wind',
        model_type: 'NONE',
        status: 'off',
        always_on: false,
        rated_mva: 200.0,
        pgen_mw: 160.0,
        pmax_mw: 200.0,
        pmin_mw: 0.0,
        headroom_up_mw: 40.0,
        headroom_down_mw: 160.0,
        inertia_h_s: 0.0,
        droop_pu: 0.0,
        deadband_hz: 0.0,
      },
    ],
  };
}

export function whatIfFixture(overrides: Partial<WhatIfResponse> = {}): WhatIfResponse {
  return {
    snapshot_version: 1,
    loss_mw: 120.0,
    frc_curve: {
      breakpoints: [
        [-0.536, 226.6667],
        [-0.036, 0.0],
        [0.036, 0.0],
        [1.366, -640.0],
      ],
      left_slope: -13.3333,
      right_slope: -13.3333,
    },
    f0: 60.0,
    beta_at_100mhz: 31.4159,
    steady_state: {
      df_ss: -0.2987,
      f_ss: 59.7013,
      governor_mw: 116.02,
      load_relief_mw: 3.98,
      saturated_unit_ids: [],
    },
    nadir: {
      nadir_hz: 59.6221,
      nadir_time_s: 3.4,
      rocof_initial_hz_per_s: -0.4811,
      settling_hz: 59.7013,
      ufls_margin_hz: 0.1221,
      breached: false,
      ufls_first_stage_hz: 59.5,
    },
    nadir_unavailable: null,
    reduced_model_summary: {
      h_sys_s: 3.9375,
      s_base_mva: 800.0,
      block_count: 2,
      damping_pu: 1.0,
    },
    trajectory: {
      t_s: [0.0, 1.0, 2.0, 3.4, 5.0, 10.0],
      freq_hz: [60.0, 60.0, 59.71, 59.6221, 59.68, 59.7013],
      pm_total_mw: [0.0, 0.0, 80.0, 110.0, 115.0, 116.02],
    },
    ...overrides,
  };
}
