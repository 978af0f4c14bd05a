// Chart geometry: scales, path strings, extension handling, markers.

import { describe, expect, it } from 'vitest';

import {
  curveChartData,
  linearScale,
  pathFrom,
  ticks,
  trajectoryChartData,
} from '../src/charts.js';
import { whatIfFixture } from './fixtures.js';

describe('linearScale', () => {
  it('maps the domain onto the range', () => {
    const s = linearScale([0, 10], [100, 200]);
    expect(s(0)).toBe(100);
    expect(s(10)).toBe(200);
    expect(s(5)).toBe(150);
  });

  it('degenerate domain collapses to the range start', () => {
    const s = linearScale([3, 3], [0, 50]);
    expect(s(3)).toBe(0);
  });
});

describe('pathFrom', () => {
  it('builds an M/L path', () => {
    const x = linearScale([0, 1], [0, 100]);
    const y = linearScale([0, 1], [100, 0]);
    expect(pathFrom([[0, 0], [1, 1]], x, y)).toBe('M0.00,100.00L100.00,0.00');
  });
});

describe('ticks', () => {
  it('spans the domain inclusively', () => {
    expect(ticks([0, 4], 5)).toEqual([0, 1, 2, 3, 4]);
  });
});

describe('curveChartData', () => {
  it('keeps breakpoints verbatim on the absolute-frequency axis', () => {
    const resp = whatIfFixture();
    const cd = curveChartData(resp.frc_curve, resp.f0, [-0.8, 0.1], null);
    for (const [df, mw] of resp.frc_curve.breakpoints) {
      if (df >= -0.8 && df <= 0.1) {
        expect(cd.line).toContainEqual([60.0 + df, mw]);
      }
    }
    // the deadband turn point is in frame
    expect(cd.freqDomain[0]).toBeLessThan(59.964);
    expect(cd.freqDomain[1]).toBeGreaterThan(59.964);
  });

  it('extends beyond the span with the stated slopes', () => {
    const resp = whatIfFixture();
    const cd = curveChartData(resp.frc_curve, 60.0, [-0.8, 0.1], null);
    const first = resp.frc_curve.breakpoints[0]!;
    const expected = first[1] + resp.frc_curve.left_slope * (-0.8 - first[0]);
    expect(cd.line[0]).toEqual([59.2, expected]);
  });

  it('carries the operating point through unchanged', () => {
    const resp = whatIfFixture();
    const cd = curveChartData(resp.frc_curve, 60.0, [-0.8, 0.1], {
      df: resp.steady_state.df_ss,
      mw: resp.loss_mw,
    });
    expect(cd.operatingPoint).toEqual([60.0 + resp.steady_state.df_ss, resp.loss_mw]);
  });
});

describe('trajectoryChartData', () => {
  it('pairs time and frequency arrays and places the nadir marker', () => {
    const resp = whatIfFixture();
    const td = trajectoryChartData(
      resp.trajectory!,
      { t: resp.nadir!.nadir_time_s, hz: resp.nadir!.nadir_hz },
      resp.nadir!.ufls_first_stage_hz,
    );
    expect(td.line.length).toBe(resp.trajectory!.t_s.length);
    expect(td.nadirMarker).toEqual([3.4, 59.6221]);
    expect(td.uflsHz).toBe(59.5);
    // UFLS line is inside the frequency domain
    expect(td.freqDomain[0]).toBeLessThan(59.5);
  });
});
