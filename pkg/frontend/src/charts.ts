// Pure SVG geometry for the two charts. The service supplies breakpoint and
// trajectory arrays; these helpers only scale and stringify them.

import type { CurvePayload, TrajectoryPayload } from './types.js';

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  const fn = ((v: number) => r0 + (v - d0) * k) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function pathFrom(points: Array<[number, number]>, x: Scale, y: Scale): string {
  return points
    .map(([px, py], i) => `${i === 0 ? 'M' : 'L'}${x(px).toFixed(2)},${y(py).toFixed(2)}`)
    .join('');
}

export function ticks(domain: [number, number], count: number): number[] {
  const [lo, hi] = domain;
  if (count < 2 || hi === lo) return [lo];
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(lo + ((hi - lo) * i) / (count - 1));
  return out;
}

export interface CurveChartData {
  /** absolute frequency (Hz) vs corrective power (MW), breakpoints + extension ends */
  line: Array<[number, number]>;
  /** the solved operating point, when a steady state exists */
  operatingPoint: [number, number] | null;
  freqDomain: [number, number];
  mwDomain: [number, number];
}

/**
 * Chart-ready polyline for an FRC curve on an absolute-Hz axis. The service's
 * breakpoints are used verbatim; the affine extensions are drawn out to the
 * requested deviation span so the turn points stay in frame.
 */
export function curveChartData(
  curve: CurvePayload,
  f0: number,
  dfSpan: [number, number],
  operating: { df: number; mw: number } | null,
): CurveChartData {
  const bps = curve.breakpoints;
  if (bps.length === 0) throw new Error('empty curve payload');
  const first = bps[0]!;
  const last = bps[bps.length - 1]!;
  const [dfLo, dfHi] = dfSpan;
  const line: Array<[number, number]> = [];
  if (dfLo < first[0]) {
    line.push([f0 + dfLo, first[1] + curve.left_slope * (dfLo - first[0])]);
  }
  for (const [df, mw] of bps) line.push([f0 + df, mw]);
  if (dfHi > last[0]) {
    line.push([f0 + dfHi, last[1] + curve.right_slope * (dfHi - last[0])]);
  }
  const mws = line.map((p) => p[1]);
  if (operating) {
    line.sort((a, b) => a[0] - b[0]);
    mws.push(operating.mw);
  }
  return {
    line,
    operatingPoint: operating ? [f0 + operating.df, operating.mw] : null,
    freqDomain: [f0 + dfLo, f0 + dfHi],
    mwDomain: [Math.min(...mws, 0), Math.max(...mws, 0)],
  };
}

export interface TrajectoryChartData {
  line: Array<[number, number]>; // time vs frequency
  nadirMarker: [number, number] | null;
  uflsHz: number | null;
  timeDomain: [number, number];
  freqDomain: [number, number];
}

export function trajectoryChartData(
  traj: TrajectoryPayload,
  nadir: { t: number; hz: number } | null,
  uflsHz: number | null,
): TrajectoryChartData {
  const line: Array<[number, number]> = traj.t_s.map((t, i) => [t, traj.freq_hz[i]!]);
  const freqs = traj.freq_hz.slice();
  if (uflsHz !== null) freqs.push(uflsHz);
  const lo = Math.min(...freqs);
  const hi = Math.max(...freqs);
  const pad = Math.max(0.02, (hi - lo) * 0.1);
  return {
    line,
    nadirMarker: nadir ? [nadir.t, nadir.hz] : null,
    uflsHz,
    timeDomain: [traj.t_s[0] ?? 0, traj.t_s[traj.t_s.length - 1] ?? 1],
    freqDomain: [lo - pad, hi + pad],
  };
}
