// DOM rendering: a dumb copier from the view model into elements. Exact
// response numbers ride on data-value attributes; visible text is formatted.

import {
  curveChartData,
  linearScale,
  pathFrom,
  ticks,
  trajectoryChartData,
} from './charts.js';
import type { Dashboard } from './state.js';
import type { ViewModel } from './view.js';

const W = 460;
const H = 260;
const M = { left: 56, right: 16, top: 12, bottom: 30 };

function fmt(v: number | null, digits = 3): string {
  return v === null ? '—' : v.toFixed(digits);
}

function el(tag: string, cls?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function metric(label: string, value: number | null, unit: string, digits: number,
                extraClass = ''): HTMLElement {
  const card = el('div', `metric ${extraClass}`.trim());
  card.appendChild(el('div', 'metric-label', label));
  const v = el('div', 'metric-value', `${fmt(value, digits)} ${value === null ? '' : unit}`);
  if (value !== null) v.dataset['value'] = String(value);
  card.appendChild(v);
  return card;
}

function svgChart(
  line: Array<[number, number]>,
  xDomain: [number, number],
  yDomain: [number, number],
  xLabel: string,
  yLabel: string,
  extras: string,
): string {
  const x = linearScale(xDomain, [M.left, W - M.right]);
  const y = linearScale(yDomain, [H - M.bottom, M.top]);
  const xTicks = ticks(xDomain, 5)
    .map(
      (t) =>
        `<line x1="${x(t).toFixed(1)}" y1="${H - M.bottom}" x2="${x(t).toFixed(1)}" y2="${M.top}" class="grid"/>` +
        `<text x="${x(t).toFixed(1)}" y="${H - 10}" class="tick">${t.toFixed(xDomain[1] - xDomain[0] < 2 ? 3 : 0)}</text>`,
    )
    .join('');
  const yTicks = ticks(yDomain, 5)
    .map(
      (t) =>
        `<line x1="${M.left}" y1="${y(t).toFixed(1)}" x2="${W - M.right}" y2="${y(t).toFixed(1)}" class="grid"/>` +
        `<text x="${M.left - 6}" y="${(y(t) + 4).toFixed(1)}" class="tick tick-y">${t.toFixed(Math.abs(yDomain[1] - yDomain[0]) < 2 ? 3 : 0)}</text>`,
    )
    .join('');
  return (
    `<svg viewBox="0 0 ${W} ${H}" class="chart">` +
    xTicks +
    yTicks +
    `<path d="${pathFrom(line, x, y)}" class="series"/>` +
    extras +
    `<text x="${(M.left + W - M.right) / 2}" y="${H - 1}" class="axis-label">${xLabel}</text>` +
    `<text x="12" y="${(M.top + H - M.bottom) / 2}" class="axis-label" transform="rotate(-90 12 ${(M.top + H - M.bottom) / 2})">${yLabel}</text>` +
    `</svg>`
  );
}

export function render(root: HTMLElement, vm: ViewModel, d: Dashboard): void {
  root.textContent = '';

  const header = el('header');
  header.appendChild(el('h1', undefined, 'Frequency response console'));
  const version = el('span', 'version',
    vm.snapshotVersion === null ? 'disconnected' : `snapshot v${vm.snapshotVersion}`);
  header.appendChild(version);
  if (vm.loading) header.appendChild(el('span', 'loading', 'computing…'));
  root.appendChild(header);

  if (vm.banner) {
    const banner = el('div', 'banner', vm.banner);
    const retry = el('button', 'retry', 'Retry');
    retry.addEventListener('click', () => void d.load());
    banner.appendChild(retry);
    root.appendChild(banner);
  }

  const layout = el('div', 'layout');
  root.appendChild(layout);

  // --- unit table ----------------------------------------------------------
  const left = el('section', 'panel units-panel');
  layout.appendChild(left);
  const tableHead = el('div', 'panel-head');
  tableHead.appendChild(el('h2', undefined, `Units (${vm.rows.length})`));
  const commit = el('button', 'commit', `Commit ${vm.pendingCount} toggle(s)`) as HTMLButtonElement;
  commit.disabled = vm.pendingCount === 0;
  commit.addEventListener('click', () => void d.commit());
  tableHead.appendChild(commit);
  left.appendChild(tableHead);

  const table = el('table', 'units') as HTMLTableElement;
  const thead = table.createTHead();
  const hr = thead.insertRow();
  for (const h of ['unit', 'tech', 'status', 'Pgen MW', 'headroom MW', 'H s', '']) {
    hr.appendChild(el('th', undefined, h));
  }
  const tbody = table.createTBody();
  for (const row of vm.rows) {
    const tr = tbody.insertRow();
    tr.className = row.pending ? 'pending' : '';
    tr.insertCell().textContent = row.id;
    tr.insertCell().textContent = row.technology + (row.alwaysOn ? ' ★' : '');
    const status = tr.insertCell();
    status.textContent = row.pending
      ? `${row.committedStatus} → ${row.effectiveStatus}`
      : row.effectiveStatus;
    status.className = `status status-${row.effectiveStatus}`;
    tr.insertCell().textContent = row.pgenMw.toFixed(1);
    tr.insertCell().textContent = row.headroomUpMw.toFixed(1);
    tr.insertCell().textContent = row.inertiaHs.toFixed(1);
    const btnCell = tr.insertCell();
    const btn = el('button', 'toggle', row.effectiveStatus === 'on' ? 'turn off' : 'turn on');
    btn.addEventListener('click', () => void d.toggleUnit(row.id));
    btnCell.appendChild(btn);
  }
  left.appendChild(table);

  // --- controls + readouts -------------------------------------------------
  const right = el('section', 'panel results-panel');
  layout.appendChild(right);

  const controls = el('div', 'controls');
  controls.appendChild(el('label', undefined, 'Loss (MW)'));
  const slider = el('input') as HTMLInputElement;
  slider.type = 'range';
  slider.min = '0';
  const capacity = vm.rows.reduce((s, r) => s + r.pgenMw + r.headroomUpMw, 0);
  slider.max = String(Math.max(100, Math.round(capacity * 0.05)));
  slider.value = String(vm.lossMw);
  slider.addEventListener('input', () => void d.setLoss(Number(slider.value)));
  controls.appendChild(slider);
  const lossBox = el('input') as HTMLInputElement;
  lossBox.type = 'number';
  lossBox.value = String(vm.lossMw);
  lossBox.addEventListener('change', () => void d.setLoss(Number(lossBox.value)));
  controls.appendChild(lossBox);
  right.appendChild(controls);

  const ro = vm.readouts;
  if (ro && ro.collapse) {
    right.appendChild(
      el('div', 'collapse-warning',
         `Insufficient frequency response for ${ro.lossMw} MW — no steady state`),
    );
  }
  const metrics = el('div', 'metrics');
  right.appendChild(metrics);
  if (ro) {
    metrics.appendChild(metric('beta @ -0.1 Hz', ro.betaMwPer01Hz, 'MW/0.1Hz', 1));
    metrics.appendChild(metric('steady state', ro.steadyState?.f_ss ?? null, 'Hz', 4));
    metrics.appendChild(metric('governor response', ro.steadyState?.governor_mw ?? null, 'MW', 1));
    metrics.appendChild(metric('load relief', ro.steadyState?.load_relief_mw ?? null, 'MW', 1));
    metrics.appendChild(
      metric('nadir', ro.nadir?.nadir_hz ?? null, 'Hz', 4, ro.breached ? 'breach' : ''),
    );
    metrics.appendChild(metric('nadir time', ro.nadir?.nadir_time_s ?? null, 's', 2));
    metrics.appendChild(
      metric('UFLS margin', ro.nadir?.ufls_margin_hz ?? null, 'Hz', 4,
             ro.breached ? 'breach' : ''),
    );
    metrics.appendChild(metric('system inertia', ro.hSysS, 's', 2));
    if (ro.nadirUnavailable) {
      metrics.appendChild(el('div', 'note', `nadir unavailable: ${ro.nadirUnavailable}`));
    }
  }

  // --- charts ---------------------------------------------------------------
  const r = d.lastResult;
  const chartBox = el('div', 'charts');
  right.appendChild(chartBox);
  if (r) {
    const f0 = r.kind === 'ok' ? r.resp.f0 : 60.0;
    const curve = r.kind === 'ok' ? r.resp.frc_curve : r.resp.frc_curve;
    const op =
      r.kind === 'ok'
        ? { df: r.resp.steady_state.df_ss, mw: r.resp.loss_mw }
        : null;
    const cd = curveChartData(curve, f0, [-0.8, 0.1], op);
    const x = linearScale(cd.freqDomain, [M.left, W - M.right]);
    const y = linearScale(cd.mwDomain, [H - M.bottom, M.top]);
    const opMarker = cd.operatingPoint
      ? `<circle cx="${x(cd.operatingPoint[0]).toFixed(1)}" cy="${y(cd.operatingPoint[1]).toFixed(1)}" r="4" class="op"/>`
      : '';
    const curveCard = el('div', 'chart-card');
    curveCard.appendChild(el('h3', undefined, 'FRC curve'));
    curveCard.insertAdjacentHTML(
      'beforeend',
      svgChart(cd.line, cd.freqDomain, cd.mwDomain, 'frequency (Hz)', 'response (MW)', opMarker),
    );
    chartBox.appendChild(curveCard);
  }
  if (r && r.kind === 'ok' && r.resp.trajectory && r.resp.nadir) {
    const td = trajectoryChartData(
      r.resp.trajectory,
      { t: r.resp.nadir.nadir_time_s, hz: r.resp.nadir.nadir_hz },
      r.resp.nadir.ufls_first_stage_hz,
    );
    const x = linearScale(td.timeDomain, [M.left, W - M.right]);
    const y = linearScale(td.freqDomain, [H - M.bottom, M.top]);
    let extras = '';
    if (td.uflsHz !== null) {
      extras += `<line x1="${M.left}" y1="${y(td.uflsHz).toFixed(1)}" x2="${W - M.right}" y2="${y(td.uflsHz).toFixed(1)}" class="ufls"/>`;
    }
    if (td.nadirMarker) {
      extras += `<circle cx="${x(td.nadirMarker[0]).toFixed(1)}" cy="${y(td.nadirMarker[1]).toFixed(1)}" r="4" class="nadir${vm.readouts?.breached ? ' breach' : ''}"/>`;
    }
    const trajCard = el('div', 'chart-card');
    trajCard.appendChild(el('h3', undefined, 'Frequency trajectory'));
    trajCard.insertAdjacentHTML(
      'beforeend',
      svgChart(td.line, td.timeDomain, td.freqDomain, 'time (s)', 'frequency (Hz)', extras),
    );
    chartBox.appendChild(trajCard);
  }
}
