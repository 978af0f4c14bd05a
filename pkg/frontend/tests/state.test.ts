// Store behavior against a scripted API: pending-toggle semantics, request
// sequencing, commit flow, error handling.

import { describe, expect, it } from 'vitest';

import { ApiError } from '../src/api.js';
import { Dashboard } from '../src/state.js';
import type { ApiLike } from '../src/state.js';
import type { FleetPayload, Toggle, WhatIfResponse } from '../src/types.js';
import type { WhatIfRequest } from '../src/api.js';
import { fleetFixture, whatIfFixture } from './fixtures.js';

class ScriptedApi implements ApiLike {
  calls: WhatIfRequest[] = [];
  fleetState: FleetPayload = fleetFixture();
  whatIfImpl: (req: WhatIfRequest) => Promise<WhatIfResponse> = async (req) =>
    whatIfFixture({ loss_mw: req.loss_mw });

  async fleet(): Promise<FleetPayload> {
    return structuredClone(this.fleetState);
  }

  async whatIf(req: WhatIfRequest): Promise<WhatIfResponse> {
    this.calls.push(req);
    return this.whatIfImpl(req);
  }

  async commit(toggles: Toggle[], _expected?: number): Promise<FleetPayload> {
    const next = structuredClone(this.fleetState);
    for (const t of toggles) {
      const u = next.units.find((x) => x.id === t.id);
      if (!u) throw new ApiError(400, { error: `unknown unit id: '${t.id}'` });
      u.status = t.status;
    }
    next.snapshot_version += 1;
    this.fleetState = next;
    return structuredClone(next);
  }
}

function dashboard(api: ApiLike = new ScriptedApi()) {
  return new Dashboard(api, { initialLossMw: 120, debounceMs: 0 });
}

describe('load', () => {
  it('fetches the fleet and runs an initial what-if', async () => {
    const api = new ScriptedApi();
    const d = dashboard(api);
    await d.load();
    expect(d.fleet?.units.length).toBe(3);
    expect(api.calls.length).toBe(1);
    expect(api.calls[0]?.toggles).toEqual([]);
    expect(api.calls[0]?.loss_mw).toBe(120);
    expect(d.lastResult?.kind).toBe('ok');
  });

  it('sets the banner when the service is unreachable', async () => {
    const api = new ScriptedApi();
    api.fleet = async () => {
      throw new TypeError('fetch failed');
    };
    const d = dashboard(api);
    await d.load();
    expect(d.banner).toMatch(/unreachable/);
    expect(d.lastResult).toBeNull();
  });
});

describe('pending toggles', () => {
  it('toggle then toggle back returns to the initial request shape', async () => {
    const api = new ScriptedApi();
    const d = dashboard(api);
    await d.load();
    await d.toggleUnit('G002');
    expect(d.toggles()).toEqual([{ id: 'G002', status: 'off' }]);
    await d.toggleUnit('G002');
    expect(d.toggles()).toEqual([]);
    // first and last what-if carry identical inputs
    expect(api.calls[2]).toEqual(api.calls[0]);
  });

  it('never touches the committed fleet without commit', async () => {
    const api = new ScriptedApi();
    const d = dashboard(api);
    await d.load();
    await d.toggleUnit('G001');
    expect((await api.fleet()).units.find((u) => u.id === 'G001')?.status).toBe('on');
    expect(d.committedStatus('G001')).toBe('on');
    expect(d.pending.get('G001')).toBe('off');
  });

  it('reverts the pending toggle when the service rejects it', async () => {
    const api = new ScriptedApi();
    api.whatIfImpl = async () => {
      throw new ApiError(400, { error: "unknown unit id: 'G002'" });
    };
    const d = dashboard(api);
    await d.load().catch(() => undefined);
    d.banner = null;
    await d.toggleUnit('G002');
    expect(d.banner).toMatch(/rejected/);
    expect(d.pending.size).toBe(0);
  });
});

describe('request sequencing', () => {
  it('discards stale responses: newest request wins', async () => {
    const api = new ScriptedApi();
    const resolvers: Array<(r: WhatIfResponse) => void> = [];
    api.whatIfImpl = (req) =>
      new Promise((resolve) => {
        resolvers.push((r) => resolve({ ...r, loss_mw: req.loss_mw }));
      });
    const d = dashboard(api);
    d.fleet = fleetFixture();
    const p1 = d.runWhatIf();
    const p2 = d.runWhatIf();
    // resolve newest first, then the stale one
    resolvers[1]!(whatIfFixture());
    await p2;
    const latest = d.lastResult;
    resolvers[0]!(whatIfFixture({ beta_at_100mhz: -1 }));
    await p1;
    expect(d.lastResult).toBe(latest); // stale response discarded
  });

  it('debounces slider edits', async () => {
    const api = new ScriptedApi();
    const d = new Dashboard(api, { initialLossMw: 50, debounceMs: 20 });
    d.fleet = fleetFixture();
    const p1 = d.setLoss(60);
    const p2 = d.setLoss(70);
    const p3 = d.setLoss(80);
    await Promise.race([p3, new Promise((r) => setTimeout(r, 500))]);
    await Promise.all([p1, p2].map((p) => Promise.race([p, Promise.resolve()])));
    expect(api.calls.length).toBe(1);
    expect(api.calls[0]?.loss_mw).toBe(80);
  });
});

describe('collapse', () => {
  it('stores the 422 payload as a collapse result', async () => {
    const api = new ScriptedApi();
    api.whatIfImpl = async () => {
      throw new ApiError(422, {
        error: 'insufficient frequency response for 9000 MW loss',
        snapshot_version: 1,
        collapse: true,
        detail: 'target outside range',
        frc_curve: whatIfFixture().frc_curve,
        beta_at_100mhz: 31.4159,
      });
    };
    const d = dashboard(api);
    await d.load();
    expect(d.lastResult?.kind).toBe('collapse');
    expect(d.banner).toBeNull();
  });
});

describe('commit', () => {
  it('applies toggles, bumps the version, and clears pending', async () => {
    const api = new ScriptedApi();
    const d = dashboard(api);
    await d.load();
    await d.toggleUnit('R001'); // off -> on
    await d.commit();
    expect(d.fleet?.snapshot_version).toBe(2);
    expect(d.pending.size).toBe(0);
    expect(d.committedStatus('R001')).toBe('on');
  });

  it('handles a version conflict by reloading', async () => {
    const api = new ScriptedApi();
    const realCommit = api.commit.bind(api);
    api.commit = async () => {
      throw new ApiError(409, { error: 'snapshot version is 5' });
    };
    const d = dashboard(api);
    await d.load();
    await d.toggleUnit('G001');
    await d.commit();
    expect(d.banner).toMatch(/conflict/);
    api.commit = realCommit;
  });
});
