import { ApiError, isCollapse } from './api.js';
import type { WhatIfRequest } from './api.js';
import type { FleetPayload, Toggle, WhatIfResponse, WhatIfResult } from './types.js';

/** The slice of the HTTP client the store needs (Client satisfies it). */
export interface ApiLike {
  fleet(): Promise<FleetPayload>;
  whatIf(req: WhatIfRequest): Promise<WhatIfResponse>;
  commit(toggles: Toggle[], expectedVersion?: number): Promise<FleetPayload>;
}

export interface DashboardOptions {
  initialLossMw?: number;
  debounceMs?: number;
  horizonS?: number;
}

type Listener = () => void;

/**
 * Single UI state store. All physics numbers displayed by the console come
 * from `lastResult` (one service response swapped in atomically), so the
 * rendered curve, steady state, and nadir always belong together. Pending
 * toggles are purely local until an explicit commit; every edit fires a
 * what-if, and only the newest in-flight response is accepted.
 */
export class Dashboard {
  fleet: FleetPayload | null = null;
  pending = new Map<string, 'on' | 'off'>();
  lossMw: number;
  lastResult: WhatIfResult | null = null;
  banner: string | null = null;
  loading = false;

  private bannerOwner: 'load' | 'whatif' | 'commit' | null = null;

  private seq = 0;
  private rendered = 0;
  private debounceMs: number;
  private horizonS: number | undefined;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private listeners: Listener[] = [];

  constructor(
    private api: ApiLike,
    opts: DashboardOptions = {},
  ) {
    this.lossMw = opts.initialLossMw ?? 100;
    this.debounceMs = opts.debounceMs ?? 250;
    this.horizonS = opts.horizonS;
  }

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  private notify(): void {
    for (const fn of this.listeners) fn();
  }

  toggles(): Toggle[] {
    return [...this.pending.entries()].map(([id, status]) => ({ id, status }));
  }

  committedStatus(id: string): 'on' | 'off' {
    const unit = this.fleet?.units.find((u) => u.id === id);
    if (!unit) throw new Error(`unknown unit ${id}`);
    return unit.status;
  }

  private setBanner(text: string | null, owner: 'load' | 'whatif' | 'commit' | null): void {
    this.banner = text;
    this.bannerOwner = text === null ? null : owner;
  }

  /** Fetch the committed fleet and run the initial what-if. */
  async load(): Promise<void> {
    this.setBanner(null, null);
    try {
      this.fleet = await this.api.fleet();
    } catch (e) {
      this.setBanner(`service unreachable: ${String(e)}`, 'load');
      this.notify();
      return;
    }
    this.notify();
    await this.runWhatIf();
  }

  /** Flip a unit's pending toggle and re-evaluate. */
  async toggleUnit(id: string): Promise<void> {
    const committed = this.committedStatus(id);
    const effective = this.pending.get(id) ?? committed;
    const next = effective === 'on' ? 'off' : 'on';
    if (next === committed) {
      this.pending.delete(id); // back to committed state: no pending mark
    } else {
      this.pending.set(id, next);
    }
    this.notify();
    await this.runWhatIf();
  }

  /** Debounced slider edits; immediate evaluation when debounce is 0. */
  setLoss(lossMw: number): Promise<void> {
    this.lossMw = lossMw;
    this.notify();
    if (this.debounceTimer !== null) clearTimeout(this.debounceTimer);
    if (this.debounceMs <= 0) return this.runWhatIf();
    return new Promise((resolve) => {
      this.debounceTimer = setTimeout(() => {
        this.debounceTimer = null;
        void this.runWhatIf().then(resolve);
      }, this.debounceMs);
    });
  }

  /** Issue a what-if for the current pending toggles and loss. */
  async runWhatIf(): Promise<void> {
    const ticket = ++this.seq;
    const togglesSent = this.toggles();
    this.loading = true;
    this.notify();
    let result: WhatIfResult | null = null;
    let failure: string | null = null;
    let revert = false;
    try {
      const resp = await this.api.whatIf({
        toggles: togglesSent,
        loss_mw: this.lossMw,
        include_trajectory: true,
        ...(this.horizonS !== undefined ? { horizon_s: this.horizonS } : {}),
      });
      result = { kind: 'ok', resp };
    } catch (e) {
      if (e instanceof ApiError && e.status === 422 && isCollapse(e.body)) {
        result = { kind: 'collapse', resp: e.body };
      } else if (e instanceof ApiError && e.status === 400) {
        failure = `rejected: ${JSON.stringify(e.body)}`;
        revert = true;
      } else {
        failure = `what-if failed: ${String(e)}`;
      }
    }
    if (ticket !== this.seq) return; // a newer request superseded this one
    this.loading = false;
    if (result) {
      this.lastResult = result;
      if (this.bannerOwner === 'whatif') this.setBanner(null, null);
    } else {
      this.setBanner(failure, 'whatif');
      if (revert) {
        for (const { id } of togglesSent) this.pending.delete(id);
      }
    }
    this.notify();
  }

  /** Apply the pending toggles to the committed snapshot. */
  async commit(): Promise<void> {
    if (!this.fleet) return;
    try {
      this.fleet = await this.api.commit(this.toggles(), this.fleet.snapshot_version);
      this.pending.clear();
      this.setBanner(null, null);
    } catch (e) {
      if (e instanceof ApiError && e.status === 409) {
        this.setBanner('commit conflict: snapshot changed, reloading', 'commit');
        this.fleet = await this.api.fleet();
      } else {
        this.setBanner(`commit failed: ${String(e)}`, 'commit');
      }
    }
    this.notify();
    await this.runWhatIf();
  }
}
