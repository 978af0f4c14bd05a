import type {
  CollapsePayload,
  FleetPayload,
  HealthPayload,
  Toggle,
  WhatIfResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
  ) {
    super(`HTTP ${status}`);
  }
}

export interface WhatIfRequest {
  toggles: Toggle[];
  loss_mw: number;
  include_trajectory?: boolean;
  horizon_s?: number;
}

export class Client {
  constructor(
    private base: string,
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchFn(`${this.base}${path}`);
    if (!res.ok) throw new ApiError(res.status, await res.json().catch(() => null));
    return res.json() as Promise<T>;
  }

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const res = await this.fetchFn(`${this.base}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
    if (!res.ok) throw new ApiError(res.status, await res.json().catch(() => null));
    return res.json() as Promise<T>;
  }

  health(): Promise<HealthPayload> {
    return this.get('/api/health');
  }

  fleet(): Promise<FleetPayload> {
    return this.get('/api/fleet');
  }

  whatIf(req: WhatIfRequest): Promise<WhatIfResponse> {
    return this.post('/api/whatif', req);
  }

  commit(toggles: Toggle[], expectedVersion?: number): Promise<FleetPayload> {
    return this.post('/api/commit', {
      toggles,
      expected_version: expectedVersion ?? null,
    });
  }
}

export function isCollapse(body: unknown): body is CollapsePayload {
  return (
    typeof body === 'object' && body !== null && (body as { collapse?: boolean }).collapse === true
  );
}
