/** Thin fetch client for the review service. */

import type {
  ChecklistItem, OverlayEntry, RationaleDoc, StatusResponse, WhatIfResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.error === 'string') detail = body.error;
    } catch {
      // keep statusText
    }
    throw new ApiError(detail, response.status);
  }
  return response.json() as Promise<T>;
}

export class ApiClient {
  constructor(readonly baseUrl: string = '') {}

  private url(path: string): string {
    return this.baseUrl + path;
  }

  async rationale(): Promise<RationaleDoc> {
    return asJson(await fetch(this.url('/api/rationale')));
  }

  async checklist(): Promise<ChecklistItem[]> {
    return asJson(await fetch(this.url('/api/checklist')));
  }

  async status(): Promise<StatusResponse> {
    return asJson(await fetch(this.url('/api/status')));
  }

  async submitJudgment(
    itemId: string, verdict: string, note = '',
  ): Promise<StatusResponse> {
    return asJson(await fetch(this.url('/api/judgments'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ itemId, verdict, note }),
    }));
  }

  async whatIf(overlay: OverlayEntry[]): Promise<WhatIfResponse> {
    return asJson(await fetch(this.url('/api/whatif'), {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ overlay }),
    }));
  }
}
