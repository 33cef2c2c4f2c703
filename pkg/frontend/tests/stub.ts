/**
 * Scripted review-service stub. Every response body is a fixture generated
 * by the analysis pipeline (scripts/gen_ui_fixtures.py in the repository
 * root), so the UI tests exercise real propagation results without running
 * the service.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), 'fixtures');

function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), 'utf-8')) as T;
}

export const rationaleDoc = fixture<any>('rationale.json');
export const checklistItems = fixture<any[]>('checklist.json');
export const statusInitial = fixture<any>('status_initial.json');
export const statusDoubtC12 = fixture<any>('status_doubt_c12.json');
export const acceptSequence = fixture<{ itemId: string; status: any }[]>(
  'status_accept_seq.json');
export const whatIfDoubtC9 = fixture<any>('whatif_doubt_c9.json');
export const whatIfEmpty = fixture<any>('whatif_empty.json');

interface RecordedRequest {
  method: string;
  path: string;
  body: any;
}

export class StubService {
  requests: RecordedRequest[] = [];
  /** simulate a dead service */
  offline = false;
  /** force the next judgment POST to fail with this message */
  judgmentError: string | null = null;

  /** accepted item ids, in canonical checklist order */
  private accepted = new Set<string>();
  private canonicalOrder = acceptSequence.map((entry) => entry.itemId);

  install(): void {
    globalThis.fetch = this.handle as typeof fetch;
  }

  private json(payload: unknown, status = 200): Response {
    return new Response(JSON.stringify(payload), {
      status,
      headers: { 'Content-Type': 'application/json', 'X-AVC-API': '1' },
    });
  }

  private handle = async (input: RequestInfo | URL, init?: RequestInit):
      Promise<Response> => {
    const path = String(input);
    const method = init?.method ?? 'GET';
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, path, body });
    if (this.offline) {
      throw new TypeError('fetch failed');
    }
    if (method === 'GET') {
      if (path.endsWith('/api/rationale')) return this.json(rationaleDoc);
      if (path.endsWith('/api/checklist')) return this.json(checklistItems);
      if (path.endsWith('/api/status')) return this.json(statusInitial);
      return this.json({ error: 'unknown endpoint' }, 404);
    }
    if (path.endsWith('/api/judgments')) {
      if (this.judgmentError) {
        const message = this.judgmentError;
        this.judgmentError = null;
        return this.json({ error: message }, 400);
      }
      if (body.verdict === 'doubted' && body.itemId === 'C12'
          && this.accepted.size === 0) {
        return this.json(statusDoubtC12);
      }
      if (body.verdict === 'accepted') {
        // Accepts must arrive in canonical order (the precomputed prefix
        // states); re-accepting an already-accepted item is idempotent.
        if (this.accepted.has(body.itemId)) {
          return this.json(acceptSequence[this.accepted.size - 1].status);
        }
        if (body.itemId === this.canonicalOrder[this.accepted.size]) {
          this.accepted.add(body.itemId);
          return this.json(acceptSequence[this.accepted.size - 1].status);
        }
      }
      return this.json({ error: `unscripted judgment ${body.itemId}` }, 400);
    }
    if (path.endsWith('/api/whatif')) {
      const overlay = body.overlay ?? [];
      if (overlay.length === 0) return this.json(whatIfEmpty);
      if (overlay.length === 1 && overlay[0].itemId === 'C9') {
        return this.json(whatIfDoubtC9);
      }
      return this.json({ error: 'unscripted overlay' }, 400);
    }
    return this.json({ error: 'unknown endpoint' }, 404);
  };
}
