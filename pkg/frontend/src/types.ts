/**
 * Wire types for the review service API (X-AVC-API: 1).
 * The UI never derives assurance statuses itself; every status string
 * rendered comes from one of these payloads.
 */

export type ClaimStatus = 'established' | 'blocked' | 'open';

export type JudgmentVerdict = 'accepted' | 'doubted' | 'pending';

export interface StatementJson {
  kind: 'formal' | 'informal';
  formula?: string;
  text?: string;
}

export interface ClaimJson {
  id: string;
  title: string;
  statement: StatementJson;
  verify: { verifier: string } | null;
  note: string | null;
}

export interface DecompositionJson {
  parent: string;
  children: string[];
}

export interface RationaleDoc {
  format: string;
  version: number;
  name: string;
  root: string;
  claims: ClaimJson[];
  decompositions: DecompositionJson[];
}

export interface ChecklistItem {
  id: string;
  kind: 'conjecture' | 'inference';
  target: string;
  renderedText: string;
  machineStatus: string;
  machineRefuted: boolean;
}

export interface StatusResponse {
  statuses: Record<string, ClaimStatus>;
  warnings: string[];
  root: string;
  rootEstablished: boolean;
}

export interface WhatIfResponse {
  status: Record<string, ClaimStatus>;
  delta: string[];
}

export interface OverlayEntry {
  itemId: string;
  verdict: JudgmentVerdict;
}
