/**
 * Tree view model: a pure projection of /api/rationale + /api/status +
 * /api/checklist. No assurance status is computed here; machine badges are
 * read off the checklist (a claim absent from the checklist is machine-
 * discharged).
 */

import type {
  ChecklistItem, ClaimStatus, RationaleDoc, StatusResponse,
} from './types.js';

export interface TreeNode {
  id: string;
  title: string;
  statementText: string;
  status: ClaimStatus;
  /** status pulled from a what-if preview, when one is active */
  previewStatus: ClaimStatus | null;
  machineBadge: string;
  machineRefuted: boolean;
  /** checklist item id for this claim's own conjecture, if on the list */
  conjectureItemId: string | null;
  /** checklist item id for this claim's decomposition, if on the list */
  inferenceItemId: string | null;
  children: TreeNode[];
}

export interface TreeViewModel {
  root: TreeNode;
  nodeCount: number;
  checklist: ChecklistItem[];
}

function statementText(doc: RationaleDoc, id: string): string {
  const claim = doc.claims.find((c) => c.id === id);
  if (!claim) return '';
  const body = claim.statement.kind === 'formal'
    ? claim.statement.formula ?? ''
    : claim.statement.text ?? '';
  return body;
}

export function buildTree(
  doc: RationaleDoc,
  status: StatusResponse,
  checklist: ChecklistItem[],
  preview: Record<string, ClaimStatus> | null = null,
): TreeViewModel {
  const childrenOf = new Map<string, string[]>();
  const decomposed = new Set<string>();
  for (const d of doc.decompositions) {
    childrenOf.set(d.parent, d.children);
    decomposed.add(d.parent);
  }
  const conjectureItems = new Map<string, ChecklistItem>();
  const inferenceItems = new Map<string, ChecklistItem>();
  for (const item of checklist) {
    if (item.kind === 'conjecture') conjectureItems.set(item.target, item);
    else inferenceItems.set(item.target, item);
  }

  let count = 0;
  const build = (id: string): TreeNode => {
    count += 1;
    const claim = doc.claims.find((c) => c.id === id);
    const isLeaf = !decomposed.has(id);
    const conjecture = conjectureItems.get(id) ?? null;
    const inference = inferenceItems.get(id) ?? null;
    let badge: string;
    let refuted = false;
    if (isLeaf) {
      badge = conjecture ? conjecture.machineStatus : 'machine-verified';
      refuted = conjecture?.machineRefuted ?? false;
    } else {
      badge = inference ? `inference ${inference.machineStatus}` : 'inference machine-valid';
      refuted = inference?.machineRefuted ?? false;
    }
    return {
      id,
      title: claim?.title ?? id,
      statementText: statementText(doc, id),
      status: status.statuses[id] ?? 'open',
      previewStatus: preview ? (preview[id] ?? 'open') : null,
      machineBadge: badge,
      machineRefuted: refuted,
      conjectureItemId: conjecture?.id ?? null,
      inferenceItemId: inference?.id ?? null,
      children: (childrenOf.get(id) ?? []).map(build),
    };
  };

  const root = build(doc.root);
  return { root, nodeCount: count, checklist };
}

/** Claims whose status differs between two status maps. */
export function changedClaims(
  before: Record<string, ClaimStatus>,
  after: Record<string, ClaimStatus>,
): string[] {
  const changed: string[] = [];
  const ids = new Set([...Object.keys(before), ...Object.keys(after)]);
  for (const id of ids) {
    if (before[id] !== after[id]) changed.push(id);
  }
  return changed.sort();
}
