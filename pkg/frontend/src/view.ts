/**
 * DOM rendering: collapsible argument outline, checklist panel, banners.
 * All interactive controls are real buttons/inputs so the whole review loop
 * is keyboard reachable.
 */

import type { TreeNode, TreeViewModel } from './model.js';
import type { ChecklistItem } from './types.js';

export interface ViewCallbacks {
  onJudge(itemId: string, verdict: 'accepted' | 'doubted' | 'pending'): void;
  onWhatIfToggle(itemId: string, active: boolean): void;
  onToggleCollapse(claimId: string): void;
  onRetry(): void;
}

export interface RenderState {
  model: TreeViewModel;
  collapsed: Set<string>;
  highlighted: Set<string>;
  overlay: Set<string>;
  previewDelta: Set<string>;
  previewActive: boolean;
  rootEstablished: boolean;
  warnings: string[];
  busy: boolean;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className = '', text = '',
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function renderNode(
  node: TreeNode, state: RenderState, callbacks: ViewCallbacks,
): HTMLLIElement {
  const li = el('li', 'claim-node');
  li.dataset.claim = node.id;

  const row = el('div', 'claim-row');
  const effective = state.previewActive && node.previewStatus !== null
    ? node.previewStatus
    : node.status;
  row.classList.add(`status-${effective}`);
  if (state.previewActive && state.previewDelta.has(node.id)) {
    row.classList.add('preview-changed');
  }
  if (state.highlighted.has(node.id)) {
    row.classList.add('just-changed');
  }

  if (node.children.length > 0) {
    const toggle = el('button', 'collapse-toggle',
      state.collapsed.has(node.id) ? '+' : '-');
    toggle.type = 'button';
    toggle.setAttribute('aria-label', `toggle ${node.id}`);
    toggle.addEventListener('click', () => callbacks.onToggleCollapse(node.id));
    row.appendChild(toggle);
  } else {
    row.appendChild(el('span', 'leaf-dot', '•'));
  }

  row.appendChild(el('span', 'claim-id', node.id));
  row.appendChild(el('span', 'claim-title', node.title));
  const badge = el('span', 'status-badge', effective);
  badge.dataset.claim = node.id;
  row.appendChild(badge);
  row.appendChild(el('span', 'machine-badge', node.machineBadge));
  if (node.machineRefuted) {
    row.appendChild(el('span', 'machine-refuted', 'machine counterexample attached'));
  }
  li.appendChild(row);

  const statement = el('div', 'claim-statement', node.statementText);
  li.appendChild(statement);

  if (node.children.length > 0 && !state.collapsed.has(node.id)) {
    const ul = el('ul', 'claim-children');
    for (const child of node.children) {
      ul.appendChild(renderNode(child, state, callbacks));
    }
    li.appendChild(ul);
  }
  return li;
}

function renderChecklistEntry(
  item: ChecklistItem, state: RenderState, callbacks: ViewCallbacks,
): HTMLLIElement {
  const li = el('li', 'checklist-entry');
  li.dataset.item = item.id;
  li.appendChild(el('span', 'item-kind', item.kind));
  li.appendChild(el('span', 'item-id', item.id));
  li.appendChild(el('div', 'item-text', item.renderedText));
  li.appendChild(el('div', 'item-machine', item.machineStatus));
  if (item.machineRefuted) {
    li.appendChild(el('div', 'machine-refuted', 'machine counterexample attached'));
  }

  const actions = el('div', 'item-actions');
  const accept = el('button', 'accept-button', 'Accept');
  accept.type = 'button';
  accept.disabled = state.busy;
  accept.addEventListener('click', () => callbacks.onJudge(item.id, 'accepted'));
  const doubt = el('button', 'doubt-button', 'Doubt');
  doubt.type = 'button';
  doubt.disabled = state.busy;
  doubt.addEventListener('click', () => callbacks.onJudge(item.id, 'doubted'));
  const clear = el('button', 'clear-button', 'Clear');
  clear.type = 'button';
  clear.disabled = state.busy;
  clear.addEventListener('click', () => callbacks.onJudge(item.id, 'pending'));
  actions.appendChild(accept);
  actions.appendChild(doubt);
  actions.appendChild(clear);

  const whatIfLabel = el('label', 'whatif-label', ' what-if doubt');
  const whatIf = el('input', 'whatif-toggle');
  whatIf.type = 'checkbox';
  whatIf.checked = state.overlay.has(item.id);
  whatIf.addEventListener('change', () => {
    callbacks.onWhatIfToggle(item.id, whatIf.checked);
  });
  whatIfLabel.prepend(whatIf);
  actions.appendChild(whatIfLabel);

  li.appendChild(actions);
  return li;
}

export function render(
  container: HTMLElement, state: RenderState, callbacks: ViewCallbacks,
): void {
  container.textContent = '';

  const header = el('header', 'app-header');
  header.appendChild(el('h1', '', 'Rationale review'));
  const rootState = el('div', 'root-state');
  rootState.id = 'root-state';
  rootState.textContent = state.rootEstablished
    ? 'root established'
    : 'root not established';
  rootState.classList.add(
    state.rootEstablished ? 'root-established' : 'root-pending');
  header.appendChild(rootState);
  if (state.warnings.length > 0) {
    const warn = el('div', 'warnings');
    for (const text of state.warnings) {
      warn.appendChild(el('div', 'warning', text));
    }
    header.appendChild(warn);
  }
  if (state.previewActive) {
    header.appendChild(el('div', 'preview-banner',
      'what-if preview active; statuses shown are hypothetical'));
  }
  container.appendChild(header);

  const main = el('main', 'app-main');
  const treeSection = el('section', 'tree-panel');
  treeSection.appendChild(el('h2', '', 'Argument'));
  const treeRoot = el('ul', 'claim-tree');
  treeRoot.appendChild(renderNode(state.model.root, state, callbacks));
  treeSection.appendChild(treeRoot);
  main.appendChild(treeSection);

  const listSection = el('section', 'checklist-panel');
  listSection.appendChild(el('h2', '', 'Checklist'));
  if (state.model.checklist.length === 0) {
    listSection.appendChild(el('div', 'empty-checklist',
      'Checklist empty - nothing left to review.'));
  } else {
    const ul = el('ul', 'checklist');
    for (const item of state.model.checklist) {
      ul.appendChild(renderChecklistEntry(item, state, callbacks));
    }
    listSection.appendChild(ul);
  }
  main.appendChild(listSection);
  container.appendChild(main);
}

export function renderError(
  container: HTMLElement, message: string, callbacks: ViewCallbacks,
): void {
  container.textContent = '';
  const banner = el('div', 'error-banner');
  banner.appendChild(el('span', '', `cannot reach the review service: ${message}`));
  const retry = el('button', 'retry-button', 'Retry');
  retry.type = 'button';
  retry.addEventListener('click', () => callbacks.onRetry());
  banner.appendChild(retry);
  container.appendChild(banner);
}

export function showToast(message: string): void {
  // Toasts live on the body so re-renders of the app container keep them.
  const toast = el('div', 'toast', message);
  document.body.appendChild(toast);
  setTimeout(() => toast.remove(), 4000);
}
