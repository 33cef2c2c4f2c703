/**
 * Application wiring: load the session, submit judgments, toggle what-if
 * overlays. Statuses always come from the latest service response; the
 * client keeps no derived assurance state, only display state (collapse,
 * one-cycle highlights, the what-if overlay selection).
 */

import { ApiClient } from './api.js';
import { buildTree, changedClaims, TreeViewModel } from './model.js';
import { render, renderError, RenderState, showToast } from './view.js';
import type {
  ChecklistItem, ClaimStatus, RationaleDoc, StatusResponse,
} from './types.js';

export class ReviewApp {
  private doc: RationaleDoc | null = null;
  private checklist: ChecklistItem[] = [];
  private status: StatusResponse | null = null;
  private preview: Record<string, ClaimStatus> | null = null;
  private previewDelta = new Set<string>();
  private collapsed = new Set<string>();
  private highlighted = new Set<string>();
  private overlay = new Set<string>();
  private busy = false;

  constructor(
    private readonly container: HTMLElement,
    private readonly api: ApiClient = new ApiClient(),
  ) {}

  async load(): Promise<void> {
    try {
      const [doc, checklist, status] = await Promise.all([
        this.api.rationale(), this.api.checklist(), this.api.status(),
      ]);
      this.doc = doc;
      this.checklist = checklist;
      this.status = status;
      this.highlighted.clear();
      this.render();
    } catch (err) {
      renderError(this.container, String((err as Error).message ?? err), {
        onRetry: () => void this.load(),
        onJudge: () => undefined,
        onWhatIfToggle: () => undefined,
        onToggleCollapse: () => undefined,
      });
    }
  }

  model(): TreeViewModel {
    if (!this.doc || !this.status) throw new Error('not loaded');
    return buildTree(this.doc, this.status, this.checklist, this.preview);
  }

  private render(): void {
    if (!this.doc || !this.status) return;
    const state: RenderState = {
      model: this.model(),
      collapsed: this.collapsed,
      highlighted: this.highlighted,
      overlay: this.overlay,
      previewDelta: this.previewDelta,
      previewActive: this.preview !== null,
      rootEstablished: this.status.rootEstablished,
      warnings: this.status.warnings,
      busy: this.busy,
    };
    render(this.container, state, {
      onJudge: (itemId, verdict) => void this.judge(itemId, verdict),
      onWhatIfToggle: (itemId, active) => void this.toggleWhatIf(itemId, active),
      onToggleCollapse: (claimId) => this.toggleCollapse(claimId),
      onRetry: () => void this.load(),
    });
  }

  private toggleCollapse(claimId: string): void {
    if (this.collapsed.has(claimId)) this.collapsed.delete(claimId);
    else this.collapsed.add(claimId);
    this.highlighted.clear();
    this.render();
  }

  async judge(
    itemId: string, verdict: 'accepted' | 'doubted' | 'pending',
  ): Promise<void> {
    if (!this.status || this.busy) return;
    const before = this.status.statuses;
    const target = this.checklist.find((i) => i.id === itemId)?.target;
    this.busy = true;
    this.render();
    try {
      const after = await this.api.submitJudgment(itemId, verdict);
      this.status = after;
      // highlight the ancestors whose status flipped, for one cycle
      this.highlighted = new Set(
        changedClaims(before, after.statuses).filter((id) => id !== target));
    } catch (err) {
      showToast(`judgment failed: ${(err as Error).message}`);
    } finally {
      this.busy = false;
      this.render();
    }
  }

  async toggleWhatIf(itemId: string, active: boolean): Promise<void> {
    if (active) this.overlay.add(itemId);
    else this.overlay.delete(itemId);
    this.highlighted.clear();
    if (this.overlay.size === 0) {
      // clearing the overlay restores the baseline rendering exactly
      this.preview = null;
      this.previewDelta.clear();
      this.render();
      return;
    }
    try {
      const entries = [...this.overlay].map(
        (id) => ({ itemId: id, verdict: 'doubted' as const }));
      const response = await this.api.whatIf(entries);
      this.preview = response.status;
      this.previewDelta = new Set(response.delta);
    } catch (err) {
      showToast(`what-if failed: ${(err as Error).message}`);
      this.overlay.delete(itemId);
    }
    this.render();
  }

  /** Test hook: currently rendered status badge text per claim. */
  badgeSnapshot(): Record<string, string> {
    const out: Record<string, string> = {};
    this.container.querySelectorAll<HTMLElement>('.status-badge').forEach((badge) => {
      const claim = badge.dataset.claim;
      if (claim) out[claim] = badge.textContent ?? '';
    });
    return out;
  }
}

export function bootstrap(): void {
  const container = document.getElementById('app');
  if (container) void new ReviewApp(container).load();
}

declare global {
  interface Window { __AVC_NO_AUTOSTART?: boolean }
}

if (typeof window !== 'undefined' && !window.__AVC_NO_AUTOSTART) {
  if (document.readyState === 'loading') {
    document.addEventListener('DOMContentLoaded', bootstrap);
  } else {
    bootstrap();
  }
}
