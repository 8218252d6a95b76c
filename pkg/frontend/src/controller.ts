// Queue state machine: selection, sequential mutation, server-truth sync.
//
// The server is the single source of truth: an item disappears locally
// only after the service accepts the decision, progress counters are
// re-fetched after every mutation, and at most one mutation is in
// flight (further keystrokes queue and apply to whatever is selected
// when their turn comes).

import { ApiError, ReviewApi } from './api.js';
import type { Decision, Progress, ReviewItem } from './types.js';

interface QueuedDecision {
  decision: Decision;
  resolve: () => void;
}

export class QueueController {
  items: ReviewItem[] = [];
  selection = 0;
  progress: Progress | null = null;
  error: string | null = null;
  loading = false;
  loaded = false;

  private inFlight = false;
  private queued: QueuedDecision[] = [];

  constructor(
    private readonly api: ReviewApi,
    private readonly onChange: () => void = () => {},
  ) {}

  get selected(): ReviewItem | null {
    return this.items[this.selection] ?? null;
  }

  get done(): boolean {
    return this.loaded && this.items.length === 0;
  }

  get percentComplete(): number {
    if (!this.progress) return 0;
    const total = this.progress.pending + this.progress.corrected + this.progress.confirmed;
    if (total === 0) return 100;
    return Math.round((100 * (total - this.progress.pending)) / total);
  }

  async load(limit = 200): Promise<void> {
    this.loading = true;
    this.error = null;
    this.onChange();
    try {
      const page = await this.api.loadQueue(limit);
      this.items = page.items;
      this.selection = 0;
      this.progress = await this.api.progress();
      this.loaded = true;
    } catch (err) {
      this.error = messageOf(err);
    } finally {
      this.loading = false;
      this.onChange();
    }
  }

  select(index: number): void {
    if (this.items.length === 0) return;
    this.selection = Math.min(Math.max(index, 0), this.items.length - 1);
    this.onChange();
  }

  move(delta: number): void {
    this.select(this.selection + delta);
  }

  /** Apply a decision to the currently selected item; keystrokes queue. */
  decide(decision: Decision): Promise<void> {
    return new Promise((resolve) => {
      this.queued.push({ decision, resolve });
      void this.pump();
    });
  }

  private async pump(): Promise<void> {
    if (this.inFlight) return;
    const entry = this.queued.shift();
    if (!entry) return;
    const item = this.selected;
    if (!item) {
      // nothing left to review: drop the queued decisions
      this.queued.forEach((q) => q.resolve());
      this.queued = [];
      entry.resolve();
      return;
    }
    this.inFlight = true;
    this.onChange();
    try {
      await this.api.submit(item, entry.decision);
      this.items.splice(this.selection, 1);
      if (this.selection >= this.items.length) {
        this.selection = Math.max(0, this.items.length - 1);
      }
      this.error = null;
      try {
        this.progress = await this.api.progress();
      } catch {
        // keep the stale counters; next mutation refreshes them
      }
    } catch (err) {
      // the item stays; drop queued keystrokes so they cannot repeat
      this.error = messageOf(err);
      this.queued.forEach((q) => q.resolve());
      this.queued = [];
    } finally {
      this.inFlight = false;
      entry.resolve();
      this.onChange();
      void this.pump();
    }
  }
}

function messageOf(err: unknown): string {
  if (err instanceof ApiError) return err.message;
  if (err instanceof Error) return err.message;
  return String(err);
}
