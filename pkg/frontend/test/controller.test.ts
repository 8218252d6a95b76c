import { describe, expect, it } from 'vitest';

import { ApiError } from '../src/api.js';
import { QueueController } from '../src/controller.js';
import type { Decision, Progress, QueuePage, ReviewItem } from '../src/types.js';

function item(id: number): ReviewItem {
  return {
    sentence_id: `s${id}`,
    token_index: 1,
    token_text: `tok${id}`,
    predicted: 'EN',
    confidence: 0.5,
    tokens: [
      { text: 'a', label: 'EN' },
      { text: `tok${id}`, label: 'EN' },
    ],
  };
}

/** Fake service: mirrors the real one's pending/corrected bookkeeping. */
class FakeApi {
  items: ReviewItem[];
  corrected = 0;
  confirmed = 0;
  submissions: Array<{ id: string; decision: Decision }> = [];
  failNext: ApiError | null = null;
  delayed: Array<() => void> = [];
  holdSubmissions = false;

  constructor(count: number) {
    this.items = Array.from({ length: count }, (_, i) => item(i));
  }

  async loadQueue(limit: number): Promise<QueuePage> {
    return { items: this.items.slice(0, limit), cursor: null };
  }

  async progress(): Promise<Progress> {
    return {
      pending: this.items.length,
      corrected: this.corrected,
      confirmed: this.confirmed,
      iteration: 1,
    };
  }

  async submit(target: ReviewItem, decision: Decision): Promise<void> {
    if (this.holdSubmissions) {
      await new Promise<void>((resolve) => this.delayed.push(resolve));
    }
    if (this.failNext) {
      const err = this.failNext;
      this.failNext = null;
      throw err;
    }
    this.submissions.push({ id: target.sentence_id, decision });
    this.items = this.items.filter((i) => i.sentence_id !== target.sentence_id);
    if (decision.kind === 'confirm') this.confirmed += 1;
    else this.corrected += 1;
  }
}

function controller(count: number) {
  const api = new FakeApi(count);
  const ctl = new QueueController(api as never);
  return { api, ctl };
}

describe('QueueController', () => {
  it('loads the queue with the first item selected', async () => {
    const { ctl } = controller(3);
    await ctl.load();
    expect(ctl.items).toHaveLength(3);
    expect(ctl.selection).toBe(0);
    expect(ctl.selected?.sentence_id).toBe('s0');
    expect(ctl.progress?.pending).toBe(3);
    expect(ctl.done).toBe(false);
  });

  it('shows the all-reviewed state for an empty queue', async () => {
    const { ctl } = controller(0);
    await ctl.load();
    expect(ctl.done).toBe(true);
    expect(ctl.percentComplete).toBe(100);
  });

  it('surfaces a connection failure as a banner message', async () => {
    const api = {
      loadQueue: async () => {
        throw new ApiError('review service unreachable');
      },
      progress: async () => {
        throw new ApiError('review service unreachable');
      },
      submit: async () => {},
    };
    const ctl = new QueueController(api as never);
    await ctl.load();
    expect(ctl.error).toBe('review service unreachable');
    expect(ctl.done).toBe(false);
  });

  it('removes the item and advances after a successful decision', async () => {
    const { api, ctl } = controller(3);
    await ctl.load();
    await ctl.decide({ kind: 'label', label: 'HI' });
    expect(api.submissions).toEqual([{ id: 's0', decision: { kind: 'label', label: 'HI' } }]);
    expect(ctl.items.map((i) => i.sentence_id)).toEqual(['s1', 's2']);
    expect(ctl.selected?.sentence_id).toBe('s1');
    expect(ctl.progress?.pending).toBe(2);
    expect(ctl.progress?.corrected).toBe(1);
  });

  it('confirm keeps the prediction on the server side', async () => {
    const { api, ctl } = controller(1);
    await ctl.load();
    await ctl.decide({ kind: 'confirm' });
    expect(api.submissions[0]?.decision).toEqual({ kind: 'confirm' });
    expect(api.confirmed).toBe(1);
    expect(ctl.done).toBe(true);
  });

  it('keeps the item and shows the server message on error', async () => {
    const { api, ctl } = controller(2);
    await ctl.load();
    api.failNext = new ApiError('label must be one of EN/HI/OTHER', 422);
    await ctl.decide({ kind: 'label', label: 'HI' });
    expect(ctl.items).toHaveLength(2);
    expect(ctl.selection).toBe(0);
    expect(ctl.error).toBe('label must be one of EN/HI/OTHER');
    // the next decision succeeds and clears the error
    await ctl.decide({ kind: 'confirm' });
    expect(ctl.error).toBeNull();
    expect(ctl.items).toHaveLength(1);
  });

  it('applies queued keystrokes sequentially to successive items', async () => {
    const { api, ctl } = controller(3);
    await ctl.load();
    api.holdSubmissions = true;
    const first = ctl.decide({ kind: 'label', label: 'HI' });
    const second = ctl.decide({ kind: 'confirm' });
    const third = ctl.decide({ kind: 'label', label: 'OTHER' });
    // release the held submissions one at a time
    while (api.delayed.length || api.submissions.length < 3) {
      api.delayed.splice(0).forEach((release) => release());
      await Promise.resolve();
      await new Promise((r) => setTimeout(r, 0));
    }
    await Promise.all([first, second, third]);
    expect(api.submissions.map((s) => s.id)).toEqual(['s0', 's1', 's2']);
    expect(ctl.done).toBe(true);
  });

  it('local state always matches a server re-fetch', async () => {
    const { api, ctl } = controller(4);
    await ctl.load();
    await ctl.decide({ kind: 'confirm' });
    await ctl.decide({ kind: 'label', label: 'OTHER' });
    const fresh = await api.loadQueue(100);
    expect(ctl.items).toEqual(fresh.items);
    expect(ctl.progress).toEqual(await api.progress());
  });

  it('selection moves clamp to the list bounds', async () => {
    const { ctl } = controller(2);
    await ctl.load();
    ctl.move(-1);
    expect(ctl.selection).toBe(0);
    ctl.move(1);
    expect(ctl.selection).toBe(1);
    ctl.move(1);
    expect(ctl.selection).toBe(1);
  });
});
