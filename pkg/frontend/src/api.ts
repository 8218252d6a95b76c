// Thin fetch wrapper around the review service endpoints.

import type { Decision, Progress, QueuePage, ReviewItem } from './types.js';

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = 'ApiError';
  }
}

async function errorMessage(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.error === 'string') return body.error;
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

export class ReviewApi {
  constructor(private readonly baseUrl: string = '') {}

  private async getJson<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path);
    } catch {
      throw new ApiError('review service unreachable');
    }
    if (!response.ok) throw new ApiError(await errorMessage(response), response.status);
    return (await response.json()) as T;
  }

  loadQueue(limit: number, cursor?: number): Promise<QueuePage> {
    const query = cursor === undefined ? `limit=${limit}` : `limit=${limit}&cursor=${cursor}`;
    return this.getJson<QueuePage>(`/queue?${query}`);
  }

  progress(): Promise<Progress> {
    return this.getJson<Progress>('/progress');
  }

  async submit(item: ReviewItem, decision: Decision): Promise<void> {
    const payload: Record<string, unknown> = {
      sentence_id: item.sentence_id,
      token_index: item.token_index,
    };
    if (decision.kind === 'confirm') payload.confirm = true;
    else payload.label = decision.label;

    let response: Response;
    try {
      response = await fetch(this.baseUrl + '/corrections', {
        method: 'POST',
        headers: { 'Content-Type': 'application/json' },
        body: JSON.stringify(payload),
      });
    } catch {
      throw new ApiError('review service unreachable');
    }
    if (!response.ok) throw new ApiError(await errorMessage(response), response.status);
  }
}
