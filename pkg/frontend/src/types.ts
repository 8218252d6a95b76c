// Wire types of the review service API.

export type Label = 'EN' | 'HI' | 'OTHER';

export const LABELS: readonly Label[] = ['EN', 'HI', 'OTHER'];

export interface SentenceToken {
  text: string;
  label: Label;
}

export interface ReviewItem {
  sentence_id: string;
  token_index: number;
  token_text: string;
  predicted: Label;
  confidence: number;
  tokens: SentenceToken[];
}

export interface QueuePage {
  items: ReviewItem[];
  cursor: number | null;
}

export interface Progress {
  pending: number;
  corrected: number;
  confirmed: number;
  iteration: number;
}

export type Decision = { kind: 'confirm' } | { kind: 'label'; label: Label };
