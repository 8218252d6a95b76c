// Keyboard-first review flow: e/h/o correct to EN/HI/OTHER, Enter
// confirms the prediction, arrows (or j/k) move the selection.

import type { Decision } from './types.js';

export type KeyAction =
  | { kind: 'decision'; decision: Decision }
  | { kind: 'move'; delta: 1 | -1 }
  | { kind: 'reload' };

export function actionForKey(key: string): KeyAction | null {
  switch (key) {
    case 'e':
    case 'E':
      return { kind: 'decision', decision: { kind: 'label', label: 'EN' } };
    case 'h':
    case 'H':
      return { kind: 'decision', decision: { kind: 'label', label: 'HI' } };
    case 'o':
    case 'O':
      return { kind: 'decision', decision: { kind: 'label', label: 'OTHER' } };
    case 'Enter':
      return { kind: 'decision', decision: { kind: 'confirm' } };
    case 'ArrowDown':
    case 'j':
    case 'J':
      return { kind: 'move', delta: 1 };
    case 'ArrowUp':
    case 'k':
    case 'K':
      return { kind: 'move', delta: -1 };
    case 'r':
    case 'R':
      return { kind: 'reload' };
    default:
      return null;
  }
}
