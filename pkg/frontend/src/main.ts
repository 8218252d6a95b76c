// DOM wiring: render the queue, handle keys, keep counters in sync.

import { ReviewApi } from './api.js';
import { QueueController } from './controller.js';
import { actionForKey } from './keyboard.js';
import type { ReviewItem } from './types.js';

const api = new ReviewApi('');
const controller = new QueueController(api, render);

const app = document.getElementById('app')!;

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderSentence(item: ReviewItem): HTMLElement {
  const row = el('div', 'sentence');
  item.tokens.forEach((token, i) => {
    const cls = i === item.token_index ? 'token token-focus' : `token token-${token.label.toLowerCase()}`;
    const span = el('span', cls, token.text);
    span.title = token.label;
    row.appendChild(span);
    row.appendChild(document.createTextNode(' '));
  });
  return row;
}

function renderItem(item: ReviewItem, index: number): HTMLElement {
  const row = el('div', index === controller.selection ? 'item item-selected' : 'item');
  const head = el('div', 'item-head');
  head.appendChild(el('span', 'item-token', item.token_text));
  head.appendChild(
    el('span', 'item-pred', `${item.predicted} @ ${item.confidence.toFixed(3)}`),
  );
  row.appendChild(head);
  row.appendChild(renderSentence(item));
  row.addEventListener('click', () => controller.select(index));
  return row;
}

function render(): void {
  app.textContent = '';

  const header = el('header', 'header');
  header.appendChild(el('h1', 'title', 'Review queue'));
  if (controller.progress) {
    const p = controller.progress;
    header.appendChild(
      el(
        'div',
        'progress',
        `iteration ${p.iteration} · pending ${p.pending} · corrected ${p.corrected} · ` +
          `confirmed ${p.confirmed} · ${controller.percentComplete}% done`,
      ),
    );
  }
  app.appendChild(header);

  if (controller.error) {
    const banner = el('div', 'banner', controller.error + ' ');
    const retry = el('button', 'retry', 'retry');
    retry.addEventListener('click', () => void controller.load());
    banner.appendChild(retry);
    app.appendChild(banner);
  }

  if (controller.loading) {
    app.appendChild(el('div', 'status', 'loading…'));
    return;
  }
  if (controller.done) {
    app.appendChild(el('div', 'status status-done', 'All reviewed ✓ (100%)'));
    return;
  }

  const list = el('div', 'items');
  controller.items.forEach((item, i) => list.appendChild(renderItem(item, i)));
  app.appendChild(list);

  app.appendChild(
    el(
      'footer',
      'help',
      'e = EN · h = HI · o = OTHER · Enter = confirm prediction · ↑/↓ move · r reload',
    ),
  );
}

window.addEventListener('keydown', (event) => {
  if (event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement) {
    return;
  }
  const action = actionForKey(event.key);
  if (!action) return;
  event.preventDefault();
  if (action.kind === 'decision') void controller.decide(action.decision);
  else if (action.kind === 'move') controller.move(action.delta);
  else void controller.load();
});

void controller.load();
