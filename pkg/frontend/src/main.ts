/** Browser entry point: file picker -> boot the coordinated views. */

import { LogApi } from './api.js';
import { boot } from './app.js';

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function init() {
  const input = el('log-file') as HTMLInputElement;
  const status = el('status');
  input.addEventListener('change', async () => {
    const file = input.files?.[0];
    if (!file) return;
    status.textContent = `parsing ${file.name} ...`;
    try {
      const app = await boot(new LogApi(''), file, {
        map: el('map'),
        tree: el('tree'),
        timeline: el('timeline'),
      });
      status.textContent =
        `${file.name}: ${(app.meta.duration_us / 1e6).toFixed(1)} s, ` +
        `${app.meta.message_count} messages, ${app.meta.attribute_count} attributes` +
        (app.meta.truncated ? ' (truncated)' : '');
      for (const key of ['setpoints', 'estimated_path', 'dashed_filtered'] as const) {
        const box = el(`toggle-${key}`) as HTMLInputElement;
        box.addEventListener('change', () => app.store.setOverlay(key, box.checked));
      }
      el('reset-brush').addEventListener('click', () => app.store.resetBrush());
    } catch (err) {
      status.textContent = `upload failed: ${err}`;
    }
  });
}

if (typeof document !== 'undefined' && document.getElementById('log-file')) {
  init();
}
