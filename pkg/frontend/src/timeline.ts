/**
 * Timeline: fixed-resolution strip spanning the whole flight, showing a
 * static line of the selected attribute, categorical mode squares below
 * the axis, the brush window, and the mirrored hover cursor.
 *
 * Brushing: drag inside the window moves it, dragging its edges resizes,
 * dragging outside draws a new window. The window rectangle carries
 * data-w0 / data-w1 for the coherence checks.
 */

import type { EventPayload, SeriesPayload } from './api.js';
import type { Store, ViewState } from './state.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export const SQUARE_SIZE = 10;
export const MODE_COLORS = [
  '#e69f00', '#56b4e9', '#009e73', '#f0e442',
  '#0072b2', '#d55e00', '#cc79a7',
];

export class Timeline {
  readonly root: SVGSVGElement;
  private lineLayer: SVGGElement;
  private squaresLayer: SVGGElement;
  private windowRect: SVGRectElement;
  private cursorLayer: SVGGElement;
  private drag: { mode: 'new' | 'move' | 'left' | 'right'; anchorPx: number } | null =
    null;

  constructor(
    container: HTMLElement,
    private readonly store: Store,
    readonly width = 800,
    readonly height = 90,
  ) {
    this.root = document.createElementNS(SVG_NS, 'svg');
    this.root.setAttribute('class', 'timeline');
    this.root.setAttribute('width', String(width));
    this.root.setAttribute('height', String(height));
    this.lineLayer = document.createElementNS(SVG_NS, 'g');
    this.squaresLayer = document.createElementNS(SVG_NS, 'g');
    this.squaresLayer.setAttribute('class', 'mode-squares');
    this.windowRect = document.createElementNS(SVG_NS, 'rect');
    this.windowRect.setAttribute('class', 'brush-window');
    this.windowRect.setAttribute('fill', '#9e9e9e');
    this.windowRect.setAttribute('fill-opacity', '0.35');
    this.cursorLayer = document.createElementNS(SVG_NS, 'g');
    this.root.append(this.lineLayer, this.squaresLayer, this.windowRect, this.cursorLayer);
    container.append(this.root);
    this.bindBrush();
  }

  private get t0(): number {
    return this.store.get().flightStart;
  }

  private get t1(): number {
    return this.store.get().flightEnd;
  }

  xFor(t: number): number {
    const span = this.t1 - this.t0;
    return span > 0 ? ((t - this.t0) / span) * this.width : 0;
  }

  timeAt(px: number): number {
    const f = Math.min(Math.max(px / this.width, 0), 1);
    return Math.round(this.t0 + f * (this.t1 - this.t0));
  }

  private bindBrush() {
    const px = (ev: Event) => {
      const rect = this.root.getBoundingClientRect();
      return (ev as MouseEvent).clientX - rect.left;
    };
    const edgeGrab = 6;
    this.root.addEventListener('mousedown', (ev) => {
      const x = px(ev);
      const w = this.store.get().window;
      const xa = this.xFor(w.start_us);
      const xb = this.xFor(w.end_us);
      if (Math.abs(x - xa) <= edgeGrab) {
        this.drag = { mode: 'left', anchorPx: xb };
      } else if (Math.abs(x - xb) <= edgeGrab) {
        this.drag = { mode: 'right', anchorPx: xa };
      } else if (x > xa && x < xb) {
        this.drag = { mode: 'move', anchorPx: x - xa };
      } else {
        this.drag = { mode: 'new', anchorPx: x };
        this.store.applyBrush(this.timeAt(x), this.timeAt(x));
      }
    });
    this.root.addEventListener('mousemove', (ev) => {
      const x = px(ev);
      if (!this.drag) {
        this.store.setHover(this.timeAt(x));
        return;
      }
      const w = this.store.get().window;
      if (this.drag.mode === 'new' || this.drag.mode === 'right') {
        const a = this.drag.mode === 'new' ? this.drag.anchorPx : this.drag.anchorPx;
        this.store.applyBrush(this.timeAt(a), this.timeAt(x));
      } else if (this.drag.mode === 'left') {
        this.store.applyBrush(this.timeAt(x), this.timeAt(this.drag.anchorPx));
      } else {
        const widthUs = w.end_us - w.start_us;
        const start = this.timeAt(x - this.drag.anchorPx);
        this.store.applyBrush(start, start + widthUs);
      }
    });
    this.root.addEventListener('mouseup', () => {
      this.drag = null;
    });
    this.root.addEventListener('mouseleave', () => {
      this.drag = null;
      this.store.setHover(null);
    });
  }

  render(state: ViewState, selectedSeries: SeriesPayload | null, events: EventPayload[]) {
    // static full-flight line of the selected attribute
    this.lineLayer.replaceChildren();
    if (selectedSeries && selectedSeries.timestamps.length) {
      let vmin = Infinity;
      let vmax = -Infinity;
      for (const v of selectedSeries.values) {
        if (v === null) continue;
        if (v < vmin) vmin = v;
        if (v > vmax) vmax = v;
      }
      if (!(vmin < vmax)) {
        vmax = vmin + 1;
        vmin = vmin - 1;
      }
      const usable = this.height - SQUARE_SIZE - 14;
      const pts: string[] = [];
      for (let i = 0; i < selectedSeries.timestamps.length; i++) {
        const v = selectedSeries.values[i];
        if (v === null) continue;
        const x = this.xFor(selectedSeries.timestamps[i]);
        const y = 4 + (1 - (v - vmin) / (vmax - vmin)) * usable;
        pts.push(`${x},${y}`);
      }
      const line = document.createElementNS(SVG_NS, 'polyline');
      line.setAttribute('class', 'timeline-series');
      line.setAttribute('points', pts.join(' '));
      line.setAttribute('fill', 'none');
      this.lineLayer.append(line);
    }

    // flight-mode squares just below the axis
    this.squaresLayer.replaceChildren();
    const y = this.height - SQUARE_SIZE - 2;
    for (const e of events) {
      if (e.kind !== 'flight_mode_change') continue;
      const sq = document.createElementNS(SVG_NS, 'rect');
      sq.setAttribute('class', 'mode-square');
      sq.setAttribute('data-t', String(e.timestamp_us));
      sq.setAttribute('data-label', e.label);
      sq.setAttribute('x', String(this.xFor(e.timestamp_us)));
      sq.setAttribute('y', String(y));
      sq.setAttribute('width', String(SQUARE_SIZE));
      sq.setAttribute('height', String(SQUARE_SIZE));
      sq.setAttribute(
        'fill',
        MODE_COLORS[e.category_index % MODE_COLORS.length],
      );
      const tip = document.createElementNS(SVG_NS, 'title');
      tip.textContent = `${e.label} @ ${(e.timestamp_us / 1e6).toFixed(1)}s`;
      sq.append(tip);
      sq.addEventListener('mouseenter', () => this.store.setHover(e.timestamp_us));
      this.squaresLayer.append(sq);
    }

    // brush window
    const xa = this.xFor(state.window.start_us);
    const xb = this.xFor(state.window.end_us);
    this.windowRect.setAttribute('x', String(xa));
    this.windowRect.setAttribute('y', '0');
    this.windowRect.setAttribute('width', String(Math.max(xb - xa, 1)));
    this.windowRect.setAttribute('height', String(this.height));
    this.windowRect.setAttribute('data-w0', String(state.window.start_us));
    this.windowRect.setAttribute('data-w1', String(state.window.end_us));

    // mirrored hover cursor
    this.cursorLayer.replaceChildren();
    if (state.hover !== null) {
      const bar = document.createElementNS(SVG_NS, 'rect');
      bar.setAttribute('class', 'hover-cursor');
      bar.setAttribute('data-t', String(state.hover));
      bar.setAttribute('x', String(this.xFor(state.hover)));
      bar.setAttribute('y', '0');
      bar.setAttribute('width', '1.5');
      bar.setAttribute('height', String(this.height));
      this.cursorLayer.append(bar);
    }
  }
}
