/**
 * SVG line charts. Each chart's x-domain is exactly the brushed window
 * (exposed as data-x0 / data-x1 for the coherence checks); hovering
 * draws a thin time cursor with the value readout, valued by
 * last-observation-carried-forward like the map segments.
 */

import type { SeriesPayload } from './api.js';
import type { ViewState } from './state.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export const CURSOR_WIDTH = 1.5;

export interface ChartOptions {
  width?: number;
  height?: number;
  title?: string;
}

/** Largest sample index with timestamp <= t, by binary search; -1 if none. */
export function locfIndex(timestamps: number[], t: number): number {
  let lo = 0;
  let hi = timestamps.length - 1;
  let out = -1;
  while (lo <= hi) {
    const mid = (lo + hi) >> 1;
    if (timestamps[mid] <= t) {
      out = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return out;
}

export class LineChart {
  readonly root: SVGSVGElement;
  private seriesLayer: SVGGElement;
  private cursorLayer: SVGGElement;
  private x0 = 0;
  private x1 = 1;
  private data: SeriesPayload[] = [];
  readonly width: number;
  readonly height: number;
  onHover: ((t: number | null) => void) | null = null;

  constructor(container: HTMLElement, readonly attr: string, opts: ChartOptions = {}) {
    this.width = opts.width ?? 420;
    this.height = opts.height ?? 110;
    this.root = document.createElementNS(SVG_NS, 'svg');
    this.root.setAttribute('class', 'line-chart');
    this.root.setAttribute('data-attr', attr);
    this.root.setAttribute('width', String(this.width));
    this.root.setAttribute('height', String(this.height));
    const title = document.createElementNS(SVG_NS, 'text');
    title.setAttribute('class', 'chart-title');
    title.setAttribute('x', '4');
    title.setAttribute('y', '12');
    title.textContent = opts.title ?? attr;
    this.seriesLayer = document.createElementNS(SVG_NS, 'g');
    this.seriesLayer.setAttribute('class', 'series');
    this.cursorLayer = document.createElementNS(SVG_NS, 'g');
    this.cursorLayer.setAttribute('class', 'cursor');
    this.root.append(title, this.seriesLayer, this.cursorLayer);
    this.root.addEventListener('mousemove', (ev) => {
      const rect = this.root.getBoundingClientRect();
      const px = (ev as MouseEvent).clientX - rect.left;
      this.onHover?.(this.timeAt(px));
    });
    this.root.addEventListener('mouseleave', () => this.onHover?.(null));
    container.append(this.root);
  }

  timeAt(px: number): number {
    const f = Math.min(Math.max(px / this.width, 0), 1);
    return Math.round(this.x0 + f * (this.x1 - this.x0));
  }

  private xFor(t: number): number {
    const span = this.x1 - this.x0;
    return span > 0 ? ((t - this.x0) / span) * this.width : 0;
  }

  render(state: ViewState, series: SeriesPayload[]) {
    this.x0 = state.window.start_us;
    this.x1 = state.window.end_us;
    this.data = series;
    this.root.setAttribute('data-x0', String(this.x0));
    this.root.setAttribute('data-x1', String(this.x1));
    this.seriesLayer.replaceChildren();

    let vmin = Infinity;
    let vmax = -Infinity;
    for (const s of series) {
      for (const v of s.values) {
        if (v === null) continue;
        if (v < vmin) vmin = v;
        if (v > vmax) vmax = v;
      }
    }
    if (!(vmin < vmax)) {
      vmax = vmin === Infinity ? 1 : vmin + 1;
      vmin = vmin === Infinity ? 0 : vmin - 1;
    }
    const yFor = (v: number) =>
      this.height - 8 - ((v - vmin) / (vmax - vmin)) * (this.height - 24);

    for (const s of series) {
      const pts: string[] = [];
      for (let i = 0; i < s.timestamps.length; i++) {
        const v = s.values[i];
        if (v === null) continue;
        pts.push(`${this.xFor(s.timestamps[i])},${yFor(v)}`);
      }
      const line = document.createElementNS(SVG_NS, 'polyline');
      line.setAttribute('class', 'series-line');
      line.setAttribute('data-series', s.attr);
      line.setAttribute('points', pts.join(' '));
      line.setAttribute('fill', 'none');
      this.seriesLayer.append(line);
    }
    this.renderCursor(state);
  }

  renderCursor(state: ViewState) {
    this.cursorLayer.replaceChildren();
    const t = state.hover;
    if (t === null || t < this.x0 || t > this.x1) return;
    const x = this.xFor(t);
    const bar = document.createElementNS(SVG_NS, 'rect');
    bar.setAttribute('class', 'hover-cursor');
    bar.setAttribute('data-t', String(t));
    bar.setAttribute('x', String(x - CURSOR_WIDTH / 2));
    bar.setAttribute('y', '0');
    bar.setAttribute('width', String(CURSOR_WIDTH));
    bar.setAttribute('height', String(this.height));
    this.cursorLayer.append(bar);

    const primary = this.data[0];
    if (primary) {
      const i = locfIndex(primary.timestamps, t);
      const readout = document.createElementNS(SVG_NS, 'text');
      readout.setAttribute('class', 'hover-readout');
      readout.setAttribute('x', String(Math.min(x + 4, this.width - 40)));
      readout.setAttribute('y', '24');
      const v = i >= 0 ? primary.values[i] : null;
      readout.textContent = v === null ? 'no data' : String(v);
      this.cursorLayer.append(readout);
    }
  }
}
