/**
 * Flight map: satellite tiles (or a solid gray grid when tiles cannot
 * load), the recorded path as per-segment colored strokes, the filtered
 * portion as an optional dashed line, setpoint donuts, and a
 * semi-transparent estimated-path underlay.
 *
 * UI constants: hover enlarges the matching segment by ENLARGE_FACTOR;
 * filtered-out segments use DASH_PATTERN.
 */

import type { TrajectoryPayload } from './api.js';
import { fitZoom, TILE_SIZE, tileUrl, toPixels } from './mercator.js';
import type { ViewState } from './state.js';

export const ENLARGE_FACTOR = 2.5;
export const DASH_PATTERN = '6,6';
export const BASE_STROKE = 3;
export const SINGLE_HUE = '#e80936';
export const ESTIMATED_COLOR = '#4a90d9';
export const GRID_COLOR = '#bdbdbd';
export const GRID_BG = '#e0e0e0';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface MapData {
  recorded: TrajectoryPayload | null;
  estimated: TrajectoryPayload | null;
  setpoints: TrajectoryPayload | null;
}

interface Viewport {
  zoom: number;
  originX: number; // world pixel of the view's top-left
  originY: number;
}

export class FlightMap {
  readonly svg: SVGSVGElement;
  private tilesLayer: SVGGElement;
  private gridLayer: SVGGElement;
  private pathLayer: SVGGElement;
  private tilesBroken = false;
  private viewport: Viewport | null = null;
  private notice: SVGTextElement;
  onSegmentHover: ((t: number | null) => void) | null = null;

  constructor(
    readonly container: HTMLElement,
    private readonly tileTemplate: string | null,
    readonly width = 800,
    readonly height = 520,
  ) {
    this.svg = document.createElementNS(SVG_NS, 'svg');
    this.svg.setAttribute('class', 'flight-map');
    this.svg.setAttribute('width', String(width));
    this.svg.setAttribute('height', String(height));
    this.gridLayer = document.createElementNS(SVG_NS, 'g');
    this.gridLayer.setAttribute('class', 'gray-grid');
    this.tilesLayer = document.createElementNS(SVG_NS, 'g');
    this.tilesLayer.setAttribute('class', 'tiles');
    this.pathLayer = document.createElementNS(SVG_NS, 'g');
    this.pathLayer.setAttribute('class', 'paths');
    this.notice = document.createElementNS(SVG_NS, 'text');
    this.notice.setAttribute('class', 'map-notice');
    this.notice.setAttribute('x', String(width / 2));
    this.notice.setAttribute('y', String(height / 2));
    this.svg.append(this.gridLayer, this.tilesLayer, this.pathLayer, this.notice);
    container.append(this.svg);
    if (!tileTemplate) this.tilesBroken = true;
  }

  /** True when the background is the offline/over-zoom gray grid. */
  get grayGridActive(): boolean {
    return this.gridLayer.childNodes.length > 0;
  }

  render(state: ViewState, data: MapData) {
    const recorded = data.recorded;
    this.pathLayer.replaceChildren();
    if (!recorded || recorded.segments.t_start_us.length === 0) {
      this.renderBackground();
      this.notice.textContent = 'no position data in this log';
      return;
    }
    this.notice.textContent = '';
    this.computeViewport(recorded);
    this.renderBackground();

    if (state.overlays.estimated_path && data.estimated) {
      this.renderEstimated(data.estimated);
    }
    this.renderRecorded(state, recorded);
    if (state.overlays.setpoints && data.setpoints) {
      this.renderSetpoints(data.setpoints);
    }
  }

  private computeViewport(recorded: TrajectoryPayload) {
    const seg = recorded.segments;
    const lats = seg.lat0.concat(seg.lat1[seg.lat1.length - 1] ?? []);
    const lons = seg.lon0.concat(seg.lon1[seg.lon1.length - 1] ?? []);
    const latMin = Math.min(...lats);
    const latMax = Math.max(...lats);
    const lonMin = Math.min(...lons);
    const lonMax = Math.max(...lons);
    const zoom = fitZoom(latMin, latMax, lonMin, lonMax, this.width, this.height);
    const [cx, cy] = toPixels((latMin + latMax) / 2, (lonMin + lonMax) / 2, zoom);
    this.viewport = {
      zoom,
      originX: cx - this.width / 2,
      originY: cy - this.height / 2,
    };
  }

  private toView(lat: number, lon: number): [number, number] {
    const v = this.viewport!;
    const [x, y] = toPixels(lat, lon, v.zoom);
    return [x - v.originX, y - v.originY];
  }

  private renderBackground() {
    this.tilesLayer.replaceChildren();
    this.gridLayer.replaceChildren();
    if (this.tilesBroken || !this.viewport || !this.tileTemplate) {
      this.renderGrayGrid();
      return;
    }
    const v = this.viewport;
    const first = [Math.floor(v.originX / TILE_SIZE), Math.floor(v.originY / TILE_SIZE)];
    const last = [
      Math.floor((v.originX + this.width) / TILE_SIZE),
      Math.floor((v.originY + this.height) / TILE_SIZE),
    ];
    const n = 2 ** v.zoom;
    for (let tx = first[0]; tx <= last[0]; tx++) {
      for (let ty = first[1]; ty <= last[1]; ty++) {
        if (tx < 0 || ty < 0 || tx >= n || ty >= n) continue;
        const img = document.createElementNS(SVG_NS, 'image');
        img.setAttribute('href', tileUrl(this.tileTemplate, v.zoom, tx, ty));
        img.setAttribute('x', String(tx * TILE_SIZE - v.originX));
        img.setAttribute('y', String(ty * TILE_SIZE - v.originY));
        img.setAttribute('width', String(TILE_SIZE));
        img.setAttribute('height', String(TILE_SIZE));
        img.addEventListener('error', () => this.markTilesBroken());
        this.tilesLayer.append(img);
      }
    }
  }

  /** Tiles failed (offline, or zoom beyond imagery): solid gray grid. */
  private markTilesBroken() {
    if (this.tilesBroken) return;
    this.tilesBroken = true;
    this.renderBackground();
  }

  private renderGrayGrid() {
    const bg = document.createElementNS(SVG_NS, 'rect');
    bg.setAttribute('width', String(this.width));
    bg.setAttribute('height', String(this.height));
    bg.setAttribute('fill', GRID_BG);
    this.gridLayer.append(bg);
    const step = 40;
    for (let x = 0; x <= this.width; x += step) {
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(x));
      line.setAttribute('x2', String(x));
      line.setAttribute('y1', '0');
      line.setAttribute('y2', String(this.height));
      line.setAttribute('stroke', GRID_COLOR);
      this.gridLayer.append(line);
    }
    for (let y = 0; y <= this.height; y += step) {
      const line = document.createElementNS(SVG_NS, 'line');
      line.setAttribute('y1', String(y));
      line.setAttribute('y2', String(y));
      line.setAttribute('x1', '0');
      line.setAttribute('x2', String(this.width));
      line.setAttribute('stroke', GRID_COLOR);
      this.gridLayer.append(line);
    }
  }

  private renderEstimated(est: TrajectoryPayload) {
    const seg = est.segments;
    if (seg.t_start_us.length === 0) return;
    const points: string[] = [];
    for (let i = 0; i < seg.lat0.length; i++) {
      const [x, y] = this.toView(seg.lat0[i], seg.lon0[i]);
      points.push(`${x},${y}`);
    }
    const [xe, ye] = this.toView(
      seg.lat1[seg.lat1.length - 1],
      seg.lon1[seg.lon1.length - 1],
    );
    points.push(`${xe},${ye}`);
    const line = document.createElementNS(SVG_NS, 'polyline');
    line.setAttribute('class', 'estimated-path');
    line.setAttribute('points', points.join(' '));
    line.setAttribute('fill', 'none');
    line.setAttribute('stroke', ESTIMATED_COLOR);
    line.setAttribute('stroke-opacity', '0.45');
    line.setAttribute('stroke-width', String(BASE_STROKE * 2));
    this.pathLayer.append(line);
  }

  private renderRecorded(state: ViewState, recorded: TrajectoryPayload) {
    const seg = recorded.segments;
    const hover = state.hover;
    for (let i = 0; i < seg.t_start_us.length; i++) {
      const inside = seg.inside[i];
      if (!inside && !state.overlays.dashed_filtered) continue;
      const [x0, y0] = this.toView(seg.lat0[i], seg.lon0[i]);
      const [x1, y1] = this.toView(seg.lat1[i], seg.lon1[i]);
      const el = document.createElementNS(SVG_NS, 'line');
      el.setAttribute('x1', String(x0));
      el.setAttribute('y1', String(y0));
      el.setAttribute('x2', String(x1));
      el.setAttribute('y2', String(y1));
      el.setAttribute('data-t0', String(seg.t_start_us[i]));
      el.setAttribute('data-t1', String(seg.t_end_us[i]));
      const color = seg.color ? seg.color[i] : SINGLE_HUE;
      el.setAttribute('stroke', inside ? color : '#888888');
      el.setAttribute('stroke-linecap', 'round');
      let cls = inside ? 'seg in-window' : 'seg filtered';
      let width = BASE_STROKE;
      if (!inside) el.setAttribute('stroke-dasharray', DASH_PATTERN);
      const enlarged =
        hover !== null && seg.t_start_us[i] <= hover && hover < seg.t_end_us[i];
      if (enlarged) {
        cls += ' enlarged';
        width = BASE_STROKE * ENLARGE_FACTOR;
      }
      el.setAttribute('class', cls);
      el.setAttribute('stroke-width', String(width));
      el.addEventListener('mouseenter', () => {
        this.onSegmentHover?.(seg.t_start_us[i]);
      });
      el.addEventListener('mouseleave', () => {
        this.onSegmentHover?.(null);
      });
      this.pathLayer.append(el);
    }
  }

  private renderSetpoints(sp: TrajectoryPayload) {
    const seg = sp.segments;
    const n = seg.lat0.length;
    for (let i = 0; i <= n; i++) {
      const lat = i < n ? seg.lat0[i] : seg.lat1[n - 1];
      const lon = i < n ? seg.lon0[i] : seg.lon1[n - 1];
      const [x, y] = this.toView(lat, lon);
      const donut = document.createElementNS(SVG_NS, 'circle');
      donut.setAttribute('class', 'setpoint-donut');
      donut.setAttribute('cx', String(x));
      donut.setAttribute('cy', String(y));
      donut.setAttribute('r', '6');
      donut.setAttribute('fill', 'none');
      donut.setAttribute('stroke', '#ffffff');
      donut.setAttribute('stroke-width', '3');
      this.pathLayer.append(donut);
    }
  }
}
