/**
 * Wires the three coordinated views to the store and the API.
 *
 * All server calls are asynchronous with stale-response discarding: a
 * response is dropped when the brush window or selected attribute
 * changed since the request was issued. Chart pixel budgets are twice
 * the chart's device-pixel width.
 */

import type { LogService } from './api.js';
import type {
  ChartSpecPayload,
  EventPayload,
  MessageInfo,
  Meta,
  SeriesPayload,
  TrajectoryPayload,
} from './api.js';
import { LineChart } from './charts.js';
import { FlightMap, type MapData } from './map.js';
import { Store } from './state.js';
import { Timeline } from './timeline.js';
import { AttributeTree } from './tree.js';

export interface AppElements {
  map: HTMLElement;
  tree: HTMLElement;
  timeline: HTMLElement;
}

function parseRef(attr: string): { msg: string; field: string; inst: number } {
  const dot = attr.indexOf('.');
  let msg = attr.slice(0, dot);
  const field = attr.slice(dot + 1);
  let inst = 0;
  const m = msg.match(/^(.*)\[(\d+)\]$/);
  if (m) {
    msg = m[1];
    inst = Number(m[2]);
  }
  return { msg, field, inst };
}

export class App {
  readonly store: Store;
  readonly map: FlightMap;
  readonly timeline: Timeline;
  readonly tree: AttributeTree;
  private charts = new Map<string, LineChart>();
  private mapData: MapData = { recorded: null, estimated: null, setpoints: null };
  private timelineSeries: SeriesPayload | null = null;
  private lastTab: string | null = null;
  private lastPinned: string[] | null = null;
  /** settles when no fetch is in flight; tests await this */
  private pending: Promise<unknown> = Promise.resolve();

  constructor(
    readonly api: LogService,
    readonly sessionId: string,
    readonly meta: Meta,
    readonly messages: MessageInfo[],
    readonly overviewSpecs: ChartSpecPayload[],
    readonly events: EventPayload[],
    elements: AppElements,
    tileUrl: string | null,
  ) {
    const attrs = new Set<string>();
    for (const m of messages) {
      const inst = m.multi_id ? `[${m.multi_id}]` : '';
      for (const c of m.columns) attrs.add(`${m.name}${inst}.${c}`);
    }
    const start = meta.start_boot_us;
    this.store = new Store(sessionId, start, start + meta.duration_us, (a) =>
      attrs.has(a),
    );
    this.map = new FlightMap(elements.map, tileUrl);
    this.map.onSegmentHover = (t) => this.store.setHover(t);
    this.timeline = new Timeline(elements.timeline, this.store);
    this.tree = new AttributeTree(elements.tree, this.store, messages, overviewSpecs);
    this.tree.onChartsChanged = () => this.mountCharts();

    this.store.subscribe(() => this.renderAll());
    this.refetch();
    this.renderAll();
  }

  /** Await outstanding fetches (test hook). */
  idle(): Promise<unknown> {
    return this.pending;
  }

  private track<T>(p: Promise<T>): Promise<T> {
    this.pending = Promise.allSettled([this.pending, p]);
    return p;
  }

  private renderAll() {
    const state = this.store.get();
    this.map.render(state, this.mapData);
    this.timeline.render(state, this.timelineSeries, this.events);
    if (state.tab !== this.lastTab || state.pinned !== this.lastPinned) {
      this.lastTab = state.tab;
      this.lastPinned = state.pinned;
      this.tree.render(state); // rebuilds chart hosts for the active tab
    }
    for (const chart of this.charts.values()) {
      chart.renderCursor(state);
    }
  }

  private mountCharts() {
    const state = this.store.get();
    this.charts.clear();
    for (const [attr, host] of this.tree.chartHosts) {
      const chart = new LineChart(host, attr);
      chart.onHover = (t) => this.store.setHover(t);
      this.charts.set(attr, chart);
    }
    void this.fetchCharts(state);
  }

  /** Re-query everything that depends on (window, selected attribute). */
  refetch() {
    const state = this.store.get();
    const rev = this.store.revision;
    void this.fetchTrajectories(state, rev);
    void this.fetchTimeline(state, rev);
    void this.fetchCharts(state);
  }

  private async fetchTrajectories(state = this.store.get(), rev = this.store.revision) {
    const opts = {
      attr: state.selected ?? undefined,
      start: state.window.start_us,
      end: state.window.end_us,
    };
    const layers: (keyof MapData)[] = ['recorded', 'estimated', 'setpoints'];
    const results = await this.track(
      Promise.all(
        layers.map(async (layer) => {
          if (layer !== 'recorded' && !this.meta.layers.includes(layer)) return null;
          try {
            return await this.api.trajectory(this.sessionId, { ...opts, layer });
          } catch {
            return null;
          }
        }),
      ),
    );
    if (!this.store.stillCurrent(rev)) return; // stale response, discard
    const [recorded, estimated, setpoints] = results as (TrajectoryPayload | null)[];
    this.mapData = { recorded, estimated, setpoints };
    this.map.render(this.store.get(), this.mapData);
  }

  private async fetchTimeline(state = this.store.get(), rev = this.store.revision) {
    if (!state.selected) {
      this.timelineSeries = null;
      this.timeline.render(state, null, this.events);
      return;
    }
    // the timeline line is static full-flight, never windowed
    const series = await this.track(
      this.api.series(this.sessionId, parseRef(state.selected), {
        px: this.timeline.width * 2,
      }),
    );
    if (!this.store.stillCurrent(rev)) return;
    this.timelineSeries = series;
    this.timeline.render(this.store.get(), series, this.events);
  }

  private async fetchCharts(state = this.store.get()) {
    const rev = this.store.revision;
    const jobs = [...this.charts.entries()].map(async ([attr, chart]) => {
      const spec = this.overviewSpecs.find(
        (s) => s.render_as === 'chart' && s.series[0] === attr,
      );
      const refs = state.tab === 'overview' && spec ? spec.series : [attr];
      const series = await Promise.all(
        refs.map((ref) =>
          this.api.series(this.sessionId, parseRef(ref), {
            start: state.window.start_us,
            end: state.window.end_us,
            px: chart.width * 2,
          }),
        ),
      );
      if (!this.store.stillCurrent(rev)) return;
      chart.render(this.store.get(), series);
    });
    await this.track(Promise.allSettled(jobs));
  }
}

export async function boot(
  api: LogService,
  logData: ArrayBuffer | Blob,
  elements: AppElements,
): Promise<App> {
  const { id, meta } = await api.upload(logData);
  const [messages, overview, events, config] = await Promise.all([
    api.messages(id),
    api.overview(id),
    api.events(id),
    api.config().catch(() => null),
  ]);
  const app = new App(
    api, id, meta, messages, overview, events, elements,
    config ? config.tile_url : null,
  );
  // brushes and attribute selection re-query the server
  let lastWindow = app.store.get().window;
  let lastSelected = app.store.get().selected;
  app.store.subscribe((s) => {
    if (s.window !== lastWindow || s.selected !== lastSelected) {
      lastWindow = s.window;
      lastSelected = s.selected;
      app.refetch();
    }
  });
  return app;
}
