/**
 * In-memory stand-in for the HTTP service, implementing the documented
 * wire semantics (inclusive window bounds, inside flags by segment start,
 * LOCF-aligned segment values) over a small deterministic flight.
 */

import type {
  ChartSpecPayload,
  EventPayload,
  LogService,
  Meta,
  MessageInfo,
  SeriesPayload,
  ServerConfig,
  TrajectoryPayload,
} from '../src/api.js';

export const START = 1_000_000; // µs
export const STEP = 1_000_000;
export const N = 21; // samples -> 20 segments
export const END = START + (N - 1) * STEP;

function gpsSamples() {
  const t: number[] = [];
  const lat: number[] = [];
  const lon: number[] = [];
  for (let i = 0; i < N; i++) {
    t.push(START + i * STEP);
    lat.push(47.0 + i * 1e-4);
    lon.push(8.0 + (i % 2 === 0 ? 0 : 5e-5));
  }
  return { t, lat, lon };
}

function batterySeries() {
  const t: number[] = [];
  const v: number[] = [];
  for (let i = 0; i < N; i++) {
    t.push(START + i * STEP);
    v.push(1.0 - i * 0.02);
  }
  return { t, v };
}

export class FakeService implements LogService {
  calls: string[] = [];
  delayed: (() => void)[] | null = null;

  private maybeDelay(): Promise<void> {
    if (!this.delayed) return Promise.resolve();
    return new Promise((resolve) => this.delayed!.push(resolve));
  }

  /** Release all requests captured while `delayed` mode was on. */
  releaseAll() {
    const pending = this.delayed ?? [];
    this.delayed = null;
    for (const release of pending) release();
  }

  async config(): Promise<ServerConfig> {
    return {
      tile_url: 'https://tiles.test/{z}/{x}/{y}',
      upload_limit: 1 << 28,
      ttl_seconds: 1800,
      version: 'test',
    };
  }

  async upload(): Promise<{ id: string; meta: Meta }> {
    return { id: 'fake-session', meta: await this.meta() };
  }

  async meta(): Promise<Meta> {
    return {
      duration_us: END - START,
      reference_lat: 47.0,
      reference_lon: 8.0,
      message_count: 2,
      attribute_count: 6,
      truncated: false,
      start_boot_us: START,
      layers: ['recorded', 'setpoints'],
      warnings: [],
    };
  }

  async messages(): Promise<MessageInfo[]> {
    return [
      {
        name: 'battery_status',
        multi_id: 0,
        count: N,
        columns: ['timestamp', 'remaining'],
      },
      {
        name: 'vehicle_gps_position',
        multi_id: 0,
        count: N,
        columns: ['timestamp', 'lat', 'lon', 'alt'],
      },
    ];
  }

  async series(
    _id: string,
    attr: { msg: string; field: string; inst?: number },
    opts?: { start?: number; end?: number; px?: number },
  ): Promise<SeriesPayload> {
    this.calls.push(
      `series ${attr.msg}.${attr.field} ${opts?.start ?? ''}:${opts?.end ?? ''}`,
    );
    await this.maybeDelay();
    const { t, v } = batterySeries();
    const lo = opts?.start ?? -Infinity;
    const hi = opts?.end ?? Infinity;
    const timestamps: number[] = [];
    const values: number[] = [];
    for (let i = 0; i < t.length; i++) {
      if (t[i] >= lo && t[i] <= hi) {
        timestamps.push(t[i]);
        values.push(v[i]);
      }
    }
    return {
      attr: `${attr.msg}.${attr.field}`,
      timestamps,
      values,
      total_points: t.length,
      tolerance_px: 0,
      stats: { min: 0, max: 1, mean: 0.5, count: t.length, nan_count: 0 },
    };
  }

  async trajectory(
    _id: string,
    opts?: { layer?: string; attr?: string; start?: number; end?: number },
  ): Promise<TrajectoryPayload> {
    this.calls.push(
      `trajectory ${opts?.layer ?? 'recorded'} ${opts?.start ?? ''}:${opts?.end ?? ''}`,
    );
    await this.maybeDelay();
    const layer = opts?.layer ?? 'recorded';
    if (layer === 'estimated') {
      throw new Error('404: layer not present');
    }
    const { t, lat, lon } = gpsSamples();
    const take = layer === 'setpoints' ? 5 : N;
    const segs = {
      t_start_us: [] as number[],
      t_end_us: [] as number[],
      lat0: [] as number[],
      lon0: [] as number[],
      lat1: [] as number[],
      lon1: [] as number[],
      alt0: [] as (number | null)[],
      value: [] as (number | null)[],
      color: [] as string[],
      inside: [] as boolean[],
    };
    const { t: bt, v: bv } = batterySeries();
    const lo = opts?.start ?? -Infinity;
    const hi = opts?.end ?? Infinity;
    for (let i = 0; i < take - 1; i++) {
      segs.t_start_us.push(t[i]);
      segs.t_end_us.push(t[i + 1]);
      segs.lat0.push(lat[i]);
      segs.lon0.push(lon[i]);
      segs.lat1.push(lat[i + 1]);
      segs.lon1.push(lon[i + 1]);
      segs.alt0.push(500);
      let value: number | null = null;
      for (let j = 0; j < bt.length; j++) if (bt[j] <= t[i]) value = bv[j];
      segs.value.push(opts?.attr ? value : null);
      segs.color.push(opts?.attr ? '#91003e' : '#e80936');
      segs.inside.push(t[i] >= lo && t[i] <= hi);
    }
    return {
      layer,
      attr: opts?.attr ?? null,
      domain: opts?.attr ? [0.6, 1.0] : null,
      segments: segs,
    };
  }

  async events(): Promise<EventPayload[]> {
    return [
      {
        timestamp_us: START,
        kind: 'flight_mode_change',
        label: 'Manual',
        category_index: 0,
      },
      {
        timestamp_us: START + 5 * STEP,
        kind: 'flight_mode_change',
        label: 'Mission',
        category_index: 3,
      },
      {
        timestamp_us: START + 15 * STEP,
        kind: 'flight_mode_change',
        label: 'Land',
        category_index: 18,
      },
      {
        timestamp_us: START + 7 * STEP,
        kind: 'logged_message',
        label: 'something noted',
        category_index: 6,
      },
    ];
  }

  async overview(): Promise<ChartSpecPayload[]> {
    return [
      {
        title: 'Battery remaining',
        series: ['battery_status.remaining'],
        render_as: 'chart',
        constants: {},
        unit: 'frac',
      },
      {
        title: 'Fixed thing',
        series: ['vehicle_gps_position.alt'],
        render_as: 'constant',
        constants: { 'vehicle_gps_position.alt': 500 },
        unit: 'm',
      },
    ];
  }
}
