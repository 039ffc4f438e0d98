/** Typed client for the log service HTTP API. */

export interface Meta {
  duration_us: number;
  reference_lat: number | null;
  reference_lon: number | null;
  message_count: number;
  attribute_count: number;
  truncated: boolean;
  start_boot_us: number;
  layers: string[];
  warnings: string[];
}

export interface MessageInfo {
  name: string;
  multi_id: number;
  count: number;
  columns: string[];
}

export interface SeriesPayload {
  attr: string;
  timestamps: number[];
  values: (number | null)[];
  total_points: number;
  tolerance_px: number;
  stats: {
    min: number | null;
    max: number | null;
    mean: number | null;
    count: number;
    nan_count: number;
  } | null;
}

export interface SegmentsPayload {
  t_start_us: number[];
  t_end_us: number[];
  lat0: number[];
  lon0: number[];
  lat1: number[];
  lon1: number[];
  alt0: (number | null)[];
  value: (number | null)[];
  color?: string[];
  inside: boolean[];
}

export interface TrajectoryPayload {
  layer: string;
  attr: string | null;
  domain: [number, number] | null;
  segments: SegmentsPayload;
}

export interface EventPayload {
  timestamp_us: number;
  kind: 'flight_mode_change' | 'logged_message';
  label: string;
  category_index: number;
}

export interface ChartSpecPayload {
  title: string;
  series: string[];
  render_as: 'chart' | 'constant';
  constants: Record<string, number | string | null>;
  unit: string | null;
}

export interface ServerConfig {
  tile_url: string;
  upload_limit: number;
  ttl_seconds: number;
  version: string;
}

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** The surface the views consume; LogApi is the HTTP implementation. */
export interface LogService {
  config(): Promise<ServerConfig>;
  upload(data: ArrayBuffer | Blob): Promise<{ id: string; meta: Meta }>;
  meta(id: string): Promise<Meta>;
  messages(id: string): Promise<MessageInfo[]>;
  series(
    id: string,
    attr: { msg: string; field: string; inst?: number },
    opts?: { start?: number; end?: number; px?: number },
  ): Promise<SeriesPayload>;
  trajectory(
    id: string,
    opts?: { layer?: string; attr?: string; start?: number; end?: number },
  ): Promise<TrajectoryPayload>;
  events(id: string): Promise<EventPayload[]>;
  overview(id: string): Promise<ChartSpecPayload[]>;
}

async function asJson<T>(r: Response): Promise<T> {
  if (!r.ok) {
    let detail = r.statusText;
    try {
      const body = await r.json();
      if (body && typeof body.detail === 'string') detail = body.detail;
    } catch {
      /* keep statusText */
    }
    throw new ApiError(r.status, detail);
  }
  return r.json() as Promise<T>;
}

export class LogApi implements LogService {
  constructor(
    readonly base: string = '',
    private readonly fetcher: typeof fetch = fetch,
  ) {}

  private get(path: string, params?: Record<string, string | number | undefined>) {
    const url = new URL(this.base + path, 'http://placeholder');
    for (const [k, v] of Object.entries(params ?? {})) {
      if (v !== undefined) url.searchParams.set(k, String(v));
    }
    const target = this.base.startsWith('http')
      ? url.toString()
      : url.pathname + url.search;
    return this.fetcher(target);
  }

  async config(): Promise<ServerConfig> {
    return asJson(await this.get('/config'));
  }

  async upload(data: ArrayBuffer | Blob): Promise<{ id: string; meta: Meta }> {
    const r = await this.fetcher(this.base + '/logs', {
      method: 'POST',
      body: data,
      headers: { 'content-type': 'application/octet-stream' },
    });
    return asJson(r);
  }

  async meta(id: string): Promise<Meta> {
    return asJson(await this.get(`/logs/${id}/meta`));
  }

  async messages(id: string): Promise<MessageInfo[]> {
    return asJson(await this.get(`/logs/${id}/messages`));
  }

  async series(
    id: string,
    attr: { msg: string; field: string; inst?: number },
    opts?: { start?: number; end?: number; px?: number },
  ): Promise<SeriesPayload> {
    return asJson(
      await this.get(`/logs/${id}/series`, {
        msg: attr.msg,
        field: attr.field,
        inst: attr.inst ?? 0,
        start: opts?.start,
        end: opts?.end,
        px: opts?.px,
      }),
    );
  }

  async trajectory(
    id: string,
    opts?: { layer?: string; attr?: string; start?: number; end?: number },
  ): Promise<TrajectoryPayload> {
    return asJson(
      await this.get(`/logs/${id}/trajectory`, {
        layer: opts?.layer,
        attr: opts?.attr,
        start: opts?.start,
        end: opts?.end,
      }),
    );
  }

  async events(id: string): Promise<EventPayload[]> {
    return asJson(await this.get(`/logs/${id}/events`));
  }

  async overview(id: string): Promise<ChartSpecPayload[]> {
    return asJson(await this.get(`/logs/${id}/overview`));
  }
}
