/**
 * Single source of truth for the coordinated views.
 *
 * Every view renders from this state; every interaction mutates it
 * through the setters here, which enforce the invariants (brush window
 * clamped to the flight, selected/pinned attributes must exist) and
 * notify subscribers exactly once per change.
 */

export interface TimeWindow {
  start_us: number;
  end_us: number;
}

export interface OverlayToggles {
  setpoints: boolean;
  estimated_path: boolean;
  dashed_filtered: boolean;
}

export type Tab = 'overview' | 'all' | 'pinned';

export interface ViewState {
  sessionId: string;
  flightStart: number; // first timestamp of the flight, microseconds
  flightEnd: number;
  window: TimeWindow; // brushed interval, subset of [flightStart, flightEnd]
  selected: string | null; // attribute encoded on the map path
  pinned: string[];
  hover: number | null; // hover timestamp, microseconds
  overlays: OverlayToggles;
  tab: Tab;
}

export type Listener = (state: ViewState) => void;

export class Store {
  private state: ViewState;
  private listeners = new Set<Listener>();
  /** bumped by any change that invalidates in-flight responses */
  revision = 0;

  constructor(
    sessionId: string,
    flightStart: number,
    flightEnd: number,
    private readonly attributeExists: (attr: string) => boolean,
  ) {
    this.state = {
      sessionId,
      flightStart,
      flightEnd,
      window: { start_us: flightStart, end_us: flightEnd },
      selected: null,
      pinned: [],
      hover: null,
      overlays: { setpoints: false, estimated_path: false, dashed_filtered: false },
      tab: 'overview',
    };
  }

  get(): ViewState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.add(fn);
    return () => this.listeners.delete(fn);
  }

  private commit(patch: Partial<ViewState>, invalidates = false) {
    this.state = { ...this.state, ...patch };
    if (invalidates) this.revision += 1;
    for (const fn of this.listeners) fn(this.state);
  }

  /** Brush: clamps to the flight interval; start <= end enforced. */
  applyBrush(start_us: number, end_us: number) {
    const lo = Math.max(this.state.flightStart, Math.min(start_us, end_us));
    const hi = Math.min(this.state.flightEnd, Math.max(start_us, end_us));
    this.commit({ window: { start_us: lo, end_us: hi } }, true);
  }

  resetBrush() {
    this.applyBrush(this.state.flightStart, this.state.flightEnd);
  }

  isFullRange(): boolean {
    const w = this.state.window;
    return w.start_us === this.state.flightStart && w.end_us === this.state.flightEnd;
  }

  selectAttribute(attr: string | null) {
    if (attr !== null && !this.attributeExists(attr)) {
      throw new Error(`unknown attribute: ${attr}`);
    }
    this.commit({ selected: attr }, true);
  }

  pin(attr: string) {
    if (!this.attributeExists(attr)) throw new Error(`unknown attribute: ${attr}`);
    if (this.state.pinned.includes(attr)) return;
    this.commit({ pinned: [...this.state.pinned, attr] });
  }

  unpin(attr: string) {
    this.commit({ pinned: this.state.pinned.filter((a) => a !== attr) });
  }

  /** Hover cursor; timestamps outside the flight clear it. */
  setHover(t: number | null) {
    if (t !== null && (t < this.state.flightStart || t > this.state.flightEnd)) {
      t = null;
    }
    if (t === this.state.hover) return;
    this.commit({ hover: t });
  }

  setOverlay(key: keyof OverlayToggles, on: boolean) {
    this.commit({ overlays: { ...this.state.overlays, [key]: on } });
  }

  setTab(tab: Tab) {
    this.commit({ tab });
  }

  /**
   * Guard for async responses: capture the revision before the request,
   * drop the payload if anything invalidated it meanwhile.
   */
  stillCurrent(revisionAtRequest: number): boolean {
    return this.revision === revisionAtRequest;
  }
}
