/**
 * Attribute tree: Overview / All / Pinned tabs.
 *
 * Overview renders the server-resolved chart list, constants as value
 * rows. All renders one collapsible group per message with every
 * attribute. Pinned holds user-pinned charts titled "message · field".
 * Every chart offers encode-on-map and pin controls.
 */

import type { ChartSpecPayload, MessageInfo } from './api.js';
import type { Store, ViewState } from './state.js';

export class AttributeTree {
  readonly root: HTMLElement;
  private tabs: HTMLElement;
  private body: HTMLElement;
  /** charts requested by the current tab, keyed by attribute ref */
  chartHosts = new Map<string, HTMLElement>();
  onChartsChanged: (() => void) | null = null;

  constructor(
    container: HTMLElement,
    private readonly store: Store,
    private messages: MessageInfo[],
    private overviewSpecs: ChartSpecPayload[],
  ) {
    this.root = document.createElement('div');
    this.root.className = 'attribute-tree';
    this.tabs = document.createElement('div');
    this.tabs.className = 'tabs';
    for (const tab of ['overview', 'all', 'pinned'] as const) {
      const btn = document.createElement('button');
      btn.className = `tab tab-${tab}`;
      btn.textContent = tab;
      btn.addEventListener('click', () => this.store.setTab(tab));
      this.tabs.append(btn);
    }
    this.body = document.createElement('div');
    this.body.className = 'tree-body';
    this.root.append(this.tabs, this.body);
    container.append(this.root);
  }

  private refName(message: MessageInfo, column: string): string {
    const inst = message.multi_id ? `[${message.multi_id}]` : '';
    return `${message.name}${inst}.${column}`;
  }

  private controls(attr: string): HTMLElement {
    const wrap = document.createElement('span');
    wrap.className = 'chart-controls';
    const encode = document.createElement('button');
    encode.className = 'encode-btn';
    encode.title = 'encode on flight path';
    encode.textContent = '■';
    encode.addEventListener('click', () => this.store.selectAttribute(attr));
    const pin = document.createElement('button');
    pin.className = 'pin-btn';
    pin.title = 'pin chart';
    pin.textContent = '📌';
    pin.addEventListener('click', () => {
      if (this.store.get().pinned.includes(attr)) this.store.unpin(attr);
      else this.store.pin(attr);
    });
    wrap.append(encode, pin);
    return wrap;
  }

  private chartHost(attr: string, title: string): HTMLElement {
    const card = document.createElement('div');
    card.className = 'chart-card';
    card.dataset.attr = attr;
    const head = document.createElement('div');
    head.className = 'chart-head';
    const label = document.createElement('span');
    label.textContent = title;
    head.append(label, this.controls(attr));
    const host = document.createElement('div');
    host.className = 'chart-host';
    card.append(head, host);
    this.chartHosts.set(attr, host);
    return card;
  }

  private constantRow(title: string, constants: Record<string, unknown>): HTMLElement {
    const row = document.createElement('div');
    row.className = 'constant-row';
    const label = document.createElement('span');
    label.textContent = title;
    const value = document.createElement('span');
    value.className = 'constant-value';
    value.textContent = Object.entries(constants)
      .map(([k, v]) => `${k} = ${v}`)
      .join(', ');
    row.append(label, value);
    return row;
  }

  render(state: ViewState) {
    for (const btn of this.tabs.querySelectorAll('.tab')) {
      btn.classList.toggle('active', btn.classList.contains(`tab-${state.tab}`));
    }
    this.chartHosts.clear();
    this.body.replaceChildren();
    if (state.tab === 'overview') this.renderOverview();
    else if (state.tab === 'all') this.renderAll();
    else this.renderPinned(state);
    this.onChartsChanged?.();
  }

  private renderOverview() {
    for (const spec of this.overviewSpecs) {
      if (spec.render_as === 'constant') {
        this.body.append(this.constantRow(spec.title, spec.constants));
      } else {
        // one chart per group; the first series keys the data fetch
        this.body.append(this.chartHost(spec.series[0], spec.title));
      }
    }
  }

  private renderAll() {
    for (const message of this.messages) {
      const details = document.createElement('details');
      details.className = 'message-group';
      const summary = document.createElement('summary');
      const inst = message.multi_id ? ` [${message.multi_id}]` : '';
      summary.textContent = `${message.name}${inst} (${message.count})`;
      details.append(summary);
      const onOpen = () => {
        if (details.dataset.filled) return;
        details.dataset.filled = '1';
        for (const column of message.columns) {
          const attr = this.refName(message, column);
          details.append(this.chartHost(attr, column));
        }
        this.onChartsChanged?.();
      };
      details.addEventListener('toggle', onOpen);
      this.body.append(details);
    }
  }

  private renderPinned(state: ViewState) {
    if (state.pinned.length === 0) {
      const empty = document.createElement('p');
      empty.className = 'pinned-empty';
      empty.textContent = 'Pin charts from any tab to compare them here.';
      this.body.append(empty);
      return;
    }
    for (const attr of state.pinned) {
      const dot = attr.indexOf('.');
      const title = `${attr.slice(0, dot)} · ${attr.slice(dot + 1)}`;
      this.body.append(this.chartHost(attr, title));
    }
  }
}
