import { ApiClient } from "./api.js";
import { renderGraph } from "./graph.js";
import { renderOverview } from "./overview.js";
import { renderPolicyEditor } from "./policy.js";
import { renderQuality } from "./quality.js";
import { formatViewState } from "./state.js";
import type { ViewState } from "./state.js";
import type { PolicyDoc } from "./types.js";

export const METRICS = [
  "activity_count",
  "event_count",
  "trainees",
  "completions",
  "solutions_displayed",
  "hints_taken",
  "wrong_flags",
  "median_duration",
];

type Tab = "graph" | "quality" | "policy";

/**
 * Master-detail workbench: persistent overview strip on top, graph /
 * quality / policy panels below. ViewState plus API payloads are the
 * only state; concurrent fetches are keyed per panel and stale
 * responses are discarded (last write wins).
 */
export class ExplorerApp {
  private overviewEl!: HTMLElement;
  private graphEl!: HTMLElement;
  private qualityEl!: HTMLElement;
  private policyEl!: HTMLElement;
  private toolbarEl!: HTMLElement;
  private tabButtons = new Map<Tab, HTMLButtonElement>();
  private overviewEpoch = 0;
  private graphEpoch = 0;
  private qualityEpoch = 0;
  private policyEpoch = 0;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    public state: ViewState,
  ) {
    this.buildSkeleton();
  }

  async start(): Promise<void> {
    this.syncUrl();
    await Promise.all([
      this.refreshOverview(),
      this.refreshGraph(),
      this.refreshQuality(),
      this.refreshPolicy(),
    ]);
  }

  private buildSkeleton(): void {
    this.root.textContent = "";
    const title = document.createElement("h2");
    title.textContent = `session ${this.state.sessionId}`;
    this.root.appendChild(title);

    this.toolbarEl = document.createElement("div");
    this.toolbarEl.setAttribute("id", "toolbar");
    this.root.appendChild(this.toolbarEl);
    this.buildToolbar();

    this.overviewEl = document.createElement("div");
    this.overviewEl.setAttribute("id", "overview");
    this.root.appendChild(this.overviewEl);

    const tabs = document.createElement("div");
    tabs.setAttribute("id", "tabs");
    for (const tab of ["graph", "quality", "policy"] as Tab[]) {
      const button = document.createElement("button");
      button.textContent = tab;
      button.setAttribute("class", `tab-${tab}`);
      button.addEventListener("click", () => this.showTab(tab));
      tabs.appendChild(button);
      this.tabButtons.set(tab, button);
    }
    this.root.appendChild(tabs);

    this.graphEl = document.createElement("div");
    this.graphEl.setAttribute("id", "graph");
    this.qualityEl = document.createElement("div");
    this.qualityEl.setAttribute("id", "quality");
    this.policyEl = document.createElement("div");
    this.policyEl.setAttribute("id", "policy");
    this.root.appendChild(this.graphEl);
    this.root.appendChild(this.qualityEl);
    this.root.appendChild(this.policyEl);
    this.showTab("graph");
  }

  private buildToolbar(): void {
    const toolbar = this.toolbarEl;
    toolbar.textContent = "";

    for (const [attr, value, label] of [
      ["size", this.state.sizeMetric, "size"],
      ["color", this.state.colorMetric, "color"],
    ] as Array<[string, string, string]>) {
      const wrap = document.createElement("label");
      wrap.appendChild(document.createTextNode(`${label}: `));
      const select = document.createElement("select");
      select.setAttribute("data-metric", attr);
      for (const metric of METRICS) {
        const option = document.createElement("option");
        option.value = metric;
        option.textContent = metric;
        if (metric === value) option.selected = true;
        select.appendChild(option);
      }
      select.addEventListener("change", () => {
        void this.setMetrics(
          attr === "size" ? select.value : this.state.sizeMetric,
          attr === "color" ? select.value : this.state.colorMetric,
        );
      });
      wrap.appendChild(select);
      toolbar.appendChild(wrap);
    }

    for (const eventType of ["game", "bash", "msf"]) {
      const wrap = document.createElement("label");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = this.state.enabledTypes.includes(eventType);
      box.setAttribute("data-toggle-type", eventType);
      box.addEventListener("change", () => {
        const next = new Set(this.state.enabledTypes);
        if (box.checked) next.add(eventType);
        else next.delete(eventType);
        void this.setEnabledTypes([...next].sort());
      });
      wrap.appendChild(box);
      wrap.appendChild(document.createTextNode(` ${eventType}`));
      toolbar.appendChild(wrap);
    }

    const modeSelect = document.createElement("select");
    modeSelect.setAttribute("data-mode", "");
    for (const mode of ["heuristic", "dfg"]) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = mode;
      if (mode === this.state.mode) option.selected = true;
      modeSelect.appendChild(option);
    }
    modeSelect.addEventListener("change", () => {
      void this.setMode(modeSelect.value as ViewState["mode"]);
    });
    toolbar.appendChild(modeSelect);

    const depWrap = document.createElement("label");
    depWrap.appendChild(document.createTextNode("dependency ≥ "));
    const dep = document.createElement("input");
    dep.type = "range";
    dep.min = "0";
    dep.max = "1";
    dep.step = "0.05";
    dep.value = String(this.state.depThreshold);
    dep.setAttribute("data-dep", "");
    const depValue = document.createElement("span");
    depValue.setAttribute("data-dep-value", "");
    depValue.textContent = String(this.state.depThreshold);
    dep.addEventListener("change", () => {
      depValue.textContent = dep.value;
      void this.setDepThreshold(Number(dep.value));
    });
    depWrap.appendChild(dep);
    depWrap.appendChild(depValue);
    toolbar.appendChild(depWrap);
  }

  showTab(tab: Tab): void {
    this.graphEl.style.display = tab === "graph" ? "" : "none";
    this.qualityEl.style.display = tab === "quality" ? "" : "none";
    this.policyEl.style.display = tab === "policy" ? "" : "none";
    for (const [name, button] of this.tabButtons) {
      button.setAttribute("data-active", name === tab ? "true" : "false");
    }
  }

  private syncUrl(): void {
    history.replaceState(null, "", formatViewState(this.state));
  }

  async selectTask(task: string): Promise<void> {
    this.state.selectedTask = task;
    this.syncUrl();
    await Promise.all([this.refreshOverview(), this.refreshGraph()]);
  }

  async setEnabledTypes(types: string[]): Promise<void> {
    this.state.enabledTypes = [...types].sort();
    this.syncUrl();
    await this.refreshGraph();
  }

  async setDepThreshold(value: number): Promise<void> {
    this.state.depThreshold = value;
    this.syncUrl();
    await this.refreshGraph();
  }

  async setMode(mode: ViewState["mode"]): Promise<void> {
    this.state.mode = mode;
    this.syncUrl();
    await this.refreshGraph();
  }

  async setMetrics(size: string, color: string): Promise<void> {
    this.state.sizeMetric = size;
    this.state.colorMetric = color;
    this.syncUrl();
    await this.refreshOverview();
  }

  async applyPolicy(policy: PolicyDoc): Promise<void> {
    const result = await this.api.putPolicy(this.state.sessionId, policy);
    this.state.policyVersion = result.policy_version;
    this.syncUrl();
    await Promise.all([
      this.refreshOverview(),
      this.refreshGraph(),
      this.refreshQuality(),
      this.refreshPolicy(),
    ]);
  }

  async refreshOverview(): Promise<void> {
    const epoch = ++this.overviewEpoch;
    try {
      const doc = await this.api.overview(this.state);
      if (epoch !== this.overviewEpoch) return;
      renderOverview(this.overviewEl, doc, this.state.selectedTask, (task) => {
        void this.selectTask(task);
      });
    } catch (error) {
      if (epoch === this.overviewEpoch) this.renderError(this.overviewEl, error);
    }
  }

  async refreshGraph(): Promise<void> {
    const epoch = ++this.graphEpoch;
    try {
      const doc = await this.api.graph(this.state);
      if (epoch !== this.graphEpoch) return;
      renderGraph(this.graphEl, doc);
    } catch (error) {
      if (epoch === this.graphEpoch) this.renderError(this.graphEl, error);
    }
  }

  async refreshQuality(): Promise<void> {
    const epoch = ++this.qualityEpoch;
    try {
      const doc = await this.api.quality(this.state);
      if (epoch !== this.qualityEpoch) return;
      renderQuality(this.qualityEl, doc);
    } catch (error) {
      if (epoch === this.qualityEpoch) this.renderError(this.qualityEl, error);
    }
  }

  async refreshPolicy(): Promise<void> {
    const epoch = ++this.policyEpoch;
    try {
      const doc = await this.api.policy(this.state);
      if (epoch !== this.policyEpoch) return;
      renderPolicyEditor(this.policyEl, doc.policy, (next) => {
        void this.applyPolicy(next);
      });
    } catch (error) {
      if (epoch === this.policyEpoch) this.renderError(this.policyEl, error);
    }
  }

  private renderError(el: HTMLElement, error: unknown): void {
    el.textContent = "";
    const message = document.createElement("p");
    message.setAttribute("class", "error");
    message.textContent = error instanceof Error ? error.message : String(error);
    el.appendChild(message);
  }
}
