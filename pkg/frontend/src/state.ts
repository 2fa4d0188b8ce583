// ViewState fully determines what is rendered and round-trips through
// the URL query string, so any view is shareable and reloadable.

export type Mode = "dfg" | "heuristic";

export interface ViewState {
  sessionId: string;
  selectedTask: string | null;
  enabledTypes: string[]; // kept sorted
  mode: Mode;
  depThreshold: number;
  sizeMetric: string;
  colorMetric: string;
  policyVersion: number | null; // null = latest
}

export const ALL_TYPES = ["bash", "game", "msf"];

export const DEFAULTS = {
  mode: "heuristic" as Mode,
  depThreshold: 0.5,
  sizeMetric: "activity_count",
  colorMetric: "solutions_displayed",
};

export function defaultState(sessionId: string): ViewState {
  return {
    sessionId,
    selectedTask: null,
    enabledTypes: [...ALL_TYPES],
    mode: DEFAULTS.mode,
    depThreshold: DEFAULTS.depThreshold,
    sizeMetric: DEFAULTS.sizeMetric,
    colorMetric: DEFAULTS.colorMetric,
    policyVersion: null,
  };
}

export function formatViewState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("session", state.sessionId);
  if (state.selectedTask !== null) params.set("task", state.selectedTask);
  const types = [...state.enabledTypes].sort().join(",");
  if (types !== ALL_TYPES.join(",")) params.set("types", types);
  if (state.mode !== DEFAULTS.mode) params.set("mode", state.mode);
  if (state.depThreshold !== DEFAULTS.depThreshold) {
    params.set("dep", String(state.depThreshold));
  }
  if (state.sizeMetric !== DEFAULTS.sizeMetric) params.set("size", state.sizeMetric);
  if (state.colorMetric !== DEFAULTS.colorMetric) params.set("color", state.colorMetric);
  if (state.policyVersion !== null) params.set("v", String(state.policyVersion));
  return "?" + params.toString();
}

export function parseViewState(search: string): ViewState | null {
  const params = new URLSearchParams(search.startsWith("?") ? search.slice(1) : search);
  const sessionId = params.get("session");
  if (!sessionId) return null;
  const state = defaultState(sessionId);
  const task = params.get("task");
  if (task !== null) state.selectedTask = task;
  const types = params.get("types");
  if (types !== null) {
    state.enabledTypes = types
      .split(",")
      .map((t) => t.trim())
      .filter((t) => t.length > 0)
      .sort();
  }
  const mode = params.get("mode");
  if (mode === "dfg" || mode === "heuristic") state.mode = mode;
  const dep = params.get("dep");
  if (dep !== null && !Number.isNaN(Number(dep))) state.depThreshold = Number(dep);
  const size = params.get("size");
  if (size !== null) state.sizeMetric = size;
  const color = params.get("color");
  if (color !== null) state.colorMetric = color;
  const version = params.get("v");
  if (version !== null && !Number.isNaN(Number(version))) {
    state.policyVersion = Number(version);
  }
  return state;
}
