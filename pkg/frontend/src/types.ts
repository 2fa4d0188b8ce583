// API payload shapes (schema_version 1). All numbers shown in the UI
// originate from these documents; no analysis happens client-side.

export interface FreqEntry {
  activity: string;
  freq: number;
}

export interface GraphEdge {
  from: string;
  to: string;
  freq: number;
  dependency?: number;
  retained?: boolean;
}

export interface GraphDoc {
  schema_version: number;
  kind: "dfg" | "heuristic_net";
  activities: FreqEntry[];
  edges: GraphEdge[];
  starts: FreqEntry[];
  ends: FreqEntry[];
  dependency_threshold?: number;
  min_edge_freq?: number;
}

export interface OverviewEntry {
  task: string;
  size_value: number;
  color_value: number;
  size_norm: number;
  color_norm: number;
}

export interface OverviewDoc {
  schema_version: number;
  kind: "overview";
  size_metric: string;
  color_metric: string;
  entries: OverviewEntry[];
}

export interface EvidenceRef {
  case_id: string;
  seq: number;
  activity: string;
  time: string;
}

export interface QualityFinding {
  kind: string;
  severity: "info" | "warning" | "error";
  message: string;
  case_id: string | null;
  task: string | null;
  evidence: EvidenceRef[];
}

export interface QualityDoc {
  schema_version: number;
  kind: "quality_report";
  findings: QualityFinding[];
}

export interface PolicyDoc {
  included_types: string[];
  promote: Record<string, Record<string, number[]>>;
  task_prefix: boolean;
  time_mode: string;
  pause_gap_cap: number | null;
}

export interface PolicyResponse {
  policy_version: number;
  policy: PolicyDoc;
}

export interface SessionInfo {
  session_id: string;
  event_count: number;
  policy_version: number;
  tasks: string[];
}

/** Edges shaped like the platform flaw: completion followed by solution display. */
export function isFlawEdge(edge: GraphEdge): boolean {
  return edge.from.includes("TaskCompleted") && edge.to.includes("SolutionDisplayed");
}

/** Edges that actually belong to the rendered model. */
export function visibleEdges(doc: GraphDoc): GraphEdge[] {
  if (doc.kind === "heuristic_net") {
    return doc.edges.filter((e) => e.retained !== false);
  }
  return doc.edges;
}
