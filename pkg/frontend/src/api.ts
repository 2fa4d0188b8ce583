import type {
  GraphDoc,
  OverviewDoc,
  PolicyDoc,
  PolicyResponse,
  QualityDoc,
  SessionInfo,
} from "./types.js";
import type { ViewState } from "./state.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    throw new ApiError(response.status, `${url} -> ${response.status}`);
  }
  return (await response.json()) as T;
}

/** Query-parameter order is fixed so request URLs are deterministic. */
export function graphQuery(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.selectedTask !== null) params.set("task", state.selectedTask);
  params.set("types", [...state.enabledTypes].sort().join(","));
  params.set("mode", state.mode);
  params.set("dep", String(state.depThreshold));
  if (state.policyVersion !== null) params.set("v", String(state.policyVersion));
  return params.toString();
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  listSessions(): Promise<SessionInfo[]> {
    return getJson(`${this.baseUrl}/api/sessions`);
  }

  overview(state: ViewState): Promise<OverviewDoc> {
    const params = new URLSearchParams();
    params.set("size", state.sizeMetric);
    params.set("color", state.colorMetric);
    if (state.policyVersion !== null) params.set("v", String(state.policyVersion));
    return getJson(
      `${this.baseUrl}/api/sessions/${state.sessionId}/overview?${params.toString()}`,
    );
  }

  graph(state: ViewState): Promise<GraphDoc> {
    return getJson(
      `${this.baseUrl}/api/sessions/${state.sessionId}/graph?${graphQuery(state)}`,
    );
  }

  quality(state: ViewState): Promise<QualityDoc> {
    const suffix = state.policyVersion !== null ? `?v=${state.policyVersion}` : "";
    return getJson(`${this.baseUrl}/api/sessions/${state.sessionId}/quality${suffix}`);
  }

  policy(state: ViewState): Promise<PolicyResponse> {
    const suffix = state.policyVersion !== null ? `?v=${state.policyVersion}` : "";
    return getJson(`${this.baseUrl}/api/sessions/${state.sessionId}/policy${suffix}`);
  }

  async putPolicy(sessionId: string, policy: PolicyDoc): Promise<{ policy_version: number }> {
    const response = await fetch(`${this.baseUrl}/api/sessions/${sessionId}/policy`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(policy),
    });
    if (!response.ok) {
      throw new ApiError(response.status, `policy update failed: ${response.status}`);
    }
    return (await response.json()) as { policy_version: number };
  }
}
