import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixtureText(name: string): string {
  return readFileSync(join(FIXTURES, name), "utf-8");
}

export function fixture<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

export interface RecordedRequest {
  method: string;
  url: URL;
  body: string | null;
}

/**
 * fetch stub backed by payloads recorded from the real API. Routing is
 * semantic (path + the query parameters that matter), so the tests
 * exercise the client's real request URLs.
 */
export function installFetchStub(): RecordedRequest[] {
  const log: RecordedRequest[] = [];

  function routeGraph(session: string, params: URLSearchParams): string {
    const task = params.get("task");
    const types = params.get("types") ?? "bash,game,msf";
    const dep = params.get("dep") ?? "0.5";
    const v = params.get("v");
    if (session === "giveup") {
      if (v === "2") return "graph_giveup_41_demoted.json";
      return "graph_giveup_41_game_dep0.json";
    }
    if (task === null) return "graph_uneven_session.json";
    if (task === "43") return "graph_uneven_43_heuristic_dep05.json";
    if (task === "info") return "graph_uneven_info_msf.json";
    if (task === "44") {
      if (types === "game") return "graph_uneven_44_game_dep05.json";
      if (dep === "0.9") return "graph_uneven_44_heuristic_dep09.json";
      return "graph_uneven_44_heuristic_dep05.json";
    }
    throw new Error(`no fixture for graph query ${params.toString()}`);
  }

  function route(method: string, url: URL, body: string | null): string {
    const match = url.pathname.match(/^\/api\/sessions\/([^/]+)(?:\/(\w+))?$/);
    if (!match) throw new Error(`unroutable ${url.pathname}`);
    const [, session, resource] = match;
    if (method === "PUT" && resource === "policy") {
      if (body === null) throw new Error("PUT /policy without body");
      return "policy_put_response.json";
    }
    switch (resource) {
      case "overview":
        return session === "giveup" ? "overview_giveup.json" : "overview_uneven.json";
      case "graph":
        return routeGraph(session, url.searchParams);
      case "quality":
        return session === "giveup" ? "quality_giveup.json" : "quality_uneven.json";
      case "policy":
        return session === "giveup" && url.searchParams.get("v") === "2"
          ? "policy_giveup_v2.json"
          : "policy_v1.json";
      default:
        throw new Error(`unroutable resource ${resource}`);
    }
  }

  globalThis.fetch = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = new URL(String(input), "http://localhost");
    const method = init?.method ?? "GET";
    const body = typeof init?.body === "string" ? init.body : null;
    log.push({ method, url, body });
    const name = route(method, url, body);
    return new Response(fixtureText(name), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;

  return log;
}
