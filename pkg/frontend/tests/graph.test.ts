import { describe, expect, it } from "vitest";

import { renderGraph } from "../src/graph.js";
import { isFlawEdge, visibleEdges } from "../src/types.js";
import type { GraphDoc } from "../src/types.js";
import { fixture } from "./helpers.js";

const GIVEUP = fixture<GraphDoc>("graph_giveup_41_game_dep0.json");
const EMPTY = fixture<GraphDoc>("graph_uneven_info_msf.json");
const DEP05 = fixture<GraphDoc>("graph_uneven_44_heuristic_dep05.json");
const DEP09 = fixture<GraphDoc>("graph_uneven_44_heuristic_dep09.json");

describe("graph view", () => {
  it("renders every activity as a node labeled with its frequency", () => {
    const container = document.createElement("div");
    renderGraph(container, GIVEUP);
    const nodes = [...container.querySelectorAll("g.node")];
    expect(nodes).toHaveLength(GIVEUP.activities.length);
    const solution = nodes.find(
      (n) => n.getAttribute("data-activity") === "41-SolutionDisplayed",
    )!;
    const freq = GIVEUP.activities.find((a) => a.activity === "41-SolutionDisplayed")!.freq;
    expect(solution.querySelector("text")!.textContent).toBe(
      `41-SolutionDisplayed (${freq})`,
    );
  });

  it("renders retained edges with frequency / dependency labels", () => {
    const container = document.createElement("div");
    renderGraph(container, GIVEUP);
    const edges = [...container.querySelectorAll("g.edge")];
    expect(edges).toHaveLength(visibleEdges(GIVEUP).length);
    const labels = edges.map((e) => e.querySelector("text")!.textContent);
    expect(labels).toContain("3 / 0.75"); // both hints taken by all three
  });

  it("highlights the completion-then-solution flaw edge", () => {
    const container = document.createElement("div");
    renderGraph(container, GIVEUP);
    const flaws = [...container.querySelectorAll("g.edge.flaw")];
    expect(flaws).toHaveLength(1);
    expect(flaws[0].getAttribute("data-from")).toBe("41-TaskCompleted");
    expect(flaws[0].getAttribute("data-to")).toBe("41-SolutionDisplayed");
    expect(flaws[0].querySelector("path")!.getAttribute("stroke")).toBe("#c22");
  });

  it("shows a placeholder when the filter leaves no events", () => {
    const container = document.createElement("div");
    renderGraph(container, EMPTY);
    expect(container.querySelector("svg")).toBeNull();
    expect(container.querySelector("p.placeholder")!.textContent).toBe(
      "no events of selected types",
    );
  });

  it("raising the threshold never adds edges", () => {
    const loose = document.createElement("div");
    const strict = document.createElement("div");
    renderGraph(loose, DEP05);
    renderGraph(strict, DEP09);
    const edgeSet = (el: HTMLElement) =>
      new Set(
        [...el.querySelectorAll("g.edge")].map(
          (e) => `${e.getAttribute("data-from")}->${e.getAttribute("data-to")}`,
        ),
      );
    const looseEdges = edgeSet(loose);
    const strictEdges = edgeSet(strict);
    expect(strictEdges.size).toBeLessThan(looseEdges.size);
    for (const edge of strictEdges) expect(looseEdges.has(edge)).toBe(true);
  });

  it("rendering is deterministic", () => {
    const a = document.createElement("div");
    const b = document.createElement("div");
    renderGraph(a, DEP05);
    renderGraph(b, DEP05);
    expect(a.innerHTML).toBe(b.innerHTML);
  });

  it("flaw detection matches the completion-to-solution shape", () => {
    expect(
      isFlawEdge({ from: "41-TaskCompleted", to: "41-SolutionDisplayed", freq: 2 }),
    ).toBe(true);
    expect(
      isFlawEdge({ from: "41-SolutionDisplayed", to: "41-TaskCompleted", freq: 2 }),
    ).toBe(false);
  });
});
