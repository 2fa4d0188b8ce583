import { layeredLayout, LAYER_DX, ROW_DY } from "./layout.js";
import { isFlawEdge, visibleEdges } from "./types.js";
import type { GraphDoc, GraphEdge } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_H = 30;
const PAD = 60;

function nodeWidth(label: string): number {
  return label.length * 7.5 + 18;
}

function edgeLabel(edge: GraphEdge): string {
  if (edge.dependency === undefined) return String(edge.freq);
  return `${edge.freq} / ${edge.dependency.toFixed(2)}`;
}

/**
 * Directed-graph view with a deterministic layered layout. Edges that
 * look like the completion-then-solution platform flaw are drawn in
 * red, mirroring the report highlighting.
 */
export function renderGraph(container: HTMLElement, doc: GraphDoc): void {
  container.textContent = "";
  if (doc.activities.length === 0) {
    const placeholder = document.createElement("p");
    placeholder.setAttribute("class", "placeholder");
    placeholder.textContent = "no events of selected types";
    container.appendChild(placeholder);
    return;
  }

  const edges = visibleEdges(doc);
  const nodes = doc.activities.map((a) => a.activity);
  const starts = doc.starts.map((s) => s.activity);
  const positions = layeredLayout(
    nodes,
    edges.map((e) => [e.from, e.to] as [string, string]),
    starts,
  );

  const freq = new Map(doc.activities.map((a) => [a.activity, a.freq]));
  const maxX = Math.max(...[...positions.values()].map((p) => p.x));
  const maxY = Math.max(...[...positions.values()].map((p) => p.y));

  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(maxX + LAYER_DX + PAD));
  svg.setAttribute("height", String(maxY + ROW_DY + PAD));
  svg.setAttribute("class", "graph-view");

  const defs = document.createElementNS(SVG_NS, "defs");
  for (const [id, color] of [
    ["arrow", "#555"],
    ["arrow-flaw", "#c22"],
  ]) {
    const marker = document.createElementNS(SVG_NS, "marker");
    marker.setAttribute("id", id);
    marker.setAttribute("viewBox", "0 0 10 10");
    marker.setAttribute("refX", "9");
    marker.setAttribute("refY", "5");
    marker.setAttribute("markerWidth", "7");
    marker.setAttribute("markerHeight", "7");
    marker.setAttribute("orient", "auto-start-reverse");
    const tip = document.createElementNS(SVG_NS, "path");
    tip.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
    tip.setAttribute("fill", color);
    marker.appendChild(tip);
    defs.appendChild(marker);
  }
  svg.appendChild(defs);

  const center = (id: string) => {
    const p = positions.get(id)!;
    return { x: p.x + PAD / 2, y: p.y + PAD / 2 + NODE_H / 2 };
  };

  for (const edge of edges) {
    const flaw = isFlawEdge(edge);
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", flaw ? "edge flaw" : "edge");
    group.setAttribute("data-from", edge.from);
    group.setAttribute("data-to", edge.to);

    const path = document.createElementNS(SVG_NS, "path");
    let labelX: number;
    let labelY: number;
    if (edge.from === edge.to) {
      const c = center(edge.from);
      const w = nodeWidth(edge.from) / 2;
      path.setAttribute(
        "d",
        `M ${c.x + w} ${c.y - 6} C ${c.x + w + 40} ${c.y - 26}, ` +
          `${c.x + w + 40} ${c.y + 26}, ${c.x + w} ${c.y + 6}`,
      );
      labelX = c.x + w + 34;
      labelY = c.y;
    } else {
      const a = center(edge.from);
      const b = center(edge.to);
      path.setAttribute("d", `M ${a.x} ${a.y} L ${b.x} ${b.y}`);
      labelX = (a.x + b.x) / 2;
      labelY = (a.y + b.y) / 2 - 6;
    }
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", flaw ? "#c22" : "#555");
    path.setAttribute("stroke-width", flaw ? "2.5" : "1.5");
    path.setAttribute("marker-end", flaw ? "url(#arrow-flaw)" : "url(#arrow)");
    group.appendChild(path);

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(labelX));
    label.setAttribute("y", String(labelY));
    label.setAttribute("class", "edge-label");
    label.setAttribute("text-anchor", "middle");
    label.textContent = edgeLabel(edge);
    group.appendChild(label);

    svg.appendChild(group);
  }

  for (const id of nodes) {
    const p = positions.get(id)!;
    const width = nodeWidth(id);
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.setAttribute("data-activity", id);

    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(p.x + PAD / 2 - width / 2));
    rect.setAttribute("y", String(p.y + PAD / 2));
    rect.setAttribute("width", String(width));
    rect.setAttribute("height", String(NODE_H));
    rect.setAttribute("rx", "6");
    rect.setAttribute("fill", "#eef3fa");
    rect.setAttribute("stroke", "#345");

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(p.x + PAD / 2));
    label.setAttribute("y", String(p.y + PAD / 2 + NODE_H / 2 + 4));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "node-label");
    label.textContent = `${id} (${freq.get(id)})`;

    group.appendChild(rect);
    group.appendChild(label);
    svg.appendChild(group);
  }

  container.appendChild(svg);
}
