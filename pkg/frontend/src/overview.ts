import type { OverviewDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SPACING = 120;
const BASELINE = 70;
const R_MIN = 8;
const R_MAX = 46;

/** White-to-red ramp over the max-scaled color metric. */
export function colorFor(norm: number): string {
  const clamped = Math.max(0, Math.min(1, norm));
  const other = Math.round(235 - clamped * 205);
  return `rgb(245, ${other}, ${other})`;
}

export function radiusFor(norm: number): number {
  return R_MIN + Math.max(0, Math.min(1, norm)) * (R_MAX - R_MIN);
}

/**
 * Circle strip: one circle per puzzle, in manifest order, radius from
 * the size metric and fill from the color metric. Clicking a circle
 * selects its task.
 */
export function renderOverview(
  container: HTMLElement,
  doc: OverviewDoc,
  selectedTask: string | null,
  onSelect: (task: string) => void,
): void {
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  const width = Math.max(doc.entries.length, 1) * SPACING;
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", "150");
  svg.setAttribute("class", "overview-strip");

  doc.entries.forEach((entry, i) => {
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "overview-circle");
    group.setAttribute("data-task", entry.task);

    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(i * SPACING + SPACING / 2));
    circle.setAttribute("cy", String(BASELINE));
    circle.setAttribute("r", String(radiusFor(entry.size_norm)));
    circle.setAttribute("fill", colorFor(entry.color_norm));
    circle.setAttribute("stroke", entry.task === selectedTask ? "#1a56b0" : "#333");
    circle.setAttribute("stroke-width", entry.task === selectedTask ? "3" : "1");

    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(i * SPACING + SPACING / 2));
    label.setAttribute("y", "140");
    label.setAttribute("text-anchor", "middle");
    label.textContent = entry.task;

    const title = document.createElementNS(SVG_NS, "title");
    title.textContent =
      `${entry.task}: ${doc.size_metric}=${entry.size_value}, ` +
      `${doc.color_metric}=${entry.color_value}`;

    group.appendChild(title);
    group.appendChild(circle);
    group.appendChild(label);
    group.addEventListener("click", () => onSelect(entry.task));
    svg.appendChild(group);
  });
  container.appendChild(svg);
}
