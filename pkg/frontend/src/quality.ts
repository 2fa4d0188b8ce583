import type { QualityDoc } from "./types.js";

/** Findings table plus per-severity counts, straight from the API payload. */
export function renderQuality(container: HTMLElement, doc: QualityDoc): void {
  container.textContent = "";
  const counts = { info: 0, warning: 0, error: 0 };
  for (const finding of doc.findings) counts[finding.severity] += 1;

  const summary = document.createElement("p");
  summary.setAttribute("class", "quality-summary");
  summary.textContent =
    doc.findings.length === 0
      ? "no findings"
      : `${doc.findings.length} finding(s): ` +
        `${counts.error} error, ${counts.warning} warning, ${counts.info} info`;
  container.appendChild(summary);

  if (doc.findings.length === 0) return;

  const table = document.createElement("table");
  table.setAttribute("class", "quality-table");
  const head = document.createElement("tr");
  for (const column of ["severity", "kind", "case", "task", "message"]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const finding of doc.findings) {
    const row = document.createElement("tr");
    row.setAttribute("class", `finding severity-${finding.severity}`);
    for (const value of [
      finding.severity,
      finding.kind,
      finding.case_id ?? "",
      finding.task ?? "",
      finding.message,
    ]) {
      const td = document.createElement("td");
      td.textContent = value;
      row.appendChild(td);
    }
    table.appendChild(row);
  }
  container.appendChild(table);
}
