import { describe, expect, it } from "vitest";

import { buildPolicy, promotionRows, renderPolicyEditor } from "../src/policy.js";
import type { PolicyDoc, PolicyResponse } from "../src/types.js";
import { fixture } from "./helpers.js";

const DEFAULT_POLICY = fixture<PolicyResponse>("policy_v1.json").policy;

describe("policy editor", () => {
  it("lists the active hint promotion", () => {
    const rows = promotionRows(DEFAULT_POLICY);
    const hint = rows.find((r) => r.eventType === "game" && r.event === "HintTaken")!;
    expect(hint.active).toBe(true);
    expect(hint.selectors).toEqual([0]);
    const ssh = rows.find((r) => r.eventType === "bash" && r.event === "ssh")!;
    expect(ssh.active).toBe(false);
  });

  it("unchecking a promotion demotes it in the submitted document", () => {
    const container = document.createElement("div");
    let applied: PolicyDoc | null = null;
    renderPolicyEditor(container, DEFAULT_POLICY, (next) => {
      applied = next;
    });
    const hintToggle = container.querySelector(
      'input[data-promote="game:HintTaken"]',
    ) as HTMLInputElement;
    expect(hintToggle.checked).toBe(true);
    hintToggle.checked = false;
    (container.querySelector("button.apply-policy") as HTMLButtonElement).click();
    expect(applied).not.toBeNull();
    expect(applied!.promote).toEqual({});
    expect(applied!.included_types).toEqual(["bash", "game", "msf"]);
  });

  it("checking a known promotion promotes with its selectors", () => {
    const container = document.createElement("div");
    let applied: PolicyDoc | null = null;
    renderPolicyEditor(container, DEFAULT_POLICY, (next) => {
      applied = next;
    });
    const sshToggle = container.querySelector(
      'input[data-promote="bash:ssh"]',
    ) as HTMLInputElement;
    sshToggle.checked = true;
    (container.querySelector("button.apply-policy") as HTMLButtonElement).click();
    expect(applied!.promote["bash"]["ssh"]).toEqual([0]);
  });

  it("type checkboxes control included_types", () => {
    const container = document.createElement("div");
    let applied: PolicyDoc | null = null;
    renderPolicyEditor(container, DEFAULT_POLICY, (next) => {
      applied = next;
    });
    const bash = container.querySelector('input[data-type="bash"]') as HTMLInputElement;
    bash.checked = false;
    (container.querySelector("button.apply-policy") as HTMLButtonElement).click();
    expect(applied!.included_types).toEqual(["game", "msf"]);
  });

  it("buildPolicy preserves time settings from the base policy", () => {
    const base: PolicyDoc = {
      ...DEFAULT_POLICY,
      time_mode: "relative_per_case",
      pause_gap_cap: 1800,
    };
    const next = buildPolicy(base, ["game"], promotionRows(base));
    expect(next.time_mode).toBe("relative_per_case");
    expect(next.pause_gap_cap).toBe(1800);
    expect(next.task_prefix).toBe(base.task_prefix);
  });
});
