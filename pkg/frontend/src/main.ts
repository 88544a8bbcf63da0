/** DOM wiring of the studio: upload -> five-step wizard -> Pareto explorer.
 * All numbers on screen come from service payloads (rounded for display);
 * the logic modules (wizard/explorer/scatter) are pure and tested. */

import { ApiError, ServiceClient } from "./api";
import {
  createFrontView,
  groupBars,
  selectPoint,
  selectedPoint,
  setFilters,
  staleBannerNeeded,
  visiblePoints,
  type FrontView,
} from "./explorer";
import { formatThresholds, formatValue } from "./format";
import { renderScatter } from "./scatter";
import type { ParetoResponse, RuleDetail, SessionCreated, StatusResponse } from "./types";
import {
  POSITIONS_GUIDANCE,
  STEP_TITLES,
  buildConfig,
  canReach,
  defaultDraft,
  validateStep,
  type WizardDraft,
} from "./wizard";

const BASE_URL = (import.meta as { env?: Record<string, string> }).env?.VITE_SERVICE_URL ?? "http://127.0.0.1:8000";

interface AppState {
  client: ServiceClient;
  session: SessionCreated | null;
  draft: WizardDraft;
  step: number;
  configDigest: string | null;
  status: StatusResponse | null;
  view: FrontView | null;
  detail: RuleDetail | null;
  selectionRecord: unknown | null;
  busy: string | null;
  error: string | null;
}

const state: AppState = {
  client: new ServiceClient(BASE_URL),
  session: null,
  draft: defaultDraft(),
  step: 1,
  configDigest: null,
  status: null,
  view: null,
  detail: null,
  selectionRecord: null,
  busy: null,
  error: null,
};

const app = document.getElementById("app")!;

function h(strings: TemplateStringsArray, ...values: unknown[]): string {
  return strings.reduce((acc, s, i) => acc + s + (i < values.length ? String(values[i]) : ""), "");
}

function render(): void {
  const sections = [renderUpload()];
  if (state.session) {
    sections.push(renderWizard());
  }
  if (state.view) {
    sections.push(renderExplorer());
  }
  if (state.error) {
    sections.unshift(h`<div class="banner error">${escapeHtml(state.error)}</div>`);
  }
  if (state.busy) {
    sections.unshift(h`<div class="banner busy">${escapeHtml(state.busy)}</div>`);
  }
  app.innerHTML = sections.join("");
}

function escapeHtml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

// --- upload ---------------------------------------------------------------------

function renderUpload(): string {
  if (state.session) {
    return h`<section class="panel">
      <h2>Dataset</h2>
      <p>${state.session.individuals} individuals, groups: ${state.session.groups.join(", ")}
      <button id="reset-session">start over</button></p>
    </section>`;
  }
  return h`<section class="panel">
    <h2>Dataset</h2>
    <p>Upload a CSV with <code>score</code>, <code>group</code> and <code>outcome</code> columns
    (optional <code>amount</code>, <code>id</code>; extra columns become attributes).</p>
    <input type="file" id="csv-file" accept=".csv,text/csv" />
    <label>group column <input type="text" id="group-column" value="group" size="10" /></label>
    <button id="upload-btn">create session</button>
  </section>`;
}

async function onUpload(): Promise<void> {
  const input = document.getElementById("csv-file") as HTMLInputElement;
  const groupColumn = (document.getElementById("group-column") as HTMLInputElement).value || "group";
  const file = input.files?.[0];
  if (!file) {
    state.error = "choose a CSV file first";
    render();
    return;
  }
  await guarded("uploading dataset", async () => {
    state.session = await state.client.createSession(file, { group_column: groupColumn });
    state.draft = defaultDraft(state.session.groups, groupColumn);
    state.step = 1;
    state.view = null;
    state.detail = null;
    state.selectionRecord = null;
  });
}

// --- wizard ---------------------------------------------------------------------

function renderWizard(): string {
  const tabs = STEP_TITLES.map((title, i) => {
    const step = i + 1;
    const reachable = canReach(step, state.draft);
    const cls = step === state.step ? "tab active" : reachable ? "tab" : "tab locked";
    return h`<button class="${cls}" data-step="${step}" ${reachable ? "" : "disabled"}>${step}. ${title}</button>`;
  }).join("");
  const messages = validateStep(state.step, state.draft)
    .map((m) => h`<li class="invalid">${escapeHtml(m)}</li>`)
    .join("");
  return h`<section class="panel">
    <h2>Value choices</h2>
    <nav class="tabs">${tabs}</nav>
    <div class="step-body">${renderStepBody()}</div>
    ${messages ? `<ul class="messages">${messages}</ul>` : ""}
    ${renderStaleBanner()}
  </section>`;
}

function renderStaleBanner(): string {
  const resultDigest = state.status?.result_digest ?? null;
  if (staleBannerNeeded(resultDigest, state.configDigest)) {
    return `<div class="banner stale">Value choices changed after the last sweep; results are stale until you re-run.</div>`;
  }
  return "";
}

function tableInputs(prefix: "dm" | "ds", table: { tp: number; fp: number; fn: number; tn: number }, min?: number, max?: number): string {
  const bounds = min !== undefined && max !== undefined ? h`min="${min}" max="${max}"` : "";
  const row = (cell: keyof typeof table, label: string) =>
    h`<label class="cell">${label}
      <input type="number" step="any" ${bounds} data-table="${prefix}" data-cell="${cell}" value="${table[cell]}" />
    </label>`;
  return h`<div class="table-grid">
    ${row("tp", "accepted, outcome 1")}
    ${row("fp", "accepted, outcome 0")}
    ${row("fn", "rejected, outcome 1")}
    ${row("tn", "rejected, outcome 0")}
  </div>`;
}

function renderStepBody(): string {
  const d = state.draft;
  switch (state.step) {
    case 1:
      return h`
        <label><input type="radio" name="dm-variant" value="lending" ${d.dmVariant === "lending" ? "checked" : ""}/> lending (interest on repayment, principal lost on default, rejection neutral)</label>
        <label><input type="radio" name="dm-variant" value="table" ${d.dmVariant === "table" ? "checked" : ""}/> explicit utility table</label>
        ${
          d.dmVariant === "lending"
            ? h`<label>interest rate <input type="number" step="0.01" id="interest-rate" value="${d.interestRate}" /></label>`
            : tableInputs("dm", d.dmTable) +
              h`<label><input type="checkbox" id="dm-amount-scaled" ${d.dmAmountScaled ? "checked" : ""}/> scale by amount</label>`
        }`;
    case 2:
      return h`
        <p>How much do the decision subjects gain or lose in each situation (−10 … +10)?</p>
        ${tableInputs("ds", d.dsTable, -10, 10)}
        <label><input type="checkbox" id="ds-amount-scaled" ${d.dsAmountScaled ? "checked" : ""}/> scale by amount</label>`;
    case 3:
      return h`
        <p class="guidance">${escapeHtml(POSITIONS_GUIDANCE)}</p>
        <label>group column <input type="text" id="wizard-group-column" value="${escapeHtml(d.groupColumn)}" /></label>
        <fieldset>
          <legend>who holds an equal claim?</legend>
          <label><input type="radio" name="claims" value="all" ${d.claimsVariant === "all" ? "checked" : ""}/> everyone</label>
          <label><input type="radio" name="claims" value="outcome_equals" ${d.claimsVariant === "outcome_equals" ? "checked" : ""}/> people with outcome
            <select id="outcome-y"><option value="1" ${d.outcomeY === 1 ? "selected" : ""}>1</option><option value="0" ${d.outcomeY === 0 ? "selected" : ""}>0</option></select>
          </label>
          <label><input type="radio" name="claims" value="attribute_predicate" ${d.claimsVariant === "attribute_predicate" ? "checked" : ""}/> attribute test
            <input type="text" id="pred-attr" placeholder="attribute" value="${escapeHtml(d.predicateAttribute)}" size="10"/>
            <select id="pred-op">${["=", "!=", "<", "<=", ">", ">="].map((op) => h`<option ${op === d.predicateOp ? "selected" : ""}>${op}</option>`).join("")}</select>
            <input type="text" id="pred-value" placeholder="value" value="${escapeHtml(d.predicateValue)}" size="8"/>
          </label>
        </fieldset>`;
    case 4:
      return h`
        <fieldset>
          <legend>how should utility be distributed between the positions?</legend>
          <label><input type="radio" name="pattern" value="egalitarian" ${d.patternVariant === "egalitarian" ? "checked" : ""}/> egalitarian — as equal as possible (score: −range)</label>
          <label><input type="radio" name="pattern" value="maximin" ${d.patternVariant === "maximin" ? "checked" : ""}/> maximin — best worst-off position (score: minimum)</label>
          <label><input type="radio" name="pattern" value="prioritarian" ${d.patternVariant === "prioritarian" ? "checked" : ""}/> prioritarian — weighted mean, worst-off weighted most</label>
          <label><input type="radio" name="pattern" value="sufficientarian" ${d.patternVariant === "sufficientarian" ? "checked" : ""}/> sufficientarian — no position below a level</label>
        </fieldset>
        ${
          d.patternVariant === "prioritarian"
            ? h`<label>weights (worst-off first, non-increasing) <input type="text" id="weights" value="${d.weights.join(", ")}" /></label>`
            : ""
        }
        ${
          d.patternVariant === "sufficientarian"
            ? h`<label>sufficiency level τ <input type="number" step="any" id="tau" value="${d.tau}" /></label>`
            : ""
        }`;
    case 5: {
      const sweeping = state.status?.status === "sweeping";
      const progress = state.status ? Math.round(state.status.progress * 100) : 0;
      return h`
        <label>mode
          <select id="mode">
            <option value="expected" ${d.mode === "expected" ? "selected" : ""}>expected (score-weighted)</option>
            <option value="empirical" ${d.mode === "empirical" ? "selected" : ""}>empirical (observed outcomes)</option>
          </select>
        </label>
        <label>thresholds per group <input type="number" id="grid-n" value="${d.gridN}" min="2" step="1"/></label>
        <label>viability floor <input type="number" id="floor" step="any" value="${d.viabilityFloor}"/></label>
        <button id="run-sweep" ${sweeping ? "disabled" : ""}>run sweep</button>
        ${sweeping ? h`<progress max="100" value="${progress}"></progress> ${progress}%` : ""}`;
    }
    default:
      return "";
  }
}

async function onRunSweep(): Promise<void> {
  if (!state.session) return;
  const sessionId = state.session.id;
  await guarded("sweeping threshold combinations", async () => {
    const accepted = await state.client.putConfig(sessionId, buildConfig(state.draft));
    state.configDigest = accepted.config_digest;
    await state.client.runSweep(sessionId);
    const status = await state.client.waitForSweep(sessionId, (s) => {
      state.status = s;
      render();
    });
    state.status = status;
    if (status.status === "error") {
      throw new Error(status.error ?? "sweep failed");
    }
    const pareto: ParetoResponse = await state.client.getPareto(sessionId);
    state.view = createFrontView(pareto);
    state.detail = null;
    state.selectionRecord = null;
  });
}

// --- explorer -------------------------------------------------------------------

function renderExplorer(): string {
  const view = state.view!;
  const points = visiblePoints(view);
  const extremes = view.pareto.extremes;
  const scatter = renderScatter(points, {
    floor: view.pareto.viability_floor,
    selectedIndex: view.selectedIndex,
    maxDmIndex: extremes?.max_dm_utility.index ?? null,
    maxFairnessIndex: extremes?.max_fairness.index ?? null,
  });
  return h`<section class="panel">
    <h2>Trade-off explorer</h2>
    <p>${view.pareto.sweep_size} rules, ${view.pareto.front_size} on the front.
      <label><input type="checkbox" id="filter-viable" ${view.filters.viableOnly ? "checked" : ""}/> viable only</label>
      <label><input type="checkbox" id="filter-front" ${view.filters.frontOnly ? "checked" : ""}/> front only</label>
      <span class="meta">showing ${points.length} points</span>
    </p>
    <div id="scatter">${scatter.svg}</div>
    ${renderDetail()}
  </section>`;
}

function renderDetail(): string {
  const view = state.view!;
  const point = selectedPoint(view);
  if (!point || !state.detail) {
    return `<p class="hint">Click a point to inspect per-group utilities and record a selection.</p>`;
  }
  const detail = state.detail;
  const bars = groupBars(detail, view.pareto.groups);
  const maxAbs = Math.max(...bars.map((b) => Math.abs(b.utility)), 1e-9);
  const rows = bars
    .map((b) => {
      const width = Math.round((Math.abs(b.utility) / maxAbs) * 240);
      const cls = b.utility >= 0 ? "bar pos" : "bar neg";
      return h`<tr>
        <td>${escapeHtml(b.group)}</td>
        <td><div class="${cls}" style="width:${width}px"></div> ${b.display}</td>
        <td>${b.claimCount}</td>
        <td>${formatValue(b.acceptanceRate)}</td>
      </tr>`;
    })
    .join("");
  return h`<div class="detail">
    <h3>rule ${formatThresholds(detail.thresholds)}</h3>
    <p>decision-maker utility ${formatValue(detail.dm_utility)},
       fairness score ${formatValue(detail.fairness_score)}
       ${detail.on_front ? '<span class="tag">on front</span>' : ""}
       ${detail.viable ? '<span class="tag ok">viable</span>' : '<span class="tag warn">below floor</span>'}</p>
    <table class="bars">
      <thead><tr><th>position</th><th>mean utility</th><th>claim holders</th><th>acceptance rate</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
    <button id="record-selection">record this selection</button>
    ${state.selectionRecord ? h`<h3>decision record</h3><pre class="record">${escapeHtml(JSON.stringify(state.selectionRecord, null, 2))}</pre>` : ""}
  </div>`;
}

async function onSelectPoint(index: number): Promise<void> {
  if (!state.view || !state.session) return;
  state.view = selectPoint(state.view, index);
  const point = selectedPoint(state.view);
  if (!point) return;
  await guarded("loading rule detail", async () => {
    state.detail = await state.client.getRuleDetail(state.session!.id, point.index);
    state.selectionRecord = null;
  });
}

async function onRecordSelection(): Promise<void> {
  if (!state.view || !state.session || state.view.selectedIndex === null) return;
  const index = state.view.selectedIndex;
  await guarded("recording selection", async () => {
    state.selectionRecord = await state.client.postSelection(state.session!.id, index);
  });
}

// --- plumbing -------------------------------------------------------------------

async function guarded(busy: string, action: () => Promise<void>): Promise<void> {
  state.busy = busy;
  state.error = null;
  render();
  try {
    await action();
  } catch (err) {
    if (err instanceof ApiError) {
      state.error = `${err.code}: ${err.message}`;
    } else {
      state.error = err instanceof Error ? err.message : String(err);
    }
  } finally {
    state.busy = null;
    render();
  }
}

function bindEvents(): void {
  app.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    if (target.id === "upload-btn") void onUpload();
    if (target.id === "reset-session") {
      state.session = null;
      state.view = null;
      state.detail = null;
      state.status = null;
      state.configDigest = null;
      render();
    }
    if (target.id === "run-sweep") void onRunSweep();
    if (target.id === "record-selection") void onRecordSelection();
    const tab = target.closest<HTMLElement>("button[data-step]");
    if (tab && !tab.hasAttribute("disabled")) {
      state.step = Number(tab.dataset.step);
      render();
    }
    const circle = target.closest<SVGCircleElement & HTMLElement>("circle[data-index]");
    if (circle) void onSelectPoint(Number(circle.dataset.index));
  });

  app.addEventListener("change", (event) => {
    const target = event.target as HTMLInputElement | HTMLSelectElement;
    const d = state.draft;
    switch (target.id) {
      case "interest-rate":
        d.interestRate = Number(target.value);
        break;
      case "dm-amount-scaled":
        d.dmAmountScaled = (target as HTMLInputElement).checked;
        break;
      case "ds-amount-scaled":
        d.dsAmountScaled = (target as HTMLInputElement).checked;
        break;
      case "wizard-group-column":
        d.groupColumn = target.value;
        break;
      case "outcome-y":
        d.outcomeY = Number(target.value) === 0 ? 0 : 1;
        break;
      case "pred-attr":
        d.predicateAttribute = target.value;
        break;
      case "pred-op":
        d.predicateOp = target.value;
        break;
      case "pred-value":
        d.predicateValue = target.value;
        break;
      case "weights":
        d.weights = target.value
          .split(",")
          .map((w) => Number(w.trim()))
          .filter((w) => target.value.trim() !== "" && !Number.isNaN(w));
        break;
      case "tau":
        d.tau = Number(target.value);
        break;
      case "mode":
        d.mode = target.value === "empirical" ? "empirical" : "expected";
        break;
      case "grid-n":
        d.gridN = Number(target.value);
        break;
      case "floor":
        d.viabilityFloor = Number(target.value);
        break;
      case "filter-viable":
        if (state.view) state.view = setFilters(state.view, { viableOnly: (target as HTMLInputElement).checked });
        break;
      case "filter-front":
        if (state.view) state.view = setFilters(state.view, { frontOnly: (target as HTMLInputElement).checked });
        break;
      default:
        break;
    }
    if (target.name === "dm-variant") d.dmVariant = target.value as "lending" | "table";
    if (target.name === "claims") d.claimsVariant = target.value as WizardDraft["claimsVariant"];
    if (target.name === "pattern") d.patternVariant = target.value as WizardDraft["patternVariant"];
    const tableInput = target.closest<HTMLInputElement>("input[data-table]");
    if (tableInput) {
      const which = tableInput.dataset.table === "dm" ? d.dmTable : d.dsTable;
      const cell = tableInput.dataset.cell as keyof typeof which;
      which[cell] = Number(tableInput.value);
    }
    render();
  });
}

bindEvents();
render();
