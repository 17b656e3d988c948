import { GatewayClient } from "./api";
import { ConsoleStore, type ConsoleState } from "./store";
import { buildScene, layoutScene, paint } from "./render";
import type { GraphDocument } from "./types";

// DOM wiring only: every number and id shown here is read straight off
// the store, which in turn holds raw gateway responses.

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface Console {
  store: ConsoleStore;
  client: GatewayClient;
  refreshGraphList: () => Promise<void>;
}

export function createConsole(
  root: HTMLElement,
  client: GatewayClient,
  pollIntervalMs?: number,
): Console {
  const store = new ConsoleStore(client, pollIntervalMs);

  const header = el("header");
  const title = el("h1", {}, "plant operator console");
  const graphSelect = el("select", { id: "graph-select" });
  graphSelect.append(el("option", { value: "" }, "choose a graph"));
  const uploadInput = el("input", { type: "file", accept: ".json", id: "upload" });
  const refreshBtn = el("button", { id: "refresh-graphs" }, "refresh list");
  header.append(title, graphSelect, uploadInput, refreshBtn);

  const bannerBox = el("p", { class: "banner", hidden: "" });

  const layout = el("div", { class: "layout" });
  const canvasWrap = el("div", { class: "canvas-wrap" });
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.classList.add("plant");
  svg.setAttribute("viewBox", "0 0 900 600");
  canvasWrap.append(svg);
  const toast = el("div", { class: "toast", hidden: "" });
  canvasWrap.append(toast);

  const aside = el("aside");
  const scenarioH = el("h2", {}, "scenario draft");
  const stagedList = el("ul", { id: "staged-faults" });
  const scenarioHint = el(
    "p",
    { class: "muted" },
    "click a non-switch node to stage or clear a fault",
  );
  const switchesH = el("h2", {}, "switches");
  const switchList = el("ul", { id: "switch-list" });
  const serviceH = el("h2", {}, "service");
  const serviceBox = el("div", { id: "service-box" });
  const reconfigureH = el("h2", {}, "reconfigure");
  const modeSelect = el("select", { id: "mode" });
  modeSelect.append(
    el("option", { value: "genetic" }, "genetic"),
    el("option", { value: "exhaustive" }, "exhaustive"),
  );
  const seedInput = el("input", { type: "number", value: "0", id: "seed" });
  const npopInput = el("input", { type: "number", value: "400", id: "npop" });
  const ngenInput = el("input", { type: "number", value: "200", id: "ngen" });
  const nselInput = el("input", { type: "number", value: "100", id: "nsel" });
  const paramGrid = el("div");
  for (const [label, input] of [
    ["seed", seedInput],
    ["npop", npopInput],
    ["ngen", ngenInput],
    ["nsel", nselInput],
  ] as const) {
    const row = el("label", { style: "display:block" }, `${label} `);
    row.append(input);
    paramGrid.append(row);
  }
  const launchBtn = el("button", { id: "launch" }, "reconfigure");
  const jobBox = el("div", { id: "job-box" });
  const reportH = el("h2", {}, "best state");
  const reportBox = el("div", { id: "report-box" });
  aside.append(
    scenarioH, stagedList, scenarioHint,
    switchesH, switchList,
    serviceH, serviceBox,
    reconfigureH, modeSelect, paramGrid, launchBtn, jobBox,
    reportH, reportBox,
  );

  layout.append(canvasWrap, aside);
  root.append(header, bannerBox, layout);

  async function refreshGraphList(): Promise<void> {
    const listing = await client.listGraphs();
    const keep = graphSelect.value;
    graphSelect.replaceChildren(el("option", { value: "" }, "choose a graph"));
    for (const row of listing.graphs) {
      const name = `${row.graph_id.slice(0, 10)} (${row.nodes} nodes)`;
      graphSelect.append(el("option", { value: row.graph_id }, name));
    }
    graphSelect.value = keep;
  }

  graphSelect.addEventListener("change", () => {
    if (graphSelect.value) void store.loadGraph(graphSelect.value);
  });
  refreshBtn.addEventListener("click", () => void refreshGraphList());
  uploadInput.addEventListener("change", async () => {
    const file = uploadInput.files?.[0];
    if (!file) return;
    try {
      const doc = JSON.parse(await file.text()) as GraphDocument;
      const up = await client.uploadGraph(doc);
      await refreshGraphList();
      graphSelect.value = up.graph_id;
      await store.loadGraph(up.graph_id);
    } catch (err) {
      toast.textContent = err instanceof Error ? err.message : String(err);
      toast.hidden = false;
    }
  });
  launchBtn.addEventListener("click", () => {
    const mode = modeSelect.value as "genetic" | "exhaustive";
    void store.reconfigure(mode, {
      seed: Number(seedInput.value),
      npop: Number(npopInput.value),
      ngen: Number(ngenInput.value),
      nsel: Number(nselInput.value),
    });
  });
  toast.addEventListener("click", () => store.dismissToast());

  const switchIds = (state: ConsoleState) => new Set(Object.keys(state.switches));

  function renderSide(state: ConsoleState): void {
    stagedList.replaceChildren(
      ...state.staged.map((id) => {
        const li = el("li", { "data-staged": id }, `fault at ${id} `);
        const btn = el("button", {}, "clear");
        btn.addEventListener("click", () => void store.unstageFault(id));
        li.append(btn);
        return li;
      }),
    );
    if (state.staged.length === 0) {
      stagedList.append(el("li", { class: "muted" }, "no faults staged"));
    }

    switchList.replaceChildren(
      ...Object.keys(state.switches)
        .sort()
        .map((name) => {
          const closed = state.switches[name] ?? true;
          const li = el("li", {
            class: `switch-row${state.highlights.includes(name) ? " flipped" : ""}`,
            "data-switch": name,
          });
          li.append(`${name}: ${closed ? "closed" : "open"} `);
          const btn = el("button", { "data-toggle": name }, closed ? "open it" : "close it");
          btn.addEventListener("click", () => void store.toggleSwitch(name));
          li.append(btn);
          return li;
        }),
    );

    if (state.service) {
      const dl = el("dl");
      dl.append(el("dt", {}, "total"));
      dl.append(el("dd", { "data-total": "" }, String(state.service.total)));
      for (const [user, value] of Object.entries(state.service.per_user)) {
        dl.append(el("dt", {}, `user ${user}`));
        dl.append(el("dd", { "data-user": user }, String(value)));
      }
      serviceBox.replaceChildren(dl);
    } else {
      serviceBox.replaceChildren(el("p", { class: "muted" }, "no graph loaded"));
    }

    if (state.job) {
      const panel = el("div", { class: "job-panel" });
      const prog = el("progress");
      if (state.job.totalGenerations > 0) {
        prog.max = state.job.totalGenerations;
        prog.value = state.job.progress;
      }
      panel.append(
        el("p", {}, `job ${state.job.status}, generation ${state.job.progress}` +
          (state.job.totalGenerations ? ` of ${state.job.totalGenerations}` : "")),
        prog,
        el("p", {}, state.job.bestFitness === null
          ? "no best yet"
          : `running best ${String(state.job.bestFitness)}`),
      );
      const cancel = el("button", { id: "cancel-job" },
        state.job.cancelling ? "cancelling" : "cancel");
      cancel.addEventListener("click", () => void store.cancelJob());
      panel.append(cancel);
      jobBox.replaceChildren(panel);
    } else {
      jobBox.replaceChildren();
    }

    if (state.report && state.report.mode !== "fixed") {
      const r = state.report;
      const panel = el("div", { class: "report-panel" });
      const dl = el("dl");
      const rows: Array<[string, string, string]> = [
        ["actions", String(r.chosen_state.n_actions), "n-actions"],
        ["total service", String(r.chosen_state.s_tot), "s-tot"],
        ["nodes alive", String(r.chosen_state.n_alive), "n-alive"],
        ["fitness", String(r.chosen_state.fitness), "fitness"],
      ];
      for (const [label, value, key] of rows) {
        dl.append(el("dt", {}, label));
        dl.append(el("dd", { [`data-${key}`]: "" }, value));
      }
      panel.append(dl);
      panel.append(el("p", {},
        state.highlights.length
          ? `flipped: ${state.highlights.join(", ")}`
          : "no switches flipped"));
      reportBox.replaceChildren(panel);
    } else {
      reportBox.replaceChildren(el("p", { class: "muted" }, "run reconfigure to fill this in"));
    }

    toast.hidden = state.toast === null;
    toast.textContent = state.toast ?? "";
    bannerBox.hidden = state.banner === null;
    bannerBox.textContent = state.banner ?? "";
  }

  function renderCanvas(state: ConsoleState): void {
    const scene = layoutScene(buildScene(state.doc, state));
    paint(svg, scene, {
      onNodeClick: (id) => {
        if (switchIds(state).has(id)) void store.toggleSwitch(id);
        else if (state.staged.includes(id)) void store.unstageFault(id);
        else void store.stageFault(id);
      },
    });
  }

  store.subscribe((state) => {
    renderSide(state);
    renderCanvas(state);
  });
  renderSide(store.state);
  renderCanvas(store.state);

  return { store, client, refreshGraphList };
}

function gatewayBase(): string {
  const fromQuery = new URLSearchParams(location.search).get("gateway");
  if (fromQuery) return fromQuery.replace(/\/$/, "");
  const stored = localStorage.getItem("gateway-url");
  if (stored) return stored;
  return "http://127.0.0.1:8000";
}

if (typeof document !== "undefined") {
  const appRoot = document.getElementById("app");
  if (appRoot) {
    const base = gatewayBase();
    localStorage.setItem("gateway-url", base);
    const console_ = createConsole(appRoot, new GatewayClient(base));
    void console_.refreshGraphList().catch(() => {
      // gateway not up yet; the refresh button retries
    });
  }
}
