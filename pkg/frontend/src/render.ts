import * as d3 from "d3";
import type { GraphDocument, Role, ServiceBlock } from "./types";

// buildScene is pure: graph document + view state in, drawable scene out.
// The painter below is the only code that touches the DOM, so everything
// an acceptance check cares about (glyphs, labels, strikes, highlights)
// is testable without a browser.

export type Glyph = "triangle-down" | "circle" | "cross" | "triangle-up";

const GLYPH_FOR_ROLE: Record<Role, Glyph> = {
  SOURCE: "triangle-down",
  HUB: "circle",
  SWITCH: "cross",
  USER: "triangle-up",
};

export interface SceneNode {
  id: string;
  glyph: Glyph;
  color: string;
  opacity: number;
  struck: boolean;
  open: boolean;
  highlighted: boolean;
  staged: boolean;
  label: string;
  serviceText: string | null;
  x?: number;
  y?: number;
}

export interface SceneEdge {
  from: string;
  to: string;
  weight: number;
  dashed: boolean;
}

export type Scene =
  | { kind: "banner"; message: string }
  | { kind: "empty"; prompt: string }
  | { kind: "graph"; nodes: SceneNode[]; edges: SceneEdge[] };

export interface ViewState {
  switches: Record<string, boolean>;
  staged: string[];
  service: ServiceBlock | null;
  broken: string[];
  highlights: string[];
}

const AREA_COLORS = d3.schemeTableau10;

const ROLES = new Set(["SOURCE", "HUB", "SWITCH", "USER"]);

function checkShape(doc: GraphDocument): string | null {
  if (!doc || !Array.isArray(doc.nodes) || !Array.isArray(doc.edges)) {
    return "document is not a graph: expected nodes and edges arrays";
  }
  for (const node of doc.nodes) {
    if (typeof node.id !== "string" || !ROLES.has(node.role)) {
      return `node ${String(node.id)}: unknown shape or role`;
    }
  }
  for (const edge of doc.edges) {
    if (typeof edge.from !== "string" || typeof edge.to !== "string") {
      return "edge with missing endpoints";
    }
  }
  return null;
}

export function areaColor(doc: GraphDocument): (area: string) => string {
  const areas = Array.from(new Set(doc.nodes.map((n) => n.area))).sort();
  return (area: string) => {
    const i = areas.indexOf(area);
    return AREA_COLORS[(i < 0 ? 0 : i) % AREA_COLORS.length] as string;
  };
}

export function buildScene(doc: GraphDocument | null, view: ViewState): Scene {
  if (doc === null) return { kind: "empty", prompt: "load a plant graph to begin" };
  const problem = checkShape(doc);
  if (problem !== null) return { kind: "banner", message: problem };
  if (doc.nodes.length === 0) {
    return { kind: "empty", prompt: "this graph has no nodes" };
  }
  const broken = new Set(view.broken);
  const highlights = new Set(view.highlights);
  const staged = new Set(view.staged);
  const color = areaColor(doc);
  const perUser = view.service?.per_user ?? {};
  const nodes: SceneNode[] = doc.nodes.map((node) => {
    const isSwitch = node.role === "SWITCH";
    const closed = isSwitch ? (view.switches[node.id] ?? node.switch ?? true) : true;
    const serviceValue =
      node.role === "USER" && node.id in perUser ? perUser[node.id] : null;
    // number printed exactly as the server sent it, no reformatting
    const serviceText = serviceValue === null ? null : String(serviceValue);
    return {
      id: node.id,
      glyph: GLYPH_FOR_ROLE[node.role],
      color: color(node.area),
      opacity: node.passive_resistant ? 1.0 : 0.55,
      struck: broken.has(node.id),
      open: isSwitch && !closed,
      highlighted: highlights.has(node.id),
      staged: staged.has(node.id),
      label: node.id,
      serviceText,
    };
  });
  const edges: SceneEdge[] = doc.edges.map((edge) => ({
    from: edge.from,
    to: edge.to,
    weight: edge.weight,
    dashed: edge.logic === "OR",
  }));
  return { kind: "graph", nodes, edges };
}

/**
 * Force-directed placement, run synchronously so painting is a single
 * pass and tests see settled, finite coordinates.
 */
export function layoutScene(
  scene: Scene,
  width = 900,
  height = 600,
  ticks = 150,
): Scene {
  if (scene.kind !== "graph") return scene;
  type SimNode = d3.SimulationNodeDatum & { id: string };
  const simNodes: SimNode[] = scene.nodes.map((n) => ({ id: n.id }));
  const simLinks = scene.edges.map((e) => ({ source: e.from, target: e.to }));
  const sim = d3
    .forceSimulation(simNodes)
    .force("link", d3.forceLink(simLinks).id((d) => (d as SimNode).id).distance(60))
    .force("charge", d3.forceManyBody().strength(-180))
    .force("center", d3.forceCenter(width / 2, height / 2))
    .force("collide", d3.forceCollide(18))
    .stop();
  sim.tick(ticks);
  const pos = new Map(simNodes.map((n) => [n.id, n]));
  for (const node of scene.nodes) {
    const p = pos.get(node.id);
    node.x = p?.x ?? width / 2;
    node.y = p?.y ?? height / 2;
  }
  return scene;
}

const SYMBOL_FOR_GLYPH: Record<Glyph, d3.SymbolType> = {
  "triangle-down": d3.symbolTriangle,
  "triangle-up": d3.symbolTriangle,
  circle: d3.symbolCircle,
  cross: d3.symbolCross,
};

function glyphTransform(node: SceneNode): string {
  const base = `translate(${node.x ?? 0},${node.y ?? 0})`;
  if (node.glyph === "triangle-down") return `${base} rotate(180)`;
  if (node.glyph === "cross" && node.open) return `${base} rotate(45)`;
  return base;
}

export interface PaintHandlers {
  onNodeClick?: (id: string) => void;
}

/** Draw a laid-out scene into an svg element with a d3 data join. */
export function paint(
  svg: SVGSVGElement,
  scene: Scene,
  handlers: PaintHandlers = {},
): void {
  const root = d3.select(svg);
  root.selectAll("*").remove();
  if (scene.kind === "banner") {
    root
      .append("text")
      .attr("class", "banner")
      .attr("x", 20)
      .attr("y", 30)
      .text(scene.message);
    return;
  }
  if (scene.kind === "empty") {
    root
      .append("text")
      .attr("class", "empty-prompt")
      .attr("x", 20)
      .attr("y", 30)
      .text(scene.prompt);
    return;
  }
  const byId = new Map(scene.nodes.map((n) => [n.id, n]));
  root
    .append("g")
    .selectAll("line")
    .data(scene.edges)
    .join("line")
    .attr("class", "edge")
    .attr("stroke", "#999")
    .attr("stroke-dasharray", (e) => (e.dashed ? "4 3" : null))
    .attr("x1", (e) => byId.get(e.from)?.x ?? 0)
    .attr("y1", (e) => byId.get(e.from)?.y ?? 0)
    .attr("x2", (e) => byId.get(e.to)?.x ?? 0)
    .attr("y2", (e) => byId.get(e.to)?.y ?? 0);
  const symbol = d3.symbol<SceneNode>().size(220);
  const groups = root
    .append("g")
    .selectAll<SVGGElement, SceneNode>("g.node")
    .data(scene.nodes, (n) => n.id)
    .join("g")
    .attr("class", (n) => {
      const cls = ["node", `glyph-${n.glyph}`];
      if (n.struck) cls.push("struck");
      if (n.open) cls.push("open");
      if (n.highlighted) cls.push("highlighted");
      if (n.staged) cls.push("staged");
      return cls.join(" ");
    })
    .attr("data-node-id", (n) => n.id);
  groups
    .append("path")
    .attr("d", (n) => symbol.type(SYMBOL_FOR_GLYPH[n.glyph])(n))
    .attr("transform", glyphTransform)
    .attr("fill", (n) => (n.open ? "none" : n.color))
    .attr("stroke", (n) => (n.highlighted ? "#d62728" : n.color))
    .attr("stroke-width", (n) => (n.highlighted ? 3 : 1.5))
    .attr("opacity", (n) => n.opacity);
  groups
    .filter((n) => n.struck)
    .append("line")
    .attr("class", "strike")
    .attr("stroke", "#111")
    .attr("stroke-width", 2.5)
    .attr("x1", (n) => (n.x ?? 0) - 12)
    .attr("y1", (n) => (n.y ?? 0) + 12)
    .attr("x2", (n) => (n.x ?? 0) + 12)
    .attr("y2", (n) => (n.y ?? 0) - 12);
  groups
    .append("text")
    .attr("class", "node-label")
    .attr("x", (n) => n.x ?? 0)
    .attr("y", (n) => (n.y ?? 0) - 16)
    .attr("text-anchor", "middle")
    .text((n) => n.label);
  groups
    .filter((n) => n.serviceText !== null)
    .append("text")
    .attr("class", "service-label")
    .attr("data-user-id", (n) => n.id)
    .attr("x", (n) => n.x ?? 0)
    .attr("y", (n) => (n.y ?? 0) + 28)
    .attr("text-anchor", "middle")
    .text((n) => n.serviceText);
  if (handlers.onNodeClick) {
    groups.style("cursor", "pointer").on("click", (_event, n) => {
      handlers.onNodeClick?.(n.id);
    });
  }
}
