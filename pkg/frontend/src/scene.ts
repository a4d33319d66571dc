// View-model construction: a validated document plus layout/selection state
// becomes a Scene, the flat structure the SVG layer draws. Tests assert
// fidelity here (node count, link count, label multiset) without touching
// the DOM.

import type {
  Callback,
  Canvas,
  Chart,
  FrancyDocument,
  Menu,
  Message,
  Shape,
} from "./document";
import type { LayoutEngine, Point } from "./layout";

export interface SceneNode {
  id: string;
  x: number;
  y: number;
  shape: Shape;
  title: string;
  size: number;
  layer: number;
  color?: string;
  selected: boolean;
  pinned: boolean;
  menus: Menu[];
  callbacks: Callback[];
  messages: Message[];
}

export interface SceneEdge {
  id: string;
  source: Point & { id: string };
  target: Point & { id: string };
  loop: boolean;
  directed: boolean;
  color?: string;
  title?: string;
}

export interface ChartSeries {
  name: string;
  values: number[];
  color: string;
}

export interface ChartScene {
  kind: Chart["kind"];
  xLabels: string[];
  yDomain: [number, number];
  xTitle: string;
  yTitle: string;
  series: ChartSeries[];
  showLegend: boolean;
}

export interface Scene {
  title: string;
  width: number;
  height: number;
  zoomToFit: boolean;
  canvasMenus: Menu[];
  messages: Message[];
  kind: "graph" | "chart" | "empty";
  nodes: SceneNode[];
  edges: SceneEdge[];
  chart?: ChartScene;
}

const SERIES_COLORS = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

export function buildScene(
  document: FrancyDocument,
  layout: LayoutEngine,
  selection: ReadonlySet<string>,
): Scene {
  const canvas: Canvas = document.canvas;
  const scene: Scene = {
    title: canvas.title,
    width: canvas.width,
    height: canvas.height,
    zoomToFit: canvas.zoomToFit,
    canvasMenus: sortedById(canvas.menus),
    messages: sortedById(canvas.messages),
    kind: canvas.graph ? "graph" : canvas.chart ? "chart" : "empty",
    nodes: [],
    edges: [],
  };

  if (canvas.graph) {
    const graph = canvas.graph;
    const positions = layout.layout(graph, canvas.width, canvas.height);
    const directed = graph.kind === "directed";
    for (const id of Object.keys(graph.nodes).sort()) {
      const node = graph.nodes[id]!;
      const p = positions.get(id) ?? { x: canvas.width / 2, y: canvas.height / 2 };
      scene.nodes.push({
        id,
        x: p.x,
        y: p.y,
        shape: node.shape,
        title: node.title,
        size: node.size,
        layer: node.layer,
        color: node.color,
        selected: selection.has(id),
        pinned: layout.isPinned(id),
        menus: sortedById(node.menus),
        callbacks: sortedById(node.callbacks),
        messages: sortedById(node.messages),
      });
    }
    // stable paint order: lower layers first, then id
    scene.nodes.sort((a, b) => a.layer - b.layer || (a.id < b.id ? -1 : 1));
    for (const id of Object.keys(graph.links).sort()) {
      const link = graph.links[id]!;
      const source = positions.get(link.source);
      const target = positions.get(link.target);
      if (!source || !target) continue;
      scene.edges.push({
        id,
        source: { id: link.source, ...source },
        target: { id: link.target, ...target },
        loop: link.source === link.target,
        directed,
        color: link.color,
        title: link.title,
      });
    }
  } else if (canvas.chart) {
    scene.chart = buildChartScene(canvas.chart);
  }
  return scene;
}

function buildChartScene(chart: Chart): ChartScene {
  const names = Object.keys(chart.datasets).sort();
  const series: ChartSeries[] = names.map((name, i) => ({
    name,
    values: chart.datasets[name]!,
    color: SERIES_COLORS[i % SERIES_COLORS.length]!,
  }));
  const longest = Math.max(0, ...series.map((s) => s.values.length));
  const xDomain = chart.axisX.domain as string[] | undefined;
  const xLabels =
    xDomain ?? Array.from({ length: longest }, (_, i) => String(i + 1));

  let yDomain: [number, number];
  const explicit = chart.axisY.domain as number[] | undefined;
  if (explicit) {
    yDomain = [explicit[0]!, explicit[1]!];
  } else {
    // autoscale: zero-based up to the data maximum
    const values = series.flatMap((s) => s.values);
    const max = values.length > 0 ? Math.max(...values) : 1;
    const min = Math.min(0, ...values);
    yDomain = [min, max > min ? max : min + 1];
  }
  return {
    kind: chart.kind,
    xLabels,
    yDomain,
    xTitle: chart.axisX.title,
    yTitle: chart.axisY.title,
    series,
    showLegend: chart.showLegend,
  };
}

function sortedById<T extends { id: string }>(coll: Record<string, T>): T[] {
  return Object.keys(coll)
    .sort()
    .map((k) => coll[k]!);
}
