// SVG drawing of a Scene. Full rebuild per draw (the protocol's update
// model), vector elements throughout so zoom stays crisp. Interaction
// wiring is delegated through SceneHooks so the drawing stays testable
// without a pointer.

import { drag } from "d3-drag";
import { scaleBand, scaleLinear, scalePoint } from "d3-scale";
import { select, type Selection } from "d3-selection";
import {
  symbol,
  symbolCircle,
  symbolDiamond,
  symbolSquare,
  symbolStar,
  symbolTriangle,
  symbolWye,
  type SymbolType,
} from "d3-shape";

import type { Shape } from "./document";
import type { ChartScene, Scene, SceneEdge, SceneNode } from "./scene";

export interface SceneHooks {
  onNodeClick(id: string, additive: boolean): void;
  onNodeContextMenu(id: string, clientX: number, clientY: number): void;
  onNodeDragged(id: string, x: number, y: number): void;
  onBackgroundClick(): void;
}

const SYMBOLS: Record<Shape, SymbolType> = {
  circle: symbolCircle,
  square: symbolSquare,
  diamond: symbolDiamond,
  triangle: symbolTriangle,
  star: symbolStar,
  wye: symbolWye,
};

export function shapePath(shape: Shape, size: number): string {
  return symbol(SYMBOLS[shape], Math.PI * size * size)() ?? "";
}

export function edgePath(edge: SceneEdge, nodeSize: (id: string) => number): string {
  const { source, target } = edge;
  if (edge.loop) {
    const r = nodeSize(source.id);
    const loop = Math.max(8, r * 0.9);
    // an arc leaving the right edge and re-entering at the top
    return (
      `M ${source.x + r} ${source.y} ` +
      `A ${loop} ${loop} 0 1 0 ${source.x} ${source.y - r}`
    );
  }
  const dx = target.x - source.x;
  const dy = target.y - source.y;
  const dist = Math.hypot(dx, dy) || 1;
  // stop at the target boundary so arrowheads stay visible
  const trim = edge.directed ? nodeSize(target.id) + 4 : 0;
  const tx = target.x - (dx / dist) * trim;
  const ty = target.y - (dy / dist) * trim;
  return `M ${source.x} ${source.y} L ${tx} ${ty}`;
}

export function drawScene(svgEl: SVGSVGElement, scene: Scene, hooks: SceneHooks): void {
  const svg = select(svgEl);
  svg.attr("viewBox", `0 0 ${scene.width} ${scene.height}`);
  svg.selectAll("*").remove();

  const defs = svg.append("defs");
  defs
    .append("marker")
    .attr("id", "fr-arrow")
    .attr("viewBox", "0 0 8 8")
    .attr("refX", 7)
    .attr("refY", 4)
    .attr("markerWidth", 7)
    .attr("markerHeight", 7)
    .attr("orient", "auto")
    .append("path")
    .attr("d", "M 0 0 L 8 4 L 0 8 z")
    .attr("class", "fr-arrowhead");

  svg
    .append("rect")
    .attr("class", "fr-backdrop")
    .attr("width", scene.width)
    .attr("height", scene.height)
    .attr("fill", "transparent")
    .on("click", () => hooks.onBackgroundClick());

  const zoomLayer = svg.append("g").attr("class", "fr-zoom");
  if (scene.kind === "chart" && scene.chart) {
    drawChart(zoomLayer, scene.chart, scene.width, scene.height);
    return;
  }
  if (scene.kind !== "graph") return;

  const sizes = new Map(scene.nodes.map((n) => [n.id, n.size]));
  const sizeOf = (id: string) => sizes.get(id) ?? 10;

  zoomLayer
    .selectAll<SVGPathElement, SceneEdge>("path.fr-edge")
    .data(scene.edges, (e) => e.id)
    .join("path")
    .attr("class", (e) => (e.loop ? "fr-edge fr-loop" : "fr-edge"))
    .attr("data-id", (e) => e.id)
    .attr("d", (e) => edgePath(e, sizeOf))
    .attr("fill", "none")
    .attr("stroke", (e) => e.color ?? "#777")
    .attr("marker-end", (e) => (e.directed ? "url(#fr-arrow)" : null));

  const nodeG = zoomLayer
    .selectAll<SVGGElement, SceneNode>("g.fr-node")
    .data(scene.nodes, (n) => n.id)
    .join("g")
    .attr("class", (n) => (n.selected ? "fr-node selected" : "fr-node"))
    .attr("data-id", (n) => n.id)
    .attr("data-shape", (n) => n.shape)
    .attr("transform", (n) => `translate(${n.x},${n.y})`);

  nodeG
    .append("path")
    .attr("class", "fr-node-shape")
    .attr("d", (n) => shapePath(n.shape, n.size))
    .attr("fill", (n) => n.color ?? "#4f81bd")
    .attr("stroke", (n) => (n.selected ? "#d86b00" : "#2b4a6f"));

  nodeG
    .append("text")
    .attr("class", "fr-node-label")
    .attr("text-anchor", "middle")
    .attr("y", (n) => n.size + 14)
    .text((n) => n.title);

  nodeG
    .on("click", function (event: MouseEvent, n) {
      event.stopPropagation();
      hooks.onNodeClick(n.id, event.shiftKey);
    })
    .on("contextmenu", function (event: MouseEvent, n) {
      event.preventDefault();
      event.stopPropagation();
      hooks.onNodeContextMenu(n.id, event.clientX, event.clientY);
    });

  nodeG.call(
    drag<SVGGElement, SceneNode>()
      .on("drag", function (event, n) {
        hooks.onNodeDragged(n.id, event.x, event.y);
      }),
  );
}

/** Move one node's group and re-route its edges without a relayout. */
export function updatePositions(svgEl: SVGSVGElement, scene: Scene): void {
  const svg = select(svgEl);
  const sizes = new Map(scene.nodes.map((n) => [n.id, n.size]));
  const sizeOf = (id: string) => sizes.get(id) ?? 10;
  svg
    .selectAll<SVGGElement, unknown>("g.fr-node")
    .data(scene.nodes, function (n) {
      return n ? (n as SceneNode).id : (this as SVGGElement).getAttribute("data-id")!;
    })
    .attr("transform", (n) => `translate(${(n as SceneNode).x},${(n as SceneNode).y})`);
  svg
    .selectAll<SVGPathElement, unknown>("path.fr-edge")
    .data(scene.edges, function (e) {
      return e ? (e as SceneEdge).id : (this as SVGPathElement).getAttribute("data-id")!;
    })
    .attr("d", (e) => edgePath(e as SceneEdge, sizeOf));
}

function drawChart(
  g: Selection<SVGGElement, unknown, null, undefined>,
  chart: ChartScene,
  width: number,
  height: number,
): void {
  const margin = { top: 30, right: 24, bottom: 46, left: 54 };
  const innerW = Math.max(10, width - margin.left - margin.right);
  const innerH = Math.max(10, height - margin.top - margin.bottom);
  const plot = g
    .append("g")
    .attr("class", "fr-chart")
    .attr("transform", `translate(${margin.left},${margin.top})`);

  const y = scaleLinear().domain(chart.yDomain).range([innerH, 0]);
  const bandX = scaleBand<string>().domain(chart.xLabels).range([0, innerW]).padding(0.2);
  const pointX = scalePoint<string>().domain(chart.xLabels).range([0, innerW]).padding(0.5);

  // axes: a line plus tick labels, drawn by hand to stay layout-free
  const axes = plot.append("g").attr("class", "fr-axes");
  axes
    .append("line")
    .attr("class", "fr-axis-y")
    .attr("x1", 0).attr("y1", 0).attr("x2", 0).attr("y2", innerH);
  axes
    .append("line")
    .attr("class", "fr-axis-x")
    .attr("x1", 0).attr("y1", innerH).attr("x2", innerW).attr("y2", innerH);
  for (const tick of y.ticks(5)) {
    axes
      .append("text")
      .attr("class", "fr-tick fr-tick-y")
      .attr("x", -8)
      .attr("y", y(tick) + 4)
      .attr("text-anchor", "end")
      .text(String(tick));
  }
  chart.xLabels.forEach((label) => {
    axes
      .append("text")
      .attr("class", "fr-tick fr-tick-x")
      .attr("x", (bandX(label) ?? 0) + bandX.bandwidth() / 2)
      .attr("y", innerH + 18)
      .attr("text-anchor", "middle")
      .text(label);
  });
  if (chart.xTitle) {
    axes
      .append("text")
      .attr("class", "fr-axis-title")
      .attr("x", innerW / 2)
      .attr("y", innerH + 38)
      .attr("text-anchor", "middle")
      .text(chart.xTitle);
  }
  if (chart.yTitle) {
    axes
      .append("text")
      .attr("class", "fr-axis-title")
      .attr("transform", `translate(-40,${innerH / 2}) rotate(-90)`)
      .attr("text-anchor", "middle")
      .text(chart.yTitle);
  }

  chart.series.forEach((series, si) => {
    const sg = plot.append("g").attr("class", "fr-series").attr("data-name", series.name);
    if (chart.kind === "bar") {
      const band = bandX.bandwidth() / chart.series.length;
      series.values.forEach((value, i) => {
        const label = chart.xLabels[i] ?? String(i + 1);
        sg.append("rect")
          .attr("class", "fr-bar")
          .attr("x", (bandX(label) ?? 0) + band * si)
          .attr("y", Math.min(y(value), y(0)))
          .attr("width", Math.max(1, band - 2))
          .attr("height", Math.abs(y(0) - y(value)))
          .attr("fill", series.color);
      });
    } else if (chart.kind === "line") {
      const points = series.values
        .map((value, i) => {
          const label = chart.xLabels[i] ?? String(i + 1);
          return `${pointX(label) ?? 0},${y(value)}`;
        })
        .join(" ");
      sg.append("polyline")
        .attr("class", "fr-line")
        .attr("points", points)
        .attr("fill", "none")
        .attr("stroke", series.color);
    } else {
      series.values.forEach((value, i) => {
        const label = chart.xLabels[i] ?? String(i + 1);
        sg.append("circle")
          .attr("class", "fr-dot")
          .attr("cx", pointX(label) ?? 0)
          .attr("cy", y(value))
          .attr("r", 3.5)
          .attr("fill", series.color);
      });
    }
  });

  if (chart.showLegend && chart.series.length > 0) {
    const legend = plot.append("g").attr("class", "fr-legend");
    chart.series.forEach((series, i) => {
      const row = legend
        .append("g")
        .attr("transform", `translate(${innerW - 110},${i * 18})`);
      row.append("rect").attr("width", 10).attr("height", 10).attr("fill", series.color);
      row
        .append("text")
        .attr("x", 14)
        .attr("y", 9)
        .attr("class", "fr-legend-label")
        .text(series.name);
    });
  }
}
