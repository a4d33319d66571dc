// Scene construction: the view-model must be a faithful projection of the
// document — same node count, same link count, same label multiset — plus
// chart series handling and autoscaling.

import { describe, expect, it } from "vitest";

import { checkDocument, type Chart, type FrancyDocument } from "../src/document";
import { LayoutEngine } from "../src/layout";
import { buildScene } from "../src/scene";
import { s3Document } from "./helpers";

function scene(doc: FrancyDocument, selection: Set<string> = new Set()) {
  return buildScene(doc, new LayoutEngine(), selection);
}

describe("graph scenes", () => {
  it("carries every node and link of the document", () => {
    const doc = s3Document();
    const graph = doc.canvas.graph!;
    const s = scene(doc);
    expect(s.kind).toBe("graph");
    expect(s.nodes).toHaveLength(Object.keys(graph.nodes).length);
    expect(s.edges).toHaveLength(Object.keys(graph.links).length);

    const docTitles = Object.values(graph.nodes).map((n) => n.title).sort();
    const sceneTitles = s.nodes.map((n) => n.title).sort();
    expect(sceneTitles).toEqual(docTitles);

    const docPairs = Object.values(graph.links)
      .map((l) => `${l.source}>${l.target}`)
      .sort();
    const scenePairs = s.edges.map((e) => `${e.source.id}>${e.target.id}`).sort();
    expect(scenePairs).toEqual(docPairs);
  });

  it("marks loops and direction", () => {
    const s = scene(s3Document());
    expect(s.edges.every((e) => e.directed)).toBe(true);
    const loops = s.edges.filter((e) => e.loop);
    expect(loops).toHaveLength(6);
    for (const loop of loops) {
      expect(loop.source.id).toBe(loop.target.id);
    }
  });

  it("applies the selection set", () => {
    const doc = s3Document();
    const anyId = Object.keys(doc.canvas.graph!.nodes).sort()[0]!;
    const s = scene(doc, new Set([anyId]));
    const flagged = s.nodes.filter((n) => n.selected);
    expect(flagged.map((n) => n.id)).toEqual([anyId]);
  });

  it("sorts messages and menus by id for stable rendering", () => {
    const s = scene(s3Document());
    const ids = s.messages.map((m) => m.id);
    expect(ids).toEqual([...ids].sort());
    for (const node of s.nodes) {
      const menuIds = node.menus.map((m) => m.id);
      expect(menuIds).toEqual([...menuIds].sort());
    }
  });
});

describe("chart scenes", () => {
  function chartDocument(chart: Chart): FrancyDocument {
    const doc: FrancyDocument = {
      version: "1",
      mime: "application/vnd.francy+json",
      canvas: {
        id: "canvas-0",
        title: "chart test",
        width: 800,
        height: 600,
        zoomToFit: true,
        menus: {},
        messages: {},
        chart,
      },
    };
    // the test fixture itself must be a valid document
    expect(checkDocument(doc)).toEqual([]);
    return doc;
  }

  it("builds one series per dataset, sorted by name", () => {
    const doc = chartDocument({
      kind: "bar",
      axisX: { title: "n" },
      axisY: { title: "count" },
      datasets: { beta: [1, 2, 3], alpha: [4, 5, 6] },
      showLegend: true,
    });
    const s = scene(doc);
    expect(s.kind).toBe("chart");
    expect(s.chart!.series.map((x) => x.name)).toEqual(["alpha", "beta"]);
    expect(s.chart!.series.map((x) => x.values)).toEqual([
      [4, 5, 6],
      [1, 2, 3],
    ]);
    expect(new Set(s.chart!.series.map((x) => x.color)).size).toBe(2);
  });

  it("autoscales the y domain from zero to the data maximum", () => {
    const doc = chartDocument({
      kind: "line",
      axisX: { title: "" },
      axisY: { title: "" },
      datasets: { a: [2, 9, 4] },
      showLegend: false,
    });
    expect(scene(doc).chart!.yDomain).toEqual([0, 9]);
  });

  it("extends the autoscaled domain below zero when data dips", () => {
    const doc = chartDocument({
      kind: "scatter",
      axisX: { title: "" },
      axisY: { title: "" },
      datasets: { a: [-3, 5] },
      showLegend: false,
    });
    expect(scene(doc).chart!.yDomain).toEqual([-3, 5]);
  });

  it("respects an explicit y domain and x labels", () => {
    const doc = chartDocument({
      kind: "bar",
      axisX: { title: "case", domain: ["low", "mid", "high"] },
      axisY: { title: "score", domain: [0, 100] },
      datasets: { a: [10, 50, 90] },
      showLegend: false,
    });
    const c = scene(doc).chart!;
    expect(c.yDomain).toEqual([0, 100]);
    expect(c.xLabels).toEqual(["low", "mid", "high"]);
  });

  it("numbers x labels 1..n when no domain is given", () => {
    const doc = chartDocument({
      kind: "line",
      axisX: { title: "" },
      axisY: { title: "" },
      datasets: { a: [7, 7, 7, 7] },
      showLegend: false,
    });
    expect(scene(doc).chart!.xLabels).toEqual(["1", "2", "3", "4"]);
  });
});
