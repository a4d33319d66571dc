// Renderer behavior: frame routing, the banner policy (bad input never
// clobbers a good view), selection, message dismissal, and drag handling.

import { afterEach, describe, expect, it, vi } from "vitest";

import { MIME_TYPE } from "../src/document";
import { drawFrame, fixtureJson, mountRenderer, nodeByLabel, s3Document } from "./helpers";

afterEach(() => {
  document.body.innerHTML = "";
  vi.restoreAllMocks();
});

function bannerOf(root: HTMLElement): HTMLElement {
  return root.querySelector<HTMLElement>(".fr-banner")!;
}

describe("frame routing", () => {
  it("accepts the protocol hello silently", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(
      JSON.stringify({ type: "hello", payload: { version: "1", mime: MIME_TYPE } }),
    );
    expect(bannerOf(root).hidden).toBe(true);
  });

  it("flags a protocol mismatch", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(
      JSON.stringify({ type: "hello", payload: { version: "2", mime: MIME_TYPE } }),
    );
    const banner = bannerOf(root);
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("protocol mismatch");
  });

  it("renders a draw frame", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    expect(root.querySelector(".fr-title")!.textContent).toBe(
      s3Document().canvas.title,
    );
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);
    expect(bannerOf(root).hidden).toBe(true);
  });

  it("shows error frames in the banner without touching the view", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    renderer.applyFrame(
      JSON.stringify({
        type: "error",
        payload: { title: "unknown callback", text: "callback-99", level: "error" },
      }),
    );
    expect(bannerOf(root).textContent).toBe("unknown callback: callback-99");
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);
  });

  it("rejects malformed frames with a banner", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame("}{");
    expect(bannerOf(root).textContent).toContain("bad frame");
    renderer.applyFrame(JSON.stringify({ type: "nonsense", payload: {} }));
    expect(bannerOf(root).textContent).toContain("bad frame");
  });

  it("ignores inbound trigger frames (client-to-server only)", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => undefined);
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    renderer.applyFrame(
      JSON.stringify({ type: "trigger", payload: { callbackId: "callback-0", providedArgs: {} } }),
    );
    expect(warn).toHaveBeenCalled();
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);
    expect(bannerOf(root).hidden).toBe(true);
  });
});

describe("invalid documents", () => {
  it("keeps the previous view and explains the rejection", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));

    const bad = s3Document() as unknown as { canvas: { graph: { nodes: Record<string, any> } } };
    const firstId = Object.keys(bad.canvas.graph.nodes).sort()[0]!;
    bad.canvas.graph.nodes[firstId].shape = "blob";
    renderer.applyFrame(drawFrame(bad));

    const banner = bannerOf(root);
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("invalid document");
    expect(banner.textContent).toContain("bad-enum");
    // previous view retained, selection-safe
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(6);
    expect(renderer.document!.canvas.graph!.nodes[firstId]!.shape).toBe("circle");
  });

  it("a later valid draw clears the banner", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame({ nope: true }));
    expect(bannerOf(root).hidden).toBe(false);
    renderer.applyFrame(drawFrame(s3Document()));
    expect(bannerOf(root).hidden).toBe(true);
  });
});

describe("selection", () => {
  it("click selects exactly that node; shift-click toggles it off", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    const node = nodeByLabel(root, "3");
    const id = node.getAttribute("data-id")!;

    node.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect([...renderer.selectedIds]).toEqual([id]);
    expect(node.classList.contains("selected")).toBe(true);

    // a plain re-click keeps the node as the (sole) selection
    node.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect([...renderer.selectedIds]).toEqual([id]);

    // shift-click toggles membership, here down to empty
    node.dispatchEvent(new MouseEvent("click", { bubbles: true, shiftKey: true }));
    expect(renderer.selectedIds.size).toBe(0);
    expect(node.classList.contains("selected")).toBe(false);
  });

  it("shift-click extends the selection", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    nodeByLabel(root, "2").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    nodeByLabel(root, "4").dispatchEvent(
      new MouseEvent("click", { bubbles: true, shiftKey: true }),
    );
    expect(renderer.selectedIds.size).toBe(2);

    // plain click elsewhere collapses to that node
    nodeByLabel(root, "1").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(renderer.selectedIds.size).toBe(1);
  });

  it("background click clears the selection", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    nodeByLabel(root, "2").dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(renderer.selectedIds.size).toBe(1);
    root
      .querySelector(".fr-backdrop")!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(renderer.selectedIds.size).toBe(0);
  });

  it("selection survives a redraw but drops vanished nodes", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    const node = nodeByLabel(root, "5");
    const id = node.getAttribute("data-id")!;
    renderer.selectNode(id, false);

    renderer.applyFrame(drawFrame(fixtureJson("subgroups-s3-redraw.francy.json")));
    expect([...renderer.selectedIds]).toEqual([id]);
    expect(
      root.querySelector(`g.fr-node[data-id="${id}"]`)!.classList.contains("selected"),
    ).toBe(true);

    // a document without that node clears it from the selection
    const smaller = s3Document();
    const nodes = smaller.canvas.graph!.nodes;
    delete nodes[id];
    for (const [lid, link] of Object.entries(smaller.canvas.graph!.links)) {
      if (link.source === id || link.target === id) {
        delete smaller.canvas.graph!.links[lid];
      }
    }
    renderer.applyFrame(drawFrame(smaller));
    expect(renderer.selectedIds.size).toBe(0);
  });
});

describe("messages", () => {
  it("renders the panel and dismisses entries locally", () => {
    const { renderer, root } = mountRenderer();
    const redraw = fixtureJson<ReturnType<typeof s3Document>>("subgroups-s3-redraw.francy.json");
    renderer.applyFrame(drawFrame(redraw));
    const entries = root.querySelectorAll(".fr-message");
    expect(entries.length).toBeGreaterThanOrEqual(2);

    const first = entries[0]!;
    const id = first.getAttribute("data-id")!;
    first.querySelector<HTMLButtonElement>(".fr-dismiss")!.click();
    expect(root.querySelector(`.fr-message[data-id="${id}"]`)).toBeNull();

    // dismissal is sticky across a redraw of the same document
    renderer.applyFrame(drawFrame(redraw));
    expect(root.querySelector(`.fr-message[data-id="${id}"]`)).toBeNull();
  });
});

describe("node dragging", () => {
  it("moveNode pins the node and re-routes its edges", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    const node = nodeByLabel(root, "6");
    const id = node.getAttribute("data-id")!;

    renderer.moveNode(id, 321, 123);
    expect(renderer.nodePosition(id)).toEqual({ x: 321, y: 123 });
    expect(
      root.querySelector(`g.fr-node[data-id="${id}"]`)!.getAttribute("transform"),
    ).toBe("translate(321,123)");

    // the dragged position survives a full redraw
    renderer.applyFrame(drawFrame(s3Document()));
    expect(renderer.nodePosition(id)).toEqual({ x: 321, y: 123 });
    expect(
      root.querySelector(`g.fr-node[data-id="${id}"]`)!.getAttribute("transform"),
    ).toBe("translate(321,123)");
  });
});

describe("other canvas contents", () => {
  it("renders an empty canvas as a title bar over an empty viewport", () => {
    const { renderer, root } = mountRenderer();
    renderer.applyFrame(
      drawFrame({
        version: "1",
        mime: MIME_TYPE,
        canvas: {
          id: "canvas-0",
          title: "nothing yet",
          width: 800,
          height: 600,
          zoomToFit: true,
          menus: {},
          messages: {},
        },
      }),
    );
    expect(bannerOf(root).hidden).toBe(true);
    expect(root.querySelector(".fr-title")!.textContent).toBe("nothing yet");
    expect(root.querySelectorAll("g.fr-node")).toHaveLength(0);
    expect(root.querySelectorAll("path.fr-edge")).toHaveLength(0);
    expect(renderer.currentScene!.kind).toBe("empty");
  });

  it("renders a one-series bar chart as one bar per value", () => {
    const { root, renderer } = mountRenderer();
    renderer.applyFrame(
      drawFrame({
        version: "1",
        mime: MIME_TYPE,
        canvas: {
          id: "canvas-0",
          title: "sizes",
          width: 800,
          height: 600,
          zoomToFit: true,
          menus: {},
          messages: {},
          chart: {
            kind: "bar",
            axisX: { title: "group" },
            axisY: { title: "subgroups" },
            datasets: { counts: [6, 30, 156, 1455] },
            showLegend: true,
          },
        },
      }),
    );
    expect(bannerOf(root).hidden).toBe(true);
    expect(root.querySelectorAll("rect.fr-bar")).toHaveLength(4);
    expect(renderer.currentScene!.chart!.yDomain).toEqual([0, 1455]);
    expect(root.querySelector(".fr-legend-label")!.textContent).toBe("counts");
  });
});

describe("trigger guard", () => {
  it("never emits a trigger for a callback missing from the document", () => {
    const { renderer, root, sent } = mountRenderer();
    renderer.applyFrame(drawFrame(s3Document()));
    renderer.sendTrigger(
      {
        id: "callback-404",
        funcName: "Ghost",
        trigger: "click",
        knownArgs: [],
        requiredArgs: {},
      },
      {},
    );
    expect(sent).toEqual([]);
    expect(bannerOf(root).textContent).toContain("stale callback");
  });
});
