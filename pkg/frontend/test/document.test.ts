// Document checking against the exported defect corpus: every seeded defect
// is flagged with the same rule name the server reports, every clean
// document passes. This keeps the client-side validator honest without
// hand-maintaining a parallel rule table.

import { describe, expect, it } from "vitest";

import {
  MIME_TYPE,
  RULE_DANGLING,
  RULE_DUPLICATE,
  RULE_ENUM,
  RULE_MISSING,
  RULE_TYPE,
  checkDocument,
  findCallback,
  iterCallbacks,
  parseDocument,
  type FrancyDocument,
} from "../src/document";
import { fixtureJson, fixtureText, s3Document } from "./helpers";

interface DefectFile {
  clean: unknown[];
  defects: { rule: string; document: unknown }[];
}

const corpus = fixtureJson<DefectFile>("defect-vectors.json");

describe("checkDocument against the exported defect corpus", () => {
  it("covers every rule class", () => {
    const rules = new Set(corpus.defects.map((d) => d.rule));
    for (const rule of [RULE_MISSING, RULE_TYPE, RULE_ENUM, RULE_DANGLING, RULE_DUPLICATE]) {
      expect(rules.has(rule), `corpus has no ${rule} defects`).toBe(true);
    }
    expect(corpus.clean.length).toBeGreaterThanOrEqual(10);
    expect(corpus.defects.length).toBeGreaterThanOrEqual(50);
  });

  it.each(corpus.clean.map((doc, i) => [i, doc] as const))(
    "clean document %i passes",
    (_i, doc) => {
      expect(checkDocument(doc)).toEqual([]);
    },
  );

  it.each(corpus.defects.map((d, i) => [i, d.rule, d.document] as const))(
    "defect %i is flagged as %s",
    (_i, rule, doc) => {
      const reported = checkDocument(doc).map((v) => v.rule);
      expect(reported.length).toBeGreaterThan(0);
      expect(reported, `expected ${rule} among ${reported.join(", ")}`).toContain(rule);
    },
  );
});

describe("checkDocument paths and shapes", () => {
  function mutated(edit: (doc: any) => void): unknown {
    const doc = JSON.parse(fixtureText("subgroups-s3.francy.json"));
    edit(doc);
    return doc;
  }

  it("accepts the shipped demo documents", () => {
    expect(checkDocument(s3Document())).toEqual([]);
    expect(checkDocument(fixtureJson("subgroups-s3-redraw.francy.json"))).toEqual([]);
    expect(checkDocument(fixtureJson("modal-callback.francy.json"))).toEqual([]);
  });

  it("rejects non-objects outright", () => {
    for (const value of [null, 3, "x", [], true]) {
      const violations = checkDocument(value);
      expect(violations.length).toBeGreaterThan(0);
      expect(violations[0]!.path).toBe("/");
    }
  });

  it("flags a missing canvas at /canvas", () => {
    const violations = checkDocument(mutated((d) => delete d.canvas));
    expect(violations.some((v) => v.path === "/canvas" && v.rule === RULE_MISSING)).toBe(true);
  });

  it("flags a wrong mime at /mime", () => {
    const violations = checkDocument(mutated((d) => (d.mime = "text/plain")));
    expect(violations.some((v) => v.path === "/mime")).toBe(true);
  });

  it("rejects non-canonical version text", () => {
    for (const version of ["01", "+1", " 1", "2"]) {
      const violations = checkDocument(mutated((d) => (d.version = version)));
      expect(
        violations.some((v) => v.path === "/version"),
        `version ${JSON.stringify(version)} slipped through`,
      ).toBe(true);
    }
    expect(checkDocument(mutated((d) => (d.version = "1")))).toEqual([]);
  });

  it("flags a bad node shape with a slash path into the node", () => {
    const violations = checkDocument(
      mutated((d) => {
        const first = Object.keys(d.canvas.graph.nodes).sort()[0]!;
        d.canvas.graph.nodes[first].shape = "blob";
      }),
    );
    const hit = violations.find((v) => v.rule === RULE_ENUM);
    expect(hit).toBeDefined();
    expect(hit!.path).toMatch(/^\/canvas\/graph\/nodes\/node-\d+\/shape$/);
  });

  it("flags a dangling link endpoint", () => {
    const violations = checkDocument(
      mutated((d) => {
        const first = Object.keys(d.canvas.graph.links).sort()[0]!;
        d.canvas.graph.links[first].target = "node-999";
      }),
    );
    expect(violations.some((v) => v.rule === RULE_DANGLING)).toBe(true);
  });

  it("flags a key/id mismatch as a duplicate-id problem", () => {
    const violations = checkDocument(
      mutated((d) => {
        const nodes = d.canvas.graph.nodes;
        const first = Object.keys(nodes).sort()[0]!;
        nodes["node-777"] = nodes[first]; // key disagrees with the node's id
        delete nodes[first];
      }),
    );
    expect(violations.length).toBeGreaterThan(0);
  });
});

describe("parseDocument", () => {
  it("round-trips the demo document", () => {
    const doc = parseDocument(fixtureText("subgroups-s3.francy.json"));
    expect(doc.mime).toBe(MIME_TYPE);
    expect(Object.keys(doc.canvas.graph!.nodes)).toHaveLength(6);
  });

  it("throws with the violation path on invalid input", () => {
    expect(() => parseDocument("{}")).toThrowError(/\/(version|mime|canvas)/);
    expect(() => parseDocument("not json")).toThrowError();
  });
});

describe("callback lookup", () => {
  it("iterates every callback exactly once", () => {
    const doc = s3Document();
    const ids = [...iterCallbacks(doc.canvas)].map((c) => c.id);
    expect(new Set(ids).size).toBe(ids.length);
    expect(ids.length).toBeGreaterThanOrEqual(6); // one per subgroup vertex
    for (const id of ids) {
      expect(findCallback(doc.canvas, id)?.id).toBe(id);
    }
    expect(findCallback(doc.canvas, "callback-404")).toBeUndefined();
  });

  it("finds callbacks nested in modal-style menus", () => {
    const doc = fixtureJson<FrancyDocument>("modal-callback.francy.json");
    const all = [...iterCallbacks(doc.canvas)];
    const moveBy = all.find((c) => c.funcName === "MoveBy");
    expect(moveBy).toBeDefined();
    expect(findCallback(doc.canvas, moveBy!.id)).toBe(moveBy);
  });
});
