import { describe, expect, it } from "vitest";

import type { Point } from "../src/layout.js";
import type { ViewModel } from "../src/model.js";
import { svgMarkup, VERTEX_RADIUS } from "../src/render.js";

const positions = new Map<number, Point>([
  [1, { x: 100, y: 100 }],
  [2, { x: 300, y: 100 }],
  [3, { x: 200, y: 300 }],
]);

const baseVm: ViewModel = {
  vertices: [
    { id: 1, label: "1", frozen: false, fill: "green", clickable: true, deadEnd: false },
    { id: 2, label: "2", frozen: false, fill: "red", clickable: false, deadEnd: false },
    { id: 3, label: "1'", frozen: true, fill: "white", clickable: false, deadEnd: false },
  ],
  edges: [
    { from: 1, to: 2, forward: 1, backward: 1 },
    { from: 1, to: 3, forward: 1, backward: 1 },
  ],
  sequence: [],
  banner: null,
  complete: false,
};

describe("svgMarkup", () => {
  it("emits a complete svg document with an arrowhead marker", () => {
    const svg = svgMarkup(baseVm, positions, 640, 480);
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
    expect(svg).toContain('viewBox="0 0 640 480"');
    expect(svg).toContain('<marker id="arrow"');
    expect(svg.match(/marker-end="url\(#arrow\)"/g)).toHaveLength(2);
  });

  it("tags mutable vertices with data-vertex and clickability", () => {
    const svg = svgMarkup(baseVm, positions, 640, 480);
    expect(svg).toContain('data-vertex="1" class="vertex clickable" fill="#72d287"');
    expect(svg).toContain('data-vertex="2" class="vertex" fill="#ef8f8f"');
  });

  it("draws frozen vertices as white squares", () => {
    const svg = svgMarkup(baseVm, positions, 640, 480);
    const rects = svg.match(/<rect [^>]*data-vertex="3"[^>]*\/>/g);
    expect(rects).toHaveLength(1);
    expect(rects![0]).toContain('fill="#ffffff"');
    expect(svg).toContain(">1'</text>");
  });

  it("dashes dead-end vertices via a class hook", () => {
    const vm: ViewModel = {
      ...baseVm,
      vertices: baseVm.vertices.map((v) =>
        v.id === 1 ? { ...v, deadEnd: true } : v,
      ),
    };
    const svg = svgMarkup(vm, positions, 640, 480);
    expect(svg).toContain('class="vertex clickable dead-end"');
  });

  it("trims edges back from the vertex outline", () => {
    const svg = svgMarkup(baseVm, positions, 640, 480);
    // the 1 -> 2 edge is horizontal at y=100; x must start beyond the radius
    const line = svg.match(/<line [^>]*y1="100\.0"[^>]*\/>/);
    expect(line).not.toBeNull();
    const x1 = Number(/x1="([\d.]+)"/.exec(line![0])![1]);
    const x2 = Number(/x2="([\d.]+)"/.exec(line![0])![1]);
    expect(x1).toBeGreaterThanOrEqual(100 + VERTEX_RADIUS);
    expect(x2).toBeLessThanOrEqual(300 - VERTEX_RADIUS);
  });

  it("labels multiple arrows with their count", () => {
    const vm: ViewModel = {
      ...baseVm,
      edges: [{ from: 1, to: 2, forward: 2, backward: 2 }],
    };
    const svg = svgMarkup(vm, positions, 640, 480);
    expect(svg).toContain(">2</text>");
  });

  it("labels asymmetric weights as a pair", () => {
    const vm: ViewModel = {
      ...baseVm,
      edges: [{ from: 1, to: 2, forward: 1, backward: 2 }],
    };
    const svg = svgMarkup(vm, positions, 640, 480);
    expect(svg).toContain(">(1,2)</text>");
  });

  it("leaves single plain arrows unlabelled", () => {
    const svg = svgMarkup(baseVm, positions, 640, 480);
    expect(svg).not.toContain("edge-label");
  });
});
