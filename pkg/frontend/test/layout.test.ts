import { describe, expect, it } from "vitest";

import { computeLayout, ringPosition } from "../src/layout.js";
import type { ViewModel } from "../src/model.js";

function vmWith(mutable: number, frozen: number, edges: ViewModel["edges"] = []): ViewModel {
  const vertices: ViewModel["vertices"] = [];
  for (let i = 1; i <= mutable; i++) {
    vertices.push({ id: i, label: String(i), frozen: false, fill: "green", clickable: true, deadEnd: false });
  }
  for (let i = mutable + 1; i <= mutable + frozen; i++) {
    vertices.push({ id: i, label: `${i - mutable}'`, frozen: true, fill: "white", clickable: false, deadEnd: false });
  }
  return { vertices, edges, sequence: [], banner: null, complete: false };
}

describe("ringPosition", () => {
  it("starts at twelve o'clock and walks clockwise", () => {
    const top = ringPosition(0, 4, 100, 100, 50);
    expect(top.x).toBeCloseTo(100);
    expect(top.y).toBeCloseTo(50);
    const right = ringPosition(1, 4, 100, 100, 50);
    expect(right.x).toBeCloseTo(150);
    expect(right.y).toBeCloseTo(100);
  });
});

describe("computeLayout", () => {
  const edges = [
    { from: 1, to: 2, forward: 1, backward: 1 },
    { from: 2, to: 3, forward: 1, backward: 1 },
    { from: 1, to: 4, forward: 1, backward: 1 },
  ];

  it("is deterministic", () => {
    const vm = vmWith(3, 3, edges);
    const a = computeLayout(vm, 640, 480);
    const b = computeLayout(vm, 640, 480);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it("pins frozen vertices to the outer ring", () => {
    const vm = vmWith(3, 3, edges);
    const positions = computeLayout(vm, 640, 480);
    const outer = 0.42 * 480;
    for (let i = 0; i < 3; i++) {
      const expected = ringPosition(i, 3, 320, 240, outer);
      const got = positions.get(4 + i)!;
      expect(got.x).toBeCloseTo(expected.x);
      expect(got.y).toBeCloseTo(expected.y);
    }
  });

  it("keeps every vertex inside the viewport margin", () => {
    const vm = vmWith(6, 6, edges);
    const positions = computeLayout(vm, 640, 480);
    const margin = 0.06 * 480;
    expect(positions.size).toBe(12);
    for (const p of positions.values()) {
      expect(p.x).toBeGreaterThanOrEqual(margin - 1e-9);
      expect(p.x).toBeLessThanOrEqual(640 - margin + 1e-9);
      expect(p.y).toBeGreaterThanOrEqual(margin - 1e-9);
      expect(p.y).toBeLessThanOrEqual(480 - margin + 1e-9);
    }
  });

  it("separates mutable vertices", () => {
    const vm = vmWith(4, 0, [
      { from: 1, to: 2, forward: 1, backward: 1 },
      { from: 2, to: 3, forward: 1, backward: 1 },
      { from: 3, to: 4, forward: 1, backward: 1 },
    ]);
    const positions = computeLayout(vm, 640, 480);
    const pts = [1, 2, 3, 4].map((id) => positions.get(id)!);
    for (let i = 0; i < pts.length; i++) {
      for (let j = i + 1; j < pts.length; j++) {
        expect(Math.hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y)).toBeGreaterThan(30);
      }
    }
  });

  it("centres a lone mutable vertex", () => {
    const positions = computeLayout(vmWith(1, 2), 640, 480);
    const p = positions.get(1)!;
    // ring of one degenerates to the top of the inner circle
    expect(p.x).toBeCloseTo(320);
    expect(p.y).toBeCloseTo(240 - 0.22 * 480);
  });
});
