/**
 * Deterministic force layout.  Frozen vertices are pinned to an outer ring
 * and never move; mutable vertices start on an inner ring and relax under
 * spring forces along arrows, pairwise repulsion, and a weak centering pull.
 * There is no randomness, so a given view model always lays out the same
 * way.  Purely cosmetic; positions are never persisted.
 */

import type { ViewModel } from "./model.js";

export interface Point {
  x: number;
  y: number;
}

export function ringPosition(
  index: number,
  count: number,
  cx: number,
  cy: number,
  radius: number,
): Point {
  const angle = -Math.PI / 2 + (2 * Math.PI * index) / Math.max(count, 1);
  return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}

export function computeLayout(
  vm: ViewModel,
  width: number,
  height: number,
  iterations = 250,
): Map<number, Point> {
  const cx = width / 2;
  const cy = height / 2;
  const span = Math.min(width, height);
  const outer = 0.42 * span;
  const inner = 0.22 * span;
  const margin = 0.06 * span;

  const positions = new Map<number, Point>();
  const frozen = vm.vertices.filter((v) => v.frozen);
  const mutable = vm.vertices.filter((v) => !v.frozen);
  frozen.forEach((v, i) => {
    positions.set(v.id, ringPosition(i, frozen.length, cx, cy, outer));
  });
  mutable.forEach((v, i) => {
    positions.set(v.id, ringPosition(i, mutable.length, cx, cy, inner));
  });
  if (mutable.length <= 1) return positions;

  const ideal = inner * 1.1;
  const springK = 0.02;
  const repelK = 0.6 * ideal * ideal;
  const centerK = 0.005;
  const damping = 0.85;
  const movable = new Set(mutable.map((v) => v.id));

  for (let step = 0; step < iterations; step++) {
    const force = new Map<number, Point>();
    for (const id of movable) force.set(id, { x: 0, y: 0 });

    for (const edge of vm.edges) {
      const a = positions.get(edge.from)!;
      const b = positions.get(edge.to)!;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const dist = Math.hypot(dx, dy) || 1e-6;
      const pull = springK * (dist - ideal);
      const fx = (pull * dx) / dist;
      const fy = (pull * dy) / dist;
      const fa = force.get(edge.from);
      if (fa) {
        fa.x += fx;
        fa.y += fy;
      }
      const fb = force.get(edge.to);
      if (fb) {
        fb.x -= fx;
        fb.y -= fy;
      }
    }

    for (let i = 0; i < mutable.length; i++) {
      for (let j = i + 1; j < mutable.length; j++) {
        const a = positions.get(mutable[i].id)!;
        const b = positions.get(mutable[j].id)!;
        const dx = b.x - a.x;
        const dy = b.y - a.y;
        const d2 = dx * dx + dy * dy || 1e-6;
        const dist = Math.sqrt(d2);
        const push = repelK / d2;
        const fx = (push * dx) / dist;
        const fy = (push * dy) / dist;
        const fa = force.get(mutable[i].id)!;
        const fb = force.get(mutable[j].id)!;
        fa.x -= fx;
        fa.y -= fy;
        fb.x += fx;
        fb.y += fy;
      }
    }

    for (const id of movable) {
      const p = positions.get(id)!;
      const f = force.get(id)!;
      f.x += centerK * (cx - p.x);
      f.y += centerK * (cy - p.y);
      const nx = p.x + damping * f.x;
      const ny = p.y + damping * f.y;
      positions.set(id, {
        x: Math.min(width - margin, Math.max(margin, nx)),
        y: Math.min(height - margin, Math.max(margin, ny)),
      });
    }
  }
  return positions;
}
