/**
 * SVG markup for a laid-out quiver.  Pure string building, so rendering is
 * testable without a DOM; main.ts injects the result and wires one delegated
 * click handler on [data-vertex] elements.
 */

import type { Point } from "./layout.js";
import type { EdgeView, VertexView, ViewModel } from "./model.js";

export const VERTEX_RADIUS = 19;

const FILLS = { green: "#72d287", red: "#ef8f8f", white: "#ffffff" } as const;

function edgeLabel(edge: EdgeView): string {
  if (edge.backward !== edge.forward) return `(${edge.forward},${edge.backward})`;
  return edge.forward > 1 ? String(edge.forward) : "";
}

function lineFor(edge: EdgeView, a: Point, b: Point): string {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const dist = Math.hypot(dx, dy) || 1e-6;
  // trim both ends so the arrowhead meets the node outline
  const pad = VERTEX_RADIUS + 3;
  const x1 = a.x + (pad * dx) / dist;
  const y1 = a.y + (pad * dy) / dist;
  const x2 = b.x - (pad * dx) / dist;
  const y2 = b.y - (pad * dy) / dist;
  const parts = [
    `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}"` +
      ` y2="${y2.toFixed(1)}" stroke="#555" stroke-width="1.6"` +
      ' marker-end="url(#arrow)"/>',
  ];
  const label = edgeLabel(edge);
  if (label) {
    const mx = (a.x + b.x) / 2 + (8 * -dy) / dist;
    const my = (a.y + b.y) / 2 + (8 * dx) / dist;
    parts.push(
      `<text x="${mx.toFixed(1)}" y="${my.toFixed(1)}" class="edge-label">` +
        `${label}</text>`,
    );
  }
  return parts.join("");
}

function vertexMarkup(v: VertexView, p: Point): string {
  const cls = ["vertex"];
  if (v.clickable) cls.push("clickable");
  if (v.deadEnd) cls.push("dead-end");
  const common =
    `data-vertex="${v.id}" class="${cls.join(" ")}" fill="${FILLS[v.fill]}"` +
    ' stroke="#333" stroke-width="1.5"';
  const shape = v.frozen
    ? `<rect x="${(p.x - VERTEX_RADIUS).toFixed(1)}" y="${(p.y - VERTEX_RADIUS).toFixed(1)}"` +
      ` width="${2 * VERTEX_RADIUS}" height="${2 * VERTEX_RADIUS}" ${common}/>`
    : `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${VERTEX_RADIUS}" ${common}/>`;
  const label =
    `<text x="${p.x.toFixed(1)}" y="${p.y.toFixed(1)}" class="vertex-label">` +
    `${v.label}</text>`;
  return shape + label;
}

export function svgMarkup(
  vm: ViewModel,
  positions: Map<number, Point>,
  width: number,
  height: number,
): string {
  const pieces: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}"` +
      ` width="${width}" height="${height}">`,
    "<defs>" +
      '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5"' +
      ' markerWidth="7" markerHeight="7" orient="auto-start-reverse">' +
      '<path d="M 0 0 L 10 5 L 0 10 z" fill="#555"/></marker>' +
      "</defs>",
  ];
  for (const edge of vm.edges) {
    const a = positions.get(edge.from);
    const b = positions.get(edge.to);
    if (a && b) pieces.push(lineFor(edge, a, b));
  }
  for (const v of vm.vertices) {
    const p = positions.get(v.id);
    if (p) pieces.push(vertexMarkup(v, p));
  }
  pieces.push("</svg>");
  return pieces.join("\n");
}
