/**
 * Types mirroring the session service's JSON snapshots, and the pure
 * translation from a snapshot into what the page renders.  Everything here
 * is DOM-free so it can be unit tested in node; the engine stays the single
 * source of truth for mutation math.
 */

export type Color = "green" | "red";

export interface Snapshot {
  matrix: number[][];
  n: number;
  m: number;
  c_matrix: number[][];
  colors: Color[];
  moves: number[];
  sequence: number[];
  status: "in-progress" | "maximal-green-complete";
  terminal_perm?: number[];
}

export interface CatalogItem {
  name: string;
  description: string;
  n: number;
  note?: string;
}

/** Vertex ids follow matrix columns: 1..n mutable, n+1..n+m frozen. */
export interface VertexView {
  id: number;
  label: string;
  frozen: boolean;
  fill: Color | "white";
  clickable: boolean;
  /** green, but no completion found within the hint depth */
  deadEnd: boolean;
}

export interface EdgeView {
  from: number;
  to: number;
  /** arrow multiplicity in the drawn direction */
  forward: number;
  /** weight of the reverse entry; differs from forward only for valued quivers */
  backward: number;
}

export interface ViewModel {
  vertices: VertexView[];
  edges: EdgeView[];
  sequence: number[];
  banner: string | null;
  complete: boolean;
}

export function frozenLabel(id: number, n: number): string {
  return `${id - n}'`;
}

/** Collapse the signed matrix into one drawn edge per adjacent pair. */
export function edgesOf(matrix: number[][], n: number, m: number): EdgeView[] {
  const out: EdgeView[] = [];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      const v = matrix[i][j];
      if (v > 0) {
        out.push({ from: i + 1, to: j + 1, forward: v, backward: Math.abs(matrix[j][i]) });
      } else if (v < 0) {
        out.push({ from: j + 1, to: i + 1, forward: matrix[j][i], backward: -v });
      }
    }
    for (let j = n; j < n + m; j++) {
      const v = matrix[i][j];
      if (v > 0) {
        out.push({ from: i + 1, to: j + 1, forward: v, backward: v });
      } else if (v < 0) {
        out.push({ from: j + 1, to: i + 1, forward: -v, backward: -v });
      }
    }
  }
  return out;
}

export function bannerText(snap: Snapshot): string | null {
  if (snap.status !== "maximal-green-complete") return null;
  return `maximal green sequence of length ${snap.sequence.length}: ${snap.sequence.join(", ")}`;
}

export function toViewModel(
  snap: Snapshot,
  hints?: Map<number, boolean>,
): ViewModel {
  const vertices: VertexView[] = [];
  for (let i = 1; i <= snap.n; i++) {
    const color = snap.colors[i - 1];
    vertices.push({
      id: i,
      label: String(i),
      frozen: false,
      fill: color,
      clickable: color === "green",
      deadEnd: color === "green" && hints?.get(i) === false,
    });
  }
  for (let i = snap.n + 1; i <= snap.n + snap.m; i++) {
    vertices.push({
      id: i,
      label: frozenLabel(i, snap.n),
      frozen: true,
      fill: "white",
      clickable: false,
      deadEnd: false,
    });
  }
  return {
    vertices,
    edges: edgesOf(snap.matrix, snap.n, snap.m),
    sequence: [...snap.sequence],
    banner: bannerText(snap),
    complete: snap.status === "maximal-green-complete",
  };
}
