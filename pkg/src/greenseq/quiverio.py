"""Reading and writing quivers, and exporting graphs and histograms.

Text format: first line "n m", then n rows of n+m integers, then optionally
"D: d_1 .. d_n" for valued quivers.  JSON format: an object with "n", "m",
"matrix", and optional "symmetrizer".  Blank lines and lines starting with
"#" are ignored in the text form.
"""
from __future__ import annotations

import hashlib
import json

from greenseq.quiver import ExchangeMatrix, IceQuiver, SignIncoherentError, VertexColor
from greenseq.search import LengthHistogram, SearchDag

__all__ = [
    "QuiverFormatError",
    "dag_dot",
    "dag_edge_list",
    "format_quiver_text",
    "histogram_csv",
    "parse_quiver",
    "parse_quiver_json",
    "parse_quiver_text",
    "quiver_dot",
    "quiver_to_json",
    "sequences_lines",
    "short_key",
]


class QuiverFormatError(ValueError):
    """Malformed quiver input (text or JSON)."""


def parse_quiver_text(text: str) -> ExchangeMatrix:
    lines = [
        line.strip() for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise QuiverFormatError("empty quiver file")
    head = lines[0].split()
    if len(head) != 2:
        raise QuiverFormatError('first line must be "n m"')
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise QuiverFormatError('first line must be "n m" with integers')
    body = lines[1:]
    symmetrizer = None
    if body and body[-1].lower().startswith("d:"):
        try:
            symmetrizer = tuple(int(x) for x in body[-1][2:].split())
        except ValueError:
            raise QuiverFormatError("symmetrizer line must hold integers")
        body = body[:-1]
    if len(body) != n:
        raise QuiverFormatError(f"expected {n} matrix rows, found {len(body)}")
    rows = []
    for lineno, line in enumerate(body, 2):
        try:
            row = [int(x) for x in line.split()]
        except ValueError:
            raise QuiverFormatError(f"line {lineno}: entries must be integers")
        if len(row) != n + m:
            raise QuiverFormatError(
                f"line {lineno}: expected {n + m} entries, found {len(row)}"
            )
        rows.append(row)
    try:
        return ExchangeMatrix(rows, m, symmetrizer)
    except ValueError as err:
        raise QuiverFormatError(str(err))


def parse_quiver_json(payload) -> ExchangeMatrix:
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as err:
            raise QuiverFormatError(f"bad JSON: {err}")
    if not isinstance(payload, dict):
        raise QuiverFormatError("quiver JSON must be an object")
    try:
        n = int(payload["n"])
        m = int(payload["m"])
        matrix = payload["matrix"]
    except (KeyError, TypeError, ValueError):
        raise QuiverFormatError('quiver JSON needs integer "n", "m" and a "matrix"')
    if not isinstance(matrix, list) or len(matrix) != n:
        raise QuiverFormatError(f'"matrix" must be a list of {n} rows')
    symmetrizer = payload.get("symmetrizer")
    if symmetrizer is not None:
        symmetrizer = tuple(int(x) for x in symmetrizer)
    try:
        return ExchangeMatrix([list(map(int, row)) for row in matrix], m, symmetrizer)
    except (TypeError, ValueError) as err:
        raise QuiverFormatError(str(err))


def parse_quiver(text: str) -> ExchangeMatrix:
    """Sniff JSON (leading '{') versus the plain text format."""
    if text.lstrip().startswith("{"):
        return parse_quiver_json(text)
    return parse_quiver_text(text)


def format_quiver_text(matrix: ExchangeMatrix) -> str:
    lines = [f"{matrix.n} {matrix.m}"]
    lines += [" ".join(str(x) for x in row) for row in matrix.entries]
    if matrix.symmetrizer:
        lines.append("D: " + " ".join(str(d) for d in matrix.symmetrizer))
    return "\n".join(lines) + "\n"


def quiver_to_json(matrix: ExchangeMatrix) -> dict:
    out = {
        "n": matrix.n,
        "m": matrix.m,
        "matrix": [list(row) for row in matrix.entries],
    }
    if matrix.symmetrizer:
        out["symmetrizer"] = list(matrix.symmetrizer)
    return out


# -- DOT ---------------------------------------------------------------------


def _fill(matrix: ExchangeMatrix, i: int) -> str:
    if matrix.m != matrix.n:
        return "white"
    try:
        color = matrix.vertex_color(i)
    except SignIncoherentError:
        return "gray"
    return "palegreen" if color is VertexColor.GREEN else "lightcoral"


def quiver_dot(quiver: IceQuiver | ExchangeMatrix) -> str:
    """Graphviz source: mutable vertices as colored circles, frozen as squares.

    Parallel arrows collapse to one edge with a multiplicity label; valued
    pairs are labeled with both weights.
    """
    if isinstance(quiver, ExchangeMatrix):
        quiver = IceQuiver(quiver)
    mat = quiver.matrix
    n, m = mat.n, mat.m
    out = ["digraph quiver {"]
    for i in range(1, n + 1):
        out.append(
            f'  m{i} [shape=circle, style=filled, fillcolor={_fill(mat, i)},'
            f' label="{quiver.labels[i - 1]}"];'
        )
    for j in range(1, m + 1):
        out.append(f'  f{j} [shape=square, label="{quiver.labels[n + j - 1]}"];')

    def edge(src: str, dst: str, forward: int, backward: int):
        if forward == abs(backward) or backward == 0:
            label = "" if forward == 1 else f' [label="{forward}"]'
        else:
            label = f' [label="({forward},{abs(backward)})"]'
        out.append(f"  {src} -> {dst}{label};")

    for i in range(n):
        for j in range(i + 1, n):
            v = mat.entries[i][j]
            if v > 0:
                edge(f"m{i + 1}", f"m{j + 1}", v, mat.entries[j][i])
            elif v < 0:
                edge(f"m{j + 1}", f"m{i + 1}", mat.entries[j][i], v)
        for j in range(n, n + m):
            v = mat.entries[i][j]
            if v > 0:
                edge(f"m{i + 1}", f"f{j - n + 1}", v, -v)
            elif v < 0:
                edge(f"f{j - n + 1}", f"m{i + 1}", -v, v)
    out.append("}")
    return "\n".join(out) + "\n"


def short_key(key: bytes) -> str:
    return hashlib.sha1(key).hexdigest()[:12]


def dag_dot(dag: SearchDag) -> str:
    """The explored graph; node labels carry the key hash and green count."""
    out = ["digraph oriented_exchange_graph {"]
    for key, node in dag.nodes.items():
        shape = "doublecircle" if key in (dag.source_key, dag.sink_key) else "ellipse"
        out.append(
            f'  n{node.index} [shape={shape},'
            f' label="{short_key(key)}\\ngreen={len(node.green)}"];'
        )
    for key, node in dag.nodes.items():
        for vertex, child in node.edges or ():
            out.append(
                f'  n{node.index} -> n{dag.nodes[child].index} [label="{vertex}"];'
            )
    out.append("}")
    return "\n".join(out) + "\n"


def dag_edge_list(dag: SearchDag) -> str:
    """One line per edge: source-hash, vertex label, target-hash."""
    lines = []
    for key, node in dag.nodes.items():
        for vertex, child in node.edges or ():
            lines.append(f"{short_key(key)} {vertex} {short_key(child)}")
    return "\n".join(lines) + ("\n" if lines else "")


def histogram_csv(hist: LengthHistogram) -> str:
    """length,count rows from the shortest found to the explored bound,
    zeros included so gaps stay visible."""
    lines = ["length,count"]
    if hist.min_length is not None:
        for l in range(hist.min_length, hist.explored_to + 1):
            lines.append(f"{l},{hist.counts.get(l, 0)}")
    return "\n".join(lines) + "\n"


def sequences_lines(sequences) -> str:
    lines = [",".join(str(v) for v in seq.vertices) for seq in sequences]
    return "\n".join(lines) + ("\n" if lines else "")
