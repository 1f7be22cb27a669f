"""Canonical keys for ice quivers up to mutable-vertex relabeling.

An isomorphism of ice quivers permutes mutable vertices only: rows and
principal columns move together while frozen columns stay pointwise fixed.
Consequently the frozen row slice of a vertex (its c-vector, when m == n) is
itself label-free data, and for matrices reached from a framed quiver the
c-rows are pairwise distinct, which makes the refinement partition discrete
and keying cheap.  Degenerate partitions (typically m == 0 inputs with
symmetry) fall back to minimizing the serialization over all
partition-respecting permutations; the worst case is factorial but only in
the size of the largest refinement class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from greenseq.quiver import ExchangeMatrix

__all__ = ["CanonicalKey", "apply_vertex_permutation", "canonical_key", "find_isomorphism"]


@dataclass(frozen=True)
class CanonicalKey:
    """data: injective serialization of the canonical form; equal data iff
    isomorphic.  perm: 1-based map from input labels to canonical labels."""

    data: bytes
    perm: tuple[int, ...]


def apply_vertex_permutation(matrix: ExchangeMatrix, perm) -> ExchangeMatrix:
    """Relabel mutable vertices: input vertex i becomes perm[i-1] (1-based).

    Frozen columns do not move.  The symmetrizer is carried along with its
    vertex.
    """
    n, m = matrix.n, matrix.m
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    pos = [p - 1 for p in perm]
    rows = [[0] * (n + m) for _ in range(n)]
    for i in range(n):
        src = matrix.entries[i]
        dst = rows[pos[i]]
        for j in range(n):
            dst[pos[j]] = src[j]
        dst[n:] = src[n:]
    d = matrix.symmetrizer
    if d is not None:
        nd = [0] * n
        for i in range(n):
            nd[pos[i]] = d[i]
        d = tuple(nd)
    return ExchangeMatrix(tuple(tuple(r) for r in rows), m, d)


def _initial_signatures(matrix: ExchangeMatrix):
    n = matrix.n
    ent = matrix.entries
    d = matrix.symmetrizer or (1,) * n
    sigs = []
    for i in range(n):
        row = ent[i]
        col = tuple(ent[j][i] for j in range(n))
        sigs.append((row[n:], (d[i],), tuple(sorted(row[:n])), tuple(sorted(col))))
    return sigs


def _refine(matrix: ExchangeMatrix):
    """Iterated neighborhood refinement; returns per-vertex integer colors."""
    n = matrix.n
    ent = matrix.entries
    sigs = _initial_signatures(matrix)
    order = sorted(set(sigs))
    colors = [order.index(s) for s in sigs]
    while len(set(colors)) < n:
        new_sigs = []
        for i in range(n):
            nbhd = sorted(
                (ent[i][j], ent[j][i], colors[j]) for j in range(n) if j != i
            )
            new_sigs.append((colors[i], tuple(nbhd)))
        order = sorted(set(new_sigs))
        new_colors = [order.index(s) for s in new_sigs]
        if new_colors == colors or len(set(new_colors)) == len(set(colors)):
            colors = new_colors
            break
        colors = new_colors
    return colors


def _serialize(matrix: ExchangeMatrix, pos):
    """Flatten the relabeled matrix row-major, symmetrizer appended."""
    n, m = matrix.n, matrix.m
    ent = matrix.entries
    inv = [0] * n  # canonical position -> original vertex
    for i, p in enumerate(pos):
        inv[p] = i
    flat = []
    for p in range(n):
        src = ent[inv[p]]
        flat.extend(src[q] for q in (inv[t] for t in range(n)))
        flat.extend(src[n:])
    d = matrix.symmetrizer
    if d is not None:
        flat.extend(d[inv[p]] for p in range(n))
    return tuple(flat)


def canonical_key(matrix: ExchangeMatrix) -> CanonicalKey:
    """Least serialization over all partition-respecting relabelings."""
    n, m = matrix.n, matrix.m
    colors = _refine(matrix)
    classes: dict[int, list[int]] = {}
    for i, c in enumerate(colors):
        classes.setdefault(c, []).append(i)
    blocks = [classes[c] for c in sorted(classes)]

    if all(len(b) == 1 for b in blocks):
        pos = [0] * n
        for p, block in enumerate(blocks):
            pos[block[0]] = p
        best = _serialize(matrix, pos)
        best_pos = pos
    else:
        starts = []
        at = 0
        for block in blocks:
            starts.append(at)
            at += len(block)
        best = None
        best_pos = None
        for arrangement in itertools.product(
            *(itertools.permutations(block) for block in blocks)
        ):
            pos = [0] * n
            for start, members in zip(starts, arrangement):
                for off, i in enumerate(members):
                    pos[i] = start + off
            ser = _serialize(matrix, pos)
            if best is None or ser < best:
                best = ser
                best_pos = pos

    head = f"{n} {m};{'v' if matrix.symmetrizer else 's'};"
    data = (head + ",".join(map(str, best))).encode("ascii")
    return CanonicalKey(data, tuple(p + 1 for p in best_pos))


def find_isomorphism(a: ExchangeMatrix, b: ExchangeMatrix):
    """1-based vertex permutation sigma with sigma . a == b, or None."""
    ka = canonical_key(a)
    kb = canonical_key(b)
    if ka.data != kb.data:
        return None
    inv_b = [0] * len(kb.perm)
    for i, p in enumerate(kb.perm):
        inv_b[p - 1] = i + 1
    sigma = tuple(inv_b[ka.perm[i] - 1] for i in range(len(ka.perm)))
    if apply_vertex_permutation(a, sigma) != b:
        raise AssertionError("canonical keys collided on non-isomorphic matrices")
    return sigma
