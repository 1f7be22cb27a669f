"""Exchange matrices, ice quivers, mutation, framing, and c-vector coloring.

An exchange matrix is an n x (n+m) integer matrix whose left n x n principal
part is skew-symmetrizable: there are positive integers d_1..d_n with
d_i * b_ij == -d_j * b_ji.  The first n indices are mutable vertices, the
remaining m columns record arrows to frozen vertices.  Entries are plain
Python ints, so there is no overflow to guard against; values grow without
bound in wild examples and stay exact.

Vertex labels in the public API are 1-based (vertex i, frozen vertex i' at
column n+i), matching the usual notation; internal indexing is 0-based.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

__all__ = [
    "ExchangeMatrix",
    "IceQuiver",
    "SignIncoherentError",
    "VertexColor",
    "coframed",
    "framed",
    "opposite",
]

Rows = tuple[tuple[int, ...], ...]


class SignIncoherentError(Exception):
    """A c-vector mixed signs (or vanished), so green/red is undefined.

    Sign coherence is a theorem for skew-symmetric principal parts and a
    conjecture for skew-symmetrizable ones; hitting this error on a valued
    input is a mathematically meaningful event and must abort the enclosing
    search with a diagnostic rather than being swallowed.
    """

    def __init__(self, vertex: int, c_vector: tuple[int, ...]):
        self.vertex = vertex
        self.c_vector = c_vector
        super().__init__(
            f"c-vector of vertex {vertex} is not sign-coherent: {c_vector}"
        )


class VertexColor(enum.Enum):
    GREEN = "green"
    RED = "red"


def _as_rows(entries) -> Rows:
    return tuple(tuple(int(x) for x in row) for row in entries)


@dataclass(frozen=True, slots=True)
class ExchangeMatrix:
    """Immutable n x (n+m) exchange matrix.

    entries      -- n rows of n+m ints (lists are coerced to tuples)
    m            -- number of frozen columns
    symmetrizer  -- positive diagonal (d_1..d_n) when the principal part is
                    skew-symmetrizable but not skew-symmetric; None means the
                    principal part must be skew-symmetric.
    """

    entries: Rows
    m: int = 0
    symmetrizer: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_rows(self.entries))
        if self.symmetrizer is not None:
            object.__setattr__(
                self, "symmetrizer", tuple(int(d) for d in self.symmetrizer)
            )
        self._validate()
        d = self.symmetrizer
        if d is not None:
            # (2,4) and (1,2) describe the same valued quiver; all-ones is
            # plain skew-symmetry and is dropped so equal quivers compare equal
            g = math.gcd(*d) if len(d) > 1 else d[0]
            if g > 1:
                d = tuple(x // g for x in d)
            object.__setattr__(
                self, "symmetrizer", None if all(x == 1 for x in d) else d
            )

    def _validate(self):
        n = len(self.entries)
        if n == 0:
            raise ValueError("exchange matrix needs at least one mutable vertex")
        if self.m < 0:
            raise ValueError("frozen column count m must be >= 0")
        width = n + self.m
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise ValueError(
                    f"row {i + 1} has {len(row)} entries, expected {width}"
                )
        for i in range(n):
            if self.entries[i][i] != 0:
                raise ValueError(f"diagonal entry at vertex {i + 1} must be 0")
        d = self.symmetrizer
        if d is not None:
            if len(d) != n:
                raise ValueError("symmetrizer length must equal n")
            if any(x <= 0 for x in d):
                raise ValueError("symmetrizer entries must be positive")
        for i in range(n):
            for j in range(i + 1, n):
                bij = self.entries[i][j]
                bji = self.entries[j][i]
                if d is None:
                    if bij != -bji:
                        raise ValueError(
                            f"principal part not skew-symmetric at ({i + 1},{j + 1});"
                            " pass a symmetrizer for valued quivers"
                        )
                elif d[i] * bij != -d[j] * bji:
                    raise ValueError(
                        f"symmetrizer does not skew-symmetrize entry ({i + 1},{j + 1})"
                    )

    # -- basic shape ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.entries)

    def principal(self) -> Rows:
        """The left n x n block."""
        n = self.n
        return tuple(row[:n] for row in self.entries)

    def c_matrix(self) -> Rows:
        """The right n x n block; requires m == n (one frozen column per vertex)."""
        n = self.n
        if self.m != n:
            raise ValueError(f"c-matrix needs m == n, got m={self.m}, n={n}")
        return tuple(row[n:] for row in self.entries)

    # -- mutation ---------------------------------------------------------

    def mutate(self, k: int) -> "ExchangeMatrix":
        """Mutate at mutable vertex k (1-based).  Involutive.

        b'_ij = -b_ij when i == k or j == k, otherwise
        b'_ij = b_ij + [b_ik]+ [b_kj]+ - [b_ik]- [b_kj]-  with [x]+ = max(x,0),
        [x]- = min(x,0).
        """
        n = self.n
        if not 1 <= k <= n:
            if n < k <= n + self.m:
                raise IndexError(f"vertex {k} is frozen; mutation is rejected")
            raise IndexError(f"vertex {k} out of range 1..{n}")
        k0 = k - 1
        rows = self.entries
        rk = rows[k0]
        new_rows = []
        for i, row in enumerate(rows):
            if i == k0:
                new_rows.append(tuple(-x for x in row))
                continue
            bik = row[k0]
            if bik == 0:
                new_rows.append(row)
                continue
            nr = list(row)
            nr[k0] = -bik
            if bik > 0:
                for j, bkj in enumerate(rk):
                    if bkj > 0 and j != k0:
                        nr[j] += bik * bkj
            else:
                for j, bkj in enumerate(rk):
                    if bkj < 0 and j != k0:
                        nr[j] -= bik * bkj
            new_rows.append(tuple(nr))
        return ExchangeMatrix(tuple(new_rows), self.m, self.symmetrizer)

    def mutate_sequence(self, vertices) -> "ExchangeMatrix":
        out = self
        for k in vertices:
            out = out.mutate(k)
        return out

    # -- coloring ---------------------------------------------------------

    def c_vector(self, i: int) -> tuple[int, ...]:
        n = self.n
        if self.m != n:
            raise ValueError("c-vectors need m == n")
        if not 1 <= i <= n:
            raise IndexError(f"vertex {i} out of range 1..{n}")
        return self.entries[i - 1][n:]

    def vertex_color(self, i: int) -> VertexColor:
        """Green iff the c-vector of i is >= 0 and nonzero, red iff <= 0 and nonzero.

        Raises SignIncoherentError on a mixed-sign or zero c-vector.
        """
        c = self.c_vector(i)
        nonneg = all(x >= 0 for x in c)
        nonpos = all(x <= 0 for x in c)
        if nonneg and not nonpos:
            return VertexColor.GREEN
        if nonpos and not nonneg:
            return VertexColor.RED
        raise SignIncoherentError(i, c)

    def colors(self) -> tuple[VertexColor, ...]:
        return tuple(self.vertex_color(i) for i in range(1, self.n + 1))

    def green_vertices(self) -> tuple[int, ...]:
        """Ascending 1-based labels of green vertices."""
        return tuple(
            i for i in range(1, self.n + 1)
            if self.vertex_color(i) is VertexColor.GREEN
        )

    def green_count(self) -> int:
        return len(self.green_vertices())

    def is_all_red(self) -> bool:
        return self.green_count() == 0

    def is_all_green(self) -> bool:
        return self.green_count() == self.n


@dataclass(frozen=True)
class IceQuiver:
    """An exchange matrix plus display labels for rendering and export."""

    matrix: ExchangeMatrix
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        n, m = self.matrix.n, self.matrix.m
        if not self.labels:
            auto = tuple(str(i + 1) for i in range(n)) + tuple(
                f"{i + 1}'" for i in range(m)
            )
            object.__setattr__(self, "labels", auto)
        elif len(self.labels) != n + m:
            raise ValueError("need one label per mutable and frozen vertex")


def framed(matrix: ExchangeMatrix) -> ExchangeMatrix:
    """Adjoin one frozen vertex i' per mutable i with an arrow i -> i'.

    The frozen block is the identity, so every vertex starts green.
    """
    if matrix.m != 0:
        raise ValueError("framed() expects a quiver without frozen vertices")
    n = matrix.n
    rows = tuple(
        row + tuple(1 if i == j else 0 for j in range(n))
        for i, row in enumerate(matrix.entries)
    )
    return ExchangeMatrix(rows, n, matrix.symmetrizer)


def coframed(matrix: ExchangeMatrix) -> ExchangeMatrix:
    """Adjoin frozen vertices with reversed frame arrows i' -> i (block -I)."""
    if matrix.m != 0:
        raise ValueError("coframed() expects a quiver without frozen vertices")
    n = matrix.n
    rows = tuple(
        row + tuple(-1 if i == j else 0 for j in range(n))
        for i, row in enumerate(matrix.entries)
    )
    return ExchangeMatrix(rows, n, matrix.symmetrizer)


def opposite(matrix: ExchangeMatrix) -> ExchangeMatrix:
    """Reverse every arrow: entrywise negation of the principal part."""
    if matrix.m != 0:
        raise ValueError("opposite() expects a quiver without frozen vertices")
    return ExchangeMatrix(
        tuple(tuple(-x for x in row) for row in matrix.entries),
        0,
        matrix.symmetrizer,
    )
