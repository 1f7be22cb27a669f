"""Named quiver families and instances.

Orientation conventions follow the drawn examples: the cyclic quiver has
arrows (i+1) -> i plus 1 -> n (so cycle3 is the triangle 2->1, 3->2, 1->3);
affine a-type puts p arrows clockwise (i -> i+1) and q counterclockwise;
affine d-type feeds two arms into vertex 3, runs a chain to vertex n-1, and
forks out to n and n+1.  Valued rank-2 entries use [[0,1],[-c,0]] with the
matching symmetrizer.

positive_root_count derives root-system sizes by reflection closure over the
Cartan matrix rather than trusting tabulated constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from greenseq.quiver import ExchangeMatrix

__all__ = [
    "CatalogEntry",
    "affine_a",
    "affine_d",
    "alternating_a",
    "cycle",
    "dynkin_d",
    "dynkin_e",
    "instances",
    "kronecker",
    "linear_a",
    "make",
    "names",
    "positive_root_count",
]

NO_MGS_NOTE = "theory predicts no maximal green sequence for this quiver"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: ExchangeMatrix
    description: str
    note: str | None = None


def _from_arrows(n, arrows, symmetrizer=None):
    """arrows: (source, target) or (source, target, multiplicity), 1-based."""
    rows = [[0] * n for _ in range(n)]
    for arrow in arrows:
        i, j = arrow[0], arrow[1]
        w = arrow[2] if len(arrow) > 2 else 1
        rows[i - 1][j - 1] += w
        rows[j - 1][i - 1] -= w
    return ExchangeMatrix(rows, 0, symmetrizer)


# -- families ---------------------------------------------------------------


def linear_a(n: int) -> ExchangeMatrix:
    """Type A path 1 -> 2 -> ... -> n."""
    if n < 1:
        raise ValueError("linear_a needs n >= 1")
    return _from_arrows(n, [(i, i + 1) for i in range(1, n)])


def alternating_a(n: int) -> ExchangeMatrix:
    """Type A path with alternating orientation; even vertices are sources."""
    if n < 2:
        raise ValueError("alternating_a needs n >= 2")
    arrows = [((i + 1, i) if i % 2 == 1 else (i, i + 1)) for i in range(1, n)]
    return _from_arrows(n, arrows)


def dynkin_d(n: int) -> ExchangeMatrix:
    """Type D: arms 1 -> 3 and 2 -> 3, chain 3 -> 4 -> ... -> n."""
    if n < 4:
        raise ValueError("dynkin_d needs n >= 4")
    arrows = [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)]
    return _from_arrows(n, arrows)


def dynkin_e(n: int) -> ExchangeMatrix:
    """Type E (n in 6..8): chain 1-3-4-...-n with branch vertex 2 -> 4."""
    if n not in (6, 7, 8):
        raise ValueError("dynkin_e needs n in {6, 7, 8}")
    arrows = [(1, 3), (2, 4), (3, 4)] + [(i, i + 1) for i in range(4, n)]
    return _from_arrows(n, arrows)


def cycle(n: int) -> ExchangeMatrix:
    """Oriented cycle as drawn for the triangle: (i+1) -> i plus 1 -> n."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return _from_arrows(n, [(i + 1, i) for i in range(1, n)] + [(1, n)])


def kronecker(r: int) -> ExchangeMatrix:
    """Two vertices joined by r parallel arrows 1 -> 2."""
    if r < 1:
        raise ValueError("kronecker needs r >= 1")
    return ExchangeMatrix([[0, r], [-r, 0]])


def affine_a(p: int, q: int) -> ExchangeMatrix:
    """Cycle on p+q vertices, p arrows clockwise and q counterclockwise.

    Acyclic exactly when p, q >= 1 (q = 0 is the oriented cycle; p = q = 1 is
    the Kronecker quiver).
    """
    if p < 1 or q < 0 or p + q < 2:
        raise ValueError("affine_a needs p >= 1, q >= 0, p + q >= 2")
    n = p + q
    arrows = []
    for i in range(1, n + 1):
        u, v = i, i % n + 1
        arrows.append((u, v) if i <= p else (v, u))
    return _from_arrows(n, arrows)


def affine_d(n: int, reverse_arms: bool = False) -> ExchangeMatrix:
    """Affine D on n+1 vertices: arms into 3, chain to n-1, fork to n, n+1.

    reverse_arms flips the two arm arrows (an alternative acyclic
    orientation; length statistics of green sequences do not depend on it).
    """
    if n < 4:
        raise ValueError("affine_d needs n >= 4")
    arms = [(3, 1), (3, 2)] if reverse_arms else [(1, 3), (2, 3)]
    chain = [(i, i + 1) for i in range(3, n - 1)]
    fork = [(n - 1, n), (n - 1, n + 1)]
    return _from_arrows(n + 1, arms + chain + fork)


def _valued_rank2(c: int, d: tuple[int, int]) -> ExchangeMatrix:
    return ExchangeMatrix([[0, 1], [-c, 0]], 0, d)


_FIXED = {
    "markov": (
        lambda: ExchangeMatrix([[0, 2, -2], [-2, 0, 2], [2, -2, 0]]),
        "doubled 3-cycle; mutation keeps its shape",
        NO_MGS_NOTE,
    ),
    "mckay5": (
        lambda: _from_arrows(
            5,
            [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1),
             (1, 4, 2), (2, 5, 2), (3, 1, 2), (4, 2, 2), (5, 3, 2)],
        ),
        "5-vertex circulant with single and double arrows",
        NO_MGS_NOTE,
    ),
    "x6": (
        lambda: _from_arrows(
            6, [(1, 2), (2, 3, 2), (3, 1), (1, 4), (4, 5, 2), (5, 1), (1, 6)]
        ),
        "exceptional 6-vertex quiver: two doubled triangles and a pendant",
        None,
    ),
    "x7": (
        lambda: _from_arrows(
            7,
            [(1, 2), (2, 3, 2), (3, 1), (1, 4), (4, 5, 2), (5, 1),
             (1, 6), (6, 7, 2), (7, 1)],
        ),
        "exceptional 7-vertex quiver: three doubled triangles on a hub",
        NO_MGS_NOTE,
    ),
    "sphere4": (
        lambda: _from_arrows(
            6, [(1, 3), (1, 5), (3, 2), (5, 2), (2, 4), (2, 6), (4, 1), (6, 1)]
        ),
        "triangulated sphere with 4 punctures",
        None,
    ),
    "wild4": (
        lambda: _from_arrows(4, [(1, 2), (2, 3), (3, 4, 2)]),
        "wild acyclic 4-vertex quiver 1 -> 2 -> 3 => 4",
        None,
    ),
    "b2": (lambda: _valued_rank2(2, (2, 1)), "valued rank 2, weights (1,2)", None),
    "c2": (
        lambda: ExchangeMatrix([[0, 2], [-1, 0]], 0, (1, 2)),
        "valued rank 2, weights (2,1)",
        None,
    ),
    "g2": (lambda: _valued_rank2(3, (3, 1)), "valued rank 2, weights (1,3)", None),
}

_PATTERNS = [
    (re.compile(r"a(\d+)-alt$"), lambda m: alternating_a(int(m.group(1))),
     "type A path, alternating orientation"),
    (re.compile(r"a(\d+)$"), lambda m: linear_a(int(m.group(1))),
     "type A path, linear orientation"),
    (re.compile(r"d(\d+)$"), lambda m: dynkin_d(int(m.group(1))), "type D"),
    (re.compile(r"e([678])$"), lambda m: dynkin_e(int(m.group(1))), "type E"),
    (re.compile(r"cycle(\d+)$"), lambda m: cycle(int(m.group(1))),
     "oriented cycle"),
    (re.compile(r"kronecker(\d+)$"), lambda m: kronecker(int(m.group(1))),
     "generalized Kronecker quiver"),
    (re.compile(r"atilde(\d+)-(\d+)$"),
     lambda m: affine_a(int(m.group(1)), int(m.group(2))),
     "affine A cycle, mixed orientation"),
    (re.compile(r"dtilde(\d+)-rev$"),
     lambda m: affine_d(int(m.group(1)), reverse_arms=True),
     "affine D, arms reversed"),
    (re.compile(r"dtilde(\d+)$"), lambda m: affine_d(int(m.group(1))),
     "affine D as drawn"),
]


def make(name: str) -> CatalogEntry:
    """Resolve a catalog name like a3, a3-alt, cycle3, atilde2-1, dtilde4."""
    key = name.strip().lower()
    fixed = _FIXED.get(key)
    if fixed is not None:
        builder, description, note = fixed
        return CatalogEntry(key, builder(), description, note)
    for pattern, builder, description in _PATTERNS:
        match = pattern.match(key)
        if match:
            try:
                matrix = builder(match)
            except ValueError as err:
                raise KeyError(f"bad parameters for catalog name {name!r}: {err}")
            return CatalogEntry(key, matrix, description)
    raise KeyError(f"unknown catalog name {name!r}")


def names() -> list[str]:
    """Standard instances; parameterized names beyond these also resolve."""
    return [
        "a1", "a2", "a3", "a4", "a5", "a3-alt", "a4-alt", "a5-alt",
        "d4", "d5", "e6", "e7", "e8",
        "b2", "c2", "g2",
        "cycle3", "cycle4", "cycle5",
        "kronecker2", "kronecker3",
        "atilde2-1", "atilde3-1", "atilde4-1", "atilde2-2",
        "dtilde4", "dtilde5", "dtilde4-rev",
        "markov", "mckay5", "sphere4", "x6", "x7", "wild4",
    ]


def instances(max_n: int | None = None) -> list[CatalogEntry]:
    out = [make(name) for name in names()]
    if max_n is not None:
        out = [entry for entry in out if entry.matrix.n <= max_n]
    return out


# -- root systems -----------------------------------------------------------


def _cartan(letter: str, rank: int):
    a = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def bond(i, j, down=-1, up=-1):
        a[i][j] = down
        a[j][i] = up

    if letter == "a":
        for i in range(rank - 1):
            bond(i, i + 1)
    elif letter in ("b", "c"):
        if rank < 2:
            raise ValueError("types B and C need rank >= 2")
        for i in range(rank - 2):
            bond(i, i + 1)
        # last simple root short (B) or long (C)
        if letter == "b":
            bond(rank - 2, rank - 1, down=-2, up=-1)
        else:
            bond(rank - 2, rank - 1, down=-1, up=-2)
    elif letter == "d":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        for i in range(rank - 3):
            bond(i, i + 1)
        bond(rank - 3, rank - 2)
        bond(rank - 3, rank - 1)
    elif letter == "e":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7, or 8")
        chain = [0] + list(range(2, rank))
        for u, v in zip(chain, chain[1:]):
            bond(u, v)
        bond(1, 3)
    elif letter == "f":
        if rank != 4:
            raise ValueError("type F needs rank 4")
        bond(0, 1)
        bond(1, 2, down=-2, up=-1)
        bond(2, 3)
    elif letter == "g":
        if rank != 2:
            raise ValueError("type G needs rank 2")
        bond(0, 1, down=-1, up=-3)
    else:
        raise ValueError(f"unknown Dynkin type {letter!r}")
    return a


def positive_root_count(letter: str, rank: int) -> int:
    """Size of the positive root system, by reflection closure of the simples.

    Roots are coefficient vectors over the simple roots; the reflection s_i
    sends v to v with coordinate i replaced by v_i - sum_j a_ij v_j.
    """
    a = _cartan(letter.lower(), rank)
    simples = {tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)}
    roots = set(simples)
    frontier = set(simples)
    while frontier:
        new = set()
        for v in frontier:
            for i in range(rank):
                pairing = sum(a[i][j] * v[j] for j in range(rank))
                image = list(v)
                image[i] -= pairing
                image = tuple(image)
                if image not in roots:
                    roots.add(image)
                    new.add(image)
        frontier = new
    return sum(1 for v in roots if all(x >= 0 for x in v))
