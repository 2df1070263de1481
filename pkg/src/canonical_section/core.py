"""Compositions, the column tableau and the block structure of the n x n matrix.

Everything is 1-based: tableau rows, tableau columns, entries and matrix
coordinates all start at 1, so that coordinates printed here can be compared
with hand-drawn matrix pictures directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterator

Coord = tuple[int, int]


class CompositionError(ValueError):
    """Raised for malformed compositions or coordinates outside the matrix."""


class Region(enum.Enum):
    NILRADICAL = "nilradical"
    LEVI = "levi"
    LOWER = "lower"

    @property
    def in_parabolic(self) -> bool:
        return self is not Region.LOWER


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise CompositionError("a composition needs at least one part")
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise CompositionError(f"parts must be positive integers, got {parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, col: int) -> int:
        """Height of column ``col`` (1-based)."""
        if not 1 <= col <= self.k:
            raise IndexError(col)
        return self.parts[col - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def drop_last(self) -> Composition:
        return Composition(self.parts[:-1])

    def append(self, height: int) -> Composition:
        return Composition(self.parts + (height,))

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """offsets[j-1] = number of entries in columns strictly left of column j."""
        out, acc = [], 0
        for p in self.parts:
            out.append(acc)
            acc += p
        return tuple(out)

    @cached_property
    def column_of(self) -> tuple[int, ...]:
        """column_of[i] is the tableau column holding entry i (index 0 unused)."""
        out = [0]
        for j, p in enumerate(self.parts, start=1):
            out.extend([j] * p)
        return tuple(out)

    def entry(self, row: int, col: int) -> int:
        if not (1 <= col <= self.k and 1 <= row <= self[col]):
            raise CompositionError(f"no box at row {row}, column {col} of {self}")
        return self.offsets[col - 1] + row

    def box(self, entry: int) -> tuple[int, int]:
        """(row, column) of the box labelled ``entry``."""
        if not 1 <= entry <= self.n:
            raise CompositionError(f"entry {entry} outside [1, {self.n}]")
        col = self.column_of[entry]
        return entry - self.offsets[col - 1], col

    def column_entries(self, col: int) -> range:
        o = self.offsets[col - 1]
        return range(o + 1, o + self[col] + 1)

    @cached_property
    def nilradical(self) -> tuple[Coord, ...]:
        """All coordinates of the nilradical, sorted lexicographically."""
        col = self.column_of
        n = self.n
        return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if col[i] < col[j])

    @property
    def dim_nilradical(self) -> int:
        return sum(a * b for a, b in combinations(self.parts, 2))


def parse_composition(text: str) -> Composition:
    """Parse the comma separated text form, e.g. ``"3,2,1,1,2,3"``."""
    pieces = [p.strip() for p in str(text).strip().strip("()[]").split(",")]
    if not pieces or pieces == [""]:
        raise CompositionError("empty composition")
    try:
        parts = tuple(int(p) for p in pieces)
    except ValueError:
        raise CompositionError(f"cannot parse composition {text!r}") from None
    return Composition(parts)


def compositions(n: int) -> Iterator[Composition]:
    """All 2**(n-1) compositions of n, one per bitmask of cut points."""
    if n < 1:
        return
    for mask in range(1 << (n - 1)):
        parts, run = [], 1
        for bit in range(n - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


@dataclass(frozen=True)
class Tableau:
    """Boxes of a (possibly modified) column diagram.

    ``columns[j-1]`` lists the entries of column j from the top row down.
    """

    columns: tuple[tuple[int, ...], ...]
    _boxes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        boxes = {}
        for j, col in enumerate(self.columns, start=1):
            for r, e in enumerate(col, start=1):
                if e in boxes:
                    raise CompositionError(f"entry {e} appears twice")
                boxes[e] = (r, j)
        object.__setattr__(self, "_boxes", boxes)

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.columns)

    @property
    def n(self) -> int:
        return len(self._boxes)

    def box(self, entry: int) -> tuple[int, int]:
        return self._boxes[entry]

    def entry(self, row: int, col: int) -> int:
        return self.columns[col - 1][row - 1]

    def column_entries(self, col: int) -> tuple[int, ...]:
        return self.columns[col - 1]


def build_tableau(c: Composition) -> Tableau:
    return Tableau(tuple(tuple(c.column_entries(j)) for j in range(1, c.k + 1)))


@dataclass(frozen=True)
class NeighbourPair:
    v: int
    v2: int
    s: int
    span: tuple[int, int]

    def __str__(self) -> str:
        return f"(C{self.v},C{self.v2},s={self.s})"


@lru_cache(maxsize=None)
def _pairs(parts: tuple[int, ...]) -> tuple[NeighbourPair, ...]:
    c = Composition(parts)
    last_seen: dict[int, int] = {}
    out = []
    for j, h in enumerate(parts, start=1):
        if h in last_seen:
            v = last_seen[h]
            span = (c.offsets[v - 1] + 1, c.offsets[j - 1] + h)
            out.append(NeighbourPair(v, j, h, span))
        last_seen[h] = j
    return tuple(sorted(out, key=lambda p: (p.v, p.v2)))


def neighbouring_pairs(c: Composition) -> list[NeighbourPair]:
    """Pairs of equal-height columns with no column of that height in between."""
    return list(_pairs(c.parts))


def region_of(c: Composition, x: Coord) -> Region:
    i, j = x
    n = c.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise CompositionError(f"coordinate {x} outside the {n}x{n} matrix")
    if i == j:
        raise CompositionError(f"diagonal coordinate {x} has no region")
    ci, cj = c.column_of[i], c.column_of[j]
    if ci < cj:
        return Region.NILRADICAL
    if ci == cj:
        return Region.LEVI
    return Region.LOWER


def in_parabolic(c: Composition, i: int, j: int) -> bool:
    """True when E_ij lies in the parabolic (diagonal included)."""
    return c.column_of[i] <= c.column_of[j]
