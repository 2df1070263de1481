"""Construction of the canonical section e + V as labelled matrix coordinates.

The section of ``(c_1, ..., c_k)`` extends the section of ``(c_1, ..., c_{k-1})``
by entries in the last column block only.  That block is produced by starting
from a last column of height 1 and growing it one row at a time.  Block
column ``t`` of the last block is matrix column ``N + t`` where ``N`` is the
number of entries left of the last tableau column.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping, Optional

from .core import Composition, Coord, CompositionError, Region, region_of


class Label(enum.Enum):
    ONE = "1"
    STAR = "*"

    def __str__(self) -> str:
        return self.value


ONE, STAR = Label.ONE, Label.STAR

# block column t -> {matrix row: label}
Block = dict[int, dict[int, Label]]


class SectionError(ValueError):
    """A section state violates one of the structural invariants."""


@dataclass(frozen=True)
class TraceEvent:
    s: int
    rule: str
    coord: Coord
    label: Label

    def __str__(self) -> str:
        return f"s={self.s} rule={self.rule} coord=({self.coord[0]},{self.coord[1]}) label={self.label}"


@dataclass(frozen=True)
class SectionState:
    composition: Composition
    entries: Mapping[Coord, Label]
    trace: tuple[TraceEvent, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    @property
    def supp_e(self) -> list[Coord]:
        return sorted(x for x, l in self.entries.items() if l is ONE)

    @property
    def supp_v(self) -> list[Coord]:
        return sorted(x for x, l in self.entries.items() if l is STAR)

    def last_block(self) -> Block:
        c = self.composition
        if c.k < 2:
            return {}
        return _block_of(self.entries, c.n - c.parts[-1])

    def restrict(self) -> SectionState:
        """Drop the last tableau column and every entry in its column block."""
        c = self.composition
        keep = c.n - c.parts[-1]
        return SectionState(c.drop_last(), {x: l for x, l in self.entries.items() if x[1] <= keep})

    def to_json(self) -> dict:
        return {
            "composition": list(self.composition.parts),
            "supp_e": [list(x) for x in self.supp_e],
            "supp_v": [list(x) for x in self.supp_v],
        }


def _block_of(entries: Mapping[Coord, Label], offset: int) -> Block:
    block: Block = {}
    for (i, j), l in entries.items():
        if j > offset:
            block.setdefault(j - offset, {})[i] = l
    return block


def _block_entries(block: Block, offset: int) -> dict[Coord, Label]:
    return {(r, offset + t): l for t, col in block.items() for r, l in col.items()}


def _ones(col: Mapping[int, Label]) -> list[int]:
    return [r for r, l in col.items() if l is ONE]


def _stars(col: Mapping[int, Label]) -> list[int]:
    return [r for r, l in col.items() if l is STAR]


def _rule_iv_target(S: Composition, fixed: Mapping[Coord, Label], block: Block, last: int) -> Optional[int]:
    """Row that must carry the One of the new last block column, if any.

    The candidate rows are entries of S whose row holds no One outside the
    last matrix column and no Star in the last matrix column.  The Levi
    factor permutes the rows of one tableau column, so the class of the
    lowest candidate is every candidate in its tableau column and the
    topmost of them is chosen.
    """
    busy = {i for (i, _), l in fixed.items() if l is ONE}
    for t, col in block.items():
        if t != last:
            busy.update(_ones(col))
    busy.update(_stars(block.get(last, {})))
    cand = {r for r in range(1, S.n + 1) if r not in busy}
    if not cand:
        return None
    col = S.column_of[max(cand)]
    return min(r for r in cand if S.column_of[r] == col)


def _finish_column(S, fixed, block, last, events, s_for_trace):
    target = _rule_iv_target(S, fixed, block, last)
    if target is None:
        return
    col = block.setdefault(last, {})
    ones = _ones(col)
    if ones:
        if ones[0] != target:
            raise SectionError(
                f"{S}+C({last}): One at row {ones[0]} of the last column but the free-row rule asks for row {target}"
            )
        return
    if target in col:
        raise SectionError(f"{S}+C({last}): free-row rule targets row {target} which already holds {col[target]}")
    col[target] = ONE
    events.append(TraceEvent(s_for_trace, "iv", (target, S.n + last), ONE))


def base_block(S: Composition, fixed: Mapping[Coord, Label]) -> tuple[Block, list[TraceEvent]]:
    """Last column block when a column of height 1 is appended to ``S``."""
    heights = set(S.parts)
    t = S.parts[-1]
    top = S.n - t + 1  # entry of the top box of the last column of S
    events: list[TraceEvent] = []
    if 1 in heights:
        block: Block = {1: {top: STAR}}
        events.append(TraceEvent(1, "base-b", (top, S.n + 1), STAR))
    else:
        block = {1: {top: ONE}}
        events.append(TraceEvent(1, "base-a", (top, S.n + 1), ONE))
    _finish_column(S, fixed, block, 1, events, 1)
    return block, events


def grow_block(S: Composition, fixed: Mapping[Coord, Label], block: Block, s: int) -> tuple[Block, list[TraceEvent]]:
    """Apply the growth rules taking the last column from height s to s + 1."""
    heights = set(S.parts)
    N = S.n
    events: list[TraceEvent] = []
    _check_block(S, block, s)
    new: Block = {t: dict(block[t]) for t in range(1, s) if t in block}  # (i)
    col_s = block.get(s, {})
    if not col_s:
        # (v): both new columns stay empty
        return new, events
    ones, stars = _ones(col_s), _stars(col_s)
    new_s: dict[int, Label] = {}
    new_s1: dict[int, Label] = {}
    nxt = STAR if s + 1 in heights else ONE
    if stars:
        new_s[stars[0]] = ONE
        events.append(TraceEvent(s + 1, "ii", (stars[0], N + s), ONE))
    if ones:
        r = ones[0]
        if stars:
            new_s1[r] = nxt
            events.append(TraceEvent(s + 1, "iiiA", (r, N + s + 1), nxt))
        else:
            new_s[r] = ONE
            events.append(TraceEvent(s + 1, "iiiB", (r, N + s), ONE))
            tall = [j for j in range(1, S.k + 1) if S[j] >= s + 1]
            if tall:
                row = S.entry(s + 1, tall[-1])
                new_s1[row] = nxt
                events.append(TraceEvent(s + 1, "iiiB", (row, N + s + 1), nxt))
    if new_s:
        new[s] = new_s
    if new_s1:
        new[s + 1] = new_s1
    _finish_column(S, fixed, new, s + 1, events, s + 1)
    return {t: col for t, col in new.items() if col}, events


def _check_block(S: Composition, block: Block, s: int) -> None:
    for t, col in block.items():
        if not 1 <= t <= s:
            raise SectionError(f"block column {t} outside a last column of height {s}")
        if len(_ones(col)) > 1:
            raise SectionError(f"block column {t} holds more than one One")
        stars = _stars(col)
        if stars and (t != s or len(stars) > 1):
            raise SectionError(f"misplaced Star in block column {t}")
        for r in col:
            if not 1 <= r <= S.n:
                raise SectionError(f"row {r} is not an entry of {S}")
    rows = [r for col in block.values() for r in _ones(col)]
    if len(rows) != len(set(rows)):
        raise SectionError("two Ones of the last block share a row")


def base_last_column(S: Composition) -> list[tuple[Coord, Label]]:
    """Entries of the last column when a column of height 1 is appended to ``S``."""
    fixed = build_section(S).entries
    block, _ = base_block(S, fixed)
    return sorted(_block_entries(block, S.n).items())


def grow_last_column(state: SectionState) -> SectionState:
    """Section of S + C(s+1) from the section of S + C(s)."""
    c = state.composition
    if c.k < 2:
        return SectionState(Composition(c.parts[:-1] + (c.parts[-1] + 1,)), {}, state.trace)
    S, s = c.drop_last(), c.parts[-1]
    fixed = {x: l for x, l in state.entries.items() if x[1] <= S.n}
    expected = build_section(S).entries
    if fixed != dict(expected):
        raise SectionError(f"entries left of the last block differ from the section of {S}")
    block, events = grow_block(S, fixed, _block_of(state.entries, S.n), s)
    entries = dict(fixed)
    entries.update(_block_entries(block, S.n))
    return SectionState(S.append(s + 1), entries, state.trace + tuple(events))


@lru_cache(maxsize=4096)
def _build(parts: tuple[int, ...]) -> SectionState:
    c = Composition(parts)
    if c.k == 1:
        return SectionState(c, {})
    S = c.drop_last()
    prev = _build(S.parts)
    fixed = prev.entries
    block, events = base_block(S, fixed)
    for s in range(1, c.parts[-1]):
        block, more = grow_block(S, fixed, block, s)
        events += more
    entries = dict(fixed)
    entries.update(_block_entries(block, S.n))
    return SectionState(c, entries, tuple(events))


def build_section(c: Composition) -> SectionState:
    """Canonical section of the composition ``c``."""
    if not isinstance(c, Composition):
        c = Composition(tuple(c))
    return _build(c.parts)


def check_state(state: SectionState) -> None:
    """Raise SectionError if ``state`` breaks a structural invariant."""
    c = state.composition
    for x in state.entries:
        try:
            reg = region_of(c, x)
        except CompositionError as exc:
            raise SectionError(str(exc)) from None
        if reg is not Region.NILRADICAL:
            raise SectionError(f"{x} is not a nilradical coordinate")
    for col in range(2, c.k + 1):
        cols = list(c.column_entries(col))
        ones_rows, ones_cols = [], []
        stars = []
        for (i, j), l in state.entries.items():
            if j in cols:
                if l is ONE:
                    ones_rows.append(i)
                    ones_cols.append(j)
                else:
                    stars.append((i, j))
        if len(stars) > 1 or (stars and stars[0][1] != cols[-1]):
            raise SectionError(f"column block {col} has misplaced Stars {stars}")
        if len(set(ones_rows)) != len(ones_rows) or len(set(ones_cols)) != len(ones_cols):
            raise SectionError(f"column block {col} repeats a row or column among its Ones")
    for i in range(1, c.n + 1):
        seen_one = False
        for j in range(i + 1, c.n + 1):
            l = state.entries.get((i, j))
            if l is ONE:
                seen_one = True
            elif l is STAR and seen_one:
                raise SectionError(f"row {i}: Star at column {j} after a One")


@dataclass(frozen=True)
class CompositionMapImage:
    rows: tuple[Optional[int], ...]
    heights: frozenset[int]

    @property
    def max_height(self) -> int:
        return len(self.rows) - 1

    def row(self, t: int) -> Optional[int]:
        return self.rows[t - 1] if 1 <= t <= len(self.rows) else None

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "heights": sorted(self.heights)}


def composition_map(S: Composition) -> CompositionMapImage:
    """Stabilised rows of the Ones in the last block of S + C(|S| + 1)."""
    top = max(S.parts)
    block = build_section(S.append(top + 1)).last_block()
    rows = []
    for t in range(1, top + 2):
        ones = _ones(block.get(t, {}))
        rows.append(ones[0] if ones else None)
    return CompositionMapImage(tuple(rows), frozenset(S.parts))


def block_via_map(cm: CompositionMapImage, s: int) -> Block:
    """Last column block of S + C(s) rebuilt from the composition map of S."""
    if s < 1:
        raise ValueError("height must be positive")
    block: Block = {}
    for t in range(1, s):
        r = cm.row(t)
        if r is not None:
            block[t] = {r: ONE}
    last: dict[int, Label] = {}
    if s in cm.heights:
        last[cm.row(s)] = STAR
        r = cm.row(s + 1)
        if r is not None:
            last[r] = ONE
    elif cm.row(s) is not None:
        last[cm.row(s)] = ONE
    if last:
        block[s] = last
    return block
