"""VS pairs, VS quadruplets, bad pairs and the extended element e_VS."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional

from .core import Composition, Coord, in_parabolic
from .section import SectionState


@dataclass(frozen=True)
class VSPair:
    first: Coord
    second: Coord

    @property
    def connector(self) -> Coord:
        return (self.first[1], self.second[0])

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return self.first + self.second


@dataclass(frozen=True)
class VSQuadruplet:
    pair: VSPair

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return self.pair.quad

    @property
    def adjoined(self) -> Coord:
        i, j, k, l = self.quad
        return (j, l)


@dataclass(frozen=True)
class VSReport:
    pairs: tuple[VSPair, ...]
    quadruplets: tuple[VSQuadruplet, ...]
    bad: tuple[VSQuadruplet, ...]
    adjoined: tuple[Coord, ...]
    supp_e: tuple[Coord, ...]

    @property
    def supp_evs(self) -> list[Coord]:
        return sorted(set(self.supp_e) | set(self.adjoined))

    def to_json(self) -> dict:
        return {
            "quadruplets": [list(q.quad) for q in self.quadruplets],
            "bad": [list(q.quad) for q in self.bad],
            "adjoined": [list(x) for x in self.adjoined],
        }


def _root_of_p(c: Composition, a: int, b: int) -> bool:
    return a != b and in_parabolic(c, a, b)


def find_vs_pairs(state: SectionState) -> list[VSPair]:
    c = state.composition
    e = state.supp_e
    v = set(state.supp_v)
    out = []
    for (i, j), (k, l) in permutations(e, 2):
        if j == k or not _root_of_p(c, j, k):
            continue
        if (i, k) in v or (j, l) in v:
            continue
        out.append(VSPair((i, j), (k, l)))
    return sorted(out, key=lambda p: p.quad)


def find_quadruplets(state: SectionState, pairs: Optional[Iterable[VSPair]] = None) -> list[VSQuadruplet]:
    v = set(state.supp_v)
    if pairs is None:
        pairs = find_vs_pairs(state)
    quads = [VSQuadruplet(p) for p in pairs if p.connector in v]
    per_star: dict[Coord, int] = {}
    for q in quads:
        per_star[q.pair.connector] = per_star.get(q.pair.connector, 0) + 1
    dup = [x for x, m in per_star.items() if m > 1]
    if dup:
        raise AssertionError(f"Stars {dup} determine more than one VS quadruplet")
    return quads


def _is_pair(c: Composition, v, first: Coord, second: Coord) -> bool:
    (i, j), (k, l) = first, second
    return j != k and _root_of_p(c, j, k) and (i, k) not in v and (j, l) not in v


def is_bad(pair: VSPair | VSQuadruplet, state: SectionState) -> bool:
    """True when neither obstructed coordinate can be reached a second way.

    ``x_{j,l}`` is recovered through some ``x_{j,z}`` in supp e (z != k) and
    the root vector ``x_{z,l}`` of the parabolic; ``x_{i,k}`` through some
    ``x_{y,k}`` in supp e (y != k, y = j allowed) and ``x_{i,y}``.
    Coordinates adjoined for earlier bad pairs are not used: they compensate
    a defect of p.e and carry no action of their own.

    A recovering root vector may also act on a second coordinate of supp e,
    ``x_{l,u}`` resp. ``x_{h,i}``.  That second use is harmless unless it
    forms a VS pair which is itself bad, so the test recurses.  When the
    recursion closes a cycle the pairs in it recover each other only up to
    one coordinate; the quadruplet in the cycle is the one that stays bad.
    """
    if isinstance(pair, VSQuadruplet):
        pair = pair.pair
    have = frozenset(state.supp_e)
    return _bad(pair, state.composition, frozenset(state.supp_v), have, frozenset())


def _bad(pair: VSPair, c: Composition, v, have, stack) -> bool:
    if pair.quad in stack:
        return pair.connector in v
    stack = stack | {pair.quad}
    (i, j), (k, l) = pair.first, pair.second

    def harmless(first, second):
        return not (_is_pair(c, v, first, second) and _bad(VSPair(first, second), c, v, have, stack))

    for a, z in have:
        if a == j and z != k and _root_of_p(c, z, l):
            if all(harmless((j, z), (l, u)) for x, u in have if x == l):
                return False
    for y, b in have:
        if b == k and y != k and _root_of_p(c, i, y):
            if all(harmless((h, i), (y, k)) for h, x in have if x == i):
                return False
    return True


def build_extended(state: SectionState, order=None) -> VSReport:
    """Adjoin (j, l) for every bad quadruplet, tableau column of l left to right.

    ``order`` optionally permutes the candidates inside one column; the
    result must not depend on it.
    """
    c = state.composition
    pairs = find_vs_pairs(state)
    quads = find_quadruplets(state, pairs)
    by_col: dict[int, list[VSQuadruplet]] = {}
    for q in quads:
        by_col.setdefault(c.column_of[q.quad[3]], []).append(q)
    adjoined: list[Coord] = []
    bad: list[VSQuadruplet] = []
    for col in sorted(by_col):
        group = by_col[col]
        if order is not None:
            group = order(group)
        found = sorted((q for q in group if is_bad(q, state)), key=lambda q: q.quad)
        bad.extend(found)
        for q in found:
            if q.adjoined not in adjoined:
                adjoined.append(q.adjoined)
    return VSReport(
        pairs=tuple(pairs),
        quadruplets=tuple(quads),
        bad=tuple(bad),
        adjoined=tuple(adjoined),
        supp_e=tuple(state.supp_e),
    )


def raw_bad_pairs(state: SectionState, report: Optional[VSReport] = None) -> list[VSPair]:
    """All VS pairs (quadruplet or not) failing the recovery criterion."""
    pairs = report.pairs if report is not None else find_vs_pairs(state)
    return [p for p in pairs if is_bad(p, state)]
