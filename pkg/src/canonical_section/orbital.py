"""Modified tableaux, Weyl words and the coordinate subalgebras u = n ∩ w(n)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Composition, Coord, NeighbourPair, Tableau, build_tableau, neighbouring_pairs
from .section import SectionState


class OrbitalError(ValueError):
    pass


@dataclass(frozen=True)
class PermutationWord:
    word: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.word) != list(range(1, len(self.word) + 1)):
            raise OrbitalError(f"{self.word} is not a permutation of 1..{len(self.word)}")

    def position(self, entry: int) -> int:
        return self._positions[entry]

    @property
    def _positions(self) -> dict[int, int]:
        return {e: p for p, e in enumerate(self.word, start=1)}


def modified_tableau(T: Tableau, p: NeighbourPair) -> Tableau:
    """Tableau obtained by moving the bottom entry of the right column of the pair.

    Columns strictly between the pair of height below s are ignored.  Among
    the remaining columns (the left column of the pair first), the parts
    strictly below row s move one column to the left and the entry m at row s
    of the right column becomes the new part below row s of the last of them.
    """
    heights = T.heights
    v, v2, s = p.v, p.v2, p.s
    if not (1 <= v < v2 <= len(heights)) or heights[v - 1] != s or heights[v2 - 1] != s:
        raise OrbitalError(f"{p} is not a pair of columns of height {p.s}")
    if any(heights[j - 1] == s for j in range(v + 1, v2)):
        raise OrbitalError(f"{p} is not a neighbouring pair")
    chain = [v] + [j for j in range(v + 1, v2) if heights[j - 1] > s]
    cols = [list(c) for c in T.columns]
    m = cols[v2 - 1].pop()
    tails = [cols[j - 1][s:] for j in chain]
    for a, j in enumerate(chain):
        nxt = tails[a + 1] if a + 1 < len(chain) else [m]
        cols[j - 1] = cols[j - 1][:s] + nxt
    return Tableau(tuple(tuple(c) for c in cols))


def weyl_word(T: Tableau) -> PermutationWord:
    """Read columns bottom to top, columns left to right."""
    return PermutationWord(tuple(e for col in T.columns for e in reversed(col)))


def u_from_word(w: PermutationWord) -> frozenset[Coord]:
    """Positive roots kept positive: (i, j), i < j, with i read before j."""
    pos = w._positions
    n = len(w.word)
    return frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if pos[i] < pos[j])


@lru_cache(maxsize=None)
def _pair_data(parts: tuple[int, ...]) -> tuple[tuple[NeighbourPair, PermutationWord, frozenset], ...]:
    c = Composition(parts)
    T = build_tableau(c)
    out = []
    for p in neighbouring_pairs(c):
        w = weyl_word(modified_tableau(T, p))
        out.append((p, w, u_from_word(w)))
    return tuple(out)


def pair_subspaces(c: Composition) -> list[tuple[NeighbourPair, PermutationWord, frozenset]]:
    return list(_pair_data(c.parts))


def u_pair(c: Composition, p: NeighbourPair) -> frozenset[Coord]:
    for q, _, u in _pair_data(c.parts):
        if q == p:
            return u
    raise OrbitalError(f"{p} is not a neighbouring pair of {c}")


@lru_cache(maxsize=None)
def _u_intersection(parts: tuple[int, ...]) -> frozenset[Coord]:
    c = Composition(parts)
    out = frozenset(c.nilradical)
    for _, _, u in _pair_data(parts):
        out &= u
    return out


def u_intersection(c: Composition) -> frozenset[Coord]:
    return _u_intersection(c.parts)


@dataclass(frozen=True)
class ExcludedSets:
    X: frozenset[Coord]
    Y: frozenset[Coord]
    Z: frozenset[Coord]
    violations: tuple[str, ...] = ()


def excluded_sets(c: Composition, state: SectionState) -> ExcludedSets:
    """Excluded coordinates X, split into Star coordinates Y and the rest Z."""
    X = frozenset(c.nilradical) - u_intersection(c)
    V = frozenset(state.supp_v)
    Y = X & V
    problems = []
    for x in sorted(V - X):
        problems.append(f"Star {x} is not excluded")
    for x in sorted(X & frozenset(state.supp_e)):
        problems.append(f"One {x} is excluded")
    return ExcludedSets(X, Y, X - Y, tuple(problems))


def orbital_json(c: Composition, state: SectionState) -> dict:
    ex = excluded_sets(c, state)

    def coords(s):
        return [list(x) for x in sorted(s)]

    return {
        "pairs": [
            {"v": p.v, "v2": p.v2, "s": p.s, "word": list(w.word), "u": coords(u)}
            for p, w, u in pair_subspaces(c)
        ],
        "u_intersection": coords(u_intersection(c)),
        "X": coords(ex.X),
        "Y": coords(ex.Y),
        "Z": coords(ex.Z),
    }
