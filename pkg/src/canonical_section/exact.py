"""Exact rational linear algebra: ranks, determinants, small matrices, sampling.

No floating point is used anywhere.  Rational inputs are cleared of
denominators row by row so the eliminations run on Python integers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .core import Coord

Number = int | Fraction


def _integral(row: Sequence[Number]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def rank(rows: Iterable[Sequence[Number]]) -> int:
    """Rank over the rationals by fraction-free row reduction."""
    m = [r for r in (_integral(r) for r in rows) if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r]
        pc = p[col]
        for i in range(r + 1, len(m)):
            a = m[i][col]
            if a:
                row = [pc * x - a * y for x, y in zip(m[i], p)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                if g > 1:
                    row = [x // g for x in row]
                m[i] = row
        r += 1
        if r == len(m):
            break
    return r


def sparse_rank(vectors: Iterable[Mapping[object, Number]]) -> int:
    """Rank of sparse vectors given as {index: value} maps."""
    pivots: dict[object, dict] = {}
    order: dict[object, int] = {}
    r = 0
    for vec in vectors:
        keys = [k for k, x in vec.items() if x]
        v = dict(zip(keys, _integral([vec[k] for k in keys])))
        while v:
            for k in v:
                order.setdefault(k, len(order))
            lead = min(v, key=order.__getitem__)
            prow = pivots.get(lead)
            if prow is None:
                pivots[lead] = v
                r += 1
                break
            a, pc = v[lead], prow[lead]
            out = {}
            for k in v.keys() | prow.keys():
                x = pc * v.get(k, 0) - a * prow.get(k, 0)
                if x:
                    out[k] = x
            g = 0
            for x in out.values():
                g = gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                out = {k: x // g for k, x in out.items()}
            v = out
    return r


def det(matrix: Sequence[Sequence[Number]]) -> Number:
    """Determinant by Bareiss elimination (rational input is handled exactly)."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) and x.denominator != 1 for row in matrix for x in row):
        return _det_fraction(matrix)
    m = [[int(x) for x in row] for row in matrix]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        mk, pk = m[k], m[k][k]
        for i in range(k + 1, n):
            mi = m[i]
            a = mi[k]
            for j in range(k + 1, n):
                mi[j] = (pk * mi[j] - a * mk[j]) // prev
            mi[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def _det_fraction(matrix: Sequence[Sequence[Number]]) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    out = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            out = -out
        out *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return out


def solve_vandermonde(xs: Sequence[int], ys: Sequence[Number]) -> list[Fraction]:
    """Coefficients c_0..c_{m-1} with sum c_p x^p = y at every node."""
    # Newton divided differences, then expand to the monomial basis.
    m = len(xs)
    coef = [Fraction(y) for y in ys]
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        nxt = [Fraction(0)] * m
        for p in range(m - 1):
            nxt[p + 1] += poly[p]
        for p in range(m):
            nxt[p] -= xs[i] * poly[p]
        nxt[0] += coef[i]
        poly = nxt
    return poly


@dataclass(frozen=True)
class ExactMatrix:
    """n x n matrix over the rationals, stored densely."""

    rows: tuple[tuple[Number, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def zero(cls, n: int) -> ExactMatrix:
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: Coord) -> Number:
        i, j = ij
        return self.rows[i - 1][j - 1]

    def support(self) -> dict[Coord, Number]:
        return {(i + 1, j + 1): x for i, row in enumerate(self.rows) for j, x in enumerate(row) if x}

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        cols = list(zip(*other.rows))
        return ExactMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col) if a and b) for col in cols) for row in self.rows))

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __pow__(self, p: int) -> ExactMatrix:
        out = ExactMatrix.identity(self.n)
        for _ in range(p):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def rank(self) -> int:
        return rank(self.rows)

    def conjugate_by_permutation(self, perm: Sequence[int]) -> ExactMatrix:
        """P x P^-1 for the permutation matrix sending basis vector i to perm[i] (1-based)."""
        n = self.n
        out = [[0] * n for _ in range(n)]
        for (i, j), x in self.support().items():
            out[perm[i - 1] - 1][perm[j - 1] - 1] = x
        return ExactMatrix(tuple(tuple(r) for r in out))


def realize(coords: Iterable[Coord], values: Mapping[Coord, Number] | Number, n: int) -> ExactMatrix:
    """Matrix with the given entries at ``coords`` and zeros elsewhere.

    ``values`` is either one scalar used everywhere or a per-coordinate map.
    """
    out = [[0] * n for _ in range(n)]
    for x in coords:
        i, j = x
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"coordinate {x} outside the {n}x{n} matrix")
        out[i - 1][j - 1] = values[x] if isinstance(values, Mapping) else values
    return ExactMatrix(tuple(tuple(r) for r in out))


class SeededSampler:
    """Deterministic integer-valued points for generic-rank arguments."""

    def __init__(self, seed: int = 0, bound: int = 100):
        if bound < 1:
            raise ValueError("bound must be positive")
        self.seed = seed
        self.bound = bound
        self._rng = random.Random(seed)

    def value(self) -> Fraction:
        return Fraction(self._rng.randint(-self.bound, self.bound))

    def nonzero(self) -> Fraction:
        while True:
            x = self.value()
            if x:
                return x

    def point(self, coords: Iterable[Coord]) -> dict[Coord, Fraction]:
        return {x: self.value() for x in sorted(coords)}

    def spawn(self, salt: int) -> SeededSampler:
        return SeededSampler(self.seed * 1_000_003 + salt, self.bound)
