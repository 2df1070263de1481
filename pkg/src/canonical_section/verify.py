"""Exact verification of the section, the VS extension and the orbital data.

Elements of the nilradical are handled as sparse maps ``{(i, j): value}``;
:class:`~canonical_section.exact.ExactMatrix` is accepted wherever a matrix is
expected.  Dimensions are ranks over the rationals.  Generic-point arguments
use integer points drawn from a :class:`SeededSampler`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

from .core import Composition, Coord, NeighbourPair, neighbouring_pairs
from .exact import ExactMatrix, SeededSampler, det, realize, solve_vandermonde, sparse_rank
from .orbital import excluded_sets, pair_subspaces, u_intersection
from .section import (
    ONE,
    STAR,
    SectionError,
    SectionState,
    block_via_map,
    build_section,
    check_state,
    composition_map,
)
from .vs import VSReport, build_extended, raw_bad_pairs

Sparse = Mapping[Coord, Fraction | int]


class DegreeBoundError(ArithmeticError):
    """The truncated minor has a term above the predicted degree."""


class NotNilpotentError(ValueError):
    pass


def _sparse(x) -> dict[Coord, Fraction | int]:
    if isinstance(x, ExactMatrix):
        return x.support()
    return {k: v for k, v in x.items() if v}


# --- adjoint action -------------------------------------------------------


def acting_basis(c: Composition, algebra: str = "parabolic") -> list[Coord]:
    """Matrix units spanning the Borel or the parabolic, Cartan included."""
    col = c.column_of
    n = c.n
    if algebra == "borel":
        return [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]
    if algebra == "parabolic":
        return [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if col[a] <= col[b]]
    raise ValueError(f"unknown algebra {algebra!r}")


def bracket(a: int, b: int, x: Sparse) -> dict[Coord, Fraction | int]:
    """[E_ab, x] as a sparse map."""
    out: dict[Coord, Fraction | int] = {}
    for (i, j), v in x.items():
        if i == b:
            out[(a, j)] = out.get((a, j), 0) + v
        if j == a:
            out[(i, b)] = out.get((i, b), 0) - v
    return {k: v for k, v in out.items() if v}


def adjoint_vectors(c: Composition, x: Sparse, algebra: str = "parabolic") -> list[dict]:
    x = _sparse(x)
    return [bracket(a, b, x) for a, b in acting_basis(c, algebra)]


def adjoint_span_dim(x, extra: Iterable[Coord], c: Composition, algebra: str = "parabolic") -> int:
    """dim(algebra . x + span of the coordinate vectors in ``extra``)."""
    vecs = adjoint_vectors(c, x, algebra)
    vecs.extend({q: 1} for q in extra)
    return sparse_rank(vecs)


def pseudo_regular_check(state: SectionState) -> bool:
    """Whether the sum of p.e_i over the Ones of e, plus V, fills the nilradical."""
    c = state.composition
    vecs = []
    for x in state.supp_e:
        vecs.extend(adjoint_vectors(c, {x: 1}))
    vecs.extend({q: 1} for q in state.supp_v)
    return sparse_rank(vecs) == c.dim_nilradical


def rook_squares(c: Composition, x: Coord) -> set[Coord]:
    """Squares of the nilradical a rook standing on ``x`` reaches (itself included)."""
    r, s = x
    col = c.column_of
    out = {x}
    for a in range(1, c.n + 1):
        if a < r or (a > r and col[a] == col[r]):
            out.add((a, s))
        if a > s or (a < s and col[a] == col[s]):
            out.add((r, a))
    return {(i, j) for i, j in out if col[i] < col[j]}


def rook_coverage(state: SectionState) -> bool:
    c = state.composition
    covered = set()
    for x in state.supp_e:
        covered |= rook_squares(c, x)
    covered |= set(state.supp_v)
    return covered >= set(c.nilradical)


# --- Jordan types ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts if p), reverse=True))
        if any(p < 0 for p in parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def dual(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def jordan_type(x: ExactMatrix) -> Partition:
    n = x.n
    ranks = [n]
    power = ExactMatrix.identity(n)
    for _ in range(n):
        power = power @ x
        ranks.append(power.rank())
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    ranks += [0, 0]
    parts = []
    for b in range(1, len(ranks) - 1):
        parts.extend([b] * (ranks[b - 1] - 2 * ranks[b] + ranks[b + 1]))
    return Partition(tuple(parts))


def orbit_half_dim(p: Partition) -> int:
    n = p.n
    return n * (n - 1) // 2 - sum(comb(m, 2) for m in p.dual().parts)


# --- Benlolo-Sanderson invariants -----------------------------------------


def bs_degree(c: Composition, p: NeighbourPair) -> int:
    return sum(min(c[i], p.s) for i in range(p.v, p.v2))


def bs_coefficients(c: Composition, p: NeighbourPair, x) -> list[Fraction]:
    """Coefficients in t of the truncated minor of t x + Id."""
    x = _sparse(x)
    a, b = p.span
    s = p.s
    rows = range(a, b - s + 1)
    cols = range(a + s, b + 1)
    size = len(rows)
    X = [[x.get((i, j), 0) for j in cols] for i in rows]
    I = [[1 if i == j else 0 for j in cols] for i in rows]
    nodes = list(range(size + 1))
    vals = [det([[t * X[r][q] + I[r][q] for q in range(size)] for r in range(size)]) for t in nodes]
    return solve_vandermonde(nodes, vals)


def bs_eval(c: Composition, p: NeighbourPair, x) -> Fraction:
    """Leading term of the truncated minor evaluated at x."""
    coeffs = bs_coefficients(c, p, x)
    d = bs_degree(c, p)
    if any(coeffs[d + 1 :]):
        raise DegreeBoundError(f"{c} {p}: minor has degree above {d}")
    return coeffs[d] if d < len(coeffs) else Fraction(0)


def nilfibre_member(c: Composition, x) -> bool:
    return all(bs_eval(c, p, x) == 0 for p in neighbouring_pairs(c))


# --- generic ranks --------------------------------------------------------


def saturation_dim(
    W: Iterable[Coord],
    algebra: str,
    sampler: SeededSampler,
    trials: int = 5,
    c: Optional[Composition] = None,
) -> tuple[int, Optional[int]]:
    """Largest dim(algebra . x + W) over sampled x in W, with the winning trial."""
    W = sorted(W)
    if not W:
        return 0, None
    if c is None:
        raise ValueError("a composition is needed for a non-empty subspace")
    best, witness = -1, None
    for trial in range(trials):
        x = sampler.point(W)
        d = adjoint_span_dim(x, W, c, algebra)
        if d > best:
            best, witness = d, trial
    return best, witness


def _section_point(state: SectionState, rep: Optional[VSReport], sampler: SeededSampler) -> dict:
    x: dict = {q: 1 for q in (rep.supp_evs if rep is not None else state.supp_e)}
    for q, v in sampler.point(state.supp_v).items():
        x[q] = v
    return x


def jacobian_matrix(c: Composition, state: SectionState, x: Sparse) -> list[list[Fraction]]:
    """Partial derivatives of each invariant along each V coordinate at x.

    Each invariant is affine in every single coordinate, so a unit step gives
    the partial derivative exactly.
    """
    pairs = neighbouring_pairs(c)
    base = [bs_eval(c, p, x) for p in pairs]
    rows = [[Fraction(0)] * len(state.supp_v) for _ in pairs]
    for b, q in enumerate(state.supp_v):
        y = dict(x)
        y[q] = y.get(q, 0) + 1
        for a, p in enumerate(pairs):
            rows[a][b] = bs_eval(c, p, y) - base[a]
    return rows


def jacobian_nonsingular(
    c: Composition,
    state: SectionState,
    use_evs: bool,
    sampler: SeededSampler,
    report: Optional[VSReport] = None,
    retries: int = 3,
) -> bool:
    g = len(neighbouring_pairs(c))
    if len(state.supp_v) != g:
        raise SectionError(f"{c}: |supp V| = {len(state.supp_v)} but g = {g}")
    if g == 0:
        return True
    if use_evs and report is None:
        report = build_extended(state)
    for attempt in range(retries + 1):
        x = _section_point(state, report if use_evs else None, sampler.spawn(attempt))
        if det(jacobian_matrix(c, state, x)) != 0:
            return True
    return False


def phi_agreement(c: Composition, state: SectionState, report: VSReport, sampler: SeededSampler, trials: int = 5) -> bool:
    pairs = neighbouring_pairs(c)
    if not report.adjoined:
        return True
    for trial in range(trials):
        v = sampler.point(state.supp_v)
        xe = {q: 1 for q in state.supp_e}
        xvs = {q: 1 for q in report.supp_evs}
        xe.update(v)
        xvs.update(v)
        for p in pairs:
            if bs_eval(c, p, xe) != bs_eval(c, p, xvs):
                return False
    return True


@dataclass(frozen=True)
class Regularity:
    dim_m: int
    g: int
    dim_pe: int
    dim_pevs: int

    @property
    def e_regular(self) -> bool:
        return self.dim_pe == self.dim_m - self.g

    @property
    def evs_regular(self) -> bool:
        return self.dim_pevs == self.dim_m - self.g

    @property
    def verdict(self) -> str:
        if self.e_regular:
            return "regular"
        if self.evs_regular:
            return "evs-regular"
        return "quasi-regular-only"


def regularity_check(state: SectionState, report: VSReport) -> Regularity:
    c = state.composition
    return Regularity(
        dim_m=c.dim_nilradical,
        g=len(neighbouring_pairs(c)),
        dim_pe=adjoint_span_dim({q: 1 for q in state.supp_e}, (), c),
        dim_pevs=adjoint_span_dim({q: 1 for q in report.supp_evs}, (), c),
    )


# --- the full suite -------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    expected: object = None
    got: object = None
    seed: Optional[int] = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "expected": _plain(self.expected), "got": _plain(self.got), "seed": self.seed}


def _plain(v):
    if isinstance(v, (list, tuple, set, frozenset)):
        return [_plain(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


@dataclass
class VerificationReport:
    composition: Composition
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [ch for ch in self.checks if not ch.passed]

    def add(self, name, passed, expected=None, got=None, seed=None) -> None:
        self.checks.append(CheckResult(name, bool(passed), expected, got, seed))

    def to_json(self) -> dict:
        return {"composition": list(self.composition.parts), "pass": self.passed, "checks": [ch.to_json() for ch in self.checks]}


ALL_CHECKS = (
    "invariants",
    "supp_v_is_g",
    "restriction",
    "map_agreement",
    "stabilization",
    "column_existence",
    "first_columns",
    "nilfibre_e",
    "nilfibre_evs",
    "pseudo_regular",
    "rook_agrees",
    "bad_pairs",
    "excluded",
    "star_neighbour",
    "evs_in_u",
    "u_vanishing",
    "saturation_u",
    "saturation_evs",
    "jacobian",
    "phi_agreement",
)


def column_existence_witnesses(state: SectionState) -> list[Coord]:
    """Occupied coordinates with no column of height >= t - 1 from C_(i) up to before C_(j)."""
    c = state.composition
    bad = []
    for i, j in state.entries:
        c1 = c.column_of[i]
        t, c2 = c.box(j)
        if not any(c[col] >= t - 1 for col in range(c1, c2)):
            bad.append((i, j))
    return sorted(bad)


def first_columns_ok(state: SectionState) -> bool:
    c = state.composition
    if c.k < 2:
        return True
    S, s = c.drop_last(), c.parts[-1]
    block = state.last_block()
    m = min(max(S.parts), s - 1)
    rows = []
    for t in range(1, m + 1):
        ones = [r for r, l in block.get(t, {}).items() if l is ONE]
        if len(ones) != 1:
            return False
        rows.append(ones[0])
    return len(set(rows)) == len(rows)


def stabilization_ok(c: Composition) -> bool:
    if c.k < 2:
        return True
    s = c.parts[-1]
    now = build_section(c).last_block()
    nxt = build_section(Composition(c.parts[:-1] + (s + 1,))).last_block()
    for t in range(1, s + 1):
        if bool(now.get(t)) != bool(nxt.get(t)):
            return False
    if s > max(c.parts[:-1]):
        return all(now.get(t, {}) == nxt.get(t, {}) for t in range(1, s + 1)) and not nxt.get(s + 1)
    return True


def verify_composition(
    c: Composition,
    seed: int = 0,
    checks: Optional[Sequence[str]] = None,
    vanishing_points: int = 20,
    trials: int = 5,
) -> VerificationReport:
    """Run the selected checks (all by default) on one composition."""
    selected = set(ALL_CHECKS if checks is None else checks)
    unknown = selected - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    rep = VerificationReport(c)
    try:
        _run_checks(c, seed, selected, vanishing_points, trials, rep)
    except DegreeBoundError as exc:
        rep.add("degree_bound", False, "no term above the degree", str(exc), seed)
    except (SectionError, AssertionError) as exc:
        rep.add("exception", False, None, f"{type(exc).__name__}: {exc}", seed)
    return rep


def _run_checks(c, seed, selected, vanishing_points, trials, rep):
    state = build_section(c)
    pairs = neighbouring_pairs(c)
    g = len(pairs)
    dim_m = c.dim_nilradical
    want = dim_m - g
    sampler = SeededSampler(seed)
    report = build_extended(state)

    if "invariants" in selected:
        try:
            check_state(state)
            rep.add("invariants", True)
        except SectionError as exc:
            rep.add("invariants", False, None, str(exc))
    if "supp_v_is_g" in selected:
        rep.add("supp_v_is_g", len(state.supp_v) == g, g, len(state.supp_v))
    if "restriction" in selected and c.k >= 2:
        rep.add("restriction", state.restrict() == build_section(c.drop_last()))
    if "map_agreement" in selected and c.k >= 2:
        S, s = c.drop_last(), c.parts[-1]
        got = block_via_map(composition_map(S), s)
        have = state.last_block()
        rep.add("map_agreement", got == have, _block_text(have), _block_text(got))
    if "stabilization" in selected:
        rep.add("stabilization", stabilization_ok(c))
    if "column_existence" in selected:
        bad = column_existence_witnesses(state)
        rep.add("column_existence", not bad, [], bad)
    if "first_columns" in selected:
        rep.add("first_columns", first_columns_ok(state))
    if "nilfibre_e" in selected:
        rep.add("nilfibre_e", nilfibre_member(c, {q: 1 for q in state.supp_e}))
    if "nilfibre_evs" in selected:
        ok = True
        for t in range(5):
            pt = sampler.spawn(100 + t).point(report.supp_evs)
            ok = ok and nilfibre_member(c, pt)
        rep.add("nilfibre_evs", ok, seed=seed)
    if "pseudo_regular" in selected or "rook_agrees" in selected:
        pr = pseudo_regular_check(state)
        rook = rook_coverage(state)
        if "pseudo_regular" in selected:
            rep.add("pseudo_regular", pr, True, pr)
        if "rook_agrees" in selected:
            rep.add("rook_agrees", pr == rook, pr, rook)
    if "bad_pairs" in selected:
        v = set(state.supp_v)
        raw = raw_bad_pairs(state, report)
        stray = [p.quad for p in raw if p.connector not in v]
        rep.add("bad_pairs", not stray and len(report.bad) <= g, [], stray)
    ex = None
    if {"excluded", "star_neighbour", "evs_in_u"} & selected:
        ex = excluded_sets(c, state)
    if "excluded" in selected:
        rep.add("excluded", not ex.violations, [], list(ex.violations))
    if "star_neighbour" in selected:
        e = state.supp_e
        bad = [(j, l) for (j, k) in ex.Y for (k2, l) in e if k2 == k and (j, l) in ex.X]
        rep.add("star_neighbour", not bad, [], bad)
    if "evs_in_u" in selected:
        u = u_intersection(c)
        stray = sorted(set(report.supp_evs) - u)
        rep.add("evs_in_u", not stray, [], stray)
    if "u_vanishing" in selected:
        bad = []
        for p, _, u in pair_subspaces(c):
            smp = sampler.spawn(200 + p.v * 31 + p.v2)
            for _ in range(vanishing_points):
                if bs_eval(c, p, smp.point(u)) != 0:
                    bad.append(str(p))
                    break
        rep.add("u_vanishing", not bad, [], bad, seed)
    if "saturation_u" in selected:
        u = u_intersection(c)
        d1, _ = saturation_dim(u, "borel", sampler.spawn(300), trials, c)
        d2, _ = saturation_dim(u, "borel", sampler.spawn(301), trials, c)
        rep.add("saturation_u", d1 == d2 == want, want, [d1, d2], seed)
    if "saturation_evs" in selected:
        d1, _ = saturation_dim(report.supp_evs, "parabolic", sampler.spawn(400), trials, c)
        d2, _ = saturation_dim(report.supp_evs, "parabolic", sampler.spawn(401), trials, c)
        rep.add("saturation_evs", d1 == d2 == want, want, [d1, d2], seed)
    if "jacobian" in selected:
        je = jacobian_nonsingular(c, state, False, sampler.spawn(500))
        jv = jacobian_nonsingular(c, state, True, sampler.spawn(501), report)
        rep.add("jacobian", je and jv, [True, True], [je, jv], seed)
    if "phi_agreement" in selected:
        ok = phi_agreement(c, state, report, sampler.spawn(600), trials)
        rep.add("phi_agreement", ok, True, ok, seed)


def _block_text(block) -> str:
    return ";".join(f"{t}:" + ",".join(f"{r}{l}" for r, l in sorted(col.items())) for t, col in sorted(block.items()))
