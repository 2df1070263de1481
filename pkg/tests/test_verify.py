import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from canonical_section.core import Composition, build_tableau, compositions, neighbouring_pairs
from canonical_section.exact import ExactMatrix, SeededSampler, det, realize
from canonical_section.orbital import u_intersection
from canonical_section.section import build_section
from canonical_section.verify import (
    ALL_CHECKS,
    DegreeBoundError,
    NotNilpotentError,
    Partition,
    adjoint_span_dim,
    bs_degree,
    bs_eval,
    jacobian_matrix,
    jacobian_nonsingular,
    jordan_type,
    nilfibre_member,
    orbit_half_dim,
    phi_agreement,
    pseudo_regular_check,
    regularity_check,
    rook_coverage,
    saturation_dim,
    verify_composition,
)
from canonical_section.vs import build_extended


def pair(parts, i=0):
    return neighbouring_pairs(Composition(parts))[i]


def leibniz_leading(c, p, x):
    """Coefficient of t^d in the window minor by permutation expansion, t kept symbolic."""
    a, b = p.span
    rows = list(range(a, b - p.s + 1))
    cols = list(range(a + p.s, b + 1))
    total = {}
    for perm in itertools.permutations(range(len(cols))):
        sign = 1
        for i in range(len(perm)):
            for j in range(i + 1, len(perm)):
                if perm[i] > perm[j]:
                    sign = -sign
        poly = {0: Fraction(sign)}
        for r, q in zip(rows, (cols[k] for k in perm)):
            entry = {1: Fraction(x.get((r, q), 0)), 0: Fraction(int(r == q))}
            nxt = {}
            for d1, v1 in poly.items():
                for d2, v2 in entry.items():
                    if v1 and v2:
                        nxt[d1 + d2] = nxt.get(d1 + d2, 0) + v1 * v2
            poly = nxt
            if not poly:
                break
        for d, v in poly.items():
            total[d] = total.get(d, 0) + v
    return total.get(bs_degree(c, p), Fraction(0))


def test_degrees():
    assert bs_degree(Composition((2, 3, 2)), pair((2, 3, 2))) == 4
    assert bs_degree(Composition((1, 1)), pair((1, 1))) == 1
    assert bs_degree(Composition((2, 2)), pair((2, 2))) == 2


def test_two_by_two_invariant():
    c = Composition((2, 2))
    rng = SeededSampler(11)
    for _ in range(10):
        x = rng.point(c.nilradical)
        want = x[1, 3] * x[2, 4] - x[1, 4] * x[2, 3]
        assert bs_eval(c, pair((2, 2)), x) == want


def test_one_by_one_invariant():
    assert bs_eval(Composition((1, 1)), pair((1, 1)), {(1, 2): Fraction(7, 3)}) == Fraction(7, 3)


def test_matrix_input_accepted():
    c = Composition((2, 2))
    x = realize([(1, 3), (2, 4)], 1, 4)
    assert bs_eval(c, pair((2, 2)), x) == 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(1, 2, 2, 1), (2, 1, 2), (1, 1, 1), (2, 3, 2), (1, 2, 1, 1)]), st.integers(0, 10**6))
def test_leading_term_matches_leibniz(parts, seed):
    c = Composition(parts)
    x = SeededSampler(seed, bound=5).point(c.nilradical)
    for p in neighbouring_pairs(c):
        assert bs_eval(c, p, x) == leibniz_leading(c, p, x)


def test_degree_bound_detects_non_nilradical_input():
    c = Composition((2, 3, 2))
    x = SeededSampler(3).point([(i, j) for i in range(1, 8) for j in range(1, 8)])
    with pytest.raises(DegreeBoundError):
        bs_eval(c, pair((2, 3, 2)), x)


def test_nilfibre():
    c = Composition((1, 2, 2, 1))
    e = {q: 1 for q in build_section(c).supp_e}
    for p in neighbouring_pairs(c):
        assert bs_eval(c, p, e) == 0 == leibniz_leading(c, p, e)
    assert nilfibre_member(c, e)
    assert not nilfibre_member(Composition((1, 1)), {(1, 2): 3})


def test_adjoint_span_small_cases():
    c = Composition((1, 2, 2, 1))
    assert adjoint_span_dim({}, (), c) == 0
    s = build_section(c)
    e = {q: 1 for q in s.supp_e}
    assert c.dim_nilradical == 13
    assert adjoint_span_dim(e, (), c) == 13 - 2
    assert adjoint_span_dim(e, s.supp_v, c) == 13


def test_pseudo_regular_and_rooks():
    for parts in [(1, 2, 2, 1), (4,), (2, 3, 2)]:
        s = build_section(Composition(parts))
        assert pseudo_regular_check(s)
        assert rook_coverage(s)


@pytest.mark.parametrize("n", range(2, 8))
def test_rooks_agree_with_rank(n):
    for c in compositions(n):
        s = build_section(c)
        assert pseudo_regular_check(s) == rook_coverage(s) is True


def test_partition():
    p = Partition((3, 3, 5, 1))
    assert p.parts == (5, 3, 3, 1) and p.n == 12
    assert p.dual().parts == (4, 3, 3, 1, 1)
    assert p.dual().dual() == p
    assert str(p) == "(5,3,3,1)"


def test_orbit_half_dims():
    assert orbit_half_dim(Partition((5, 3, 3, 1))) == 54
    assert orbit_half_dim(Partition((5, 4, 2, 1))) == 55
    assert orbit_half_dim(Partition((1,) * 6)) == 0


def test_jordan_types():
    c = Composition((3, 2, 1, 1, 2, 3))
    s = build_section(c)
    rep = build_extended(s)
    assert jordan_type(realize(s.supp_e, 1, 12)).parts == (5, 3, 3, 1)
    assert jordan_type(realize(rep.supp_evs, 1, 12)).parts == (5, 4, 2, 1)
    assert jordan_type(ExactMatrix.zero(4)).parts == (1, 1, 1, 1)
    with pytest.raises(NotNilpotentError):
        jordan_type(ExactMatrix.identity(3))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 2, 1), (3, 2, 1, 1, 2, 3), (1, 2, 2, 1), (2, 3, 2, 1, 2)]), st.randoms(use_true_random=False))
def test_jordan_type_levi_invariant(parts, rnd):
    c = Composition(parts)
    s = build_section(c)
    perm = []
    for col in build_tableau(c).columns:
        block = list(col)
        rnd.shuffle(block)
        perm.extend(block)
    x = realize(s.supp_e, 1, c.n)
    assert jordan_type(x.conjugate_by_permutation(perm)) == jordan_type(x)


def test_saturation_examples():
    c = Composition((1, 2, 2, 1))
    d, trial = saturation_dim(u_intersection(c), "borel", SeededSampler(0), 5, c)
    assert d == 13 - 2 and trial is not None
    assert saturation_dim([], "borel", SeededSampler(0)) == (0, None)
    c = Composition((3, 2, 1, 1, 2, 3))
    rep = build_extended(build_section(c))
    assert saturation_dim(rep.supp_evs, "parabolic", SeededSampler(1), 5, c)[0] == 58 - 3
    with pytest.raises(ValueError):
        saturation_dim([(1, 2)], "borel", SeededSampler(0))


def test_jacobian_one_by_one():
    c = Composition((1, 1))
    s = build_section(c)
    assert s.supp_v == [(1, 2)]
    assert jacobian_matrix(c, s, {(1, 2): 5}) == [[1]]
    assert jacobian_nonsingular(c, s, False, SeededSampler(0))


def test_jacobian_against_leibniz():
    c = Composition((1, 2, 2, 1))
    s = build_section(c)
    x = {q: 1 for q in s.supp_e}
    x.update(SeededSampler(5).point(s.supp_v))
    J = jacobian_matrix(c, s, x)
    pairs = neighbouring_pairs(c)
    oracle = []
    for p in pairs:
        row = []
        for q in s.supp_v:
            y = dict(x)
            y[q] += 1
            row.append(leibniz_leading(c, p, y) - leibniz_leading(c, p, x))
        oracle.append(row)
    assert J == oracle
    assert det(J) != 0
    assert jacobian_nonsingular(c, s, True, SeededSampler(2))


def test_jacobian_vacuous():
    c = Composition((2, 3, 1))
    assert jacobian_nonsingular(c, build_section(c), False, SeededSampler(0))


def test_phi_agreement_and_regularity():
    c = Composition((3, 2, 1, 1, 2, 3))
    s = build_section(c)
    rep = build_extended(s)
    assert phi_agreement(c, s, rep, SeededSampler(4))
    reg = regularity_check(s, rep)
    assert (reg.dim_m, reg.g, reg.dim_pe, reg.dim_pevs) == (58, 3, 54, 55)
    assert not reg.e_regular and reg.evs_regular
    assert reg.verdict == "evs-regular"
    s = build_section(Composition((1, 2, 2, 1)))
    assert regularity_check(s, build_extended(s)).verdict == "regular"
    s = build_section(Composition((4,)))
    assert regularity_check(s, build_extended(s)).e_regular


def test_verify_report():
    rep = verify_composition(Composition((2, 3, 2, 1, 2)), seed=3)
    assert rep.passed
    assert [ch.name for ch in rep.checks] == list(ALL_CHECKS)
    js = rep.to_json()
    assert js["pass"] is True and js["composition"] == [2, 3, 2, 1, 2]
    assert set(js["checks"][0]) == {"name", "pass", "expected", "got", "seed"}


def test_verify_check_selection():
    rep = verify_composition(Composition((2, 2)), checks=["jacobian", "nilfibre_e"])
    assert [ch.name for ch in rep.checks] == ["nilfibre_e", "jacobian"]
    with pytest.raises(ValueError):
        verify_composition(Composition((2, 2)), checks=["nope"])
