import random

import pytest

from canonical_section.core import Composition, compositions
from canonical_section.section import build_section
from canonical_section.vs import (
    VSPair,
    build_extended,
    find_quadruplets,
    find_vs_pairs,
    is_bad,
    raw_bad_pairs,
)


def quads(state):
    return {q.quad: q for q in find_quadruplets(state)}


def test_pair_excluded_by_star(section):
    s = section(1, 2, 2, 1)
    assert VSPair((2, 4), (5, 6)) not in find_vs_pairs(s)
    assert build_extended(s).adjoined == ()


def test_pair_with_levi_connector_found(section):
    pairs = find_vs_pairs(section(1, 2, 1, 1, 2, 2, 3))
    assert VSPair((3, 4), (9, 11)) in pairs


def test_no_pairs_without_ones(section):
    assert find_vs_pairs(section(5)) == []


def test_quadruplets_of_the_worked_example(section):
    s = section(3, 2, 1, 1, 2, 3)
    q = quads(s)
    assert set(q) == {(4, 6, 7, 8), (4, 6, 9, 11)}
    assert not is_bad(q[(4, 6, 7, 8)], s)
    assert is_bad(q[(4, 6, 9, 11)], s)


def test_quadruplet_recovered_through_levi(section):
    s = section(1, 2, 1, 1, 2, 3)
    q = quads(s)
    assert (3, 4, 7, 9) in q
    assert not is_bad(q[(3, 4, 7, 9)], s)


def test_no_quadruplets_for_two_by_two(section):
    assert quads(section(2, 2)) == {}
    assert build_extended(section(2, 2, 2)).adjoined == ()


def test_extended_element(section):
    rep = build_extended(section(3, 2, 1, 1, 2, 3))
    assert rep.adjoined == ((6, 11),)
    assert [q.quad for q in rep.bad] == [(4, 6, 9, 11)]
    assert (6, 11) in rep.supp_evs
    assert rep.to_json() == {
        "quadruplets": [[4, 6, 7, 8], [4, 6, 9, 11]],
        "bad": [[4, 6, 9, 11]],
        "adjoined": [[6, 11]],
    }


def test_cycle_of_recoveries(section):
    # (1,2),(5,6) and (2,4),(6,7) can only recover each other: the quadruplet stays bad
    s = section(1, 2, 2, 1, 2)
    rep = build_extended(s)
    assert rep.adjoined == ((4, 7),)
    assert not is_bad(VSPair((1, 2), (5, 6)), s)


def test_order_independence():
    for n in range(2, 9):
        for c in compositions(n):
            s = build_section(c)
            base = build_extended(s)
            rng = random.Random(hash(c.parts))
            for _ in range(2):
                other = build_extended(s, order=lambda g: rng.sample(g, len(g)))
                assert other == base


@pytest.mark.parametrize("n", range(2, 9))
def test_bad_pairs_have_star_connectors(n):
    for c in compositions(n):
        s = build_section(c)
        rep = build_extended(s)
        v = set(s.supp_v)
        assert all(p.connector in v for p in raw_bad_pairs(s, rep)), c
        assert {q.quad for q in rep.bad} <= {q.quad for q in rep.quadruplets}
