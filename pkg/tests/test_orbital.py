import pytest

from canonical_section.core import Composition, NeighbourPair, build_tableau, compositions, neighbouring_pairs
from canonical_section.orbital import (
    OrbitalError,
    PermutationWord,
    excluded_sets,
    modified_tableau,
    orbital_json,
    u_from_word,
    u_intersection,
    u_pair,
    weyl_word,
)
from canonical_section.section import build_section
from canonical_section.vs import build_extended


def _word(parts, index=0):
    c = Composition(parts)
    p = neighbouring_pairs(c)[index]
    return weyl_word(modified_tableau(build_tableau(c), p)).word


def test_modified_tableau_examples():
    assert _word((1, 1)) == (2, 1)
    assert _word((1, 1, 1)) == (2, 1, 3)
    assert _word((2, 2)) == (4, 2, 1, 3)


def test_chain_through_taller_column():
    # (1,2,1): m = 4 takes the place below row 1 of C2, whose lower part moves into C1
    w = _word((1, 2, 1))
    assert w == (3, 1, 4, 2)


def test_identity_word():
    c = Composition((1, 1, 1, 1))
    assert weyl_word(build_tableau(c)).word == (1, 2, 3, 4)
    assert u_from_word(PermutationWord((1, 2, 3))) == {(1, 2), (1, 3), (2, 3)}


def test_u_from_word():
    assert u_from_word(PermutationWord((2, 1))) == frozenset()
    assert u_from_word(PermutationWord((2, 1, 3))) == {(1, 3), (2, 3)}


def test_bad_words_and_pairs():
    with pytest.raises(OrbitalError):
        PermutationWord((1, 1, 2))
    T = build_tableau(Composition((2, 2)))
    with pytest.raises(OrbitalError):
        modified_tableau(T, NeighbourPair(1, 2, 1, (1, 4)))
    with pytest.raises(OrbitalError):
        u_pair(Composition((2, 3)), NeighbourPair(1, 2, 2, (1, 5)))


def test_u_intersection_examples():
    c = Composition((2, 3, 1))
    assert u_intersection(c) == frozenset(c.nilradical)
    assert u_intersection(Composition((1, 1))) == frozenset()
    s = build_section(Composition((1, 2, 2, 1)))
    assert set(build_extended(s).supp_evs) <= u_intersection(s.composition)


def test_excluded_sets_small_example():
    c = Composition((1, 2, 2, 1))
    ex = excluded_sets(c, build_section(c))
    assert ex.Y == {(3, 5), (4, 6)}
    assert ex.Z == ex.X - ex.Y
    assert not ex.violations


def test_excluded_worked_example():
    c = Composition((3, 2, 1, 1, 2, 3))
    ex = excluded_sets(c, build_section(c))
    assert (4, 9) in ex.X and (6, 11) not in ex.X


@pytest.mark.parametrize("n", range(2, 8))
def test_u_inside_nilradical(n):
    for c in compositions(n):
        m = frozenset(c.nilradical)
        for p in neighbouring_pairs(c):
            assert u_pair(c, p) <= m


def test_orbital_json_shape():
    c = Composition((2, 2))
    out = orbital_json(c, build_section(c))
    assert out["pairs"] == [{"v": 1, "v2": 2, "s": 2, "word": [4, 2, 1, 3], "u": [[1, 3], [2, 3]]}]
    assert out["Y"] == [[2, 4]]
    assert set(out) == {"pairs", "u_intersection", "X", "Y", "Z"}
