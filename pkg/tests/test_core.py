import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from balance_lab import core
from balance_lab.core import (GroundSet, NotAccessible, NotUnionClosed, MissingEmptySet,
                              GroundNotCovered, SetFamily, chain_antimatroid, from_sets,
                              join, power_set)
from balance_lab.orderings import classify_swap, from_antimatroid


def sets_of(a):
    return {frozenset(a.ground.members(m)) for m in a.masks}


def fs(*sets):
    return {frozenset(s) for s in sets}


# -- validation --------------------------------------------------------------------

def test_power_set_is_valid():
    a = from_sets("ab", ["", "a", "b", "ab"])
    assert len(a) == 4 and a == power_set("ab")


def test_chain_family_is_valid():
    assert from_sets("ab", ["", "a", "ab"]) == chain_antimatroid("ab")


def test_missing_union_is_reported_with_the_pair():
    with pytest.raises(NotUnionClosed) as err:
        from_sets("ab", ["", "a", "b"])
    assert (err.value.first, err.value.second) == (0b01, 0b10)


def test_missing_empty_set():
    with pytest.raises(MissingEmptySet):
        from_sets("a", ["a"])


def test_inaccessible_member_is_reported():
    with pytest.raises(NotAccessible) as err:
        from_sets("ab", ["", "ab"])
    assert err.value.mask == 0b11


def test_ground_must_be_covered():
    with pytest.raises(GroundNotCovered):
        from_sets("abc", ["", "a", "b", "ab"])


def test_poset_family_is_valid(poset_abc):
    assert len(poset_abc) == 6


def test_first_failure_in_mask_order():
    # {a,b,c} is inaccessible, but the earlier union {a} | {b} is found first.
    with pytest.raises(NotUnionClosed):
        from_sets("abc", ["", "a", "b", "abc"])


def test_ground_set_limits():
    with pytest.raises(ValueError):
        GroundSet(tuple(str(i) for i in range(21)))
    with pytest.raises(ValueError):
        GroundSet(("a", "a"))
    assert GroundSet.from_elements(["10", "2", "b", "a"]).labels == ("2", "10", "a", "b")


def test_set_family_dedupes_and_sorts():
    fam = SetFamily.from_sets("ab", ["ab", "", "a", "a"])
    assert fam.sets == (0, 1, 3)
    with pytest.raises(ValueError):
        SetFamily(GroundSet.of_size(2), (0, 4))


def test_validate_agrees_with_oracle_on_random_families():
    rng = random.Random(11)
    for _ in range(400):
        n = rng.randint(1, 4)
        masks = {0} | {rng.randrange(1 << n) for _ in range(rng.randint(0, 10))}
        masks.add((1 << n) - 1)
        fam = SetFamily(GroundSet.of_size(n), tuple(masks))
        try:
            core.validate(fam)
            ok = True
        except core.AntimatroidError:
            ok = False
        assert ok == oracles.is_antimatroid(masks, n)


# -- chains and joins -----------------------------------------------------------------

@pytest.mark.parametrize("word, expected", [
    ("ab", fs("", "a", "ab")),
    ("a", fs("", "a")),
    ("cab", fs("", "c", "ac", "abc")),
])
def test_chain_antimatroid(word, expected):
    assert sets_of(chain_antimatroid(word)) == expected


def test_chain_rejects_duplicates():
    with pytest.raises(ValueError):
        chain_antimatroid("aba")


def test_join_of_opposite_chains_is_power_set():
    j = join(chain_antimatroid("ab"), chain_antimatroid("ba"))
    assert j == power_set("ab")


def test_join_is_idempotent(poset_abc):
    assert join(poset_abc, poset_abc) == poset_abc


def test_join_of_disjoint_chains_has_nine_sets():
    j = join(chain_antimatroid("ab"), chain_antimatroid("cd"))
    assert len(j) == 9 and j.ground.labels == ("a", "b", "c", "d")


def test_join_commutative_and_associative():
    rng = random.Random(3)
    for _ in range(40):
        words = ["".join(rng.sample("abcde", 5)) for _ in range(3)]
        a, b, c = (chain_antimatroid(w, GroundSet(tuple("abcde"))) for w in words)
        assert join(a, b).members == join(b, a).members
        assert join(join(a, b), c).members == join(a, join(b, c)).members


# -- counting ---------------------------------------------------------------------------

def test_counts(poset_abc):
    assert core.count_basic_words(power_set(3)) == 6
    assert core.count_basic_words(chain_antimatroid("abc")) == 1
    assert core.count_basic_words(poset_abc) == 3


def test_enumeration_order(poset_abc):
    ground = poset_abc.ground
    assert [ground.word(w) for w in core.enumerate_basic_words(poset_abc)] == \
        ["abc", "acb", "cab"]
    assert [ground.word(w) for w in core.enumerate_basic_words(power_set("ab"))] == \
        ["ab", "ba"]
    c = chain_antimatroid("ab")
    assert [c.ground.word(w) for w in core.enumerate_basic_words(c)] == ["ab"]


def test_pair_probabilities(poset_abc):
    assert core.pair_probability(power_set("ab"), "a", "b") == Fraction(1, 2)
    assert core.pair_probability(chain_antimatroid("ab"), "a", "b") == 1
    assert core.pair_probability(poset_abc, "c", "b") == Fraction(2, 3)
    with pytest.raises(ValueError):
        core.pair_probability(poset_abc, "a", "a")


def test_balance_examples(poset_abc):
    assert core.balance(chain_antimatroid("abc"))[0] == 0
    assert core.balance(power_set("ab")) == (Fraction(1, 2), (0, 1))
    assert core.balance(poset_abc) == (Fraction(1, 3), (0, 2))
    assert core.balance(power_set(1)) == (0, None)


def test_dp_matches_brute_force_up_to_five(small_antimatroids, five_element_antimatroids):
    rng = random.Random(0)
    sample = small_antimatroids + rng.sample(five_element_antimatroids, 1500)
    for a in sample:
        words = oracles.basic_words(a.masks, a.n)
        assert core.count_basic_words(a) == len(words)
        assert list(core.enumerate_basic_words(a)) == words
        for x, y in itertools.permutations(range(a.n), 2):
            p = core.pair_probability(a, x, y)
            assert p == oracles.before_probability(words, x, y)
            assert p + core.pair_probability(a, y, x) == 1
        assert core.balance(a)[0] == oracles.balance(words, a.n)
        assert (core.balance(a)[0] == 0) == (len(words) == 1)


def test_balance_tie_break_is_smallest_pair():
    # every pair of the power set attains 1/2; (0, 1) must win
    assert core.balance(power_set(4))[1] == (0, 1)


# -- paths, height, dimension -------------------------------------------------------------

def test_paths_examples(poset_abc):
    assert [m for m, _ in core.paths(power_set(3))] == [1, 2, 4]
    assert [m for m, _ in core.paths(chain_antimatroid("abc"))] == [1, 3, 7]
    assert {(frozenset(poset_abc.ground.members(m)), poset_abc.ground.labels[e])
            for m, e in core.paths(poset_abc)} == {
        (frozenset("a"), "a"), (frozenset("c"), "c"), (frozenset("ab"), "b")}


def test_height_and_dimension_examples(poset_abc):
    assert core.height(power_set(4)) == 1
    assert core.height(chain_antimatroid("abc")) == 3
    assert core.height(poset_abc) == 2
    assert core.convex_dimension(chain_antimatroid("abc")) == 1
    assert core.convex_dimension(power_set(3)) == 3
    assert core.convex_dimension(join(chain_antimatroid("ab"), chain_antimatroid("ba"))) == 2


def test_path_facts_against_oracle(small_antimatroids):
    for a in small_antimatroids:
        ps = [m for m, _ in core.paths(a)]
        assert sorted(ps) == sorted(oracles.paths(a.masks, a.n))
        for s in a.masks:
            assert s == _union(p for p in ps if p & s == p)
        width, height = oracles.width_and_height(a.masks, a.n)
        assert core.convex_dimension(a) == width
        assert core.height(a) == height
        cover = core.path_chain_cover(a)
        assert sorted(p for c in cover for p in c) == sorted(ps)
        for chain in cover:
            assert all(p & q == p for p, q in zip(chain, chain[1:]))


def _union(masks):
    out = 0
    for m in masks:
        out |= m
    return out


def test_path_poset_order_is_inclusion(poset_abc):
    pp = core.path_poset(poset_abc)
    idx = {m: i for i, (m, _) in enumerate(pp.paths)}
    assert pp.less(idx[0b001], idx[0b011])
    assert not pp.less(idx[0b100], idx[0b011])


# -- roles -----------------------------------------------------------------------------

def test_roles_examples(poset_abc):
    assert all(r.independent for r in core.element_roles(power_set(3)))
    r = core.element_roles(poset_abc)
    assert (r[0].initial, r[0].final, r[0].independent) == (True, False, False)
    assert (r[1].initial, r[1].final, r[1].independent) == (False, True, False)
    assert r[2].independent
    r = core.element_roles(chain_antimatroid("ab"))
    assert r[0].initial and not r[0].final and r[1].final and not r[1].initial


def test_roles_agree_with_swaps(small_antimatroids, five_element_antimatroids):
    for a in small_antimatroids + five_element_antimatroids[::7]:
        roles = core.element_roles(a)
        flags = classify_swap(from_antimatroid(a))
        for r, f in zip(roles, flags):
            assert (r.initial, r.final, r.independent) == (f.initial, f.final, f.independent)


@settings(max_examples=200)
@given(st.integers(2, 7), st.integers(1, 4), st.randoms(use_true_random=False))
def test_random_joins_are_antimatroids(n, chains, rng):
    masks = oracles.random_chain_join(rng, n, chains)
    a = core.validate(SetFamily(GroundSet.of_size(n), tuple(masks)))
    assert core.convex_dimension(a) <= chains
    r = core.element_roles(a)
    assert all(x.independent == (x.initial and x.final) for x in r)


def test_intersection_closure_detects_posets(poset_abc):
    assert core.is_intersection_closed(poset_abc)
    # c is reachable after a or after b, which no lower-set family allows
    a = join(chain_antimatroid("ac"), chain_antimatroid("bc"))
    assert not core.is_intersection_closed(a)
