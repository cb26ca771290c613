"""Certificates imply balance, on random joins and constructions."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

import suites
from balance_lab import core, witnesses
from balance_lab.orderings import (OrderingSet, adjacent_transposition_family,
                                   classify_swap, example_unbalanced_five, from_antimatroid)

THIRD = Fraction(1, 3)


@settings(max_examples=150)
@given(st.integers(2, 7), st.integers(1, 4), st.randoms(use_true_random=False))
def test_random_joins(n, chains, rng):
    a = suites.random_antimatroid(rng, n, chains)
    suites.certificate_checks(a)


@settings(max_examples=100)
@given(st.integers(2, 7), st.floats(0.05, 0.6), st.randoms(use_true_random=False))
def test_random_posets(n, p, rng):
    a = suites.random_poset_antimatroid(rng, n, p)
    suites.certificate_checks(a)
    assert core.convex_dimension(a) <= n


@settings(max_examples=60)
@given(st.integers(7, 9), st.randoms(use_true_random=False))
def test_height_two_has_many_initial_or_final(n, rng):
    a = suites.height_two(rng, n)
    assert core.height(a) <= 2
    if core.count_basic_words(a) > 1:
        assert witnesses.find_many_initial_final(a) is not None
        assert core.balance(a)[0] >= THIRD


@settings(max_examples=200)
@given(st.integers(3, 6).flatmap(
    lambda n: st.lists(st.permutations(range(n)), min_size=2, max_size=10)))
def test_independent_element_in_any_ordering_set(words):
    o = OrderingSet(core.GroundSet.of_size(len(words[0])), tuple(sorted(set(map(tuple, words)))))
    if len(o) > 1 and any(f.independent for f in classify_swap(o)):
        from balance_lab.orderings import balance
        assert balance(o)[0] >= THIRD


def test_known_unbalanced_sets_have_no_certificate():
    for o in (example_unbalanced_five(), adjacent_transposition_family(range(5))):
        assert not any(f.independent for f in classify_swap(o))
        assert witnesses.search_double_ladder_orderings(o) is None


def test_random_certificates_up_to_nine():
    tags = suites.check_random_certificates(200, seed=11)
    assert tags.get("double-ladder", 0) > 0 and tags.get("many-initial-final", 0) > 0


def test_small_labelled_sweep(small_antimatroids):
    tags = suites.check_exhaustive(small_antimatroids)
    assert tags["exhaustive-small"] > 0


def test_chain_certificate_is_exact():
    a = core.chain_antimatroid("abcd")
    assert witnesses.certify(a).tags == ["chain", "exhaustive-small"]
    assert len(from_antimatroid(a)) == 1
