"""Sampler families: anchoredness, determinism, laws and invariance."""

from fractions import Fraction

import pytest

from multiorder.groups import get_group
from multiorder.orders import Ordering, pattern_key
from multiorder.samplers import (
    empirical_pattern_counts,
    get_sampler,
    invariance_test,
    pair_swap_pattern_law,
    tail_translate,
    tv_against_law,
)

Z = get_group("Z")


def test_dirac_standard_always_returns_the_natural_order():
    sampler = get_sampler("dirac-standard-Z", Z)
    for seed in (0, 1, 37, 2**40):
        order = sampler.sample(seed)
        assert all(order.element_at(k) == k for k in range(-30, 31))


def test_dirac_requires_integer_group():
    with pytest.raises(ValueError):
        get_sampler("dirac-standard-Z", get_group("Z2"))
    with pytest.raises(ValueError):
        get_sampler("pair-swap-Z", get_group("Z2"))
    with pytest.raises(ValueError):
        get_sampler("unheard-of", Z)


def test_pair_swap_structure():
    sampler = get_sampler("pair-swap-Z", Z)
    for seed in range(20):
        order = sampler.sample(seed)
        assert order.element_at(0) == 0
        span = [order.element_at(k) for k in range(-40, 41)]
        assert len(set(span)) == len(span)
        for k in range(-40, 41):
            assert order.index_of(order.element_at(k)) == k
        # elements pair up: positions {2t, 2t+1} of the underlying listing
        # always hold two consecutive integers
        for k in range(-20, 20):
            a, b = order.element_at(k), order.succ(order.element_at(k))
            assert abs(a - b) <= 3  # blocks are adjacent, swaps local


def test_pair_swap_zero_probability_degenerates_to_standard():
    sampler = get_sampler("pair-swap-Z", Z, swap_probability=0.0)
    for seed in range(25):
        order = sampler.sample(seed)
        assert all(order.element_at(k) == k for k in range(-24, 25))


def test_pair_swap_full_probability_swaps_every_block():
    sampler = get_sampler("pair-swap-Z", Z, swap_probability=1.0)
    order = sampler.sample(3)
    span = [order.element_at(k) for k in range(-10, 11)]
    assert span != list(range(-10, 11))
    assert len(set(span)) == len(span)
    # every block listed upper-then-lower: successors inside a block descend
    assert order.succ(order.element_at(0)) != 1 or order.element_at(-1) == 1


def test_sampling_is_deterministic_in_the_seed():
    for family, group in (
        ("pair-swap-Z", Z),
        ("hierarchical", get_group("Z2")),
    ):
        sampler = get_sampler(family, group)
        a = sampler.sample(123)
        b = sampler.sample(123)
        c = sampler.sample(124)
        assert [a.element_at(k) for k in range(-64, 65)] == [
            b.element_at(k) for k in range(-64, 65)
        ]
        assert [a.element_at(k) for k in range(-64, 65)] != [
            c.element_at(k) for k in range(-64, 65)
        ]


@pytest.mark.parametrize("name", ["Z", "Z2", "Z3", "H3"])
def test_hierarchical_is_an_anchored_bijection(name):
    group = get_group(name)
    sampler = get_sampler("hierarchical", group)
    for seed in range(3):
        order = sampler.sample(seed)
        assert order.element_at(0) == group.identity
        span = [order.element_at(k) for k in range(-256, 257)]
        assert len(set(span)) == len(span)
        for k in (-256, -31, -1, 0, 1, 45, 256):
            assert order.index_of(order.element_at(k)) == k


def test_hierarchical_intervals_are_finite():
    # oracle: explicit interval computation for 100 pseudorandom targets
    group = get_group("Z2")
    order = get_sampler("hierarchical", group).sample(42)
    from multiorder.prf import prf_below

    checked = 0
    for i in range(120):
        g = (prf_below(9, 7, "x", i) - 3, prf_below(9, 7, "y", i) - 3)
        if g == (0, 0):
            continue
        if checked == 100:
            break
        checked += 1
        if order.compare(group.identity, g) == Ordering.LESS:
            interval = order.interval(group.identity, g)
        else:
            interval = order.interval(g, group.identity)
        assert len(interval) == abs(order.index_of(g)) + 1
        assert group.identity in (interval[0], interval[-1])
    assert checked == 100


def test_hierarchical_succ_walks_the_interval():
    group = get_group("Z2")
    order = get_sampler("hierarchical", group).sample(5)
    walk = group.identity
    for k in range(1, 40):
        walk = order.succ(walk)
        assert walk == order.element_at(k)


def test_invariance_dirac_and_identity_are_exactly_zero():
    dirac = get_sampler("dirac-standard-Z", Z)
    assert invariance_test(dirac, 9, 2, 300).tv == 0.0
    pair = get_sampler("pair-swap-Z", Z)
    assert invariance_test(pair, 0, 2, 300).tv == 0.0  # identity element


def test_pair_swap_empirical_invariance_small():
    sampler = get_sampler("pair-swap-Z", Z)
    estimate = invariance_test(sampler, 1, 2, 4000)
    assert estimate.tv <= 0.08
    assert sum(estimate.counts_base.values()) == 4000


def test_pair_swap_exact_law():
    law = pair_swap_pattern_law(2)
    assert sum(law.values()) == 1
    assert all(weight > 0 for weight in law.values())
    for key in law:
        assert key.radius == 2
        assert key.words[2] == "0"  # anchored patterns only
    counts = empirical_pattern_counts(get_sampler("pair-swap-Z", Z), 2, 4000)
    assert set(counts) <= set(law)
    assert tv_against_law(counts, law) <= 0.08


def test_pair_swap_law_radius_one_by_hand():
    # P[bi(1) = v] by direct case analysis over (phase, nearby swap coins):
    #   phi=0: block {0,1} unswapped -> bi(1)=1 (1/2 * 1/2); swapped ->
    #          bi(1) is the first of {2,3}: 2 or 3 (1/8 each).
    #   phi=1: block {-1,0} swapped lists (0,-1) -> bi(1)=-1 (1/4);
    #          unswapped -> bi(1) is the first of {1,2}: 1 or 2 (1/8 each).
    law = pair_swap_pattern_law(1)

    def prob_next(value):
        return sum(w for key, w in law.items() if key.words[2] == value)

    assert prob_next("1") == Fraction(3, 8)
    assert prob_next("2") == Fraction(1, 4)
    assert prob_next("-1") == Fraction(1, 4)
    assert prob_next("3") == Fraction(1, 8)


def test_tail_translate_matches_its_contract():
    for name in ("Z2", "H3"):
        group = get_group(name)
        order = get_sampler("hierarchical", group).sample(8)
        for j in (1, 2, 4):
            translated = tail_translate(order, j)
            g = group.inv(order.element_at(j))
            assert translated.provenance == "tail-modified"
            assert translated.element_at(0) == group.identity
            assert translated.element_at(j) == g
            for k in (-5, -1, 1, j + 1, j + 7, 30):
                if k in (0, j):
                    continue
                assert translated.element_at(k) == group.op(order.element_at(k), g)
                assert translated.index_of(translated.element_at(k)) == k
    with pytest.raises(ValueError):
        tail_translate(order, 0)


def test_hierarchical_pattern_determinism():
    sampler = get_sampler("hierarchical", get_group("Z2"))
    key1 = pattern_key(sampler.sample(77), 3)
    key2 = pattern_key(sampler.sample(77), 3)
    assert key1 == key2
