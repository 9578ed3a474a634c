"""Full-shift dynamics: configurations, the action, successor iteration,
the point metric and the block entropy estimator."""

from fractions import Fraction

import pytest

from multiorder.dynamics import (
    ProductPoint,
    block_entropy_estimate,
    cofinal_flip_configuration,
    configs_equal_on,
    constant_configuration,
    constant_configuration_source,
    flip_overlay,
    iterate_successor,
    orbit_membership_check,
    overlay_configuration,
    parse_configuration,
    periodic_configuration,
    phased_periodic_source,
    point_metric,
    random_configuration,
    random_configuration_source,
    shift_act,
    successor_iteration_matches,
    successor_orbit,
    successor_step,
)
from multiorder.groups import get_group
from multiorder.orders import OrderWindow, standard_integer_order
from multiorder.prf import prf_below
from multiorder.samplers import get_sampler

Z = get_group("Z")
Z2 = get_group("Z2")
H3 = get_group("H3")


def test_configurations_are_deterministic():
    x = random_configuration(Z2, 4, 9)
    y = random_configuration(Z2, 4, 9)
    z = random_configuration(Z2, 4, 10)
    box = Z2.coordinate_box(3)
    assert configs_equal_on(x, y, box)
    assert not configs_equal_on(x, z, box)
    assert all(0 <= x.symbol(s) < 4 for s in box)


def test_alphabet_bounds():
    with pytest.raises(ValueError):
        constant_configuration(Z, 1)
    with pytest.raises(ValueError):
        random_configuration(Z, 300, 0)


def test_periodic_configuration_residues():
    x = periodic_configuration(Z, 2, (2,))
    assert [x.symbol(h) for h in range(-2, 4)] == [0, 1, 0, 1, 0, 1]
    y = periodic_configuration(Z2, 3, (2, 3))
    assert y.symbol((0, 0)) == y.symbol((2, 3)) == y.symbol((-2, -3))
    with pytest.raises(ValueError):
        periodic_configuration(Z2, 2, (2,))


def test_overlay_enumerates_its_difference():
    base = constant_configuration(Z, 2)
    over = overlay_configuration(base, {3: 1, -1: 1})
    assert over.overlay_diff == ((-1, 1), (3, 1))
    assert over.symbol(3) == 1 and over.symbol(0) == 0
    flipped = flip_overlay(base, [5])
    assert flipped.symbol(5) == 1
    with pytest.raises(ValueError):
        overlay_configuration(base, {0: 7})


def test_shift_act_examples():
    x = random_configuration(Z, 2, 4)
    box = Z.coordinate_box(6)
    assert configs_equal_on(shift_act(0, x), x, box)
    moved = shift_act(1, x)
    assert all(moved.symbol(h) == x.symbol(h + 1) for h in box)


def test_shift_act_composition_on_heisenberg():
    x = random_configuration(H3, 2, 7)
    box = H3.coordinate_box(2)  # 125 sites
    for i in range(8):
        a = tuple(prf_below(1, 5, "a", i, j) - 2 for j in range(3))
        b = tuple(prf_below(1, 5, "b", i, j) - 2 for j in range(3))
        lhs = shift_act(a, shift_act(b, x))
        assert configs_equal_on(lhs, shift_act(H3.op(a, b), x), box)


def test_shift_act_composition_order_matters():
    # the reversed product must fail for some noncommuting pair
    x = random_configuration(H3, 2, 7)
    box = H3.coordinate_box(2)
    a, b = (1, 0, 0), (0, 1, 0)
    assert H3.op(a, b) != H3.op(b, a)
    lhs = shift_act(a, shift_act(b, x))
    assert not configs_equal_on(lhs, shift_act(H3.op(b, a), x), box)


def test_point_metric_examples():
    x = random_configuration(Z, 2, 1)
    same, bound = point_metric(x, x, 8)
    assert same == 0 and bound == Fraction(1, 256)
    y = overlay_configuration(x, {Z.enumerate(1): (x.symbol(Z.enumerate(1)) + 1) % 2})
    value, _ = point_metric(x, y, 8)
    assert value == Fraction(1, 2)
    far = overlay_configuration(x, {Z.enumerate(9): (x.symbol(Z.enumerate(9)) + 1) % 2})
    value, bound = point_metric(x, far, 8)
    assert value == 0 and bound == Fraction(1, 256)


def test_successor_on_standard_order_is_the_shift():
    x = random_configuration(Z, 2, 3)
    point = ProductPoint(x, standard_integer_order())
    stepped = successor_step(point)
    box = Z.coordinate_box(5)
    assert configs_equal_on(stepped.config, shift_act(1, x), box)
    assert all(stepped.order.element_at(k) == k for k in range(-10, 11))


def test_successor_preserves_anchoring():
    order = get_sampler("hierarchical", Z2).sample(4)
    point = ProductPoint(random_configuration(Z2, 2, 0), order)
    for k, _, order_k in successor_orbit(point, 8):
        assert order_k.element_at(0) == Z2.identity


def test_successor_order_part_matches_act_example():
    # pair-swap window ..., -1, 0, 2, 1, 3, ...: bi(1) = 2, so the order
    # part of one successor step is the hand-computed acted window
    window = OrderWindow(Z, -3, (-3, -2, -1, 0, 2, 1, 3, 4))
    point = ProductPoint(random_configuration(Z, 2, 5), window)
    stepped = successor_step(point)
    assert [stepped.order.element_at(i) for i in (-1, 0, 1, 2)] == [-2, 0, -1, 1]


def test_iterate_equals_direct_action():
    order = get_sampler("hierarchical", Z2).sample(11)
    x = random_configuration(Z2, 2, 11)
    point = ProductPoint(x, order)
    box = Z2.coordinate_box(4)
    for k in (1, 2, 9, 33, 64):
        assert successor_iteration_matches(point, k, box)
    iterated = iterate_successor(point, 3)
    direct = shift_act(order.element_at(3), x)
    assert configs_equal_on(iterated.config, direct, box)
    assert iterate_successor(point, 0) is point
    with pytest.raises(ValueError):
        iterate_successor(point, -1)


def test_order_part_is_config_independent():
    order = get_sampler("hierarchical", Z2).sample(2)
    p1 = ProductPoint(random_configuration(Z2, 2, 1), order)
    p2 = ProductPoint(random_configuration(Z2, 2, 99), order)
    o1 = iterate_successor(p1, 12).order
    o2 = iterate_successor(p2, 12).order
    assert all(o1.element_at(i) == o2.element_at(i) for i in range(-8, 9))


def test_orbit_membership_check():
    x = random_configuration(Z, 2, 8)
    assert orbit_membership_check(ProductPoint(x, standard_integer_order()), range(0, 17))
    pair_swap = get_sampler("pair-swap-Z", Z).sample(6)
    assert orbit_membership_check(ProductPoint(x, pair_swap), range(1, 17))
    assert orbit_membership_check(ProductPoint(x, pair_swap), [0])


def test_block_entropy_iid_uniform():
    value = block_entropy_estimate(
        random_configuration_source(Z, 2), standard_integer_order(), 10, 10000
    )
    assert abs(value - 1.0) <= 0.05


def test_block_entropy_constant_is_exactly_zero():
    value = block_entropy_estimate(
        constant_configuration_source(Z, 2), standard_integer_order(), 10, 200
    )
    assert value == 0.0


def test_block_entropy_periodic_decays():
    source = phased_periodic_source(Z, 2, (2,))
    std = standard_integer_order()
    at2 = block_entropy_estimate(source, std, 2, 3000)
    at8 = block_entropy_estimate(source, std, 8, 3000)
    assert at2 <= 0.5 + 1e-9  # two admissible words of length 2
    assert at8 <= at2 / 2 + 1e-9


def test_block_entropy_validation():
    std = standard_integer_order()
    with pytest.raises(ValueError):
        block_entropy_estimate(constant_configuration_source(Z, 2), std, 17, 10)
    with pytest.raises(ValueError):
        block_entropy_estimate(constant_configuration_source(Z, 2), std, 4, 0)


def test_cofinal_flip_disagrees_on_even_positions():
    order = standard_integer_order()
    x = random_configuration(Z, 2, 2)
    y = cofinal_flip_configuration(x, order, stride=2)
    for k in range(0, 10):
        site = order.element_at(k)
        if k % 2 == 0:
            assert y.symbol(site) != x.symbol(site)
        else:
            assert y.symbol(site) == x.symbol(site)


def test_configuration_spec_round_trip():
    for spec in (
        "random:alphabet=2:seed=7",
        "periodic:alphabet=2:periods=2,3",
        "constant:alphabet=4:symbol=1",
    ):
        config = parse_configuration(Z2, spec)
        assert config.label == spec
    overlay = parse_configuration(Z, "overlay:base=random:alphabet=2:seed=7:flips=0;5;-3")
    assert overlay.overlay_diff is not None
    assert {site for site, _ in overlay.overlay_diff} == {0, 5, -3}
    base = parse_configuration(Z, "random:alphabet=2:seed=7")
    assert overlay.symbol(5) == (base.symbol(5) + 1) % 2


def test_configuration_spec_errors():
    with pytest.raises(ValueError):
        parse_configuration(Z, "mystery:alphabet=2")
    with pytest.raises(ValueError):
        parse_configuration(Z, "random:alphabet=2")  # missing seed
    with pytest.raises(ValueError):
        parse_configuration(Z, "overlay:base=random:alphabet=2:seed=1:flips=")
    with pytest.raises(ValueError):
        parse_configuration(Z, "overlay:flips=1")


def test_product_point_group_mismatch():
    with pytest.raises(ValueError):
        ProductPoint(random_configuration(Z, 2, 0), get_sampler("hierarchical", Z2).sample(0))
