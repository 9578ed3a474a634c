"""Order calculus on countable groups.

Orders of type Z as anchored bijections, group actions on order space,
successor-map dynamics over full shifts, seeded invariant-order
samplers, and certified construction and detection of asymptotic pairs.
"""

from .asymptotic import (
    AsymptoticCertificate,
    LemmaWitness,
    PairVerdict,
    TransferResult,
    VERDICT_CERTIFIED,
    VERDICT_CONSISTENT,
    VERDICT_REFUTED,
    construct_pair,
    lemma_metric_crosscheck,
    orders_asymptotic,
    pair_profile,
    transfer_pair,
)
from .dynamics import (
    ProductPoint,
    ShiftConfiguration,
    block_entropy_estimate,
    cofinal_flip_configuration,
    configs_equal_on,
    constant_configuration,
    flip_overlay,
    iterate_successor,
    orbit_membership_check,
    overlay_configuration,
    parse_configuration,
    periodic_configuration,
    point_metric,
    random_configuration,
    shift_act,
    successor_iteration_matches,
    successor_orbit,
    successor_step,
)
from .groups import Element, Group, get_group, seeded_element
from .orders import (
    HorizonError,
    LazyOrder,
    Order,
    OrderWindow,
    Ordering,
    PatternKey,
    act_relational,
    equivariance_check,
    order_metric,
    pattern_key,
    read_window,
    reindex_check,
    sort_by_comparator,
    standard_integer_order,
    window_from_lines,
    window_to_lines,
    write_window,
)
from .samplers import (
    OrderSampler,
    get_sampler,
    invariance_test,
    pair_swap_pattern_law,
    tail_translate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
