"""Full-shift group actions and successor-map dynamics.

The concrete phase space is the full shift: all assignments of symbols
from a finite alphabet to group elements, with the translation action

    (g . x)(h) = x(h * g),

a left action under the composition  a.(b.x) = (a*b).x  (the convention
is pinned by a property test on the Heisenberg group, where the reversed
convention fails).  Configurations are infinite objects backed by a
deterministic rule; equality is only ever asserted over a declared
finite observation box.

A product point pairs a configuration with an order of type Z on the
acting group.  The successor map advances both by the order's first
element:

    S(x, <) = (bi(1) . x,  bi(1)(<)),

and the k-fold iterate must coincide with the single translation by
bi(k); :func:`successor_iteration_matches` checks exactly that, which is
the orbit-equivalence identity tying the Z-action generated by S to the
G-action.  (The k-th successor element is read off the k-1 times acted
order, so the identity is a genuine consistency statement, not
bookkeeping.)

:func:`point_metric` is the standard product-topology metric on the full
shift: site n of the canonical group enumeration contributes 2^-n when
the two configurations disagree there.  Like the order metric it returns
an exact truncated value plus the certified tail bound 2^-N.

:func:`block_entropy_estimate` is the empirical entropy rate of symbol
words read along an order: the word of length n of (x, <) is
(x(bi(0)), ..., x(bi(n-1))).  An i.i.d. uniform binary source gives 1
bit/symbol; deterministic sources give 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from .groups import Element, Group
from .orders import Order
from .prf import prf_below

MAX_ALPHABET = 256


@dataclass(frozen=True)
class ShiftConfiguration:
    """A point of the full shift: a deterministic rule site -> symbol.

    ``overlay_diff`` is set when the configuration is a finite
    modification of another one; it enumerates the difference set
    explicitly (site, new symbol).
    """

    group: Group
    alphabet: int
    rule: Callable[[Element], int]
    label: str
    overlay_diff: tuple[tuple[Element, int], ...] | None = None

    def __post_init__(self):
        if not 2 <= self.alphabet <= MAX_ALPHABET:
            raise ValueError(f"alphabet size must be in [2, {MAX_ALPHABET}]")

    def symbol(self, site: Element) -> int:
        return self.rule(site)


def random_configuration(group: Group, alphabet: int, seed: int) -> ShiftConfiguration:
    """I.i.d.-style configuration: each site's symbol is a PRF of the site."""

    def rule(site: Element) -> int:
        return prf_below(seed, alphabet, "sym", group.encode(site))

    return ShiftConfiguration(
        group, alphabet, rule, f"random:alphabet={alphabet}:seed={seed}"
    )


def periodic_configuration(
    group: Group, alphabet: int, periods: tuple[int, ...]
) -> ShiftConfiguration:
    """Periodic configuration: symbol = mixed-radix index of coordinate
    residues mod ``periods``, reduced mod alphabet."""
    if len(periods) != group.dim or any(p < 1 for p in periods):
        raise ValueError(f"need {group.dim} positive periods")

    def rule(site: Element) -> int:
        value = 0
        for coord, period in zip(group.coords(site), periods):
            value = value * period + coord % period
        return value % alphabet

    label = f"periodic:alphabet={alphabet}:periods={','.join(map(str, periods))}"
    return ShiftConfiguration(group, alphabet, rule, label)


def constant_configuration(group: Group, alphabet: int, symbol: int = 0) -> ShiftConfiguration:
    if not 0 <= symbol < alphabet:
        raise ValueError("symbol outside alphabet")
    return ShiftConfiguration(
        group, alphabet, lambda site: symbol, f"constant:alphabet={alphabet}:symbol={symbol}"
    )


def overlay_configuration(
    base: ShiftConfiguration, replacements: Mapping[Element, int]
) -> ShiftConfiguration:
    """Finite modification of ``base``: sites in ``replacements`` are
    rewritten, everything else passes through."""
    table = {base.group.check(site): sym for site, sym in replacements.items()}
    for site, sym in table.items():
        if not 0 <= sym < base.alphabet:
            raise ValueError(f"replacement symbol {sym} outside alphabet")
    diff = tuple(sorted(table.items(), key=lambda item: base.group.encode(item[0])))

    def rule(site: Element) -> int:
        hit = table.get(site)
        return base.rule(site) if hit is None else hit

    flips = ";".join(base.group.encode(site) for site, _ in diff)
    return ShiftConfiguration(
        base.group,
        base.alphabet,
        rule,
        f"overlay:base={base.label}:flips={flips}",
        overlay_diff=diff,
    )


def flip_overlay(base: ShiftConfiguration, sites: Iterable[Element]) -> ShiftConfiguration:
    """Overlay that cycles each given site's symbol to the next one."""
    return overlay_configuration(
        base, {site: (base.symbol(site) + 1) % base.alphabet for site in sites}
    )


def cofinal_flip_configuration(
    base: ShiftConfiguration, order: Order, stride: int = 2, start: int = 0
) -> ShiftConfiguration:
    """Flip ``base`` at bi(start), bi(start+stride), ... — infinitely many
    order-positive sites, the canonical non-asymptotic partner."""

    def rule(site: Element) -> int:
        value = base.rule(site)
        k = order.index_of(site)
        if k >= start and (k - start) % stride == 0:
            return (value + 1) % base.alphabet
        return value

    return ShiftConfiguration(
        base.group,
        base.alphabet,
        rule,
        f"cofinal-flip:stride={stride}:start={start}:base={base.label}",
    )


def shift_act(g: Element, x: ShiftConfiguration) -> ShiftConfiguration:
    """Translate a configuration: (g . x)(h) = x(h * g)."""
    group = x.group
    g = group.check(g)

    def rule(site: Element) -> int:
        return x.rule(group.op(site, g))

    return ShiftConfiguration(
        group, x.alphabet, rule, f"act({group.encode(g)}):{x.label}"
    )


def configs_equal_on(
    x: ShiftConfiguration, y: ShiftConfiguration, sites: Iterable[Element]
) -> bool:
    """Equality over a declared finite observation box."""
    return all(x.symbol(s) == y.symbol(s) for s in sites)


def point_metric(
    x: ShiftConfiguration, y: ShiftConfiguration, depth: int
) -> tuple[Fraction, Fraction]:
    """Truncated product-topology distance plus certified tail bound 2^-depth."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if x.group is not y.group:
        raise ValueError("configurations live on different groups")
    value = Fraction(0)
    for n in range(1, depth + 1):
        site = x.group.enumerate(n)
        if x.symbol(site) != y.symbol(site):
            value += Fraction(1, 2**n)
    return value, Fraction(1, 2**depth)


@dataclass(frozen=True)
class ProductPoint:
    """A configuration paired with an order on the same group."""

    config: ShiftConfiguration
    order: Order

    def __post_init__(self):
        if self.config.group is not self.order.group:
            raise ValueError("configuration and order live on different groups")


def successor_step(point: ProductPoint) -> ProductPoint:
    """One step of the successor map: advance by the order's element at 1."""
    g = point.order.element_at(1)
    return ProductPoint(shift_act(g, point.config), point.order.act(g))


def successor_orbit(point: ProductPoint, k_max: int):
    """Walk the successor orbit once, yielding (k, step product, order).

    At step k the next element g_k is read at position 1 of the (k-1)
    times acted order, the running product g_k * ... * g_1 is updated,
    and the order is acted on by g_k.  Sharing the walk across k keeps a
    full orbit scan O(k_max^2) closure hops instead of O(k_max^3).
    """
    group = point.order.group
    order = point.order
    product = group.identity
    for k in range(1, k_max + 1):
        g = order.element_at(1)
        product = group.op(g, product)
        order = order.act(g)
        yield k, product, order


def iterate_successor(point: ProductPoint, k: int) -> ProductPoint:
    """k-fold successor map (k >= 0).

    The order part is the genuine k-fold composition.  The configuration
    part accumulates the product of the successive step elements and
    translates once; that collapse is the action-composition identity
    a.(b.x) = (a*b).x, pinned by its own test, and keeps iteration O(k)
    instead of O(k^2).
    """
    if k < 0:
        raise ValueError("successor iterations take k >= 0")
    if k == 0:
        return point
    for _, product, order in successor_orbit(point, k):
        pass
    return ProductPoint(shift_act(product, point.config), order)


def successor_iteration_matches(
    point: ProductPoint,
    k: int,
    sites: Iterable[Element],
    window_radius: int = 4,
) -> bool:
    """Does S^k equal the direct translation by bi(k)?

    Compares the iterated configuration with bi(k).x on the observation
    box and the iterated order with bi(k)(<) on a window, coordinate
    exact.  This is the central orbit-equivalence self-test.
    """
    iterated = iterate_successor(point, k)
    witness = point.order.element_at(k)
    direct_config = shift_act(witness, point.config)
    direct_order = point.order.act(witness)
    if not configs_equal_on(iterated.config, direct_config, sites):
        return False
    span = range(-window_radius, window_radius + 1)
    if any(iterated.order.element_at(i) != direct_order.element_at(i) for i in span):
        return False
    return iterated.order.element_at(0) == point.order.group.identity


def orbit_membership_check(
    point: ProductPoint,
    k_range: Iterable[int],
    sites: Iterable[Element] | None = None,
    window_radius: int = 4,
) -> bool:
    """Every S-iterate in k_range is the G-translate by the explicit
    witness bi(k); True when all checks pass.  The orbit is walked once
    up to max(k_range)."""
    if sites is None:
        sites = point.config.group.folner_box(2)
    sites = list(sites)
    wanted = set(k_range)
    if not wanted:
        return True
    if min(wanted) < 0:
        raise ValueError("orbit checks take k >= 0")
    span = range(-window_radius, window_radius + 1)
    identity = point.order.group.identity
    remaining = set(wanted) - {0}
    for k, product, order_k in successor_orbit(point, max(wanted)):
        if k not in remaining:
            continue
        witness = point.order.element_at(k)
        direct_order = point.order.act(witness)
        if not configs_equal_on(
            shift_act(product, point.config), shift_act(witness, point.config), sites
        ):
            return False
        if any(order_k.element_at(i) != direct_order.element_at(i) for i in span):
            return False
        if order_k.element_at(0) != identity:
            return False
    return True


ConfigurationSource = Callable[[int], ShiftConfiguration]


def random_configuration_source(
    group: Group, alphabet: int, salt: int = 0
) -> ConfigurationSource:
    def source(seed: int) -> ShiftConfiguration:
        return random_configuration(group, alphabet, seed ^ salt)

    return source


def constant_configuration_source(group: Group, alphabet: int) -> ConfigurationSource:
    return lambda seed: constant_configuration(group, alphabet)


def phased_periodic_source(
    group: Group, alphabet: int, periods: tuple[int, ...], salt: int = 0
) -> ConfigurationSource:
    """Periodic configuration translated by a uniformly random phase."""
    base = periodic_configuration(group, alphabet, periods)

    def source(seed: int) -> ShiftConfiguration:
        phase = tuple(
            prf_below(salt, period, "phase", seed, axis)
            for axis, period in enumerate(periods)
        )
        return shift_act(group.from_coords(phase), base)

    return source


def block_entropy_estimate(
    source: ConfigurationSource,
    order: Order,
    block_len: int,
    n_samples: int,
    base_seed: int = 0,
) -> float:
    """Empirical Shannon entropy (bits per symbol) of order-words.

    Draws n_samples configurations, reads each one's word along
    bi(0..block_len-1), and returns H(empirical word law) / block_len.
    """
    if not 1 <= block_len <= 16:
        raise ValueError("block length must be in [1, 16]")
    if n_samples < 1:
        raise ValueError("need at least one sample")
    word_sites = [order.element_at(k) for k in range(block_len)]
    words: Counter = Counter()
    for i in range(n_samples):
        x = source(base_seed + i)
        words[tuple(x.symbol(s) for s in word_sites)] += 1
    probs = np.array(list(words.values()), dtype=float) / n_samples
    entropy_bits = float(-(probs * np.log2(probs)).sum()) + 0.0  # kill -0.0
    return entropy_bits / block_len


# ---------------------------------------------------------------------------
# Configuration spec strings (CLI surface):
#   random:alphabet=2:seed=7
#   periodic:alphabet=2:periods=2,3
#   overlay:base=<spec>:flips=<element>;<element>;...


def parse_configuration(group: Group, spec: str) -> ShiftConfiguration:
    """Build a configuration from its CLI spec string."""
    kind, _, rest = spec.partition(":")
    if kind == "overlay":
        if not rest.startswith("base="):
            raise ValueError(f"overlay spec must start with base=: {spec!r}")
        base_spec, sep, flips_text = rest[len("base="):].rpartition(":flips=")
        if not sep:
            raise ValueError(f"overlay spec must declare flips=: {spec!r}")
        base = parse_configuration(group, base_spec)
        sites = [group.parse(tok) for tok in flips_text.split(";") if tok.strip()]
        if not sites:
            raise ValueError("overlay spec has an empty flip list")
        return flip_overlay(base, sites)
    fields = {}
    for token in rest.split(":") if rest else []:
        key, eq, value = token.partition("=")
        if not eq:
            raise ValueError(f"bad configuration field {token!r} in {spec!r}")
        fields[key] = value
    try:
        if kind == "random":
            return random_configuration(
                group, int(fields["alphabet"]), int(fields["seed"])
            )
        if kind == "periodic":
            periods = tuple(int(p) for p in fields["periods"].split(","))
            return periodic_configuration(group, int(fields["alphabet"]), periods)
        if kind == "constant":
            return constant_configuration(
                group, int(fields["alphabet"]), int(fields.get("symbol", 0))
            )
    except KeyError as exc:
        raise ValueError(f"configuration spec {spec!r} is missing {exc}") from None
    raise ValueError(f"unknown configuration kind {kind!r}")
