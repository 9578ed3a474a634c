"""Seeded samplers for random orders of type Z (constructive multiorders).

A multiorder is an invariant probability measure on the space of type-Z
orders of a group; existence is an abstract fact, so experiments need
concrete stand-ins.  This module provides three constructive families,
each sampling a :class:`~multiorder.orders.LazyOrder` deterministically
from a 64-bit seed:

* ``dirac-standard-Z`` -- the point mass at the natural order on Z,
  which is a fixed point of the action and hence exactly invariant.

* ``pair-swap-Z`` -- partition Z into blocks {2n+phi, 2n+phi+1} with the
  phase phi a fair seed coin, then independently per block keep or swap
  the two elements (coin with probability ``swap_probability``).  The
  law is invariant under translations: shifting by one swaps the two
  phases and shifting by two relabels the i.i.d. block coins.
  :func:`pair_swap_pattern_law` computes the exact law of a finite
  window by enumerating every coin that can influence it, which is the
  oracle the empirical invariance test is held against.

* ``hierarchical`` -- on any of the supported groups (the order only
  uses the coordinate lattice of the element representation).  Level-l
  blocks are dyadic boxes of side 2^l whose nesting is shifted by an
  i.i.d. uniform offset in {0,1}^d per level; a block's 2^d sub-blocks
  are scanned in reflected-Gray-code (boustrophedon) order, so
  consecutive sub-blocks are always adjacent, with the scan direction
  flipped by an independent per-block coin.  Two cells compare at the
  first level where they share a block; almost surely every pair
  eventually does, every order interval is finite, and there is no
  extreme element, so the sampled relation is an order of type Z.  Both
  the position rule k -> bi(k) and its inverse walk O(level) blocks, so
  any window is computable without materializing the hierarchy.

Whether the hierarchical family's law is exactly invariant is not
claimed anywhere; invariance is measured empirically
(:func:`invariance_test`) and reported.

:func:`tail_translate` builds from any order the canonical detector test
case: an order agreeing with a right translate of the input from some
position onward, anchored by one transposition below it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .groups import Element, Group, get_group
from .orders import HorizonError, LazyOrder, Order, PatternKey, pattern_key, standard_integer_order
from .prf import prf_bit, prf_event, prf_u64

FAMILIES = ("dirac-standard-Z", "pair-swap-Z", "hierarchical")


@dataclass(frozen=True)
class OrderSampler:
    """A seeded distribution over orders of type Z on a fixed group."""

    group: Group
    family: str
    salt: int = 0

    def sample(self, seed: int) -> LazyOrder:
        raise NotImplementedError

    def _key(self, seed: int) -> int:
        # split the sampler identity and the per-sample seed into one PRF key
        return prf_u64(self.salt, "sampler", self.family, seed)


@dataclass(frozen=True)
class DiracStandardSampler(OrderSampler):
    def __init__(self, group: Group | None = None, salt: int = 0):
        group = group or get_group("Z")
        if group.name != "Z":
            raise ValueError("dirac-standard-Z samples orders on Z only")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "family", "dirac-standard-Z")
        object.__setattr__(self, "salt", salt)

    def sample(self, seed: int) -> LazyOrder:
        return standard_integer_order(self.group)


class _PairSwapRule:
    """O(1) position arithmetic for one sampled pair-swap order.

    Block n holds {2n+phi, 2n+phi+1} and occupies absolute listing
    positions (2n, 2n+1); a swapped block lists its upper element first.
    The anchored bijection reads the listing recentred at the position
    of 0.
    """

    def __init__(self, key: int, swap_probability: float):
        self.key = key
        self.p = swap_probability
        self.phi = prf_bit(key, "phase")
        self.t0 = self._position(0)

    def _swapped(self, n: int) -> bool:
        return prf_event(self.key, self.p, "swap", n)

    def _position(self, m: int) -> int:
        n = (m - self.phi) >> 1
        lower = m == 2 * n + self.phi
        if self._swapped(n):
            return 2 * n + (1 if lower else 0)
        return 2 * n + (0 if lower else 1)

    def element(self, k: int) -> int:
        t = k + self.t0
        n = t >> 1
        first = t == 2 * n
        if self._swapped(n):
            return 2 * n + self.phi + (1 if first else 0)
        return 2 * n + self.phi + (0 if first else 1)

    def index(self, m: int) -> int:
        return self._position(m) - self.t0


@dataclass(frozen=True)
class PairSwapSampler(OrderSampler):
    swap_probability: float = 0.5

    def __init__(self, group: Group | None = None, salt: int = 0, swap_probability: float = 0.5):
        group = group or get_group("Z")
        if group.name != "Z":
            raise ValueError("pair-swap-Z samples orders on Z only")
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "family", "pair-swap-Z")
        object.__setattr__(self, "salt", salt)
        object.__setattr__(self, "swap_probability", swap_probability)

    def sample(self, seed: int) -> LazyOrder:
        rule = _PairSwapRule(self._key(seed), self.swap_probability)
        return LazyOrder(self.group, rule.element, rule.index, provenance="pair-swap")


def pair_swap_pattern_law(radius: int, phase_blocks: int | None = None) -> dict[PatternKey, Fraction]:
    """Exact law of the window bi(-radius..radius) under pair-swap-Z.

    Enumerates the phase coin and every block swap coin that can reach
    the window (blocks within ``radius + 2`` of the block of 0; anything
    further cannot move the window's listing positions).  Fair coins
    only.  Weights are exact rationals summing to 1.
    """
    group = get_group("Z")
    span = phase_blocks if phase_blocks is not None else radius + 2
    law: dict[PatternKey, Fraction] = {}
    for phi in (0, 1):
        n0 = -phi  # block containing 0
        block_ids = range(n0 - span, n0 + span + 1)
        for coins in product((False, True), repeat=len(block_ids)):
            weight = Fraction(1, 2 ** (1 + len(block_ids)))
            listing: dict[int, int] = {}
            for n, swapped in zip(block_ids, coins):
                lower, upper = 2 * n + phi, 2 * n + phi + 1
                listing[2 * n], listing[2 * n + 1] = (
                    (upper, lower) if swapped else (lower, upper)
                )
            t0 = next(t for t, m in listing.items() if m == 0)
            key = PatternKey(
                radius,
                tuple(group.encode(listing[t0 + k]) for k in range(-radius, radius + 1)),
            )
            law[key] = law.get(key, Fraction(0)) + weight
    assert sum(law.values()) == 1
    return law


def _gray(rank: int) -> int:
    return rank ^ (rank >> 1)


def _gray_rank(code: int) -> int:
    rank = 0
    while code:
        rank ^= code
        code >>= 1
    return rank


class _HierarchicalRule:
    """Lazy position arithmetic for one sampled hierarchical order.

    Cell coordinates at level 0 are the group element's coordinates; the
    level-l coordinate of a cell is ((level-(l-1) coordinate) + offset_l)
    floor-divided by 2 per axis.  A cell's position inside its level-L
    block is the base-2^d number whose digit at place l-1 is the scan
    rank of its level-(l-1) block among the 2^d children of its level-l
    block.  Signed order indices are differences of positions against
    the identity cell, evaluated at the first common block.

    Forward queries keep a cursor (the block chain of the last answer)
    and only re-descend below the highest changed digit, so scanning
    consecutive positions costs O(1) block steps amortized.  Cursor and
    reference frame are replaced by single atomic assignments of
    deterministic values, so concurrent readers stay consistent.
    """

    def __init__(self, group: Group, key: int, max_level: int = 64):
        self.group = group
        self.key = key
        self.d = group.dim
        self.mask = (1 << self.d) - 1
        self.max_level = max_level
        self.origin = group.coords(group.identity)
        self._gray_fwd = tuple(_gray(r) for r in range(1 << self.d))
        self._bits = tuple(
            tuple((digit >> j) & 1 for j in range(self.d)) for digit in range(1 << self.d)
        )
        self._offsets: dict[int, tuple[int, ...]] = {}
        self._flips: dict[tuple[int, tuple[int, ...]], int] = {}
        self._indices: dict[tuple[int, ...], int] = {}
        # (level L, position of origin inside its level-L block, block)
        self._frame = (0, 0, self.origin)
        # (frame level, last target position, block chain c[0..L])
        self._cursor: tuple[int, int, tuple[tuple[int, ...], ...]] | None = None

    def _offset(self, level: int) -> tuple[int, ...]:
        cached = self._offsets.get(level)
        if cached is None:
            cached = tuple(prf_bit(self.key, "off", level, j) for j in range(self.d))
            self._offsets[level] = cached
        return cached

    def _flip(self, level: int, block: tuple[int, ...]) -> int:
        cached = self._flips.get((level, block))
        if cached is None:
            cached = prf_bit(self.key, "rev", level, block)
            self._flips[(level, block)] = cached
        return cached

    def _up(self, cell: tuple[int, ...], level: int) -> tuple[tuple[int, ...], int]:
        off = self._offset(level)
        shifted = [c + off[j] for j, c in enumerate(cell)]
        parent = tuple(s >> 1 for s in shifted)
        digit = 0
        for j, s in enumerate(shifted):
            digit |= (s & 1) << j
        return parent, digit

    def _rank(self, level: int, parent: tuple[int, ...], digit: int) -> int:
        rank = _gray_rank(digit)
        return self.mask - rank if self._flip(level, parent) else rank

    def _down(self, parent: tuple[int, ...], level: int, rank: int) -> tuple[int, ...]:
        if self._flip(level, parent):
            rank = self.mask - rank
        bits = self._bits[self._gray_fwd[rank]]
        off = self._offsets.get(level) or self._offset(level)
        if self.d == 1:
            return (2 * parent[0] + bits[0] - off[0],)
        if self.d == 2:
            return (
                2 * parent[0] + bits[0] - off[0],
                2 * parent[1] + bits[1] - off[1],
            )
        return tuple(2 * p + b - o for p, b, o in zip(parent, bits, off))

    def index(self, g: Element) -> int:
        a = self.group.coords(g)
        cached = self._indices.get(a)
        if cached is not None:
            return cached
        cell = a
        b = self.origin
        delta = 0
        level = 1
        while a != b:
            if level > self.max_level:
                raise HorizonError(
                    f"cells {a} and origin share no block within {self.max_level} levels"
                )
            pa, da = self._up(a, level)
            pb, db = self._up(b, level)
            delta += (self._rank(level, pa, da) - self._rank(level, pb, db)) << (
                self.d * (level - 1)
            )
            a, b = pa, pb
            level += 1
        self._indices[cell] = delta
        return delta

    def _framed(self, k: int) -> tuple[int, int, tuple[int, ...]]:
        """Grow the origin's reference block until position k fits inside."""
        level, origin_pos, block = self._frame
        while not (level and 0 <= origin_pos + k < 1 << (self.d * level)):
            if level >= self.max_level:
                raise HorizonError(
                    f"position {k} not reachable within {self.max_level} levels"
                )
            parent, digit = self._up(block, level + 1)
            origin_pos += self._rank(level + 1, parent, digit) << (self.d * level)
            block = parent
            level += 1
            self._frame = (level, origin_pos, block)
        return level, origin_pos, block

    def element(self, k: int) -> Element:
        if k == 0:
            return self.group.identity
        level, origin_pos, block = self._framed(k)
        target = origin_pos + k
        cursor = self._cursor
        if cursor is not None and cursor[0] == level:
            old_target, old_chain = cursor[1], cursor[2]
            changed = target ^ old_target
            if changed == 0:
                return self.group.from_coords(old_chain[0])
            start = (changed.bit_length() - 1) // self.d + 1
            chain = list(old_chain)
        else:
            start = level
            chain = [None] * level + [block]
        d, mask = self.d, self.mask
        for l in range(start, 0, -1):
            chain[l - 1] = self._down(chain[l], l, (target >> (d * (l - 1))) & mask)
        self._cursor = (level, target, tuple(chain))
        return self.group.from_coords(chain[0])


@dataclass(frozen=True)
class HierarchicalSampler(OrderSampler):
    max_level: int = 64

    def __init__(self, group: Group, salt: int = 0, max_level: int = 64):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "family", "hierarchical")
        object.__setattr__(self, "salt", salt)
        object.__setattr__(self, "max_level", max_level)

    def sample(self, seed: int) -> LazyOrder:
        rule = _HierarchicalRule(self.group, self._key(seed), self.max_level)
        return LazyOrder(self.group, rule.element, rule.index, provenance="hierarchical")


def get_sampler(family: str, group: Group, **params) -> OrderSampler:
    """Sampler factory keyed by family tag."""
    if family == "dirac-standard-Z":
        return DiracStandardSampler(group, **params)
    if family == "pair-swap-Z":
        return PairSwapSampler(group, **params)
    if family == "hierarchical":
        return HierarchicalSampler(group, **params)
    raise ValueError(f"unknown sampler family {family!r}; choose from {FAMILIES}")


@dataclass(frozen=True)
class InvarianceEstimate:
    """Empirical invariance of a sampler's law under one group element."""

    tv: float
    n_samples: int
    counts_base: dict
    counts_acted: dict


def total_variation(counts_a: Counter, counts_b: Counter) -> float:
    n_a = sum(counts_a.values())
    n_b = sum(counts_b.values())
    keys = set(counts_a) | set(counts_b)
    return 0.5 * sum(abs(counts_a[k] / n_a - counts_b[k] / n_b) for k in keys)


def invariance_test(
    sampler: OrderSampler,
    g: Element,
    radius: int,
    n_samples: int,
    base_seed: int = 0,
) -> InvarianceEstimate:
    """Estimate the total variation between window laws of < and g(<).

    Samples n_samples orders, takes the window pattern of each order and
    of its image under g, and returns the total variation distance of the
    two empirical pattern distributions (0 exactly when g acts trivially
    on every sample, e.g. the dirac family or g = identity).
    """
    counts_base: Counter = Counter()
    counts_acted: Counter = Counter()
    for i in range(n_samples):
        order = sampler.sample(base_seed + i)
        counts_base[pattern_key(order, radius)] += 1
        counts_acted[pattern_key(order.act(g), radius)] += 1
    tv = total_variation(counts_base, counts_acted)
    return InvarianceEstimate(tv, n_samples, dict(counts_base), dict(counts_acted))


def empirical_pattern_counts(
    sampler: OrderSampler, radius: int, n_samples: int, base_seed: int = 0
) -> Counter:
    """Pattern-key counts over n_samples fresh samples."""
    counts: Counter = Counter()
    for i in range(n_samples):
        counts[pattern_key(sampler.sample(base_seed + i), radius)] += 1
    return counts


def tv_against_law(counts: Counter, law: dict[PatternKey, Fraction]) -> float:
    """Total variation of empirical counts against an exact law."""
    n = sum(counts.values())
    keys = set(counts) | set(law)
    return 0.5 * sum(abs(counts[k] / n - float(law.get(k, 0))) for k in keys)


def tail_translate(order: Order, j: int) -> LazyOrder:
    """Order equal to a right translate of ``order`` from position j+1 on.

    With g = bi(j)^-1 the result B satisfies bi_B(k) = bi(k) * g for every
    k except 0 and j, where the two values (the identity and g) are
    transposed to keep B anchored.  Hence bi(k) = bi_B(k) * bi(j) holds
    exactly for k > j: the canonical successor-asymptotic positive with
    threshold j+1 and translation witness bi(j).
    """
    if j < 1:
        raise ValueError("tail threshold j must be >= 1")
    group = order.group
    g = group.inv(order.element_at(j))
    identity = group.identity

    def rule(k: int) -> Element:
        if k == 0:
            return identity
        if k == j:
            return g
        return group.op(order.element_at(k), g)

    def inverse(h: Element) -> int:
        if h == identity:
            return 0
        if h == g:
            return j
        return order.index_of(group.op(h, group.inv(g)))

    return LazyOrder(group, rule, inverse, provenance="tail-modified")
