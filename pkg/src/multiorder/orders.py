"""Orders of type Z on countable groups, as anchored bijections.

An order of type Z on a countable group G is a total order with finite
intervals and no extreme elements, so (G, <) is order-isomorphic to the
integers.  Such an order is the same data as its *anchored bijection*
bi: Z -> G, the enumeration of G in increasing order normalized by
bi(0) = e.  We write ``order.element_at(k)`` for bi(k), the k-th element
counting from the identity.

Two representations share one operation surface:

* :class:`OrderWindow` -- a finite contiguous segment bi(lo..hi).  This is
  the serializable face; queries outside the window raise
  :class:`HorizonError`, a first-class outcome (callers may enlarge the
  window), distinct from usage errors (``ValueError``).
* :class:`LazyOrder` -- a total rule k -> bi(k) valid for arbitrary k,
  used by order samplers and unbounded tail checks.  Its inverse may fall
  back to a bounded zigzag search (default cap 2**16 positions) and
  raises HorizonError beyond the cap.

G acts on its own orders two ways, which must agree:

* relationally, g(<) defined by:  a < b in g(<)  iff  a*g < b*g;
* on bijections, (g(bi))(i) = bi(i+k) * g^-1 where k = bi^-1(g).

:func:`equivariance_check` verifies the agreement on a window by sorting
with the relational comparator, and :func:`reindex_check` verifies the
reindexing identities

    bi_{g(<)}(i) = bi_<(i+k) * g^-1      and      bi_{g(<)}(-k) = g^-1.

The space of orders carries the metric

    d(<, <') = sum over k in Z of rho(bi_<(k), bi_<'(k)) / 2^|k|,

an infinite sum; :func:`order_metric` returns the truncated value at
depth N together with the certified tail bound 2^-N (sup rho = 1/2, so
the tail is at most 2 * 2^-N * 1/2).  The true distance always lies in
[value, value + bound].  Values are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, NamedTuple, Sequence

from .groups import Element, Group

DEFAULT_SEARCH_CAP = 2**16


class HorizonError(Exception):
    """A query about an infinite object exceeded its computed window."""


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


Comparator = Callable[[Element, Element], Ordering]


class Order:
    """Common operation surface of windowed and lazy orders."""

    group: Group

    def element_at(self, k: int) -> Element:
        """bi(k): the k-th element of the group in this order."""
        raise NotImplementedError

    def index_of(self, g: Element) -> int:
        """The k with bi(k) = g."""
        raise NotImplementedError

    def act(self, g: Element) -> "Order":
        """The translated order g(<), anchored again at the identity."""
        raise NotImplementedError

    def succ(self, g: Element) -> Element:
        """Immediate successor of g in this order."""
        return self.element_at(self.index_of(g) + 1)

    def compare(self, a: Element, b: Element) -> Ordering:
        ia, ib = self.index_of(a), self.index_of(b)
        if ia < ib:
            return Ordering.LESS
        if ia > ib:
            return Ordering.GREATER
        return Ordering.EQUAL

    def interval(self, a: Element, b: Element) -> list[Element]:
        """The finite order interval [a, b], endpoints included."""
        ia, ib = self.index_of(a), self.index_of(b)
        if ia > ib:
            raise ValueError("interval endpoints given in decreasing order")
        return [self.element_at(i) for i in range(ia, ib + 1)]

    def window(self, lo: int, hi: int) -> "OrderWindow":
        """Materialize the segment bi(lo..hi) as an OrderWindow."""
        if not lo <= 0 <= hi:
            raise ValueError("window must contain position 0")
        return OrderWindow(
            self.group, lo, tuple(self.element_at(k) for k in range(lo, hi + 1))
        )


@dataclass(frozen=True)
class OrderWindow(Order):
    """Finite contiguous segment bi(lo), ..., bi(lo+len-1) of an order.

    Anchoredness (bi(0) = identity) and injectivity are checked at
    construction.  ``elements`` is the segment in increasing order.
    """

    group: Group
    lo: int
    elements: tuple[Element, ...]
    _positions: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        hi = self.lo + len(self.elements) - 1
        if not self.lo <= 0 <= hi:
            raise ValueError("window must contain position 0")
        if self.elements[-self.lo] != self.group.identity:
            raise ValueError("window is not anchored: bi(0) != identity")
        positions = {}
        for pos, g in enumerate(self.elements, start=self.lo):
            self.group.check(g)
            if g in positions:
                raise ValueError(f"window repeats element {g!r}")
            positions[g] = pos
        object.__setattr__(self, "_positions", positions)

    @property
    def hi(self) -> int:
        return self.lo + len(self.elements) - 1

    def element_at(self, k: int) -> Element:
        if not self.lo <= k <= self.hi:
            raise HorizonError(f"position {k} outside window [{self.lo}, {self.hi}]")
        return self.elements[k - self.lo]

    def index_of(self, g: Element) -> int:
        try:
            return self._positions[self.group.check(g)]
        except KeyError:
            raise HorizonError(f"element {g!r} not in window") from None

    def act(self, g: Element) -> "OrderWindow":
        k = self.index_of(g)
        ginv = self.group.inv(g)
        return OrderWindow(
            self.group, self.lo - k, tuple(self.group.op(e, ginv) for e in self.elements)
        )


@dataclass(frozen=True)
class LazyOrder(Order):
    """Order given by a total rule k -> bi(k), queryable at any position.

    ``inverse_rule`` should return bi^-1(g) (it may raise HorizonError for
    elements it cannot place); when absent, index_of falls back to a
    zigzag search over |k| <= search_cap.  Returned inverses are verified
    against the forward rule, so an inconsistent pair fails fast.
    """

    group: Group
    rule: Callable[[int], Element]
    inverse_rule: Callable[[Element], int] | None = None
    provenance: str = "custom"
    search_cap: int = DEFAULT_SEARCH_CAP

    def element_at(self, k: int) -> Element:
        return self.rule(k)

    def index_unverified(self, g: Element) -> int:
        """bi^-1(g) without the forward-rule confirmation.

        Composed inverse rules (acted-upon orders) recurse through this
        path; :meth:`index_of` confirms the final answer end to end with
        a single forward evaluation, which catches an inconsistency
        anywhere in the chain without re-verifying every level.
        """
        if self.inverse_rule is not None:
            return self.inverse_rule(g)
        if self.rule(0) == g:
            return 0
        for k in range(1, self.search_cap + 1):
            if self.rule(k) == g:
                return k
            if self.rule(-k) == g:
                return -k
        raise HorizonError(
            f"element {g!r} not found within search cap {self.search_cap}"
        )

    def index_of(self, g: Element) -> int:
        g = self.group.check(g)
        k = self.index_unverified(g)
        if self.inverse_rule is not None and self.rule(k) != g:
            raise ValueError(f"inconsistent inverse rule: rule({k}) != {g!r}")
        return k

    def act(self, g: Element) -> "LazyOrder":
        k = self.index_of(g)
        ginv = self.group.inv(g)
        op = self.group.op

        def rule(i: int) -> Element:
            return op(self.rule(i + k), ginv)

        def inverse(h: Element) -> int:
            return self.index_unverified(op(h, g)) - k

        return LazyOrder(
            self.group, rule, inverse, provenance="acted-upon", search_cap=self.search_cap
        )


def standard_integer_order(group: Group | None = None) -> LazyOrder:
    """The natural order on Z: bi(k) = k, a fixed point of the action."""
    from .groups import get_group

    group = group or get_group("Z")
    if group.name != "Z":
        raise ValueError("the standard order is defined on Z only")
    return LazyOrder(group, rule=lambda k: k, inverse_rule=lambda g: g, provenance="standard")


def act_relational(group: Group, g: Element, compare: Comparator) -> Comparator:
    """Relational action on comparators: a <' b iff a*g < b*g."""
    g = group.check(g)

    def acted(a: Element, b: Element) -> Ordering:
        return compare(group.op(a, g), group.op(b, g))

    return acted


def sort_by_comparator(elements: Iterable[Element], compare: Comparator) -> list[Element]:
    """Sort elements into increasing order under an order comparator."""
    return sorted(elements, key=cmp_to_key(lambda a, b: int(compare(a, b))))


def reindex_check(order: Order, g: Element, i: int) -> bool:
    """Verify the reindexing identities of the bijection action at i.

    Checks bi_{g(<)}(i) = bi_<(i+k) * g^-1 with k = bi^-1(g), and the
    companion bi_{g(<)}(-k) = g^-1.  Both are theorems, so this must
    return True for every order, g and i; it exists as a self-test.
    """
    k = order.index_of(g)
    ginv = order.group.inv(g)
    acted = order.act(g)
    shifted = order.group.op(order.element_at(i + k), ginv)
    return acted.element_at(i) == shifted and acted.element_at(-k) == ginv


def equivariance_check(order: Order, g: Element, radius: int) -> bool:
    """Check that both actions of g produce the same order on a window.

    The bijection action yields the window bi_{g(<)}(-radius..radius);
    the relational comparator must sort that window's element set into
    exactly the same sequence, and spot pairwise comparisons must agree
    with the acted order's comparator.  Exact, no tolerance.
    """
    acted = order.act(g)
    k = order.index_of(g)
    segment = [acted.element_at(i) for i in range(-radius, radius + 1)]

    # Positions of bi(lo+k .. hi+k) in the base order, for O(1) comparisons.
    base_pos = {
        order.element_at(i + k): i for i in range(-radius, radius + 1)
    }

    def relational(a: Element, b: Element) -> Ordering:
        pa = base_pos[order.group.op(a, g)]
        pb = base_pos[order.group.op(b, g)]
        return Ordering.LESS if pa < pb else Ordering.GREATER if pa > pb else Ordering.EQUAL

    if sort_by_comparator(segment, relational) != segment:
        return False
    # pairwise spot checks; segment order already encodes the acted comparator
    n = len(segment)
    pairs = [(i, j) for i in range(n) for j in (i + 1, i + 3, n - 1) if i < j < n]
    for i, j in pairs:
        a, b = segment[i], segment[j]
        if relational(a, b) != Ordering.LESS or relational(b, a) != Ordering.GREATER:
            return False
        if relational(a, a) != Ordering.EQUAL:
            return False
    return True


def order_metric(
    order_a: Order, order_b: Order, depth: int
) -> tuple[Fraction, Fraction]:
    """Truncated order-space distance with a certified tail bound.

    Returns (value, bound) where value sums rho(bi_a(k), bi_b(k)) / 2^|k|
    over |k| <= depth and the true distance lies in [value, value+bound],
    bound = 2^-depth.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if order_a.group is not order_b.group:
        raise ValueError("orders live on different groups")
    rho = order_a.group.rho
    value = Fraction(0)
    for k in range(-depth, depth + 1):
        value += Fraction(1, 2 ** abs(k)) * rho(order_a.element_at(k), order_b.element_at(k))
    return value, Fraction(1, 2**depth)


class PatternKey(NamedTuple):
    """Canonical finite statistic of an order: the window bi(-m..m)."""

    radius: int
    words: tuple[str, ...]


def pattern_key(order: Order, radius: int) -> PatternKey:
    """Encode the window bi(-radius..radius) as a hashable key."""
    return PatternKey(
        radius,
        tuple(order.group.encode(order.element_at(k)) for k in range(-radius, radius + 1)),
    )


# ---------------------------------------------------------------------------
# Order window file format: one line per position, "k<TAB>element",
# contiguous positions, must contain "0<TAB><identity>".


def window_to_lines(window: OrderWindow) -> list[str]:
    return [
        f"{k}\t{window.group.encode(window.element_at(k))}"
        for k in range(window.lo, window.hi + 1)
    ]


def window_from_lines(group: Group, lines: Sequence[str]) -> OrderWindow:
    entries: list[tuple[int, Element]] = []
    for line in lines:
        line = line.rstrip("\n")
        if not line.strip():
            continue
        try:
            pos_text, element_text = line.split("\t")
            entries.append((int(pos_text), group.parse(element_text)))
        except ValueError as exc:
            raise ValueError(f"bad order window line {line!r}") from exc
    if not entries:
        raise ValueError("empty order window")
    entries.sort(key=lambda e: e[0])
    lo = entries[0][0]
    if [k for k, _ in entries] != list(range(lo, lo + len(entries))):
        raise ValueError("order window positions are not contiguous")
    return OrderWindow(group, lo, tuple(g for _, g in entries))


def write_window(window: OrderWindow, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(window_to_lines(window)) + "\n")


def read_window(group: Group, path) -> OrderWindow:
    with open(path, "r", encoding="ascii") as fh:
        return window_from_lines(group, fh.readlines())
