"""Asymptotic pairs along an order, with certified verdicts.

Fix an order < of type Z on the acting group and write bi(k) for its
k-th element.  Two distinct configurations x, y form an asymptotic pair
along < when d_X(bi(k).x, bi(k).y) -> 0 as k -> +infinity.  That is a
limit statement about infinite objects, so no finite computation decides
it; every result here is therefore one of three certified outcomes and
never a bare boolean:

* ``certified-asymptotic`` -- an explicit bound function eps(k) -> 0 is
  attached (see :func:`construct_pair`) and the computed profile
  confirms it;
* ``consistent-at-horizon`` -- all late profile values are at most the
  maximum possible for a pair that agrees at the tested depth (2 * 2^-N);
* ``refuted`` -- some late profile value exceeds the declared threshold
  (default 1/4, one persistent disagreement among the first two
  enumerated sites), witnessed by its position k.

:func:`construct_pair` realizes the constructive heart of the existence
theorem at desk scale: flipping x on a finite site set E produces a
distinct configuration y, and for every depth N the recentred difference
can only be visible while bi(k) lies in the finite set
(union over n <= N of g_n^-1 E); past

    K0(N) = 1 + max { k >= 0 : bi(k) in union(g_n^-1 E, n <= N) }

the depth-N profile value is exactly 0, so d_X <= 2^-N.  That staircase
in N is the bound eps(k), and it is checkable exhaustively.

Two orders are asymptotic under the order-space successor map exactly
when one is eventually a right translate of the other:

    there are k0, g0 with  bi_<(k) = bi_<'(k) * g0  for all k >= k0,

and then g0 is forced: g0 = bi_<'(k0)^-1 * bi_<(k0).  (Inductively, if
the relation holds at k and the acted orders agree at position 1, it
holds at k+1; that step is replayed numerically by the tests.)
:func:`orders_asymptotic` searches for the smallest such k0 up to half
the horizon and returns the witness, or None — soundness is by the
definition check, completeness holds below the horizon by exhaustion.
:func:`lemma_metric_crosscheck` verifies the metric face of the same
statement: past the recentring step k0 + N the truncated order-space
distance of the successor iterates vanishes at depth N.

:func:`transfer_pair` is the step that turns order asymptoticity into
configuration asymptoticity: from a successor-orbit witness g0 for the
two orders, the pair (x, g0^-1 . x') is profiled along the first order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dynamics import (
    ProductPoint,
    ShiftConfiguration,
    configs_equal_on,
    flip_overlay,
    point_metric,
    shift_act,
)
from .groups import Element
from .orders import Order, order_metric

VERDICT_CERTIFIED = "certified-asymptotic"
VERDICT_CONSISTENT = "consistent-at-horizon"
VERDICT_REFUTED = "refuted"

DEFAULT_THRESHOLD = Fraction(1, 4)


@dataclass(frozen=True)
class AsymptoticCertificate:
    """Analytic tail bound for a constructed pair.

    ``k0_by_depth`` lists (m, K0(m)) for m = 1..depth; past K0(m) the
    depth-m profile value is exactly 0, so the distance is at most 2^-m.
    """

    flip_sites: tuple[Element, ...]
    depth: int
    k0: int
    k0_by_depth: tuple[tuple[int, int], ...]

    def epsilon(self, k: int) -> Fraction:
        """Guaranteed bound on d_X(bi(k).x, bi(k).y); decreasing to 2^-depth."""
        best = 0
        for depth, threshold in self.k0_by_depth:
            if threshold <= k:
                best = max(best, depth)
        return Fraction(1, 2**best) if best else Fraction(1)


@dataclass(frozen=True)
class PairVerdict:
    """Certified outcome of a pair profile scan."""

    verdict: str
    horizon: int
    depth: int
    profile: tuple[tuple[int, Fraction, Fraction], ...]
    threshold: Fraction
    certificate: AsymptoticCertificate | None = None
    refutation_k: int | None = None


def pair_profile(
    x: ShiftConfiguration,
    y: ShiftConfiguration,
    order: Order,
    horizon: int,
    depth: int,
    threshold: Fraction = DEFAULT_THRESHOLD,
    certificate: AsymptoticCertificate | None = None,
) -> PairVerdict:
    """Profile d_X(bi(k).x, bi(k).y) for k = 0..horizon and pass verdict.

    The refutation window is k >= horizon/2.  A certificate certifies
    only when every computed profile value respects its staircase: for
    k past K0(m) the sites up to m agree after recentring, so the
    depth-N value can be at most 2^-m - 2^-N (exactly 0 once m >= N).
    A violated certificate falls through to the evidence-based verdicts,
    so a corrupted certificate can never certify.  Late values above the
    admissible tail bound 2 * 2^-depth but below the threshold also
    refute: they exceed anything a depth-agreeing pair could show.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    profile = []
    for k in range(horizon + 1):
        g = order.element_at(k)
        value, bound = point_metric(shift_act(g, x), shift_act(g, y), depth)
        profile.append((k, value, bound))
    tail = [(k, value) for k, value, _ in profile if 2 * k >= horizon]

    if certificate is not None:
        tail_cut = Fraction(1, 2**depth)
        confirmed = True
        for k, value, _ in profile:
            m = max(
                (d for d, threshold_k in certificate.k0_by_depth if threshold_k <= k),
                default=0,
            )
            if m == 0:
                continue
            allowed = max(Fraction(0), Fraction(1, 2**m) - tail_cut)
            if value > allowed:
                confirmed = False
                break
        if confirmed:
            return PairVerdict(
                VERDICT_CERTIFIED,
                horizon,
                depth,
                tuple(profile),
                threshold,
                certificate=certificate,
            )
    admissible = Fraction(2, 2**depth)
    for k, value in tail:
        if value > threshold:
            return PairVerdict(
                VERDICT_REFUTED, horizon, depth, tuple(profile), threshold, refutation_k=k
            )
    for k, value in tail:
        if value > admissible:
            return PairVerdict(
                VERDICT_REFUTED, horizon, depth, tuple(profile), threshold, refutation_k=k
            )
    return PairVerdict(
        VERDICT_CONSISTENT, horizon, depth, tuple(profile), threshold, certificate=certificate
    )


def construct_pair(
    x: ShiftConfiguration,
    order: Order,
    flip_sites: Iterable[Element],
    depth: int,
) -> tuple[ShiftConfiguration, AsymptoticCertificate]:
    """Flip x on a finite nonempty site set and certify the pair.

    Returns (y, certificate) with y differing from x exactly on the flip
    set.  The certificate's K0 staircase is computed by inverse lookups
    of the finitely many group elements that can ever bring a flipped
    site into view at each depth; lookups beyond the order's search cap
    surface as horizon errors.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    group = order.group
    sites = [group.check(s) for s in flip_sites]
    if not sites:
        raise ValueError("flip set must be nonempty (the pair must be distinct)")
    if len(set(sites)) != len(sites):
        raise ValueError("flip sites must be distinct")
    y = flip_overlay(x, sites)

    k0_by_depth = []
    worst = -1
    for m in range(1, depth + 1):
        g_m_inv = group.inv(group.enumerate(m))
        for site in sites:
            k = order.index_of(group.op(g_m_inv, site))
            if k >= 0:
                worst = max(worst, k)
        k0_by_depth.append((m, worst + 1))
    certificate = AsymptoticCertificate(
        tuple(sites), depth, worst + 1, tuple(k0_by_depth)
    )
    return y, certificate


@dataclass(frozen=True)
class LemmaWitness:
    """Eventual right-translation witness between two orders."""

    k0: int
    g0: Element
    horizon: int


def orders_asymptotic(order_a: Order, order_b: Order, horizon: int) -> LemmaWitness | None:
    """Find the smallest k0 <= horizon/2 with bi_a(k) = bi_b(k) * g0
    for all k in [k0, horizon], g0 forced as bi_b(k0)^-1 * bi_a(k0).

    Returns None when no such k0 exists below half the horizon: a
    horizon-relative negative (exhaustive below it), not a proof.
    """
    if horizon < 2:
        raise ValueError("horizon must be >= 2")
    if order_a.group is not order_b.group:
        raise ValueError("orders live on different groups")
    group = order_a.group
    forced = [
        group.op(group.inv(order_b.element_at(k)), order_a.element_at(k))
        for k in range(horizon + 1)
    ]
    g0 = forced[horizon]
    k0 = horizon
    for k in range(horizon - 1, -1, -1):
        if forced[k] != g0:
            break
        k0 = k
    if 2 * k0 <= horizon:
        return LemmaWitness(k0, g0, horizon)
    return None


def lemma_metric_crosscheck(
    order_a: Order,
    order_b: Order,
    witness: LemmaWitness,
    horizon: int,
    depth: int,
) -> bool:
    """Verify a translation witness against the metric face.

    Checks the defining relation on [k0, horizon] and that the truncated
    order-space distance of the successor iterates bi_a(k)(<a) and
    bi_b(k)(<b) is exactly 0 at depth N for every k >= k0 + N (the
    recentring step): by then the acted orders agree on all positions
    >= k0 - k <= -N, hence on the whole truncation window.
    """
    group = order_a.group
    for k in range(witness.k0, horizon + 1):
        if order_a.element_at(k) != group.op(order_b.element_at(k), witness.g0):
            return False
    for k in range(witness.k0, horizon + 1):
        iter_a = order_a.act(order_a.element_at(k))
        iter_b = order_b.act(order_b.element_at(k))
        value, _bound = order_metric(iter_a, iter_b, depth)
        if k >= witness.k0 + depth and value != 0:
            return False
    return True


@dataclass(frozen=True)
class TransferResult:
    """Outcome of transferring a successor-orbit pair to one order."""

    x: ShiftConfiguration
    y: ShiftConfiguration
    witness: LemmaWitness
    verdict: PairVerdict
    identical_on_box: bool
    box_radius: int


def transfer_pair(
    point_a: ProductPoint,
    point_b: ProductPoint,
    horizon: int,
    depth: int,
    threshold: Fraction = DEFAULT_THRESHOLD,
    certificate: AsymptoticCertificate | None = None,
    box_radius: int = 2,
) -> TransferResult:
    """Turn a successor-orbit pair into a pair along the first order.

    Requires the two orders to admit a translation witness g0 at the
    horizon (g0 = identity when the orders agree there); the transferred
    pair is (x, g0^-1 . x'), profiled along the first order.  Raises
    ValueError when no witness exists.
    """
    witness = orders_asymptotic(point_a.order, point_b.order, horizon)
    if witness is None:
        raise ValueError("orders admit no successor-orbit witness at this horizon")
    group = point_a.order.group
    y = shift_act(group.inv(witness.g0), point_b.config)
    verdict = pair_profile(
        point_a.config, y, point_a.order, horizon, depth, threshold, certificate
    )
    box = group.coordinate_box(box_radius)
    return TransferResult(
        point_a.config,
        y,
        witness,
        verdict,
        identical_on_box=configs_equal_on(point_a.config, y, box),
        box_radius=box_radius,
    )
