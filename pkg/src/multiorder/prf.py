"""Counter-based pseudorandom function with splittable, structured keys.

Every random choice in this package (block swap coins, hierarchy offsets,
shift-configuration symbols) is a pure function of a 64-bit seed plus a
label path, so any window of any sampled object can be computed without
materializing the rest of it, and batch runs parallelize with no shared
state.  The PRF is keyed BLAKE2b truncated to 64 bits; labels are joined
with an unambiguous separator so distinct paths never collide.
"""

from __future__ import annotations

import hashlib

_SEP = b"\x1f"


def _encode_part(part) -> bytes:
    if isinstance(part, bytes):
        return part
    if isinstance(part, (tuple, list)):
        return b"(" + _SEP.join(_encode_part(p) for p in part) + b")"
    return str(part).encode("ascii")


def prf_u64(seed: int, *parts) -> int:
    """Pseudorandom 64-bit unsigned integer determined by (seed, parts)."""
    h = hashlib.blake2b(
        _SEP.join(_encode_part(p) for p in parts),
        digest_size=8,
        key=(seed & 0xFFFFFFFFFFFFFFFF).to_bytes(8, "little"),
    )
    return int.from_bytes(h.digest(), "little")


def prf_bit(seed: int, *parts) -> int:
    """Fair coin in {0, 1}."""
    return prf_u64(seed, *parts) & 1


def prf_below(seed: int, n: int, *parts) -> int:
    """Uniform-ish integer in [0, n).

    Plain modular reduction; the bias for any n that fits our alphabets
    and branching factors (n <= 256) is below 2^-55 and irrelevant at
    desk scale.
    """
    return prf_u64(seed, *parts) % n


def prf_event(seed: int, probability: float, *parts) -> bool:
    """Bernoulli(probability) event; exact for dyadic probabilities."""
    if probability <= 0.0:
        return False
    if probability >= 1.0:
        return True
    threshold = int(probability * 2.0**64)
    return prf_u64(seed, *parts) < threshold
