"""Principal-branch Lambert W and the certified integer part of ``e^{W(n)}``."""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import iv

from .errors import DomainError, PrecisionCapError
from .intervals import CAP_BITS, START_BITS, certified_sign

MAX_ITER = 100


@dataclass(frozen=True)
class CertifiedInt:
    value: int
    decision_precision_bits: int


def lambert_w(x: float, tolerance: float = 1e-12) -> float:
    """Solve ``w * exp(w) = x`` for ``w >= 0`` by Halley's method.

    Stops once ``|w e^w - x| <= tolerance * max(1, x)``. The starting point
    ``log1p(x)`` lies above the root, from where the iteration decreases
    monotonically.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if x < 0 or math.isnan(x):
        raise DomainError(f"lambert_w needs x >= 0, got {x}")
    if x == 0:
        return 0.0
    target = tolerance * max(1.0, x)
    w = math.log1p(x)
    for _ in range(MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= target:
            return w
        wp1 = w + 1.0
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_next = w - step
        if w_next == w:
            break
        w = w_next
    ew = math.exp(w)
    if abs(w * ew - x) <= target:
        return w
    raise PrecisionCapError(f"lambert_w({x}) did not reach tolerance {tolerance}")


def klogk_sign(k: int, n: int, *, start_bits: int = START_BITS,
               cap_bits: int = CAP_BITS) -> tuple[int, int]:
    """Sign of ``k ln k - n`` for integers ``k >= 2``, with the deciding precision."""
    return certified_sign(lambda: k * iv.log(k) - n, start_bits=start_bits,
                          cap_bits=cap_bits, what=f"{k}*ln({k}) - {n}")


def _fits(k: int, n: int) -> tuple[bool, int]:
    # k ln k <= n, equivalently ln k <= w(n)
    if k == 1:
        return True, 0
    sign, bits = klogk_sign(k, n)
    return sign < 0, bits


def floor_exp_w(n: int) -> CertifiedInt:
    """``floor(e^{w(n)})`` as the largest ``k >= 1`` with ``k ln k <= n``.

    The float value of W only supplies a starting guess; the answer is
    settled by interval comparisons of ``k ln k`` against ``n`` for the
    candidate and its right neighbour.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DomainError(f"floor_exp_w needs an integer n >= 1, got {n!r}")
    k = max(1, int(math.exp(lambert_w(float(n)))))
    bits = START_BITS
    ok, b = _fits(k, n)
    bits = max(bits, b)
    while not ok:
        k -= 1
        ok, b = _fits(k, n)
        bits = max(bits, b)
    while True:
        ok, b = _fits(k + 1, n)
        bits = max(bits, b)
        if not ok:
            return CertifiedInt(k, bits)
        k += 1
