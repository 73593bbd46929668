"""Certified sign decisions for real expressions via mpmath interval arithmetic.

Every comparison here starts at a modest working precision and doubles it
until the enclosing interval no longer straddles zero. Callers pass a
function building the interval at the current precision, so the expression
is re-evaluated from scratch at each level.
"""

from __future__ import annotations

from typing import Callable

from mpmath import iv

from .errors import PrecisionCapError

START_BITS = 64
CAP_BITS = 4096


def certified_sign(build: Callable[[], "iv.mpf"], *, start_bits: int = START_BITS,
                   cap_bits: int = CAP_BITS, what: str = "expression") -> tuple[int, int]:
    """Return ``(sign, bits)`` of the real number enclosed by ``build()``.

    ``sign`` is -1 or +1; ``bits`` is the precision at which the enclosure
    first excluded zero. A value that is exactly zero never separates and
    ends in :class:`PrecisionCapError`.
    """
    bits = start_bits
    saved = iv.prec
    try:
        while bits <= cap_bits:
            iv.prec = bits
            x = build()
            if x.a > 0:
                return 1, bits
            if x.b < 0:
                return -1, bits
            bits *= 2
    finally:
        iv.prec = saved
    raise PrecisionCapError(f"could not decide the sign of {what} within {cap_bits} bits")


def enclosure(build: Callable[[], "iv.mpf"], bits: int) -> "iv.mpf":
    """Evaluate ``build`` once at a fixed precision (used for re-checks)."""
    saved = iv.prec
    try:
        iv.prec = bits
        return build()
    finally:
        iv.prec = saved
