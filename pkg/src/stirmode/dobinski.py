"""Mode of the sequence ``k^n / k!`` and the Dobinski sum identity."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import iv

from .errors import DomainError, PrecisionCapError, TheoremViolation
from .intervals import certified_sign
from .lambertw import floor_exp_w
from .stirling import bell_number

EXACT_THRESHOLD = 10_000


@dataclass(frozen=True)
class DobinskiMode:
    n: int
    mode: int
    k_star: int
    branch_greater: bool


@dataclass(frozen=True)
class DobinskiSumReport:
    n: int
    lhs: str
    rhs: str
    terms: int
    tail_bound: str
    rel_diff: float
    rel_tol: float

    @property
    def ok(self) -> bool:
        return self.rel_diff <= self.rel_tol

    def __bool__(self) -> bool:
        return self.ok


def _check_nk(n: int, k: int) -> None:
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")


def ratio_sign_exact(n: int, k: int) -> int:
    _check_nk(n, k)
    return 1 if (k + 1) ** (n - 1) > k ** n else -1


def ratio_sign_interval(n: int, k: int) -> int:
    _check_nk(n, k)
    if k == 1:
        # (n-1) ln 2 > 0 = n ln 1
        return 1
    sign, _ = certified_sign(lambda: (n - 1) * iv.log(k + 1) - n * iv.log(k),
                             what=f"log f({k}) at n={n}")
    return sign


def ratio_sign(n: int, k: int, *, exact_threshold: int = EXACT_THRESHOLD) -> int:
    """Sign of ``f(k) - 1`` where ``f(k) = (k+1)^(n-1) / k^n``.

    ``f(k)`` is the ratio of consecutive terms of ``k^n / k!``. Exact
    integer comparison up to ``exact_threshold``, interval logs above.
    """
    if n <= exact_threshold:
        return ratio_sign_exact(n, k)
    return ratio_sign_interval(n, k)


def dobinski_mode(n: int, *, exact_threshold: int = EXACT_THRESHOLD) -> DobinskiMode:
    if n < 2:
        raise DomainError(f"dobinski_mode needs n >= 2, got {n}")
    k_star = floor_exp_w(n).value
    start = max(1, k_star - 2)
    if start > 1 and ratio_sign(n, start - 1, exact_threshold=exact_threshold) < 0:
        raise TheoremViolation("sequence already decreasing before the scan window",
                               {"n": n, "k_star": k_star, "k": start - 1})
    k = start
    while ratio_sign(n, k, exact_threshold=exact_threshold) > 0:
        k += 1
        if k > k_star + 3:
            break
    mode = k
    if mode not in (k_star, k_star + 1):
        raise TheoremViolation(f"mode of k^{n}/k! is {mode}, k_star={k_star}",
                               {"n": n, "mode": mode, "k_star": k_star})
    return DobinskiMode(n, mode, k_star, mode == k_star)


def corollary_bounds(n: int) -> tuple[int, int]:
    """Interval for ``K_n`` chosen by the branch test at ``k_star``."""
    dm = dobinski_mode(n)
    ks = dm.k_star
    if dm.branch_greater:
        return max(1, ks - 2), ks
    return max(1, ks - 1), ks + 1


def dobinski_sum_check(n: int, rel_tol: float = 1e-9, *, digits: int = 40,
                       max_terms: int = 1_000_000) -> DobinskiSumReport:
    """Compare ``e * B_n`` with a truncated ``sum_{k>=1} k^n / k!``.

    Summation stops once the term ratio is below 1/2 and the current term is
    below ``rel_tol/2`` of the partial sum; the remaining tail is then at
    most one further term's worth and is added to the error budget.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    with mpmath.workdps(digits):
        lhs = mpmath.e * bell_number(n)
        total = mpmath.mpf(0)
        k = 1
        term = mpmath.mpf(1)  # 1^n / 1!
        while True:
            total += term
            nxt = term * mpmath.power(mpmath.mpf(k + 1) / k, n) / (k + 1)
            if nxt < term / 2 and term < rel_tol * total / 2:
                tail = nxt * 2  # geometric bound on sum_{j>k} with ratio <= 1/2
                break
            term = nxt
            k += 1
            if k > max_terms:
                raise PrecisionCapError(f"Dobinski sum for n={n} did not settle in {max_terms} terms")
        worst = max(abs(lhs - total), abs(lhs - total - tail))
        rel = worst / lhs
        return DobinskiSumReport(n, mpmath.nstr(lhs, 20), mpmath.nstr(total, 20), k,
                                 mpmath.nstr(tail, 5), float(rel), rel_tol)
