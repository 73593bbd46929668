"""Exact Stirling numbers of the second kind, Bell numbers and row modes.

Rows are built with the triangle recurrence
``S(n, k) = S(n-1, k-1) + k * S(n-1, k)``, keeping only the current row.
Everything is plain Python integers; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import config
from .errors import SizeLimitError


@dataclass(frozen=True)
class StirlingRow:
    """Row ``n`` of the triangle, holding ``S(n, 1), ..., S(n, n)``.

    Indexing is 1-based and total: ``row[k]`` is 0 for ``k <= 0`` or ``k > n``.
    """

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.n:
            raise ValueError(f"row {self.n} needs {self.n} entries, got {len(self.values)}")

    def __getitem__(self, k: int) -> int:
        if 1 <= k <= self.n:
            return self.values[k - 1]
        return 0

    def __len__(self) -> int:
        return self.n

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class ModeLocation:
    index: int
    ties_right: bool


@dataclass(frozen=True)
class NewtonReport:
    """Outcome of the Newton / log-concavity check on one row.

    Truthy exactly when both families of inequalities hold.
    """

    n: int
    newton_ok: bool
    strict_log_concave_ok: bool
    newton_failures: tuple[int, ...] = field(default=())
    log_concave_failures: tuple[int, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.newton_ok and self.strict_log_concave_ok

    def __bool__(self) -> bool:
        return self.ok


def _check_n(n: int, limit: int | None) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise SizeLimitError(f"n must be an integer, got {n!r}")
    limit = config.max_n() if limit is None else limit
    if n < 1:
        raise SizeLimitError(f"n must be >= 1, got {n}")
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds the configured maximum {limit}")
    return limit


def _next_row(prev: list[int]) -> list[int]:
    # prev holds S(m, 0..m); result holds S(m+1, 0..m+1)
    m = len(prev) - 1
    cur = [0] * (m + 2)
    for k in range(1, m + 1):
        cur[k] = prev[k - 1] + k * prev[k]
    cur[m + 1] = prev[m]
    return cur


def iter_rows(start: int = 1, stop: int | None = None, *, limit: int | None = None) -> Iterator[StirlingRow]:
    """Yield rows ``start..stop`` inclusive by rolling one row forward.

    With ``stop=None`` the iteration runs up to the configured maximum.
    """
    limit = _check_n(start, limit)
    if stop is None:
        stop = limit
    if stop > limit:
        raise SizeLimitError(f"n={stop} exceeds the configured maximum {limit}")
    cur = [1]  # S(0, 0)
    for m in range(1, stop + 1):
        cur = _next_row(cur)
        if m >= start:
            yield StirlingRow(m, tuple(cur[1:]))


def stirling_row(n: int, *, limit: int | None = None) -> StirlingRow:
    _check_n(n, limit)
    return next(iter_rows(n, n, limit=limit))


def stirling(n: int, k: int, *, limit: int | None = None) -> int:
    """S(n, k), zero outside ``1 <= k <= n``."""
    _check_n(n, limit)
    if k < 1 or k > n:
        return 0
    return stirling_row(n, limit=limit)[k]


def bell_number(n: int, *, limit: int | None = None) -> int:
    return stirling_row(n, limit=limit).total()


def locate_mode(row: StirlingRow) -> ModeLocation:
    """Leftmost maximum of the row, with a flag for ``S(n,K) == S(n,K+1)``."""
    best = 1
    for k in range(2, row.n + 1):
        if row[k] > row[best]:
            best = k
    return ModeLocation(best, best < row.n and row[best] == row[best + 1])


def satisfies_mode_chain(row: StirlingRow, index: int) -> bool:
    """``S(n, K-1) < S(n, K) >= S(n, K+1)`` with zero padding at both ends."""
    return row[index - 1] < row[index] >= row[index + 1]


def check_newton_row(row: StirlingRow) -> NewtonReport:
    """Newton's inequalities on the coefficients of ``sum_k S(n,k) x^k``.

    With ``c_i = S(n, i)`` for ``i = 0..n`` (so ``c_0 = 0``) every
    ``0 <= i <= n-2`` must satisfy
    ``c_{i+1}^2 (i+1)(n-i-1) >= (i+2)(n-i) c_i c_{i+2}``. Strict
    log-concavity ``S(n,k)^2 > S(n,k-1) S(n,k+1)`` is checked for
    ``2 <= k <= n-1``.
    """
    n = row.n
    c = [0, *row.values]
    newton_bad = tuple(
        i for i in range(n - 1)
        if c[i + 1] ** 2 * (i + 1) * (n - i - 1) < (i + 2) * (n - i) * c[i] * c[i + 2]
    )
    lc_bad = tuple(k for k in range(2, n) if c[k] ** 2 <= c[k - 1] * c[k + 1])
    return NewtonReport(n, not newton_bad, not lc_bad, newton_bad, lc_bad)
