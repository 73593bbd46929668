"""Exact Poisson-binomial distributions and the Poisson(1) mode shift.

A sum ``S`` of independent Bernoulli variables has a pmf with rational
weights; ``S + Z`` with ``Z ~ Poisson(1)`` has weights proportional to
``g(k) = sum_j c_j / (k - j)!``. All mode questions are answered by exact
integer comparisons on a common-denominator representation.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import factorial, lcm
from typing import Iterable, Sequence

from .errors import ContractError, StirmodeError, TheoremViolation

MAX_DENOMINATOR = 10_000
SCAN_SLACK = 64


@dataclass(frozen=True)
class BernoulliVector:
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.probs)
        if not probs:
            raise ValueError("need at least one Bernoulli variable")
        for p in probs:
            if p < 0 or p > 1:
                raise ValueError(f"probability {p} outside [0, 1]")
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return len(self.probs)


@dataclass(frozen=True)
class RationalPMF:
    """Weights ``numerators[i] / denominator`` on ``0..len-1``."""

    numerators: tuple[int, ...]
    denominator: int

    def __post_init__(self):
        nums = tuple(int(c) for c in self.numerators)
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if any(c < 0 for c in nums):
            raise ValueError("weights must be nonnegative")
        if sum(nums) != self.denominator:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "numerators", nums)

    @classmethod
    def from_weights(cls, weights: Iterable) -> "RationalPMF":
        ws = [Fraction(w) for w in weights]
        d = lcm(*(w.denominator for w in ws)) if ws else 1
        return cls(tuple(w.numerator * (d // w.denominator) for w in ws), d)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.numerators)

    def __len__(self) -> int:
        return len(self.numerators)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.numerators):
            return Fraction(self.numerators[i], self.denominator)
        return Fraction(0)


@dataclass(frozen=True)
class ShiftedModeReport:
    m0: int
    m1: int
    m1_unique: bool
    shift: int
    m0_modes: tuple[int, ...] = ()


@dataclass(frozen=True)
class DarrochReport:
    mean: Fraction
    modes: tuple[int, ...]
    ok: bool

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class SearchReport:
    n: int
    trials: int
    seed: int
    grid: int | None
    evaluated: int = 0
    skipped_nonunique: int = 0
    shift_counts: Counter = field(default_factory=Counter)
    witnesses: list = field(default_factory=list)
    prop1_violations: list = field(default_factory=list)

    @property
    def max_shift(self) -> int | None:
        return max(self.shift_counts) if self.shift_counts else None

    @property
    def counterexample_found(self) -> bool:
        return bool(self.witnesses)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "grid": self.grid,
            "evaluated": self.evaluated,
            "skipped_nonunique": self.skipped_nonunique,
            "shift_counts": {str(s): self.shift_counts[s] for s in sorted(self.shift_counts)},
            "max_shift": self.max_shift,
            "counterexample_found": self.counterexample_found,
            "witnesses": self.witnesses,
            "prop1_violations": self.prop1_violations,
        }


# -- integer kernels -------------------------------------------------------

def _convolve(pairs: Iterable[tuple[int, int]]) -> list[int]:
    """Coefficients of ``prod (q_i + a_i x)`` for integer pairs ``(q_i, a_i)``."""
    c = [1]
    for q, a in pairs:
        nxt = [0] * (len(c) + 1)
        for i, ci in enumerate(c):
            if ci:
                nxt[i] += ci * q
                nxt[i + 1] += ci * a
        c = nxt
    return c


def _modes(nums: Sequence[int]) -> tuple[int, ...]:
    top = max(nums)
    return tuple(i for i, c in enumerate(nums) if c == top)


def _is_log_concave(nums: Sequence[int]) -> bool:
    support = [i for i, c in enumerate(nums) if c]
    if not support:
        return False
    if support[-1] - support[0] + 1 != len(support):
        return False
    return all(nums[i + 1] ** 2 >= nums[i] * nums[i + 2] for i in range(len(nums) - 2))


@lru_cache(maxsize=256)
def _falling(top: int) -> tuple[int, ...]:
    # top! / t! for t = 0..top
    out = [1] * (top + 1)
    for t in range(top - 1, -1, -1):
        out[t] = out[t + 1] * (t + 1)
    return tuple(out)


def _scaled_g(nums: Sequence[int], k: int, top: int) -> int:
    """``g(k)`` times ``denominator * top!``; requires ``k <= top``."""
    r = _falling(top)
    return sum(nums[j] * r[k - j] for j in range(min(k, len(nums) - 1) + 1))


def _shift_mode(nums: Sequence[int]) -> tuple[int, bool]:
    """Leftmost argmax of ``g`` and whether it is the only maximiser."""
    n = len(nums) - 1
    cap = n + SCAN_SLACK
    top = n + 4
    while True:
        prev = _scaled_g(nums, 0, top)
        best, best_val, ties = 0, prev, 1
        for k in range(1, top + 1):
            cur = _scaled_g(nums, k, top)
            if cur < prev:
                return best, ties == 1
            if cur > best_val:
                best, best_val, ties = k, cur, 1
            elif cur == best_val:
                ties += 1
            prev = cur
        if top >= cap:
            raise StirmodeError(f"no strict decrease of g within k <= {cap}")
        top = cap


# -- public operations -----------------------------------------------------

def pb_pmf(b: BernoulliVector) -> RationalPMF:
    """Exact pmf of ``sum X_i`` by iterated two-point convolution."""
    d = 1
    for p in b.probs:
        d *= p.denominator
    nums = _convolve((p.denominator - p.numerator, p.numerator) for p in b.probs)
    return RationalPMF(tuple(nums), d)


def pb_mean(b: BernoulliVector) -> Fraction:
    return sum(b.probs, Fraction(0))


def modes_of(pmf: RationalPMF) -> frozenset[int]:
    return frozenset(_modes(pmf.numerators))


def darroch_check(b: BernoulliVector, pmf: RationalPMF | None = None) -> DarrochReport:
    """Every mode ``m`` of ``S`` must satisfy ``|m - E S| < 1``."""
    pmf = pb_pmf(b) if pmf is None else pmf
    mu = pb_mean(b)
    modes = _modes(pmf.numerators)
    return DarrochReport(mu, modes, all(abs(m - mu) < 1 for m in modes))


def poisson1_shift_weights(pmf: RationalPMF, k_max: int) -> list[Fraction]:
    """``g(0..k_max)`` with ``g(k) = e * Pr(S + Z = k)``."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    scale = pmf.denominator * factorial(k_max)
    return [Fraction(_scaled_g(pmf.numerators, k, k_max), scale) for k in range(k_max + 1)]


def shifted_mode(pmf: RationalPMF) -> ShiftedModeReport:
    """Leftmost mode ``m1`` of ``S + Z`` together with the leftmost mode of ``S``.

    The input must be log-concave with contiguous support, which is what
    makes ``g`` unimodal and lets the scan stop at its first strict decrease.
    """
    nums = pmf.numerators
    if not _is_log_concave(nums):
        raise ContractError("pmf is not log-concave; not a Bernoulli-sum distribution")
    modes = _modes(nums)
    m1, unique = _shift_mode(nums)
    return ShiftedModeReport(modes[0], m1, unique, m1 - modes[0], modes)


def _shift_violation(report: ShiftedModeReport) -> bool:
    return report.m1_unique and any(not 0 <= report.m1 - m <= 2 for m in report.m0_modes)


def prop1_check(b: BernoulliVector, pmf: RationalPMF | None = None) -> ShiftedModeReport:
    """Mode shift under Poisson(1) convolution; raises if it leaves ``[0, 2]``."""
    pmf = pb_pmf(b) if pmf is None else pmf
    report = shifted_mode(pmf)
    if _shift_violation(report):
        raise TheoremViolation(
            f"unique mode m1={report.m1} of S+Z is not within [m0, m0+2] for modes {report.m0_modes}",
            {"probs": [str(p) for p in b.probs], "pmf": [str(w) for w in pmf.weights],
             "m0_modes": list(report.m0_modes), "m1": report.m1},
        )
    return report


def section3_rhs(pmf: RationalPMF, m0: int) -> Fraction:
    """``sum_{k<=m0} c_k / ((m0-k)! (m0+2-k)) - c_{m0+2}``."""
    total = sum((pmf[k] / (factorial(m0 - k) * (m0 + 2 - k)) for k in range(m0 + 1)), Fraction(0))
    return total - pmf[m0 + 2]


def section3_identity_check(b: BernoulliVector, pmf: RationalPMF | None = None) -> bool:
    """Exact check of ``g(m0+1) - g(m0+2)`` against its closed form."""
    pmf = pb_pmf(b) if pmf is None else pmf
    m0 = _modes(pmf.numerators)[0]
    g = poisson1_shift_weights(pmf, m0 + 2)
    return g[m0 + 1] - g[m0 + 2] == section3_rhs(pmf, m0)


def newton_coefficient_check(b: BernoulliVector, pmf: RationalPMF | None = None) -> bool:
    """Newton's inequalities on ``c_i = Pr(S = i)``.

    For ``n <= 5`` the factor is at least 2, so this also requires
    ``c_{i+1}^2 >= 2 c_i c_{i+2}`` and ``c_m >= 2 c_{m+2}`` at every mode ``m``.
    """
    pmf = pb_pmf(b) if pmf is None else pmf
    c = list(pmf.numerators) + [0, 0]
    n = len(b)
    for i in range(n - 1):
        if c[i + 1] ** 2 * (i + 1) * (n - i - 1) < (i + 2) * (n - i) * c[i] * c[i + 2]:
            return False
    if n <= 5:
        if any(c[i + 1] ** 2 < 2 * c[i] * c[i + 2] for i in range(n - 1)):
            return False
        if any(c[m] < 2 * c[m + 2] for m in _modes(pmf.numerators)):
            return False
    return True


# -- conjecture search -----------------------------------------------------

def random_ratios(n: int, rng: random.Random, max_denominator: int = MAX_DENOMINATOR) -> list[tuple[int, int]]:
    """``n`` pairs ``(a, d)`` with ``d`` uniform on ``1..max_denominator`` and ``a`` on ``0..d``."""
    out = []
    for _ in range(n):
        d = rng.randint(1, max_denominator)
        out.append((rng.randint(0, d), d))
    return out


def random_vector(n: int, rng: random.Random, max_denominator: int = MAX_DENOMINATOR) -> BernoulliVector:
    return BernoulliVector(tuple(Fraction(a, d) for a, d in random_ratios(n, rng, max_denominator)))


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent, schedule-free stream for one trial."""
    return random.Random(f"stirmode:{seed}:{trial}")


def _record(report: SearchReport, nums: Sequence[int], ratios: Sequence[tuple[int, int]], kind: str, idx: int) -> None:
    modes = _modes(nums)
    m1, unique = _shift_mode(nums)
    if not unique:
        report.skipped_nonunique += 1
        return
    report.evaluated += 1
    shift = m1 - modes[0]
    report.shift_counts[shift] += 1
    if any(not 0 <= m1 - m <= 2 for m in modes):
        report.prop1_violations.append({"id": f"{kind}:{idx}", "probs": _ratio_strings(ratios), "m0_modes": list(modes), "m1": m1})
    if shift >= 2:
        report.witnesses.append({"id": f"{kind}:{idx}", "probs": _ratio_strings(ratios), "m0": modes[0], "m1": m1, "shift": shift})


def _ratio_strings(ratios: Sequence[tuple[int, int]]) -> list[str]:
    return [str(Fraction(a, d)) for a, d in ratios]


def grid_vectors(n: int, resolution: int) -> Iterable[tuple[int, ...]]:
    """Numerators ``a_1 <= ... <= a_n`` of probabilities ``a_i / resolution``.

    The sum is symmetric in its summands, so nondecreasing tuples cover
    every grid point up to permutation.
    """
    return combinations_with_replacement(range(resolution + 1), n)


def conjecture_search(n: int, trials: int, seed: int = 0, grid: int | None = None,
                      max_denominator: int = MAX_DENOMINATOR) -> SearchReport:
    """Look for unique-``m1`` cases with ``m1 = m0 + 2``.

    Runs ``trials`` seeded random vectors, then (optionally) a full grid
    sweep with step ``1/grid``. Non-unique ``m1`` cases are counted and
    skipped.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    if grid is not None and grid < 1:
        raise ValueError("grid resolution must be >= 1")
    report = SearchReport(n, trials, seed, grid)
    for t in range(trials):
        ratios = random_ratios(n, trial_rng(seed, t), max_denominator)
        nums = _convolve((d - a, a) for a, d in ratios)
        _record(report, nums, ratios, "trial", t)
    if grid is not None:
        for idx, tup in enumerate(grid_vectors(n, grid)):
            nums = _convolve((grid - a, a) for a in tup)
            _record(report, nums, [(a, grid) for a in tup], "grid", idx)
    return report
