"""Per-n verification of the bounds on the mode ``K_n`` of ``S(n, .)``."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterator

from mpmath import iv

from .dobinski import dobinski_mode
from .errors import SizeLimitError
from .intervals import certified_sign
from .lambertw import floor_exp_w
from .stirling import StirlingRow, iter_rows, locate_mode, stirling_row

CP_RANGE = (2, 1200)
WEGNER_UPPER_FROM = 3
WEGNER_LOWER_FROM = 31
IMPLICATION_UPPER_FROM = 7
IMPLICATION_LOWER_FROM = 34

CHECKS = ("theorem1", "cp", "corollary", "equality",
          "wegner_upper", "wegner_lower", "implication_upper", "implication_lower")


def _wegner_upper(n: int):
    ln = iv.log(n)
    return n / (ln - iv.log(ln))


def _wegner_lower(n: int):
    ln = iv.log(n)
    return n / ln * (1 + (iv.log(ln) - 1) / ln)


def below_wegner_upper(value: int, n: int) -> bool:
    """``value < n / (ln n - ln ln n)``, certified."""
    sign, _ = certified_sign(lambda: _wegner_upper(n) - value, what=f"Wegner upper at n={n}")
    return sign > 0


def above_wegner_lower(value: int, n: int) -> bool:
    """``value > (n / ln n)(1 + (ln ln n - 1) / ln n)``, certified."""
    sign, _ = certified_sign(lambda: value - _wegner_lower(n), what=f"Wegner lower at n={n}")
    return sign > 0


@dataclass(frozen=True)
class CheckReport:
    n: int
    K_n: int
    ties_right: bool
    k_star: int
    branch_greater: bool
    corollary_interval: tuple[int, int]
    corollary_ok: bool
    theorem1_ok: bool
    cp_membership_ok: bool
    wegner_upper_ok: bool | None
    wegner_lower_ok: bool | None
    implication_upper_ok: bool | None
    implication_lower_ok: bool | None
    equality_event: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["corollary_interval"] = list(self.corollary_interval)
        return d


def verify_n(n: int, row: StirlingRow | None = None) -> CheckReport:
    """All per-n checks. Mathematical failures are recorded, never raised."""
    if n < 2:
        raise SizeLimitError(f"verify_n needs n >= 2, got {n}")
    if row is None:
        row = stirling_row(n)
    elif row.n != n:
        raise ValueError(f"row is for n={row.n}, not {n}")
    mode = locate_mode(row)
    K = mode.index
    dm = dobinski_mode(n)
    ks = dm.k_star
    lo, hi = (max(1, ks - 2), ks) if dm.branch_greater else (max(1, ks - 1), ks + 1)
    return CheckReport(
        n=n,
        K_n=K,
        ties_right=mode.ties_right,
        k_star=ks,
        branch_greater=dm.branch_greater,
        corollary_interval=(lo, hi),
        corollary_ok=lo <= K <= hi,
        theorem1_ok=ks - 2 <= K <= ks + 1,
        cp_membership_ok=K in (ks - 1, ks),
        wegner_upper_ok=below_wegner_upper(K, n) if n >= WEGNER_UPPER_FROM else None,
        wegner_lower_ok=above_wegner_lower(K, n) if n >= WEGNER_LOWER_FROM else None,
        implication_upper_ok=below_wegner_upper(ks + 1, n) if n >= IMPLICATION_UPPER_FROM else None,
        implication_lower_ok=above_wegner_lower(ks - 2, n) if n >= IMPLICATION_LOWER_FROM else None,
        equality_event=mode.ties_right,
    )


def iter_reports(start: int, stop: int) -> Iterator[CheckReport]:
    if start < 2:
        raise SizeLimitError(f"range must start at n >= 2, got {start}")
    if stop < start:
        raise SizeLimitError(f"empty range [{start}, {stop}]")
    for row in iter_rows(start, stop):
        yield verify_n(row.n, row)


@dataclass
class RangeSummary:
    start: int
    stop: int
    reports: list[CheckReport] = field(default_factory=list)
    failures: dict = field(default_factory=lambda: {c: [] for c in CHECKS})
    equality_ns: list[int] = field(default_factory=list)
    cp_informational_misses: list[int] = field(default_factory=list)

    def add(self, r: CheckReport) -> None:
        self.reports.append(r)
        if not r.theorem1_ok:
            self.failures["theorem1"].append(r.n)
        if not r.corollary_ok:
            self.failures["corollary"].append(r.n)
        if not r.cp_membership_ok:
            # beyond the scanned range of the original claim: informational only
            if CP_RANGE[0] <= r.n <= CP_RANGE[1]:
                self.failures["cp"].append(r.n)
            else:
                self.cp_informational_misses.append(r.n)
        if r.equality_event:
            self.equality_ns.append(r.n)
            if r.n > 2:
                self.failures["equality"].append(r.n)
        for name, ok in (("wegner_upper", r.wegner_upper_ok), ("wegner_lower", r.wegner_lower_ok),
                         ("implication_upper", r.implication_upper_ok),
                         ("implication_lower", r.implication_lower_ok)):
            if ok is False:
                self.failures[name].append(r.n)

    def failure_counts(self) -> dict:
        return {c: len(v) for c, v in self.failures.items()}

    def passed(self, checks=CHECKS) -> bool:
        return all(not self.failures[c] for c in checks)

    def as_dict(self, checks=CHECKS) -> dict:
        return {
            "from": self.start,
            "to": self.stop,
            "checks": list(checks),
            "failure_counts": {c: len(self.failures[c]) for c in checks},
            "failures": {c: self.failures[c] for c in checks},
            "equality_event_n": self.equality_ns,
            "cp_informational_misses": self.cp_informational_misses,
            "passed": self.passed(checks),
        }


def verify_range(start: int, stop: int) -> RangeSummary:
    """Run :func:`verify_n` over ``start..stop`` with one rolling row."""
    summary = RangeSummary(start, stop)
    for r in iter_reports(start, stop):
        summary.add(r)
    return summary


@dataclass
class ImplicationReport:
    start: int
    stop: int
    upper_checked: int = 0
    lower_checked: int = 0
    upper_failures: list[int] = field(default_factory=list)
    lower_failures: list[int] = field(default_factory=list)
    # failures at n below the thresholds where the implications are claimed
    upper_failures_below: list[int] = field(default_factory=list)
    lower_failures_below: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.upper_failures and not self.lower_failures

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        d["note"] = "finite-range numerical confirmation only"
        return d


def verify_implications(start: int, stop: int) -> ImplicationReport:
    """Check ``k*+1 < n/(ln n - ln ln n)`` and ``k*-2 > (n/ln n)(1 + (ln ln n - 1)/ln n)``.

    These are the purely numeric statements behind "the Theorem-1 bound
    implies Wegner's bound". Needs no Stirling numbers, so it is cheap far
    past the row limit. Both are evaluated for every ``n >= 3`` in range;
    misses below 7 (upper) or 34 (lower) land in the ``*_below`` lists.
    """
    if stop < start:
        raise SizeLimitError(f"empty range [{start}, {stop}]")
    rep = ImplicationReport(start, stop)
    for n in range(max(start, 3), stop + 1):
        ks = floor_exp_w(n).value
        rep.upper_checked += 1
        if not below_wegner_upper(ks + 1, n):
            (rep.upper_failures if n >= IMPLICATION_UPPER_FROM else rep.upper_failures_below).append(n)
        rep.lower_checked += 1
        if not above_wegner_lower(ks - 2, n):
            (rep.lower_failures if n >= IMPLICATION_LOWER_FROM else rep.lower_failures_below).append(n)
    return rep
