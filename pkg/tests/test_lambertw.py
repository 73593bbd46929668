import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import iv

from oracles import floor_exp_w_bisect, lambert_w_bisect
from stirmode import DomainError, floor_exp_w, lambert_w
from stirmode.intervals import enclosure


def test_lambert_w_exact_points():
    assert lambert_w(0.0) == 0.0
    assert lambert_w(math.e) == pytest.approx(1.0, abs=1e-12)


def test_lambert_w_10_against_bisection():
    w = lambert_w(10.0, 1e-12)
    assert abs(w * math.exp(w) - 10) <= 1e-12 * 10
    assert w == pytest.approx(lambert_w_bisect(10), abs=1e-10)
    assert round(w, 4) == 1.7455


def test_lambert_w_domain():
    with pytest.raises(DomainError):
        lambert_w(-0.1)
    with pytest.raises(ValueError):
        lambert_w(1.0, 0)


@settings(max_examples=300)
@given(st.floats(min_value=0, max_value=1e9, allow_nan=False))
def test_lambert_w_residual(x):
    w = lambert_w(x, 1e-12)
    assert w >= 0
    assert abs(w * math.exp(w) - x) <= 1e-12 * max(1.0, x)


def test_lambert_w_monotone():
    xs = sorted(random.Random(3).uniform(0, 1e6) for _ in range(500))
    ws = [lambert_w(x) for x in xs]
    assert all(a <= b + 1e-12 for a, b in zip(ws, ws[1:]))


@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (3, 2), (10, 5), (100, 29)])
def test_floor_exp_w_values(n, k):
    assert floor_exp_w(n).value == k


def _brackets(n, k, bits):
    lower_ok = k == 1 or enclosure(lambda: k * iv.log(k), bits).b <= n
    upper_ok = enclosure(lambda: (k + 1) * iv.log(k + 1), bits).a > n
    return lower_ok and upper_ok


@pytest.mark.parametrize("n", list(range(1, 300)) + [10**4, 54321, 10**6])
def test_floor_exp_w_certificate(n):
    c = floor_exp_w(n)
    assert c.value == floor_exp_w_bisect(n)
    assert _brackets(n, c.value, 4 * max(c.decision_precision_bits, 64))
    assert abs(math.exp(lambert_w(float(n), 1e-12)) - c.value) < 1 + 1e-6


def test_floor_exp_w_rejects_nonpositive():
    with pytest.raises(DomainError):
        floor_exp_w(0)
