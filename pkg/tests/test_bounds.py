import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pliable import random_instance, verify
from pliable.bounds import (
    GOLDEN,
    bound_report,
    constant_weight_code,
    constant_weight_rows,
    lower_bound,
    lower_bound_coefficient,
)


def test_lower_bound_values():
    assert lower_bound(1024, 0.5) == pytest.approx(2.5)
    assert lower_bound(1024, 0.9) == pytest.approx(10 / (2 * math.log2(10)))
    assert lower_bound_coefficient(GOLDEN) == pytest.approx(0.36, abs=0.005)


def test_lower_bound_rejects():
    for p in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            lower_bound(100, p)
    with pytest.raises(ValueError):
        lower_bound(1, 0.5)


def test_coefficient_continuous_and_peaks_at_golden():
    grid = np.linspace(0.01, 0.99, 981)
    c = np.array([lower_bound_coefficient(p) for p in grid])
    assert abs(grid[c.argmax()] - GOLDEN) < 0.002
    eps = 1e-9
    assert lower_bound_coefficient(GOLDEN - eps) == pytest.approx(lower_bound_coefficient(GOLDEN + eps))


def test_constant_weight_rows():
    assert constant_weight_rows(16) == 19
    assert constant_weight_rows(256) == 37


@given(st.integers(2, 2000), st.floats(0.05, 1.0))
def test_constant_weight_structure(n, p):
    R, w = constant_weight_rows(n), max(1, round(1 / p))
    m = R * w + 3
    A = constant_weight_code(m, n, p)
    arr = A.to_array()
    assert arr.shape == (R, m)
    assert (arr.sum(axis=1) == w).all()
    assert (arr.sum(axis=0) <= 1).all()


def test_constant_weight_too_small():
    with pytest.raises(ValueError):
        constant_weight_code(37, 16, 0.5)


@given(st.integers(2, 10**6), st.floats(0.001, 0.999))
def test_report_invariants(n, p):
    r = bound_report(n, p)
    assert r.lower_bound >= 0
    assert (r.regime == "p<=golden") == (p <= GOLDEN)
    assert r.m_required == r.constructive_rows * r.row_weight


def test_constant_weight_satisfies_random_instances():
    code = constant_weight_code(128, 256, 0.5)
    ok = sum(verify(code, random_instance(128, 256, 0.5, seed)).all_satisfied for seed in range(10))
    assert ok >= 9
