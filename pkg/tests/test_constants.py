import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normlab.constants import cp, cp_objective, reference_constants, riesz_norm, two_power


def brute_cp(p, n=2_000_001):
    # independent oracle: dense grid over the full interval (0, 1)
    a = np.linspace(1e-9, 1 - 1e-9, n)
    return float(cp_objective(a, p).max())


@pytest.mark.parametrize("p", [1.2, 1.5, 3, 4, 7])
def test_cp_matches_brute_force(p):
    assert cp(p) == pytest.approx(brute_cp(p), abs=1e-9)


def test_cp_at_two():
    assert cp(2) == 1.0


def test_riesz_examples():
    assert riesz_norm(2) == pytest.approx(1, abs=1e-15)
    assert riesz_norm(4) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert riesz_norm(4) == pytest.approx(riesz_norm(4 / 3), abs=1e-12)


def test_two_power_examples():
    assert two_power(2) == 1
    assert two_power(4) == pytest.approx(math.sqrt(2), abs=1e-15)
    assert two_power(4 / 3) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_rejects_bad_p():
    for p in (1, 0.5, math.inf):
        with pytest.raises(ValueError):
            cp(p)


def test_row_fields():
    row = reference_constants(3)
    assert row.p_conj == pytest.approx(1.5)
    assert set(row.as_dict()) == {"p", "p_conj", "riesz", "two_power", "c_p"}


@settings(max_examples=40, deadline=None)
@given(st.floats(1.05, 20))
def test_cp_duality_and_bounds(p):
    q = p / (p - 1)
    assert cp(p) == pytest.approx(cp(q), abs=1e-9)
    assert 1 - 1e-12 <= cp(p) <= two_power(p) + 1e-12
    if abs(p - 2) > 1e-2:
        assert cp(p) > 1 + 1e-6
