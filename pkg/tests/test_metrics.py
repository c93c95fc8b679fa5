import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wrs_triangles.metrics import global_error, local_error, trial_statistics


@pytest.mark.parametrize("x, xhat, expected", [(100, 100.0, 0.0), (99, 0.0, 0.99), (0, 1.0, 1.0)])
def test_global_error(x, xhat, expected):
    assert global_error(x, xhat) == pytest.approx(expected)


def test_global_error_negative_count():
    with pytest.raises(ValueError):
        global_error(-1, 0.0)


@given(st.integers(0, 10**6), st.floats(0, 1e6), st.floats(0, 1e6))
def test_global_error_monotone(x, d1, d2):
    assert global_error(x, x) == 0
    lo, hi = sorted((d1, d2))
    assert global_error(x, x + lo) <= global_error(x, x + hi)


def test_local_error():
    assert local_error({1: 3, 2: 5}, {1: 3.0, 2: 5.0}, [1, 2]) == 0.0
    assert local_error({1: 3}, {}, [1, 2]) == pytest.approx(0.375)
    assert local_error({}, {1: 2.0}, [1]) == pytest.approx(2.0)


def test_local_error_empty_nodes():
    with pytest.raises(ValueError):
        local_error({}, {}, [])


@given(st.dictionaries(st.integers(0, 50), st.integers(0, 100)))
def test_local_error_self_zero(exact):
    nodes = list(exact) or [0]
    assert local_error(exact, exact, nodes) == 0.0


def test_trial_statistics():
    s = trial_statistics([5.0])
    assert (s.n, s.mean, s.variance, s.std_error) == (1, 5.0, 0.0, 0.0)
    s = trial_statistics([1.0, 3.0])
    assert (s.mean, s.variance, s.std_error) == (2.0, 2.0, 1.0)
    assert trial_statistics([4.0] * 10).std_error == 0.0


def test_trial_statistics_empty():
    with pytest.raises(ValueError):
        trial_statistics([])


def test_trial_statistics_normal_sample():
    s = trial_statistics(np.random.default_rng(0).standard_normal(10_000).tolist())
    assert abs(s.mean) <= 0.05
    assert abs(s.variance - 1) <= 0.05
