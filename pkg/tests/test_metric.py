import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from circq.metric import (MetricAtPoint, MetricField, PositivityViolation, ZeroVector,
                          angle, angle_chain_residuals, circulant_eigenvalues, inner,
                          isometry_residual, metric_at, metric_from_values)
from circq.tensor import q_apply

vec = arrays(np.float64, 4, elements=st.floats(-10, 10, allow_nan=False))


@st.composite
def admissible_abc(draw):
    B = draw(st.floats(0.01, 5))
    C = B + draw(st.floats(0.01, 5))
    A = C + draw(st.floats(0.01, 5))
    return A, B, C


def test_constant_metric_matrix_and_eigenvalues():
    m = metric_from_values(3, 1, 2)
    np.testing.assert_array_equal(m.g, [[3, 1, 2, 1], [1, 3, 1, 2],
                                        [2, 1, 3, 1], [1, 2, 1, 3]])
    np.testing.assert_allclose(sorted(circulant_eigenvalues(3, 1, 2)), [1, 1, 3, 7])
    np.testing.assert_allclose(np.linalg.eigvalsh(m.g), [1, 1, 3, 7], atol=1e-12)


def test_positivity_violation():
    with pytest.raises(PositivityViolation) as info:
        metric_from_values(1, 2, 3)
    assert info.value.values == (1, 2, 3)


@pytest.mark.parametrize("abc", [(3, 1, 3), (3, 0, 2), (2, 1, 3), (3, -1, 2)])
def test_ordering_must_be_strict(abc):
    with pytest.raises(PositivityViolation):
        metric_from_values(*abc)


def test_field_evaluation_at_origin():
    f = MetricField.from_strings("2+0.5*sin(X1)", "0.1", "1")
    m = metric_at(f, np.zeros(4))
    np.testing.assert_allclose(m.g[0], [2, 0.1, 1, 0.1])


def test_inner_reads_entries():
    m = metric_from_values(3, 1, 2)
    e1 = np.array([1.0, 0, 0, 0])
    assert inner(m, e1, e1) == 3
    assert inner(m, e1, q_apply(e1)) == 1


@given(admissible_abc(), vec, vec)
def test_inner_is_symmetric(abc, x, y):
    m = metric_from_values(*abc)
    terms = np.abs(x) @ np.abs(m.g) @ np.abs(y)  # rounding scales with the summands
    assert abs(inner(m, x, y) - inner(m, y, x)) <= 1e-15 * (1 + terms)


@given(admissible_abc(), vec, vec)
def test_q_is_an_isometry(abc, x, y):
    m = metric_from_values(*abc)
    assert isometry_residual(m, x, y) <= 1e-13 * (1 + abs(inner(m, x, y)))


@given(admissible_abc())
def test_eigenvalues_positive_and_match_eigensolve(abc):
    closed = np.sort(circulant_eigenvalues(*abc))
    assert closed.min() > 0
    direct = np.linalg.eigvalsh(metric_from_values(*abc).g)
    assert np.max(np.abs(closed - direct)) <= 1e-10 * (1 + closed.max())


def test_isometry_exact_on_basis_vector():
    m = metric_from_values(3, 1, 2)
    e1 = np.array([1.0, 0, 0, 0])
    assert isometry_residual(m, e1, e1) == 0


def test_corrupted_matrix_breaks_isometry():
    g = metric_from_values(3, 1, 2).g.copy()
    g[0, 0] = 4.0
    bad = MetricAtPoint(g, np.linalg.inv(g), np.zeros(4))
    e1 = np.array([1.0, 0, 0, 0])
    assert isometry_residual(bad, e1, e1) > 0


def test_angles():
    m = metric_from_values(3, 1, 2)
    e1 = np.array([1.0, 0, 0, 0])
    assert angle(m, e1, e1) == 0
    assert angle(m, e1, q_apply(e1)) == pytest.approx(math.acos(1 / 3), abs=1e-15)
    # g-orthogonal pair: (1,0,-1,0) is orthogonal to (0,1,0,-1)
    assert angle(m, [1, 0, -1, 0], [0, 1, 0, -1]) == pytest.approx(math.pi / 2)


def test_angle_of_zero_vector():
    m = metric_from_values(3, 1, 2)
    with pytest.raises(ZeroVector):
        angle(m, np.zeros(4), np.ones(4))


@given(admissible_abc(), vec, vec)
def test_angle_is_q_invariant(abc, x, y):
    m = metric_from_values(*abc)
    if inner(m, x, x) < 1e-6 or inner(m, y, y) < 1e-6:
        return
    assert abs(angle(m, q_apply(x), q_apply(y)) - angle(m, x, y)) <= 1e-10 or \
        abs(abs(inner(m, x, y)) / math.sqrt(inner(m, x, x) * inner(m, y, y)) - 1) < 1e-12


@given(admissible_abc(), vec)
def test_angle_chains(abc, x):
    m = metric_from_values(*abc)
    if inner(m, x, x) < 1e-6:
        return
    assert max(angle_chain_residuals(m, x).values()) <= 1e-12
