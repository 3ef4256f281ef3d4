import numpy as np
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from circq.curvature import InvarianceClass, sample_invariant_tensor
from circq.metric import metric_from_values
from circq.tensor import (Q_MATRIX, q_apply, q_power, symmetry_residuals, tensor_eval,
                          tensor_q_pullback)

vec = arrays(np.float64, 4, elements=st.floats(-10, 10, allow_nan=False))
tensors = arrays(np.float64, (4, 4, 4, 4), elements=st.floats(-1, 1, allow_nan=False))


def test_q_shifts_coordinates():
    np.testing.assert_array_equal(q_apply([1, 2, 3, 4]), [2, 3, 4, 1])


def test_q_has_order_four():
    np.testing.assert_array_equal(q_apply([1, 2, 3, 4], 4), [1, 2, 3, 4])
    np.testing.assert_array_equal(q_power(4), np.eye(4))


def test_q_squared_is_not_plus_minus_identity():
    e1 = np.array([1.0, 0, 0, 0])
    np.testing.assert_array_equal(q_apply(e1, 2), [0, 0, 1, 0])
    assert not np.allclose(q_power(2), np.eye(4))
    assert not np.allclose(q_power(2), -np.eye(4))


def test_q_matrix_matches_q_apply():
    v = np.array([0.3, -1.0, 2.5, 7.0])
    np.testing.assert_array_equal(Q_MATRIX @ v, q_apply(v))


@given(vec)
def test_q_is_a_bijection_of_order_exactly_four(v):
    for k in (1, 2, 3):
        assert np.array_equal(q_apply(q_apply(v, k), 4 - k), v)
    assert np.array_equal(q_apply(v, 4), v)


def test_zero_tensor_evaluates_to_zero():
    rng = np.random.default_rng(1)
    assert tensor_eval(np.zeros((4,) * 4), *rng.standard_normal((4, 4))) == 0


def test_basis_extraction():
    T = np.zeros((4,) * 4)
    T[0, 1, 0, 1] = 1
    e = np.eye(4)
    assert tensor_eval(T, e[0], e[1], e[0], e[1]) == 1


@settings(max_examples=50)
@given(tensors, vec, vec, vec, vec)
def test_linear_in_first_slot(T, x, y, z, u):
    a = tensor_eval(T, 2 * x, y, z, u)
    b = 2 * tensor_eval(T, x, y, z, u)
    assert abs(a - b) <= 1e-12 * (1 + abs(b))


def test_pullback_four_times_is_identity():
    T = np.random.default_rng(2).standard_normal((4,) * 4)
    S = T
    for _ in range(4):
        S = tensor_q_pullback(S)
    assert np.array_equal(S, T)


def test_single_entry_moves_to_shifted_index():
    T = np.zeros((4,) * 4)
    T[0, 0, 0, 0] = 1
    S = tensor_q_pullback(T)
    assert S.sum() == 1
    # S_{ijkl} = T_{i-1,j-1,k-1,l-1}, so the 1 lands at (2,2,2,2)
    assert S[1, 1, 1, 1] == 1


def test_invariant_sample_is_fixed_by_pullback():
    m = metric_from_values(3, 1, 2)
    R = sample_invariant_tensor(m, InvarianceClass.FULL_Q, 3).R
    assert np.max(np.abs(tensor_q_pullback(R) - R)) < 1e-12


@settings(max_examples=50)
@given(tensors, vec, vec, vec, vec)
def test_pullback_equals_evaluation_at_q(T, x, y, z, u):
    a = tensor_eval(tensor_q_pullback(T), x, y, z, u)
    b = tensor_eval(T, q_apply(x), q_apply(y), q_apply(z), q_apply(u))
    assert abs(a - b) <= 1e-13 * (1 + np.abs(T).sum() * np.prod(
        [np.abs(v).max() + 1 for v in (x, y, z, u)]))


@settings(max_examples=30)
@given(tensors, vec, vec, vec, vec)
def test_partial_mask_pullback(T, x, y, z, u):
    a = tensor_eval(tensor_q_pullback(T, (3, 4)), x, y, z, u)
    b = tensor_eval(T, x, y, q_apply(z), q_apply(u))
    assert abs(a - b) <= 1e-12 * (1 + abs(b)) * 1e4


def test_pullback_preserves_curvature_symmetries():
    m = metric_from_values(3, 1, 2)
    R = sample_invariant_tensor(m, InvarianceClass.NONE, 5).R
    assert max(symmetry_residuals(R).values()) < 1e-13
    assert max(symmetry_residuals(tensor_q_pullback(R)).values()) < 1e-13


def test_symmetry_residuals_detect_violations():
    T = np.zeros((4,) * 4)
    T[0, 1, 0, 1] = 1
    res = symmetry_residuals(T)
    assert res["skew12"] > 0.5 and res["skew34"] > 0.5
