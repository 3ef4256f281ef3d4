import numpy as np
import pytest
import scipy.linalg

from circq.curvature import (CirculantField, DegeneratePlane, InvarianceClass,
                             christoffels, constant_curvature, constraint_matrix,
                             euclidean_metric, invariance_residual, invariant_basis,
                             nullspace, riemann, sample_invariant_tensor, sectional,
                             sphere_metric)
from circq.metric import metric_from_values
from circq.tensor import q_apply, tensor_eval

P = np.array([0.1, 0.2, -0.3, 0.4])


def test_constant_metric_is_flat():
    field = CirculantField.from_strings("3", "1", "2")
    assert np.max(np.abs(christoffels(field, P).gamma)) == 0
    assert np.max(np.abs(riemann(field, P).R)) <= 1e-12


def test_euclidean_hook_is_flat():
    e = euclidean_metric()
    assert np.max(np.abs(christoffels(e, P).gamma)) == 0
    assert np.max(np.abs(riemann(e, P).R)) == 0


def test_sphere_christoffels_match_conformal_formula():
    # g = e^{2f} δ with f = log 2 - log(1+|X|²):
    # Γ^k_ij = δ_ki ∂_j f + δ_kj ∂_i f - δ_ij ∂_k f
    df = -2 * P / (1 + P @ P)
    d = np.eye(4)
    oracle = (np.einsum("ki,j->kij", d, df) + np.einsum("kj,i->kij", d, df)
              - np.einsum("ij,k->kij", d, df))
    gamma = christoffels(sphere_metric(), P).gamma
    assert np.max(np.abs(gamma - oracle)) <= 1e-8


def test_sphere_has_curvature_plus_one():
    s = sphere_metric()
    m = s.metric(P)
    R = riemann(s, P)
    rng = np.random.default_rng(0)
    for x, y in rng.standard_normal((100, 2, 4)):
        assert abs(sectional(m, R, x, y) - 1) <= 1e-6


def test_sphere_matches_constant_curvature_tensor():
    s = sphere_metric()
    R = riemann(s, P).R
    np.testing.assert_allclose(R, constant_curvature(s.metric(P), 1.0).R, atol=1e-12)


@pytest.mark.parametrize("point", [P, np.array([-0.5, 0.25, 1.0, 0.0])])
def test_from_metric_symmetries(point):
    field = CirculantField.from_strings("3+0.2*sin(X1+X2+X3+X4)", "1", "2")
    R = riemann(field, point)
    assert max(R.symmetries.values()) <= 1e-7
    assert np.max(np.abs(R.R)) > 1e-4


def test_nonconstant_field_symmetries():
    field = CirculantField.from_strings("4+0.3*cos(X1)*X2", "0.5+0.1*sin(X3)",
                                        "2+0.2*X4^2")
    R = riemann(field, P)
    assert max(R.symmetries.values()) <= 1e-7


def test_diagonal_sum_field_has_full_q_invariant_curvature():
    # A depends only on X1+X2+X3+X4, which q preserves
    field = CirculantField.from_strings("3+0.2*sin(X1+X2+X3+X4)", "1", "2")
    R = riemann(field, P)
    assert invariance_residual(R, InvarianceClass.FULL_Q) <= 1e-9


def test_sectional_of_zero_tensor():
    m = metric_from_values(3, 1, 2)
    assert sectional(m, np.zeros((4,) * 4), [1, 0, 0, 0], [0, 1, 0, 0]) == 0


def test_sectional_plane_invariance():
    m = metric_from_values(3, 1, 2)
    R = sample_invariant_tensor(m, InvarianceClass.NONE, 1)
    rng = np.random.default_rng(1)
    for x, y in rng.standard_normal((20, 2, 4)):
        mu = sectional(m, R, x, y)
        assert sectional(m, R, y, x) == pytest.approx(mu, abs=1e-10)
        assert sectional(m, R, x, x + 2 * y) == pytest.approx(mu, abs=1e-10)


def test_degenerate_plane():
    m = metric_from_values(3, 1, 2)
    R = constant_curvature(m, 1.0)
    with pytest.raises(DegeneratePlane):
        sectional(m, R, [1, 2, 3, 4], [2, 4, 6, 8])


def test_constant_curvature_tensor():
    m = metric_from_values(3, 1, 2)
    assert np.max(np.abs(constant_curvature(m, 0.0).R)) == 0
    R = constant_curvature(m, 1.0)
    assert max(R.symmetries.values()) == 0
    assert invariance_residual(R, InvarianceClass.FULL_Q) <= 1e-13
    rng = np.random.default_rng(2)
    for x, y in rng.standard_normal((100, 2, 4)):
        assert sectional(m, R, x, y) == pytest.approx(1.0, abs=1e-10)


def test_constant_curvature_scales_with_kappa():
    m = metric_from_values(3, 1, 2)
    R = constant_curvature(m, -2.5)
    assert sectional(m, R, [1, 0, 0, 0], [0, 0, 1, 1]) == pytest.approx(-2.5)


@pytest.mark.parametrize("cls,dim", [(InvarianceClass.NONE, 20),
                                     (InvarianceClass.FULL_Q, 6),
                                     (InvarianceClass.LAST_PAIR_Q, 1)])
def test_nullspace_dimensions(cls, dim):
    # 20 = n²(n²-1)/12 for n = 4; the invariant cases are checked against SVD
    M = constraint_matrix(cls)
    assert invariant_basis(cls).shape[0] == dim
    assert scipy.linalg.null_space(M).shape[1] == dim


@pytest.mark.parametrize("cls", list(InvarianceClass))
def test_basis_spans_svd_nullspace(cls):
    M = constraint_matrix(cls)
    B = invariant_basis(cls)
    assert np.max(np.abs(M @ B.T)) <= 1e-12
    np.testing.assert_allclose(B @ B.T, np.eye(B.shape[0]), atol=1e-12)
    N = scipy.linalg.null_space(M)
    # projector equality: same subspace
    np.testing.assert_allclose(B.T @ B, N @ N.T, atol=1e-10)


def test_nullspace_on_small_system():
    M = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    basis = nullspace(M)
    assert basis.shape == (1, 3)
    assert np.max(np.abs(M @ basis.T)) == 0


def test_constant_curvature_lies_in_full_q_nullspace():
    m = metric_from_values(3, 1, 2)
    R = constant_curvature(m, 1.0).R.ravel()
    M = constraint_matrix(InvarianceClass.FULL_Q)
    assert np.max(np.abs(M @ R)) / np.max(np.abs(R)) <= 1e-13


@pytest.mark.parametrize("cls", [InvarianceClass.FULL_Q, InvarianceClass.LAST_PAIR_Q])
def test_samples_satisfy_constraints(cls):
    m = metric_from_values(3, 1, 2)
    S = sample_invariant_tensor(m, cls, 11)
    assert np.linalg.norm(S.R) == pytest.approx(1.0)
    assert np.max(np.abs(constraint_matrix(cls) @ S.R.ravel())) <= 1e-12
    assert max(S.symmetries.values()) <= 1e-12
    assert invariance_residual(S, cls) <= 1e-12
    assert S.nullspace_dim == invariant_basis(cls).shape[0]


def test_samples_are_seeded():
    m = metric_from_values(3, 1, 2)
    a = sample_invariant_tensor(m, InvarianceClass.FULL_Q, 1).R
    b = sample_invariant_tensor(m, InvarianceClass.FULL_Q, 1).R
    c = sample_invariant_tensor(m, InvarianceClass.FULL_Q, 2).R
    assert np.array_equal(a, b) and not np.allclose(a, c)


def test_last_pair_vanishing_components_for_random_x():
    m = metric_from_values(3, 1, 2)
    R = sample_invariant_tensor(m, InvarianceClass.LAST_PAIR_Q, 3).R
    for x in np.random.default_rng(4).standard_normal((50, 4)):
        qx, q2x = q_apply(x), q_apply(x, 2)
        scale = 1 + np.abs(x).max() ** 4
        assert abs(tensor_eval(R, x, qx, q2x, x)) <= 1e-12 * scale
        assert abs(tensor_eval(R, x, q2x, x, q2x)) <= 1e-12 * scale
        assert abs(tensor_eval(R, qx, q2x, q2x, x)) <= 1e-12 * scale
