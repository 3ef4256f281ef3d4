import numpy as np
import pytest

from circq.curvature import InvarianceClass, constant_curvature, sample_invariant_tensor
from circq.frame import QCoords, orthogonal_q_basis, random_unit_coords, sample_with_angles
from circq.metric import metric_from_values
from circq.theorems import (AngleConstraintViolated, NotUnitNorm, RSextet,
                            WrongInvarianceClass, dop_identities, expansion_residuals,
                            kcoeffs, master_identity, thm4, thm5, thm6, thm7,
                            thm7_components)

M = metric_from_values(3, 1, 2)
F = orthogonal_q_basis(M)
X = QCoords(1.0, 0.0, 0.0, 0.0)


def full_q(seed):
    return sample_invariant_tensor(M, InvarianceClass.FULL_Q, seed)


def last_pair(seed):
    return sample_invariant_tensor(M, InvarianceClass.LAST_PAIR_Q, seed)


def test_dop_on_constant_curvature():
    assert all(r.residual <= 1e-13 for r in dop_identities(constant_curvature(M, 1.0), F))


@pytest.mark.parametrize("seed", range(5))
def test_dop_on_full_q_samples(seed):
    reports = dop_identities(full_q(seed), F)
    assert {r.theorem.split("[")[0] for r in reports} == {f"dop{k}" for k in range(2, 9)}
    assert all(r.passed and r.residual <= 1e-12 for r in reports)


def test_dop_on_zero_tensor():
    assert all(r.residual == 0 for r in dop_identities(np.zeros((4,) * 4), F))


def test_dop_requires_full_q():
    with pytest.raises(WrongInvarianceClass):
        dop_identities(sample_invariant_tensor(M, InvarianceClass.NONE, 0), F)


def test_kcoeffs_at_generator():
    K = kcoeffs(X)
    np.testing.assert_allclose(K.as_array(), [1, 0, 0.5, 0, 0], atol=0)
    assert K.residual == 0


def test_kcoeffs_at_fixed_vector():
    K = kcoeffs(QCoords(0.5, 0.5, 0.5, 0.5))
    assert K.K1 == 0
    assert K.residual <= 1e-15


def test_kcoeffs_random():
    rng = np.random.default_rng(0)
    assert max(kcoeffs(random_unit_coords(rng, 0)).residual for _ in range(1000)) <= 1e-12


def test_kcoeffs_requires_unit_norm():
    with pytest.raises(NotUnitNorm):
        kcoeffs(QCoords(1.0, 1.0, 0.0, 0.0))


@pytest.mark.parametrize("seed", range(5))
def test_expansions(seed):
    rng = np.random.default_rng(seed)
    R = full_q(seed)
    for _ in range(10):
        assert max(expansion_residuals(R, F, random_unit_coords(rng)).values()) <= 1e-12


def test_master_identity_at_generator():
    R = full_q(0)
    rep = master_identity(R, F, X)
    s = RSextet.from_frame(R, F)
    assert rep.rhs == pytest.approx(s.R1 + 0.5 * s.R3, abs=1e-15)
    assert rep.passed


@pytest.mark.parametrize("R", [constant_curvature(M, 1.0), full_q(1), full_q(2)],
                         ids=["constant", "sample1", "sample2"])
def test_master_identity(R):
    rng = np.random.default_rng(3)
    for _ in range(20):
        rep = master_identity(R, F, random_unit_coords(rng))
        assert rep.passed and rep.residual <= 1e-10
        assert abs(rep.extras["g(u,u)-1"]) <= 1e-12


@pytest.mark.parametrize("factor", [1e-3, 1e3])
def test_master_identity_is_scale_invariant(factor):
    R = full_q(4)
    c = sample_with_angles(0.2, -0.3, 5)
    base = master_identity(R, F, c)
    scaled = master_identity(R.scaled(factor), F, c)
    assert scaled.lhs == pytest.approx(factor * base.lhs, rel=1e-12)
    assert scaled.passed


def test_thm4_trivial_at_generator():
    for rep in thm4(full_q(0), F, X):
        assert rep.lhs == pytest.approx(0, abs=1e-15) and rep.rhs == 0


def test_thm4_constant_curvature():
    R = constant_curvature(M, 1.7)
    assert thm4(R, F, sample_with_angles(0.0, 0.37, 1), ("mu-r",))[0].residual <= 1e-10
    assert thm4(R, F, sample_with_angles(0.21, 0.0, 1), ("mu-r2",))[0].residual <= 1e-10


def test_thm4_gates():
    c = sample_with_angles(0.2, 0.3, 0)
    with pytest.raises(AngleConstraintViolated):
        thm4(full_q(0), F, c, ("mu-r",))
    with pytest.raises(AngleConstraintViolated):
        thm4(full_q(0), F, c, ("mu-r2",))


@pytest.mark.parametrize("seed", range(5))
def test_thm4_with_omitted_term_restored(seed):
    R = full_q(seed)
    (r1,) = thm4(R, F, sample_with_angles(0.0, 0.37, seed), ("mu-r",))
    (r2,) = thm4(R, F, sample_with_angles(-0.3, 0.0, seed), ("mu-r2",))
    for rep in (r1, r2):
        assert rep.extras["corrected_residual"] <= 1e-12
        assert rep.residual == pytest.approx(abs(rep.extras["omitted_term"]), abs=1e-12)


def _triple(seed, angle):
    if angle == "theta":
        return (sample_with_angles(0.0, -0.2, seed), sample_with_angles(0.0, 0.5, seed + 1),
                sample_with_angles(0.0, -0.5, seed + 2))
    return (sample_with_angles(0.3, 0.0, seed), sample_with_angles(0.5, 0.0, seed + 1),
            sample_with_angles(-0.5, 0.0, seed + 2))


@pytest.mark.parametrize("kappa", [1.0, -0.4])
def test_three_vector_relations_collapse_for_constant_curvature(kappa):
    R = constant_curvature(M, kappa)
    for fn, angle in ((thm5, "theta"), (thm6, "phi")):
        rep = fn(R, F, *_triple(3, angle))
        assert rep.residual <= 1e-10
        assert abs(rep.extras["coefficient_sum_minus_(1-c^2)"]) <= 1e-15


@pytest.mark.parametrize("seed", range(3))
def test_three_vector_relations_with_corrections(seed):
    R = full_q(seed)
    assert thm5(R, F, *_triple(seed, "theta")).extras["corrected_residual"] <= 1e-12
    assert thm6(R, F, *_triple(seed, "phi")).extras["corrected_residual"] <= 1e-12


def test_three_vector_gates():
    u, y, z = _triple(0, "theta")
    with pytest.raises(AngleConstraintViolated):
        thm5(full_q(0), F, u, z, y)
    u, y, z = _triple(0, "phi")
    with pytest.raises(AngleConstraintViolated):
        thm6(full_q(0), F, u, z, y)


def test_thm5_trivial_when_u_is_generator():
    R = full_q(0)
    _, y, z = _triple(0, "theta")
    rep = thm5(R, F, X, y, z)
    assert rep.lhs == pytest.approx(RSextet.from_frame(R, F).R3, abs=1e-15)


@pytest.mark.parametrize("seed", range(5))
def test_thm7_components(seed):
    assert all(r.residual <= 1e-12 for r in thm7_components(last_pair(seed), F))


@pytest.mark.parametrize("seed", range(5))
def test_thm7(seed):
    R = last_pair(seed)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        q2, q1 = thm7(R, F, random_unit_coords(rng))
        assert q2.residual <= 1e-10 and q1.residual <= 1e-10


def test_thm7_zero_tensor_and_generator():
    for rep in thm7(np.zeros((4,) * 4), F, random_unit_coords(np.random.default_rng(0))):
        assert rep.lhs == 0 and rep.rhs == 0
    q2, q1 = thm7(last_pair(0), F, X)
    assert q1.lhs == pytest.approx(q1.rhs, abs=1e-15)


def test_thm7_requires_last_pair_class():
    with pytest.raises(WrongInvarianceClass):
        thm7(sample_invariant_tensor(M, InvarianceClass.NONE, 0), F, X)


def test_frame_independence():
    other = orthogonal_q_basis(metric_from_values(5, 0.7, 3.1), seed=9)
    R = sample_invariant_tensor(other.metric, InvarianceClass.FULL_Q, 2)
    c = sample_with_angles(0.1, 0.2, 3)
    assert master_identity(R, other, c).passed
    assert all(r.passed for r in dop_identities(R, other))
