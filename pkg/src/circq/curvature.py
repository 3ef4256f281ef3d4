"""Levi-Civita connection and (0,4) curvature of a metric field, sectional
curvature, and synthetic algebraic curvature tensors with q-invariance.

Sign convention: R(x, y, x, y) / (g(x,x) g(y,y) - g(x,y)²) is the sectional
curvature, so the round sphere has +1. In components this is
R_ijkl = -g_lm R^m_ijk with R^l_ijk the components of
∇_i∇_j∂_k - ∇_j∇_i∂_k.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from .expr import eval_jet2, parse
from .metric import MetricAtPoint, MetricField, circulant, metric_from_values
from .tensor import symmetry_residuals, tensor_eval, tensor_q_pullback, tensor_scale

__all__ = [
    "MetricJet", "MetricFieldFunction", "CirculantField", "ExprMetricField",
    "euclidean_metric", "sphere_metric", "Christoffels", "CurvatureAtPoint",
    "InvarianceClass", "DegeneratePlane", "EmptyNullspace", "christoffels",
    "riemann", "sectional", "constant_curvature", "constraint_matrix",
    "nullspace", "invariant_basis", "sample_invariant_tensor",
    "invariance_residual",
]


class DegeneratePlane(ValueError):
    pass


class EmptyNullspace(ValueError):
    pass


@dataclass(frozen=True)
class MetricJet:
    """g_ij, ∂_k g_ij (index [k,i,j]) and ∂_k∂_l g_ij (index [k,l,i,j])."""
    g: np.ndarray
    dg: np.ndarray
    ddg: np.ndarray


class MetricFieldFunction(Protocol):
    def jet(self, p) -> MetricJet: ...


# index of A, B, C in the circulant layout
_LAYOUT = circulant([0, 1, 2, 1]).astype(int)


@dataclass(frozen=True)
class CirculantField:
    """Circulant metric field; validates A > C > B > 0 at every evaluation."""
    field: MetricField

    @classmethod
    def from_strings(cls, A: str, B: str, C: str) -> "CirculantField":
        return cls(MetricField.from_strings(A, B, C))

    def metric(self, p) -> MetricAtPoint:
        jets = self.field.jets(np.asarray(p, dtype=float))
        return metric_from_values(*(j.value for j in jets), point=p)

    def jet(self, p) -> MetricJet:
        p = np.asarray(p, dtype=float)
        jets = self.field.jets(p)
        metric_from_values(*(j.value for j in jets), point=p)
        vals = np.array([j.value for j in jets])
        grads = np.array([j.grad for j in jets])
        hess = np.array([j.hess for j in jets])
        return MetricJet(g=vals[_LAYOUT],
                         dg=np.einsum("ijk->kij", grads[_LAYOUT]),
                         ddg=np.einsum("ijkl->klij", hess[_LAYOUT]))


@dataclass(frozen=True)
class ExprMetricField:
    """General symmetric metric field given by expressions for g_ij, i <= j.

    Used for convention checks (Euclidean, round sphere) that the circulant
    family cannot represent.
    """
    entries: tuple  # 4x4 nested tuples of ExprNode; only the upper triangle is read

    @classmethod
    def from_strings(cls, rows) -> "ExprMetricField":
        return cls(tuple(tuple(parse(s) if isinstance(s, str) else s for s in row)
                         for row in rows))

    def jet(self, p) -> MetricJet:
        p = np.asarray(p, dtype=float)
        g = np.empty((4, 4))
        dg = np.empty((4, 4, 4))
        ddg = np.empty((4, 4, 4, 4))
        for i in range(4):
            for j in range(i, 4):
                jt = eval_jet2(self.entries[i][j], p)
                g[i, j] = g[j, i] = jt.value
                dg[:, i, j] = dg[:, j, i] = jt.grad
                ddg[:, :, i, j] = ddg[:, :, j, i] = jt.hess
        if np.min(np.linalg.eigvalsh(g)) <= 0:
            raise ValueError(f"metric is not positive definite at {p}")
        return MetricJet(g, dg, ddg)

    def metric(self, p) -> MetricAtPoint:
        g = self.jet(p).g
        return MetricAtPoint(g=g, g_inv=np.linalg.inv(g), point=np.asarray(p, dtype=float))


def _diag_field(expr: str) -> ExprMetricField:
    rows = [[expr if i == j else "0" for j in range(4)] for i in range(4)]
    return ExprMetricField.from_strings(rows)


def euclidean_metric() -> ExprMetricField:
    return _diag_field("1")


def sphere_metric() -> ExprMetricField:
    """Round unit 4-sphere in stereographic coordinates, g = 4δ/(1+|X|²)²."""
    return _diag_field("4/(1+X1^2+X2^2+X3^2+X4^2)^2")


@dataclass(frozen=True)
class Christoffels:
    gamma: np.ndarray  # [k, i, j] = Γ^k_ij
    point: np.ndarray


def _connection(jet: MetricJet):
    g_inv = np.linalg.inv(jet.g)
    # first kind: Γ_{l,ij} = ½(∂_i g_jl + ∂_j g_il - ∂_l g_ij)
    first = 0.5 * (np.einsum("ijl->lij", jet.dg) + np.einsum("jil->lij", jet.dg)
                   - jet.dg)
    gamma = np.einsum("kl,lij->kij", g_inv, first)
    gamma = 0.5 * (gamma + gamma.transpose(0, 2, 1))
    d_first = 0.5 * (np.einsum("mijl->mlij", jet.ddg) + np.einsum("mjil->mlij", jet.ddg)
                     - jet.ddg)
    d_g_inv = -np.einsum("ka,mab,bl->mkl", g_inv, jet.dg, g_inv)
    d_gamma = (np.einsum("mkl,lij->mkij", d_g_inv, first)
               + np.einsum("kl,mlij->mkij", g_inv, d_first))
    return gamma, d_gamma


def christoffels(field: MetricFieldFunction, p) -> Christoffels:
    """Γ^k_ij = ½ g^kl (∂_i g_jl + ∂_j g_il - ∂_l g_ij) at p."""
    gamma, _ = _connection(field.jet(p))
    return Christoffels(gamma, np.asarray(p, dtype=float))


class InvarianceClass(enum.Enum):
    NONE = "none"
    FULL_Q = "full-q"            # R(qx,qy,qz,qu) = R(x,y,z,u)
    LAST_PAIR_Q = "last-pair-q"  # R(x,y,qz,qu) = R(x,y,z,u)

    @property
    def mask(self) -> tuple[int, ...]:
        return {"none": (), "full-q": (1, 2, 3, 4), "last-pair-q": (3, 4)}[self.value]


@dataclass(frozen=True)
class CurvatureAtPoint:
    R: np.ndarray
    point: np.ndarray
    source: str  # "from-metric" or "synthetic"
    invariance: InvarianceClass = InvarianceClass.NONE
    nullspace_dim: int | None = None
    symmetries: dict = field(default_factory=dict)

    def __call__(self, x, y, z, u) -> float:
        return tensor_eval(self.R, x, y, z, u)

    def scaled(self, factor: float) -> "CurvatureAtPoint":
        return CurvatureAtPoint(factor * self.R, self.point, self.source,
                                self.invariance, self.nullspace_dim,
                                symmetry_residuals(factor * self.R))


def riemann(field: MetricFieldFunction, p) -> CurvatureAtPoint:
    """(0,4) curvature tensor at p from exact second derivatives of g."""
    p = np.asarray(p, dtype=float)
    jet = field.jet(p)
    gamma, d_gamma = _connection(jet)
    # R^l_ijk = ∂_iΓ^l_jk - ∂_jΓ^l_ik + Γ^l_im Γ^m_jk - Γ^l_jm Γ^m_ik
    up = (np.einsum("iljk->lijk", d_gamma) - np.einsum("jlik->lijk", d_gamma)
          + np.einsum("lim,mjk->lijk", gamma, gamma)
          - np.einsum("ljm,mik->lijk", gamma, gamma))
    R = -np.einsum("lm,mijk->ijkl", jet.g, up)
    return CurvatureAtPoint(R, p, "from-metric", symmetries=symmetry_residuals(R))


def sectional(m: MetricAtPoint, R: CurvatureAtPoint | np.ndarray, x, y) -> float:
    """Sectional curvature R(x,y,x,y) / (g(x,x)g(y,y) - g(x,y)²)."""
    T = R.R if isinstance(R, CurvatureAtPoint) else np.asarray(R)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gxx, gyy, gxy = x @ m.g @ x, y @ m.g @ y, x @ m.g @ y
    if gxx <= 0 or gyy <= 0 or abs(1 - gxy * gxy / (gxx * gyy)) <= 1e-12:
        raise DegeneratePlane("vectors do not span a non-degenerate plane")
    return tensor_eval(T, x, y, x, y) / (gxx * gyy - gxy * gxy)


def constant_curvature(m: MetricAtPoint, kappa: float) -> CurvatureAtPoint:
    """R(x,y,z,u) = κ (g(x,z) g(y,u) - g(x,u) g(y,z))."""
    g = m.g
    R = kappa * (np.einsum("ik,jl->ijkl", g, g) - np.einsum("il,jk->ijkl", g, g))
    return CurvatureAtPoint(R, m.point, "synthetic", InvarianceClass.FULL_Q,
                            symmetries=symmetry_residuals(R))


# ---------------------------------------------------------------------------
# Synthetic tensors: nullspace of the linear curvature constraints
# ---------------------------------------------------------------------------

def _flat_index():
    return np.arange(256).reshape(4, 4, 4, 4)


def constraint_matrix(cls: InvarianceClass) -> np.ndarray:
    """Linear constraints on the 256 components of an algebraic curvature
    tensor, plus the q-invariance of ``cls``. Each row r satisfies r·T = 0."""
    idx = _flat_index()
    maps = [
        (idx, idx.transpose(1, 0, 2, 3), 1.0),   # T_ijkl + T_jikl
        (idx, idx.transpose(0, 1, 3, 2), 1.0),   # T_ijkl + T_ijlk
        (idx, idx.transpose(2, 3, 0, 1), -1.0),  # T_ijkl - T_klij
    ]
    blocks = []
    for a, b, sign in maps:
        rows = np.zeros((256, 256))
        rows[np.arange(256), a.ravel()] += 1.0
        rows[np.arange(256), b.ravel()] += sign
        blocks.append(rows)
    bianchi = np.zeros((256, 256))
    for part in (idx, idx.transpose(2, 0, 1, 3), idx.transpose(1, 2, 0, 3)):
        bianchi[np.arange(256), part.ravel()] += 1.0
    blocks.append(bianchi)
    if cls.mask:
        shifted = tensor_q_pullback(idx, cls.mask)
        rows = np.zeros((256, 256))
        rows[np.arange(256), idx.ravel()] += 1.0
        rows[np.arange(256), shifted.ravel()] -= 1.0
        blocks.append(rows)
    M = np.vstack(blocks)
    return M[np.any(M != 0, axis=1)]


def nullspace(M: np.ndarray, pivot_tol: float = 1e-10) -> np.ndarray:
    """Basis (rows) of {v : M v = 0} by Gauss-Jordan elimination with
    partial pivoting. Columns whose best pivot is below ``pivot_tol`` are free."""
    M = np.array(M, dtype=float)
    nrows, ncols = M.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        k = r + int(np.argmax(np.abs(M[r:, c])))
        if abs(M[k, c]) <= pivot_tol:
            M[r:, c] = 0.0
            continue
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] /= M[r, c]
        col = M[:, c].copy()
        col[r] = 0.0
        nz = np.nonzero(col)[0]
        if nz.size:
            M[nz] -= np.outer(col[nz], M[r])
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols))
    for n, f in enumerate(free):
        basis[n, f] = 1.0
        for row, pc in enumerate(pivots):
            basis[n, pc] = -M[row, f]
    return basis


@functools.lru_cache(maxsize=None)
def invariant_basis(cls: InvarianceClass) -> np.ndarray:
    """Orthonormal basis (rows, length 256) of the tensors in ``cls``."""
    basis = nullspace(constraint_matrix(cls))
    if basis.shape[0] == 0:
        return basis
    q, _ = np.linalg.qr(basis.T)
    q.setflags(write=False)
    return q.T


def invariance_residual(R, cls: InvarianceClass) -> float:
    """max |pullback(R) - R| relative to max|R|."""
    T = R.R if isinstance(R, CurvatureAtPoint) else np.asarray(R)
    return float(np.max(np.abs(tensor_q_pullback(T, cls.mask) - T))) / tensor_scale(T)


def sample_invariant_tensor(m: MetricAtPoint, cls: InvarianceClass,
                            rng_seed: int) -> CurvatureAtPoint:
    """Random unit-norm algebraic curvature tensor with the invariance ``cls``.

    The constraints are metric independent; ``m`` only supplies the point.
    """
    basis = invariant_basis(cls)
    if basis.shape[0] == 0:
        raise EmptyNullspace(f"only the zero tensor is in class {cls.value}")
    rng = np.random.default_rng(rng_seed)
    coeffs = rng.standard_normal(basis.shape[0])
    v = coeffs @ basis
    v /= math.sqrt(v @ v)
    R = v.reshape(4, 4, 4, 4)
    return CurvatureAtPoint(R, m.point, "synthetic", cls, basis.shape[0],
                            symmetry_residuals(R))
