"""Fixed 4-dimensional linear algebra and the action of the cyclic structure q.

Vectors are numpy arrays of shape (4,), matrices (4, 4) and covariant
rank-4 tensors (4, 4, 4, 4), all in the coordinate basis. The structure q
shifts coordinates cyclically: q(x1, x2, x3, x4) = (x2, x3, x4, x1).
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "Q_MATRIX", "q_apply", "q_power", "tensor_eval", "tensor_q_pullback",
    "symmetry_residuals", "tensor_scale", "SYMMETRY_TOL",
]

# (q x)^i = Q[i, j] x^j
Q_MATRIX = np.array([[0, 1, 0, 0],
                     [0, 0, 1, 0],
                     [0, 0, 0, 1],
                     [1, 0, 0, 0]], dtype=float)

SYMMETRY_TOL = 1e-12


def q_apply(v, times: int = 1) -> np.ndarray:
    """Apply q to a vector ``times`` times (negative values apply q^-1)."""
    return np.roll(np.asarray(v, dtype=float), -times)


def q_power(k: int) -> np.ndarray:
    """Matrix of q^k."""
    return np.roll(np.eye(4), k, axis=1)


def tensor_eval(T, x, y, z, u) -> float:
    """Contract a covariant 4-tensor with four vectors: T_ijkl x^i y^j z^k u^l."""
    return float(np.einsum("ijkl,i,j,k,l->", T, x, y, z, u))


def tensor_q_pullback(T, mask=(1, 2, 3, 4), times: int = 1) -> np.ndarray:
    """Pull ``T`` back through q on the slots listed in ``mask`` (1-based).

    The result T' satisfies T'(x, y, z, u) = T(..., q x_s, ...) where q hits
    exactly the masked slots. In components, T'_{..a..} = T_{..a-1..}.
    """
    T = np.asarray(T)
    for slot in mask:
        if slot not in (1, 2, 3, 4):
            raise ValueError(f"slot must be in 1..4, got {slot}")
    axes = tuple(s - 1 for s in sorted(set(mask)))
    if not axes:
        return T.copy()
    return np.roll(T, times, axis=axes)


def tensor_scale(T) -> float:
    """Reference magnitude for relative tolerances (1 for the zero tensor)."""
    m = float(np.max(np.abs(T)))
    return m if m > 0 else 1.0


def symmetry_residuals(T) -> dict[str, float]:
    """Relative residuals of the algebraic curvature symmetries of ``T``.

    Keys: ``skew12`` (T_jikl = -T_ijkl), ``skew34`` (T_ijlk = -T_ijkl),
    ``pair`` (T_klij = T_ijkl) and ``bianchi`` (T_ijkl + T_jkil + T_kijl = 0).
    Values are max absolute residuals divided by max|T| (absolute for T = 0).
    """
    T = np.asarray(T, dtype=float)
    scale = tensor_scale(T)
    skew12 = T + T.transpose(1, 0, 2, 3)
    skew34 = T + T.transpose(0, 1, 3, 2)
    pair = T - T.transpose(2, 3, 0, 1)
    # T_jkil as an (i,j,k,l) array is T.transpose(2,0,1,3); T_kijl is T.transpose(1,2,0,3)
    bianchi = T + T.transpose(2, 0, 1, 3) + T.transpose(1, 2, 0, 3)
    return {name: float(np.max(np.abs(r))) / scale
            for name, r in (("skew12", skew12), ("skew34", skew34),
                            ("pair", pair), ("bianchi", bianchi))}
