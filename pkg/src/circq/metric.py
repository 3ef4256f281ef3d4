"""The circulant metric with first row (A, B, C, B).

A metric field is three expressions A, B, C of the coordinates; at each
point they must satisfy A > C > B > 0, which makes the circulant matrix
positive definite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import ExprNode, eval_jet2, parse
from .tensor import q_apply

__all__ = [
    "MetricField", "MetricAtPoint", "PositivityViolation", "SingularMetric",
    "ZeroVector", "circulant", "circulant_eigenvalues", "metric_at",
    "metric_from_values", "inner", "isometry_residual", "angle", "cos_angle",
    "angle_chain_residuals",
]


class PositivityViolation(ValueError):
    """A > C > B > 0 does not hold at a point."""

    def __init__(self, A, B, C, point=None):
        self.values = (A, B, C)
        self.point = point
        where = "" if point is None else f" at {tuple(float(t) for t in point)}"
        super().__init__(
            f"positivity condition A > C > B > 0 violated{where}: "
            f"A={A!r}, B={B!r}, C={C!r}")


class SingularMetric(ArithmeticError):
    pass


class ZeroVector(ValueError):
    pass


def circulant(first_row) -> np.ndarray:
    """Circulant matrix whose rows are successive right shifts of ``first_row``."""
    r = np.asarray(first_row, dtype=float)
    return np.array([np.roll(r, k) for k in range(len(r))])


def circulant_eigenvalues(A, B, C) -> np.ndarray:
    """Eigenvalues A+2B+C, A-C, A-C, A-2B+C of the metric matrix."""
    return np.array([A + 2 * B + C, A - C, A - C, A - 2 * B + C], dtype=float)


def _parse_if_text(e):
    return parse(e) if isinstance(e, str) else e


@dataclass(frozen=True)
class MetricField:
    A: ExprNode
    B: ExprNode
    C: ExprNode

    @classmethod
    def from_strings(cls, A: str, B: str, C: str) -> "MetricField":
        return cls(parse(A), parse(B), parse(C))

    def __post_init__(self):
        for name in "ABC":
            object.__setattr__(self, name, _parse_if_text(getattr(self, name)))

    def jets(self, p):
        return eval_jet2(self.A, p), eval_jet2(self.B, p), eval_jet2(self.C, p)


@dataclass(frozen=True)
class MetricAtPoint:
    g: np.ndarray
    g_inv: np.ndarray
    point: np.ndarray

    @property
    def abc(self) -> tuple[float, float, float]:
        return float(self.g[0, 0]), float(self.g[0, 1]), float(self.g[0, 2])


def metric_from_values(A: float, B: float, C: float, point=None) -> MetricAtPoint:
    """Assemble and validate the metric for given values of A, B, C."""
    point = np.zeros(4) if point is None else np.asarray(point, dtype=float)
    if not all(map(math.isfinite, (A, B, C))):
        raise PositivityViolation(A, B, C, point)
    if not A > C > B > 0:
        raise PositivityViolation(A, B, C, point)
    # (A > C > B > 0) already implies this; guards rounding at the boundary
    if np.min(circulant_eigenvalues(A, B, C)) <= 0:
        raise PositivityViolation(A, B, C, point)
    g = circulant([A, B, C, B])
    g_inv = np.linalg.inv(g)
    if np.max(np.abs(g @ g_inv - np.eye(4))) > 1e-12:
        raise SingularMetric(f"metric inverse residual too large at {point}")
    return MetricAtPoint(g=g, g_inv=g_inv, point=point)


def metric_at(field: MetricField, p) -> MetricAtPoint:
    p = np.asarray(p, dtype=float)
    jA, jB, jC = field.jets(p)
    return metric_from_values(jA.value, jB.value, jC.value, p)


def inner(m: MetricAtPoint, x, y) -> float:
    return float(np.asarray(x) @ m.g @ np.asarray(y))


def isometry_residual(m: MetricAtPoint, x, y) -> float:
    """|g(qx, qy) - g(x, y)|."""
    return abs(inner(m, q_apply(x), q_apply(y)) - inner(m, x, y))


def cos_angle(m: MetricAtPoint, x, y) -> float:
    nx, ny = inner(m, x, x), inner(m, y, y)
    if nx == 0 or ny == 0:
        raise ZeroVector("angle with a zero vector is undefined")
    c = inner(m, x, y) / math.sqrt(nx * ny)
    return min(1.0, max(-1.0, c))


def angle(m: MetricAtPoint, x, y) -> float:
    """Angle between x and y in radians."""
    return math.acos(cos_angle(m, x, y))


def angle_chain_residuals(m: MetricAtPoint, x) -> dict[str, float]:
    """Residuals of the inner-product equalities forced by the isometry q.

    g(x,qx) = g(qx,q²x) = g(q²x,q³x) = g(q³x,x) and g(x,q²x) = g(qx,q³x),
    each relative to 1 + max|g(x, q^k x)|.
    """
    v = [np.asarray(x, dtype=float)]
    for _ in range(3):
        v.append(q_apply(v[-1]))
    adjacent = [inner(m, v[0], v[1]), inner(m, v[1], v[2]),
                inner(m, v[2], v[3]), inner(m, v[3], v[0])]
    opposite = [inner(m, v[0], v[2]), inner(m, v[1], v[3])]
    scale = 1.0 + max(abs(t) for t in adjacent + opposite + [inner(m, x, x)])
    return {
        "adjacent": (max(adjacent) - min(adjacent)) / scale,
        "opposite": abs(opposite[0] - opposite[1]) / scale,
    }
