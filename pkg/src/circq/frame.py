"""q-bases {x, qx, q²x, q³x}: the basis criterion, orthonormal construction,
coordinates, and sampling of unit vectors with prescribed angles to qu, q²u.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .metric import MetricAtPoint
from .tensor import q_apply

__all__ = [
    "FrameQ", "QCoords", "SolveFailure", "FrameNotOrthonormal", "Infeasible",
    "qbasis_product", "induces_q_basis", "q_orbit", "ansatz_generator",
    "orthogonal_q_basis", "coords_in_frame", "reconstruct", "sample_with_angles",
    "random_unit_coords", "angle_feasible",
]

FRAME_TOL = 1e-10


class SolveFailure(RuntimeError):
    pass


class FrameNotOrthonormal(ValueError):
    pass


class Infeasible(ValueError):
    pass


def q_orbit(x) -> np.ndarray:
    """Rows x, qx, q²x, q³x."""
    x = np.asarray(x, dtype=float)
    return np.array([q_apply(x, k) for k in range(4)])


def qbasis_product(x) -> float:
    x1, x2, x3, x4 = np.asarray(x, dtype=float)
    return ((x1 - x3) ** 2 + (x2 - x4) ** 2) * ((x1 + x3) ** 2 - (x2 + x4) ** 2)


def induces_q_basis(x) -> bool:
    """True iff {x, qx, q²x, q³x} is a basis.

    The criterion is a homogeneous quartic, so the zero test is relative to
    (sum |x^i|)^4.
    """
    x = np.asarray(x, dtype=float)
    norm1 = float(np.sum(np.abs(x)))
    if norm1 == 0:
        return False
    return bool(abs(qbasis_product(x / norm1)) > 1e-12)


@dataclass(frozen=True)
class QCoords:
    alpha: float
    beta: float
    gamma: float
    delta: float

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.delta])

    @classmethod
    def from_array(cls, a) -> "QCoords":
        return cls(*(float(t) for t in a))

    def shifted(self) -> "QCoords":
        """Coordinates of q u: (δ, α, β, γ)."""
        return QCoords(self.delta, self.alpha, self.beta, self.gamma)

    @property
    def norm2(self) -> float:
        return float(self.as_array() @ self.as_array())

    @property
    def cos_phi(self) -> float:
        """cos of the angle between u and qu (orthonormal frame, unit u)."""
        a, b, c, d = self.as_array()
        return a * b + b * c + c * d + d * a

    @property
    def cos_theta(self) -> float:
        """cos of the angle between u and q²u (orthonormal frame, unit u)."""
        a, b, c, d = self.as_array()
        return 2 * (a * c + b * d)


@dataclass(frozen=True)
class FrameQ:
    generator: np.ndarray
    vectors: np.ndarray  # rows x, qx, q²x, q³x
    gram: np.ndarray
    orthogonal: bool
    orthonormal: bool
    metric: MetricAtPoint

    @classmethod
    def from_generator(cls, x, m: MetricAtPoint) -> "FrameQ":
        if not induces_q_basis(x):
            raise ValueError(f"{x!r} does not induce a q-basis")
        vectors = q_orbit(x)
        gram = vectors @ m.g @ vectors.T
        off = gram - np.diag(np.diag(gram))
        orthogonal = bool(np.max(np.abs(off)) <= FRAME_TOL)
        orthonormal = orthogonal and bool(np.max(np.abs(np.diag(gram) - 1)) <= FRAME_TOL)
        return cls(np.asarray(x, dtype=float), vectors, gram, orthogonal, orthonormal, m)

    def offdiag_max(self) -> float:
        return float(np.max(np.abs(self.gram - np.diag(np.diag(self.gram)))))


def ansatz_generator(A: float, B: float, C: float, a: float = 1.0) -> np.ndarray:
    """Generator (a, b, a, d) of an orthogonal q-basis for constant A, B, C.

    With s = b + d the two orthogonality conditions become
    B s² + 2a(A+C) s + 4B a² = 0 and a linear equation in bd.
    """
    s = a * (-(A + C) + math.sqrt((A + C) ** 2 - 4 * B * B)) / B
    bd = -(2 * (A + C) * a * a + 4 * B * a * s + C * s * s) / (2 * (A - C))
    disc = s * s - 4 * bd
    if disc < 0:
        raise SolveFailure(f"ansatz has no real solution (discriminant {disc!r})")
    r = math.sqrt(disc)
    return np.array([a, (s + r) / 2, a, (s - r) / 2])


def _residuals(x, g):
    qx = q_apply(x)
    q2x = q_apply(x, 2)
    return np.array([x @ g @ qx, x @ g @ q2x, x @ g @ x - 1.0])


def orthogonal_q_basis(m: MetricAtPoint, seed: int = 0, warm_start: bool = True,
                       restarts: int = 64) -> FrameQ:
    """Orthonormal q-basis generated by a unit x with g(x,qx) = g(x,q²x) = 0.

    The analytic ansatz is tried first (if ``warm_start``), followed by
    ``restarts`` seeded random starts; each start is polished by
    a trust-region least-squares solve on the three residuals.
    """
    g = m.g
    A, B, C = m.abc
    starts = []
    if warm_start:
        try:
            starts.append(ansatz_generator(A, B, C))
        except (SolveFailure, ValueError, ZeroDivisionError):
            pass
    rng = np.random.default_rng(seed)
    starts.extend(rng.standard_normal((restarts, 4)))

    best = (math.inf, None)
    for x0 in starts:
        x0 = x0 / math.sqrt(x0 @ g @ x0)
        sol = least_squares(_residuals, x0, args=(g,), method="trf",
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
        x = sol.x / math.sqrt(sol.x @ g @ sol.x)
        if not induces_q_basis(x):
            continue
        frame = FrameQ.from_generator(x, m)
        err = max(frame.offdiag_max(), float(np.max(np.abs(np.diag(frame.gram) - 1))))
        if frame.orthonormal:
            return frame
        if err < best[0]:
            best = (err, x)
    raise SolveFailure(
        f"no orthonormal q-basis found for A={A!r}, B={B!r}, C={C!r}; "
        f"best residual {best[0]!r} over {len(starts)} starts")


def coords_in_frame(f: FrameQ, u, m: MetricAtPoint) -> QCoords:
    """Coordinates (α, β, γ, δ) of u = αx + βqx + γq²x + δq³x."""
    if not f.orthonormal:
        raise FrameNotOrthonormal("coordinates by projection need an orthonormal q-basis")
    u = np.asarray(u, dtype=float)
    c = f.vectors @ m.g @ u
    diff = u - c @ f.vectors
    if math.sqrt(abs(diff @ m.g @ diff)) > FRAME_TOL * max(1.0, math.sqrt(u @ m.g @ u)):
        raise FrameNotOrthonormal("reconstruction residual exceeds tolerance")
    return QCoords.from_array(c)


def reconstruct(f: FrameQ, c: QCoords) -> np.ndarray:
    """The vector αx + βqx + γq²x + δq³x in coordinates."""
    return c.as_array() @ f.vectors


def angle_feasible(cos_phi: float, cos_theta: float) -> bool:
    """Whether a unit u has cos∠(u,qu) = cos_phi and cos∠(u,q²u) = cos_theta.

    In terms of p = α+γ, r = β+δ, m = α-γ, n = β-δ the constraints read
    p² + r² = 1 + cosθ, m² + n² = 1 - cosθ, pr = cosφ, so they are solvable
    exactly when |cosθ| <= 1 and |cosφ| <= (1 + cosθ)/2.
    """
    return abs(cos_theta) <= 1 and abs(cos_phi) <= (1 + cos_theta) / 2


def sample_with_angles(target_cos_phi: float, target_cos_theta: float,
                       rng_seed: int) -> QCoords:
    """Random unit coordinates with prescribed cos∠(u,qu) and cos∠(u,q²u)."""
    cphi, ctheta = float(target_cos_phi), float(target_cos_theta)
    if not (abs(cphi) < 1 and abs(ctheta) < 1) or not angle_feasible(cphi, ctheta):
        raise Infeasible(
            f"no unit vector has cos(u,qu)={cphi!r} and cos(u,q²u)={ctheta!r}; "
            f"need |cos(u,qu)| <= (1 + cos(u,q²u))/2")
    rng = np.random.default_rng(rng_seed)
    rho2 = 1 + ctheta
    rho = math.sqrt(rho2)
    # pr = rho² sin(2t)/2 = cos_phi
    half = 0.5 * math.asin(min(1.0, max(-1.0, 2 * cphi / rho2)))
    t = [half, math.pi / 2 - half][rng.integers(2)] + math.pi * rng.integers(2)
    p, r = rho * math.cos(t), rho * math.sin(t)
    s = rng.uniform(0, 2 * math.pi)
    sigma = math.sqrt(1 - ctheta)
    mm, n = sigma * math.cos(s), sigma * math.sin(s)
    c = np.array([(p + mm) / 2, (r + n) / 2, (p - mm) / 2, (r - n) / 2])
    c /= math.sqrt(c @ c)
    out = QCoords.from_array(c)
    res = max(abs(out.cos_phi - cphi), abs(out.cos_theta - ctheta), abs(out.norm2 - 1))
    if res > FRAME_TOL:
        raise Infeasible(f"constraint residual {res!r} exceeds {FRAME_TOL}")
    return out


def random_unit_coords(rng: np.random.Generator, margin: float = 1e-3) -> QCoords:
    """Uniform unit coordinates whose u induces a q-basis with non-degenerate
    planes {u, qu} and {u, q²u} (|cos| <= 1 - margin)."""
    while True:
        c = rng.standard_normal(4)
        c /= math.sqrt(c @ c)
        out = QCoords.from_array(c)
        if (abs(out.cos_phi) <= 1 - margin and abs(out.cos_theta) <= 1 - margin
                and induces_q_basis(c)):
            return out
