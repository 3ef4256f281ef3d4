"""Numerical checks of the sectional-curvature relations for q-invariant
curvature tensors on an orthonormal q-basis {x, qx, q²x, q³x}.

Every check evaluates both sides independently: curvature values on the
frame by full tensor contraction, sectional curvatures from the
reconstructed vectors u, qu, q²u, and the closed forms from the
coordinates (α, β, γ, δ) of u.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import CurvatureAtPoint, InvarianceClass, invariance_residual, sectional
from .frame import FrameQ, QCoords, reconstruct
from .tensor import q_apply, tensor_eval, tensor_scale

__all__ = [
    "RSextet", "KQuintet", "TheoremReport", "WrongInvarianceClass",
    "AngleConstraintViolated", "NotUnitNorm", "DOP_IDENTITIES",
    "dop_identities", "kcoeffs", "expansion_residuals", "master_identity",
    "thm4", "thm5", "thm6", "thm7", "thm7_components",
]

INVARIANCE_TOL = 1e-9
GATE_TOL = 1e-10


class WrongInvarianceClass(ValueError):
    pass


class AngleConstraintViolated(ValueError):
    pass


class NotUnitNorm(ValueError):
    pass


def _tensor(R):
    return R.R if isinstance(R, CurvatureAtPoint) else np.asarray(R, dtype=float)


def _require_class(R, cls: InvarianceClass):
    res = invariance_residual(_tensor(R), cls)
    if res > INVARIANCE_TOL:
        raise WrongInvarianceClass(
            f"tensor is not {cls.value} invariant (relative residual {res:.3e})")


def _frame_value(T, f: FrameQ, i, j, k, l) -> float:
    v = f.vectors
    return tensor_eval(T, v[i], v[j], v[k], v[l])


@dataclass(frozen=True)
class RSextet:
    R1: float  # R(x, qx, x, qx)
    R2: float  # R(x, qx, q²x, x)
    R3: float  # R(x, q²x, x, q²x)
    R4: float  # R(x, qx, qx, q²x)
    R5: float  # R(qx, q²x, q³x, x)
    R6: float  # R(qx, q²x, q²x, x)

    @classmethod
    def from_frame(cls, R, f: FrameQ) -> "RSextet":
        T = _tensor(R)
        idx = [(0, 1, 0, 1), (0, 1, 2, 0), (0, 2, 0, 2),
               (0, 1, 1, 2), (1, 2, 3, 0), (1, 2, 2, 0)]
        return cls(*(_frame_value(T, f, *t) for t in idx))

    def as_array(self) -> np.ndarray:
        return np.array([self.R1, self.R2, self.R3, self.R4, self.R5, self.R6])


@dataclass(frozen=True)
class KQuintet:
    K1: float
    K2: float
    K3: float
    K4: float
    K5: float
    cosine_form: tuple  # the same five from cos φ, cos θ
    residual: float

    def as_array(self) -> np.ndarray:
        return np.array([self.K1, self.K2, self.K3, self.K4, self.K5])


@dataclass
class TheoremReport:
    theorem: str
    lhs: float
    rhs: float
    residual: float
    tol: float
    passed: bool
    inputs: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, theorem, lhs, rhs, tol, scale=1.0, inputs=None, extras=None):
        residual = abs(lhs - rhs)
        return cls(theorem, float(lhs), float(rhs), float(residual), tol,
                   bool(residual <= tol * scale), inputs or {}, extras or {})


# (name, chain of frame index tuples that must be equal); k stands for q^k x
DOP_IDENTITIES = [
    ("dop2", [(0, 3, 0, 3), (0, 1, 0, 1)]),
    ("dop3", [(0, 1, 2, 0), (2, 3, 0, 2), (3, 0, 1, 3)]),
    ("dop4", [(1, 3, 1, 3), (0, 2, 0, 2)]),
    ("dop5", [(0, 1, 1, 2), (2, 3, 3, 0), (3, 0, 0, 1)]),
    ("dop6", [(1, 2, 3, 0), (0, 1, 2, 3)]),
    ("dop7", [(1, 2, 2, 0), (0, 1, 1, 3), (3, 0, 0, 2)]),
    ("dop8", [(0, 2, 1, 3), None]),  # None: equals zero
]


def dop_identities(R, f: FrameQ, tol: float = 1e-12) -> list[TheoremReport]:
    """Residuals of the identities that full q-invariance forces on a q-basis.

    Chains a = b = c produce one report per adjacent pair.
    """
    _require_class(R, InvarianceClass.FULL_Q)
    T = _tensor(R)
    scale = 1.0 + float(np.max(np.abs(T)))
    reports = []
    for name, chain in DOP_IDENTITIES:
        vals = [0.0 if t is None else _frame_value(T, f, *t) for t in chain]
        for k in range(len(vals) - 1):
            reports.append(TheoremReport.compare(
                f"{name}[{k}]", vals[k], vals[k + 1], tol, scale,
                inputs={"chain": [None if t is None else list(t) for t in chain]}))
    return reports


def kcoeffs(c: QCoords, tol: float = 1e-12) -> KQuintet:
    """Coefficients K1..K5 of the combined expansion, from their polynomial
    form and from the cosines of u's angles to qu and q²u."""
    a, b, g, d = c.as_array()
    if abs(c.norm2 - 1) > 1e-10:
        raise NotUnitNorm(f"coordinates have squared norm {c.norm2!r}")
    K1 = ((a*a - b*d)**2 + (d*d - a*g)**2 + (b*b - a*g)**2 + (g*g - b*d)**2
          + (a*d - b*g)**2 + (a*b - g*d)**2)
    K2 = 2 * ((a*b - g*d) * (g*g - a*a) + (b*g - d*a) * (d*d - b*b)
              + (a*d - b*g) * (g*g - a*a) + (a*b - d*g) * (d*d - b*b))
    K3 = (a*b - g*d)**2 + (b*g - d*a)**2 + 0.5 * ((a*a - g*g)**2 + (b*b - d*d)**2)
    K4 = 2 * (a*a + g*g - 2*b*d) * (d*d + b*b - 2*a*g)
    K5 = (2 * ((a*a - b*d) * (g*g - b*d) + (b*b - a*g) * (d*d - a*g))
          - (a*b - g*d)**2 - (b*g - a*d)**2)
    cp, ct = c.cos_phi, c.cos_theta
    cos_form = (1 - cp*cp, -2 * cp * (1 - ct), 0.5 * (1 - ct*ct),
                2 * (-ct + cp*cp), ct*ct - cp*cp)
    residual = float(np.max(np.abs(np.array([K1, K2, K3, K4, K5]) - cos_form)))
    return KQuintet(K1, K2, K3, K4, K5, cos_form, residual)


def _u_vectors(f: FrameQ, c: QCoords):
    u = reconstruct(f, c)
    return u, q_apply(u), q_apply(u, 2)


def _mu_pair(R, f: FrameQ, c: QCoords):
    m = f.metric
    u, qu, q2u = _u_vectors(f, c)
    return sectional(m, _tensor(R), u, qu), sectional(m, _tensor(R), u, q2u)


def _inputs(c: QCoords, **more):
    d = {"coords": [c.alpha, c.beta, c.gamma, c.delta],
         "cos_phi": c.cos_phi, "cos_theta": c.cos_theta}
    d.update(more)
    return d


def _require_orthonormal(f: FrameQ):
    if not f.orthonormal:
        raise ValueError("an orthonormal q-basis is required")


def expansion_residuals(R, f: FrameQ, c: QCoords) -> dict[str, float]:
    """Residuals of the two curvature expansions in (α, β, γ, δ) and R1..R6,
    and of their combination with coefficients K1..K5, K2."""
    _require_class(R, InvarianceClass.FULL_Q)
    T = _tensor(R)
    a, b, g, d = c.as_array()
    s = RSextet.from_frame(T, f).as_array()
    u, qu, q2u = _u_vectors(f, c)
    r_qu = tensor_eval(T, u, qu, u, qu)
    r_q2u = tensor_eval(T, u, q2u, u, q2u)
    coef_qu = np.array([
        (a*a - b*d)**2 + (d*d - a*g)**2 + (b*b - a*g)**2 + (g*g - b*d)**2,
        2 * ((a*b - g*d) * (g*g - a*a) + (b*g - d*a) * (d*d - b*b)),
        (a*b - g*d)**2 + (b*g - d*a)**2,
        2 * (a*a + g*g - 2*b*d) * (d*d + b*b - 2*a*g),
        2 * ((a*a - b*d) * (g*g - b*d) + (b*b - a*g) * (d*d - a*g)),
        2 * ((a*b - g*d) * (d*d - b*b) + (b*g - d*a) * (a*a - g*g)),
    ])
    coef_q2u = np.array([
        2 * ((a*d - b*g)**2 + (a*b - g*d)**2),
        4 * ((a*d - b*g) * (g*g - a*a) + (a*b - d*g) * (d*d - b*b)),
        (a*a - g*g)**2 + (b*b - d*d)**2,
        0.0,
        -2 * ((a*b - g*d)**2 + (b*g - a*d)**2),
        4 * ((b*b - d*d) * (a*d - b*g) + (a*b - g*d) * (g*g - a*a)),
    ])
    K = kcoeffs(c)
    coef_sum = np.array([K.K1, K.K2, K.K3, K.K4, K.K5, K.K2])
    scale = 1.0 + float(np.max(np.abs(s)))
    return {
        "R(u,qu,u,qu)": abs(r_qu - coef_qu @ s) / scale,
        "R(u,q2u,u,q2u)": abs(r_q2u - coef_q2u @ s) / scale,
        "combined": abs(r_qu + 0.5 * r_q2u - coef_sum @ s) / scale,
    }


def master_identity(R, f: FrameQ, c: QCoords, tol: float = 1e-10) -> TheoremReport:
    """(1-cos²φ)μ(u,qu) + ½(1-cos²θ)μ(u,q²u) against its expansion in R1..R6."""
    _require_class(R, InvarianceClass.FULL_Q)
    _require_orthonormal(f)
    T = _tensor(R)
    u, qu, q2u = _u_vectors(f, c)
    m = f.metric
    guu = float(u @ m.g @ u)
    cp = float(u @ m.g @ qu) / guu
    ct = float(u @ m.g @ q2u) / guu
    mu1, mu2 = _mu_pair(T, f, c)
    s = RSextet.from_frame(T, f)
    lhs = (1 - cp*cp) * mu1 + 0.5 * (1 - ct*ct) * mu2
    rhs = ((1 - cp*cp) * s.R1 - 2 * cp * (1 - ct) * s.R2 + 0.5 * (1 - ct*ct) * s.R3
           + 2 * (-ct + cp*cp) * s.R4 + (ct*ct - cp*cp) * s.R5
           - 2 * cp * (1 - ct) * s.R6)
    extras = {
        "g(u,u)-1": guu - 1.0,
        "cos_phi_metric_vs_coords": cp - c.cos_phi,
        "cos_theta_metric_vs_coords": ct - c.cos_theta,
    }
    return TheoremReport.compare("mu+mu", lhs, rhs, tol, 1.0 + tensor_scale(T),
                                 _inputs(c), extras)


def _gate(name, value, target):
    if abs(value - target) > GATE_TOL:
        raise AngleConstraintViolated(
            f"{name} = {value!r}, the relation needs {target!r}")


def thm4(R, f: FrameQ, c: QCoords, which=("mu-r", "mu-r2"),
         tol: float = 1e-10) -> list[TheoremReport]:
    """The two sectional-curvature relations for u, each under its angle gate.

    ``mu-r`` needs cos∠(u,qu) = 0 and ``mu-r2`` needs cos∠(u,q²u) = 0. Each
    report carries in ``extras`` the residual of the relation with the
    term it omits restored (``corrected_residual``) and that term itself.
    """
    _require_class(R, InvarianceClass.FULL_Q)
    _require_orthonormal(f)
    T = _tensor(R)
    s = RSextet.from_frame(T, f)
    mu1, mu2 = _mu_pair(T, f, c)
    scale = 1.0 + tensor_scale(T)
    cp, ct = c.cos_phi, c.cos_theta
    reports = []
    for name in which:
        if name == "mu-r":
            _gate("cos(u,qu)", cp, 0.0)
            lhs = mu2 - s.R3
            rhs = 2 * ct / (1 - ct*ct) * (-2 * s.R4 + ct * s.R5)
            omitted = 2 * (s.R1 - mu1) / (1 - ct*ct)
        elif name == "mu-r2":
            _gate("cos(u,q2u)", ct, 0.0)
            lhs = mu1 - s.R1
            rhs = cp / (1 - cp*cp) * (-2 * s.R2 + 2 * cp * s.R4 - cp * s.R5 - 2 * s.R6)
            omitted = 0.5 * (s.R3 - mu2) / (1 - cp*cp)
        else:
            raise ValueError(f"unknown relation {name!r}")
        extras = {"omitted_term": omitted,
                  "corrected_residual": abs(lhs - rhs - omitted),
                  "note": "u is gated to the angle at which the relation is claimed"}
        reports.append(TheoremReport.compare(name, lhs, rhs, tol, scale, _inputs(c), extras))
    return reports


def _three_point(R, f, u_c, y_c, z_c, angle, tol):
    """Shared body of the two three-vector relations.

    ``angle`` is "theta" (angles to q²v) or "phi" (angles to qv)."""
    _require_class(R, InvarianceClass.FULL_Q)
    _require_orthonormal(f)
    T = _tensor(R)
    s = RSextet.from_frame(T, f)
    if angle == "theta":
        _gate("cos(y,q2y)", y_c.cos_theta, 0.5)
        _gate("cos(z,q2z)", z_c.cos_theta, -0.5)
        for label, cc in (("u", u_c), ("y", y_c), ("z", z_c)):
            _gate(f"cos({label},q{label})", cc.cos_phi, 0.0)
        c = u_c.cos_theta
    else:
        _gate("cos(y,qy)", y_c.cos_phi, 0.5)
        _gate("cos(z,qz)", z_c.cos_phi, -0.5)
        for label, cc in (("u", u_c), ("y", y_c), ("z", z_c)):
            _gate(f"cos({label},q2{label})", cc.cos_theta, 0.0)
        c = u_c.cos_phi
    # (μ(v,qv), μ(v,q²v)) for v = u, y, z
    (u1, u2), (y1, y2), (z1, z2) = (_mu_pair(T, f, cc) for cc in (u_c, y_c, z_c))

    def rhs_with(first, mu_y, mu_z):
        return (1 / (1 - c*c)) * ((1 - 4*c*c) * first
                                  + 0.75 * (c + 2*c*c) * mu_y
                                  + 0.75 * (2*c*c - c) * mu_z)

    extras = {"coefficient_sum_minus_(1-c^2)":
              (1 - 4*c*c) + 0.75*(c + 2*c*c) + 0.75*(2*c*c - c) - (1 - c*c)}
    if angle == "theta":
        lhs = u2
        rhs = rhs_with(s.R3, y2, z2)
        # the relation treats μ(v,qv) as μ(x,qx); restore the difference
        dy = 3 * (y2 - s.R3) - 8 * (s.R1 - y1)  # = 2R5 - 8R4
        dz = 3 * (z2 - s.R3) - 8 * (s.R1 - z1)  # = 2R5 + 8R4
        r4, r5 = (dz - dy) / 16, (dy + dz) / 4
        corrected = s.R3 + (2 * c * (-2 * r4 + c * r5) + 2 * (s.R1 - u1)) / (1 - c*c)
        extras["complementary_deviation"] = {
            "u": u1 - s.R1, "y": y1 - s.R1, "z": z1 - s.R1}
        name = "mu-r3"
    else:
        lhs = u1
        rhs = rhs_with(s.R3, y1, z1)
        extras["residual_with_mu(x,qx)_first_term"] = abs(lhs - rhs_with(s.R1, y1, z1))
        # the relation treats μ(v,q²v) as μ(x,q²x); restore the difference
        ey = 0.75 * (y1 - s.R1) - 0.5 * (s.R3 - y2)  # = -(R2+R6) + (R4/2 - R5/4)
        ez = 0.75 * (z1 - s.R1) - 0.5 * (s.R3 - z2)  # =  (R2+R6) + (R4/2 - R5/4)
        sum26, w = (ez - ey) / 2, (ey + ez) / 2
        corrected = s.R1 + (0.5 * (s.R3 - u2) - 2 * c * sum26 + 4 * c * c * w) / (1 - c*c)
        extras["complementary_deviation"] = {
            "u": u2 - s.R3, "y": y2 - s.R3, "z": z2 - s.R3}
        name = "mu-r4"
    extras["corrected_residual"] = abs(lhs - corrected)
    inputs = {"u": _inputs(u_c), "y": _inputs(y_c), "z": _inputs(z_c)}
    return TheoremReport.compare(name, lhs, rhs, tol, 1.0 + tensor_scale(T), inputs, extras)


def thm5(R, f: FrameQ, u_c: QCoords, y_c: QCoords, z_c: QCoords,
         tol: float = 1e-9) -> TheoremReport:
    """μ(u,q²u) from μ(x,q²x), μ(y,q²y), μ(z,q²z) with ∠(y,q²y) = π/3 and
    ∠(z,q²z) = 2π/3; every vector also has ∠(·, q·) = π/2."""
    return _three_point(R, f, u_c, y_c, z_c, "theta", tol)


def thm6(R, f: FrameQ, u_c: QCoords, y_c: QCoords, z_c: QCoords,
         tol: float = 1e-9) -> TheoremReport:
    """μ(u,qu) from μ(x,q²x), μ(y,qy), μ(z,qz) with ∠(y,qy) = π/3 and
    ∠(z,qz) = 2π/3; every vector also has ∠(·, q²·) = π/2.

    The first term uses μ(x,q²x); ``extras`` also carries the
    residual with μ(x,qx) in its place.
    """
    return _three_point(R, f, u_c, y_c, z_c, "phi", tol)


def thm7_components(R, f: FrameQ, tol: float = 1e-12) -> list[TheoremReport]:
    """Consequences of last-pair invariance on the frame:
    R1 = R4 = R5 and R2 = R3 = R6 = 0."""
    _require_class(R, InvarianceClass.LAST_PAIR_Q)
    T = _tensor(R)
    s = RSextet.from_frame(T, f)
    scale = 1.0 + float(np.max(np.abs(T)))
    return [
        TheoremReport.compare("R1=R4", s.R1, s.R4, tol, scale),
        TheoremReport.compare("R4=R5", s.R4, s.R5, tol, scale),
        TheoremReport.compare("R2=0", s.R2, 0.0, tol, scale),
        TheoremReport.compare("R3=0", s.R3, 0.0, tol, scale),
        TheoremReport.compare("R6=0", s.R6, 0.0, tol, scale),
    ]


def thm7(R, f: FrameQ, c: QCoords, tol: float = 1e-10) -> list[TheoremReport]:
    """μ(u,q²u) = 0 and μ(u,qu) = (1-cosθ)²/(1-cos²φ) μ(x,qx)."""
    _require_class(R, InvarianceClass.LAST_PAIR_Q)
    _require_orthonormal(f)
    T = _tensor(R)
    mu1, mu2 = _mu_pair(T, f, c)
    mu_x = sectional(f.metric, T, f.vectors[0], f.vectors[1])
    cp, ct = c.cos_phi, c.cos_theta
    scale = 1.0 + tensor_scale(T)
    return [
        TheoremReport.compare("mu-r5[q2]", mu2, 0.0, tol, scale, _inputs(c)),
        TheoremReport.compare("mu-r5[q]", mu1, (1 - ct) ** 2 / (1 - cp*cp) * mu_x,
                              tol, scale, _inputs(c)),
    ]
