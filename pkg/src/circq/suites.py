"""Verification suites run by the command-line harness.

Each suite maps (config, point) to a list of entries. Random inputs come
from ``SeedSequence([seed, suite, point])`` so results do not depend on
which suites or points are selected.
"""
from __future__ import annotations

import math
import platform
import time

import numpy as np
import scipy

from . import __version__
from .config import SUITES, RunConfig
from .curvature import (CirculantField, InvarianceClass, constant_curvature,
                        invariance_residual, riemann, sample_invariant_tensor,
                        sectional, sphere_metric)
from .expr import Var, Unary, Binary
from .frame import (ansatz_generator, induces_q_basis, orthogonal_q_basis,
                    q_orbit, qbasis_product, random_unit_coords, sample_with_angles)
from .metric import (PositivityViolation, angle_chain_residuals, circulant_eigenvalues,
                     inner, isometry_residual, metric_at)
from .report import Entry, RunReport, from_theorem
from .theorems import (dop_identities, kcoeffs, master_identity, thm4, thm5, thm6,
                       thm7, thm7_components)

__all__ = ["run_suites", "is_constant"]


def is_constant(e) -> bool:
    if isinstance(e, Var):
        return False
    if isinstance(e, Unary):
        return is_constant(e.arg)
    if isinstance(e, Binary):
        return is_constant(e.left) and is_constant(e.right)
    return True


def _rng(cfg: RunConfig, suite: str, point_index: int) -> np.random.Generator:
    tag = SUITES.index(suite)
    return np.random.default_rng(np.random.SeedSequence([cfg.seed, tag, point_index]))


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def _max_entry(suite, check, i, reports, tol, **detail) -> Entry:
    worst = max(reports, key=lambda r: r.residual / r.tol if r.tol else r.residual)
    detail.update({"count": len(reports), "worst": worst.theorem,
                   "failures": sum(not r.passed for r in reports)})
    return Entry(suite, check, i, worst.residual, tol,
                 all(r.passed for r in reports), detail)


# ---------------------------------------------------------------------------

def _validate(cfg, field, i, p, tol):
    out = []
    try:
        m = metric_at(field, p)
    except PositivityViolation as exc:
        A, B, C = exc.values
        out.append(Entry("validate", "positivity", i, 0.0, None, False,
                         {"A": A, "B": B, "C": C,
                          "message": f"PositivityViolation: A > C > B > 0 fails "
                                     f"(A={A!r}, B={B!r}, C={C!r})"}))
        return out
    A, B, C = m.abc
    out.append(Entry("validate", "positivity", i, min(A - C, C - B, B), None, True,
                     {"A": A, "B": B, "C": C}))
    closed = np.sort(circulant_eigenvalues(A, B, C))
    direct = np.linalg.eigvalsh(m.g)
    diff = float(np.max(np.abs(closed - direct)))
    out.append(Entry("validate", "eigenvalues", i, diff, tol["eigenvalues"],
                     diff <= tol["eigenvalues"] * (1 + float(np.max(closed)))
                     and float(np.min(closed)) > 0,
                     {"closed_form": closed}))
    inv = float(np.max(np.abs(m.g @ m.g_inv - np.eye(4))))
    out.append(Entry("validate", "inverse", i, inv, tol["inverse"], inv <= tol["inverse"]))
    rng = _rng(cfg, "validate", i)
    worst = 0.0
    for _ in range(100):
        x, y = rng.standard_normal((2, 4))
        worst = max(worst, isometry_residual(m, x, y) / (1 + abs(inner(m, x, y))))
    out.append(Entry("validate", "isometry", i, worst, tol["isometry"],
                     worst <= tol["isometry"], {"pairs": 100}))
    return out


def _sphere_entry(tol):
    s = sphere_metric()
    p = np.array([0.1, 0.2, -0.3, 0.4])
    m = s.metric(p)
    R = riemann(s, p)
    rng = np.random.default_rng(0)
    worst = max(abs(sectional(m, R, *rng.standard_normal((2, 4))) - 1) for _ in range(20))
    return Entry("curvature", "sign convention (round sphere)", None, worst, 1e-6,
                 worst <= 1e-6, {"planes": 20})


def _curvature(cfg, field, i, p, tol):
    R = riemann(CirculantField(field), p)
    sym = max(R.symmetries.values())
    out = [Entry("curvature", "symmetries", i, sym, tol["symmetry"],
                 sym <= tol["symmetry"], {"residuals": R.symmetries})]
    if all(is_constant(e) for e in (field.A, field.B, field.C)):
        mx = float(np.max(np.abs(R.R)))
        out.append(Entry("curvature", "flat", i, mx, tol["flat"], mx <= tol["flat"],
                         {"message": f"flat: max|R| = {mx:.3e}"}))
    for cls in (InvarianceClass.FULL_Q, InvarianceClass.LAST_PAIR_Q):
        res = invariance_residual(R, cls)
        out.append(Entry("curvature", f"{cls.value} invariance of R", i, res,
                         tol["invariance"], res <= tol["invariance"], informational=True))
    return out


def _frames(cfg, field, i, p, tol):
    m = metric_at(field, p)
    rng = _rng(cfg, "frames", i)
    vectors = list(rng.standard_normal((500, 4)))
    vectors += [np.ones(4), np.array([1., 0, 1, 0]), np.array([1., 2, 1, 2]),
                np.array([1., 1, -1, 1]), np.array([1., 0, 0, 0])]
    disagreements = 0
    banded = 0
    for x in vectors:
        norm4 = float(np.sum(np.abs(x))) ** 4
        rel = abs(qbasis_product(x)) / norm4
        oracle = abs(np.linalg.det(q_orbit(x))) > 1e-12 * norm4
        if 0 < rel < 1e-9:
            banded += 1
            continue
        disagreements += oracle != induces_q_basis(x)
    out = [Entry("frames", "q-basis criterion vs determinant", i, float(disagreements),
                 0.0, disagreements == 0, {"vectors": len(vectors), "banded": banded})]

    frame = orthogonal_q_basis(m, seed=_seed(rng))
    off = frame.offdiag_max()
    diag = float(np.ptp(np.diag(frame.gram)))
    A, B, C = m.abc
    x = frame.generator
    s_ratio = (x[1] + x[3]) / x[0] if x[0] != 0 else math.nan
    s_root = (-(A + C) + math.sqrt((A + C) ** 2 - 4 * B * B)) / B
    out.append(Entry("frames", "orthogonal q-basis", i, max(off, diag), tol["frame"],
                     max(off, diag) <= tol["frame"] and induces_q_basis(x),
                     {"generator": x, "warm_start": ansatz_generator(A, B, C),
                      "s_over_a": s_ratio, "s_root": s_root}))
    worst = 0.0
    for _ in range(50):
        v = rng.standard_normal(4)
        if induces_q_basis(v):
            worst = max(worst, *angle_chain_residuals(m, v).values())
    out.append(Entry("frames", "inner-product chains", i, worst, tol["angle_chain"],
                     worst <= tol["angle_chain"], {"vectors": 50}))
    return out


def _identity_entries(tag, T, frame, rng, i, tol):
    out = [_max_entry("identities", f"dop identities [{tag}]", i,
                      dop_identities(T, frame, tol["dop"]), tol["dop"])]
    reports = [master_identity(T, frame, random_unit_coords(rng), tol["master"])
               for _ in range(10)]
    out.append(_max_entry("identities", f"master identity [{tag}]", i, reports,
                          tol["master"]))
    return out


def _identities(cfg, field, i, p, tol):
    m = metric_at(field, p)
    rng = _rng(cfg, "identities", i)
    frame = orthogonal_q_basis(m, seed=_seed(rng))
    out = []
    worst = max(kcoeffs(random_unit_coords(rng)).residual for _ in range(200))
    out.append(Entry("identities", "K coefficients", i, worst, tol["kcoeffs"],
                     worst <= tol["kcoeffs"], {"coords": 200}))
    out += _identity_entries("constant curvature", constant_curvature(m, 1.0),
                             frame, rng, i, tol)
    for k in range(cfg.samples):
        T = sample_invariant_tensor(m, InvarianceClass.FULL_Q, _seed(rng))
        out += _identity_entries(f"full-q sample {k}", T, frame, rng, i, tol)
    R = riemann(CirculantField(field), p)
    res = invariance_residual(R, InvarianceClass.FULL_Q)
    if res <= tol["invariance"]:
        out += _identity_entries("from metric", R, frame, rng, i, tol)
    else:
        out.append(Entry("identities", "from-metric R skipped", i, res, tol["invariance"],
                         False, {"message": f"from-metric R is not full-q invariant "
                                            f"(residual {res:.3e}); skipped"},
                         informational=True))
    return out


def _theorem_cases(T, frame, rng, tol):
    ct = float(rng.uniform(-0.9, 0.9))
    cp = float(rng.uniform(-0.45, 0.45))
    mu_r = thm4(T, frame, sample_with_angles(0.0, ct, _seed(rng)), ("mu-r",), tol["thm4"])
    mu_r2 = thm4(T, frame, sample_with_angles(cp, 0.0, _seed(rng)), ("mu-r2",), tol["thm4"])
    r5 = thm5(T, frame, sample_with_angles(0.0, float(rng.uniform(-0.9, 0.9)), _seed(rng)),
              sample_with_angles(0.0, 0.5, _seed(rng)),
              sample_with_angles(0.0, -0.5, _seed(rng)), tol["thm5"])
    r6 = thm6(T, frame, sample_with_angles(float(rng.uniform(-0.45, 0.45)), 0.0, _seed(rng)),
              sample_with_angles(0.5, 0.0, _seed(rng)),
              sample_with_angles(-0.5, 0.0, _seed(rng)), tol["thm6"])
    return mu_r + mu_r2 + [r5, r6]


def _theorems(cfg, field, i, p, tol):
    m = metric_at(field, p)
    rng = _rng(cfg, "theorems", i)
    frame = orthogonal_q_basis(m, seed=_seed(rng))
    out = []
    cases = [("constant curvature", constant_curvature(m, 1.0))]
    cases += [(f"full-q sample {k}",
               sample_invariant_tensor(m, InvarianceClass.FULL_Q, _seed(rng)))
              for k in range(cfg.samples)]
    R = riemann(CirculantField(field), p)
    if invariance_residual(R, InvarianceClass.FULL_Q) <= tol["invariance"]:
        cases.append(("from metric", R))
    for tag, T in cases:
        for rep in _theorem_cases(T, frame, rng, tol):
            e = from_theorem("theorems", i, rep)
            e.check = f"{rep.theorem} [{tag}]"
            corrected = rep.extras.get("corrected_residual")
            if corrected is not None:
                e.detail["message"] = (f"{e.check} residual = {rep.residual:.3e} "
                                       f"(tol {rep.tol:.1e}); with omitted term "
                                       f"restored: {corrected:.3e}")
            out.append(e)
    L = sample_invariant_tensor(m, InvarianceClass.LAST_PAIR_Q, _seed(rng))
    out.append(_max_entry("theorems", "mu-r5 components [last-pair-q]", i,
                          thm7_components(L, frame, tol["thm7_components"]),
                          tol["thm7_components"]))
    reports = [r for _ in range(10) for r in thm7(L, frame, random_unit_coords(rng),
                                                   tol["thm7"])]
    out.append(_max_entry("theorems", "mu-r5 [last-pair-q]", i, reports, tol["thm7"]))
    return out


_RUNNERS = {
    "validate": _validate,
    "curvature": _curvature,
    "frames": _frames,
    "identities": _identities,
    "theorems": _theorems,
}


class SuiteError(RuntimeError):
    """A math error inside a suite, with suite and point context."""

    def __init__(self, suite, point_index, exc):
        self.suite = suite
        self.point_index = point_index
        super().__init__(f"suite {suite!r}, point {point_index}: "
                         f"{type(exc).__name__}: {exc}")


def run_suites(cfg: RunConfig, suites=None, tol_scale: float = 1.0) -> RunReport:
    started = time.perf_counter()
    suites = tuple(s for s in SUITES if s in (suites or cfg.suites))
    tol = {k: v * tol_scale for k, v in cfg.tolerances.items()}
    field = cfg.metric_field()
    valid = []
    for i, p in enumerate(cfg.points):
        try:
            metric_at(field, p)
            valid.append(True)
        except PositivityViolation:
            valid.append(False)
        except ArithmeticError as exc:
            raise SuiteError(suites[0] if suites else "validate", i, exc) from exc

    entries = []
    for suite in suites:
        if suite == "curvature":
            entries.append(_sphere_entry(tol))
        for i, p in enumerate(cfg.points):
            if suite != "validate" and not valid[i]:
                entries.append(Entry(suite, "skipped", i, 0.0, None, False,
                                     {"message": "metric violates A > C > B > 0 "
                                                 "at this point; suite skipped"}))
                continue
            try:
                entries += _RUNNERS[suite](cfg, field, i, np.asarray(p, dtype=float), tol)
            except (ArithmeticError, ValueError, RuntimeError) as exc:
                raise SuiteError(suite, i, exc) from exc

    config = cfg.echo()
    config["suites"] = list(suites)
    config["tol_scale"] = tol_scale
    versions = {"circq": __version__, "numpy": np.__version__,
                "python": platform.python_version(), "scipy": scipy.__version__}
    return RunReport(config, entries, versions, time.perf_counter() - started)
