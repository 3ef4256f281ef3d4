"""Curvature of a 4-manifold with a circulant metric and the cyclic structure q."""
__version__ = "0.1.0"

from .expr import eval_jet2, parse, to_text
from .tensor import q_apply, tensor_eval, tensor_q_pullback, symmetry_residuals
from .metric import (MetricField, MetricAtPoint, PositivityViolation, angle, inner,
                     isometry_residual, metric_at, metric_from_values)
from .frame import (FrameQ, QCoords, coords_in_frame, induces_q_basis,
                    orthogonal_q_basis, reconstruct, sample_with_angles)
from .curvature import (CirculantField, ExprMetricField, InvarianceClass, christoffels,
                        constant_curvature, riemann, sample_invariant_tensor, sectional,
                        sphere_metric)
from .theorems import (dop_identities, kcoeffs, master_identity, thm4, thm5, thm6, thm7)

__all__ = [
    "eval_jet2", "parse", "to_text",
    "q_apply", "tensor_eval", "tensor_q_pullback", "symmetry_residuals",
    "MetricField", "MetricAtPoint", "PositivityViolation", "angle", "inner",
    "isometry_residual", "metric_at", "metric_from_values",
    "FrameQ", "QCoords", "coords_in_frame", "induces_q_basis", "orthogonal_q_basis",
    "reconstruct", "sample_with_angles",
    "CirculantField", "ExprMetricField", "InvarianceClass", "christoffels",
    "constant_curvature", "riemann", "sample_invariant_tensor", "sectional", "sphere_metric",
    "dop_identities", "kcoeffs", "master_identity", "thm4", "thm5", "thm6", "thm7",
]
