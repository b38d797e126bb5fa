"""Exact period/index computations for Brauer classes on finite cohomology
models of 6-manifolds, with the supporting abelian-group, GF(2) and
finite-group algebra."""

from .abelian import FgAbelianGroup, GroupHom
from .examples import (enumerate_valid_models, model_a_teichner_orientable,
                       model_b_teichner_nonorientable)
from .model6 import SixManifoldModel, validate
from .periodindex import (BrauerClassReport, Regime, classify_index_period2, membership,
                          report_class, solve_ex, tpic_report)

__all__ = [
    "FgAbelianGroup", "GroupHom", "SixManifoldModel", "validate",
    "BrauerClassReport", "Regime", "classify_index_period2", "membership", "report_class",
    "solve_ex", "tpic_report", "enumerate_valid_models", "model_a_teichner_orientable",
    "model_b_teichner_nonorientable",
]
