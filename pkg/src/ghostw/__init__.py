"""Exact computations in U(osp(1|2n)): center, anticenter, Casimir ghost and the
finite W-algebra of the principal nilpotent through its Whittaker model."""

from .centers import CenterSolver, solver_for
from .exactmath import Rational, RationalMatrix, in_span, kernel_basis
from .hc import HCPolynomial, central_character, eta, harish_chandra, in_D, sigma
from .osp import OspAlgebra, build_osp
from .uea import UEA, UEAElement, uea_for
from .whittaker import WhittakerModel, WhittakerVector, model_for, verify_ghost_isomorphism

__all__ = [
    "CenterSolver", "HCPolynomial", "OspAlgebra", "Rational", "RationalMatrix", "UEA",
    "UEAElement", "WhittakerModel", "WhittakerVector", "build_osp", "central_character",
    "eta", "harish_chandra", "in_D", "in_span", "kernel_basis", "model_for", "sigma",
    "solver_for", "uea_for", "verify_ghost_isomorphism",
]

__version__ = "0.1.0"
