"""qsigma: exact analysis of the braiding-type dual map on quantum flag
manifold tangent spaces, over the field Q(q)."""

__version__ = "0.1.0"

from .cartan import CartanData, ConfigError, build
from .scalar import LaurentFraction, LaurentPoly, ScalarError, parse, q_int, q_power, render
from .sigma import (
    EquivarianceError,
    NotAnEigenvectorError,
    SigmaMatrix,
    SingularMatrixError,
    SpectralReport,
    SpectrumError,
    check_equivariance,
    eigenvalue_of,
    invert,
    relation_space_dual,
    sigma_apply,
    sigma_matrix,
    spectrum,
)
from .tangent import ConsistencyError, TangentSpace, build_tangent, rho_restrict
from .uqg import AlgebraElement, Monomial, TensorElement, UqAlgebra

__all__ = [
    "AlgebraElement",
    "CartanData",
    "ConfigError",
    "ConsistencyError",
    "EquivarianceError",
    "LaurentFraction",
    "LaurentPoly",
    "Monomial",
    "NotAnEigenvectorError",
    "ScalarError",
    "SigmaMatrix",
    "SingularMatrixError",
    "SpectralReport",
    "SpectrumError",
    "TangentSpace",
    "TensorElement",
    "UqAlgebra",
    "build",
    "build_tangent",
    "check_equivariance",
    "eigenvalue_of",
    "invert",
    "parse",
    "q_int",
    "q_power",
    "relation_space_dual",
    "render",
    "rho_restrict",
    "sigma_apply",
    "sigma_matrix",
    "spectrum",
]
