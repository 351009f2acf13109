"""Arc lemniscate functions, their hyperbolic versions and inverses, and a
numerical certifier for the Shafer-Fink type bounds they satisfy."""
from .arc import (
    EvalOutcome, arcsl, arcslh, arctl, arctlh, d_arcsl, d_arcslh, d_arctl, d_arctlh,
)
from .bounds import (
    AuxFunctionId, BoundSpec, FunctionId, InequalityDisplay, aux, aux_catalogue,
    builtin_specs, envelope,
)
from .constants import LemniscateConstants, agm, constants, k_const, omega
from .errors import ConvergenceError, DomainError, LemniscateError, NotFoundError
from .inverse import (
    InversionConfig, d_sl, d_slh, d_tl, d_tlh, sl, slh, sqrt_one_minus_sl4,
    sqrt_one_plus_slh4, tl, tlh,
)
from .quadrature import QuadratureResult, integrate
from .verifier import CheckReport, GridSpec, find_crossing, run_all, sharpness_probe

__version__ = "0.1.0"

__all__ = [
    "EvalOutcome", "arcsl", "arcslh", "arctl", "arctlh",
    "d_arcsl", "d_arcslh", "d_arctl", "d_arctlh",
    "AuxFunctionId", "BoundSpec", "FunctionId", "InequalityDisplay", "aux",
    "aux_catalogue", "builtin_specs", "envelope",
    "LemniscateConstants", "agm", "constants", "k_const", "omega",
    "ConvergenceError", "DomainError", "LemniscateError", "NotFoundError",
    "InversionConfig", "sl", "slh", "tl", "tlh", "d_sl", "d_slh", "d_tl", "d_tlh",
    "sqrt_one_minus_sl4", "sqrt_one_plus_slh4",
    "QuadratureResult", "integrate",
    "CheckReport", "GridSpec", "find_crossing", "run_all", "sharpness_probe",
]
