"""Multi-precision evaluation of double-zeta-type values with error bounds."""
from .series import DivergentSeries
from .values import (DEFAULT_EPS, colored2, colored2_single, j_value, t_single, t_tilde,
                     working_dps, zeta, zeta_double, zeta_half, zeta_hat, zeta_sh)
from .verify import (InsufficientPrecision, Report, UnevaluableSymbol, evaluate, linear_value,
                     reconstruct_single_zeta, verify)

__all__ = [
    "DEFAULT_EPS", "DivergentSeries", "InsufficientPrecision", "Report", "UnevaluableSymbol",
    "colored2", "colored2_single", "evaluate", "j_value", "linear_value", "reconstruct_single_zeta",
    "t_single", "t_tilde", "verify", "working_dps", "zeta", "zeta_double", "zeta_half", "zeta_hat",
    "zeta_sh",
]
