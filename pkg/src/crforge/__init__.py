"""crforge: truncated power-series engine and CR germ classification."""

from .scalars import QC
from .series import INF, TruncatedSeries, VarSignature
from .manifold import (Biholomorphism, ComplexGraph, DefiningEquations,
                       DomainError, check_reality, compose_bihol,
                       identity_bihol, invert_bihol, remove_pluriharmonic,
                       solve_theta, transform_defining,
                       verify_theta_identities)

__all__ = [
    "QC", "INF", "TruncatedSeries", "VarSignature",
    "Biholomorphism", "ComplexGraph", "DefiningEquations", "DomainError",
    "check_reality", "compose_bihol", "identity_bihol", "invert_bihol",
    "remove_pluriharmonic", "solve_theta", "transform_defining",
    "verify_theta_identities",
]

__version__ = "0.1.0"
