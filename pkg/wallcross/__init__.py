"""Exact wall-crossing computations for framed quiver moduli.

The package models framed quivers with stability parameters, enumerates
decomposition data, assembles wall-crossing coefficients and cross-checks
them against fixed-point integrals.

Basic example:

    from wallcross import GammaSeries, wall_crossing_context, wall_cross_terms
    from wallcross.quiver import DimVector, single_vertex

    q = single_vertex(2)
    alpha = DimVector((("0", 2),))
    ctx = wall_crossing_context(q, alpha, DimVector((("0", 1),)))
    for term in wall_cross_terms(ctx, GammaSeries.symbolic()):
        print(term.to_text())
"""
from .errors import (  # noqa: F401
    InputError,
    MissingGammaError,
    ParameterSearchError,
    WallCrossError,
    ZeroWeightError,
)
from .symbolic import KClass, Polynomial, RationalFunction, WeightForm  # noqa: F401
from .decomposition import DecompositionDatum, dec_sets, s_statistic  # noqa: F401
from .stability import EnhancedDim, find_parameters, wall_crossing_context  # noqa: F401
from .engine import GammaSeries, WallCrossTerm, group_by_k, wall_cross_terms  # noqa: F401
from .localization import ab_integrate, adjoint_experiment, grassmannian_model  # noqa: F401

__all__ = [
    "InputError",
    "MissingGammaError",
    "ParameterSearchError",
    "WallCrossError",
    "ZeroWeightError",
    "KClass",
    "Polynomial",
    "RationalFunction",
    "WeightForm",
    "DecompositionDatum",
    "dec_sets",
    "s_statistic",
    "EnhancedDim",
    "find_parameters",
    "wall_crossing_context",
    "GammaSeries",
    "WallCrossTerm",
    "group_by_k",
    "wall_cross_terms",
    "ab_integrate",
    "adjoint_experiment",
    "grassmannian_model",
]
