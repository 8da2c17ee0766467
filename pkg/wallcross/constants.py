"""Names and defaults shared across the wallcross package.

Variable names are plain ASCII identifiers so that canonical text output can
be parsed back without special handling. The default registry order below is
the global variable order used for canonical serialization; names created
later (framing weights, γ symbols, residue variables) are appended in
first-use order.
"""
from __future__ import annotations

import os

from .errors import InputError

# ================= variables ==================
THETA = "theta"
EPSILON = "eps"
HBAR = "hbar"
Q1 = "q1"
Q2 = "q2"
BETA_BAR = "bbar"

DEFAULT_VARIABLES = (THETA, EPSILON, HBAR, Q1, Q2, BETA_BAR)


def framing_variable(k: int) -> str:
    """Equivariant weight of the k-th framing line (1-based)."""
    return f"x{k}"


def gamma_variable(d: int) -> str:
    """Free symbol standing for γ_d in symbolic γ-series."""
    return f"g{d}"


# ================= vertices ==================
FRAMING_VERTEX = "inf"
SHARP_SUFFIX = "'"


def flag_vertex(zero: str, k: int) -> str:
    """Name of the k-th chain vertex (0,k) attached by the enhancement."""
    return f"{zero}~{k}"


# ================= parameter search ==================
MAX_DENOM_ENV = "WC_MAX_DENOM"
DEFAULT_MAX_DENOM = 10**6
SEARCH_ROUNDS = 3
ZETA_BAR_ATTEMPTS = 64


def max_denominator() -> int:
    """Denominator cap for the parameter search, honouring ``WC_MAX_DENOM``."""
    raw = os.environ.get(MAX_DENOM_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_DENOM
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{MAX_DENOM_ENV} must be a positive integer, got {raw!r}") from None
    if value <= 0:
        raise InputError(f"{MAX_DENOM_ENV} must be a positive integer, got {value}")
    return value


__all__ = [
    "THETA",
    "EPSILON",
    "HBAR",
    "Q1",
    "Q2",
    "BETA_BAR",
    "DEFAULT_VARIABLES",
    "framing_variable",
    "gamma_variable",
    "FRAMING_VERTEX",
    "SHARP_SUFFIX",
    "flag_vertex",
    "MAX_DENOM_ENV",
    "DEFAULT_MAX_DENOM",
    "SEARCH_ROUNDS",
    "ZETA_BAR_ATTEMPTS",
    "max_denominator",
]
