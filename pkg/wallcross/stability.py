"""Refined stability parameters at the level of dimension vectors.

A pair (ζ, η) on the enhanced quiver Q̃ defines the slope

    μ(S̃) = (∑_{v∈Q₀} ζ_v dim S_v + ∑_k η_k dim S̃_(0,k)) / (dim S_∞ + ∑_i dim S_i)

and the predicates below decide the parameter conditions used to cross a
wall: ``cond_a``, ``cond_b``, ``two_stability`` and ``cond_c``.
:func:`find_parameters` constructs a certified triple (ζ⁺, ζ⁻, η).
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import constants
from .errors import InputError, ParameterSearchError
from .quiver.structures import DimVector, FramedQuiver
from .quiver.walls import StabilityParam, Wall, WallCrossingContext, classify_parameter

logger = logging.getLogger(__name__)


# ====== types ======

@dataclass(frozen=True)
class SlopeParams:
    zeta: StabilityParam
    eta: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta", tuple(Fraction(e) for e in self.eta))
        for k, e in enumerate(self.eta, start=1):
            if e <= 0:
                raise InputError(f"eta_{k} must be positive, got {e}")

    def eta_at(self, k: int) -> Fraction:
        """η_k with the convention η₀ = 0."""
        return Fraction(0) if k == 0 else self.eta[k - 1]


@dataclass(frozen=True)
class EnhancedDim:
    """Dimension vector of Ṽ: the base α plus the flag dimensions dim Ṽ_(0,k)."""

    base: DimVector
    zero: str
    flags: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.zero not in self.base.vertices:
            raise InputError(f"Zero vertex {self.zero!r} not in {self.base}")
        previous = 0
        for k, f in enumerate(self.flags, start=1):
            if f - previous not in (0, 1):
                raise InputError(f"Flag dimensions must grow by 0 or 1, step {k} gives {previous}->{f}")
            previous = f
        if previous != self.base[self.zero]:
            raise InputError(f"Flag dimensions end at {previous}, expected alpha_0 = {self.base[self.zero]}")

    @classmethod
    def from_index_set(cls, base: DimVector, zero: str, length: int, index_set: Sequence[int]) -> "EnhancedDim":
        chosen = set(index_set)
        if not chosen <= set(range(1, length + 1)):
            raise InputError(f"Index set {sorted(chosen)} is not inside [1, {length}]")
        flags, dim = [], 0
        for k in range(1, length + 1):
            dim += k in chosen
            flags.append(dim)
        return cls(base, zero, tuple(flags))

    @classmethod
    def full(cls, base: DimVector, zero: str) -> "EnhancedDim":
        """L = α₀ with every step of size one (𝔨I = [α₀])."""
        a0 = base[zero]
        return cls(base, zero, tuple(range(1, a0 + 1)))

    @property
    def length(self) -> int:
        return len(self.flags)

    @property
    def index_set(self) -> Tuple[int, ...]:
        """𝔨I = {k : dim Ṽ_(0,k) − dim Ṽ_(0,k−1) = 1}."""
        out, previous = [], 0
        for k, f in enumerate(self.flags, start=1):
            if f > previous:
                out.append(k)
            previous = f
        return tuple(out)

    @property
    def dim_total(self) -> int:
        """dim V = dim V_∞ + ∑_i α_i with dim V_∞ = 1."""
        return 1 + self.base.total


@dataclass(frozen=True)
class SubDimension:
    """Dimension vector of a Q̃₀-graded subspace."""

    base: DimVector
    infinity: int
    flags: Tuple[int, ...]

    @property
    def total(self) -> int:
        return self.infinity + self.base.total


@dataclass(frozen=True)
class ThetaVector:
    """θ on Q̃₀: ``values`` covers I and the chain vertices, ``infinity`` is θ_∞."""

    values: Tuple[Tuple[str, Fraction], ...]
    infinity: Fraction

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.values)

    def pairing(self, sub: SubDimension, zero: str) -> Fraction:
        theta = self.as_dict()
        total = self.infinity * sub.infinity
        total += sum((theta[v] * n for v, n in sub.base.entries), Fraction(0))
        total += sum(
            (theta[constants.flag_vertex(zero, k)] * s for k, s in enumerate(sub.flags, start=1)),
            Fraction(0),
        )
        return total


def full_subdimension(flag: EnhancedDim) -> SubDimension:
    return SubDimension(flag.base, 1, flag.flags)


def enumerate_subdimensions(flag: EnhancedDim) -> Iterator[SubDimension]:
    ranges = [range(n + 1) for _, n in flag.base.entries]
    for base in itertools.product(*ranges):
        dims = DimVector(tuple(zip(flag.base.vertices, base)))
        for s_inf in (0, 1):
            for flags in itertools.product(*(range(f + 1) for f in flag.flags)):
                yield SubDimension(dims, s_inf, tuple(flags))


# ====== slope and θ ======

def _flag_sum(params: SlopeParams, flags: Sequence[int]) -> Fraction:
    if len(flags) > len(params.eta):
        raise InputError(f"Need {len(flags)} eta values, got {len(params.eta)}")
    return sum((params.eta[k] * s for k, s in enumerate(flags)), Fraction(0))


def slope(params: SlopeParams, sub: SubDimension) -> Fraction:
    if sub.total <= 0:
        raise InputError("Slope of a subspace with zero Q_0-dimension")
    numerator = params.zeta.pairing(sub.base) + params.zeta.infinity * sub.infinity
    numerator += _flag_sum(params, sub.flags)
    return numerator / sub.total


def slope_determinant(params: SlopeParams, flag: EnhancedDim, sub: SubDimension) -> Fraction:
    """The 2×2 determinant whose sign compares μ(S̃) with μ(Ṽ)."""
    a = params.zeta.pairing(sub.base) + params.zeta.infinity * sub.infinity + _flag_sum(params, sub.flags)
    b = _flag_sum(params, flag.flags)
    return a * flag.dim_total - b * sub.total


def theta_vector(params: SlopeParams, flag: EnhancedDim) -> ThetaVector:
    dim_v = flag.dim_total
    energy = _flag_sum(params, flag.flags)
    values = [(v, params.zeta[v] * dim_v - energy) for v in flag.base.vertices]
    values += [
        (constants.flag_vertex(flag.zero, k), params.eta_at(k) * dim_v)
        for k in range(1, flag.length + 1)
    ]
    return ThetaVector(tuple(values), params.zeta.infinity * dim_v - energy)


# ====== predicates ======

def _sub_vectors(alpha: DimVector) -> Iterator[DimVector]:
    for values in itertools.product(*(range(n + 1) for _, n in alpha.entries)):
        dims = DimVector(tuple(zip(alpha.vertices, values)))
        if not dims.is_zero():
            yield dims


def cond_a(params: SlopeParams, zeta_bar: StabilityParam, flag: EnhancedDim) -> bool:
    """ζ̄(S) < 0 ⟹ μ(S) < μ(V) and ζ̄(S) > 0 ⟹ μ(S) > μ(V) for all I-graded S ≤ α."""
    mu_v = slope(params, full_subdimension(flag))
    zeros = (0,) * flag.length
    for dims in _sub_vectors(flag.base):
        sign = zeta_bar.pairing(dims)
        if sign == 0:
            continue
        mu_s = slope(params, SubDimension(dims, 0, zeros))
        if sign < 0 and not mu_s < mu_v:
            return False
        if sign > 0 and not mu_s > mu_v:
            return False
    return True


def cond_b(params: SlopeParams, wall: Wall, ell: int, flag: EnhancedDim) -> bool:
    if not 0 <= ell <= flag.length:
        raise InputError(f"ell = {ell} outside [0, {flag.length}]")
    dim_v = flag.dim_total
    c = params.zeta.pairing(wall.beta) / wall.beta.total
    energy = _flag_sum(params, flag.flags)
    tail = sum((params.eta_at(k) * flag.flags[k - 1] for k in range(ell + 1, flag.length + 1)), Fraction(0))
    middle = energy / dim_v
    return c + tail < middle < c + params.eta_at(ell) / dim_v


def _sum_counts(eta: Sequence[Fraction], bound: int) -> Counter:
    counts: Counter = Counter()
    for ls in itertools.product(range(-bound, bound + 1), repeat=len(eta)):
        counts[sum((e * l for e, l in zip(eta, ls)), Fraction(0))] += 1
    return counts


def two_stability(eta: Sequence[Fraction], alpha0: int, beta0: int, scaled: bool = False) -> bool:
    """Whether ∑ η_k l_k ≠ 0 for every nonzero integer l in the box |l_k| ≤ α₀.

    With ``scaled`` the box is widened to |l_k| ≤ α₀·(α₀/β₀)², which clears
    the 1/(mn) denominators of the rational lattice.
    """
    eta = [Fraction(e) for e in eta]
    if any(e <= 0 for e in eta):
        raise InputError("eta must be positive")
    if beta0 <= 0:
        raise InputError(f"beta_0 must be positive, got {beta0}")
    bound = alpha0
    if scaled:
        bound = alpha0 * max(1, alpha0 // beta0) ** 2
    if bound == 0 or not eta:
        return True
    half = len(eta) // 2
    left = _sum_counts(eta[:half], bound)
    right = _sum_counts(eta[half:], bound)
    # the zero vector is the one allowed solution
    solutions = sum(n * right.get(-s, 0) for s, n in left.items())
    return solutions == 1


def cond_c(params: SlopeParams, flag: EnhancedDim) -> bool:
    dim_v = flag.dim_total
    for m in range(1, flag.length + 1):
        tail = sum((params.eta_at(k) * flag.flags[k - 1] for k in range(m + 1, flag.length + 1)), Fraction(0))
        if not params.eta_at(m) > dim_v * tail:
            return False
    return True


# ====== constructive search ======

@dataclass(frozen=True)
class ParameterTriple:
    zeta_plus: StabilityParam
    zeta_minus: StabilityParam
    eta: Tuple[Fraction, ...]

    @property
    def plus(self) -> SlopeParams:
        return SlopeParams(self.zeta_plus, self.eta)

    @property
    def minus(self) -> SlopeParams:
        return SlopeParams(self.zeta_minus, self.eta)

    def max_denominator(self) -> int:
        values = [z for _, z in self.zeta_plus.values] + [z for _, z in self.zeta_minus.values]
        values += [self.zeta_plus.infinity, self.zeta_minus.infinity, *self.eta]
        return max(Fraction(v).denominator for v in values)

    def to_text(self) -> str:
        eta = ",".join(str(e) for e in self.eta)
        return f"zeta+ {self.zeta_plus}\nzeta- {self.zeta_minus}\neta {eta}"


@dataclass(frozen=True)
class Certificate:
    cond_a_plus: bool
    cond_a_minus: bool
    cond_b: bool
    two_stability: bool
    cond_c: bool

    @property
    def ok(self) -> bool:
        return not self.failures()

    def failures(self) -> List[str]:
        names = ("cond_a_plus", "cond_a_minus", "cond_b", "two_stability", "cond_c")
        return [n for n in names if not getattr(self, n)]


def certify(
    triple: ParameterTriple, wall: Wall, ell: int, flag: EnhancedDim, zeta_bar: StabilityParam
) -> Certificate:
    return Certificate(
        cond_a_plus=cond_a(triple.plus, zeta_bar, flag),
        cond_a_minus=cond_a(triple.minus, zeta_bar, flag),
        cond_b=cond_b(triple.plus, wall, ell, flag),
        two_stability=two_stability(triple.eta, flag.base[flag.zero], wall.beta[flag.zero]),
        cond_c=cond_c(triple.plus, flag),
    )


def _is_on_wall(zeta: StabilityParam, wall: Wall, alpha: DimVector) -> bool:
    if len(alpha.vertices) == 1:
        return wall.sign(zeta) == 0
    result = classify_parameter(zeta, alpha)
    return result.kind == "on-wall" and result.wall == wall


def default_zeta_bar(wall: Wall, alpha: DimVector) -> StabilityParam:
    """A deterministic ζ̄ lying on β⊥ and on no other wall."""
    vertices = alpha.vertices
    if len(vertices) == 1:
        return StabilityParam.normalized({vertices[0]: Fraction(0)}, alpha)
    norm = sum(n * n for _, n in wall.beta.entries)
    for attempt in range(1, constants.ZETA_BAR_ATTEMPTS + 1):
        raw = {v: Fraction((i + 1) ** 2 + attempt * (2 * i + 1) * (-1) ** i) for i, v in enumerate(vertices)}
        along = sum((raw[v] * n for v, n in wall.beta.entries), Fraction(0)) / norm
        zeta = StabilityParam.normalized({v: raw[v] - along * wall.beta[v] for v in vertices}, alpha)
        if _is_on_wall(zeta, wall, alpha):
            return zeta
    raise ParameterSearchError(f"No generic point found on the wall {wall}", "zeta_bar")


def _eta_ladder(flag: EnhancedDim, ratio: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(ratio) ** (flag.length - k) for k in range(1, flag.length + 1))


def find_parameters(
    wall: Wall,
    ell: int,
    flag: EnhancedDim,
    zeta_bar: Optional[StabilityParam] = None,
    max_denominator: Optional[int] = None,
) -> ParameterTriple:
    """Construct (ζ⁺ ∈ 𝒞′, ζ⁻ ∈ 𝒞, η) passing all four predicates.

    η is a geometric ladder η_k = R^{L−k}, which gives ``cond_c`` and
    ``two_stability``. The ratio ζ⁺(β)/∑β is the midpoint of the interval
    allowed by ``cond_b``; both ζ± = ζ̄ ± tδ and η are then scaled by
    t = 1, 1/2, 1/4, … until ``cond_a`` holds on both sides. The search stops
    when denominators exceed the cap; the cap doubles for each of
    ``SEARCH_ROUNDS`` rounds.

    Raises
    ------
    InputError
        ``ell`` is not in 𝔨I, or the wall does not fit α.
    ParameterSearchError
        No triple found; ``predicate`` names the condition that failed last.
    """
    alpha = flag.base
    zero = flag.zero
    if ell not in flag.index_set:
        raise InputError(f"ell = {ell} is not in the index set {list(flag.index_set)}")
    if not wall.beta <= alpha or wall.beta[zero] == 0:
        raise InputError(f"Wall {wall} must satisfy beta <= alpha and beta_0 != 0")
    if zeta_bar is None:
        zeta_bar = default_zeta_bar(wall, alpha)
    elif not _is_on_wall(zeta_bar, wall, alpha):
        raise InputError(f"zeta_bar = {zeta_bar} is not a generic point of the wall {wall}")
    cap = max_denominator if max_denominator is not None else constants.max_denominator()

    alpha0, beta0 = alpha[zero], wall.beta[zero]
    dim_v = flag.dim_total
    ratio = dim_v * alpha0 + 2
    ratio = max(ratio, 2 * alpha0 * max(1, alpha0 // beta0) ** 2 + 1)
    eta = _eta_ladder(flag, ratio)
    origin = StabilityParam.normalized({}, alpha)
    while not (two_stability(eta, alpha0, beta0) and cond_c(SlopeParams(origin, eta), flag)):
        ratio += 1
        eta = _eta_ladder(flag, ratio)
    logger.debug("eta ladder with ratio %d: %s", ratio, eta)

    energy = sum((e * f for e, f in zip(eta, flag.flags)), Fraction(0))
    eta_ell = Fraction(0) if ell == 0 else eta[ell - 1]
    tail = sum((eta[k - 1] * flag.flags[k - 1] for k in range(ell + 1, flag.length + 1)), Fraction(0))
    lower = max(Fraction(0), (energy - eta_ell) / dim_v)
    upper = energy / dim_v - tail
    if lower >= upper:
        raise ParameterSearchError(f"cond_b interval ({lower}, {upper}) is empty", "cond_b")
    c = (lower + upper) / 2

    norm = sum(n * n for _, n in wall.beta.entries)
    delta = StabilityParam.normalized(
        {v: c * wall.beta.total * wall.beta[v] / norm for v in alpha.vertices}, alpha
    )

    last_failure = "cond_a"
    for round_no in range(constants.SEARCH_ROUNDS):
        limit = cap * 2 ** round_no
        t = Fraction(1)
        while True:
            triple = ParameterTriple(
                zeta_bar.combine(delta, t), zeta_bar.combine(delta, -t), tuple(t * e for e in eta)
            )
            if triple.max_denominator() > limit:
                break
            generic = all(
                classify_parameter(z, alpha).kind == "generic"
                for z in (triple.zeta_plus, triple.zeta_minus)
            )
            if generic:
                report = certify(triple, wall, ell, flag, zeta_bar)
                if report.ok:
                    logger.debug("certified parameters at t=%s in round %d", t, round_no)
                    return triple
                last_failure = report.failures()[0]
            else:
                last_failure = "generic"
            t /= 2
        logger.debug("round %d exhausted at denominator cap %d", round_no, limit)
    raise ParameterSearchError(
        f"No parameters for wall {wall}, ell={ell} within denominator cap {cap}", last_failure
    )


def context_from_parameters(
    quiver: FramedQuiver, flag: EnhancedDim, wall: Wall, triple: ParameterTriple
) -> WallCrossingContext:
    """Wall-crossing context with integer θ± obtained by clearing denominators."""
    theta_plus = theta_vector(triple.plus, flag).as_dict()
    theta_minus = theta_vector(triple.minus, flag).as_dict()
    internal = flag.base.vertices
    scale = 1
    for theta in (theta_plus, theta_minus):
        for v in internal:
            scale = lcm(scale, theta[v].denominator)
    return WallCrossingContext.build(
        quiver,
        flag.base,
        wall,
        flag.zero,
        theta_plus={v: int(theta_plus[v] * scale) for v in internal},
        theta_minus={v: int(theta_minus[v] * scale) for v in internal},
    )


def wall_crossing_context(
    quiver: FramedQuiver,
    alpha: DimVector,
    beta: DimVector,
    zero: Optional[str] = None,
    parameters: Optional[ParameterTriple] = None,
) -> WallCrossingContext:
    """Context for crossing β⊥; θ± and D are filled in when ``parameters`` is given."""
    wall = Wall(beta)
    if parameters is None:
        return WallCrossingContext.build(quiver, alpha, wall, zero)
    if zero is None:
        zero = next((v for v in alpha.vertices if beta[v] != 0), None)
        if zero is None:
            raise InputError(f"beta {beta} has no nonzero entry")
    return context_from_parameters(quiver, EnhancedDim.full(alpha, zero), wall, parameters)


__all__ = [
    "SlopeParams",
    "EnhancedDim",
    "SubDimension",
    "ThetaVector",
    "full_subdimension",
    "enumerate_subdimensions",
    "slope",
    "slope_determinant",
    "theta_vector",
    "cond_a",
    "cond_b",
    "two_stability",
    "cond_c",
    "ParameterTriple",
    "Certificate",
    "certify",
    "default_zeta_bar",
    "find_parameters",
    "context_from_parameters",
    "wall_crossing_context",
]
