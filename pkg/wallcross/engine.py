"""Wall-crossing coefficients, the ℓ-recursion and the γ-series.

The coefficient attached to a decomposition datum 𝕴 is

    (|𝔨I_∞|!/α₀!) · ∏_i (d_iβ₀ − 1)! · γ_{d_i}(θ) · (s(𝔨I_i, 𝕴_{>i}) − β̄_∞ d_i)

and multiplies ∫_{M^{ζ⁻}(α − |d_𝕴|β)} Eu^θ(Λ_Q(𝒱)). Coefficients are
assembled in this θ-free form only.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import comb, factorial
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .constants import BETA_BAR, EPSILON, THETA, gamma_variable
from .decomposition import (
    DecompositionDatum,
    IndexSet,
    all_dec_sets,
    dec_ell,
    partial_decompositions,
    s_statistic,
)
from .errors import InputError, MissingGammaError
from .quiver.structures import DimVector, FramedQuiver
from .quiver.walls import WallCrossingContext
from .symbolic import ONE, ZERO, RationalFunction, pochhammer

logger = logging.getLogger(__name__)

BetaBar = Union[int, RationalFunction]


# ====== γ-series ======

class GammaSeries:
    """γ_d(θ) for d ≥ 0 with γ₀ = 1.

    ``mode`` is one of ``symbolic``, ``handsaw``, ``table`` or ``localization``.
    A series has either a fixed table of values or a generator computing
    γ_d on demand.
    """

    def __init__(
        self,
        mode: str,
        values: Optional[Mapping[int, RationalFunction]] = None,
        generator: Optional[Callable[[int], RationalFunction]] = None,
    ) -> None:
        self.mode = mode
        self._values: Dict[int, RationalFunction] = {0: ONE}
        for d, value in (values or {}).items():
            if d < 0:
                raise InputError(f"gamma index must be non-negative, got {d}")
            value = RationalFunction.coerce(value)
            if d == 0 and value != ONE:
                raise InputError(f"gamma_0 must be 1, got {value}")
            self._values[d] = value
        self._generator = generator

    @classmethod
    def symbolic(cls) -> "GammaSeries":
        """γ_d as the free variable ``g<d>``."""
        return cls("symbolic", generator=lambda d: RationalFunction.variable(gamma_variable(d)))

    @classmethod
    def handsaw(cls) -> "GammaSeries":
        """A₁ handsaw with framing (1, 0): γ_d = (θ/ε + 1)_d / d!."""
        base = RationalFunction.variable(THETA) / RationalFunction.variable(EPSILON) + 1
        return cls("handsaw", generator=lambda d: pochhammer(base, d) / factorial(d))

    @classmethod
    def from_table(cls, path: Union[str, Path]) -> "GammaSeries":
        """Read ``d<TAB>ratfun`` lines; blank lines and ``#`` comments are skipped."""
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"Cannot read gamma table {path}: {exc}") from exc
        return cls.parse_table(text)

    @classmethod
    def parse_table(cls, text: str) -> "GammaSeries":
        values: Dict[int, RationalFunction] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, expr = line.partition("\t")
            if not sep:
                key, _, expr = line.partition(" ")
            try:
                d = int(key)
            except ValueError:
                raise InputError(f"gamma table line {lineno}: bad index {key!r}") from None
            if d in values:
                raise InputError(f"gamma table line {lineno}: duplicate entry for d={d}")
            values[d] = RationalFunction.parse(expr.strip())
        return cls("table", values)

    @classmethod
    def localization(cls, quiver: FramedQuiver, zero: str, max_d: int) -> "GammaSeries":
        """γ_d = ∫_{H_Q(dβ)} Eu^θ(Λ_{Q♯}) computed by fixed-point localization."""
        from .localization import gamma_by_localization

        return cls("localization", gamma_by_localization(quiver, zero, max_d))

    def get(self, d: int) -> RationalFunction:
        if d in self._values:
            return self._values[d]
        if d < 0 or self._generator is None:
            raise MissingGammaError(f"gamma_{d} is not available in the {self.mode} series")
        value = self._generator(d)
        self._values[d] = value
        return value

    def to_table(self, max_d: int) -> str:
        return "".join(f"{d}\t{self.get(d).to_text()}\n" for d in range(1, max_d + 1))


# ====== wall-crossing terms ======

@dataclass(frozen=True)
class WallCrossTerm:
    datum: DecompositionDatum
    coefficient: RationalFunction
    target: Optional[DimVector]

    @property
    def k(self) -> int:
        return self.datum.k

    def to_text(self) -> str:
        return f"{self.datum.to_text()}\t{self.k}\t{self.coefficient.to_text()}"


def _beta_bar(ctx: WallCrossingContext, symbolic_bbar: bool) -> BetaBar:
    return RationalFunction.variable(BETA_BAR) if symbolic_bbar else ctx.beta_bar


def datum_coefficient(datum: DecompositionDatum, gamma: GammaSeries, beta_bar: BetaBar) -> RationalFunction:
    """(|𝔨I_∞|!/α₀!) ∏ (d_iβ₀−1)! γ_{d_i} (s(𝔨I_i, 𝕴_{>i}) − β̄_∞ d_i)."""
    out = RationalFunction.constant(factorial(len(datum.infinity))) / factorial(datum.alpha0)
    for i, (part, d) in enumerate(zip(datum.parts, datum.d)):
        factor = RationalFunction.coerce(s_statistic(part, datum.tail(i))) - RationalFunction.coerce(beta_bar) * d
        out = out * factorial(len(part) - 1) * gamma.get(d) * factor
    return out


def wall_cross_terms(
    ctx: WallCrossingContext, gamma: GammaSeries, symbolic_bbar: bool = False
) -> List[WallCrossTerm]:
    """One term per 𝕴 ∈ Dec(α₀); the k = 0 group is empty."""
    beta_bar = _beta_bar(ctx, symbolic_bbar)
    terms = []
    for datum in all_dec_sets(ctx.alpha0, ctx.beta0):
        coefficient = datum_coefficient(datum, gamma, beta_bar)
        terms.append(WallCrossTerm(datum, coefficient, ctx.alpha.minus(ctx.beta.scale(datum.k))))
    logger.debug("wall %s: %d decomposition terms", ctx.wall, len(terms))
    return terms


def group_by_k(terms: Iterable[WallCrossTerm]) -> Dict[int, RationalFunction]:
    grouped: Dict[int, RationalFunction] = {}
    for term in terms:
        grouped[term.k] = grouped.get(term.k, ZERO) + term.coefficient
    return dict(sorted(grouped.items()))


def wall_cross_total(
    terms: Iterable[WallCrossTerm], integral: Callable[[DimVector], RationalFunction]
) -> RationalFunction:
    """∑_k c_k ∫_{M^{ζ⁻}(α−kβ)}; targets that are not effective contribute 0."""
    cache: Dict[DimVector, RationalFunction] = {}
    total = ZERO
    for term in terms:
        if term.target is None or term.coefficient.is_zero():
            continue
        if term.target not in cache:
            cache[term.target] = RationalFunction.coerce(integral(term.target))
        total = total + term.coefficient * cache[term.target]
    return total


# ====== ℓ-recursion ======

@dataclass(frozen=True)
class RecursionStep:
    coefficient: RationalFunction
    ell: int
    sharp: IndexSet
    flat: IndexSet
    alpha: Optional[DimVector]


def _steps(
    ctx: WallCrossingContext,
    ell: int,
    index_set: IndexSet,
    gamma: GammaSeries,
    alpha: Optional[DimVector],
    beta_bar: BetaBar,
) -> List[RecursionStep]:
    beta0 = ctx.beta0
    norm = factorial(len(index_set))
    out = []
    for sharp in dec_ell(ell, index_set, beta0):
        flat = tuple(i for i in index_set if i not in sharp)
        d = len(sharp) // beta0
        factor = RationalFunction.coerce(s_statistic(sharp, flat)) - RationalFunction.coerce(beta_bar) * d
        coefficient = (
            RationalFunction.constant(factorial(len(flat)) * factorial(len(sharp) - 1)) / norm
        ) * gamma.get(d) * factor
        target = alpha.minus(ctx.beta.scale(d)) if alpha is not None else None
        out.append(RecursionStep(coefficient, sharp[0] - 1, sharp, flat, target))
    return out


def recursion_step(
    ctx: WallCrossingContext,
    ell: int,
    index_set: Iterable[int],
    gamma: GammaSeries,
    alpha: Optional[DimVector] = None,
    symbolic_bbar: bool = False,
) -> List[RecursionStep]:
    """One application of the ℓ-recursion.

    For every 𝔨I♯ ∈ D^ℓ(𝔨I) this yields the coefficient
    (|𝔨I♭|!(|𝔨I♯|−1)!/|𝔨I|!) γ_{d♯} (s(𝔨I♯, 𝔨I♭) − β̄_∞ d♯), the next level
    ℓ′ = min(𝔨I♯) − 1, the remaining set 𝔨I♭ and the dimension α − d♯β.
    """
    index = tuple(sorted(index_set))
    if ell not in index:
        raise InputError(f"ell = {ell} is not in the index set {list(index)}")
    alpha = ctx.alpha if alpha is None else alpha
    return _steps(ctx, ell, index, gamma, alpha, _beta_bar(ctx, symbolic_bbar))


def iterate_recursion(
    ctx: WallCrossingContext,
    gamma: GammaSeries,
    index_set: Optional[Iterable[int]] = None,
    symbolic_bbar: bool = False,
) -> Dict[Tuple[IndexSet, ...], RationalFunction]:
    """Unfold the recursion from ℓ = max 𝔨I down to terminals.

    Every path 𝔨I♯₁, 𝔨I♯₂, … is a decomposition datum; the result maps its
    parts to the accumulated product of step coefficients.
    """
    index = tuple(sorted(index_set)) if index_set is not None else tuple(range(1, ctx.alpha0 + 1))
    beta_bar = _beta_bar(ctx, symbolic_bbar)
    out: Dict[Tuple[IndexSet, ...], RationalFunction] = {}
    if not index:
        return out
    frontier: List[Tuple[Tuple[IndexSet, ...], RationalFunction, int, IndexSet]] = [((), ONE, index[-1], index)]
    while frontier:
        parts, acc, ell, current = frontier.pop()
        for step in _steps(ctx, ell, current, gamma, None, beta_bar):
            path = parts + (step.sharp,)
            value = acc * step.coefficient
            out[path] = out.get(path, ZERO) + value
            if step.flat and step.ell >= 1:
                frontier.append((path, value, step.ell, step.flat))
    return out


# ====== identities ======

def _one_arrow_terms(
    d: int, beta0: int, gamma: GammaSeries, proper: bool
) -> RationalFunction:
    n = d * beta0
    total = ZERO
    universe = tuple(range(1, n + 1))
    for sharp in dec_ell(1, universe, beta0):
        if proper and len(sharp) == n:
            continue
        flat = tuple(i for i in universe if i not in sharp)
        d_sharp = len(sharp) // beta0
        weight = RationalFunction.constant(factorial(len(flat)) * factorial(len(sharp) - 1)) / factorial(n)
        factor = beta0 * d_sharp - s_statistic(sharp, flat)
        total = total + weight * factor * gamma.get(d_sharp) * gamma.get(d - d_sharp)
    return total


def gamma_consistency(gamma: GammaSeries, d: int, beta0: int = 1) -> RationalFunction:
    """γ_d − ∑_{1∈𝔨I♯⊆[dβ₀]} (|𝔨I♭|!(|𝔨I♯|−1)!/(dβ₀)!)(β₀d♯ − s(𝔨I♯,𝔨I♭)) γ_{d♯}γ_{d−d♯}."""
    if d < 1 or beta0 < 1:
        raise InputError(f"Need d >= 1 and beta_0 >= 1, got {d}, {beta0}")
    return gamma.get(d) - _one_arrow_terms(d, beta0, gamma, proper=False)


def proper_subset_vanishing(d: int, beta0: int, gamma: GammaSeries) -> RationalFunction:
    """The same sum restricted to proper subsets 1 ∈ 𝔨I♯ ⊊ [dβ₀]."""
    if d < 2:
        raise InputError(f"proper_subset_vanishing needs d >= 2, got {d}")
    if beta0 < 1:
        raise InputError(f"beta_0 must be positive, got {beta0}")
    return _one_arrow_terms(d, beta0, gamma, proper=True)


def s_partition_vanishing(d: Sequence[int], n: int, beta0: int = 1) -> int:
    """∑ ∏_i s(𝔨I_i, 𝔨I_∞ ⊔ ⨆_{m>i} 𝔨I_m) over parts of [n] with |𝔨I_i| = d_iβ₀.

    Parts are ordered by decreasing maxima (see ``partial_decompositions``).
    The sum is zero for j = 1 and whenever the parts cover [n]; with a
    leftover and j >= 2 it need not be, e.g. d = (1,2), n = 4 gives -2.
    """
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    if not d:
        raise InputError("d must have at least one entry")
    universe = frozenset(range(1, n + 1))
    total = 0
    for parts in partial_decompositions(d, n, beta0):
        tail = set(universe.difference(*parts))
        product = 1
        for part in reversed(parts):
            product *= s_statistic(part, tail)
            if product == 0:
                break
            tail.update(part)
        total += product
    return total


def one_arrow_recursion(alpha0: int, beta0: int, gamma: GammaSeries) -> List[RationalFunction]:
    """a_{kβ} for k = 0..⌊α₀/β₀⌋ from a₀ = 1 and the one-arrow recursion.

    a_{kβ} = ∑_{1∈𝔨I♯⊆[kβ₀]} (|𝔨I♭|!(|𝔨I♯|−1)!/(kβ₀)!) γ_{d♯} (β₀d♯ − s(𝔨I♯,𝔨I♭)) a_{(k−d♯)β}
    """
    if alpha0 < 0 or beta0 < 1:
        raise InputError(f"Need alpha_0 >= 0 and beta_0 >= 1, got {alpha0}, {beta0}")
    values = [ONE]
    for k in range(1, alpha0 // beta0 + 1):
        n = k * beta0
        universe = tuple(range(1, n + 1))
        total = ZERO
        for sharp in dec_ell(1, universe, beta0):
            flat = tuple(i for i in universe if i not in sharp)
            d_sharp = len(sharp) // beta0
            weight = RationalFunction.constant(factorial(len(flat)) * factorial(len(sharp) - 1)) / factorial(n)
            factor = beta0 * d_sharp - s_statistic(sharp, flat)
            total = total + weight * factor * gamma.get(d_sharp) * values[k - d_sharp]
        values.append(total)
    return values


@dataclass(frozen=True)
class ExperimentReport:
    lhs: RationalFunction
    rhs: RationalFunction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def _a_datum(datum: DecompositionDatum, gamma: GammaSeries, beta_bar: BetaBar) -> RationalFunction:
    out = ONE
    for i, (part, d) in enumerate(zip(datum.parts, datum.d)):
        factor = RationalFunction.coerce(s_statistic(part, datum.tail(i))) - RationalFunction.coerce(beta_bar) * d
        out = out * factor * factorial(len(part) - 1) * gamma.get(d)
    return out


def a_total(n: int, beta0: int, gamma: GammaSeries, beta_bar: BetaBar) -> RationalFunction:
    """A_n: the sum of a_𝕴 over data covering [n]; A₀ = 1."""
    if n == 0:
        return ONE
    return sum(
        (_a_datum(x, gamma, beta_bar) for x in all_dec_sets(n, beta0) if not x.infinity),
        ZERO,
    )


def binomial_question_experiment(
    alpha0: int,
    beta0: int,
    i: int,
    gamma: GammaSeries,
    beta_bar: Optional[BetaBar] = None,
) -> ExperimentReport:
    """Compare ∑_{𝕴∈Dec(i,α₀)} a_𝕴 with binom(α₀, i)·A_{α₀−i}.

    ``beta_bar`` defaults to the symbolic β̄_∞. Dec(α₀, α₀) is empty, so for
    i = α₀ the left side is taken as A₀ = 1. A mismatch is logged, never raised.
    """
    if not 0 <= i <= alpha0:
        raise InputError(f"Need 0 <= i <= alpha_0, got i={i}, alpha_0={alpha0}")
    if beta0 < 1:
        raise InputError(f"beta_0 must be positive, got {beta0}")
    bbar = RationalFunction.variable(BETA_BAR) if beta_bar is None else beta_bar
    if i == alpha0:
        lhs = ONE
    else:
        lhs = sum(
            (_a_datum(x, gamma, bbar) for x in all_dec_sets(alpha0, beta0) if len(x.infinity) == i),
            ZERO,
        )
    rhs = a_total(alpha0 - i, beta0, gamma, bbar) * comb(alpha0, i)
    report = ExperimentReport(lhs, rhs)
    if not report.equal:
        logger.warning(
            "binomial question differs for alpha_0=%d beta_0=%d i=%d: lhs=%s rhs=%s",
            alpha0, beta0, i, lhs.to_text(), rhs.to_text(),
        )
    return report


__all__ = [
    "GammaSeries",
    "WallCrossTerm",
    "datum_coefficient",
    "wall_cross_terms",
    "group_by_k",
    "wall_cross_total",
    "RecursionStep",
    "recursion_step",
    "iterate_recursion",
    "gamma_consistency",
    "proper_subset_vanishing",
    "s_partition_vanishing",
    "one_arrow_recursion",
    "ExperimentReport",
    "a_total",
    "binomial_question_experiment",
]
