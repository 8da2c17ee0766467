"""Equivariant integration by fixed-point localization.

A :class:`FixedPointModel` lists isolated torus-fixed points; each carries
its tangent weights ``T`` and the weights of named tautological bundles.
Integration is the Atiyah–Bott sum

    ∫_M Eu^θ(E) = ∑_p Eu^θ(E|_p) / Eu(T_p M).
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .constants import framing_variable
from .errors import InputError
from .quiver.builders import single_vertex
from .quiver.derived import sharp_quiver
from .quiver.structures import DimVector, FramedQuiver
from .quiver.walls import Wall, WallCrossingContext
from .symbolic import ONE, ZERO, ZERO_WEIGHT, KClass, RationalFunction, WeightForm, euler_plain, euler_theta

logger = logging.getLogger(__name__)

Weights = Tuple[WeightForm, ...]
Integrand = Callable[["FixedPoint"], KClass]


@dataclass(frozen=True)
class FixedPoint:
    label: str
    tangent: Weights
    bundles: Tuple[Tuple[str, Weights], ...] = ()

    def bundle(self, name: str) -> Weights:
        if name == "T":
            return self.tangent
        if name.endswith("*"):
            return tuple(-w for w in self.bundle(name[:-1]))
        for key, weights in self.bundles:
            if key == name:
                return weights
        known = ["T"] + [k for k, _ in self.bundles]
        raise InputError(f"Unknown bundle {name!r}; fixed point {self.label} has {known}")


@dataclass(frozen=True)
class FixedPointModel:
    name: str
    points: Tuple[FixedPoint, ...] = field(default_factory=tuple)

    @property
    def dimension(self) -> Optional[int]:
        return len(self.points[0].tangent) if self.points else None

    def __len__(self) -> int:
        return len(self.points)


# ====== models ======

def _x(i: int) -> WeightForm:
    return WeightForm.of(framing_variable(i))


def point_model() -> FixedPointModel:
    return FixedPointModel("point", (FixedPoint("pt", ()),))


def grassmannian_model(k: int, n: int) -> FixedPointModel:
    """Gr(k, n) of k-dimensional subspaces of ℂⁿ with torus weights x₁,…,xₙ.

    At the point S ⊂ [n]: V = {x_s}_{s∈S}, Q = {x_t}_{t∉S} and
    T = Hom(V, Q) = {x_t − x_s}. The model is empty unless 0 ≤ k ≤ n.
    """
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    points = []
    if 0 <= k <= n:
        for subset in itertools.combinations(range(1, n + 1), k):
            rest = [t for t in range(1, n + 1) if t not in subset]
            tangent = tuple(_x(t) - _x(s) for s in subset for t in rest)
            bundles = (
                ("V", tuple(_x(s) for s in subset)),
                ("Q", tuple(_x(t) for t in rest)),
            )
            label = "{" + ",".join(str(s) for s in subset) + "}"
            points.append(FixedPoint(label, tangent, bundles))
    logger.debug("Gr(%d,%d): %d fixed points", k, n, len(points))
    return FixedPointModel(f"Gr({k},{n})", tuple(points))


def flag_model(n: int, dims: Sequence[int]) -> FixedPointModel:
    """Partial flags F₁ ⊂ ⋯ ⊂ F_s ⊂ ℂⁿ with dim F_a = dims[a].

    T = ∑_a Hom(F_a/F_{a−1}, ℂⁿ/F_a); bundles ``F1``…``Fs``, ``V`` = F_s and
    ``Q`` = ℂⁿ/F_s.
    """
    dims = list(dims)
    if any(b <= a for a, b in zip(dims, dims[1:])) or (dims and (dims[0] < 0 or dims[-1] > n)):
        raise InputError(f"Flag dimensions {dims} must be strictly increasing within [0, {n}]")
    universe = tuple(range(1, n + 1))
    points = []

    def chains(prefix: Tuple[Tuple[int, ...], ...], used: Tuple[int, ...], level: int):
        if level == len(dims):
            yield prefix
            return
        free = [i for i in universe if i not in used]
        grow = dims[level] - len(used)
        for extra in itertools.combinations(free, grow):
            step = tuple(sorted(used + extra))
            yield from chains(prefix + (step,), step, level + 1)

    for chain in chains((), (), 0):
        tangent: List[WeightForm] = []
        previous: Tuple[int, ...] = ()
        for step in chain:
            outside = [t for t in universe if t not in step]
            tangent += [_x(t) - _x(s) for s in step if s not in previous for t in outside]
            previous = step
        top = chain[-1] if chain else ()
        bundles = tuple((f"F{a}", tuple(_x(s) for s in step)) for a, step in enumerate(chain, start=1))
        bundles += (
            ("V", tuple(_x(s) for s in top)),
            ("Q", tuple(_x(t) for t in universe if t not in top)),
        )
        label = "<".join("{" + ",".join(map(str, step)) + "}" for step in chain)
        points.append(FixedPoint(label, tuple(tangent), bundles))
    logger.debug("Fl(%s; %d): %d fixed points", dims, n, len(points))
    return FixedPointModel(f"Fl({','.join(map(str, dims))};{n})", tuple(points))


def model_from_text(text: str) -> FixedPointModel:
    """``point``, ``grassmannian:K,N`` or ``flag:N:D1,D2,...``."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "point" and not rest:
            return point_model()
        if kind == "grassmannian":
            k, n = (int(p) for p in rest.split(","))
            return grassmannian_model(k, n)
        if kind == "flag":
            n, _, dims = rest.partition(":")
            return flag_model(int(n), [int(p) for p in dims.split(",") if p.strip()])
    except ValueError:
        raise InputError(f"Malformed model {text!r}") from None
    raise InputError(f"Unknown model {text!r}; use point, grassmannian:K,N or flag:N:D1,...")


# ====== integrands ======

_TOKEN = re.compile(r"\s*([+-])?\s*([A-Za-z][A-Za-z0-9]*\*?)\s*")


def integrand_from_text(text: str) -> Integrand:
    """Formal sum of bundle names such as ``"T+V-Q*"``."""
    terms: List[Tuple[int, str]] = []
    pos = 0
    text = text.strip()
    if not text:
        raise InputError("Empty integrand")
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match or (terms and match.group(1) is None):
            raise InputError(f"Cannot parse integrand {text!r} at position {pos}")
        sign = -1 if match.group(1) == "-" else 1
        terms.append((sign, match.group(2)))
        pos = match.end()

    def integrand(point: FixedPoint) -> KClass:
        out = KClass()
        for sign, name in terms:
            piece = KClass(point.bundle(name))
            out = out + (piece if sign > 0 else -piece)
        return out

    return integrand


def ab_integrate(model: FixedPointModel, integrand: Integrand, twisted: bool = True) -> RationalFunction:
    """∑_p Eu(E|_p)/Eu(T_p); Eu is θ-twisted unless ``twisted`` is false."""
    euler = euler_theta if twisted else euler_plain
    total = ZERO
    for point in model.points:
        total = total + euler(integrand(point)) / euler_plain(KClass(point.tangent))
    return total


def _hom(source: Weights, target: Weights, weight: WeightForm) -> Weights:
    return tuple(b - a + weight for a in source for b in target)


def lambda_class(
    quiver: FramedQuiver,
    spaces: Mapping[str, Optional[Weights]],
    framing: Optional[Weights] = None,
) -> KClass:
    """Λ_Q(𝒱) = ∑_a Hom(𝒱_out, 𝒱_in) − ∑_l Hom(𝒱_out, 𝒱_in) − ∑_i End(𝒱_i).

    ``spaces`` gives the weights of 𝒱_i at every internal vertex (``None`` is
    the zero space); the framing space defaults to one trivial line.
    """
    missing = [v for v in quiver.internal_vertices if v not in spaces]
    if missing:
        raise InputError(f"No space assigned to vertices {missing}")
    framing = (ZERO_WEIGHT,) if framing is None else tuple(framing)

    def space(v: str) -> Weights:
        if v == quiver.framing:
            return framing
        return tuple(spaces[v] or ())

    plus: List[WeightForm] = []
    minus: List[WeightForm] = []
    for a in quiver.arrows:
        plus.extend(_hom(space(a.source), space(a.target), a.weight))
    for rel in quiver.relations:
        src, dst = quiver.relation_endpoints(rel)
        minus.extend(_hom(space(src), space(dst), rel.weight))
    for v in quiver.internal_vertices:
        minus.extend(_hom(space(v), space(v), ZERO_WEIGHT))
    return KClass(tuple(plus), tuple(minus))


def lambda_integrand(
    quiver: FramedQuiver,
    assignment: Mapping[str, Optional[str]],
    framing: Optional[Weights] = None,
) -> Integrand:
    """Per-point Λ_Q with each internal vertex mapped to a bundle name of the model."""
    missing = [v for v in quiver.internal_vertices if v not in assignment]
    if missing:
        raise InputError(f"No bundle assigned to vertices {missing}")

    def integrand(point: FixedPoint) -> KClass:
        spaces = {v: (point.bundle(name) if name is not None else None) for v, name in assignment.items()}
        return lambda_class(quiver, spaces, framing)

    return integrand


# ====== destabilizing moduli ======

def _is_single_vertex(quiver: FramedQuiver, zero: str) -> bool:
    if quiver.internal_vertices != (zero,) or quiver.relations:
        return False
    return all(a.source == quiver.framing and a.target == zero for a in quiver.arrows)


def sharp_generates(quiver: FramedQuiver, zero: str, d: int) -> bool:
    """Whether a dβ-dimensional Q♯-representation is generated from ∞′.

    Decided for the single-vertex family only: with no internal arrows the
    image of ∞′ spans at most a line.
    """
    if d < 0:
        raise InputError(f"d must be non-negative, got {d}")
    if not _is_single_vertex(quiver, zero):
        raise NotImplementedError("H_Q(d beta) is only modelled for the single-vertex quiver")
    return d <= 1


def destabilizing_model(quiver: FramedQuiver, zero: str, d: int) -> FixedPointModel:
    """Fixed points of H_Q(dβ): a point for d = 1, empty for d ≥ 2.

    The point has V = {0}, the weight of ∞′ transported along the new arrow.
    """
    if d < 1:
        raise InputError(f"d must be positive, got {d}")
    if not sharp_generates(quiver, zero, d):
        return FixedPointModel(f"H({d})")
    return FixedPointModel(f"H({d})", (FixedPoint("pt", (), (("V", (ZERO_WEIGHT,) * d),)),))


def gamma_by_localization(quiver: FramedQuiver, zero: str, max_d: int) -> Dict[int, RationalFunction]:
    """γ_d(θ) = ∫_{H_Q(dβ)} Eu^θ(Λ_{Q♯}(𝒱♯ ⊕ 𝒱♯_{∞′})) for 1 ≤ d ≤ max_d."""
    sharp = sharp_quiver(quiver, zero)
    values = {}
    for d in range(1, max_d + 1):
        model = destabilizing_model(quiver, zero, d)

        def integrand(point: FixedPoint) -> KClass:
            return lambda_class(sharp, {zero: point.bundle("V"), quiver.framing: None})

        values[d] = ab_integrate(model, integrand)
        logger.debug("gamma_%d = %s from %d fixed points", d, values[d].to_text(), len(model))
    return values


# ====== adjoint experiment ======

@dataclass(frozen=True)
class AdjointReport:
    lhs: RationalFunction
    rhs: RationalFunction
    grouped: Tuple[Tuple[int, RationalFunction], ...]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def single_vertex_integral(quiver: FramedQuiver, r: int, m: int) -> RationalFunction:
    """∫_{M^{ζ⁻}(m)} Eu^θ(Λ_Q) with M^{ζ⁻}(m) the Grassmannian of m-dimensional quotients of ℂ^r."""
    if m > r:
        return ZERO
    model = grassmannian_model(r - m, r)
    return ab_integrate(model, lambda_integrand(quiver, {"0": "Q"}))


def adjoint_experiment(r: int, alpha0: int, gamma=None) -> AdjointReport:
    """Check the wall-crossing formula on the single-vertex quiver with ``r`` arrows.

    On the ζ⁺ side M(α₀) is a point for α₀ = 0 and empty otherwise; on the ζ⁻
    side it is the Grassmannian of α₀-dimensional quotients of ℂ^r. The left
    side is ∫_{M⁺} − ∫_{M⁻}, the right side the assembled correction.
    """
    from .engine import GammaSeries, group_by_k, wall_cross_terms, wall_cross_total

    if not 0 <= alpha0 <= r:
        raise InputError(f"Need 0 <= alpha_0 <= r, got alpha_0={alpha0}, r={r}")
    quiver = single_vertex(r)
    alpha = DimVector((("0", alpha0),))
    wall = Wall(DimVector((("0", 1),)))
    plus_side = ONE if alpha0 == 0 else ZERO
    lhs = plus_side - single_vertex_integral(quiver, r, alpha0)
    # no wall below alpha_0 = 0
    terms = []
    if alpha0 > 0:
        ctx = WallCrossingContext.build(quiver, alpha, wall, "0")
        if gamma is None:
            gamma = GammaSeries.localization(quiver, "0", alpha0)
        terms = wall_cross_terms(ctx, gamma)
    rhs = wall_cross_total(terms, lambda target: single_vertex_integral(quiver, r, target["0"]))
    report = AdjointReport(lhs, rhs, tuple(group_by_k(terms).items()))
    if not report.equal:
        logger.warning("adjoint check failed for r=%d alpha_0=%d: lhs=%s rhs=%s", r, alpha0, lhs.to_text(), rhs.to_text())
    return report


def one_arrow_model_check(alpha0: int, gamma=None) -> List[Tuple[int, RationalFunction, RationalFunction]]:
    """Compare a_{kβ} from the one-arrow recursion with localization on Gr(k quotients of ℂ¹)."""
    from .engine import GammaSeries, one_arrow_recursion

    quiver = single_vertex(1)
    if gamma is None:
        gamma = GammaSeries.localization(quiver, "0", max(alpha0, 1))
    recursed = one_arrow_recursion(alpha0, 1, gamma)
    return [(k, recursed[k], single_vertex_integral(quiver, 1, k)) for k in range(alpha0 + 1)]


__all__ = [
    "FixedPoint",
    "FixedPointModel",
    "point_model",
    "grassmannian_model",
    "flag_model",
    "model_from_text",
    "integrand_from_text",
    "ab_integrate",
    "lambda_class",
    "lambda_integrand",
    "sharp_generates",
    "destabilizing_model",
    "gamma_by_localization",
    "AdjointReport",
    "single_vertex_integral",
    "adjoint_experiment",
    "one_arrow_model_check",
]
