"""Stability parameters, walls and the wall-crossing context."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import InputError
from .structures import DimVector, FramedQuiver

logger = logging.getLogger(__name__)


def zeta_infinity(zeta: Mapping[str, Fraction], alpha: DimVector) -> Fraction:
    """ζ_∞ = −∑ ζ_i α_i, the value making ζ(V) = 0 when dim V_∞ = 1."""
    return -sum((Fraction(zeta.get(v, 0)) * n for v, n in alpha.entries), Fraction(0))


@dataclass(frozen=True)
class StabilityParam:
    """Rational ζ on I together with the derived ζ_∞."""

    values: Tuple[Tuple[str, Fraction], ...]
    infinity: Fraction = Fraction(0)

    @classmethod
    def normalized(cls, zeta: Mapping[str, Fraction], alpha: DimVector) -> "StabilityParam":
        unknown = set(zeta) - set(alpha.vertices)
        if unknown:
            raise InputError(f"Stability parameter on unknown vertices {sorted(unknown)}")
        values = tuple((v, Fraction(zeta.get(v, 0))) for v in alpha.vertices)
        return cls(values, zeta_infinity(dict(values), alpha))

    @classmethod
    def parse(cls, text: str, alpha: DimVector) -> "StabilityParam":
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            if parts and all("=" in p for p in parts):
                zeta = {k.strip(): Fraction(v) for k, v in (p.split("=", 1) for p in parts)}
            else:
                if len(parts) != len(alpha.vertices):
                    raise InputError(f"Stability parameter {text!r} needs {len(alpha.vertices)} entries")
                zeta = dict(zip(alpha.vertices, (Fraction(p) for p in parts)))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"Cannot parse stability parameter {text!r}") from None
        return cls.normalized(zeta, alpha)

    def as_dict(self) -> Dict[str, Fraction]:
        return dict(self.values)

    def __getitem__(self, vertex: str) -> Fraction:
        return self.as_dict().get(vertex, Fraction(0))

    def pairing(self, dims: DimVector) -> Fraction:
        """ζ(S) = ∑_{i∈I} ζ_i dim S_i (the ∞-part excluded)."""
        zeta = self.as_dict()
        return sum((zeta.get(v, Fraction(0)) * n for v, n in dims.entries), Fraction(0))

    def combine(self, other: "StabilityParam", t: Fraction) -> "StabilityParam":
        """self + t·other, with ζ_∞ combined the same way."""
        o = other.as_dict()
        values = tuple((v, z + t * o.get(v, Fraction(0))) for v, z in self.values)
        return StabilityParam(values, self.infinity + t * other.infinity)

    def to_text(self) -> str:
        return ",".join(f"{v}={z}" for v, z in self.values)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Wall:
    """Primitive nonzero β ≤ α; the hyperplane β⊥."""

    beta: DimVector

    def __post_init__(self) -> None:
        if self.beta.is_zero():
            raise InputError("A wall needs a nonzero dimension vector")
        if self.beta.gcd() != 1:
            raise InputError(f"Wall vector {self.beta} is not primitive")

    def sign(self, zeta: StabilityParam) -> int:
        value = zeta.pairing(self.beta)
        return (value > 0) - (value < 0)

    def __str__(self) -> str:
        return f"({self.beta})"


def beta_bar_infinity(q: FramedQuiver, beta: DimVector) -> int:
    """∑_{out(a)=∞} β_{in(a)} − ∑_{in(a)=∞} β_{out(a)}."""
    total = 0
    for a in q.arrows:
        if a.source == q.framing and a.target != q.framing:
            total += beta[a.target]
        if a.target == q.framing and a.source != q.framing:
            total -= beta[a.source]
    return total


def enumerate_walls(alpha: DimVector) -> List[Wall]:
    """All primitive nonzero β ≤ α, in lexicographic order of entries."""
    walls = []
    for values in itertools.product(*(range(n + 1) for _, n in alpha.entries)):
        beta = DimVector(tuple(zip(alpha.vertices, values)))
        if beta.is_zero() or beta.gcd() != 1:
            continue
        walls.append(Wall(beta))
    logger.debug("alpha=%s has %d walls", alpha, len(walls))
    return walls


@dataclass(frozen=True)
class Classification:
    """Result of :func:`classify_parameter`.

    ``kind`` is ``"generic"``, ``"on-wall"`` or ``"degenerate"``; ``walls``
    lists the walls containing ζ; ``signs`` maps each wall to sign ζ(β), where
    −1 is the chamber 𝒞 and +1 the chamber 𝒞′.
    """

    kind: str
    walls: Tuple[Wall, ...]
    signs: Tuple[Tuple[Wall, int], ...]

    @property
    def wall(self) -> Optional[Wall]:
        return self.walls[0] if self.kind == "on-wall" else None


def classify_parameter(zeta: StabilityParam, alpha: DimVector) -> Classification:
    walls = enumerate_walls(alpha)
    signs = tuple((w, w.sign(zeta)) for w in walls)
    containing = tuple(w for w, s in signs if s == 0)
    if not containing:
        kind = "generic"
    elif len(containing) == 1:
        kind = "on-wall"
    else:
        kind = "degenerate"
    return Classification(kind, containing, signs)


# ================= wall-crossing context ==================

@dataclass(frozen=True)
class WallCrossingContext:
    """Quiver, α, wall β and the constants attached to crossing β⊥.

    ``theta_plus``/``theta_minus`` and ``D`` are present only when the context
    was built from certified stability parameters.
    """

    quiver: FramedQuiver
    alpha: DimVector
    wall: Wall
    zero: str
    beta_bar: int
    theta_plus: Optional[Tuple[Tuple[str, int], ...]] = None
    theta_minus: Optional[Tuple[Tuple[str, int], ...]] = None
    D: Optional[int] = None

    @property
    def alpha0(self) -> int:
        return self.alpha[self.zero]

    @property
    def beta0(self) -> int:
        return self.wall.beta[self.zero]

    @property
    def beta(self) -> DimVector:
        return self.wall.beta

    @classmethod
    def build(
        cls,
        quiver: FramedQuiver,
        alpha: DimVector,
        wall: Wall,
        zero: Optional[str] = None,
        theta_plus: Optional[Mapping[str, int]] = None,
        theta_minus: Optional[Mapping[str, int]] = None,
    ) -> "WallCrossingContext":
        internal = quiver.internal_vertices
        if set(alpha.vertices) - set(internal):
            raise InputError(f"alpha {alpha} is not supported on the internal vertices {list(internal)}")
        if not wall.beta <= alpha:
            raise InputError(f"Wall {wall} does not satisfy beta <= alpha = {alpha}")
        if zero is None:
            zero = next((v for v in internal if wall.beta[v] != 0), None)
        if zero is None or zero not in internal:
            raise InputError(f"Zero vertex {zero!r} must be an internal vertex")
        if wall.beta[zero] == 0:
            raise InputError(f"beta vanishes at the chosen zero vertex {zero!r}")
        D = None
        tp = tm = None
        if theta_plus is not None and theta_minus is not None:
            D = sum((theta_plus.get(v, 0) - theta_minus.get(v, 0)) * wall.beta[v] for v in internal)
            if D <= 0:
                raise InputError(f"theta+ and theta- give D = {D}, expected D > 0")
            tp = tuple(sorted(theta_plus.items()))
            tm = tuple(sorted(theta_minus.items()))
        return cls(
            quiver=quiver,
            alpha=alpha,
            wall=wall,
            zero=zero,
            beta_bar=beta_bar_infinity(quiver, wall.beta),
            theta_plus=tp,
            theta_minus=tm,
            D=D,
        )


__all__ = [
    "zeta_infinity",
    "StabilityParam",
    "Wall",
    "beta_bar_infinity",
    "enumerate_walls",
    "Classification",
    "classify_parameter",
    "WallCrossingContext",
]
