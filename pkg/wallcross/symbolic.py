"""Exact multivariate polynomials, rational functions and Euler classes.

All arithmetic runs in a sympy ``PolyRing`` over ``QQ`` with lexicographic
order. The ring's generators come from a session-wide
:class:`VariableRegistry`; the registry only ever grows, so values created
before a new variable was registered are lifted into the current ring by
padding their exponent vectors before they are combined.

Canonical form of a rational function: numerator and denominator coprime,
denominator leading coefficient (under the lex order) equal to 1. Two
rational functions are equal iff their canonical forms coincide.

Text form
---------
``theta^2*x1 - 3/2*x2 + 1`` for polynomials, ``(num)/(den)`` for proper
fractions. Terms follow the registry order; :meth:`RationalFunction.parse`
inverts :meth:`RationalFunction.to_text` on canonical forms.
"""
from __future__ import annotations

import logging
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .constants import DEFAULT_VARIABLES, THETA
from .errors import InputError, ZeroWeightError

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TRANSFORMS = standard_transformations + (convert_xor,)


# ====== variables ======

@dataclass(frozen=True)
class Variable:
    name: str
    ordinal: int


class VariableRegistry:
    """Append-only list of variable names defining the global order."""

    def __init__(self, names: Iterable[str] = DEFAULT_VARIABLES) -> None:
        self._lock = threading.Lock()
        self._names: List[str] = []
        self._index: Dict[str, int] = {}
        self._ring: Optional[PolyRing] = None
        for name in names:
            self.variable(name)

    def variable(self, name: str) -> Variable:
        if not _NAME_RE.fullmatch(name):
            raise InputError(f"Invalid variable name {name!r}")
        with self._lock:
            ordinal = self._index.get(name)
            if ordinal is None:
                ordinal = len(self._names)
                self._names.append(name)
                self._index[name] = ordinal
                self._ring = None
                logger.debug("registered variable %s at position %d", name, ordinal)
        return Variable(name, ordinal)

    def ordinal(self, name: str) -> int:
        return self.variable(name).ordinal

    @property
    def names(self) -> Tuple[str, ...]:
        with self._lock:
            return tuple(self._names)

    @property
    def ring(self) -> PolyRing:
        with self._lock:
            if self._ring is None:
                self._ring = PolyRing(tuple(sympy.Symbol(n) for n in self._names), QQ, lex)
            return self._ring


REGISTRY = VariableRegistry()


def _lift(p: PolyElement) -> PolyElement:
    """Move ``p`` into the current registry ring."""
    ring = REGISTRY.ring
    if p.ring == ring:
        return p
    if tuple(str(s) for s in p.ring.symbols) != REGISTRY.names[: p.ring.ngens]:
        raise InputError("Polynomial belongs to a foreign ring")
    pad = (0,) * (ring.ngens - p.ring.ngens)
    return ring.from_dict({monom + pad: coeff for monom, coeff in p.items()})


def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _ground(value: Union[int, Fraction]):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_text(p: PolyElement) -> str:
    if not p:
        return "0"
    names = [str(s) for s in p.ring.symbols]
    out = ""
    for monom, coeff in p.terms():
        c = _to_fraction(coeff)
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(names, monom) if e
        )
        mag = abs(c)
        if not mono:
            body = _format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coefficient(mag)}*{mono}"
        if not out:
            out = f"-{body}" if c < 0 else body
        else:
            out += f" - {body}" if c < 0 else f" + {body}"
    return out


def _term_key(p: PolyElement) -> Tuple:
    names = [str(s) for s in p.ring.symbols]
    return tuple(sorted(
        (tuple((names[i], e) for i, e in enumerate(monom) if e), _to_fraction(coeff))
        for monom, coeff in p.items()
    ))


def _parse_fraction(text: str) -> Tuple[PolyElement, PolyElement]:
    names = set(_NAME_RE.findall(text))
    for name in sorted(names, key=lambda n: (n not in REGISTRY.names, n)):
        REGISTRY.variable(name)
    local = {name: sympy.Symbol(name) for name in names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, sympy.SympifyError) as exc:
        raise InputError(f"Cannot parse rational function {text!r}: {exc}") from None
    num, den = sympy.fraction(sympy.together(expr))
    ring = REGISTRY.ring
    try:
        return ring.from_expr(num), ring.from_expr(den)
    except ValueError as exc:
        raise InputError(f"{text!r} is not a rational function: {exc}") from None


# ====== polynomials ======

class Polynomial:
    """Polynomial with rational coefficients in registry variables."""

    __slots__ = ("_element",)

    def __init__(self, element: PolyElement) -> None:
        self._element = _lift(element)

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "Polynomial":
        return cls(REGISTRY.ring.ground_new(_ground(value)))

    @classmethod
    def variable(cls, name: str) -> "Polynomial":
        ordinal = REGISTRY.ordinal(name)
        return cls(REGISTRY.ring.gens[ordinal])

    @classmethod
    def from_terms(cls, terms: Mapping[Tuple[Tuple[str, int], ...], Union[int, Fraction]]) -> "Polynomial":
        for monom in terms:
            for name, _ in monom:
                REGISTRY.variable(name)
        ring = REGISTRY.ring
        data = {}
        for monom, coeff in terms.items():
            exps = [0] * ring.ngens
            for name, e in monom:
                exps[REGISTRY.ordinal(name)] += e
            key = tuple(exps)
            data[key] = data.get(key, 0) + Fraction(coeff)
        return cls(ring.from_dict({k: _ground(v) for k, v in data.items() if v}))

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        value = RationalFunction.parse(text)
        if not value.is_polynomial():
            raise InputError(f"{text!r} is not a polynomial")
        return value.numerator

    @property
    def element(self) -> PolyElement:
        self._element = _lift(self._element)
        return self._element

    def terms(self) -> Dict[Tuple[Tuple[str, int], ...], Fraction]:
        """Map from exponent vectors (as name/exponent pairs) to coefficients."""
        return {monom: coeff for monom, coeff in _term_key(self.element)}

    def degree(self, name: str) -> int:
        ordinal = REGISTRY.ordinal(name)
        p = self.element
        if not p:
            return -1
        return max(monom[ordinal] for monom in p.keys())

    def is_zero(self) -> bool:
        return not self._element

    def to_text(self) -> str:
        return _poly_text(self.element)

    def _other(self, other) -> PolyElement:
        if isinstance(other, Polynomial):
            return other.element
        if isinstance(other, WeightForm):
            return other.to_polynomial().element
        if isinstance(other, (int, Fraction)):
            return REGISTRY.ring.ground_new(_ground(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.element + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.element - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Polynomial(o - self.element)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Polynomial(self.element * o)

    __rmul__ = __mul__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self.element)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise InputError("Negative power of a polynomial; use RationalFunction")
        return Polynomial(self.element ** k)

    def __truediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(self) / other

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return other == self
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self.element == o

    def __hash__(self) -> int:
        return hash(_term_key(self.element))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


# ====== rational functions ======

def _canonical(num: PolyElement, den: PolyElement) -> Tuple[PolyElement, PolyElement]:
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num:
        return num, den.ring.one
    num, den = num.cancel(den)
    lc = den.LC
    if lc != den.ring.domain.one:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


Coercible = Union["RationalFunction", Polynomial, "WeightForm", int, Fraction]


class RationalFunction:
    """Quotient of two polynomials, always kept in canonical reduced form."""

    __slots__ = ("_num", "_den")

    def __init__(self, numerator: PolyElement, denominator: Optional[PolyElement] = None) -> None:
        num = _lift(numerator)
        den = num.ring.one if denominator is None else _lift(denominator)
        self._num, self._den = _canonical(num, den)

    # -------- constructors --------

    @classmethod
    def coerce(cls, value: Coercible) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls(value.element)
        if isinstance(value, (int, Fraction)):
            return cls(REGISTRY.ring.ground_new(_ground(value)))
        if isinstance(value, WeightForm):
            return cls(value.to_polynomial().element)
        raise TypeError(f"Cannot convert {type(value).__name__} to RationalFunction")

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "RationalFunction":
        return cls.coerce(Fraction(value))

    @classmethod
    def variable(cls, name: str) -> "RationalFunction":
        return cls(Polynomial.variable(name).element)

    @classmethod
    def parse(cls, text: str) -> "RationalFunction":
        num, den = _parse_fraction(text)
        return cls(num, den)

    # -------- accessors --------

    def _refresh(self) -> None:
        self._num = _lift(self._num)
        self._den = _lift(self._den)

    @property
    def numerator(self) -> Polynomial:
        return Polynomial(self._num)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial(self._den)

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return self._den == self._den.ring.one

    def is_constant(self) -> bool:
        return self.is_polynomial() and self._num.is_ground

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise InputError(f"{self.to_text()} is not a constant")
        if not self._num:
            return Fraction(0)
        return _to_fraction(self._num.LC)

    def variables(self) -> Tuple[str, ...]:
        """Names of the variables this function actually depends on."""
        used = set()
        for p in (self._num, self._den):
            for monom in p.keys():
                used.update(i for i, e in enumerate(monom) if e)
        names = REGISTRY.names
        return tuple(names[i] for i in sorted(used))

    def degree(self, name: str) -> Tuple[int, int]:
        """Degrees of numerator and denominator in ``name``."""
        return self.numerator.degree(name), self.denominator.degree(name)

    def to_text(self) -> str:
        self._refresh()
        if self.is_polynomial():
            return _poly_text(self._num)
        return f"({_poly_text(self._num)})/({_poly_text(self._den)})"

    def substitute(self, name: str, value: Coercible) -> "RationalFunction":
        """Replace variable ``name`` by a polynomial value."""
        ordinal = REGISTRY.ordinal(name)
        replacement = RationalFunction.coerce(value)
        if not replacement.is_polynomial():
            raise InputError("substitute() only accepts polynomial replacements")
        self._refresh()
        replacement._refresh()
        gen = REGISTRY.ring.gens[ordinal]
        sub = replacement._num
        return RationalFunction(self._num.compose(gen, sub), self._den.compose(gen, sub))

    # -------- arithmetic --------

    def _pair(self, other) -> Optional[Tuple[PolyElement, PolyElement, PolyElement, PolyElement]]:
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return None
        self._refresh()
        o._refresh()
        return self._num, self._den, o._num, o._den

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, c, d = pair
        return RationalFunction(a * d + c * b, b * d)

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, c, d = pair
        return RationalFunction(a * d - c * b, b * d)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, c, d = pair
        return RationalFunction(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, c, d = pair
        if not c:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(a * d, b * c)

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) / self

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self._num, self._den)

    def __pow__(self, k: int) -> "RationalFunction":
        if k >= 0:
            return RationalFunction(self._num ** k, self._den ** k)
        if not self._num:
            raise ZeroDivisionError("negative power of zero")
        return RationalFunction(self._den ** (-k), self._num ** (-k))

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b, c, d = pair
        return a == c and b == d

    def __hash__(self) -> int:
        return hash((_term_key(self._num), _term_key(self._den)))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_text()!r})"


ZERO = RationalFunction.constant(0)
ONE = RationalFunction.constant(1)


def poly_arith(a: Coercible, b: Coercible, op: str) -> RationalFunction:
    """Apply ``op`` (add, sub, mul, div) to two exact values."""
    x = RationalFunction.coerce(a)
    y = RationalFunction.coerce(b)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise InputError(f"Unknown operation {op!r}; expected add, sub, mul or div")


# ====== torus weights and K-classes ======

@dataclass(frozen=True)
class WeightForm:
    """Integer linear form in registry variables plus an integer constant."""

    coefficients: Tuple[Tuple[str, int], ...] = ()
    constant: int = 0

    def __post_init__(self) -> None:
        merged: Dict[str, int] = {}
        for name, coeff in self.coefficients:
            if not isinstance(coeff, int):
                raise InputError(f"Weight coefficient of {name} must be an integer, got {coeff!r}")
            merged[name] = merged.get(name, 0) + coeff
        ordered = tuple(sorted(
            ((n, c) for n, c in merged.items() if c), key=lambda nc: REGISTRY.ordinal(nc[0])
        ))
        object.__setattr__(self, "coefficients", ordered)
        if not isinstance(self.constant, int):
            raise InputError(f"Weight constant must be an integer, got {self.constant!r}")

    @classmethod
    def of(cls, name: str, coeff: int = 1) -> "WeightForm":
        return cls(((name, coeff),))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, int]) -> "WeightForm":
        constant = 0
        items = []
        for name, coeff in mapping.items():
            if name in ("1", ""):
                constant += int(coeff)
            else:
                items.append((name, int(coeff)))
        return cls(tuple(items), constant)

    def to_json(self) -> Dict[str, int]:
        out = {name: coeff for name, coeff in self.coefficients}
        if self.constant:
            out["1"] = self.constant
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "WeightForm":
        return cls.from_mapping(data)

    def is_zero(self) -> bool:
        return not self.coefficients and self.constant == 0

    def to_polynomial(self) -> Polynomial:
        terms = {((name, 1),): coeff for name, coeff in self.coefficients}
        if self.constant:
            terms[()] = self.constant
        return Polynomial.from_terms(terms)

    def __add__(self, other: "WeightForm") -> "WeightForm":
        if isinstance(other, int):
            return WeightForm(self.coefficients, self.constant + other)
        if not isinstance(other, WeightForm):
            return NotImplemented
        return WeightForm(self.coefficients + other.coefficients, self.constant + other.constant)

    __radd__ = __add__

    def __neg__(self) -> "WeightForm":
        return WeightForm(tuple((n, -c) for n, c in self.coefficients), -self.constant)

    def __sub__(self, other: "WeightForm") -> "WeightForm":
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, WeightForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> "WeightForm":
        if not isinstance(k, int):
            return NotImplemented
        return WeightForm(tuple((n, c * k) for n, c in self.coefficients), self.constant * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return self.to_polynomial().to_text()


ZERO_WEIGHT = WeightForm()


@dataclass(frozen=True)
class KClass:
    """Formal difference of two multisets of torus weights."""

    plus: Tuple[WeightForm, ...] = ()
    minus: Tuple[WeightForm, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.plus) - len(self.minus)

    def __add__(self, other: "KClass") -> "KClass":
        return KClass(self.plus + other.plus, self.minus + other.minus)

    def __sub__(self, other: "KClass") -> "KClass":
        return KClass(self.plus + other.minus, self.minus + other.plus)

    def __neg__(self) -> "KClass":
        return KClass(self.minus, self.plus)

    def dual(self) -> "KClass":
        return KClass(tuple(-w for w in self.plus), tuple(-w for w in self.minus))


def _product(factors: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.constant(1)
    for f in factors:
        out = out * f
    return out


def euler_theta(c: KClass, theta: str = THETA) -> RationalFunction:
    """Euler class of ``c`` after twisting every line by the trivial weight θ."""
    t = Polynomial.variable(theta)
    den_factors = []
    for w in c.minus:
        factor = w.to_polynomial() + t
        if factor.is_zero():
            raise ZeroWeightError(f"Twisted weight {w} + {theta} vanishes in the denominator")
        den_factors.append(factor)
    num = _product(w.to_polynomial() + t for w in c.plus)
    return RationalFunction(num.element, _product(den_factors).element)


def euler_plain(c: KClass) -> RationalFunction:
    """Untwisted Euler class; zero weights are rejected."""
    for w in c.plus + c.minus:
        if w.is_zero():
            raise ZeroWeightError("Zero weight in an untwisted Euler class (non-isolated fixed point)")
    num = _product(w.to_polynomial() for w in c.plus)
    den = _product(w.to_polynomial() for w in c.minus)
    return RationalFunction(num.element, den.element)


def pochhammer(x: Coercible, k: int) -> RationalFunction:
    """Rising factorial x(x+1)⋯(x+k−1)."""
    if k < 0:
        raise InputError(f"pochhammer needs k >= 0, got {k}")
    base = RationalFunction.coerce(x)
    out = ONE
    for i in range(k):
        out = out * (base + i)
    return out


# ====== residues ======

def _coefficients_in(p: PolyElement, ordinal: int) -> Dict[int, RationalFunction]:
    ring = p.ring
    buckets: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for monom, coeff in p.items():
        k = monom[ordinal]
        rest = monom[:ordinal] + (0,) + monom[ordinal + 1:]
        buckets.setdefault(k, {})[rest] = coeff
    return {k: RationalFunction(ring.from_dict(terms)) for k, terms in buckets.items()}


def residue_at_infinity(f: RationalFunction, v: str) -> RationalFunction:
    """Coefficient of v^{-1} in the expansion of ``f`` at v = ∞.

    The polynomial part in ``v`` is removed by long division; for the proper
    remainder r/q with deg q = m the coefficient of v^{-1} is
    coeff_{m-1}(r) / lc(q).
    """
    f = RationalFunction.coerce(f)
    ordinal = REGISTRY.ordinal(v)
    f._refresh()
    num = _coefficients_in(f._num, ordinal)
    den = _coefficients_in(f._den, ordinal)
    m = max(den)
    if m == 0 or not num:
        return ZERO
    lead = den[m]
    rem = dict(num)
    for k in range(max(rem), m - 1, -1):
        c = rem.get(k)
        if c is None or c.is_zero():
            continue
        factor = c / lead
        for j, dj in den.items():
            rem[k - m + j] = rem.get(k - m + j, ZERO) - factor * dj
    return rem.get(m - 1, ZERO) / lead


def simple_pole_residue(f: RationalFunction, v: str, pole: Coercible) -> RationalFunction:
    """Residue of ``f`` at a simple pole v = ``pole``."""
    p = RationalFunction.coerce(pole)
    if not p.is_polynomial():
        raise InputError(f"Pole {p} must be polynomial in the other variables")
    shifted = RationalFunction.coerce(f) * (RationalFunction.variable(v) - p)
    if RationalFunction.coerce(shifted.denominator).substitute(v, p).is_zero():
        raise InputError(f"{v} = {p} is not a simple pole")
    return shifted.substitute(v, p)


def finite_residue_sum(f: RationalFunction, v: str, poles: Sequence[Coercible]) -> RationalFunction:
    total = ZERO
    for pole in poles:
        total = total + simple_pole_residue(f, v, pole)
    return total


def residue_scaling_check(f: RationalFunction, v: str, m: int, a: Coercible) -> bool:
    """Whether Res_{v=∞} f(v) equals m · Res_{v=∞} f(mv + a)."""
    if m <= 0:
        raise InputError(f"Scaling factor must be positive, got {m}")
    g = f.substitute(v, RationalFunction.variable(v) * m + RationalFunction.coerce(a))
    return residue_at_infinity(f, v) == residue_at_infinity(g, v) * m


__all__ = [
    "Variable",
    "VariableRegistry",
    "REGISTRY",
    "Polynomial",
    "RationalFunction",
    "ZERO",
    "ONE",
    "poly_arith",
    "WeightForm",
    "ZERO_WEIGHT",
    "KClass",
    "euler_theta",
    "euler_plain",
    "pochhammer",
    "residue_at_infinity",
    "simple_pole_residue",
    "finite_residue_sum",
    "residue_scaling_check",
]
