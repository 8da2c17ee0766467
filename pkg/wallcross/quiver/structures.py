"""Framed quivers with relations, dimension vectors and their JSON form.

Quiver description file
-----------------------
UTF-8 JSON with the top-level keys::

    {"vertices": ["0", "1", "inf"],
     "framing": "inf",
     "arrows": [{"id": "z1", "from": "inf", "to": "0", "weight": {"x1": -1}}],
     "relations": [{"id": "l0", "weight": {"q1": 1, "q2": 1},
                    "terms": [{"coeff": "1", "path": ["w1", "z1"]}]}]}

Arrow and relation weights map variable names to integer coefficients; the
key ``"1"`` holds the constant. A path lists arrow ids in traversal order, so
``["w1", "z1"]`` is z1 ∘ w1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import InputError
from ..symbolic import WeightForm, ZERO_WEIGHT


# ================= arrows and relations ==================

@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str
    weight: WeightForm = ZERO_WEIGHT

    def to_json(self) -> Dict[str, Any]:
        return {"id": self.id, "from": self.source, "to": self.target, "weight": self.weight.to_json()}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Arrow":
        try:
            return cls(
                id=str(data["id"]),
                source=str(data["from"]),
                target=str(data["to"]),
                weight=WeightForm.from_json(data.get("weight", {})),
            )
        except KeyError as exc:
            raise InputError(f"Arrow entry missing key {exc.args[0]!r}: {data!r}") from None


@dataclass(frozen=True)
class PathTerm:
    coeff: Fraction
    path: Tuple[str, ...]

    def to_json(self) -> Dict[str, Any]:
        return {"coeff": str(self.coeff), "path": list(self.path)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "PathTerm":
        try:
            coeff = Fraction(str(data.get("coeff", "1")))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"Invalid relation coefficient {data.get('coeff')!r}") from None
        return cls(coeff=coeff, path=tuple(str(a) for a in data.get("path", ())))


@dataclass(frozen=True)
class Relation:
    terms: Tuple[PathTerm, ...]
    weight: WeightForm = ZERO_WEIGHT
    id: str = ""

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"terms": [t.to_json() for t in self.terms]}
        if self.id:
            out["id"] = self.id
        if not self.weight.is_zero():
            out["weight"] = self.weight.to_json()
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Relation":
        return cls(
            terms=tuple(PathTerm.from_json(t) for t in data.get("terms", ())),
            weight=WeightForm.from_json(data.get("weight", {})),
            id=str(data.get("id", "")),
        )


# ================= quiver ==================

@dataclass(frozen=True)
class FramedQuiver:
    """Quiver (Q₀, Q₁, Q₂) with a distinguished framing vertex.

    ``vertices`` is stored in canonical order: internal vertices in
    declaration order, framing last.
    """

    vertices: Tuple[str, ...]
    framing: str
    arrows: Tuple[Arrow, ...] = ()
    relations: Tuple[Relation, ...] = ()
    _arrow_index: Dict[str, Arrow] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        ordered = tuple(v for v in self.vertices if v != self.framing)
        if self.framing in self.vertices:
            ordered += (self.framing,)
        object.__setattr__(self, "vertices", ordered)
        object.__setattr__(self, "_arrow_index", {a.id: a for a in self.arrows})

    @property
    def internal_vertices(self) -> Tuple[str, ...]:
        """The vertex set I = Q₀ ∖ {∞}."""
        return tuple(v for v in self.vertices if v != self.framing)

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrow_index[arrow_id]
        except KeyError:
            raise InputError(f"Unknown arrow {arrow_id!r}") from None

    def framing_arrows(self) -> Tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if self.framing in (a.source, a.target))

    def path_endpoints(self, path: Sequence[str]) -> Tuple[str, str]:
        arrows = [self.arrow(a) for a in path]
        if not arrows:
            raise InputError("Empty path")
        for first, second in zip(arrows, arrows[1:]):
            if first.target != second.source:
                raise InputError(f"Arrows {first.id} and {second.id} are not composable")
        return arrows[0].source, arrows[-1].target

    def relation_endpoints(self, relation: Relation) -> Tuple[str, str]:
        ends = {self.path_endpoints(t.path) for t in relation.terms}
        if len(ends) != 1:
            raise InputError(f"Relation {relation.id or '?'} mixes paths with endpoints {sorted(ends)}")
        return ends.pop()

    # -------- JSON --------

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "framing": self.framing,
            "arrows": [a.to_json() for a in self.arrows],
            "relations": [r.to_json() for r in self.relations],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "FramedQuiver":
        if not isinstance(data, Mapping):
            raise InputError("Quiver description must be a JSON object")
        for key in ("vertices", "framing"):
            if key not in data:
                raise InputError(f"Quiver description missing key {key!r}")
        return cls(
            vertices=tuple(str(v) for v in data["vertices"]),
            framing=str(data["framing"]),
            arrows=tuple(Arrow.from_json(a) for a in data.get("arrows", ())),
            relations=tuple(Relation.from_json(r) for r in data.get("relations", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    @classmethod
    def loads(cls, text: str) -> "FramedQuiver":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"Malformed quiver file: {exc}") from None
        return cls.from_json(data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FramedQuiver":
        return cls.loads(Path(path).read_text(encoding="utf-8"))

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps() + "\n", encoding="utf-8")


def validate(q: FramedQuiver) -> List[str]:
    """Return a list of human readable invariant violations (empty if valid)."""
    problems: List[str] = []
    vertices = set(q.vertices)
    if len(vertices) != len(q.vertices):
        problems.append("duplicate vertex identifiers")
    if q.framing not in vertices:
        problems.append(f"framing vertex {q.framing!r} is not a vertex")
    seen = set()
    for a in q.arrows:
        if a.id in seen:
            problems.append(f"duplicate arrow id {a.id!r}")
        seen.add(a.id)
        for end in (a.source, a.target):
            if end not in vertices:
                problems.append(f"arrow {a.id!r} references unknown vertex {end!r}")
    for index, rel in enumerate(q.relations):
        label = rel.id or f"#{index}"
        if not rel.terms:
            problems.append(f"relation {label} has no terms")
            continue
        try:
            start, end = q.relation_endpoints(rel)
        except InputError as exc:
            problems.append(f"relation {label}: {exc}")
            continue
        if q.framing in (start, end):
            problems.append(f"relation {label} starts or ends at the framing vertex")
    return problems


# ================= dimension vectors ==================

@dataclass(frozen=True)
class DimVector:
    """Non-negative integer vector indexed by internal vertices."""

    entries: Tuple[Tuple[str, int], ...]

    def __post_init__(self) -> None:
        names = [v for v, _ in self.entries]
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate vertex in dimension vector {self.entries!r}")
        for v, n in self.entries:
            if not isinstance(n, int) or n < 0:
                raise InputError(f"Dimension at {v!r} must be a non-negative integer, got {n!r}")

    @classmethod
    def of(cls, mapping: Mapping[str, int], order: Optional[Iterable[str]] = None) -> "DimVector":
        keys = list(order) if order is not None else list(mapping)
        unknown = set(mapping) - set(keys)
        if unknown:
            raise InputError(f"Unknown vertices in dimension vector: {sorted(unknown)}")
        return cls(tuple((v, int(mapping.get(v, 0))) for v in keys))

    @classmethod
    def parse(cls, text: str, order: Sequence[str]) -> "DimVector":
        """Parse ``"0=2,1=1"`` or a positional list ``"2,1"``."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        try:
            if parts and all("=" in p for p in parts):
                mapping = {}
                for p in parts:
                    key, value = p.split("=", 1)
                    mapping[key.strip()] = int(value)
                return cls.of(mapping, order)
            values = [int(p) for p in parts]
        except ValueError:
            raise InputError(f"Cannot parse dimension vector {text!r}") from None
        if len(values) != len(order):
            raise InputError(f"Dimension vector {text!r} needs {len(order)} entries for {list(order)}")
        return cls(tuple(zip(order, values)))

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.entries)

    def as_dict(self) -> Dict[str, int]:
        return dict(self.entries)

    def __getitem__(self, vertex: str) -> int:
        return self.as_dict().get(vertex, 0)

    @property
    def total(self) -> int:
        return sum(n for _, n in self.entries)

    def is_zero(self) -> bool:
        return all(n == 0 for _, n in self.entries)

    def __le__(self, other: "DimVector") -> bool:
        return all(n <= other[v] for v, n in self.entries)

    def scale(self, k: int) -> "DimVector":
        return DimVector(tuple((v, n * k) for v, n in self.entries))

    def __add__(self, other: "DimVector") -> "DimVector":
        return DimVector(tuple((v, n + other[v]) for v, n in self.entries))

    def minus(self, other: "DimVector") -> Optional["DimVector"]:
        """Componentwise difference, or ``None`` if it would be negative."""
        values = tuple((v, n - other[v]) for v, n in self.entries)
        if any(n < 0 for _, n in values):
            return None
        return DimVector(values)

    def gcd(self) -> int:
        out = 0
        for _, n in self.entries:
            out = gcd(out, n)
        return out

    def to_text(self) -> str:
        return ",".join(f"{v}={n}" for v, n in self.entries)

    def __str__(self) -> str:
        return self.to_text()


__all__ = [
    "Arrow",
    "PathTerm",
    "Relation",
    "FramedQuiver",
    "validate",
    "DimVector",
]
