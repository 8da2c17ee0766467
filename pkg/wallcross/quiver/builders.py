"""Constructors for the standard framed quivers.

Weight conventions (additive torus characters): H-arrows carry ``q1``,
H̄-arrows ``q2``; the framing line of the k-th framing arrow has weight
``x_k``, so an arrow ∞→i carries ``-x_k`` and an arrow i→∞ carries ``x_k``
(plus ``q1+q2`` for the w-type arrows). Relations carry ``q1+q2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from ..constants import FRAMING_VERTEX, Q1, Q2, framing_variable
from ..errors import InputError
from ..symbolic import WeightForm, ZERO_WEIGHT
from .structures import Arrow, FramedQuiver, PathTerm, Relation

_QQ = WeightForm(((Q1, 1), (Q2, 1)))


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph with a chosen orientation of every edge."""

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        for i, j in self.edges:
            if i not in self.vertices or j not in self.vertices:
                raise InputError(f"Edge ({i}, {j}) references an unknown vertex")


def dynkin_a(n: int) -> Graph:
    if n < 1:
        raise InputError(f"A_n needs n >= 1, got {n}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    return Graph(vertices, tuple((str(i), str(i + 1)) for i in range(1, n)))


def jordan_graph() -> Graph:
    """One vertex with one loop."""
    return Graph(("0",), (("0", "0"),))


def _multiplicities(r: Union[int, Sequence[int], Mapping[str, int]], vertices: Sequence[str]) -> Dict[str, int]:
    if isinstance(r, int):
        out = {v: r for v in vertices}
    elif isinstance(r, Mapping):
        out = {v: int(r.get(v, 0)) for v in vertices}
    else:
        values = list(r)
        if len(values) != len(vertices):
            raise InputError(f"Need {len(vertices)} framing multiplicities, got {len(values)}")
        out = dict(zip(vertices, (int(x) for x in values)))
    for v, n in out.items():
        if n < 0:
            raise InputError(f"Negative framing multiplicity {n} at vertex {v}")
    return out


def _term(*path: str, coeff: int = 1) -> PathTerm:
    return PathTerm(Fraction(coeff), tuple(path))


def nakajima(graph: Graph, r: Union[int, Sequence[int], Mapping[str, int]]) -> FramedQuiver:
    """Framed quiver of a Nakajima quiver variety over ``graph``.

    Every edge h: i→j gets h̄: j→i; each framing line at i gives
    z: ∞→i and w: i→∞. The relation at i is ∑ ε(a) ā a + ∑ z w with
    ε(h) = 1, ε(h̄) = −1.
    """
    mult = _multiplicities(r, graph.vertices)
    arrows: List[Arrow] = []
    terms: Dict[str, List[PathTerm]] = {v: [] for v in graph.vertices}
    for e, (i, j) in enumerate(graph.edges):
        h, hb = f"h{e}", f"hb{e}"
        arrows.append(Arrow(h, i, j, WeightForm.of(Q1)))
        arrows.append(Arrow(hb, j, i, WeightForm.of(Q2)))
        terms[i].append(_term(h, hb))
        terms[j].append(_term(hb, h, coeff=-1))
    k = 0
    for v in graph.vertices:
        for ell in range(1, mult[v] + 1):
            k += 1
            x = framing_variable(k)
            z, w = f"z_{v}_{ell}", f"w_{v}_{ell}"
            arrows.append(Arrow(z, FRAMING_VERTEX, v, WeightForm.of(x, -1)))
            arrows.append(Arrow(w, v, FRAMING_VERTEX, WeightForm.of(x) + _QQ))
            terms[v].append(_term(w, z))
    relations = tuple(
        Relation(tuple(terms[v]), _QQ, f"l_{v}") for v in graph.vertices if terms[v]
    )
    return FramedQuiver(graph.vertices + (FRAMING_VERTEX,), FRAMING_VERTEX, tuple(arrows), relations)


def chainsaw(n: int, r: Union[int, Sequence[int]]) -> FramedQuiver:
    """Chainsaw quiver on I = Z/nZ.

    B1_i: i→i+1 (q1), B2_i: i→i (q2), a: W_i→V_i and b: V_{i−1}→W_i; the
    relation from i to i+1 is B2 B1 − B1 B2 + a b.
    """
    if n < 1:
        raise InputError(f"Chainsaw quiver needs n >= 1, got {n}")
    vertices = tuple(str(i) for i in range(n))
    mult = _multiplicities(r, vertices)
    arrows: List[Arrow] = []
    for i in range(n):
        arrows.append(Arrow(f"B1_{i}", str(i), str((i + 1) % n), WeightForm.of(Q1)))
        arrows.append(Arrow(f"B2_{i}", str(i), str(i), WeightForm.of(Q2)))
    k = 0
    framings: Dict[int, List[Tuple[str, str]]] = {}
    for i in range(n):
        for ell in range(1, mult[str(i)] + 1):
            k += 1
            x = framing_variable(k)
            a, b = f"a_{i}_{ell}", f"b_{i}_{ell}"
            arrows.append(Arrow(a, FRAMING_VERTEX, str(i), WeightForm.of(x, -1)))
            arrows.append(Arrow(b, str((i - 1) % n), FRAMING_VERTEX, WeightForm.of(x) + _QQ))
            framings.setdefault(i, []).append((b, a))
    relations = []
    for i in range(n):
        nxt = (i + 1) % n
        terms = [_term(f"B1_{i}", f"B2_{nxt}"), _term(f"B2_{i}", f"B1_{i}", coeff=-1)]
        terms.extend(_term(b, a) for b, a in framings.get(nxt, []))
        relations.append(Relation(tuple(terms), _QQ, f"m_{i}"))
    return FramedQuiver(vertices + (FRAMING_VERTEX,), FRAMING_VERTEX, tuple(arrows), tuple(relations))


def blowup(r: int) -> FramedQuiver:
    """Blow-up quiver: B1, B2: V₁→V₀, d: V₀→V₁, z: W→V₀, w: V₁→W.

    Relation B1 d B2 − B2 d B1 + z w = 0 from vertex 1 to vertex 0.
    """
    if r < 0:
        raise InputError(f"Negative framing multiplicity {r}")
    arrows = [
        Arrow("B1", "1", "0", WeightForm.of(Q1)),
        Arrow("B2", "1", "0", WeightForm.of(Q2)),
        Arrow("d", "0", "1", ZERO_WEIGHT),
    ]
    terms = [_term("B2", "d", "B1"), _term("B1", "d", "B2", coeff=-1)]
    for ell in range(1, r + 1):
        x = framing_variable(ell)
        arrows.append(Arrow(f"z_{ell}", FRAMING_VERTEX, "0", WeightForm.of(x, -1)))
        arrows.append(Arrow(f"w_{ell}", "1", FRAMING_VERTEX, WeightForm.of(x) + _QQ))
        terms.append(_term(f"w_{ell}", f"z_{ell}"))
    relation = Relation(tuple(terms), _QQ, "l")
    return FramedQuiver(("0", "1", FRAMING_VERTEX), FRAMING_VERTEX, tuple(arrows), (relation,))


def flag(n: int, w: int) -> FramedQuiver:
    """Chain 1→2→⋯→n with ``w`` arrows 1→∞; no relations."""
    if n < 1 or w < 0:
        raise InputError(f"flag quiver needs n >= 1 and w >= 0, got n={n}, w={w}")
    vertices = tuple(str(i) for i in range(1, n + 1))
    arrows = [Arrow(f"a{i}", str(i), str(i + 1), ZERO_WEIGHT) for i in range(1, n)]
    arrows += [
        Arrow(f"f{ell}", "1", FRAMING_VERTEX, WeightForm.of(framing_variable(ell)))
        for ell in range(1, w + 1)
    ]
    return FramedQuiver(vertices + (FRAMING_VERTEX,), FRAMING_VERTEX, tuple(arrows))


def single_vertex(r: int) -> FramedQuiver:
    """One vertex 0 with ``r`` arrows ∞→0."""
    if r < 0:
        raise InputError(f"Negative framing multiplicity {r}")
    arrows = tuple(
        Arrow(f"z{ell}", FRAMING_VERTEX, "0", WeightForm.of(framing_variable(ell), -1))
        for ell in range(1, r + 1)
    )
    return FramedQuiver(("0", FRAMING_VERTEX), FRAMING_VERTEX, arrows)


def _graph_from_name(name: str) -> Graph:
    lowered = name.lower()
    if lowered == "jordan":
        return jordan_graph()
    if lowered.startswith("a") and lowered[1:].isdigit():
        return dynkin_a(int(lowered[1:]))
    raise InputError(f"Unknown graph {name!r}; use A<n> or jordan")


def _ints(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InputError(f"Expected a comma separated list of integers, got {text!r}") from None


def builtin(kind: str, *args) -> FramedQuiver:
    """Dispatch to a builder by name (``nakajima``, ``chainsaw``, ``blowup``, ``flag``, ``single-vertex``)."""
    builders = {
        "nakajima": nakajima,
        "chainsaw": chainsaw,
        "blowup": blowup,
        "flag": flag,
        "single-vertex": single_vertex,
    }
    try:
        builder = builders[kind]
    except KeyError:
        raise InputError(f"Unknown builtin quiver {kind!r}; choose from {sorted(builders)}") from None
    return builder(*args)


def builtin_from_spec(spec: str) -> FramedQuiver:
    """Build from text such as ``single-vertex:2``, ``flag:2:2`` or ``nakajima:A2:1,1``."""
    kind, _, rest = spec.partition(":")
    fields = rest.split(":") if rest else []
    try:
        if kind == "nakajima":
            graph = _graph_from_name(fields[0])
            r = _ints(fields[1])
            return nakajima(graph, r[0] if len(r) == 1 else r)
        if kind == "chainsaw":
            r = _ints(fields[1])
            return chainsaw(int(fields[0]), r[0] if len(r) == 1 else r)
        if kind == "flag":
            return flag(int(fields[0]), int(fields[1]))
        if kind in ("blowup", "single-vertex"):
            return builtin(kind, int(fields[0]))
    except (IndexError, ValueError):
        raise InputError(f"Malformed builtin quiver spec {spec!r}") from None
    raise InputError(f"Unknown builtin quiver {kind!r}")


__all__ = [
    "Graph",
    "dynkin_a",
    "jordan_graph",
    "nakajima",
    "chainsaw",
    "blowup",
    "flag",
    "single_vertex",
    "builtin",
    "builtin_from_spec",
]
