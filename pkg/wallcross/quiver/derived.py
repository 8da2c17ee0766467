"""Quivers derived from a framed quiver: the enhancement Q̃ and Q♯."""
from __future__ import annotations

from typing import Optional

from ..constants import SHARP_SUFFIX, flag_vertex
from ..errors import InputError
from ..symbolic import ZERO_WEIGHT
from .structures import Arrow, FramedQuiver


def enhanced_quiver(q: FramedQuiver, zero: str, length: int, alpha0: Optional[int] = None) -> FramedQuiver:
    """Attach the chain (0,1)→(0,2)→⋯→(0,L)→0 to vertex ``zero``.

    Relations are unchanged. When ``alpha0`` is given, ``length`` must be at
    least α₀.
    """
    if zero not in q.internal_vertices:
        raise InputError(f"Vertex {zero!r} is not an internal vertex")
    if length < 0:
        raise InputError(f"Chain length must be non-negative, got {length}")
    if alpha0 is not None and length < alpha0:
        raise InputError(f"Chain length {length} is shorter than alpha_0 = {alpha0}")
    if length == 0:
        return q
    chain = tuple(flag_vertex(zero, k) for k in range(1, length + 1))
    clash = set(chain) & set(q.vertices)
    if clash:
        raise InputError(f"Chain vertices {sorted(clash)} already exist")
    arrows = [
        Arrow(f"{chain[k]}>", chain[k], chain[k + 1] if k + 1 < length else zero, ZERO_WEIGHT)
        for k in range(length)
    ]
    return FramedQuiver(
        q.internal_vertices + chain + (q.framing,),
        q.framing,
        q.arrows + tuple(arrows),
        q.relations,
    )


def sharp_quiver(q: FramedQuiver, zero: str) -> FramedQuiver:
    """Add a new framing vertex ∞′ and an arrow ∞′ → 0; the old ∞ becomes internal."""
    if zero not in q.internal_vertices:
        raise InputError(f"Vertex {zero!r} is not an internal vertex")
    new_framing = q.framing + SHARP_SUFFIX
    while new_framing in q.vertices:
        new_framing += SHARP_SUFFIX
    arrow_id = f"{new_framing}>{zero}"
    existing = {a.id for a in q.arrows}
    while arrow_id in existing:
        arrow_id += SHARP_SUFFIX
    return FramedQuiver(
        q.vertices + (new_framing,),
        new_framing,
        q.arrows + (Arrow(arrow_id, new_framing, zero, ZERO_WEIGHT),),
        q.relations,
    )


__all__ = ["enhanced_quiver", "sharp_quiver"]
