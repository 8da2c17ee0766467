"""Decomposition data 𝕴 = (𝔨I₁,…,𝔨I_j) and the s-statistic.

A datum is an ordered tuple of disjoint nonempty subsets of [α₀], each of
size divisible by β₀, ordered so that min(𝔨I₁) > ⋯ > min(𝔨I_j). The
complement of their union is 𝔨I_∞.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from .errors import InputError

logger = logging.getLogger(__name__)

IndexSet = Tuple[int, ...]


def _canonical(subset: Iterable[int]) -> IndexSet:
    return tuple(sorted(subset))


def _format_set(subset: Sequence[int]) -> str:
    return "{" + ",".join(str(i) for i in subset) + "}"


# ====== the datum ======

@dataclass(frozen=True)
class DecompositionDatum:
    parts: Tuple[IndexSet, ...]
    alpha0: int
    beta0: int = 1

    def __post_init__(self) -> None:
        parts = tuple(_canonical(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if self.beta0 < 1:
            raise InputError(f"beta_0 must be positive, got {self.beta0}")
        seen: set = set()
        for p in parts:
            if not p:
                raise InputError("Decomposition parts must be nonempty")
            if len(p) % self.beta0:
                raise InputError(f"Part {_format_set(p)} has size not divisible by beta_0 = {self.beta0}")
            if p[0] < 1 or p[-1] > self.alpha0:
                raise InputError(f"Part {_format_set(p)} is not inside [1, {self.alpha0}]")
            if seen & set(p):
                raise InputError(f"Parts of {self._text(parts)} are not disjoint")
            seen.update(p)
        mins = [p[0] for p in parts]
        if any(a <= b for a, b in zip(mins, mins[1:])):
            raise InputError(f"Parts of {self._text(parts)} must have strictly decreasing minima")

    @staticmethod
    def _text(parts: Sequence[IndexSet]) -> str:
        return "(" + ",".join(_format_set(p) for p in parts) + ")"

    @property
    def j(self) -> int:
        return len(self.parts)

    @property
    def d(self) -> Tuple[int, ...]:
        return tuple(len(p) // self.beta0 for p in self.parts)

    @property
    def k(self) -> int:
        """|d_𝕴| = ∑ d_i."""
        return sum(self.d)

    @property
    def infinity(self) -> IndexSet:
        used = set(itertools.chain.from_iterable(self.parts))
        return tuple(i for i in range(1, self.alpha0 + 1) if i not in used)

    def tail(self, i: int) -> IndexSet:
        """𝕴_{>i} = 𝔨I_∞ ⊔ ⨆_{m>i} 𝔨I_m, with parts indexed from 0."""
        rest = set(self.infinity)
        for p in self.parts[i + 1:]:
            rest.update(p)
        return _canonical(rest)

    def to_text(self) -> str:
        return self._text(self.parts)

    def __str__(self) -> str:
        return self.to_text()


# ====== s-statistic ======

def s_statistic(a: Iterable[int], b: Iterable[int]) -> int:
    """#{(l,l′) ∈ A×B : l < l′} − #{(l,l′) ∈ A×B : l > l′}."""
    a, b = list(a), list(b)
    if set(a) & set(b):
        raise InputError(f"s-statistic needs disjoint sets, got {_format_set(sorted(a))} and {_format_set(sorted(b))}")
    return sum((x < y) - (x > y) for x in a for y in b)


# ====== enumeration ======

def dec_ell(ell: int, index_set: Iterable[int], beta0: int) -> List[IndexSet]:
    """D^ℓ(𝔨I): subsets of 𝔨I of size d♯β₀ > 0 with min ≤ ℓ.

    Ordered by size, then lexicographically.
    """
    if beta0 < 1:
        raise InputError(f"beta_0 must be positive, got {beta0}")
    base = _canonical(index_set)
    out = []
    for size in range(beta0, len(base) + 1, beta0):
        for subset in itertools.combinations(base, size):
            if subset[0] <= ell:
                out.append(subset)
    return out


def set_partitions(items: Sequence[int], blocks: int) -> Iterator[Tuple[IndexSet, ...]]:
    """Partitions of ``items`` into exactly ``blocks`` nonempty blocks."""
    if blocks < 1 or blocks > len(items):
        return
    for partition in multiset_partitions(list(items), blocks):
        yield tuple(_canonical(block) for block in partition)


def dec_sets(alpha0: int, beta0: int, j: int) -> List[DecompositionDatum]:
    """Dec_{β₀,j}^{α₀} by choosing 𝔨I_∞ and partitioning the rest into j blocks."""
    if j < 1:
        raise InputError(f"j must be positive, got {j}")
    if alpha0 < 0 or beta0 < 1:
        raise InputError(f"Need alpha_0 >= 0 and beta_0 >= 1, got {alpha0}, {beta0}")
    universe = tuple(range(1, alpha0 + 1))
    out = []
    for used_size in range(j * beta0, alpha0 + 1, beta0):
        for used in itertools.combinations(universe, used_size):
            for blocks in set_partitions(used, j):
                if any(len(b) % beta0 for b in blocks):
                    continue
                parts = tuple(sorted(blocks, key=lambda b: b[0], reverse=True))
                out.append(DecompositionDatum(parts, alpha0, beta0))
    out.sort(key=lambda datum: datum.parts)
    logger.debug("Dec_{%d,%d}^%d has %d elements", beta0, j, alpha0, len(out))
    return out


def dec_sets_recursive(alpha0: int, beta0: int, j: int) -> List[DecompositionDatum]:
    """Dec_{β₀,j}^{α₀} built part by part: 𝔨I_{j+1} ∈ D^{min(𝔨I_j)−1}(𝔨I_∞)."""
    if j < 1:
        raise InputError(f"j must be positive, got {j}")
    level: List[Tuple[IndexSet, ...]] = [(p,) for p in dec_ell(alpha0, range(1, alpha0 + 1), beta0)]
    for _ in range(j - 1):
        grown = []
        for parts in level:
            used = set(itertools.chain.from_iterable(parts))
            rest = [i for i in range(1, alpha0 + 1) if i not in used]
            for nxt in dec_ell(parts[-1][0] - 1, rest, beta0):
                grown.append(parts + (nxt,))
        level = grown
    out = [DecompositionDatum(parts, alpha0, beta0) for parts in level]
    out.sort(key=lambda datum: datum.parts)
    return out


def all_dec_sets(alpha0: int, beta0: int) -> List[DecompositionDatum]:
    """Dec(α₀) = ⨆_{j=1}^{⌊α₀/β₀⌋} Dec_{β₀,j}^{α₀}."""
    out: List[DecompositionDatum] = []
    for j in range(1, alpha0 // beta0 + 1):
        out.extend(dec_sets(alpha0, beta0, j))
    return out


def partial_decompositions(d: Sequence[int], n: int, beta0: int = 1) -> Iterator[Tuple[IndexSet, ...]]:
    """Disjoint parts of [n] with |𝔨I_i| = d_iβ₀ and max(𝔨I_1) > ⋯ > max(𝔨I_j).

    Whatever the parts leave out of [n] is the leftover 𝔨I_∞.
    """
    if any(x <= 0 for x in d):
        raise InputError(f"Part multiplicities must be positive, got {list(d)}")
    if beta0 < 1:
        raise InputError(f"beta_0 must be positive, got {beta0}")
    sizes = [x * beta0 for x in d]
    if sum(sizes) > n:
        return

    def extend(prefix: Tuple[IndexSet, ...], free: FrozenSet[int], remaining: List[int]):
        if not remaining:
            yield prefix
            return
        bound = prefix[-1][-1] if prefix else n + 1
        for subset in itertools.combinations(sorted(free), remaining[0]):
            if subset[-1] < bound:
                yield from extend(prefix + (subset,), free - set(subset), remaining[1:])

    yield from extend((), frozenset(range(1, n + 1)), sizes)


__all__ = [
    "IndexSet",
    "DecompositionDatum",
    "s_statistic",
    "dec_ell",
    "set_partitions",
    "dec_sets",
    "dec_sets_recursive",
    "all_dec_sets",
    "partial_decompositions",
]
