"""Finite simplicial complexes, subcomplexes and simplicial maps.

A simplex is a tuple of vertex ids sorted in the ambient vertex order
(orientation convention: boundary signs alternate by position in that
order).  Complexes are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations


class ComplexError(ValueError):
    pass


def _check_vertex_types(vertices):
    kinds = {type(v).__name__ for v in vertices}
    if len(kinds) > 1:
        raise ComplexError(f"mixed vertex id types: {sorted(kinds)}")


def normalize_simplex(simplex) -> tuple:
    _check_vertex_types(simplex)
    s = tuple(sorted(simplex))
    if len(set(s)) != len(s):
        raise ComplexError(f"repeated vertex in simplex {simplex}")
    return s


def close_downward(simplices) -> frozenset:
    """All faces of the given simplices (including themselves)."""
    out = set()
    for s in simplices:
        s = normalize_simplex(s)
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return frozenset(out)


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed set of simplices over orderable, hashable vertex ids."""

    simplices: frozenset = field(default_factory=frozenset)

    @staticmethod
    def from_maximal(simplices) -> "SimplicialComplex":
        closed = close_downward(simplices)
        _check_vertex_types({v for s in closed for v in s})
        return SimplicialComplex(closed)

    @staticmethod
    def from_simplices(simplices, *, strict: bool = True) -> "SimplicialComplex":
        """Build from an explicit simplex list; with strict=True the list must
        already be downward closed and duplicate-free."""
        given = [normalize_simplex(s) for s in simplices]
        if strict and len(set(given)) != len(given):
            raise ComplexError("duplicate simplices")
        closed = close_downward(given)
        if strict and set(given) != set(closed):
            missing = sorted(closed - set(given))[:3]
            raise ComplexError(f"not downward closed, e.g. missing {missing}")
        _check_vertex_types({v for s in closed for v in s})
        return SimplicialComplex(closed)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for s in self.simplices for v in s)

    @property
    def dimension(self) -> int:
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def simplices_of_dim(self, d: int) -> list[tuple]:
        return sorted(s for s in self.simplices if len(s) == d + 1)

    def is_empty(self) -> bool:
        return not self.simplices

    def contains_complex(self, other: "SimplicialComplex") -> bool:
        return other.simplices <= self.simplices

    def __le__(self, other):
        return self.simplices <= other.simplices

    def __len__(self):
        return len(self.simplices)


EMPTY_COMPLEX = SimplicialComplex()


@dataclass(frozen=True)
class Subcomplex:
    """A downward-closed simplex set inside a fixed ambient complex."""

    ambient: SimplicialComplex
    simplices: frozenset

    @staticmethod
    def of(ambient: SimplicialComplex, simplices) -> "Subcomplex":
        closed = close_downward(simplices)
        if not closed <= ambient.simplices:
            bad = sorted(closed - ambient.simplices)[:3]
            raise ComplexError(f"simplices outside the ambient complex: {bad}")
        return Subcomplex(ambient, closed)

    def _require_same_ambient(self, other: "Subcomplex"):
        if self.ambient is not other.ambient and self.ambient != other.ambient:
            raise ComplexError("subcomplex operation across different ambient complexes")

    def union(self, other: "Subcomplex") -> "Subcomplex":
        self._require_same_ambient(other)
        return Subcomplex(self.ambient, self.simplices | other.simplices)

    def intersection(self, other: "Subcomplex") -> "Subcomplex":
        self._require_same_ambient(other)
        return Subcomplex(self.ambient, self.simplices & other.simplices)

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.simplices)

    def is_empty(self) -> bool:
        return not self.simplices

    def __le__(self, other):
        return self.simplices <= other.simplices

    def __len__(self):
        return len(self.simplices)


def intersect_all(subs: list[frozenset]) -> frozenset:
    if not subs:
        return frozenset()
    out = subs[0]
    for s in subs[1:]:
        out = out & s
    return out


def union_all(subs: list[frozenset]) -> frozenset:
    out = frozenset()
    for s in subs:
        out = out | s
    return out


def barycentric_subdivision(c: SimplicialComplex) -> SimplicialComplex:
    """Subdivision whose vertices are simplices of c and whose k-simplices
    are strictly increasing chains of length k+1."""
    simplices = sorted(c.simplices, key=lambda s: (len(s), s))
    chains: set[tuple] = set()

    def extend(chain, last):
        chains.add(tuple(sorted(chain)))
        for s in simplices:
            if len(s) > len(last) and set(last) < set(s):
                chain.append(s)
                extend(chain, s)
                chain.pop()

    for s in simplices:
        extend([s], s)
    return SimplicialComplex(frozenset(chains))


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex assignment inducing a map of complexes; images of simplices may
    collapse (they must span a target simplex)."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: dict

    def __post_init__(self):
        for v in self.source.vertices:
            if v not in self.vertex_map:
                raise ComplexError(f"vertex map undefined at {v!r}")
        for s in self.source.simplices:
            img = tuple(sorted(set(self.vertex_map[v] for v in s)))
            if img not in self.target.simplices:
                raise ComplexError(f"image of {s} is not a target simplex")

    def image_simplex(self, s: tuple):
        """Image tuple (sorted, deduplicated) and parity sign; sign is 0 when
        the image is degenerate."""
        img = [self.vertex_map[v] for v in s]
        if len(set(img)) != len(img):
            return None, 0
        order = sorted(range(len(img)), key=lambda i: img[i])
        inversions = sum(
            1 for a in range(len(order)) for b in range(a + 1, len(order))
            if order[a] > order[b]
        )
        return tuple(sorted(img)), (-1) ** inversions

    @staticmethod
    def inclusion(source: SimplicialComplex, target: SimplicialComplex) -> "SimplicialMap":
        if not target.contains_complex(source):
            raise ComplexError("inclusion source is not a subcomplex of the target")
        return SimplicialMap(source, target, {v: v for v in source.vertices})

    @staticmethod
    def identity(c: SimplicialComplex) -> "SimplicialMap":
        return SimplicialMap(c, c, {v: v for v in c.vertices})

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        if not self.source.contains_complex(other.target):
            raise ComplexError("composition mismatch")
        return SimplicialMap(
            other.source, self.target,
            {v: self.vertex_map[w] for v, w in other.vertex_map.items()},
        )
