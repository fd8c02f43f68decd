"""Covers of simplicial complexes: nerves, reduced nerves, fattenings, and
the homology assembly bound."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .homology import (
    HomologySummary,
    TotalComplex,
    homology,
    homology_of_complex,
)
from .simplicial import ComplexError, SimplicialComplex, SimplicialMap, barycentric_subdivision


class CoverError(ValueError):
    pass


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("NERVEFORGE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class Cover:
    """Indexed subcomplexes of a shared ambient complex.

    Pieces must be distinct, nonempty and downward closed; a cover declared
    ``covering`` must exhaust the ambient simplices.
    """

    ambient: SimplicialComplex
    pieces: dict  # index -> frozenset of simplices
    covering: bool = False

    def __post_init__(self):
        seen = {}
        for i, sub in self.pieces.items():
            if not sub:
                raise CoverError(f"piece {i!r} is empty")
            if not sub <= self.ambient.simplices:
                raise CoverError(f"piece {i!r} is not inside the ambient complex")
            for s in sub:
                for k in range(1, len(s)):
                    from itertools import combinations
                    for f in combinations(s, k):
                        if f not in sub:
                            raise CoverError(f"piece {i!r} is not downward closed at {f}")
            if sub in seen.values():
                raise CoverError("duplicate pieces in cover")
            seen[i] = sub
        if self.covering and self.union() != self.ambient.simplices:
            raise CoverError("cover declared covering but does not exhaust the ambient")

    @property
    def indices(self):
        return sorted(self.pieces)

    def union(self) -> frozenset:
        out = frozenset()
        for sub in self.pieces.values():
            out |= sub
        return out

    def union_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self.union())


@dataclass(frozen=True)
class NerveComplex:
    """Nerve with the intersection subcomplex stored per simplex."""

    complex: SimplicialComplex
    intersections: dict  # tuple of indices -> frozenset of ambient simplices

    def simplices(self):
        return sorted(self.intersections, key=lambda a: (len(a), a))


def nerve(cover: Cover) -> NerveComplex:
    """Simplices are exactly the index sets with nonempty intersection."""
    idx = cover.indices
    inter: dict[tuple, frozenset] = {}
    frontier = []
    for i in idx:
        inter[(i,)] = cover.pieces[i]
        frontier.append((i,))
    while frontier:
        new = []
        for alpha in frontier:
            base = inter[alpha]
            start = idx.index(alpha[-1]) + 1
            for j in idx[start:]:
                meet = base & cover.pieces[j]
                if meet:
                    beta = alpha + (j,)
                    inter[beta] = meet
                    new.append(beta)
        frontier = new
    return NerveComplex(SimplicialComplex(frozenset(inter)), inter)


def saturate(nv: NerveComplex, alpha: tuple, cover: Cover) -> tuple:
    """The largest simplex with the same intersection: {i | X_i >= X_alpha}."""
    x = nv.intersections[tuple(sorted(alpha))]
    return tuple(sorted(i for i in cover.indices if x <= cover.pieces[i]))


@dataclass(frozen=True)
class ReducedNerve:
    """Order complex of the saturated simplices; along every chain the
    intersections strictly decrease."""

    complex: SimplicialComplex
    vertex_intersections: dict  # saturated simplex -> frozenset
    retraction: SimplicialMap = field(compare=False)
    subdivision: SimplicialComplex = field(compare=False)

    def chains(self):
        """Simplices as inclusion-ordered chains of saturated simplices."""
        return [
            tuple(sorted(ch, key=len))
            for ch in sorted(self.complex.simplices, key=lambda s: (len(s), s))
        ]


def reduced_nerve(cover: Cover, nv: NerveComplex | None = None) -> ReducedNerve:
    nv = nv or nerve(cover)
    sat = {alpha: saturate(nv, alpha, cover) for alpha in nv.intersections}
    saturated = sorted(set(sat.values()), key=lambda a: (len(a), a))
    vx = {a: nv.intersections[a] for a in saturated}

    chains: set[tuple] = set()

    def extend(chain):
        chains.add(tuple(sorted(chain)))
        last = chain[-1]
        for b in saturated:
            if len(b) > len(last) and set(last) < set(b):
                chain.append(b)
                extend(chain)
                chain.pop()

    for a in saturated:
        extend([a])
    rn = SimplicialComplex(frozenset(chains))

    sd = barycentric_subdivision(nv.complex)
    p = SimplicialMap(sd, sd, {alpha: sat[alpha] for alpha in nv.intersections})
    return ReducedNerve(complex=rn, vertex_intersections=vx, retraction=p, subdivision=sd)


def fattening(cover: Cover, nv: NerveComplex | None = None) -> TotalComplex:
    """Total complex of the intersection diagram over the nerve; its homology
    equals the homology of the union of the pieces."""
    nv = nv or nerve(cover)
    objects = list(nv.intersections)

    def face(alpha, l):
        if len(alpha) == 1:
            return None
        return alpha[:l] + alpha[l + 1:]

    return TotalComplex(objects, lambda a: nv.intersections[a], face)


def fattening_homology(cover: Cover, degrees=None, reduced=False) -> HomologySummary:
    return homology(fattening(cover).cc, degrees=degrees, reduced=reduced)


@dataclass(frozen=True)
class GoodnessReport:
    good: bool
    entries: dict  # nerve simplex -> (acyclic flag, reduced HomologySummary)

    def as_json(self):
        return {
            "good": self.good,
            "simplices": {
                ",".join(map(str, a)): {
                    "acyclic": flag,
                    "reduced_homology": summ.as_json(),
                }
                for a, (flag, summ) in sorted(self.entries.items())
            },
        }


def goodness_check(cover: Cover, nv: NerveComplex | None = None) -> GoodnessReport:
    """Reduced homology of every nonempty intersection; good iff all vanish."""
    nv = nv or nerve(cover)
    items = nv.simplices()

    def one(alpha):
        summ = homology_of_complex(SimplicialComplex(nv.intersections[alpha]), reduced=True)
        return alpha, (summ == HomologySummary.of({}), summ)

    workers = thread_count()
    if workers > 1 and len(items) > 4:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, items))
    else:
        results = [one(a) for a in items]
    entries = dict(sorted(results))
    return GoodnessReport(good=all(flag for flag, _ in entries.values()), entries=entries)


@dataclass(frozen=True)
class AssemblyVerdict:
    hypotheses_hold: bool
    conclusion_holds: bool
    implication_holds: bool
    degree_bound: int
    detail: dict
    certificate: dict | None = None


def assembly_bound_check(cover: Cover, n: int) -> AssemblyVerdict:
    """If every k-simplex of the reduced nerve has coefficient homology
    vanishing in degrees >= n-k and the reduced nerve has no homology in
    degrees >= n, then the union has none either; a certificate is returned
    when the implication fails (which must never happen)."""
    nv = nerve(cover)
    rn = reduced_nerve(cover, nv)

    coeff_ok = True
    coeff_detail = {}
    for chain in rn.chains():
        k = len(chain) - 1
        smallest = chain[-1]
        summ = homology_of_complex(
            SimplicialComplex(rn.vertex_intersections[smallest]), reduced=True
        )
        ok = summ.is_trivial_at_or_above(n - k)
        coeff_detail[chain] = ok
        coeff_ok = coeff_ok and ok

    rn_summary = homology_of_complex(rn.complex)
    nerve_ok = rn_summary.is_trivial_at_or_above(n)

    union_summary = homology_of_complex(cover.union_complex())
    conclusion = union_summary.is_trivial_at_or_above(n)

    hypotheses = coeff_ok and nerve_ok
    certificate = None
    if hypotheses and not conclusion:
        certificate = {
            "union_homology": union_summary.as_json(),
            "degree_bound": n,
        }
    return AssemblyVerdict(
        hypotheses_hold=hypotheses,
        conclusion_holds=conclusion,
        implication_holds=not (hypotheses and not conclusion),
        degree_bound=n,
        detail={
            "coefficients_vanish": coeff_ok,
            "reduced_nerve_vanishes": nerve_ok,
            "reduced_nerve_homology": rn_summary.as_json(),
            "union_homology": union_summary.as_json(),
        },
        certificate=certificate,
    )


def nerve_homology(cover: Cover, reduced=False) -> HomologySummary:
    return homology_of_complex(nerve(cover).complex, reduced=reduced)
