"""Clump calculus over group-labeled patch systems and the unfolding space.

Patches are subcomplexes labeled by lattice subgroups.  Clumps are unions of
nerve intersections whose generated label group contains a given group; the
maximal-clump machinery finds the clumps definable by infinite minimal
groups together with their largest minimal groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .covers import Cover, nerve
from .homology import (
    HomologySummary,
    TotalComplex,
    degree_homology,
    homology,
    homology_of_complex,
    induced_map_on_homology,
)
from .lattices import (
    LatticeSubgroup,
    finite_index_in,
    intersect,
    join,
    join_all,
    virtually_contains,
)
from .simplicial import SimplicialComplex, union_all
from .snf import solve_integer


class ClumpError(ValueError):
    pass


@lru_cache(maxsize=None)
def _join(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    return join(a, b)


@lru_cache(maxsize=None)
def _intersect(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    return intersect(a, b)


@dataclass(frozen=True)
class Patch:
    support: frozenset
    group: LatticeSubgroup
    parabolic: bool = False
    rank_annotation: int | None = None


@dataclass(frozen=True)
class PatchSystem:
    ambient: SimplicialComplex
    patches: dict  # index -> Patch
    enlargements: dict = field(default_factory=dict)  # key tuple -> frozenset

    def __post_init__(self):
        ranks = {p.group.ambient for p in self.patches.values()}
        if len(ranks) > 1:
            raise ClumpError("patch labels live in different ambient lattice ranks")
        for key, sup in self.enlargements.items():
            base = self._plain_intersection(tuple(sorted(key)))
            if base is None:
                raise ClumpError(f"enlargement for non-simplex {key}")
            if not base <= sup:
                raise ClumpError(f"enlargement for {key} does not contain the patch piece")
            if not sup <= self.ambient.simplices:
                raise ClumpError(f"enlargement for {key} leaves the ambient complex")

    def _plain_intersection(self, sigma: tuple):
        out = None
        for i in sigma:
            if i not in self.patches:
                return None
            s = self.patches[i].support
            out = s if out is None else out & s
        return out

    def cover(self) -> Cover:
        return Cover(self.ambient, {i: p.support for i, p in self.patches.items()})

    @property
    def lattice_ambient(self) -> int:
        return next(iter(self.patches.values())).group.ambient

    def union_support(self) -> frozenset:
        return union_all([p.support for p in self.patches.values()])

    def has_enlargements(self) -> bool:
        return bool(self.enlargements)

    def enlargement_of(self, sigma: tuple) -> frozenset:
        """Per-simplex enlargement: explicit entry, else intersection of the
        member patches' entries, else the plain intersection (identity)."""
        sigma = tuple(sorted(sigma))
        if sigma in self.enlargements:
            return self.enlargements[sigma]
        if self.enlargements:
            parts = []
            for i in sigma:
                parts.append(self.enlargements.get((i,), self.patches[i].support))
            out = parts[0]
            for p in parts[1:]:
                out = out & p
            return out
        base = self._plain_intersection(sigma)
        if base is None:
            raise ClumpError(f"{sigma} is not a nerve simplex")
        return base


class PatchNerve:
    """Nerve of the patch supports with cached label joins per simplex."""

    def __init__(self, ps: PatchSystem):
        self.ps = ps
        self.nerve = nerve(ps.cover())
        d = ps.lattice_ambient
        self.groups: dict[tuple, LatticeSubgroup] = {}
        for sigma in self.nerve.simplices():
            g = LatticeSubgroup.trivial(d)
            for i in sigma:
                g = _join(g, ps.patches[i].group)
            self.groups[sigma] = g

    def simplices(self):
        return list(self.groups)

    def intersection(self, sigma):
        return self.nerve.intersections[tuple(sorted(sigma))]


def group_of_simplex(ps: PatchSystem, sigma: tuple, pn: PatchNerve | None = None) -> LatticeSubgroup:
    """Join of the patch labels over a nerve simplex."""
    pn = pn or PatchNerve(ps)
    key = tuple(sorted(sigma))
    if key not in pn.groups:
        raise ClumpError(f"{sigma} is not a simplex of the patch nerve")
    return pn.groups[key]


@dataclass(frozen=True)
class Clump:
    group: LatticeSubgroup
    support: frozenset
    simplices: tuple

    def is_empty(self):
        return not self.support


def clump(ps: PatchSystem, n: LatticeSubgroup, pn: PatchNerve | None = None) -> Clump:
    """Union of the intersections whose generated label contains n."""
    pn = pn or PatchNerve(ps)
    contributing = tuple(
        sigma for sigma in pn.simplices() if pn.groups[sigma].contains(n)
    )
    support = union_all([pn.intersection(s) for s in contributing])
    return Clump(group=n, support=support, simplices=contributing)


@dataclass(frozen=True)
class IntersectionFormulaVerdict:
    ok: bool
    certificate: tuple | None = None


def intersection_formula_check(
    ps: PatchSystem, n: LatticeSubgroup, m: LatticeSubgroup, pn: PatchNerve | None = None
) -> IntersectionFormulaVerdict:
    """Y_N ∩ Y_M = Y_<N,M> as exact subcomplex equality."""
    pn = pn or PatchNerve(ps)
    lhs = clump(ps, n, pn).support & clump(ps, m, pn).support
    rhs = clump(ps, _join(n, m), pn).support
    if lhs == rhs:
        return IntersectionFormulaVerdict(ok=True)
    diff = (lhs - rhs) | (rhs - lhs)
    return IntersectionFormulaVerdict(ok=False, certificate=sorted(diff)[0])


def is_minimal(ps: PatchSystem, n: LatticeSubgroup, pn: PatchNerve | None = None) -> bool:
    """Every simplex label either contains n or meets it in infinite index."""
    pn = pn or PatchNerve(ps)
    for sigma in pn.simplices():
        g = pn.groups[sigma]
        if g.contains(n):
            continue
        meet = _intersect(n, g)
        if meet.rank >= n.rank:
            return False
    return True


@dataclass(frozen=True)
class MaximalClump:
    support: frozenset
    group: LatticeSubgroup  # the largest minimal group
    rank: int
    simplices: tuple
    big_support: frozenset

    def key(self):
        return (-len(self.support), self.group.key())


def _candidate_groups(pn: PatchNerve) -> list[LatticeSubgroup]:
    """Closure of the simplex labels under intersection; every maximal clump
    is definable by a minimal group from this finite set."""
    pool = {g.key(): g for g in pn.groups.values()}
    frontier = list(pool.values())
    while frontier:
        new = []
        for a in frontier:
            for b in list(pool.values()):
                c = _intersect(a, b)
                if c.key() not in pool:
                    pool[c.key()] = c
                    new.append(c)
        frontier = new
    return list(pool.values())


def maximal_clumps(ps: PatchSystem, pn: PatchNerve | None = None) -> list[MaximalClump]:
    """Clumps definable by infinite minimal groups, each with its largest
    minimal group, filtered to those virtually containing some infinite
    patch label."""
    pn = pn or PatchNerve(ps)
    candidates = [
        g for g in _candidate_groups(pn)
        if g.is_infinite() and is_minimal(ps, g, pn)
    ]
    by_support: dict[frozenset, list[LatticeSubgroup]] = {}
    for g in candidates:
        y = clump(ps, g, pn)
        if y.is_empty():
            continue
        by_support.setdefault(y.support, []).append(g)

    out = []
    d = ps.lattice_ambient
    for support, groups in by_support.items():
        n_alpha = join_all(groups, d)
        if not is_minimal(ps, n_alpha, pn):
            raise AssertionError("join of minimal groups failed to be minimal")
        y = clump(ps, n_alpha, pn)
        if y.support != support:
            raise AssertionError("largest minimal group defines a different clump")
        keep = any(
            p.group.is_infinite() and virtually_contains(n_alpha, p.group)
            for p in ps.patches.values()
        )
        if not keep:
            continue
        big = union_all([ps.enlargement_of(s) for s in y.simplices]) if y.simplices else frozenset()
        out.append(
            MaximalClump(
                support=support,
                group=n_alpha,
                rank=n_alpha.rank,
                simplices=y.simplices,
                big_support=big,
            )
        )
    out.sort(key=MaximalClump.key)
    return out


@dataclass(frozen=True)
class GrowingRanksVerdict:
    ok: bool
    ranks: tuple[int, ...]


def growing_ranks_check(chain: list[MaximalClump]) -> GrowingRanksVerdict:
    """Along a strictly decreasing chain of maximal clumps the minimal-group
    ranks grow at least linearly."""
    for a, b in zip(chain, chain[1:]):
        if not (b.support < a.support):
            raise ClumpError("chain of clumps is not strictly decreasing")
    ranks = tuple(c.rank for c in chain)
    k = len(chain) - 1
    ok = all(r2 > r1 for r1, r2 in zip(ranks, ranks[1:])) and (
        not chain or ranks[-1] >= k + ranks[0]
    )
    return GrowingRanksVerdict(ok=ok, ranks=ranks)


def clump_chains(clumps: list[MaximalClump]) -> list[tuple[int, ...]]:
    """All strictly decreasing chains (by support) of maximal-clump indices."""
    order = sorted(range(len(clumps)), key=lambda i: -len(clumps[i].support))
    chains: list[tuple[int, ...]] = []

    def extend(chain):
        chains.append(tuple(chain))
        last = chain[-1]
        for j in order:
            if clumps[j].support < clumps[last].support:
                chain.append(j)
                extend(chain)
                chain.pop()

    for i in order:
        extend([i])
    return chains


@dataclass
class UnfoldingSpace:
    clumps: list[MaximalClump]
    chains: list[tuple[int, ...]]
    unfolded: TotalComplex       # coefficients: big supports
    folded: TotalComplex         # coefficients: plain supports
    union_support: frozenset

    def chain_map_folded_to_unfolded(self):
        """Basis-identity chain map between the two total complexes."""
        cm: dict[int, dict[int, dict[int, int]]] = {}
        for d, labels in self.folded.cc.basis.items():
            cols = {}
            tgt = self.unfolded.index.get(d, {})
            for col, lab in enumerate(labels):
                cols[col] = {tgt[lab]: 1}
            cm[d] = cols
        return cm

    def push_cycle(self, cycle: dict, d: int) -> list[int]:
        """Lift a cycle of the clump union through the folded model and push
        it into the unfolding complex."""
        lifted = self.folded.lift_cycle(cycle, d)
        out = [0] * self.unfolded.cc.dim(d)
        for col, v in enumerate(lifted):
            if v:
                lab = self.folded.cc.basis[d][col]
                out[self.unfolded.index[d][lab]] += v
        return out

    def fill(self, vector: list[int], d: int):
        """Explicit chain with boundary equal to the given cycle, or None."""
        mat = self.unfolded.cc.dense_boundary(d + 1)
        if not mat or not mat[0]:
            return None if any(vector) else []
        return solve_integer(mat, vector)


def unfolding_space(ps: PatchSystem, pn: PatchNerve | None = None) -> UnfoldingSpace:
    """Total complexes over strictly decreasing maximal-clump chains, with
    coefficients the enlarged (resp. plain) clump supports."""
    pn = pn or PatchNerve(ps)
    clumps_list = maximal_clumps(ps, pn)
    if not clumps_list:
        raise ClumpError("no maximal clumps: unfolding space is empty")
    chains = clump_chains(clumps_list)

    def face(o, l):
        if len(o) == 1:
            return None
        return o[:l] + o[l + 1:]

    unfolded = TotalComplex(
        chains, lambda o: clumps_list[o[-1]].big_support, face
    )
    folded = TotalComplex(
        chains, lambda o: clumps_list[o[-1]].support, face
    )
    union = union_all([c.support for c in clumps_list])
    return UnfoldingSpace(
        clumps=clumps_list,
        chains=chains,
        unfolded=unfolded,
        folded=folded,
        union_support=union,
    )


@dataclass(frozen=True)
class UnfoldingVanishingVerdict:
    ok: bool
    hypotheses_hold: bool
    detail: dict
    violations: tuple = ()


def unfolding_vanishing_check(ps: PatchSystem, n: int, r: int) -> UnfoldingVanishingVerdict:
    """Per-chain coefficient vanishing implies the unfolding complex has no
    homology in degrees >= n-1-r and the union's classes die there."""
    threshold = n - 1 - r
    if threshold < 1:
        raise ClumpError("degree threshold below 1; scenario constants invalid")
    us = unfolding_space(ps)
    violations = []
    for chain in us.chains:
        k = len(chain) - 1
        need = n - 1 - (k + r)
        coeff = SimplicialComplex(us.clumps[chain[-1]].big_support)
        summ = homology_of_complex(coeff, reduced=True)
        if not summ.is_trivial_at_or_above(max(need, 1)):
            violations.append(
                {"chain": chain, "required_degree": need, "homology": summ.as_json()}
            )
    hypotheses = not violations

    u_summary = homology(us.unfolded.cc)
    vanish = u_summary.is_trivial_at_or_above(threshold)

    union_cx = SimplicialComplex(us.union_support)
    union_cc = us.folded.cc  # quasi-isomorphic model of the union
    composite_zero = True
    top = union_cx.dimension
    from .homology import chain_complex

    plain_cc = chain_complex(union_cx)
    for d in range(threshold, max(top, threshold - 1) + 1):
        h = degree_homology(plain_cc, d)
        tgt = degree_homology(us.unfolded.cc, d)
        for gen in h.generators:
            cycle = {
                plain_cc.basis[d][i]: v for i, v in enumerate(gen) if v
            }
            pushed = us.push_cycle(cycle, d)
            if not tgt.class_is_zero(pushed):
                composite_zero = False
    ok = hypotheses and vanish and composite_zero
    return UnfoldingVanishingVerdict(
        ok=ok,
        hypotheses_hold=hypotheses,
        detail={
            "threshold_degree": threshold,
            "unfolding_homology": u_summary.as_json(),
            "unfolding_vanishes": vanish,
            "composite_zero": composite_zero,
        },
        violations=tuple(
            tuple(sorted(v.items())) for v in violations
        ),
    )


@dataclass(frozen=True)
class EngulfingVerdict:
    ok: bool
    failures: tuple = ()


def engulfing_check(ps: PatchSystem, pn: PatchNerve | None = None) -> EngulfingVerdict:
    """Semisimple enlargements reverse inclusion: for semisimple rho inside
    sigma, the rho-enlargement contains the sigma-enlargement; consequently
    the semisimple union engulfs the mixed region."""
    pn = pn or PatchNerve(ps)
    semisimple = {i for i, p in ps.patches.items() if not p.parabolic}
    failures = []
    simplices = pn.simplices()
    for rho in simplices:
        if not set(rho) <= semisimple:
            continue
        z_rho = ps.enlargement_of(rho)
        for sigma in simplices:
            if set(rho) < set(sigma):
                if not ps.enlargement_of(sigma) <= z_rho:
                    failures.append(("containment", rho, sigma))
    s_union = union_all([pn.intersection(s) for s in simplices if set(s) <= semisimple])
    s_big = union_all([ps.enlargement_of((i,)) for i in sorted(semisimple)]) if semisimple else frozenset()
    mixed = [
        s for s in simplices
        if (set(s) & semisimple) and (set(s) - semisimple)
    ]
    mixed_big = union_all([ps.enlargement_of(s) for s in mixed])
    if not (mixed_big | s_union) <= s_big:
        failures.append(("engulfing", None, None))
    return EngulfingVerdict(ok=not failures, failures=tuple(failures))


def patch_union_decomposition_ok(ps: PatchSystem, pn: PatchNerve | None = None) -> bool:
    """Union of patches = union of maximal clumps plus finite-label patches."""
    pn = pn or PatchNerve(ps)
    clumps_list = maximal_clumps(ps, pn)
    rhs = union_all(
        [c.support for c in clumps_list]
        + [p.support for p in ps.patches.values() if not p.group.is_infinite()]
    )
    return ps.union_support() == rhs
