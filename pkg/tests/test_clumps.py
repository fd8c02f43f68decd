import random
from itertools import combinations

import pytest

from nerveforge.construct import grid_complex, path_complex, rect_subcomplex, two_ball_gluing
from nerveforge.clumps import (
    Clump,
    ClumpError,
    Patch,
    PatchNerve,
    PatchSystem,
    clump,
    clump_chains,
    engulfing_check,
    group_of_simplex,
    growing_ranks_check,
    intersection_formula_check,
    is_minimal,
    maximal_clumps,
    patch_union_decomposition_ok,
    unfolding_space,
    unfolding_vanishing_check,
)
from nerveforge.construct import interval_subcomplex
from nerveforge.homology import HomologySummary, homology, homology_of_complex
from nerveforge.lattices import LatticeSubgroup, join
from nerveforge.simplicial import SimplicialComplex


def L(rows, d=2):
    return LatticeSubgroup.from_generators(rows, d)


E1 = L([[1, 0]])
E2 = L([[0, 1]])
DIAG = L([[1, 1]])
TWO_E1 = L([[2, 0]])
Z2 = L([[1, 0], [0, 1]])
TRIV = LatticeSubgroup.trivial(2)

LABEL_ALPHABET = [E1, E2, DIAG, TWO_E1, Z2, TRIV,
                  L([[0, 1], [2, 0]]), L([[1, 1], [2, 0]])]


def interval_patch_system(path, spans, labels, parabolic=None):
    patches = {}
    for k, ((a, b), g) in enumerate(zip(spans, labels)):
        patches[k] = Patch(
            support=interval_subcomplex(path, a, b).simplices,
            group=g,
            parabolic=bool(parabolic and parabolic[k]),
        )
    return PatchSystem(ambient=path, patches=patches)


def introduction_system():
    ambient, u, v, membrane, cycle = two_ball_gluing()
    patches = {
        "U": Patch(support=u, group=E1),
        "V": Patch(support=v, group=E2),
        "W": Patch(support=membrane, group=Z2),
    }
    return PatchSystem(ambient=ambient, patches=patches), cycle


def test_group_of_simplex():
    path = path_complex(6)
    ps = interval_patch_system(path, [(0, 3), (2, 5)], [E1, E2])
    pn = PatchNerve(ps)
    assert group_of_simplex(ps, (0,), pn) == E1
    assert group_of_simplex(ps, (0, 1), pn) == Z2
    with pytest.raises(ClumpError):
        group_of_simplex(ps, (0, 7), pn)


def test_group_of_simplex_monotone_exhaustive():
    path = path_complex(6)
    rng = random.Random(0)
    for _ in range(20):
        spans = []
        while len(spans) < 4:
            cand = (rng.randrange(4), rng.randrange(3, 7))
            if cand[0] < cand[1] and cand not in spans:
                spans.append(cand)
        labels = [rng.choice(LABEL_ALPHABET) for _ in range(4)]
        ps = interval_patch_system(path, spans, labels)
        pn = PatchNerve(ps)
        for sigma in pn.simplices():
            for tau in pn.simplices():
                if set(sigma) <= set(tau):
                    assert pn.groups[tau].contains(pn.groups[sigma])


def test_clump_trivial_group_is_union():
    path = path_complex(6)
    ps = interval_patch_system(path, [(0, 3), (2, 5)], [E1, E2])
    y = clump(ps, TRIV)
    assert y.support == ps.union_support()


def test_clump_too_large_group_is_empty():
    path = path_complex(6)
    ps = interval_patch_system(path, [(0, 3), (2, 5)], [E1, TWO_E1])
    y = clump(ps, Z2)
    assert y.is_empty()


def test_clump_introduction_model():
    ps, _ = introduction_system()
    u = ps.patches["U"].support
    v = ps.patches["V"].support
    membrane = ps.patches["W"].support
    assert clump(ps, E1).support == u
    assert clump(ps, E2).support == v
    assert clump(ps, Z2).support == membrane
    assert membrane == u & v


def exhaustive_small_systems():
    """Deterministic corpus of <=4-patch interval systems over the alphabet."""
    path = path_complex(5)
    span_sets = [
        [(0, 2), (1, 3), (2, 4), (3, 5)],
        [(0, 3), (1, 4), (2, 5), (0, 5)],
        [(0, 2), (2, 4), (1, 5), (0, 4)],
    ]
    rng = random.Random(42)
    systems = []
    for _ in range(40):
        spans = rng.choice(span_sets)
        k = rng.randrange(2, 5)
        labels = [rng.choice(LABEL_ALPHABET) for _ in range(k)]
        systems.append(interval_patch_system(path, spans[:k], labels))
    return systems


def test_intersection_formula_exhaustive_pairs():
    for ps in exhaustive_small_systems():
        pn = PatchNerve(ps)
        labels = [p.group for p in ps.patches.values()]
        sublattices = set()
        for r in range(len(labels) + 1):
            for combo in combinations(labels, r):
                g = TRIV
                for x in combo:
                    g = join(g, x)
                sublattices.add(g)
        for n in sublattices:
            for m in sublattices:
                v = intersection_formula_check(ps, n, m, pn)
                assert v.ok, (n, m, v.certificate)


def test_is_minimal_examples():
    path = path_complex(6)
    assert is_minimal(interval_patch_system(path, [(0, 3)], [E1]), TRIV)
    # rank-1 group meeting a label in finite index without containment
    ps = interval_patch_system(path, [(0, 3)], [TWO_E1])
    assert not is_minimal(ps, E1)
    # containment or rank drop everywhere
    ps2 = interval_patch_system(path, [(0, 3), (2, 5)], [E1, E2])
    assert is_minimal(ps2, E1)
    assert is_minimal(ps2, E2)


def test_minimal_join_closure_exhaustive():
    for ps in exhaustive_small_systems():
        pn = PatchNerve(ps)
        labels = [p.group for p in ps.patches.values()]
        sublattices = set()
        for r in range(1, len(labels) + 1):
            for combo in combinations(labels, r):
                g = TRIV
                for x in combo:
                    g = join(g, x)
                sublattices.add(g)
        minimal = [g for g in sublattices if is_minimal(ps, g, pn)]
        for n in minimal:
            for m in minimal:
                assert is_minimal(ps, join(n, m), pn)


def test_maximal_clumps_single_patch():
    path = path_complex(4)
    ps = interval_patch_system(path, [(0, 4)], [E1])
    mcs = maximal_clumps(ps)
    assert len(mcs) == 1
    assert mcs[0].support == ps.patches[0].support
    assert mcs[0].group == E1


def test_maximal_clumps_introduction_model():
    ps, _ = introduction_system()
    mcs = maximal_clumps(ps)
    supports = {mc.support for mc in mcs}
    u = ps.patches["U"].support
    v = ps.patches["V"].support
    w = ps.patches["W"].support
    assert supports == {u, v, w}
    by_support = {mc.support: mc for mc in mcs}
    assert by_support[u].group == E1
    assert by_support[v].group == E2
    assert by_support[w].group == Z2
    assert by_support[w].rank == 2


def test_maximal_clumps_postconditions():
    for ps in exhaustive_small_systems():
        pn = PatchNerve(ps)
        mcs = maximal_clumps(ps, pn)
        supports = [mc.support for mc in mcs]
        # closed under intersections
        for a in mcs:
            for b in mcs:
                meet = a.support & b.support
                if meet:
                    assert meet in supports, "intersection of maximal clumps escaped"
        # every infinite-label patch is inside some maximal clump
        for p in ps.patches.values():
            if p.group.is_infinite():
                assert any(p.support <= s for s in supports)
        # order reversal with infinite index on strict containment
        for a in mcs:
            for b in mcs:
                if a.support > b.support:
                    assert b.group.contains(a.group)
                    assert a.group.rank < b.group.rank
        assert patch_union_decomposition_ok(ps, pn)


def test_growing_ranks_introduction_chain():
    ps, _ = introduction_system()
    mcs = maximal_clumps(ps)
    by_rank = {mc.rank: mc for mc in mcs}
    chain = [by_rank[1], by_rank[2]]
    if not (chain[1].support < chain[0].support):
        chain = [m for m in mcs if m.group == L([[1, 0]])] + [by_rank[2]]
    v = growing_ranks_check(chain)
    assert v.ok and v.ranks[1] >= 1 + v.ranks[0]


def test_growing_ranks_all_chains_corpus():
    for ps in exhaustive_small_systems():
        mcs = maximal_clumps(ps)
        for chain_idx in clump_chains(mcs):
            chain = [mcs[i] for i in chain_idx]
            assert growing_ranks_check(chain).ok


def test_growing_ranks_rejects_bad_chain():
    ps, _ = introduction_system()
    mcs = maximal_clumps(ps)
    with pytest.raises(ClumpError):
        growing_ranks_check([mcs[-1], mcs[0]] if len(mcs[-1].support) < len(mcs[0].support) else [mcs[0], mcs[-1]])


def test_unfolding_identity_enlargement_matches_union():
    ps, _ = introduction_system()
    us = unfolding_space(ps)
    h_unfolded = homology(us.unfolded.cc)
    union = SimplicialComplex(us.union_support)
    assert h_unfolded == homology_of_complex(union)


def test_unfolding_functoriality_identity_enlargement():
    # with identity enlargements the union classes map isomorphically
    path = path_complex(6)
    ps = interval_patch_system(path, [(0, 3), (2, 5), (1, 4)], [E1, E2, DIAG])
    us = unfolding_space(ps)
    union = SimplicialComplex(us.union_support)
    assert homology(us.unfolded.cc) == homology_of_complex(union)


def test_unfolding_introduction_cycle_dies_and_fills():
    ps, cycle = introduction_system()
    us = unfolding_space(ps)
    pushed = us.push_cycle(cycle, 2)
    from nerveforge.homology import degree_homology

    h2 = degree_homology(us.unfolded.cc, 2)
    assert h2.class_is_zero(pushed)
    filling = us.fill(pushed, 2)
    assert filling is not None
    # exact chain arithmetic: boundary of filling equals the pushed cycle
    mat = us.unfolded.cc.dense_boundary(3)
    recovered = [
        sum(mat[i][j] * filling[j] for j in range(len(filling)))
        for i in range(len(mat))
    ]
    assert recovered == pushed


def test_unfolding_vanishing_introduction():
    ps, _ = introduction_system()
    v = unfolding_vanishing_check(ps, n=4, r=1)
    assert v.hypotheses_hold
    assert v.ok
    assert v.detail["threshold_degree"] == 2


def test_unfolding_with_cone_enlargements():
    # enlarge each patch to a cone: vanishing becomes easy and the check passes
    path = path_complex(6)
    base = interval_patch_system(path, [(0, 2), (1, 4), (3, 6)], [E1, DIAG, E2])
    big = interval_subcomplex(path, 0, 6).simplices
    ps = PatchSystem(
        ambient=path,
        patches=base.patches,
        enlargements={(k,): big for k in base.patches},
    )
    us = unfolding_space(ps)
    assert homology(us.unfolded.cc) == HomologySummary.of({0: (1, ())})


def test_unfolding_vanishing_detects_hypothesis_violation():
    # a clump with a circle as its enlarged support violates the coefficient
    # hypothesis at chain length 0 for n=4, r=2
    from nerveforge.construct import cycle_complex

    circle = cycle_complex(4)
    ps = PatchSystem(
        ambient=circle,
        patches={0: Patch(support=circle.simplices, group=E1)},
    )
    v = unfolding_vanishing_check(ps, n=4, r=2)
    assert not v.hypotheses_hold


def test_engulfing_default_scheme_and_violation():
    path = path_complex(6)
    ps = interval_patch_system(
        path, [(0, 3), (2, 5)], [E1, E2], parabolic=[False, True]
    )
    big0 = interval_subcomplex(path, 0, 4).simplices
    big1 = interval_subcomplex(path, 1, 6).simplices
    ps_big = PatchSystem(
        ambient=path, patches=ps.patches, enlargements={(0,): big0, (1,): big1}
    )
    assert engulfing_check(ps_big).ok
    # deliberate violation: the mixed simplex gets an enlargement escaping
    # the semisimple one
    bad = PatchSystem(
        ambient=path,
        patches=ps.patches,
        enlargements={
            (0,): interval_subcomplex(path, 2, 3).simplices | ps.patches[0].support,
            (1,): big1,
            (0, 1): interval_subcomplex(path, 2, 6).simplices,
        },
    )
    assert not engulfing_check(bad).ok
