import random

import pytest

from nerveforge.lattices import (
    LatticeError,
    LatticeSubgroup,
    finite_index_in,
    intersect,
    join,
    virtually_contains,
)


def L(rows, d=2):
    return LatticeSubgroup.from_generators(rows, d)


def test_hnf_canonical_examples():
    assert L([[2, 0], [0, 2]]).basis == ((2, 0), (0, 2))
    assert L([[1, 1], [1, -1]]).basis == ((1, 1), (0, 2))
    assert L([[1, 1], [1, -1]]).rank == 2
    assert L([]).rank == 0


def test_hnf_uniqueness_under_regeneration():
    rng = random.Random(0)
    for _ in range(60):
        d = rng.randrange(2, 4)
        rows = [[rng.randrange(-5, 6) for _ in range(d)] for _ in range(rng.randrange(1, 4))]
        g = LatticeSubgroup.from_generators(rows, d)
        # random unimodular recombination of the generators
        mixed = [list(r) for r in rows]
        for _ in range(10):
            i, j = rng.randrange(len(mixed)), rng.randrange(len(mixed))
            if i != j:
                c = rng.choice([-2, -1, 1, 2])
                mixed[i] = [a + c * b for a, b in zip(mixed[i], mixed[j])]
        coeffs = [rng.randrange(-2, 3) for _ in rows]
        extra = [[sum(c * r[k] for c, r in zip(coeffs, rows)) for k in range(d)]]
        g2 = LatticeSubgroup.from_generators(mixed + extra, d)
        assert g == g2


def test_membership_by_back_substitution():
    g = L([[1, 1], [0, 2]])
    assert g.contains_vector([1, 1])
    assert g.contains_vector([1, 3])
    assert not g.contains_vector([1, 2])
    assert g.contains_vector([0, 0])


def test_join_examples():
    a = L([[2, 0]])
    assert join(a, LatticeSubgroup.trivial(2)) == a
    j = join(L([[2, 0]]), L([[0, 3]]))
    assert j.rank == 2
    finite, index = finite_index_in(j, LatticeSubgroup.full(2))
    assert finite and index == 6


def test_join_commutative_idempotent_associative():
    rng = random.Random(1)
    for _ in range(200):
        d = rng.randrange(2, 4)
        def rnd():
            return LatticeSubgroup.from_generators(
                [[rng.randrange(-4, 5) for _ in range(d)]
                 for _ in range(rng.randrange(0, 3))], d)
        a, b, c = rnd(), rnd(), rnd()
        assert join(a, b) == join(b, a)
        assert join(a, a) == a
        assert join(join(a, b), c) == join(a, join(b, c))
        assert join(a, b).contains(a) and join(a, b).contains(b)


def test_finite_index():
    two = L([[2, 0], [0, 2]])
    finite, index = finite_index_in(two, LatticeSubgroup.full(2))
    assert finite and index == 4
    finite, index = finite_index_in(L([[1, 0]]), LatticeSubgroup.full(2))
    assert not finite and index is None
    with pytest.raises(LatticeError):
        finite_index_in(L([[1, 0]]), L([[0, 1]]))


def coset_count_bfs(sub, sup):
    """Index by breadth-first coset enumeration inside sup."""
    seen = {tuple(sub.reduce([0] * sub.ambient))}
    frontier = [[0] * sub.ambient]
    while frontier:
        nxt = []
        for v in frontier:
            for row in list(sup.basis):
                for sgn in (1, -1):
                    w = [a + sgn * b for a, b in zip(v, row)]
                    key = tuple(sub.reduce(w))
                    if key not in seen:
                        seen.add(key)
                        nxt.append(w)
        frontier = nxt
        if len(seen) > 100:
            return None
    return len(seen)


def test_index_matches_coset_enumeration():
    rng = random.Random(2)
    found = 0
    while found < 25:
        d = 2
        sup_rows = [[rng.randrange(-3, 4) for _ in range(d)] for _ in range(2)]
        sup = LatticeSubgroup.from_generators(sup_rows, d)
        if sup.rank < 2:
            continue
        mult = [[rng.randrange(-2, 3) for _ in range(sup.rank)] for _ in range(2)]
        rows = [
            [sum(m[i] * sup.basis[i][j] for i in range(sup.rank)) for j in range(d)]
            for m in mult
        ]
        sub = LatticeSubgroup.from_generators(rows, d)
        if sub.rank < sup.rank:
            continue
        finite, index = finite_index_in(sub, sup)
        assert finite
        if index > 50:
            continue
        assert coset_count_bfs(sub, sup) == index
        found += 1


def test_intersection():
    a = L([[2, 0], [0, 1]])
    b = L([[3, 0], [0, 1]])
    meet = intersect(a, b)
    assert meet == L([[6, 0], [0, 1]])
    assert intersect(a, LatticeSubgroup.trivial(2)).is_trivial()
    diag = L([[1, 1]])
    horiz = L([[1, 0]])
    assert intersect(diag, horiz).is_trivial()


def test_intersection_random_membership():
    rng = random.Random(3)
    for _ in range(60):
        d = rng.randrange(2, 4)
        a = LatticeSubgroup.from_generators(
            [[rng.randrange(-4, 5) for _ in range(d)] for _ in range(2)], d)
        b = LatticeSubgroup.from_generators(
            [[rng.randrange(-4, 5) for _ in range(d)] for _ in range(2)], d)
        m = intersect(a, b)
        for r in m.basis:
            assert a.contains_vector(r) and b.contains_vector(r)
        # intersection is the largest such: a few random common vectors live in m
        for r in a.basis:
            if b.contains_vector(r):
                assert m.contains_vector(r)


def test_virtually_contains():
    assert virtually_contains(L([[2, 0], [0, 2]]), LatticeSubgroup.full(2))
    assert not virtually_contains(L([[1, 0]]), LatticeSubgroup.full(2))
    assert virtually_contains(LatticeSubgroup.full(2), L([[5, 0]]))
