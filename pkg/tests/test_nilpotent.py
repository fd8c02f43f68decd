import random

import pytest

from nerveforge.nilpotent import (
    GroupWord,
    NilpotentError,
    UnitriangularGroup,
    commutes_with_all_generators,
    elementary,
    hirsch_rank,
    identity,
    mat_inv_unitriangular,
    mat_mul,
    small_central_element,
    unitriangular_log,
)


def heisenberg():
    return UnitriangularGroup(3, (elementary(3, 0, 1), elementary(3, 1, 2)))


def random_ut(k, rng, bound=3):
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(1)
            elif i < j:
                row.append(rng.randrange(-bound, bound + 1))
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


def test_validation():
    with pytest.raises(NilpotentError):
        UnitriangularGroup(5, ())
    with pytest.raises(NilpotentError):
        UnitriangularGroup(3, (((1, 0, 0), (1, 1, 0), (0, 0, 1)),))


def test_inverse():
    rng = random.Random(0)
    for _ in range(30):
        m = random_ut(4, rng)
        assert mat_mul(m, mat_inv_unitriangular(m)) == identity(4)


def test_word_evaluation_recomputable():
    g = heisenberg()
    w = GroupWord(g, ((0, 1), (1, 1), (0, -1), (1, -1)))
    v = w.evaluate()
    assert v == mat_mul(
        mat_mul(g.generators[0], g.generators[1]),
        mat_mul(mat_inv_unitriangular(g.generators[0]), mat_inv_unitriangular(g.generators[1])),
    )


def test_heisenberg_central_element():
    g = heisenberg()
    w = small_central_element(g)
    assert w.length == 4
    assert w.evaluate() == elementary(3, 0, 2)
    assert commutes_with_all_generators(w.evaluate(), g)


def test_abelian_generator_already_central():
    g = UnitriangularGroup(3, (elementary(3, 0, 2),))
    w = small_central_element(g)
    assert w.length == 1
    assert w.letters == ((0, 1),)


def test_trivial_group_rejected():
    with pytest.raises(NilpotentError):
        small_central_element(UnitriangularGroup(3, (identity(3),)))


def test_central_elements_random_ut4():
    rng = random.Random(7)
    for _ in range(100):
        gens = tuple(random_ut(4, rng) for _ in range(rng.randrange(1, 4)))
        g = UnitriangularGroup(4, gens)
        if g.is_trivial():
            continue
        w = small_central_element(g)
        v = w.evaluate()
        assert v != identity(4)
        assert commutes_with_all_generators(v, g)
        assert w.length <= 27
        # word invariant: evaluated element recomputable from the letters
        assert GroupWord(g, w.letters).evaluate() == v


def test_log_heisenberg():
    m = elementary(3, 0, 1)
    log = unitriangular_log(m)
    assert log[0][1] == 1 and log[0][2] == 0


def test_hirsch_rank_examples():
    assert hirsch_rank(UnitriangularGroup(3, (elementary(3, 0, 1),))) == 1
    assert hirsch_rank(heisenberg()) == 3
    full_ut4 = UnitriangularGroup(
        4, (elementary(4, 0, 1), elementary(4, 1, 2), elementary(4, 2, 3))
    )
    assert hirsch_rank(full_ut4) == 6


def test_hirsch_rank_monotone_and_bounded():
    rng = random.Random(9)
    for _ in range(25):
        gens = [random_ut(4, rng) for _ in range(2)]
        g1 = UnitriangularGroup(4, tuple(gens))
        g2 = UnitriangularGroup(4, tuple(gens + [random_ut(4, rng)]))
        r1, r2 = hirsch_rank(g1), hirsch_rank(g2)
        assert r1 <= r2 <= 6
