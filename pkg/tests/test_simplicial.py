import pytest

from nerveforge.construct import full_simplex, grid_complex, path_complex, rect_subcomplex
from nerveforge.simplicial import (
    ComplexError,
    SimplicialComplex,
    SimplicialMap,
    Subcomplex,
    barycentric_subdivision,
)


def test_downward_closure_from_maximal():
    c = SimplicialComplex.from_maximal([(0, 1, 2)])
    assert len(c) == 7
    assert c.dimension == 2
    assert (0, 1) in c.simplices


def test_strict_loader_rejects_gaps_and_duplicates():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_simplices([(0, 1)])  # missing vertices
    with pytest.raises(ComplexError):
        SimplicialComplex.from_simplices([(0,), (1,), (0, 1), (0, 1)])
    with pytest.raises(ComplexError):
        SimplicialComplex.from_maximal([(0, "a")])


def test_subcomplex_ops():
    amb = path_complex(3)
    a = Subcomplex.of(amb, [(0, 1)])
    b = Subcomplex.of(amb, [(1, 2)])
    assert a.union(b).simplices == frozenset({(0,), (1,), (2,), (0, 1), (1, 2)})
    assert a.intersection(b).simplices == frozenset({(1,)})
    empty = Subcomplex.of(amb, [])
    assert a.union(empty).simplices == a.simplices
    other = path_complex(4)
    with pytest.raises(ComplexError):
        a.union(Subcomplex.of(other, [(0, 1)]))


def test_subcomplex_inclusion_exclusion_random():
    import random
    rng = random.Random(2)
    amb = grid_complex(3, 3)
    for _ in range(25):
        a = rect_subcomplex(amb, rng.randrange(3), 3, rng.randrange(3), 3)
        b = rect_subcomplex(amb, 0, rng.randrange(1, 4), 0, rng.randrange(1, 4))
        u = a.union(b)
        i = a.intersection(b)
        assert len(u) == len(a) + len(b) - len(i)


def test_barycentric_edge():
    c = path_complex(1)
    sd = barycentric_subdivision(c)
    assert len(sd.simplices_of_dim(0)) == 3
    assert len(sd.simplices_of_dim(1)) == 2


def test_barycentric_triangle():
    sd = barycentric_subdivision(full_simplex(3))
    assert len(sd.simplices_of_dim(0)) == 7
    assert len(sd.simplices_of_dim(1)) == 12
    assert len(sd.simplices_of_dim(2)) == 6


def test_simplicial_map_validation_and_signs():
    src = path_complex(2)
    dst = full_simplex(2)
    f = SimplicialMap(src, dst, {0: 0, 1: 1, 2: 0})
    img, sign = f.image_simplex((1, 2))
    assert img == (0, 1) and sign == -1
    img, sign = f.image_simplex((0, 2))
    assert sign == 0
    with pytest.raises(ComplexError):
        SimplicialMap(src, dst, {0: 0, 1: 1})
