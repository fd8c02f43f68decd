import random

import pytest

from nerveforge.construct import (
    annulus,
    cycle_complex,
    disk_on_circle,
    full_simplex,
    grid_complex,
    path_complex,
    projective_plane_6,
    rect_subcomplex,
    simplex_boundary_complex,
    torus_7,
)
from nerveforge.homology import (
    ChainComplexError,
    HomologySummary,
    IntegerChainComplex,
    chain_complex,
    degree_homology,
    homology_of_complex,
    induced_homology_map,
    induced_map_is_isomorphism,
    is_acyclic,
)
from nerveforge.simplicial import SimplicialComplex, SimplicialMap, barycentric_subdivision
from nerveforge.snf import rational_rank


def rational_betti_oracle(c):
    """Betti numbers over Q by rank-nullity, independent of the SNF path."""
    cc = chain_complex(c)
    out = {}
    for d in cc.degrees():
        n = cc.dim(d)
        r_d = rational_rank(cc.dense_boundary(d)) if cc.dim(d - 1) else 0
        r_up = rational_rank(cc.dense_boundary(d + 1)) if cc.dim(d + 1) else 0
        out[d] = n - r_d - r_up
    return out


def test_sphere():
    s2 = simplex_boundary_complex(4)
    h = homology_of_complex(s2)
    assert h == HomologySummary.of({0: (1, ()), 2: (1, ())})


def test_torus():
    h = homology_of_complex(torus_7())
    assert h == HomologySummary.of({0: (1, ()), 1: (2, ()), 2: (1, ())})
    oracle = rational_betti_oracle(torus_7())
    assert (oracle[0], oracle[1], oracle[2]) == (1, 2, 1)


def test_projective_plane():
    h = homology_of_complex(projective_plane_6())
    assert h == HomologySummary.of({0: (1, ()), 1: (0, (2,))})
    assert h.torsion(1) == (2,)


def test_homology_agrees_with_rational_oracle():
    rng = random.Random(9)
    grid = grid_complex(3, 3)
    for _ in range(20):
        i0, j0 = rng.randrange(3), rng.randrange(3)
        piece = rect_subcomplex(grid, i0, i0 + rng.randrange(1, 3), j0, j0 + rng.randrange(1, 3))
        c = piece.as_complex()
        h = homology_of_complex(c)
        for d, b in rational_betti_oracle(c).items():
            assert h.betti(d) == b


def test_malformed_complex_reports_degree():
    with pytest.raises(ChainComplexError, match="degree 2"):
        IntegerChainComplex(
            basis={0: ["a", "b"], 1: ["e", "f"], 2: ["t"]},
            boundaries={
                1: {0: {0: -1, 1: 1}, 1: {0: -1, 1: 1}},
                2: {0: {0: 1, 1: 1}},
            },
        )


def test_barycentric_preserves_homology():
    for c in (simplex_boundary_complex(4), annulus(), torus_7(), path_complex(3)):
        assert homology_of_complex(c) == homology_of_complex(barycentric_subdivision(c))


def test_is_acyclic():
    assert is_acyclic(full_simplex(3))
    assert is_acyclic(disk_on_circle(5))
    assert not is_acyclic(cycle_complex(4))
    assert not is_acyclic(SimplicialComplex())


def test_induced_identity_map():
    t = torus_7()
    m = induced_homology_map(SimplicialMap.identity(t), 1)
    assert m.matrix == [[1, 0], [0, 1]]
    assert not m.is_zero
    assert induced_map_is_isomorphism(m)


def test_equator_in_disk_induces_zero():
    disk = disk_on_circle(4)
    eq = SimplicialComplex.from_maximal(
        [tuple(sorted((str(i), str((i + 1) % 4)))) for i in range(4)]
    )
    f = SimplicialMap.inclusion(eq, disk)
    m = induced_homology_map(f, 1)
    assert m.is_zero
    assert m.source_orders == [0]
    assert m.target_orders == []


def test_boundary_circle_into_annulus():
    ann = annulus()
    circle = SimplicialComplex.from_maximal([(0, 1), (1, 2), (0, 2)])
    f = SimplicialMap.inclusion(circle, ann)
    m = induced_homology_map(f, 1)
    assert len(m.matrix) == 1 and len(m.matrix[0]) == 1
    assert abs(m.matrix[0][0]) == 1
    assert not m.is_zero
    # independent oracle: enumerate the cycle/boundary structure directly
    cc = chain_complex(ann)
    h1 = degree_homology(cc, 1)
    assert h1.orders == [0]


def test_out_of_range_degree_flagged():
    c = path_complex(2)
    m = induced_homology_map(SimplicialMap.identity(c), 5)
    assert m.is_zero and m.degree_flagged


def test_torsion_aware_zero_flag():
    rp2 = projective_plane_6()
    m = induced_homology_map(SimplicialMap.identity(rp2), 1)
    assert not m.is_zero
    assert m.source_orders == [2]
    assert m.matrix == [[1]]


def test_functoriality_on_inclusion_triples():
    rng = random.Random(4)
    grid = grid_complex(3, 3)
    for _ in range(10):
        i0 = rng.randrange(2)
        j0 = rng.randrange(2)
        small = rect_subcomplex(grid, i0, i0 + 1, j0, j0 + 1).as_complex()
        mid = rect_subcomplex(grid, 0, 2, 0, 3).as_complex()
        big = grid
        if not mid.contains_complex(small):
            continue
        f = SimplicialMap.inclusion(small, mid)
        g = SimplicialMap.inclusion(mid, big)
        gf = SimplicialMap.inclusion(small, big)
        for d in (0, 1):
            lhs = induced_homology_map(gf, d)
            rhs = induced_homology_map(g, d).compose_after(induced_homology_map(f, d))
            assert lhs.matrix == rhs.matrix
