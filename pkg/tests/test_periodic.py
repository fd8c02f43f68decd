from fractions import Fraction

import pytest

from nerveforge.homology import HomologySummary, homology, homology_of_complex
from nerveforge.lattices import LatticeSubgroup
from nerveforge.periodic import (
    Box,
    BoxUnion,
    CoverWindow,
    FiniteCoverSpec,
    PeriodicError,
    cover_lift_check,
    full_coverage_check,
    local_vanishing_check,
    quotient_complex,
    quotient_corner_check,
    stabilization_check,
    window_nerve_homology,
)


def F(a, b=1):
    return Fraction(a, b)


def strip_ladder(spacing=2, boxes_per_period=2, dim=2):
    """Connected Z-periodic strip built from overlapping boxes; no box meets
    its own translates."""
    lattice = LatticeSubgroup.from_generators([[spacing] + [0] * (dim - 1)], dim)
    boxes = []
    step = Fraction(spacing, boxes_per_period)
    for i in range(boxes_per_period):
        lo = [i * step - Fraction(1, 4)] + [F(-1, 2)] * (dim - 1)
        hi = [(i + 1) * step + Fraction(1, 4)] + [F(1, 2)] * (dim - 1)
        boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))


def disjoint_periodic_boxes(dim=2):
    lattice = LatticeSubgroup.from_generators([[3] + [0] * (dim - 1)], dim)
    return BoxUnion(
        dim=dim, lattice=lattice,
        boxes=(Box.of([0] * dim, [1] * dim),),
    )


def hollow_tube(dim=3):
    """Z-periodic hollow square tube along the x axis: the cross-section is a
    square annulus of four walls, each wall built from two overlapping boxes
    per period so the tube is connected along its length."""
    lattice = LatticeSubgroup.from_generators([[2, 0, 0]], dim)
    h = F(1, 2)
    walls_yz = [
        ((-3 * h, h), (3 * h, 3 * h)),      # top: full y range, z in (1/2, 3/2)
        ((-3 * h, -3 * h), (3 * h, -h)),    # bottom
        ((-3 * h, -3 * h), (-h, 3 * h)),    # left: y in (-3/2, -1/2)
        ((h, -3 * h), (3 * h, 3 * h)),      # right
    ]
    boxes = []
    for (ylo, zlo), (yhi, zhi) in walls_yz:
        for xlo in (F(-1, 4), F(3, 4)):
            boxes.append(Box.of([xlo, ylo, zlo], [xlo + F(3, 2), yhi, zhi]))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))


def solid_slab(dim=3):
    """Z^2-periodic solid slab {|z| < 1/2} from four overlapping boxes."""
    lattice = LatticeSubgroup.from_generators([[2, 0, 0], [0, 2, 0]], dim)
    boxes = []
    for i in range(2):
        for j in range(2):
            lo = [i - F(1, 4), j - F(1, 4), -F(1, 2)]
            hi = [i + 1 + F(1, 4), j + 1 + F(1, 4), F(1, 2)]
            boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))


def full_tiling(dim=2):
    """Z^2-periodic overlapping tiling of the plane by four unit-ish boxes."""
    lattice = LatticeSubgroup.from_generators(
        [[2 if i == j else 0 for j in range(dim)] for i in range(dim)], dim
    )
    boxes = []
    for i in range(2):
        for j in range(2):
            lo = [i - F(1, 4), j - F(1, 4)] + [F(0)] * (dim - 2)
            hi = [i + 1 + F(1, 4), j + 1 + F(1, 4)] + [F(1)] * (dim - 2)
            boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))


def test_own_translate_overlap_rejected():
    lattice = LatticeSubgroup.from_generators([[1, 0]], 2)
    with pytest.raises(PeriodicError, match="own lattice translate"):
        BoxUnion(dim=2, lattice=lattice, boxes=(Box.of([0, 0], [F(3, 2), 1]),))


def test_single_box_point_homology():
    bu = BoxUnion(
        dim=2,
        lattice=LatticeSubgroup.trivial(2),
        boxes=(Box.of([0, 0], [1, 1]),),
    )
    assert window_nerve_homology(bu, 2) == HomologySummary.of({0: (1, ())})


def test_strip_window_connected():
    bu = strip_ladder()
    h = window_nerve_homology(bu, 3)
    assert h.betti(0) == 1
    assert h.betti(1) == 0


def holes_ladder():
    """Two parallel connected strips joined by one rung per period: the
    windows enclose more holes as the radius grows."""
    lattice = LatticeSubgroup.from_generators([[2, 0]], 2)
    boxes = []
    for y0, y1 in ((1, 2), (-2, -1)):
        boxes.append(Box.of([-F(1, 4), y0], [F(5, 4), y1]))
        boxes.append(Box.of([F(3, 4), y0], [F(9, 4), y1]))
    boxes.append(Box.of([-F(1, 4), -F(5, 4)], [F(3, 4), F(5, 4)]))
    return BoxUnion(dim=2, lattice=lattice, boxes=tuple(boxes))


def test_ladder_with_holes_h1_grows():
    # window H1 grows with the radius, so degree 1 stays inconclusive
    bu = holes_ladder()
    h1_small = window_nerve_homology(bu, 2).betti(1)
    h1_big = window_nerve_homology(bu, 4).betti(1)
    assert h1_small >= 1
    assert h1_big > h1_small
    res = stabilization_check(bu.window_complex, degrees=[1], w_max=8)
    assert res.outcomes[1].status == "inconclusive"


def test_stabilization_strip():
    bu = strip_ladder()
    res = stabilization_check(bu.window_complex, w_max=16)
    assert res.outcomes[0].status == "stable" and res.outcomes[0].betti == 0
    for d in range(1, res.top_degree + 1):
        assert res.outcomes[d].stabilized_trivial()


def test_stabilization_disjoint_boxes():
    bu = disjoint_periodic_boxes()
    res = stabilization_check(bu.window_complex, w_max=16)
    # components grow without bound: degree 0 is inconclusive, higher vanish
    assert res.outcomes[0].status == "inconclusive"
    for d in range(1, res.top_degree + 1):
        assert res.outcomes[d].stabilized_trivial()


def test_local_vanishing_strip_r1_d2():
    verdict = local_vanishing_check(strip_ladder(), n=3, r=1)
    assert verdict.ok and verdict.branch == "stabilized"


def test_local_vanishing_disjoint_boxes():
    verdict = local_vanishing_check(disjoint_periodic_boxes(), n=3, r=1)
    assert verdict.ok


def test_local_vanishing_tube_r1_d3():
    verdict = local_vanishing_check(strip_ladder(dim=3), n=4, r=1)
    assert verdict.ok


def test_local_vanishing_hollow_tube():
    # H1 of the tube is stably Z but only degrees >= 2 are asserted
    bu = hollow_tube()
    verdict = local_vanishing_check(bu, n=4, r=1)
    assert verdict.ok, verdict.detail


def test_local_vanishing_slab_r2_d3():
    verdict = local_vanishing_check(solid_slab(), n=4, r=2)
    assert verdict.ok


def test_full_coverage_branch():
    bu = full_tiling()
    assert full_coverage_check(bu)
    verdict = local_vanishing_check(bu, n=3, r=2)
    assert verdict.ok and verdict.branch == "full-coverage"


def test_coverage_detects_gap():
    lattice = LatticeSubgroup.from_generators([[2, 0], [0, 2]], 2)
    bu = BoxUnion(
        dim=2, lattice=lattice,
        boxes=(Box.of([0, 0], [F(3, 2), F(3, 2)]),),
    )
    assert not full_coverage_check(bu)
    verdict = local_vanishing_check(bu, n=3, r=2)
    assert not verdict.ok


def test_quotient_complex_strip_is_circle():
    bu = strip_ladder(spacing=2, boxes_per_period=2)
    q = quotient_complex(bu)
    h = homology(q)
    assert h.betti(0) == 1 and h.betti(1) == 1


def test_quotient_corner_strip():
    v = quotient_corner_check(strip_ladder())
    assert v.ok and v.k == 0 and v.degree == 1


def test_quotient_corner_hollow_tube():
    v = quotient_corner_check(hollow_tube())
    assert not v.inconclusive
    assert v.k == 1 and v.degree == 2
    assert v.ok


def test_quotient_corner_slab():
    v = quotient_corner_check(solid_slab())
    assert v.ok and v.k == 0 and v.degree == 2


def test_quotient_corner_tiling():
    v = quotient_corner_check(full_tiling())
    assert v.ok and v.degree == 2


def test_quotient_corner_inconclusive_propagates():
    v = quotient_corner_check(holes_ladder(), w_max=8)
    assert v.inconclusive


def test_finite_cover_spec_elements():
    spec = FiniteCoverSpec.of([[3]], 1)
    assert len(spec.elements()) == 3
    spec2 = FiniteCoverSpec.of([[2, 0], [0, 2]], 2)
    assert len(spec2.elements()) == 4
    with pytest.raises(PeriodicError):
        FiniteCoverSpec.of([[0, 1]], 2)


def test_cover_window_projects_onto_base():
    bu = strip_ladder()
    spec = FiniteCoverSpec.of([[2]], 1)
    cw = CoverWindow(bu, spec, 2)
    base_verts = set(cw.base.vertices)
    assert {cw.project(v) for v in cw.complex.vertices} == base_verts
    assert len(cw.complex.vertices) == 2 * len(base_verts)


def test_cover_lift_trivial_deck_reduces_to_local_vanishing():
    bu = strip_ladder()
    spec = FiniteCoverSpec.of([[1]], 1)
    v = cover_lift_check(bu, spec, n=3, r=1)
    assert v.ok


def test_cover_lift_strip_z2():
    bu = strip_ladder()
    spec = FiniteCoverSpec.of([[2]], 1)
    v = cover_lift_check(bu, spec, n=3, r=1)
    assert v.ok, v.checks


def test_cover_lift_slab():
    bu = solid_slab()
    spec = FiniteCoverSpec.of([[2, 0], [0, 1]], 2)
    v = cover_lift_check(bu, spec, n=4, r=2)
    assert v.ok, v.checks


def test_cover_lift_full_tiling_components():
    bu = full_tiling()
    spec = FiniteCoverSpec.of([[3, 0], [0, 1]], 2)
    v = cover_lift_check(bu, spec, n=3, r=2)
    assert v.ok
    assert v.checks["components"] == v.checks["expected_components"]
    assert v.checks["deck_order"] == 3
