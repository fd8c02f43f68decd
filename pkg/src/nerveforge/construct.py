"""Stock complexes and grid builders used by scenario generators and tests."""

from __future__ import annotations

from itertools import combinations

from .simplicial import SimplicialComplex, Subcomplex


def full_simplex(n_vertices: int) -> SimplicialComplex:
    return SimplicialComplex.from_maximal([tuple(range(n_vertices))])


def simplex_boundary_complex(n_vertices: int) -> SimplicialComplex:
    """Boundary of the (n-1)-simplex, a triangulated S^{n-2}."""
    verts = tuple(range(n_vertices))
    return SimplicialComplex.from_maximal(list(combinations(verts, n_vertices - 1)))


def torus_7() -> SimplicialComplex:
    """Standard 7-vertex triangulation of the torus."""
    tris = []
    for i in range(7):
        tris.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return SimplicialComplex.from_maximal(tris)

def projective_plane_6() -> SimplicialComplex:
    """Minimal 6-vertex triangulation of the real projective plane."""
    tris = [
        (1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
        (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6),
    ]
    return SimplicialComplex.from_maximal(tris)


def path_complex(n_edges: int) -> SimplicialComplex:
    return SimplicialComplex.from_maximal([(i, i + 1) for i in range(n_edges)])


def cycle_complex(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_maximal(
        [tuple(sorted((i, (i + 1) % n))) for i in range(n)]
    )


def interval_subcomplex(path: SimplicialComplex, a: int, b: int) -> Subcomplex:
    """Full subcomplex of a path on vertices a..b."""
    simplices = [s for s in path.simplices if all(a <= v <= b for v in s)]
    return Subcomplex.of(path, simplices)


def grid_complex(nx: int, ny: int) -> SimplicialComplex:
    """Triangulated nx-by-ny grid; vertices are (i, j) pairs."""
    tris = []
    for i in range(nx):
        for j in range(ny):
            tris.append(((i, j), (i + 1, j), (i, j + 1)))
            tris.append(((i + 1, j), (i, j + 1), (i + 1, j + 1)))
    return SimplicialComplex.from_maximal(tris)


def rect_subcomplex(grid: SimplicialComplex, i0: int, i1: int, j0: int, j1: int) -> Subcomplex:
    """Full subcomplex on grid vertices with i0 <= i <= i1, j0 <= j <= j1."""
    simplices = [
        s for s in grid.simplices
        if all(i0 <= v[0] <= i1 and j0 <= v[1] <= j1 for v in s)
    ]
    return Subcomplex.of(grid, simplices)


def annulus() -> SimplicialComplex:
    """Six-vertex triangulated annulus; boundary circles (0,1,2) and (3,4,5)."""
    tris = [
        (0, 1, 4), (0, 3, 4), (1, 2, 5), (1, 4, 5), (0, 2, 3), (2, 3, 5),
    ]
    return SimplicialComplex.from_maximal(tris)


def disk_on_circle(n: int, apex="c") -> SimplicialComplex:
    """Cone over the n-cycle: a disk whose boundary is cycle_complex(n)."""
    # apex is a string; keep vertex ids homogeneous by stringifying
    tris = [tuple(sorted((str(i), str((i + 1) % n), apex))) for i in range(n)]
    return SimplicialComplex.from_maximal(tris)


def two_ball_gluing():
    """Two solid balls glued along a cone: the union houses the boundary
    2-sphere of the 4-simplex spanned by vertices 1..4.

    Returns (ambient, u_simplices, v_simplices, membrane, cycle) where the
    cycle is the boundary of the tetrahedron (1,2,3,4) as a signed chain,
    u and v are solid 3-balls with H_2 = 0, and membrane = u ∩ v is the cone
    from vertex 5 over the square 1-3-2-4 (contractible).
    """
    u = close_downward_tetras([(1, 2, 3, 5), (1, 2, 4, 5)])
    v = close_downward_tetras([(1, 3, 4, 5), (2, 3, 4, 5)])
    ambient = SimplicialComplex(u | v)
    membrane = u & v
    cycle = {
        (2, 3, 4): 1,
        (1, 3, 4): -1,
        (1, 2, 4): 1,
        (1, 2, 3): -1,
    }
    return ambient, u, v, membrane, cycle


def close_downward_tetras(tetras):
    from .simplicial import close_downward

    return close_downward(tetras)


# ---------------------------------------------------------------------------
# periodic box-union families
# ---------------------------------------------------------------------------


def _box_family_imports():
    from fractions import Fraction

    from .lattices import LatticeSubgroup
    from .periodic import Box, BoxUnion

    return Fraction, LatticeSubgroup, Box, BoxUnion


def strip_boxes(spacing=2, boxes_per_period=2, dim=2, width=None, overlap=None):
    """Connected Z-periodic solid strip; no box meets its own translates."""
    F, LatticeSubgroup, Box, BoxUnion = _box_family_imports()
    width = F(1, 2) if width is None else F(width)
    overlap = F(1, 4) if overlap is None else F(overlap)
    lattice = LatticeSubgroup.from_generators([[spacing] + [0] * (dim - 1)], dim)
    step = F(spacing, boxes_per_period)
    if step + 2 * overlap >= spacing:
        raise ValueError("boxes would overlap their own translates")
    boxes = []
    for i in range(boxes_per_period):
        lo = [i * step - overlap] + [-width] * (dim - 1)
        hi = [(i + 1) * step + overlap] + [width] * (dim - 1)
        boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))


def hollow_tube_boxes(spacing=2, half_core=None):
    """Z-periodic hollow square tube along the x axis in R^3."""
    F, LatticeSubgroup, Box, BoxUnion = _box_family_imports()
    h = F(1, 2) if half_core is None else F(half_core)
    lattice = LatticeSubgroup.from_generators([[spacing, 0, 0]], 3)
    walls_yz = [
        ((-3 * h, h), (3 * h, 3 * h)),
        ((-3 * h, -3 * h), (3 * h, -h)),
        ((-3 * h, -3 * h), (-h, 3 * h)),
        ((h, -3 * h), (3 * h, 3 * h)),
    ]
    length = F(3 * spacing, 4)
    step = F(spacing, 2)
    boxes = []
    for (ylo, zlo), (yhi, zhi) in walls_yz:
        for k in range(2):
            xlo = k * step - F(spacing, 8)
            boxes.append(Box.of([xlo, ylo, zlo], [xlo + length, yhi, zhi]))
    return BoxUnion(dim=3, lattice=lattice, boxes=tuple(boxes))


def slab_boxes(spacing=2, thickness=None, overlap=None):
    """Z^2-periodic solid slab in R^3 from overlapping boxes."""
    F, LatticeSubgroup, Box, BoxUnion = _box_family_imports()
    thickness = F(1, 2) if thickness is None else F(thickness)
    overlap = F(1, 4) if overlap is None else F(overlap)
    step = F(spacing, 2)
    if step + 2 * overlap >= spacing:
        raise ValueError("boxes would overlap their own translates")
    lattice = LatticeSubgroup.from_generators([[spacing, 0, 0], [0, spacing, 0]], 3)
    boxes = []
    for i in range(2):
        for j in range(2):
            lo = [i * step - overlap, j * step - overlap, -thickness]
            hi = [(i + 1) * step + overlap, (j + 1) * step + overlap, thickness]
            boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=3, lattice=lattice, boxes=tuple(boxes))


def tiling_boxes(dim=2, spacing=2, overlap=None):
    """Full-rank overlapping box tiling of R^dim."""
    F, LatticeSubgroup, Box, BoxUnion = _box_family_imports()
    overlap = F(1, 4) if overlap is None else F(overlap)
    step = F(spacing, 2)
    if step + 2 * overlap >= spacing:
        raise ValueError("boxes would overlap their own translates")
    lattice = LatticeSubgroup.from_generators(
        [[spacing if i == j else 0 for j in range(dim)] for i in range(dim)], dim
    )
    boxes = []
    from itertools import product

    for offsets in product(range(2), repeat=dim):
        lo = [o * step - overlap for o in offsets]
        hi = [(o + 1) * step + overlap for o in offsets]
        boxes.append(Box.of(lo, hi))
    return BoxUnion(dim=dim, lattice=lattice, boxes=tuple(boxes))
