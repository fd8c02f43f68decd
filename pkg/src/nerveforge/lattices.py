"""Subgroups of Z^d in canonical Hermite normal form.

The HNF here is row-style: the basis matrix is in row echelon form with
positive pivots and entries above each pivot reduced into [0, pivot), which
makes the representation unique per subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass

from .snf import determinant, row_kernel_basis


class LatticeError(ValueError):
    pass


def hermite_normal_form(rows: list[list[int]], d: int) -> list[list[int]]:
    """Canonical HNF basis (list of rows) of the subgroup generated by rows."""
    work = [list(map(int, r)) for r in rows if any(r)]
    for r in work:
        if len(r) != d:
            raise LatticeError(f"generator of length {len(r)} in ambient rank {d}")
    basis: list[list[int]] = []
    for col in range(d):
        carry = []
        pivot = None
        for r in work:
            if r[col]:
                if pivot is None:
                    pivot = r
                else:
                    # gcd elimination in this column
                    while r[col]:
                        q = pivot[col] // r[col]
                        for j in range(d):
                            pivot[j] -= q * r[j]
                        pivot, r = r, pivot
                    carry.append(r)
            elif any(r):
                carry.append(r)
        if pivot is not None:
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
        work = carry
    # reduce entries above pivots
    pivots = []
    for r in basis:
        col = next(j for j in range(d) if r[j])
        pivots.append(col)
    for i in range(len(basis)):
        for k in range(i + 1, len(basis)):
            col = pivots[k]
            p = basis[k][col]
            q = basis[i][col] // p
            if q:
                for j in range(d):
                    basis[i][j] -= q * basis[k][j]
    return basis


@dataclass(frozen=True)
class LatticeSubgroup:
    """Subgroup of Z^d with its unique HNF row basis."""

    ambient: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(rows, ambient: int) -> "LatticeSubgroup":
        hnf = hermite_normal_form(list(rows), ambient)
        return LatticeSubgroup(ambient, tuple(tuple(r) for r in hnf))

    @staticmethod
    def trivial(ambient: int) -> "LatticeSubgroup":
        return LatticeSubgroup(ambient, ())

    @staticmethod
    def full(ambient: int) -> "LatticeSubgroup":
        return LatticeSubgroup.from_generators(
            [[1 if i == j else 0 for j in range(ambient)] for i in range(ambient)], ambient
        )

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_trivial(self) -> bool:
        return not self.basis

    def is_infinite(self) -> bool:
        return bool(self.basis)

    def reduce(self, vec):
        """Residue of vec after subtracting basis multiples (back-substitution)."""
        v = list(map(int, vec))
        if len(v) != self.ambient:
            raise LatticeError("vector has the wrong length")
        for row in self.basis:
            col = next(j for j in range(self.ambient) if row[j])
            q = v[col] // row[col]
            if q:
                for j in range(self.ambient):
                    v[j] -= q * row[j]
        return v

    def contains_vector(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains(self, other: "LatticeSubgroup") -> bool:
        if other.ambient != self.ambient:
            raise LatticeError("ambient rank mismatch")
        return all(self.contains_vector(r) for r in other.basis)

    def key(self):
        return (self.ambient, self.basis)


def join(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    """Smallest subgroup containing both (HNF of the concatenated bases)."""
    if a.ambient != b.ambient:
        raise LatticeError("ambient rank mismatch")
    return LatticeSubgroup.from_generators(list(a.basis) + list(b.basis), a.ambient)


def join_all(groups, ambient: int) -> LatticeSubgroup:
    rows = [r for g in groups for r in g.basis]
    return LatticeSubgroup.from_generators(rows, ambient)


def intersect(a: LatticeSubgroup, b: LatticeSubgroup) -> LatticeSubgroup:
    """Intersection, via the integer row kernel of the stacked bases."""
    if a.ambient != b.ambient:
        raise LatticeError("ambient rank mismatch")
    if a.is_trivial() or b.is_trivial():
        return LatticeSubgroup.trivial(a.ambient)
    stacked = [list(r) for r in a.basis] + [[-x for x in r] for r in b.basis]
    kernel = row_kernel_basis(stacked)
    ra = a.rank
    gens = []
    for z in kernel:
        vec = [0] * a.ambient
        for i in range(ra):
            if z[i]:
                for j in range(a.ambient):
                    vec[j] += z[i] * a.basis[i][j]
        gens.append(vec)
    return LatticeSubgroup.from_generators(gens, a.ambient)


def finite_index_in(sub: LatticeSubgroup, sup: LatticeSubgroup):
    """(finite, index) for sub inside sup; raises if sub is not contained."""
    if not sup.contains(sub):
        raise LatticeError("subgroup is not contained in the claimed supergroup")
    if sub.rank < sup.rank:
        return False, None
    # equal rank: index is |det| of the change of basis
    coeffs = []
    for r in sub.basis:
        row = _solve_in_basis(sup, r)
        coeffs.append(row)
    return True, abs(determinant(coeffs))


def _solve_in_basis(g: LatticeSubgroup, vec):
    """Coefficients expressing vec over g's HNF basis (vec must be a member)."""
    v = list(map(int, vec))
    out = []
    for row in g.basis:
        col = next(j for j in range(g.ambient) if row[j])
        q = v[col] // row[col]
        out.append(q)
        for j in range(g.ambient):
            v[j] -= q * row[j]
    if any(v):
        raise LatticeError("vector not in subgroup")
    return out


def virtually_contains(big: LatticeSubgroup, small: LatticeSubgroup) -> bool:
    """True iff small ∩ big has finite index in small."""
    if small.is_trivial():
        return True
    meet = intersect(big, small)
    if meet.rank < small.rank:
        return False
    finite, _ = finite_index_in(meet, small)
    return finite
