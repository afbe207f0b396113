"""Poisson algebras and the hamiltonian route to Lie-Rinehart pairs.

One underlying space carries a commutative associative product and a Lie
bracket tied by the Leibniz rule {x, yz} = y{x,z} + {x,y}z.  The map
x -> X_x with X_x(y) = {x,y} lands in the derivations of the product; its
image, with the induced bracket [X_x, X_y] = X_{x,y}, anchors a
Lie-Rinehart pair.  The bracket center is exposed rather than required to
vanish, since natural examples have central units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (LinearMap, PropertyReport, StructureAlgebra,
                      check_property, is_derivation)
from .exactlin import RatMatrix, Subspace, unit_vec
from .lierinehart import ConstructionError, LieRinehartPair


@dataclass(frozen=True)
class PoissonAlgebra:
    assoc: StructureAlgebra
    bracket: StructureAlgebra

    def __post_init__(self):
        if self.assoc.basis_labels != self.bracket.basis_labels:
            raise ValueError("product and bracket must share one basis")

    @property
    def dim(self) -> int:
        return self.assoc.dim

    @property
    def basis_labels(self) -> tuple[str, ...]:
        return self.assoc.basis_labels


def check_poisson(p: PoissonAlgebra) -> PropertyReport:
    """Associativity/commutativity of the product, Lie laws of the
    bracket, then the Leibniz rule on all basis triples."""
    for prop in ("associative", "commutative"):
        rep = check_property(p.assoc, prop)
        if not rep.holds:
            return rep
    for prop in ("anticommutative", "jacobi"):
        rep = check_property(p.bracket, prop)
        if not rep.holds:
            return rep
    n = p.dim
    for x in range(n):
        ex = unit_vec(n, x)
        for y in range(n):
            ey = unit_vec(n, y)
            for z in range(n):
                ez = unit_vec(n, z)
                lhs = p.bracket.multiply(ex, p.assoc.c[y][z])
                rhs = tuple(a + b for a, b in zip(
                    p.assoc.multiply(ey, p.bracket.c[x][z]),
                    p.assoc.multiply(p.bracket.c[x][y], ez)))
                if lhs != rhs:
                    return PropertyReport("leibniz", False, (x, y, z))
    return PropertyReport("poisson", True)


def hamiltonian_map(p: PoissonAlgebra, x: Sequence[Fraction]) -> LinearMap:
    """The derivation y -> {x, y}."""
    n = p.dim
    if len(x) != n:
        raise ValueError("dimension mismatch")
    cols = [p.bracket.multiply(x, unit_vec(n, j)) for j in range(n)]
    m = LinearMap(RatMatrix.from_cols(cols))
    rep = is_derivation(p.assoc, m)
    assert rep.holds, f"hamiltonian map is not a derivation: {rep.witness}"
    return m


def hamiltonian_commutator_check(p: PoissonAlgebra) -> PropertyReport:
    """[X_x, X_y] = X_{x,y} on all basis pairs."""
    n = p.dim
    ham = [hamiltonian_map(p, unit_vec(n, i)) for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = ham[i].commutator(ham[j])
            rhs = hamiltonian_map(p, p.bracket.c[i][j])
            if lhs != rhs:
                return PropertyReport("hamiltonian_commutator", False, (i, j))
    return PropertyReport("hamiltonian_commutator", True)


def poisson_center(p: PoissonAlgebra) -> Subspace:
    """Kernel of x -> X_x, i.e. { x : {x, .} = 0 }."""
    n = p.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([p.bracket.c[i][j][k] for i in range(n)])
    from .exactlin import nullspace
    return nullspace(RatMatrix.from_rows(rows))


def poisson_to_lr(p: PoissonAlgebra) -> LieRinehartPair:
    """The Lie-Rinehart pair on L = image of the hamiltonian map.

    The anchor is the inclusion into Der(A); the module action
    (y X_x)(z) = y {x, z} is re-expressed in the canonical basis of L and
    must stay inside L (ConstructionError otherwise, possible when
    L is a proper subalgebra of Der(A))."""
    n = p.dim
    ham = [hamiltonian_map(p, unit_vec(n, i)) for i in range(n)]
    span = Subspace.from_spanning([h.flatten() for h in ham], n * n)
    assert span.dim == n - poisson_center(p).dim
    gens = tuple(LinearMap.unflatten(v, n) for v in span.basis)
    k = len(gens)
    labels = tuple(f"H{i + 1}" for i in range(k))
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            coords = span.coords_of(gens[i].commutator(gens[j]).flatten())
            # [X_x, X_y] = X_{x,y} keeps the image closed
            assert coords is not None
            table[i][j] = coords
    bracket = StructureAlgebra(labels, table) if k else StructureAlgebra((), [])
    action = []
    for i in range(n):
        lmat = p.assoc.left_mult_matrix(i)
        row = []
        for j in range(k):
            coords = span.coords_of((lmat * gens[j].matrix).entries)
            if coords is None:
                raise ConstructionError(
                    f"module action {p.basis_labels[i]}*{labels[j]} "
                    "escapes the hamiltonian image", (i, j))
            row.append(tuple(coords))
        action.append(tuple(row))
    return LieRinehartPair(p.assoc, bracket, gens, tuple(action))
