"""Finite-dimensional algebras given by structure constants.

An algebra is a rank-3 tensor c with c[i][j][k] the coefficient of e_k in
e_i * e_j.  Products not listed in an input file are zero.  All predicates
are exhaustive over basis tuples (bilinearity makes that sufficient) and
report the lexicographically first failing tuple, so failures are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (RatMatrix, Subspace, Vector, add_vec, is_zero_vec,
                       nullspace, rat, solve, sub_vec, unit_vec, vec)

PROPERTIES = ("associative", "commutative", "anticommutative", "jacobi",
              "left_leibniz")


class StructureAlgebra:
    """Algebra over Q with labeled basis and structure-constant tensor."""

    __slots__ = ("dim", "basis_labels", "c")

    def __init__(self, basis_labels: Sequence[str], c):
        labels = tuple(basis_labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise ValueError("basis labels must be pairwise distinct")
        tensor = tuple(tuple(vec(c[i][j]) for j in range(n)) for i in range(n))
        for i in range(n):
            for j in range(n):
                if len(tensor[i][j]) != n:
                    raise ValueError("structure tensor must be n x n x n")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "c", tensor)

    def __setattr__(self, name, value):
        raise AttributeError("StructureAlgebra is immutable")

    @classmethod
    def from_products(cls, basis_labels: Sequence[str],
                      products: dict) -> "StructureAlgebra":
        """Build from {(i, j): {k: coeff}}; unlisted products are zero."""
        n = len(basis_labels)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), rhs in products.items():
            for k, coeff in rhs.items():
                c[i][j][k] = rat(coeff)
        return cls(basis_labels, c)

    @classmethod
    def zero(cls, basis_labels: Sequence[str]) -> "StructureAlgebra":
        return cls.from_products(basis_labels, {})

    def index_of(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r}") from None

    def basis_vector(self, i: int) -> Vector:
        return unit_vec(self.dim, i)

    def product_basis(self, i: int, j: int) -> Vector:
        return self.c[i][j]

    def multiply(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                coeff = xi * yj
                row = self.c[i][j]
                for k in range(self.dim):
                    if row[k] != 0:
                        out[k] += coeff * row[k]
        return tuple(out)

    def associator(self, x, y, z) -> Vector:
        return sub_vec(self.multiply(x, self.multiply(y, z)),
                       self.multiply(self.multiply(x, y), z))

    def left_mult_matrix(self, i: int) -> RatMatrix:
        """Matrix of y -> e_i * y (columns are images of basis vectors)."""
        n = self.dim
        return RatMatrix(n, n, [self.c[i][j][k]
                                for k in range(n) for j in range(n)])

    def change_basis(self, p: RatMatrix,
                     new_labels: Optional[Sequence[str]] = None) -> "StructureAlgebra":
        """Structure constants in the basis f_j = sum_i p[i][j] e_i."""
        n = self.dim
        if p.rows != n or p.cols != n:
            raise ValueError("dimension mismatch")
        pinv = p.inverse()
        labels = tuple(new_labels) if new_labels is not None else \
            tuple(f"f{i + 1}" for i in range(n))
        c = [[None] * n for _ in range(n)]
        for a in range(n):
            fa = p.col(a)
            for b in range(n):
                fb = p.col(b)
                c[a][b] = pinv.apply(self.multiply(fa, fb))
        return StructureAlgebra(labels, c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureAlgebra):
            return NotImplemented
        return (self.basis_labels, self.c) == (other.basis_labels, other.c)

    def __hash__(self) -> int:
        return hash((self.basis_labels, self.c))

    def __repr__(self) -> str:
        return f"StructureAlgebra(dim={self.dim}, labels={self.basis_labels})"


class LinearMap:
    """Linear endomorphism in basis coordinates; columns = images."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: RatMatrix):
        if matrix.rows != matrix.cols:
            raise ValueError("linear map must be square")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("LinearMap is immutable")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix * other.matrix)

    def commutator(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix * other.matrix -
                         other.matrix * self.matrix)

    def flatten(self) -> Vector:
        """Row-major coordinates in the n^2-dimensional matrix space."""
        return self.matrix.entries

    @classmethod
    def unflatten(cls, v: Sequence[Fraction], n: int) -> "LinearMap":
        return cls(RatMatrix(n, n, v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"LinearMap({self.matrix!r})"


@dataclass(frozen=True)
class PropertyReport:
    prop: str
    holds: bool
    witness: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("witness only on failure")
        if not self.holds and self.witness is None:
            raise ValueError("failure needs a witness")


def check_property(a: StructureAlgebra, prop: str) -> PropertyReport:
    """Exhaustive check of an identity over basis tuples."""
    n = a.dim
    if prop == "commutative":
        for i in range(n):
            for j in range(n):
                if a.c[i][j] != a.c[j][i]:
                    return PropertyReport(prop, False, (i, j))
        return PropertyReport(prop, True)
    if prop == "anticommutative":
        for i in range(n):
            for j in range(n):
                if not is_zero_vec(add_vec(a.c[i][j], a.c[j][i])):
                    return PropertyReport(prop, False, (i, j))
        return PropertyReport(prop, True)
    if prop == "associative":
        for i in range(n):
            ei = a.basis_vector(i)
            for j in range(n):
                ej = a.basis_vector(j)
                for k in range(n):
                    if not is_zero_vec(a.associator(ei, ej, a.basis_vector(k))):
                        return PropertyReport(prop, False, (i, j, k))
        return PropertyReport(prop, True)
    if prop == "jacobi":
        for i in range(n):
            ei = a.basis_vector(i)
            for j in range(n):
                ej = a.basis_vector(j)
                for k in range(n):
                    ek = a.basis_vector(k)
                    s = add_vec(a.multiply(a.c[i][j], ek),
                                add_vec(a.multiply(a.c[j][k], ei),
                                        a.multiply(a.c[k][i], ej)))
                    if not is_zero_vec(s):
                        return PropertyReport(prop, False, (i, j, k))
        return PropertyReport(prop, True)
    if prop == "left_leibniz":
        # x(yz) = (xy)z + y(xz)
        for i in range(n):
            ei = a.basis_vector(i)
            for j in range(n):
                ej = a.basis_vector(j)
                for k in range(n):
                    ek = a.basis_vector(k)
                    lhs = a.multiply(ei, a.c[j][k])
                    rhs = add_vec(a.multiply(a.c[i][j], ek),
                                  a.multiply(ej, a.c[i][k]))
                    if lhs != rhs:
                        return PropertyReport(prop, False, (i, j, k))
        return PropertyReport(prop, True)
    raise ValueError(f"unknown property {prop!r}")


def is_derivation(a: StructureAlgebra, m: LinearMap) -> PropertyReport:
    """D(e_i e_j) = D(e_i) e_j + e_i D(e_j) on all basis pairs."""
    if m.dim != a.dim:
        raise ValueError("dimension mismatch")
    for i in range(a.dim):
        ei = a.basis_vector(i)
        di = m.apply(ei)
        for j in range(a.dim):
            ej = a.basis_vector(j)
            lhs = m.apply(a.c[i][j])
            rhs = add_vec(a.multiply(di, ej), a.multiply(ei, m.apply(ej)))
            if lhs != rhs:
                return PropertyReport("derivation", False, (i, j))
    return PropertyReport("derivation", True)


def derivation_equations(a: StructureAlgebra) -> RatMatrix:
    """Linear system on the flattened matrix D[r][m] (index r*n + m)
    expressing the derivation identity on all basis pairs."""
    n = a.dim
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for m_ in range(n):
                    row[k * n + m_] += a.c[i][j][m_]
                for r in range(n):
                    row[r * n + i] -= a.c[r][j][k]
                    row[r * n + j] -= a.c[i][r][k]
                rows.append(row)
    return RatMatrix.from_rows(rows)


def express_in_matrices(mats: Sequence[LinearMap],
                        target: LinearMap) -> Optional[Vector]:
    """Coordinates of target in span(mats), or None."""
    if not mats:
        return () if target.matrix.is_zero() else None
    cols = [m.flatten() for m in mats]
    return solve(RatMatrix.from_cols(cols), target.flatten())


@dataclass(frozen=True)
class DerivationAlgebra:
    parent: StructureAlgebra
    gens: tuple[LinearMap, ...]
    bracket: StructureAlgebra

    @property
    def dim(self) -> int:
        return len(self.gens)

    def span(self) -> Subspace:
        n = self.parent.dim
        return Subspace.from_spanning([g.flatten() for g in self.gens], n * n)


def derivations(a: StructureAlgebra) -> DerivationAlgebra:
    """Der(a) with its canonical basis and commutator bracket table."""
    n = a.dim
    space = nullspace(derivation_equations(a))
    gens = tuple(LinearMap.unflatten(v, n) for v in space.basis)
    k = len(gens)
    labels = tuple(f"D{i + 1}" for i in range(k))
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            coords = express_in_matrices(gens, gens[i].commutator(gens[j]))
            if coords is None:
                raise AssertionError("derivations not closed under bracket")
            table[i][j] = coords
    bracket = StructureAlgebra(labels, table) if k else StructureAlgebra((), [])
    return DerivationAlgebra(a, gens, bracket)


def lie_center(l: StructureAlgebra) -> Subspace:
    """{ x : [x, e_j] = 0 for all j } for an anticommutative l."""
    rep = check_property(l, "anticommutative")
    if not rep.holds:
        raise ValueError(f"not anticommutative, witness {rep.witness}")
    n = l.dim
    if n == 0:
        return Subspace.zero(0)
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([l.c[i][j][k] for i in range(n)])
    return nullspace(RatMatrix.from_rows(rows))
