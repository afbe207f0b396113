"""Exact rational linear algebra.

Scalars are `fractions.Fraction` (arbitrary precision, always reduced,
positive denominator).  Everything here is deterministic: row reduction
always takes the leftmost pivot, so any basis computed downstream is
reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction

Vector = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce an int, string ("p/q") or Fraction to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def vec(xs: Iterable) -> Vector:
    return tuple(rat(x) for x in xs)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def add_vec(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub_vec(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def scale_vec(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


class RatMatrix:
    """Dense row-major matrix of Fractions. Immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(rat(x) for x in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"need {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nr, nc, flat)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [Fraction(1) if i == j else Fraction(0)
                          for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [Fraction(0)] * (rows * cols))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence]) -> "RatMatrix":
        nc = len(cols)
        nr = len(cols[0]) if nc else 0
        return cls(nr, nc, [cols[c][r] for r in range(nr) for c in range(nc)])

    def at(self, r: int, c: int) -> Fraction:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> Vector:
        return self.entries[r * self.cols:(r + 1) * self.cols]

    def col(self, c: int) -> Vector:
        return tuple(self.entries[r * self.cols + c] for r in range(self.rows))

    def row_list(self) -> list[list[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self.at(r, c) for c in range(self.cols)
                          for r in range(self.rows)])

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((self.at(r, c) * v[c] for c in range(self.cols)),
                         Fraction(0)) for r in range(self.rows))

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for r in range(self.rows):
            for c in range(other.cols):
                out.append(sum((self.at(r, k) * other.at(k, c)
                                for k in range(self.cols)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return RatMatrix(self.rows, self.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return RatMatrix(self.rows, self.cols,
                         [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self.entries])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == \
               (other.rows, other.cols, other.entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def inverse(self) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("not square")
        n = self.rows
        aug = RatMatrix(n, 2 * n,
                        [self.at(r, c) if c < n else
                         (Fraction(1) if c - n == r else Fraction(0))
                         for r in range(n) for c in range(2 * n)])
        red, piv = rref(aug)
        if list(piv) != list(range(n)):
            raise ValueError("singular matrix")
        return RatMatrix(n, n, [red.at(r, n + c)
                                for r in range(n) for c in range(n)])

    def __repr__(self) -> str:
        rows = [" ".join(str(x) for x in self.row(r)) for r in range(self.rows)]
        return "RatMatrix[" + "; ".join(rows) + "]"


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (leftmost-pivot rule)."""
    rows = m.row_list()
    nr, nc = m.rows, m.cols
    pivots: list[int] = []
    pr = 0
    for pc in range(nc):
        pivot_row = None
        for r in range(pr, nr):
            if rows[r][pc] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
        f = rows[pr][pc]
        if f != 1:
            rows[pr] = [x / f for x in rows[pr]]
        for r in range(nr):
            if r != pr and rows[r][pc] != 0:
                g = rows[r][pc]
                rows[r] = [a - g * b for a, b in zip(rows[r], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    return RatMatrix.from_rows(rows) if nr else m, tuple(pivots)


def rank(m: RatMatrix) -> int:
    return len(rref(m)[1])


class Subspace:
    """A linear subspace of Q^n in canonical form.

    The basis rows stacked as a matrix are in RREF, so two equal subspaces
    have identical representations and compare equal componentwise.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Iterable[Sequence[Fraction]]):
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", tuple(tuple(v) for v in basis))
        for v in self.basis:
            if len(v) != ambient_dim:
                raise ValueError("basis vector has wrong length")

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_spanning(cls, vectors: Sequence[Sequence[Fraction]],
                      ambient_dim: int) -> "Subspace":
        vecs = [vec(v) for v in vectors if not is_zero_vec(v)]
        if not vecs:
            return cls(ambient_dim, [])
        red, piv = rref(RatMatrix.from_rows(vecs))
        return cls(ambient_dim, [red.row(r) for r in range(len(piv))])

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def leading_cols(self) -> tuple[int, ...]:
        out = []
        for v in self.basis:
            out.append(next(i for i, x in enumerate(v) if x != 0))
        return tuple(out)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Remainder of v after elimination against the RREF basis."""
        w = list(vec(v))
        for row, lead in zip(self.basis, self.leading_cols()):
            if w[lead] != 0:
                c = w[lead]
                w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains(self, v: Sequence[Fraction]) -> bool:
        return is_zero_vec(self.reduce(v))

    def coords_of(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coordinates of v in the canonical basis, or None if outside."""
        w = list(vec(v))
        coords = []
        for row, lead in zip(self.basis, self.leading_cols()):
            c = w[lead]
            coords.append(c)
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        if not is_zero_vec(w):
            return None
        return tuple(coords)

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.from_spanning(list(self.basis) + list(other.basis),
                                      self.ambient_dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.basis) == (other.ambient_dim, other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def nullspace(m: RatMatrix) -> Subspace:
    """Canonical basis of { v : m v = 0 }."""
    red, piv = rref(m)
    free = [c for c in range(m.cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red.at(r, f)
        basis.append(v)
    space = Subspace.from_spanning(basis, m.cols)
    assert space.dim + len(piv) == m.cols  # rank-nullity
    return space


def solve(m: RatMatrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of m x = b with free variables set to 0, or None."""
    if len(b) != m.rows:
        raise ValueError("dimension mismatch")
    aug = RatMatrix(m.rows, m.cols + 1,
                    [m.at(r, c) if c < m.cols else b[r]
                     for r in range(m.rows) for c in range(m.cols + 1)])
    red, piv = rref(aug)
    if m.cols in piv:
        return None  # inconsistent
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(piv):
        x[p] = red.at(r, m.cols)
    return tuple(x)
