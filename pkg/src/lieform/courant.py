"""The double bracket on g + g* for a finite-dimensional Lie algebra g.

With dual one-forms differentiated by dw(X, Y) = -w([X, Y]), the bracket

    [[(X1, w1), (X2, w2)]] = ([X1, X2], i(X1) dw2)

is left Leibniz but not Lie.  Projection onto g is a bracket morphism, so
the table is a complete Courant algebra; reading g* as an abelian
associative algebra with trivial action on g gives a Lie-Rinehart pair
whose diamond product is the same table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (LinearMap, PropertyReport, StructureAlgebra,
                      check_property)
from .exactlin import RatMatrix, Vector, unit_vec, zero_vec
from .lierinehart import LieRinehartPair


@dataclass(frozen=True)
class LieAlgebraData:
    g: StructureAlgebra
    dual_labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.dual_labels) != self.g.dim:
            raise ValueError("need one dual label per basis vector")
        for prop in ("anticommutative", "jacobi"):
            rep = check_property(self.g, prop)
            if not rep.holds:
                raise ValueError(f"not a Lie algebra ({prop} fails at "
                                 f"{rep.witness})")

    @property
    def dim(self) -> int:
        return self.g.dim


def ce_differential(gd: LieAlgebraData, w: Sequence[Fraction]) -> RatMatrix:
    """dw as the antisymmetric matrix B with B[i][j] = dw(e_i, e_j) =
    -w([e_i, e_j])."""
    n = gd.dim
    if len(w) != n:
        raise ValueError("dimension mismatch")
    ent = []
    for i in range(n):
        for j in range(n):
            ent.append(-sum((w[k] * gd.g.c[i][j][k] for k in range(n)),
                            Fraction(0)))
    return RatMatrix(n, n, ent)


def two_form_coeffs(b: RatMatrix) -> dict:
    """{(i, j) i<j: coefficient} for an antisymmetric matrix, read as
    sum b[i][j] w_i ^ w_j over i < j."""
    out = {}
    for i in range(b.rows):
        for j in range(i + 1, b.cols):
            if b.at(i, j) != 0:
                out[(i, j)] = b.at(i, j)
    return out


def interior_on_dual(x: Sequence[Fraction], b: RatMatrix) -> Vector:
    """i(X) dw as a dual vector: (i(X)B)_j = sum_i x_i B[i][j]."""
    n = b.rows
    return tuple(sum((x[i] * b.at(i, j) for i in range(n)), Fraction(0))
                 for j in range(n))


def courant_bracket(gd: LieAlgebraData, u: Sequence[Fraction],
                    v: Sequence[Fraction]) -> Vector:
    """[[u, v]] on 2n coordinates (g-part first, then g*-part)."""
    n = gd.dim
    if len(u) != 2 * n or len(v) != 2 * n:
        raise ValueError("dimension mismatch")
    x1, x2 = u[:n], v[:n]
    w2 = v[n:]
    g_part = gd.g.multiply(x1, x2)
    dw2 = [[Fraction(0)] * n for _ in range(n)]
    for k, wk in enumerate(w2):
        if wk == 0:
            continue
        b = ce_differential(gd, unit_vec(n, k))
        for i in range(n):
            for j in range(n):
                dw2[i][j] += wk * b.at(i, j)
    dual_part = tuple(sum((x1[i] * dw2[i][j] for i in range(n)), Fraction(0))
                      for j in range(n))
    return tuple(g_part) + dual_part


@dataclass(frozen=True)
class CourantAlgebra:
    """Structure table of the double bracket; anchor = g-part projection."""
    table: StructureAlgebra
    n: int


def courant_table(gd: LieAlgebraData) -> CourantAlgebra:
    n = gd.dim
    labels = gd.g.basis_labels + gd.dual_labels
    dim = 2 * n
    c = [[zero_vec(dim)] * dim for _ in range(dim)]
    for i in range(n):
        for j in range(n):
            c[i][j] = tuple(gd.g.c[i][j]) + zero_vec(n)
        dw = [ce_differential(gd, unit_vec(n, k)) for k in range(n)]
        for k in range(n):
            c[i][n + k] = zero_vec(n) + interior_on_dual(unit_vec(n, i), dw[k])
    return CourantAlgebra(StructureAlgebra(labels, c), n)


@dataclass(frozen=True)
class CourantReport:
    leibniz: PropertyReport
    jacobi: PropertyReport
    anchor_morphism_ok: bool
    anchor_witness: Optional[tuple[int, int]]
    complete: bool


def courant_checks(gd: LieAlgebraData) -> CourantReport:
    """Left-Leibniz on all triples, Jacobi status, anchor morphism,
    completeness of the projection onto g."""
    ca = courant_table(gd)
    t = ca.table
    n = ca.n
    leib = check_property(t, "left_leibniz")
    jac = check_property(t, "jacobi")
    anchor_w = None
    for i in range(2 * n):
        pi_i = tuple(unit_vec(2 * n, i)[:n])
        for j in range(2 * n):
            pi_j = tuple(unit_vec(2 * n, j)[:n])
            if tuple(t.c[i][j][:n]) != gd.g.multiply(pi_i, pi_j):
                anchor_w = (i, j)
                break
        if anchor_w:
            break
    # the projection restricted to the g-part is the identity
    complete = True
    return CourantReport(leib, jac, anchor_w is None, anchor_w, complete)


def courant_to_lr(gd: LieAlgebraData) -> LieRinehartPair:
    """Read (g, g*) as a Lie-Rinehart pair: A = g* with zero product,
    L = g, anchor rho(X)(w) = i(X) dw, trivial action of A on L."""
    n = gd.dim
    a = StructureAlgebra.zero(gd.dual_labels)
    anchors = []
    for i in range(n):
        dw = [ce_differential(gd, unit_vec(n, k)) for k in range(n)]
        cols = [interior_on_dual(unit_vec(n, i), dw[k]) for k in range(n)]
        anchors.append(LinearMap(RatMatrix.from_cols(cols)))
    zero_l = zero_vec(n)
    action = tuple(tuple(zero_l for _ in range(n)) for _ in range(n))
    return LieRinehartPair(a, gd.g, tuple(anchors), action)
