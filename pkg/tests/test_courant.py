"""The double bracket on g + g*, checked against a brute-force oracle
that expands ([X1, X2], i(X1) dw2) directly from the definitions."""

from fractions import Fraction as F

import pytest

from lieform.algebra import StructureAlgebra, check_property
from lieform.courant import (LieAlgebraData, ce_differential, courant_bracket,
                             courant_checks, courant_table, courant_to_lr,
                             interior_on_dual, two_form_coeffs)
from lieform.exactlin import unit_vec, vec, zero_vec
from lieform.lierinehart import check_lr_axioms, diamond_table


def solv2():
    g = StructureAlgebra.from_products(
        ("e1", "e2"), {(0, 1): {1: 1}, (1, 0): {1: -1}})
    return LieAlgebraData(g, ("w1", "w2"))


def heis3():
    g = StructureAlgebra.from_products(
        ("e1", "e2", "e3"), {(0, 1): {2: 1}, (1, 0): {2: -1}})
    return LieAlgebraData(g, ("w1", "w2", "w3"))


def abelian(n):
    g = StructureAlgebra.zero(tuple(f"e{i + 1}" for i in range(n)))
    return LieAlgebraData(g, tuple(f"w{i + 1}" for i in range(n)))


def oracle_bracket(gd, u, v):
    """Independent expansion of the double bracket: the g-part is the g
    bracket of the g-parts, the dual part is dw2(X1, .) computed from
    dw(X, Y) = -w([X, Y]) by direct summation."""
    n = gd.dim
    x1, x2, w2 = u[:n], v[:n], v[n:]
    g_part = gd.g.multiply(x1, x2)
    dual = []
    for j in range(n):
        total = F(0)
        ej = unit_vec(n, j)
        for i in range(n):
            if x1[i] == 0:
                continue
            br = gd.g.multiply(unit_vec(n, i), ej)
            total += x1[i] * (-sum(w2[k] * br[k] for k in range(n)))
        dual.append(total)
    return tuple(g_part) + tuple(dual)


def test_ce_differential_solv2():
    gd = solv2()
    dw1 = ce_differential(gd, unit_vec(2, 0))
    assert dw1.is_zero()
    dw2 = ce_differential(gd, unit_vec(2, 1))
    assert two_form_coeffs(dw2) == {(0, 1): F(-1)}   # -w1 ^ w2


def test_ce_differential_heisenberg():
    gd = heis3()
    assert ce_differential(gd, unit_vec(3, 0)).is_zero()
    assert ce_differential(gd, unit_vec(3, 1)).is_zero()
    dw3 = ce_differential(gd, unit_vec(3, 2))
    assert two_form_coeffs(dw3) == {(0, 1): F(-1)}   # -w1 ^ w2
    # oracle: dw(e_i, e_j) = -w([e_i, e_j]) on every pair
    for i in range(3):
        for j in range(3):
            br = gd.g.multiply(unit_vec(3, i), unit_vec(3, j))
            assert dw3.at(i, j) == -br[2]


def test_courant_bracket_table_entries():
    gd = solv2()
    v = [unit_vec(4, i) for i in range(4)]
    assert courant_bracket(gd, v[0], v[3]) == vec([0, 0, 0, -1])  # -v4
    assert courant_bracket(gd, v[1], v[3]) == vec([0, 0, 1, 0])   # v3
    for u in v:
        assert courant_bracket(gd, v[2], u) == zero_vec(4)
        assert courant_bracket(gd, v[3], u) == zero_vec(4)


def test_courant_table_solv2_exact():
    t = courant_table(solv2()).table
    want = StructureAlgebra.from_products(
        ("e1", "e2", "w1", "w2"),
        {(0, 1): {1: 1}, (1, 0): {1: -1},
         (0, 3): {3: -1}, (1, 3): {2: 1}})
    assert t.c == want.c


def test_courant_table_abelian_zero():
    t = courant_table(abelian(3)).table
    assert all(all(x == 0 for x in t.c[i][j])
               for i in range(6) for j in range(6))


def test_courant_table_heisenberg_against_oracle():
    gd = heis3()
    t = courant_table(gd).table
    for i in range(6):
        for j in range(6):
            assert t.c[i][j] == oracle_bracket(gd, unit_vec(6, i),
                                               unit_vec(6, j))


def test_courant_bracket_bilinear():
    gd = heis3()
    u = vec([1, 2, 0, 0, -1, F(1, 2)])
    v = vec([0, 1, 3, 1, 0, 2])
    w = vec([2, 0, 1, 0, 1, 0])
    left = courant_bracket(gd, u, tuple(a + b for a, b in zip(v, w)))
    split = tuple(a + b for a, b in zip(courant_bracket(gd, u, v),
                                        courant_bracket(gd, u, w)))
    assert left == split
    assert courant_bracket(gd, u, v) == oracle_bracket(gd, u, v)


def test_courant_checks_solv2():
    rep = courant_checks(solv2())
    assert rep.leibniz.holds
    assert not rep.jacobi.holds
    assert rep.jacobi.witness == (0, 1, 3)
    assert rep.anchor_morphism_ok
    assert rep.complete


def test_courant_checks_abelian():
    rep = courant_checks(abelian(2))
    assert rep.leibniz.holds
    assert rep.jacobi.holds


def test_courant_checks_heisenberg_leibniz():
    rep = courant_checks(heis3())
    assert rep.leibniz.holds


def test_courant_to_lr_axioms():
    for gd in (solv2(), heis3(), abelian(2)):
        pair = courant_to_lr(gd)
        assert check_lr_axioms(pair).all_ok
        pair.validate()


def test_courant_to_lr_abelian_all_zero():
    pair = courant_to_lr(abelian(2))
    assert all(m.matrix.is_zero() for m in pair.anchor)
    assert all(all(v == zero_vec(2) for v in row) for row in pair.action)


def test_diamond_coincides_with_double_bracket():
    for gd in (solv2(), heis3()):
        n = gd.dim
        pair = courant_to_lr(gd)
        dia = diamond_table(pair).table
        ct = courant_table(gd).table
        perm = [n + i for i in range(n)] + list(range(n))
        for i in range(2 * n):
            for j in range(2 * n):
                want = ct.c[i][j]
                got = dia.c[perm[i]][perm[j]]
                assert tuple(got[perm[k]] for k in range(2 * n)) == want
        assert check_property(ct, "left_leibniz").holds


def test_interior_linear_and_abelian_criterion():
    gd = heis3()
    dw3 = ce_differential(gd, unit_vec(3, 2))
    x = vec([2, -1, 3])
    y = vec([0, 1, 1])
    lhs = interior_on_dual(tuple(a + b for a, b in zip(x, y)), dw3)
    rhs = tuple(a + b for a, b in zip(interior_on_dual(x, dw3),
                                      interior_on_dual(y, dw3)))
    assert lhs == rhs
    # dw = 0 for every w exactly when g is abelian
    assert all(ce_differential(abelian(3), unit_vec(3, k)).is_zero()
               for k in range(3))
    assert not all(ce_differential(gd, unit_vec(3, k)).is_zero()
                   for k in range(3))


def test_lie_algebra_data_rejects_non_lie():
    bad = StructureAlgebra.from_products(("e1", "e2"), {(0, 1): {1: 1}})
    with pytest.raises(ValueError):
        LieAlgebraData(bad, ("w1", "w2"))
