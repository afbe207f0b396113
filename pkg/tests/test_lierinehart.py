"""Lie-Rinehart pairs: axioms, fidelity, full pairs, the diamond product,
and the antisymmetrized bracket with its jacobiator."""

import dataclasses
import itertools
import random
from fractions import Fraction as F

import pytest

from lieform.algebra import (LinearMap, StructureAlgebra, check_property,
                             derivations, is_derivation)
from lieform.exactlin import (RatMatrix, Subspace, add_vec, unit_vec, vec,
                              zero_vec)
from lieform.lierinehart import (ConstructionError, PreconditionError,
                                 associator_profile, check_lr_axioms,
                                 diamond_table, faithful_lemma_check,
                                 full_lie_rinehart, is_faithful,
                                 module_closure_check, psi_bracket,
                                 psi_jacobiator, subalgebra_pair)

from test_algebra import dim3_unital_sq


def full_pair():
    return full_lie_rinehart(dim3_unital_sq())


def zero_algebra(n):
    return StructureAlgebra.zero(tuple(f"e{i + 1}" for i in range(n)))


def random_commutative_algebra(rng, dim):
    c = [[[F(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = [F(rng.randint(-1, 1)) for _ in range(dim)]
            c[i][j] = v
            c[j][i] = list(v)
    return StructureAlgebra(tuple(f"e{i + 1}" for i in range(dim)), c)


# --- axioms ------------------------------------------------------------------

def test_full_pair_axioms_pass():
    rep = check_lr_axioms(full_pair())
    assert rep.all_ok


def oracle_first_leibniz_failure(p):
    """Re-derive the first failing Leibniz tuple by expanding both sides
    of [X, aY] = X(a)Y + a[X, Y] from the pair data."""
    na, nl = p.a_dim, p.l_dim
    for j in range(nl):
        for i in range(na):
            for k in range(nl):
                lhs = p.l.multiply(unit_vec(nl, j), p.action[i][k])
                xa = p.anchor[j].apply(unit_vec(na, i))
                rhs = add_vec(p.act(xa, unit_vec(nl, k)),
                              p.act(unit_vec(na, i), p.l.c[j][k]))
                if lhs != rhs:
                    return (j, i, k)
    return None


def _mutate_action(p, i, j, value):
    action = [list(row) for row in p.action]
    action[i][j] = value
    return dataclasses.replace(
        p, action=tuple(tuple(tuple(v) for v in row) for row in action))


def test_mutated_e3_action_breaks_module_compatibility():
    # Zeroing e3 . D1 (the e3 X vector) leaves the Leibniz identity intact,
    # because that entry enters both of its sides with the same weight
    # here; what breaks is rho(e3 X)(e3) = e3 (X(e3)) = e2 != 0.
    p = full_pair()
    bad = _mutate_action(p, 2, 0, zero_vec(p.l_dim))
    rep = check_lr_axioms(bad)
    assert rep.leibniz_ok
    assert rep.leibniz_witness is None
    assert oracle_first_leibniz_failure(bad) is None
    assert not rep.module_compat_ok
    assert rep.module_compat_witness == (2, 0, 2)


def test_mutated_e1_action_fails_leibniz_with_first_witness():
    # Zeroing e1 . D2 hits [D2, e1 D1] = -D2/2 on the left while the right
    # side only sees the mutated entry, so the Leibniz identity fails.
    p = full_pair()
    bad = _mutate_action(p, 0, 1, zero_vec(p.l_dim))
    rep = check_lr_axioms(bad)
    assert not rep.leibniz_ok
    assert rep.leibniz_witness == oracle_first_leibniz_failure(bad) == (1, 0, 0)


def test_trivial_l_passes_vacuously():
    a = dim3_unital_sq()
    p = dataclasses.replace(full_pair(), l=StructureAlgebra((), []),
                            anchor=(), action=((), (), ()))
    rep = check_lr_axioms(p)
    assert rep.all_ok


# --- fidelity ----------------------------------------------------------------

def test_full_pair_is_faithful():
    assert is_faithful(full_pair())


def test_zero_anchor_not_faithful():
    p = full_pair()
    zero = LinearMap(RatMatrix.zeros(3, 3))
    bad = dataclasses.replace(p, anchor=(zero, zero))
    assert not is_faithful(bad)


def test_faithful_lemma_on_full_pair():
    assert faithful_lemma_check(full_pair())


def test_faithful_lemma_preconditions():
    p = full_pair()
    zero = LinearMap(RatMatrix.zeros(3, 3))
    with pytest.raises(PreconditionError):
        faithful_lemma_check(dataclasses.replace(p, anchor=(zero, zero)))
    # break module compatibility: claim the anchor of e1 D1 is D2's
    action = [list(row) for row in p.action]
    action[0][0] = unit_vec(p.l_dim, 1)
    bad = dataclasses.replace(
        p, action=tuple(tuple(tuple(v) for v in row) for row in action))
    with pytest.raises(PreconditionError):
        faithful_lemma_check(bad)


# --- full pairs --------------------------------------------------------------

def test_full_pair_action_values():
    p = full_pair()
    # e1 acts as the unit, e2 kills both generators, e3 D1 = D2/2, e3 D2 = 0
    assert p.action[0][0] == vec([1, 0])
    assert p.action[0][1] == vec([0, 1])
    assert p.action[1][0] == vec([0, 0])
    assert p.action[1][1] == vec([0, 0])
    assert p.action[2][0] == vec([0, F(1, 2)])
    assert p.action[2][1] == vec([0, 0])


def test_full_pair_zero_algebra_action_vanishes():
    p = full_lie_rinehart(zero_algebra(2))
    assert p.l_dim == 4
    for i in range(2):
        for j in range(4):
            assert p.action[i][j] == zero_vec(4)


def test_full_pair_unit_nilpotent_action():
    a = StructureAlgebra.from_products(
        ("e1", "e2"), {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})
    p = full_lie_rinehart(a)
    assert p.l_dim == 1
    assert p.action[0][0] == vec([1])   # e1 X = X
    assert p.action[1][0] == vec([0])   # e2 X = 0


def test_full_pair_rejects_noncommutative():
    bad = StructureAlgebra.from_products(
        ("e1", "e2"), {(0, 1): {1: 1}})
    with pytest.raises(ValueError):
        full_lie_rinehart(bad)


def test_scaled_derivations_stay_derivations():
    """For commutative A every aX with X in Der(A) derives A again."""
    rng = random.Random(52)
    algebras = [dim3_unital_sq(), zero_algebra(2)]
    while len(algebras) < 8:
        a = random_commutative_algebra(rng, rng.randint(1, 3))
        if check_property(a, "associative").holds:
            algebras.append(a)
    for a in algebras:
        der = derivations(a)
        for i in range(a.dim):
            lmat = a.left_mult_matrix(i)
            for g in der.gens:
                assert is_derivation(a, LinearMap(lmat * g.matrix)).holds


# --- module closure ----------------------------------------------------------

def test_module_closure_witnesses():
    a = dim3_unital_sq()
    der = derivations(a)
    span_x = Subspace.from_spanning([der.gens[0].flatten()], 9)
    span_y = Subspace.from_spanning([der.gens[1].flatten()], 9)
    rep = module_closure_check(a, span_x)
    assert not rep.holds
    assert rep.witness == (2, 0)        # e3 X leaves the line through X
    assert module_closure_check(a, span_y).holds
    assert module_closure_check(a, der.span()).holds


def test_module_closure_rejects_non_subalgebra():
    o2 = zero_algebra(2)
    der = derivations(o2)
    # span(E12, E21) is not closed under the commutator
    sub = Subspace.from_spanning([der.gens[1].flatten(),
                                  der.gens[2].flatten()], 4)
    with pytest.raises(ValueError):
        module_closure_check(o2, sub)


def test_subalgebra_pair_rejects_open_module():
    a = dim3_unital_sq()
    der = derivations(a)
    span_x = Subspace.from_spanning([der.gens[0].flatten()], 9)
    with pytest.raises(ConstructionError) as exc:
        subalgebra_pair(a, span_x)
    assert exc.value.witness == (2, 0)


# --- diamond product ---------------------------------------------------------

def test_diamond_trivial_l_equals_a():
    a = dim3_unital_sq()
    p = dataclasses.replace(full_pair(), l=StructureAlgebra((), []),
                            anchor=(), action=((), (), ()))
    dia = diamond_table(p)
    assert dia.table.c == a.c
    assert dia.table.basis_labels == a.basis_labels


def test_diamond_blocks_match_pair():
    p = full_pair()
    dia = diamond_table(p).table
    na = p.a_dim
    # A-block is A's product, L-block is the bracket
    for i in range(na):
        for j in range(na):
            assert dia.c[i][j][:na] == p.a.c[i][j]
    for i in range(p.l_dim):
        for j in range(p.l_dim):
            assert dia.c[na + i][na + j][na:] == p.l.c[i][j]
    # mixed blocks: anchor and module action
    assert dia.c[na][2][:na] == p.anchor[0].matrix.col(2)
    assert dia.c[2][na][na:] == p.action[2][0]


def test_diamond_rejects_broken_pair():
    p = full_pair()
    action = [list(row) for row in p.action]
    action[2][0] = zero_vec(p.l_dim)
    bad = dataclasses.replace(
        p, action=tuple(tuple(tuple(v) for v in row) for row in action))
    with pytest.raises(ValueError):
        diamond_table(bad)


# --- associator identities ---------------------------------------------------

def test_associator_profile_full_pair():
    for rep in associator_profile(full_pair()):
        assert rep.holds, rep


def test_associator_x_e3_e3_value():
    # A(X, e3, e3) = X(e3 e3) - (X e3) e3 = X(e2) - e3 e3 = 2e2 - e2 = e2
    p = full_pair()
    dia = diamond_table(p).table
    x = vec([0, 0, 0, 2, 0])            # X = 2 D1 in diamond coordinates
    e3 = unit_vec(5, 2)
    assert dia.associator(x, e3, e3) == unit_vec(5, 1)  # = e2


def test_associator_a_x_b_zero_everywhere():
    p = full_pair()
    dia = diamond_table(p).table
    na = p.a_dim
    for i, j in itertools.product(range(na), repeat=2):
        for k in range(p.l_dim):
            assert dia.associator(unit_vec(5, i), unit_vec(5, na + k),
                                  unit_vec(5, j)) == zero_vec(5)


def test_associator_zero_pair_both_sides_vanish():
    # on the zero algebra A(X, a, b) = a X(b) has a zero product, so both
    # sides of the fourth identity are zero
    p = full_lie_rinehart(zero_algebra(2))
    dia = diamond_table(p).table
    for j in range(4):
        for i in range(2):
            for b in range(2):
                val = dia.associator(unit_vec(6, 2 + j), unit_vec(6, i),
                                     unit_vec(6, b))
                got = p.a.multiply(unit_vec(2, i),
                                   p.anchor[j].apply(unit_vec(2, b)))
                assert val == zero_vec(6)
                assert got == zero_vec(2)


# --- psi ---------------------------------------------------------------------

def test_psi_antisymmetric():
    for pair in (full_pair(), full_lie_rinehart(zero_algebra(2))):
        psi = psi_bracket(pair)
        assert check_property(psi, "anticommutative").holds


def test_psi_values_on_zero_algebra():
    p = full_lie_rinehart(zero_algebra(2))
    psi = psi_bracket(p)
    na = 2
    # psi(X1, e1) = X1(e1) = e1 since the module action vanishes
    assert psi.c[na + 0][0] == vec([1, 0, 0, 0, 0, 0])
    # psi(a, b) = 0
    assert psi.c[0][1] == zero_vec(6)


def test_psi_mixed_value_unital_sq():
    # psi(X, e3) = X(e3) - e3 X = e3 - Y, i.e. (0,0,1 | 0,-1) with X = 2 D1
    p = full_pair()
    psi = psi_bracket(p)
    x = vec([0, 0, 0, 2, 0])
    e3 = unit_vec(5, 2)
    val = tuple(sum(x[i] * psi.c[i][2][k] for i in range(5)) + F(0)
                for k in range(5))
    assert val == vec([0, 0, 1, 0, -1])


def test_psi_jacobiator_gl_n_vanishes():
    for n in (1, 2, 3):
        p = full_lie_rinehart(zero_algebra(n))
        rep = psi_jacobiator(p)
        assert rep.all_zero
        assert rep.matches_phi


def test_psi_jacobiator_pure_a_triples_vanish():
    p = full_pair()
    rep = psi_jacobiator(p)
    na = p.a_dim
    for t in itertools.product(range(na), repeat=3):
        assert t not in rep.nonzero


def test_psi_jacobiator_e3_x_y():
    # J(e3, X, Y) = e3 [X, Y] = e3 Y = 0
    p = full_pair()
    rep = psi_jacobiator(p)
    # X = 2 D1, Y = D2; by trilinearity the (e3, D1, D2) value scales J's
    assert (2, 3, 4) not in rep.nonzero
    assert rep.matches_phi


def test_psi_jacobiator_matches_phi_on_corpus_pairs():
    from conftest import load_fixture
    for name in ("a3_unit_sq.alg", "a2_zero.alg", "a3_unit.alg",
                 "a2_sq.alg", "a2_idem.alg", "a2_unit_nil.alg"):
        af = load_fixture(name)
        p = full_lie_rinehart(af.algebra)
        assert psi_jacobiator(p).matches_phi


# --- uniqueness of the full pair --------------------------------------------

def permutation_matrix(perm):
    n = len(perm)
    return RatMatrix.from_cols([unit_vec(n, perm[j]) for j in range(n)])


@pytest.mark.parametrize("perm", [(2, 0, 1), (1, 0, 2), (2, 1, 0)])
def test_full_pair_stable_under_basis_permutation(perm):
    a = dim3_unital_sq()
    pmat = permutation_matrix(perm)
    a2 = a.change_basis(pmat, new_labels=tuple(f"f{i}" for i in range(3)))
    p1 = full_lie_rinehart(a)
    p2 = full_lie_rinehart(a2)
    assert p1.l_dim == p2.l_dim
    # conjugate p2's generators back to the original coordinates and
    # express them in p1's canonical basis
    pinv = pmat.inverse()
    cols = []
    span1 = derivations(a).span()
    for g in p2.anchor:
        back = pmat * g.matrix * pinv
        coords = span1.coords_of(back.entries)
        assert coords is not None
        cols.append(coords)
    q = RatMatrix.from_cols(cols)
    assert q.inverse() is not None
    d1 = diamond_table(p1).table
    d2 = diamond_table(p2).table
    n, k = a.dim, p1.l_dim
    # block transport T = diag(pmat, q) carries diamond_2 onto diamond_1
    t = RatMatrix.from_rows(
        [[pmat.at(r, c) if c < n else F(0) for c in range(n + k)]
         if r < n else
         [F(0) if c < n else q.at(r - n, c - n) for c in range(n + k)]
         for r in range(n + k)])
    for u in range(n + k):
        for v in range(n + k):
            lhs = t.apply(d2.c[u][v])
            rhs = d1.multiply(t.apply(unit_vec(n + k, u)),
                              t.apply(unit_vec(n + k, v)))
            assert lhs == rhs
