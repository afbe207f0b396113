"""Poisson algebras and the hamiltonian route to Lie-Rinehart pairs."""

from lieform.algebra import StructureAlgebra, is_derivation
from lieform.exactlin import RatMatrix, unit_vec, vec, zero_vec
from lieform.lierinehart import check_lr_axioms
from lieform.poisson import (PoissonAlgebra, check_poisson,
                             hamiltonian_commutator_check, hamiltonian_map,
                             poisson_center, poisson_to_lr)


def unital_products(n):
    prods = {}
    for i in range(n):
        prods[(0, i)] = {i: 1}
        prods[(i, 0)] = {i: 1}
    return prods


def poisson_zero_solv():
    """Zero product with {e1, e2} = e2."""
    return PoissonAlgebra(
        StructureAlgebra.zero(("e1", "e2")),
        StructureAlgebra.from_products(("e1", "e2"),
                                       {(0, 1): {1: 1}, (1, 0): {1: -1}}))


def poisson_unit_solv():
    """e1 unit in dimension 3 with {e2, e3} = e3."""
    labels = ("e1", "e2", "e3")
    return PoissonAlgebra(
        StructureAlgebra.from_products(labels, unital_products(3)),
        StructureAlgebra.from_products(labels,
                                       {(1, 2): {2: 1}, (2, 1): {2: -1}}))


def poisson_bad_leibniz():
    """e1 unit with {e1, e2} = e2: the Leibniz rule fails."""
    labels = ("e1", "e2", "e3")
    return PoissonAlgebra(
        StructureAlgebra.from_products(labels, unital_products(3)),
        StructureAlgebra.from_products(labels,
                                       {(0, 1): {1: 1}, (1, 0): {1: -1}}))


def test_check_poisson_valid_fixtures():
    assert check_poisson(poisson_zero_solv()).holds
    assert check_poisson(poisson_unit_solv()).holds


def test_check_poisson_leibniz_failure():
    rep = check_poisson(poisson_bad_leibniz())
    assert not rep.holds
    assert rep.prop == "leibniz"
    # first failing triple: {e2, e1 e1} = -e2 while
    # e1 {e2, e1} + {e2, e1} e1 = -2 e2
    assert rep.witness == (1, 0, 0)
    p = poisson_bad_leibniz()
    x, y, z = (unit_vec(3, i) for i in rep.witness)
    lhs = p.bracket.multiply(x, p.assoc.multiply(y, z))
    rhs = tuple(a + b for a, b in zip(
        p.assoc.multiply(y, p.bracket.multiply(x, z)),
        p.assoc.multiply(p.bracket.multiply(x, y), z)))
    assert lhs != rhs


def test_hamiltonian_maps_unit_solv():
    p = poisson_unit_solv()
    x_e1 = hamiltonian_map(p, unit_vec(3, 0))
    assert x_e1.matrix.is_zero()
    x_e2 = hamiltonian_map(p, unit_vec(3, 1))
    assert x_e2.matrix == RatMatrix.from_rows(
        [[0, 0, 0], [0, 0, 0], [0, 0, 1]])       # e3 -> e3
    x_e3 = hamiltonian_map(p, unit_vec(3, 2))
    assert x_e3.matrix == RatMatrix.from_rows(
        [[0, 0, 0], [0, 0, 0], [0, -1, 0]])      # e2 -> -e3


def test_hamiltonian_map_is_derivation():
    for p in (poisson_zero_solv(), poisson_unit_solv()):
        for i in range(p.dim):
            m = hamiltonian_map(p, unit_vec(p.dim, i))
            assert is_derivation(p.assoc, m).holds


def test_center_vector_gives_zero_map():
    p = poisson_unit_solv()
    z = poisson_center(p)
    assert z.dim == 1
    assert z.basis[0] == vec([1, 0, 0])
    assert hamiltonian_map(p, z.basis[0]).matrix.is_zero()


def test_center_dims():
    assert poisson_center(poisson_zero_solv()).dim == 0
    trivial = PoissonAlgebra(StructureAlgebra.zero(("a", "b")),
                             StructureAlgebra.zero(("a", "b")))
    assert poisson_center(trivial).dim == 2


def test_commutator_law():
    for p in (poisson_zero_solv(), poisson_unit_solv()):
        assert hamiltonian_commutator_check(p).holds


def test_poisson_to_lr_dim_law_and_axioms():
    for p in (poisson_zero_solv(), poisson_unit_solv()):
        pair = poisson_to_lr(p)
        assert pair.l_dim == p.dim - poisson_center(p).dim
        assert check_lr_axioms(pair).all_ok


def test_poisson_to_lr_trivial_bracket():
    trivial = PoissonAlgebra(StructureAlgebra.zero(("a", "b")),
                             StructureAlgebra.zero(("a", "b")))
    pair = poisson_to_lr(trivial)
    assert pair.l_dim == 0
    assert check_lr_axioms(pair).all_ok


def test_poisson_to_lr_zero_solv_rows_vanish():
    pair = poisson_to_lr(poisson_zero_solv())
    for i in range(2):
        for j in range(pair.l_dim):
            assert pair.action[i][j] == zero_vec(pair.l_dim)


def test_module_action_closed_on_random_valid_structures():
    # y X_x + x X_y = X_{xy} ties escaping actions together in pairs; a
    # seeded search over small structure constants finds the action closed
    # on every valid Poisson structure it produces.
    import random
    from lieform.algebra import check_property
    rng = random.Random(12345)
    checked = 0
    while checked < 40:
        n = rng.choice([3, 4])
        labels = ("e1", "e2", "e3", "e4")[:n]
        prods = {}
        for i in range(n):
            for j in range(i, n):
                if rng.random() < 0.4:
                    k = rng.randrange(n)
                    c = rng.choice([-1, 1])
                    prods[(i, j)] = {k: c}
                    prods[(j, i)] = {k: c}
        assoc = StructureAlgebra.from_products(labels, prods)
        if not check_property(assoc, "associative").holds:
            continue
        brs = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.4:
                    k = rng.randrange(n)
                    c = rng.choice([-1, 1, 2, -2])
                    brs[(i, j)] = {k: c}
                    brs[(j, i)] = {k: -c}
        p = PoissonAlgebra(assoc,
                           StructureAlgebra.from_products(labels, brs))
        if not check_poisson(p).holds:
            continue
        pair = poisson_to_lr(p)       # must not raise ConstructionError
        assert check_lr_axioms(pair).all_ok
        checked += 1


def test_faithful_when_center_zero():
    from lieform.lierinehart import is_faithful
    pair = poisson_to_lr(poisson_zero_solv())
    assert is_faithful(pair)
