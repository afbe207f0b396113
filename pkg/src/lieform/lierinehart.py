"""Lie-Rinehart pairs over Q.

A pair couples a commutative associative algebra A with a Lie algebra L
through two actions: the anchor (one derivation of A per L basis element)
and an A-module action on L.  The compatibility identities are

    [X, aY] = X(a) Y + a [X, Y]        (Leibniz)
    (aX)(b) = a (X(b))                 (module compatibility)

together with the anchor being a morphism of Lie algebras.  The diamond
product packages everything into one bilinear multiplication on A + L.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (LinearMap, PropertyReport, StructureAlgebra,
                      check_property, derivations, express_in_matrices,
                      is_derivation)
from .exactlin import (RatMatrix, Subspace, Vector, add_vec, is_zero_vec,
                       sub_vec, unit_vec, zero_vec)


class ConstructionError(Exception):
    """A construction left its target space; carries the failing indices."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


class PreconditionError(Exception):
    """An operation was invoked outside its stated hypotheses."""


@dataclass(frozen=True)
class LieRinehartPair:
    a: StructureAlgebra
    l: StructureAlgebra
    anchor: tuple[LinearMap, ...]          # one map on A per L basis vector
    action: tuple                          # action[i][j] = e_i . X_j in L coords

    @property
    def a_dim(self) -> int:
        return self.a.dim

    @property
    def l_dim(self) -> int:
        return self.l.dim

    def act(self, x: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
        """Module action of x in A on v in L, extended bilinearly."""
        out = [Fraction(0)] * self.l_dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                row = self.action[i][j]
                coeff = xi * vj
                for k in range(self.l_dim):
                    if row[k] != 0:
                        out[k] += coeff * row[k]
        return tuple(out)

    def anchor_of(self, v: Sequence[Fraction]) -> RatMatrix:
        """Matrix of the derivation rho(v) for v in L coordinates."""
        m = RatMatrix.zeros(self.a_dim, self.a_dim)
        for j, vj in enumerate(v):
            if vj != 0:
                m = m + self.anchor[j].matrix.scale(vj)
        return m

    def validate(self) -> None:
        """Raise ValueError on any type-invariant violation."""
        if len(self.anchor) != self.l_dim or len(self.action) != self.a_dim:
            raise ValueError("anchor/action shape mismatch")
        for prop in ("associative", "commutative"):
            rep = check_property(self.a, prop)
            if not rep.holds:
                raise ValueError(f"A not {prop}, witness {rep.witness}")
        for prop in ("anticommutative", "jacobi"):
            rep = check_property(self.l, prop)
            if not rep.holds:
                raise ValueError(f"L not {prop}, witness {rep.witness}")
        for j, rho in enumerate(self.anchor):
            rep = is_derivation(self.a, rho)
            if not rep.holds:
                raise ValueError(f"anchor of {self.l.basis_labels[j]} is not "
                                 f"a derivation, witness {rep.witness}")


@dataclass(frozen=True)
class AxiomReport:
    leibniz_ok: bool
    module_compat_ok: bool
    anchor_morphism_ok: bool
    leibniz_witness: Optional[tuple[int, int, int]] = None
    module_compat_witness: Optional[tuple[int, int, int]] = None
    anchor_witness: Optional[tuple[int, int]] = None

    @property
    def all_ok(self) -> bool:
        return (self.leibniz_ok and self.module_compat_ok
                and self.anchor_morphism_ok)


def check_lr_axioms(p: LieRinehartPair) -> AxiomReport:
    """Exhaustive check of both compatibility identities and the anchor
    morphism property on all basis tuples."""
    na, nl = p.a_dim, p.l_dim
    leib_w = None
    for j in range(nl):                      # [X_j, e_i X_k]
        for i in range(na):
            ei = unit_vec(na, i)
            for k in range(nl):
                lhs = p.l.multiply(unit_vec(nl, j), p.action[i][k])
                rho_a = p.anchor[j].apply(ei)
                rhs = add_vec(p.act(rho_a, unit_vec(nl, k)),
                              p.act(ei, p.l.c[j][k]))
                if lhs != rhs:
                    leib_w = (j, i, k)
                    break
            if leib_w:
                break
        if leib_w:
            break
    compat_w = None
    for i in range(na):                      # rho(e_i X_j)(e_b)
        ei = unit_vec(na, i)
        for j in range(nl):
            rho_aix = p.anchor_of(p.action[i][j])
            for b in range(na):
                lhs = rho_aix.col(b)
                rhs = p.a.multiply(ei, p.anchor[j].matrix.col(b))
                if lhs != rhs:
                    compat_w = (i, j, b)
                    break
            if compat_w:
                break
        if compat_w:
            break
    anchor_w = None
    for j in range(nl):                      # rho([X_j, X_k]) = [rho X_j, rho X_k]
        for k in range(nl):
            lhs = p.anchor_of(p.l.c[j][k])
            rhs = (p.anchor[j].matrix * p.anchor[k].matrix -
                   p.anchor[k].matrix * p.anchor[j].matrix)
            if lhs != rhs:
                anchor_w = (j, k)
                break
        if anchor_w:
            break
    return AxiomReport(leib_w is None, compat_w is None, anchor_w is None,
                       leib_w, compat_w, anchor_w)


def is_faithful(p: LieRinehartPair) -> bool:
    """True iff the anchor L -> Der(A) is injective."""
    if p.l_dim == 0:
        return True
    cols = [rho.flatten() for rho in p.anchor]
    from .exactlin import nullspace
    return nullspace(RatMatrix.from_cols(cols)).dim == 0


def faithful_lemma_check(p: LieRinehartPair) -> bool:
    """Under fidelity and module compatibility, the Leibniz identity is
    forced; confirm it constructively on this pair's basis tuples."""
    rep = check_lr_axioms(p)
    if not rep.module_compat_ok:
        raise PreconditionError(
            f"module compatibility fails, witness {rep.module_compat_witness}")
    if not is_faithful(p):
        raise PreconditionError("anchor is not injective")
    return rep.leibniz_ok


def full_lie_rinehart(a: StructureAlgebra) -> LieRinehartPair:
    """The pair with L = Der(A), anchor = inclusion, and module action
    (aX)(e_i) = a (X(e_i)) re-expressed in the canonical derivation basis."""
    for prop in ("associative", "commutative"):
        rep = check_property(a, prop)
        if not rep.holds:
            raise ValueError(f"A not {prop}, witness {rep.witness}")
    der = derivations(a)
    gens = der.gens
    nl = len(gens)
    action = []
    for i in range(a.dim):
        lmat = a.left_mult_matrix(i)
        row = []
        for j in range(nl):
            coords = express_in_matrices(gens, LinearMap(lmat * gens[j].matrix))
            if coords is None:
                # impossible for commutative A: aX is again a derivation
                raise AssertionError("module action escaped Der(A)")
            row.append(tuple(coords))
        action.append(tuple(row))
    return LieRinehartPair(a, der.bracket, gens, tuple(action))


def subalgebra_pair(a: StructureAlgebra, lsub: Subspace) -> LieRinehartPair:
    """The pair on a bracket- and module-closed subalgebra of Der(A),
    given as a subspace of the flattened matrix space."""
    n = a.dim
    if lsub.ambient_dim != n * n:
        raise ValueError("subspace must live in the n^2 matrix space")
    mats = tuple(LinearMap.unflatten(v, n) for v in lsub.basis)
    for t, m in enumerate(mats):
        rep = is_derivation(a, m)
        if not rep.holds:
            raise ValueError(f"basis vector {t} is not a derivation, "
                             f"witness {rep.witness}")
    k = len(mats)
    labels = tuple(f"S{i + 1}" for i in range(k))
    table = [[None] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            coords = lsub.coords_of(mats[i].commutator(mats[j]).flatten())
            if coords is None:
                raise ValueError("not a Lie subalgebra: bracket escapes span")
            table[i][j] = coords
    bracket = StructureAlgebra(labels, table) if k else StructureAlgebra((), [])
    action = []
    for i in range(n):
        lmat = a.left_mult_matrix(i)
        row = []
        for j in range(k):
            coords = lsub.coords_of((lmat * mats[j].matrix).entries)
            if coords is None:
                raise ConstructionError(
                    f"module action {a.basis_labels[i]}*{labels[j]} "
                    "escapes the subalgebra", (i, j))
            row.append(tuple(coords))
        action.append(tuple(row))
    return LieRinehartPair(a, bracket, mats, tuple(action))


def module_closure_check(a: StructureAlgebra, lsub: Subspace) -> PropertyReport:
    """True iff aX stays in lsub for every basis a of A and X of lsub.
    Rejects subspaces that are not Lie subalgebras of Der(A)."""
    n = a.dim
    if lsub.ambient_dim != n * n:
        raise ValueError("subspace must live in the n^2 matrix space")
    mats = [LinearMap.unflatten(v, n) for v in lsub.basis]
    for t, m in enumerate(mats):
        rep = is_derivation(a, m)
        if not rep.holds:
            raise ValueError(f"basis vector {t} is not a derivation")
    for i in range(len(mats)):
        for j in range(len(mats)):
            if not lsub.contains(mats[i].commutator(mats[j]).flatten()):
                raise ValueError("not a Lie subalgebra: bracket escapes span")
    for i in range(n):
        lmat = a.left_mult_matrix(i)
        for j, m in enumerate(mats):
            if not lsub.contains((lmat * m.matrix).entries):
                return PropertyReport("module_closure", False, (i, j))
    return PropertyReport("module_closure", True)


@dataclass(frozen=True)
class DiamondAlgebra:
    """Single multiplication on A + L; basis is A-part then L-part."""
    table: StructureAlgebra
    a_dim: int
    l_dim: int


def _embed_a(v: Sequence[Fraction], na: int, nl: int) -> Vector:
    return tuple(v) + zero_vec(nl)


def _embed_l(v: Sequence[Fraction], na: int, nl: int) -> Vector:
    return zero_vec(na) + tuple(v)


def diamond_table(p: LieRinehartPair) -> DiamondAlgebra:
    """The combined structure tensor of the diamond product."""
    rep = check_lr_axioms(p)
    if not rep.all_ok:
        raise ValueError(f"Lie-Rinehart axioms fail: {rep}")
    na, nl = p.a_dim, p.l_dim
    labels = p.a.basis_labels + p.l.basis_labels
    dim = na + nl
    c = [[zero_vec(dim)] * dim for _ in range(dim)]
    for i in range(na):
        for j in range(na):
            c[i][j] = _embed_a(p.a.c[i][j], na, nl)
        for j in range(nl):
            c[i][na + j] = _embed_l(p.action[i][j], na, nl)
    for i in range(nl):
        for j in range(na):
            c[na + i][j] = _embed_a(p.anchor[i].matrix.col(j), na, nl)
        for j in range(nl):
            c[na + i][na + j] = _embed_l(p.l.c[i][j], na, nl)
    return DiamondAlgebra(StructureAlgebra(labels, c), na, nl)


# The six associator identities of the diamond product.  Identity names
# use X, Y for L arguments and a, b for A arguments; the third one is
# A(X,Y,a) = Y(X(a)), which follows from A(X,Y,a) = X(Y(a)) - [X,Y](a).
ASSOCIATOR_IDENTITIES = (
    "A(X,a,Y)=a[X,Y]",
    "A(a,X,Y)=Y(a)X",
    "A(X,Y,a)=Y(X(a))",
    "A(X,a,b)=aX(b)",
    "A(a,X,b)=0",
    "A(a,b,X)=0",
)


def associator_profile(p: LieRinehartPair) -> tuple[PropertyReport, ...]:
    """Verify all six associator identities on all basis tuples of the
    diamond algebra.  Witnesses are global diamond basis indices."""
    dia = diamond_table(p).table
    na, nl = p.a_dim, p.l_dim
    dim = na + nl

    def g(i: int) -> Vector:
        return unit_vec(dim, i)

    reports = []

    def run(name: str, triples, rhs_fun):
        for t in triples:
            lhs = dia.associator(g(t[0]), g(t[1]), g(t[2]))
            if lhs != rhs_fun(t):
                reports.append(PropertyReport(name, False, t))
                return
        reports.append(PropertyReport(name, True))

    a_idx = range(na)
    l_idx = range(na, dim)

    run(ASSOCIATOR_IDENTITIES[0],
        ((x, i, y) for x in l_idx for i in a_idx for y in l_idx),
        lambda t: _embed_l(p.act(unit_vec(na, t[1]),
                                 p.l.c[t[0] - na][t[2] - na]), na, nl))
    run(ASSOCIATOR_IDENTITIES[1],
        ((i, x, y) for i in a_idx for x in l_idx for y in l_idx),
        lambda t: _embed_l(p.act(p.anchor[t[2] - na].apply(unit_vec(na, t[0])),
                                 unit_vec(nl, t[1] - na)), na, nl))
    run(ASSOCIATOR_IDENTITIES[2],
        ((x, y, i) for x in l_idx for y in l_idx for i in a_idx),
        lambda t: _embed_a(p.anchor[t[1] - na].apply(
            p.anchor[t[0] - na].apply(unit_vec(na, t[2]))), na, nl))
    run(ASSOCIATOR_IDENTITIES[3],
        ((x, i, j) for x in l_idx for i in a_idx for j in a_idx),
        lambda t: _embed_a(p.a.multiply(unit_vec(na, t[1]),
                                        p.anchor[t[0] - na].apply(
                                            unit_vec(na, t[2]))), na, nl))
    zero = zero_vec(dim)
    run(ASSOCIATOR_IDENTITIES[4],
        ((i, x, j) for i in a_idx for x in l_idx for j in a_idx),
        lambda t: zero)
    run(ASSOCIATOR_IDENTITIES[5],
        ((i, j, x) for i in a_idx for j in a_idx for x in l_idx),
        lambda t: zero)
    return tuple(reports)


def psi_bracket(p: LieRinehartPair) -> StructureAlgebra:
    """The antisymmetrized multiplication on A + L:
    psi(X,a) = X(a) - aX, psi(X,Y) = [X,Y], psi(a,b) = 0."""
    na, nl = p.a_dim, p.l_dim
    dim = na + nl
    labels = p.a.basis_labels + p.l.basis_labels
    c = [[zero_vec(dim)] * dim for _ in range(dim)]
    for i in range(na):
        for j in range(nl):
            a_part = tuple(-x for x in p.anchor[j].matrix.col(i))
            c[i][na + j] = a_part + p.action[i][j]
            c[na + j][i] = tuple(-x for x in c[i][na + j])
    for i in range(nl):
        for j in range(nl):
            c[na + i][na + j] = _embed_l(p.l.c[i][j], na, nl)
    return StructureAlgebra(labels, c)


@dataclass(frozen=True)
class PsiJacobiatorReport:
    dim: int
    nonzero: dict            # (u, v, w) -> jacobiator vector
    matches_phi: bool
    phi_witness: Optional[tuple[int, int, int]]

    @property
    def all_zero(self) -> bool:
        return not self.nonzero


def _phi_value(p: LieRinehartPair, u: int, v: int, w: int) -> Vector:
    """The antisymmetric trilinear map Phi on diamond basis indices:
    Phi(a,b,X) = bX(a) - aX(b), Phi(a,X,Y) = a[X,Y], zero otherwise."""
    na, nl = p.a_dim, p.l_dim
    idx = (u, v, w)
    kinds = tuple(0 if i < na else 1 for i in idx)
    n_l = sum(kinds)
    if n_l in (0, 3):
        return zero_vec(na + nl)
    # stable sort A-arguments first; parity of the permutation gives the sign
    order = sorted(range(3), key=lambda t: kinds[t])
    sign = 1
    perm = list(order)
    for i in range(3):
        for j in range(i + 1, 3):
            if perm[i] > perm[j]:
                sign = -sign
    args = [idx[t] for t in order]
    if n_l == 1:
        ia, ib, jx = args[0], args[1], args[2] - na
        xa = p.anchor[jx].apply(unit_vec(na, ia))
        xb = p.anchor[jx].apply(unit_vec(na, ib))
        val = sub_vec(p.a.multiply(unit_vec(na, ib), xa),
                      p.a.multiply(unit_vec(na, ia), xb))
        out = _embed_a(val, na, nl)
    else:
        ia, jx, jy = args[0], args[1] - na, args[2] - na
        val = p.act(unit_vec(na, ia), p.l.c[jx][jy])
        out = _embed_l(val, na, nl)
    if sign < 0:
        out = tuple(-x for x in out)
    return out


def psi_jacobiator(p: LieRinehartPair) -> PsiJacobiatorReport:
    """J_psi on all basis triples, compared against Phi."""
    psi = psi_bracket(p)
    dim = psi.dim

    def bracket_with_basis(v: Sequence[Fraction], w: int) -> Vector:
        out = [Fraction(0)] * dim
        for a, va in enumerate(v):
            if va == 0:
                continue
            row = psi.c[a][w]
            for k in range(dim):
                if row[k] != 0:
                    out[k] += va * row[k]
        return tuple(out)

    nonzero = {}
    phi_witness = None
    for u in range(dim):
        for v in range(dim):
            puv = psi.c[u][v]
            for w in range(dim):
                j = add_vec(bracket_with_basis(puv, w),
                            add_vec(bracket_with_basis(psi.c[v][w], u),
                                    bracket_with_basis(psi.c[w][u], v)))
                if not is_zero_vec(j):
                    nonzero[(u, v, w)] = j
                if phi_witness is None and j != _phi_value(p, u, v, w):
                    phi_witness = (u, v, w)
    return PsiJacobiatorReport(dim, nonzero, phi_witness is None, phi_witness)
