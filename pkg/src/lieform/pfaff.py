"""Polynomial exterior calculus on R^n over Q.

Forms carry multivariate polynomial coefficients with exact rational
arithmetic, so every identity check here is exact: integrability is a
polynomial identity, contact/class computations are pointwise at rational
points.  The Cartan class is computed in the canonical quotient V*/W of
the cotangent space by the span W of the system at the point, with the
support of a 2-form taken as the column space of its coefficient matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactlin import (RatMatrix, Subspace, Vector, nullspace, rat, rref,
                       solve)

SAMPLE_SEED = 1729


class Poly:
    """Multivariate polynomial over Q; monomials keyed by exponent tuple."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        clean = {}
        for expts, coeff in (terms or {}).items():
            c = rat(coeff)
            if c != 0:
                if len(expts) != nvars:
                    raise ValueError("exponent tuple of wrong length")
                clean[tuple(expts)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: rat(c)})

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = rat(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def partial(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i] > 0:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = out.get(tuple(e2), Fraction(0)) + c * e[i]
        return Poly(self.nvars, out)

    def eval(self, pt: Sequence[Fraction]) -> Fraction:
        if len(pt) != self.nvars:
            raise ValueError("point dimension mismatch")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                for _ in range(k):
                    v *= x
            total += v
        return total

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        return f"Poly({self.terms})"


def _merge_indices(a: tuple, b: tuple) -> Optional[tuple[int, tuple]]:
    """Merge two strictly increasing index tuples; None if they overlap.
    Returns (sign, merged)."""
    if set(a) & set(b):
        return None
    merged = tuple(sorted(a + b))
    perm = list(a + b)
    sign = 1
    # parity of the permutation sorting perm
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign, merged


class PolyForm:
    """Degree-k exterior form with Poly coefficients on increasing
    index tuples."""

    __slots__ = ("nvars", "degree", "comps")

    def __init__(self, nvars: int, degree: int, comps: Optional[dict] = None):
        clean = {}
        for idx, p in (comps or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"bad index tuple {idx} for degree {degree}")
            if any(i < 0 or i >= nvars for i in idx):
                raise ValueError("index out of range")
            if not isinstance(p, Poly):
                p = Poly.const(nvars, p)
            if not p.is_zero():
                clean[idx] = p
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyForm is immutable")

    @classmethod
    def zero(cls, nvars: int, degree: int) -> "PolyForm":
        return cls(nvars, degree)

    @classmethod
    def zero_form(cls, p: Poly) -> "PolyForm":
        return cls(p.nvars, 0, {(): p})

    @classmethod
    def d_var(cls, nvars: int, i: int) -> "PolyForm":
        return cls(nvars, 1, {(i,): Poly.const(nvars, 1)})

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other: "PolyForm") -> "PolyForm":
        self._check_compat(other)
        out = dict(self.comps)
        for idx, p in other.comps.items():
            out[idx] = out[idx] + p if idx in out else p
        return PolyForm(self.nvars, self.degree, out)

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        return self + (-other)

    def __neg__(self) -> "PolyForm":
        return PolyForm(self.nvars, self.degree,
                        {i: -p for i, p in self.comps.items()})

    def scale(self, c) -> "PolyForm":
        return PolyForm(self.nvars, self.degree,
                        {i: p.scale(c) for i, p in self.comps.items()})

    def _check_compat(self, other: "PolyForm") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable list mismatch")
        if self.degree != other.degree:
            raise ValueError("degree mismatch")

    def sorted_comps(self) -> list:
        return sorted(self.comps.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.nvars, self.degree, self.comps) == \
               (other.nvars, other.degree, other.comps)

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree,
                     tuple((i, hash(p)) for i, p in self.sorted_comps())))

    def __repr__(self) -> str:
        return f"PolyForm(deg={self.degree}, {self.comps})"


class PolyVectorField:
    """Vector field with one Poly component per coordinate."""

    __slots__ = ("nvars", "components")

    def __init__(self, components: Sequence[Poly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("empty vector field")
        nv = comps[0].nvars
        for p in comps:
            if p.nvars != nv:
                raise ValueError("component variable mismatch")
        if len(comps) != nv:
            raise ValueError("need one component per variable")
        object.__setattr__(self, "nvars", nv)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    @classmethod
    def coordinate(cls, nvars: int, i: int) -> "PolyVectorField":
        return cls([Poly.const(nvars, 1 if j == i else 0)
                    for j in range(nvars)])

    @classmethod
    def constant(cls, coeffs: Sequence[Fraction]) -> "PolyVectorField":
        n = len(coeffs)
        return cls([Poly.const(n, c) for c in coeffs])


def wedge(a: PolyForm, b: PolyForm) -> PolyForm:
    if a.nvars != b.nvars:
        raise ValueError("variable list mismatch")
    out: dict = {}
    for ia, pa in a.comps.items():
        for ib, pb in b.comps.items():
            merged = _merge_indices(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            term = pa * pb
            if sign < 0:
                term = -term
            out[idx] = out[idx] + term if idx in out else term
    return PolyForm(a.nvars, a.degree + b.degree, out)


def ext_d(a: PolyForm) -> PolyForm:
    out: dict = {}
    for idx, p in a.comps.items():
        for i in range(a.nvars):
            if i in idx:
                continue
            dp = p.partial(i)
            if dp.is_zero():
                continue
            merged = _merge_indices((i,), idx)
            assert merged is not None
            sign, new_idx = merged
            term = dp if sign > 0 else -dp
            out[new_idx] = out[new_idx] + term if new_idx in out else term
    return PolyForm(a.nvars, a.degree + 1, out)


def interior(x: PolyVectorField, a: PolyForm) -> PolyForm:
    """Contraction in the first slot."""
    if x.nvars != a.nvars:
        raise ValueError("variable list mismatch")
    if a.degree < 1:
        raise ValueError("interior product needs degree >= 1")
    out: dict = {}
    for idx, p in a.comps.items():
        for t, i in enumerate(idx):
            comp = x.components[i]
            if comp.is_zero():
                continue
            term = p * comp
            if t % 2 == 1:
                term = -term
            rest = idx[:t] + idx[t + 1:]
            out[rest] = out[rest] + term if rest in out else term
    return PolyForm(a.nvars, a.degree - 1, out)


def eval_at(a: PolyForm, pt: Sequence[Fraction]) -> PolyForm:
    """Substitute the point; the result has constant coefficients."""
    if len(pt) != a.nvars:
        raise ValueError("point dimension mismatch")
    pt = tuple(rat(x) for x in pt)
    out = {idx: Poly.const(a.nvars, p.eval(pt)) for idx, p in a.comps.items()}
    return PolyForm(a.nvars, a.degree, out)


class PfaffSystem:
    """A family of degree-1 forms on a common variable list."""

    __slots__ = ("variables", "forms")

    def __init__(self, variables: Sequence[str], forms: Sequence[PolyForm]):
        variables = tuple(variables)
        forms = tuple(forms)
        for f in forms:
            if f.nvars != len(variables):
                raise ValueError("form variable count mismatch")
            if f.degree != 1:
                raise ValueError("Pfaff systems consist of 1-forms")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "forms", forms)

    def __setattr__(self, name, value):
        raise AttributeError("PfaffSystem is immutable")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def rank(self) -> int:
        return len(self.forms)


def covector_at(form: PolyForm, pt: Sequence[Fraction]) -> Vector:
    """A 1-form at a point as a coefficient row (dx_1 .. dx_n)."""
    if form.degree != 1:
        raise ValueError("need a 1-form")
    ev = eval_at(form, pt)
    return tuple(ev.comps.get((i,), Poly.zero(form.nvars)).constant_value()
                 for i in range(form.nvars))


def two_form_matrix_at(form: PolyForm, pt: Sequence[Fraction]) -> RatMatrix:
    """A 2-form at a point as the antisymmetric n x n matrix."""
    if form.degree != 2:
        raise ValueError("need a 2-form")
    n = form.nvars
    ev = eval_at(form, pt)
    ent = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), p in ev.comps.items():
        c = p.constant_value()
        ent[i][j] = c
        ent[j][i] = -c
    return RatMatrix.from_rows(ent)


def is_contact_form(omega: PolyForm, pt: Sequence[Fraction]) -> bool:
    """omega ^ (d omega)^p nonzero at pt, with p = (n-1)/2."""
    n = omega.nvars
    if n % 2 == 0:
        raise ValueError("contact forms need odd ambient dimension")
    if omega.degree != 1:
        raise ValueError("need a 1-form")
    p = (n - 1) // 2
    w = eval_at(omega, pt)
    dw = eval_at(ext_d(omega), pt)
    acc = w
    for _ in range(p):
        acc = wedge(acc, dw)
    return not acc.is_zero()


def reeb_at(omega: PolyForm, pt: Sequence[Fraction]) -> Vector:
    """Solve omega(R) = 1, i(R) d omega = 0 at the point."""
    if not is_contact_form(omega, pt):
        raise ValueError("not a contact form at this point")
    n = omega.nvars
    w = covector_at(omega, pt)
    b = two_form_matrix_at(ext_d(omega), pt)
    rows = [list(w)]
    rhs = [Fraction(1)]
    for j in range(n):
        rows.append([b.at(i, j) for i in range(n)])
        rhs.append(Fraction(0))
    m = RatMatrix.from_rows(rows)
    sol = solve(m, rhs)
    assert sol is not None and nullspace(m).dim == 0
    return sol


@dataclass(frozen=True)
class ClassReport:
    """Cartan-class certificate of a Pfaff system at one point."""
    point: tuple
    rank: int
    quotient_labels: tuple[str, ...]
    quotient_forms: tuple            # one {(i, j): coeff} dict per form
    supports: tuple[Subspace, ...]
    s_x: int
    cartan_class: int


def cartan_class_at(system: PfaffSystem, pt: Sequence[Fraction]) -> ClassReport:
    """Class c_x = s_x + p via the quotient V*/W of the cotangent space by
    the pointwise span W of the system."""
    n = system.nvars
    p = system.rank
    pt = tuple(rat(x) for x in pt)
    rows = [covector_at(f, pt) for f in system.forms]
    red, piv = rref(RatMatrix.from_rows(rows))
    if len(piv) != p:
        raise ValueError("system forms are dependent at this point")
    qcols = [c for c in range(n) if c not in piv]
    m = len(qcols)
    # quotient map on covectors: dx_q -> unit, dx_pivot -> -(rref tail)
    qmap = [[Fraction(0)] * n for _ in range(m)]
    for t, qc in enumerate(qcols):
        qmap[t][qc] = Fraction(1)
        for r, pc in enumerate(piv):
            qmap[t][pc] = -red.at(r, qc)
    qm = RatMatrix.from_rows(qmap)
    quotient_forms = []
    supports = []
    total = Subspace.zero(m)
    for f in system.forms:
        b = two_form_matrix_at(ext_d(f), pt)
        bq = qm * b * qm.transpose()
        coeffs = {}
        for i in range(m):
            for j in range(i + 1, m):
                if bq.at(i, j) != 0:
                    coeffs[(i, j)] = bq.at(i, j)
        quotient_forms.append(coeffs)
        sup = Subspace.from_spanning([bq.col(c) for c in range(m)], m)
        supports.append(sup)
        total = total.sum_with(sup)
    s_x = total.dim
    cls = s_x + p
    assert p <= cls <= n
    labels = tuple("d" + system.variables[c] for c in qcols)
    return ClassReport(pt, p, labels, tuple(quotient_forms),
                       tuple(supports), s_x, cls)


def characteristic_generators_at(system: PfaffSystem,
                                 pt: Sequence[Fraction]) -> tuple[list, int]:
    """Pointwise generators alpha_i, i(X_j) d alpha_i of the
    characteristic system, with X_j a basis of the annihilator of the
    alpha_i at the point.  Returns (covector list, span dimension)."""
    n = system.nvars
    pt = tuple(rat(x) for x in pt)
    rows = [covector_at(f, pt) for f in system.forms]
    mat = RatMatrix.from_rows(rows)
    if len(rref(mat)[1]) != system.rank:
        raise ValueError("system forms are dependent at this point")
    kernel = nullspace(mat)
    gens = [tuple(r) for r in rows]
    for x in kernel.basis:
        for f in system.forms:
            b = two_form_matrix_at(ext_d(f), pt)
            gens.append(tuple(
                sum((x[i] * b.at(i, j) for i in range(n)), Fraction(0))
                for j in range(n)))
    dim = Subspace.from_spanning(gens, n).dim
    return gens, dim


def integrability_check(system: PfaffSystem):
    """Exact polynomial check of d alpha_i ^ alpha_1 ^ ... ^ alpha_p = 0.
    The witness is the 1-based index of the first failing form."""
    from .algebra import PropertyReport
    top = None
    for f in system.forms:
        top = f if top is None else wedge(top, f)
    for i, f in enumerate(system.forms):
        if not wedge(ext_d(f), top).is_zero():
            return PropertyReport("integrable", False, (i + 1,))
    return PropertyReport("integrable", True)


def darboux_contact(k: int) -> PolyForm:
    """dx1 + x2 dx3 + ... + x_{2k} dx_{2k+1} on R^{2k+1}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k + 1
    comps = {(0,): Poly.const(n, 1)}
    for j in range(1, k + 1):
        comps[(2 * j,)] = Poly.var(n, 2 * j - 1)
    return PolyForm(n, 1, comps)


def darboux_variables(p: int, m: int) -> tuple[str, ...]:
    return tuple([f"x{i + 1}" for i in range(p)] +
                 [f"y{j + 1}" for j in range(m)] +
                 [f"z{t + 1}" for t in range(p * m)])


def darboux_system(p: int, m: int) -> PfaffSystem:
    """The model p-contact system on n = p + m + pm variables:
    alpha_i = dx_i + sum_j z_{(j-1)p+i} dy_j."""
    if p < 1 or m < 1:
        raise ValueError("p and m must be >= 1")
    n = p + m + p * m
    variables = darboux_variables(p, m)
    forms = []
    for i in range(1, p + 1):
        comps = {(i - 1,): Poly.const(n, 1)}
        for j in range(1, m + 1):
            z_index = p + m + (j - 1) * p + (i - 1)
            comps[(p + j - 1,)] = Poly.var(n, z_index)
        forms.append(PolyForm(n, 1, comps))
    return PfaffSystem(variables, forms)


@dataclass(frozen=True)
class BoundReport:
    p: int
    n: int
    bound: Fraction                 # p(n-p)/(p+1)
    is_integer: bool
    m: Optional[int]                # m with n = p + m + pm, if any
    q: Optional[int]                # pm when m exists

    @property
    def has_decomposition(self) -> bool:
        return self.m is not None


def max_integral_dim(p: int, n: int) -> BoundReport:
    """The integral-manifold dimension bound q <= p(n-p)/(p+1) and the
    (p, m) decomposition of n = p + m + pm when one exists."""
    if not 1 <= p < n:
        raise ValueError("need 1 <= p < n")
    bound = Fraction(p * (n - p), p + 1)
    m_num = n - p
    m_den = p + 1
    m = m_num // m_den if m_num % m_den == 0 else None
    if m is not None and m < 1:
        m = None
    return BoundReport(p, n, bound, bound.denominator == 1, m,
                       p * m if m is not None else None)


@dataclass(frozen=True)
class TransversalReport:
    p: int
    m: int
    duality: object                 # alpha_i(X_j) = delta_ij
    interior: object                # i(X_i) d alpha_j = 0

    @property
    def all_ok(self) -> bool:
        return self.duality.holds and self.interior.holds


def transversal_check(p: int, m: int) -> TransversalReport:
    """On the Darboux model, the fields X_i = d/dx_i satisfy
    alpha_i(X_j) = delta_ij and i(X_i) d alpha_j = 0 identically."""
    from .algebra import PropertyReport
    system = darboux_system(p, m)
    n = system.nvars
    fields = [PolyVectorField.coordinate(n, i) for i in range(p)]
    dual_w = None
    for i, f in enumerate(system.forms):
        for j, x in enumerate(fields):
            val = interior(x, f)
            want = PolyForm.zero_form(Poly.const(n, 1 if i == j else 0))
            if val != want:
                dual_w = (i, j)
                break
        if dual_w:
            break
    int_w = None
    for j, f in enumerate(system.forms):
        df = ext_d(f)
        for i, x in enumerate(fields):
            if not interior(x, df).is_zero():
                int_w = (i, j)
                break
        if int_w:
            break
    return TransversalReport(
        p, m,
        PropertyReport("transversal_duality", dual_w is None, dual_w),
        PropertyReport("transversal_interior", int_w is None, int_w))


class PolyBivector:
    """Antisymmetric bivector by its upper-triangular Poly coefficients."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Optional[dict] = None):
        clean = {}
        for (i, j), p in (coeffs or {}).items():
            if not 0 <= i < j < nvars:
                raise ValueError("bivector keys must be strictly increasing")
            if not isinstance(p, Poly):
                p = Poly.const(nvars, p)
            if not p.is_zero():
                clean[(i, j)] = p
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyBivector is immutable")

    def entry(self, i: int, j: int) -> Poly:
        if i == j:
            return Poly.zero(self.nvars)
        if i < j:
            return self.coeffs.get((i, j), Poly.zero(self.nvars))
        return -self.coeffs.get((j, i), Poly.zero(self.nvars))

    def anchor(self, alpha: PolyForm) -> PolyVectorField:
        """rho(sum a_i dx_i) = sum_j (sum_i rho_ij a_i) d/dx_j."""
        if alpha.degree != 1 or alpha.nvars != self.nvars:
            raise ValueError("need a 1-form on the same variables")
        n = self.nvars
        comps = []
        for j in range(n):
            acc = Poly.zero(n)
            for i in range(n):
                a_i = alpha.comps.get((i,))
                if a_i is None:
                    continue
                r = self.entry(i, j)
                if not r.is_zero():
                    acc = acc + r * a_i
            comps.append(acc)
        return PolyVectorField(comps)

    def pair_two_form(self, beta: PolyForm) -> Poly:
        """Lambda(beta) = sum_{i<j} rho_ij beta_ij."""
        if beta.degree != 2 or beta.nvars != self.nvars:
            raise ValueError("need a 2-form on the same variables")
        acc = Poly.zero(self.nvars)
        for (i, j), p in beta.comps.items():
            r = self.coeffs.get((i, j))
            if r is not None:
                acc = acc + r * p
        return acc


def poisson_cotangent_bracket(lam: PolyBivector, alpha1: PolyForm,
                              alpha2: PolyForm) -> PolyForm:
    """{a1, a2} = i(rho(a1)) d a2 - i(rho(a2)) d a1 + d(Lambda(a1 ^ a2))."""
    if alpha1.nvars != lam.nvars or alpha2.nvars != lam.nvars:
        raise ValueError("variable list mismatch")
    if alpha1.degree != 1 or alpha2.degree != 1:
        raise ValueError("need 1-forms")
    t1 = interior(lam.anchor(alpha1), ext_d(alpha2))
    t2 = interior(lam.anchor(alpha2), ext_d(alpha1))
    t3 = ext_d(PolyForm.zero_form(lam.pair_two_form(wedge(alpha1, alpha2))))
    return t1 - t2 + t3


def sample_points(nvars: int, count: int = 3) -> list[tuple]:
    """Origin plus `count` pseudorandom rational points, fixed seed."""
    rng = random.Random(SAMPLE_SEED + nvars)
    pts = [tuple(Fraction(0) for _ in range(nvars))]
    for _ in range(count):
        pts.append(tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 4))
                         for _ in range(nvars)))
    return pts
