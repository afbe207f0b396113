"""Command-line front end: file parsers, table rendering, corpus runner.

Algebra files are line oriented ('#' starts a comment):

    kind algebra            # algebra | lie | poisson | liealg-dual
    dim 3
    basis e1 e2 e3
    prod e1 e2 -> 1 e2      # unlisted products are zero
    bracket e2 e3 -> 1 e3   # poisson and lie kinds
    dual w1 w2 w3           # liealg-dual only

Commutative products are NOT auto-symmetrized: list both orders.  Corpus
fixtures additionally carry expectation lines and blocks:

    expect der-dim 2
    basis-map full-lr ... end      # paper label = combo of canonical labels
    span sub-lr ... end            # spanning set of a Der(A) subalgebra
    table full-lr X Y e1 e2 e3 ... end   # expected multiplication table

Pfaff files declare variables and 1-forms:

    vars x y z
    form w = dz + x*dy
    expect class 3

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .algebra import (PROPERTIES, StructureAlgebra, check_property,
                      derivations, lie_center)
from .courant import (LieAlgebraData, courant_checks, courant_table,
                      courant_to_lr)
from .exactlin import RatMatrix, Subspace, Vector, unit_vec, zero_vec
from .lierinehart import (ConstructionError, LieRinehartPair, check_lr_axioms,
                          diamond_table, associator_profile, full_lie_rinehart,
                          is_faithful, faithful_lemma_check,
                          module_closure_check, psi_jacobiator,
                          subalgebra_pair)
from .pfaff import (PfaffSystem, Poly, PolyForm, cartan_class_at,
                    characteristic_generators_at, darboux_system,
                    integrability_check, is_contact_form, max_integral_dim,
                    reeb_at, sample_points)
from .poisson import (PoissonAlgebra, check_poisson,
                      hamiltonian_commutator_check, poisson_center,
                      poisson_to_lr)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# shared token helpers

_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(tok: str, line: int, col: int = 0) -> Fraction:
    if not _RAT_RE.match(tok):
        raise ParseError(f"expected a rational, got {tok!r}", line, col)
    return Fraction(tok)


def _parse_pairs(tokens: list[str], line: int) -> list[tuple[Fraction, str]]:
    """RHS of a product line: '0' or coefficient-label pairs."""
    if tokens == ["0"]:
        return []
    if not tokens or len(tokens) % 2 != 0:
        raise ParseError("expected '0' or coefficient-label pairs", line)
    out = []
    for t in range(0, len(tokens), 2):
        out.append((parse_rational(tokens[t], line), tokens[t + 1]))
    return out


def _pairs_to_vector(pairs, labels: Sequence[str], line: int) -> Vector:
    v = [Fraction(0)] * len(labels)
    for coeff, lab in pairs:
        try:
            v[labels.index(lab)] += coeff
        except ValueError:
            raise ParseError(f"unknown basis label {lab!r}", line) from None
    return tuple(v)


# ---------------------------------------------------------------------------
# algebra files

KINDS = ("algebra", "lie", "poisson", "liealg-dual")
CONSTRUCTIONS = ("full-lr", "sub-lr", "poisson-lr", "courant")


@dataclass
class AlgebraFile:
    kind: str
    labels: tuple[str, ...]
    algebra: object                   # StructureAlgebra | PoissonAlgebra | LieAlgebraData
    dual_labels: tuple[str, ...] = ()
    expects: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)      # constr -> {label: pairs}
    spans: dict = field(default_factory=dict)     # constr -> [pairs]
    tables: dict = field(default_factory=dict)    # constr -> (labels, {(r,c): pairs})


def parse_algebra_file(text: str) -> AlgebraFile:
    kind = None
    dim = None
    labels: Optional[tuple[str, ...]] = None
    dual: Optional[tuple[str, ...]] = None
    prods: dict = {}
    brackets: dict = {}
    expects: dict = {}
    maps: dict = {}
    spans: dict = {}
    tables: dict = {}

    lines = text.splitlines()
    i = 0

    def strip(line: str) -> str:
        return line.split("#", 1)[0].strip()

    def need_labels(ln: int) -> tuple[str, ...]:
        if labels is None:
            raise ParseError("basis not declared yet", ln)
        return labels

    while i < len(lines):
        ln = i + 1
        parts = strip(lines[i]).split()
        i += 1
        if not parts:
            continue
        head = parts[0]
        if head == "kind":
            if len(parts) != 2 or parts[1] not in KINDS:
                raise ParseError(f"kind must be one of {KINDS}", ln)
            if kind is not None:
                raise ParseError("duplicate kind line", ln)
            kind = parts[1]
        elif head == "dim":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("dim needs one integer", ln)
            dim = int(parts[1])
        elif head == "basis":
            labels = tuple(parts[1:])
            if len(set(labels)) != len(labels):
                raise ParseError("duplicate basis label", ln)
        elif head == "dual":
            dual = tuple(parts[1:])
        elif head in ("prod", "bracket"):
            if len(parts) < 5 or parts[3] != "->":
                raise ParseError(f"expected '{head} a b -> rhs'", ln)
            labs = need_labels(ln)
            for lab in (parts[1], parts[2]):
                if lab not in labs:
                    raise ParseError(f"unknown basis label {lab!r}", ln)
            key = (labs.index(parts[1]), labs.index(parts[2]))
            target = prods if head == "prod" else brackets
            if key in target:
                raise ParseError(f"duplicate {head} line for "
                                 f"{parts[1]} {parts[2]}", ln)
            pairs = _parse_pairs(parts[4:], ln)
            target[key] = {labs.index(lab): c
                           for c, lab in _check_labels(pairs, labs, ln)}
        elif head == "expect":
            if len(parts) < 3:
                raise ParseError("expect needs a key and a value", ln)
            key = parts[1]
            if key in expects:
                raise ParseError(f"duplicate expect {key}", ln)
            if key in ("der-dim", "center-dim", "class"):
                expects[key] = int(parts[2])
            elif key in ("jacobi", "leibniz", "contact", "integrable"):
                expects[key] = parts[2] == "true"
            elif key == "reeb":
                expects[key] = tuple(parse_rational(t, ln) for t in parts[2:])
            else:
                raise ParseError(f"unknown expect key {key!r}", ln)
        elif head == "basis-map":
            constr = _constr(parts, ln)
            entries = {}
            i, block = _read_block(lines, i)
            for bln, bparts in block:
                if len(bparts) < 3 or bparts[1] != "=":
                    raise ParseError("expected 'label = pairs'", bln)
                entries[bparts[0]] = _parse_pairs(bparts[2:], bln)
            maps[constr] = entries
        elif head == "span":
            constr = _constr(parts, ln)
            combos = []
            i, block = _read_block(lines, i)
            for bln, bparts in block:
                combos.append(_parse_pairs(bparts, bln))
            spans[constr] = combos
        elif head == "table":
            if len(parts) < 3:
                raise ParseError("table needs a construction and labels", ln)
            constr = parts[1]
            if constr not in CONSTRUCTIONS:
                raise ParseError(f"unknown construction {constr!r}", ln)
            tlabels = tuple(parts[2:])
            entries = {}
            i, block = _read_block(lines, i)
            for bln, bparts in block:
                if len(bparts) < 4 or bparts[2] != "->":
                    raise ParseError("expected 'row col -> pairs'", bln)
                r, c = bparts[0], bparts[1]
                if r not in tlabels or c not in tlabels:
                    raise ParseError(f"table labels {r} {c} not declared", bln)
                if (r, c) in entries:
                    raise ParseError(f"duplicate table entry {r} {c}", bln)
                entries[(r, c)] = _parse_pairs(bparts[3:], bln)
            tables[constr] = (tlabels, entries)
        else:
            raise ParseError(f"unknown directive {head!r}", ln)

    if kind is None:
        raise ParseError("missing kind line", 1)
    if labels is None:
        raise ParseError("missing basis line", 1)
    if dim is not None and dim != len(labels):
        raise ParseError(f"dim {dim} does not match basis of {len(labels)}", 1)

    if kind == "algebra":
        if brackets:
            raise ParseError("kind algebra takes no bracket lines", 1)
        alg = StructureAlgebra.from_products(labels, prods)
    elif kind == "lie":
        if prods:
            raise ParseError("kind lie takes no prod lines", 1)
        alg = StructureAlgebra.from_products(labels, brackets)
    elif kind == "poisson":
        alg = PoissonAlgebra(StructureAlgebra.from_products(labels, prods),
                             StructureAlgebra.from_products(labels, brackets))
    else:
        if prods:
            raise ParseError("kind liealg-dual takes no prod lines", 1)
        g = StructureAlgebra.from_products(labels, brackets)
        if dual is None:
            dual = tuple(f"w{i + 1}" for i in range(len(labels)))
        if len(dual) != len(labels):
            raise ParseError("dual needs one label per basis vector", 1)
        alg = LieAlgebraData(g, dual)
    return AlgebraFile(kind, labels, alg, dual or (), expects, maps, spans,
                       tables)


def _check_labels(pairs, labels, line):
    for coeff, lab in pairs:
        if lab not in labels:
            raise ParseError(f"unknown basis label {lab!r}", line)
    return pairs


def _constr(parts, ln):
    if len(parts) != 2 or parts[1] not in CONSTRUCTIONS:
        raise ParseError(f"expected a construction in {CONSTRUCTIONS}", ln)
    return parts[1]


def _read_block(lines, i):
    """Collect (line_no, tokens) until an 'end' line."""
    block = []
    while i < len(lines):
        ln = i + 1
        parts = lines[i].split("#", 1)[0].strip().split()
        i += 1
        if not parts:
            continue
        if parts == ["end"]:
            return i, block
        block.append((ln, parts))
    raise ParseError("unterminated block (missing 'end')", len(lines))


def parse_algebra(text: str):
    """Parse an algebra file and return the constructed object."""
    return parse_algebra_file(text).algebra


# ---------------------------------------------------------------------------
# pfaff files

_EXPR_TOKEN = re.compile(r"(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^])|(\S)")


@dataclass
class PfaffFile:
    system: PfaffSystem
    form_names: tuple[str, ...]
    expects: dict = field(default_factory=dict)


def _parse_form_expr(expr: str, variables: tuple[str, ...], ln: int):
    """Returns (zero_part: Poly, one_part: {i: Poly})."""
    n = len(variables)
    tokens = []
    for m in _EXPR_TOKEN.finditer(expr):
        col = m.start() + 1
        if m.group(4):
            raise ParseError(f"bad character {m.group(4)!r}", ln, col)
        tokens.append((m.group(0), col))
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    zero_part = Poly.zero(n)
    one_part: dict[int, Poly] = {}
    sign = 1
    first = True
    while pos < len(tokens):
        tok, col = tokens[pos]
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            pos += 1
            if pos >= len(tokens):
                raise ParseError("dangling sign", ln, col)
        elif not first:
            raise ParseError(f"expected '+' or '-', got {tok!r}", ln, col)
        first = False
        # one term: factors joined by '*'
        coeff = Poly.const(n, sign)
        dvar: Optional[int] = None
        while True:
            tok, col = tokens[pos]
            if _RAT_RE.match(tok):
                coeff = coeff * Poly.const(n, Fraction(tok))
                pos += 1
            elif re.match(r"^[A-Za-z_]", tok):
                if tok.startswith("d") and tok[1:] in variables:
                    if dvar is not None:
                        raise ParseError("two differentials in one term",
                                         ln, col)
                    dvar = variables.index(tok[1:])
                    pos += 1
                elif tok in variables:
                    base = Poly.var(n, variables.index(tok))
                    pos += 1
                    power = 1
                    if peek() == "^":
                        pos += 1
                    # careful: '^' must be followed by an integer
                        if pos >= len(tokens) or not tokens[pos][0].isdigit():
                            raise ParseError("'^' needs an integer exponent",
                                             ln, col)
                        power = int(tokens[pos][0])
                        pos += 1
                    for _ in range(power):
                        coeff = coeff * base
                else:
                    raise ParseError(f"undeclared variable {tok!r}", ln, col)
            else:
                raise ParseError(f"unexpected token {tok!r}", ln, col)
            if peek() == "*":
                pos += 1
                if pos >= len(tokens):
                    raise ParseError("dangling '*'", ln, col)
                continue
            break
        if dvar is None:
            zero_part = zero_part + coeff
        else:
            one_part[dvar] = one_part.get(dvar, Poly.zero(n)) + coeff
        sign = 1
    return zero_part, one_part


def parse_pfaff_file(text: str) -> PfaffFile:
    variables: Optional[tuple[str, ...]] = None
    forms: list[PolyForm] = []
    names: list[str] = []
    expects: dict = {}
    for i, raw in enumerate(text.splitlines()):
        ln = i + 1
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vars":
            if variables is not None:
                raise ParseError("duplicate vars line", ln)
            variables = tuple(parts[1:])
            if len(set(variables)) != len(variables) or not variables:
                raise ParseError("vars needs distinct names", ln)
        elif parts[0] == "form":
            if variables is None:
                raise ParseError("vars not declared yet", ln)
            m = re.match(r"form\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.*)$", line)
            if not m:
                raise ParseError("expected 'form name = expression'", ln)
            zero_part, one_part = _parse_form_expr(m.group(2), variables, ln)
            if not zero_part.is_zero():
                raise ParseError("a Pfaff form must be homogeneous of "
                                 "degree 1", ln)
            names.append(m.group(1))
            forms.append(PolyForm(len(variables), 1,
                                  {(j,): p for j, p in one_part.items()}))
        elif parts[0] == "expect":
            key = parts[1]
            if key in expects:
                raise ParseError(f"duplicate expect {key}", ln)
            if key == "class":
                expects[key] = int(parts[2])
            elif key in ("contact", "integrable"):
                expects[key] = parts[2] == "true"
            elif key == "reeb":
                expects[key] = tuple(parse_rational(t, ln) for t in parts[2:])
            else:
                raise ParseError(f"unknown expect key {key!r}", ln)
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", ln)
    if variables is None or not forms:
        raise ParseError("a pfaff file needs vars and at least one form", 1)
    return PfaffFile(PfaffSystem(variables, forms), tuple(names), expects)


def parse_pfaff(text: str) -> PfaffSystem:
    return parse_pfaff_file(text).system


# ---------------------------------------------------------------------------
# rendering

def render_rational(x: Fraction) -> str:
    return str(x)


def render_combination(coords: Sequence[Fraction], labels: Sequence[str]) -> str:
    parts = []
    for c, lab in zip(coords, labels):
        if c == 0:
            continue
        mag = abs(c)
        term = lab if mag == 1 else f"{mag}{lab}"
        parts.append(("-" if c < 0 else "+", term))
    if not parts:
        return "0"
    sign, term = parts[0]
    out = ("-" if sign == "-" else "") + term
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def render_pairs(coords: Sequence[Fraction], labels: Sequence[str]) -> str:
    parts = []
    for c, lab in zip(coords, labels):
        if c != 0:
            parts.append(f"{c} {lab}")
    return " ".join(parts) if parts else "0"


def render_structure_table(alg: StructureAlgebra,
                           order: Optional[Sequence[int]] = None) -> str:
    idx = list(order) if order is not None else list(range(alg.dim))
    head = [""] + [alg.basis_labels[j] for j in idx]
    rows = [head]
    for i in idx:
        row = [alg.basis_labels[i]]
        for j in idx:
            row.append(render_combination(alg.c[i][j], alg.basis_labels))
        rows.append(row)
    widths = [max(len(r[c]) for r in rows) for c in range(len(head))]
    lines = []
    for r in rows:
        lines.append(" | ".join(cell.ljust(w) for cell, w in zip(r, widths))
                     .rstrip())
    return "\n".join(lines)


def diamond_render_order(dia) -> list[int]:
    """Paper orientation: L rows and columns before A ones."""
    return list(range(dia.a_dim, dia.a_dim + dia.l_dim)) + list(range(dia.a_dim))


def render_poly(p: Poly, variables: Sequence[str]) -> str:
    """Parse-compatible polynomial rendering ('2*x^2*y', '-1/2')."""
    if p.is_zero():
        return "0"
    parts = []
    for expts, coeff in p.sorted_terms():
        factors = []
        for i, k in enumerate(expts):
            if k == 1:
                factors.append(variables[i])
            elif k > 1:
                factors.append(f"{variables[i]}^{k}")
        mag = abs(coeff)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        parts.append(("-" if coeff < 0 else "+", "*".join(factors)))
    sign, term = parts[0]
    out = ("-" if sign == "-" else "") + term
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def render_form1(form: PolyForm, variables: Sequence[str]) -> str:
    """Parse-compatible 1-form rendering ('dz + x*dy')."""
    if form.degree != 1:
        raise ValueError("need a 1-form")
    if form.is_zero():
        return "0*d" + variables[0]
    parts = []
    for (i,), p in form.sorted_comps():
        dv = "d" + variables[i]
        for expts, coeff in p.sorted_terms():
            factors = []
            for t, k in enumerate(expts):
                if k == 1:
                    factors.append(variables[t])
                elif k > 1:
                    factors.append(f"{variables[t]}^{k}")
            mag = abs(coeff)
            if mag != 1:
                factors.insert(0, str(mag))
            factors.append(dv)
            parts.append(("-" if coeff < 0 else "+", "*".join(factors)))
    sign, term = parts[0]
    out = ("-" if sign == "-" else "") + term
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def render_algebra_source(af: AlgebraFile) -> str:
    """Canonical re-emission of the structural lines of an algebra file."""
    lines = [f"kind {af.kind}", f"dim {len(af.labels)}",
             "basis " + " ".join(af.labels)]
    if af.kind == "liealg-dual" and af.dual_labels:
        lines.append("dual " + " ".join(af.dual_labels))

    def emit(word: str, alg: StructureAlgebra):
        for i in range(alg.dim):
            for j in range(alg.dim):
                row = alg.c[i][j]
                if any(x != 0 for x in row):
                    lines.append(f"{word} {alg.basis_labels[i]} "
                                 f"{alg.basis_labels[j]} -> "
                                 f"{render_pairs(row, alg.basis_labels)}")

    if af.kind == "algebra":
        emit("prod", af.algebra)
    elif af.kind == "lie":
        emit("bracket", af.algebra)
    elif af.kind == "poisson":
        emit("prod", af.algebra.assoc)
        emit("bracket", af.algebra.bracket)
    else:
        emit("bracket", af.algebra.g)
    return "\n".join(lines) + "\n"


def render_pfaff_source(pf: PfaffFile) -> str:
    lines = ["vars " + " ".join(pf.system.variables)]
    for name, form in zip(pf.form_names, pf.system.forms):
        lines.append(f"form {name} = {render_form1(form, pf.system.variables)}")
    return "\n".join(lines) + "\n"


def render_point(pt: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in pt) + ")"


def parse_point(s: str, nvars: int) -> tuple:
    parts = s.split(",")
    if len(parts) != nvars:
        raise ParseError(f"point needs {nvars} coordinates", 1)
    return tuple(parse_rational(p.strip(), 1) for p in parts)


# ---------------------------------------------------------------------------
# command results

@dataclass
class CmdResult:
    name: str
    ok: Optional[bool]            # None = informational
    detail: str
    witness: Optional[list] = None

    def line(self) -> str:
        if self.ok is None:
            return f"{self.name}: {self.detail}"
        tag = "PASS" if self.ok else "FAIL"
        return f"{tag} {self.name}: {self.detail}"


def _table_text(alg: StructureAlgebra, order=None) -> list[str]:
    return render_structure_table(alg, order).splitlines()


# ---------------------------------------------------------------------------
# table comparison against fixture blocks

def compare_paper_table(canon: StructureAlgebra, paper_labels,
                        label_to_vec: dict, entries) -> CmdResult:
    total = 0
    for r in paper_labels:
        for c in paper_labels:
            lhs = canon.multiply(label_to_vec[r], label_to_vec[c])
            rhs = zero_vec(canon.dim)
            for coeff, lab in entries.get((r, c), []):
                if lab not in label_to_vec:
                    return CmdResult("table", False,
                                     f"unknown label {lab!r} in entry "
                                     f"({r}, {c})", [r, c])
                rhs = tuple(a + coeff * b
                            for a, b in zip(rhs, label_to_vec[lab]))
            if lhs != rhs:
                return CmdResult(
                    "table", False,
                    f"mismatch at ({r}, {c}): got "
                    f"{render_combination(lhs, canon.basis_labels)}", [r, c])
            total += 1
    return CmdResult("table", True, f"{total} entries match")


def _paper_map(canon: StructureAlgebra, paper_labels, mapping,
               line_err: str) -> dict:
    out = {}
    for lab in paper_labels:
        if lab in mapping:
            out[lab] = _pairs_to_vector(mapping[lab], canon.basis_labels, 1)
        elif lab in canon.basis_labels:
            out[lab] = unit_vec(canon.dim, canon.index_of(lab))
        else:
            raise ParseError(f"{line_err}: no mapping for label {lab!r}", 1)
    return out


# ---------------------------------------------------------------------------
# fixture checks (shared by `corpus run` and the per-file commands)

def algebra_structure_checks(af: AlgebraFile) -> list[CmdResult]:
    res = []
    if af.kind == "algebra":
        for prop in ("associative", "commutative"):
            rep = check_property(af.algebra, prop)
            res.append(CmdResult(prop, rep.holds,
                                 "holds" if rep.holds else
                                 f"fails at {rep.witness}",
                                 list(rep.witness or [])))
    elif af.kind == "lie":
        for prop in ("anticommutative", "jacobi"):
            rep = check_property(af.algebra, prop)
            res.append(CmdResult(prop, rep.holds,
                                 "holds" if rep.holds else
                                 f"fails at {rep.witness}",
                                 list(rep.witness or [])))
    elif af.kind == "poisson":
        rep = check_poisson(af.algebra)
        res.append(CmdResult("poisson", rep.holds,
                             "product, bracket and Leibniz rule hold"
                             if rep.holds else
                             f"{rep.prop} fails at {rep.witness}",
                             list(rep.witness or [])))
    else:
        for prop in ("anticommutative", "jacobi"):
            rep = check_property(af.algebra.g, prop)
            res.append(CmdResult(prop, rep.holds,
                                 "holds" if rep.holds else
                                 f"fails at {rep.witness}",
                                 list(rep.witness or [])))
    return res


def run_algebra_fixture(af: AlgebraFile) -> list[CmdResult]:
    res = algebra_structure_checks(af)
    if af.kind in ("algebra",):
        der = derivations(af.algebra)
        if "der-dim" in af.expects:
            want = af.expects["der-dim"]
            res.append(CmdResult("der-dim", der.dim == want,
                                 f"dim Der(A) = {der.dim}, expected {want}"))
        closure = module_closure_check(af.algebra, der.span())
        res.append(CmdResult("module-closure", closure.holds,
                             "Der(A) is closed under the module action"
                             if closure.holds else
                             f"fails at {closure.witness}"))
        if "full-lr" in af.tables or "full-lr" in af.maps:
            res.extend(_full_lr_checks(af, der))
        if "sub-lr" in af.spans:
            res.extend(_sub_lr_checks(af, der))
    elif af.kind == "lie":
        if "center-dim" in af.expects:
            z = lie_center(af.algebra)
            want = af.expects["center-dim"]
            res.append(CmdResult("center-dim", z.dim == want,
                                 f"dim Z(L) = {z.dim}, expected {want}"))
    elif af.kind == "poisson":
        if "center-dim" in af.expects:
            z = poisson_center(af.algebra)
            want = af.expects["center-dim"]
            res.append(CmdResult("center-dim", z.dim == want,
                                 f"dim Z_P = {z.dim}, expected {want}"))
        res.extend(_poisson_lr_checks(af))
    else:
        res.extend(_courant_checks(af))
    return res


def _pair_law_checks(pair: LieRinehartPair, prefix: str) -> list[CmdResult]:
    res = []
    axioms = check_lr_axioms(pair)
    detail = ("Leibniz, module compatibility and anchor morphism hold"
              if axioms.all_ok else
              f"leibniz={axioms.leibniz_ok} (w {axioms.leibniz_witness}), "
              f"compat={axioms.module_compat_ok} "
              f"(w {axioms.module_compat_witness}), "
              f"anchor={axioms.anchor_morphism_ok} (w {axioms.anchor_witness})")
    res.append(CmdResult(f"{prefix}-axioms", axioms.all_ok, detail))
    if not axioms.all_ok:
        return res
    profile = associator_profile(pair)
    bad = [r for r in profile if not r.holds]
    res.append(CmdResult(f"{prefix}-associators", not bad,
                         "all six associator identities hold" if not bad else
                         f"{bad[0].prop} fails at {bad[0].witness}"))
    psi = psi_jacobiator(pair)
    res.append(CmdResult(f"{prefix}-psi", psi.matches_phi,
                         "jacobiator of psi equals Phi on all triples"
                         if psi.matches_phi else
                         f"mismatch at {psi.phi_witness}"))
    return res


def _full_lr_checks(af: AlgebraFile, der) -> list[CmdResult]:
    res = []
    pair = full_lie_rinehart(af.algebra)
    res.extend(_pair_law_checks(pair, "full-lr"))
    faithful = is_faithful(pair)
    res.append(CmdResult("full-lr-faithful", faithful,
                         "anchor is injective" if faithful else
                         "anchor has a kernel"))
    if faithful:
        res.append(CmdResult("full-lr-lemma", faithful_lemma_check(pair),
                             "fidelity forces the Leibniz identity"))
    if "full-lr" in af.tables:
        paper_labels, entries = af.tables["full-lr"]
        dia = diamond_table(pair)
        label_to_vec = _paper_map(dia.table, paper_labels,
                                  af.maps.get("full-lr", {}), "full-lr")
        cmp = compare_paper_table(dia.table, paper_labels, label_to_vec,
                                  entries)
        res.append(CmdResult("full-lr-table", cmp.ok, cmp.detail, cmp.witness))
    return res


def _sub_lr_checks(af: AlgebraFile, der) -> list[CmdResult]:
    res = []
    n = af.algebra.dim
    vecs = []
    for combo in af.spans["sub-lr"]:
        mat = RatMatrix.zeros(n, n)
        for coeff, lab in combo:
            mat = mat + der.gens[der.bracket.index_of(lab)].matrix.scale(coeff)
        vecs.append(mat.entries)
    lsub = Subspace.from_spanning(vecs, n * n)
    pair = subalgebra_pair(af.algebra, lsub)
    res.extend(_pair_law_checks(pair, "sub-lr"))
    if "sub-lr" in af.tables:
        paper_labels, entries = af.tables["sub-lr"]
        dia = diamond_table(pair)
        mapping = {}
        for lab, combo in af.maps.get("sub-lr", {}).items():
            mat = RatMatrix.zeros(n, n)
            for coeff, dlab in combo:
                mat = mat + der.gens[
                    der.bracket.index_of(dlab)].matrix.scale(coeff)
            coords = lsub.coords_of(mat.entries)
            if coords is None:
                raise ParseError(f"sub-lr map for {lab!r} leaves the span", 1)
            mapping[lab] = zero_vec(n) + tuple(coords)
        label_to_vec = {}
        for lab in paper_labels:
            if lab in mapping:
                label_to_vec[lab] = mapping[lab]
            else:
                label_to_vec[lab] = unit_vec(dia.table.dim,
                                             dia.table.index_of(lab))
        cmp = compare_paper_table(dia.table, paper_labels, label_to_vec,
                                  entries)
        res.append(CmdResult("sub-lr-table", cmp.ok, cmp.detail, cmp.witness))
    return res


def _poisson_lr_checks(af: AlgebraFile) -> list[CmdResult]:
    res = []
    p = af.algebra
    ham = hamiltonian_commutator_check(p)
    res.append(CmdResult("hamiltonian-commutator", ham.holds,
                         "[X_x, X_y] = X_{x,y} on all basis pairs"
                         if ham.holds else f"fails at {ham.witness}"))
    try:
        pair = poisson_to_lr(p)
    except ConstructionError as e:
        res.append(CmdResult("poisson-lr", False,
                             f"construction failed: {e} at {e.witness}",
                             list(e.witness)))
        return res
    zdim = poisson_center(p).dim
    res.append(CmdResult("dim-law", pair.l_dim == p.dim - zdim,
                         f"dim L = {pair.l_dim} = dim A - dim Z_P "
                         f"= {p.dim} - {zdim}"))
    res.extend(_pair_law_checks(pair, "poisson-lr"))
    if "poisson-lr" in af.tables:
        paper_labels, entries = af.tables["poisson-lr"]
        dia = diamond_table(pair)
        label_to_vec = _paper_map(dia.table, paper_labels,
                                  af.maps.get("poisson-lr", {}), "poisson-lr")
        cmp = compare_paper_table(dia.table, paper_labels, label_to_vec,
                                  entries)
        res.append(CmdResult("poisson-lr-table", cmp.ok, cmp.detail,
                             cmp.witness))
    return res


def _courant_checks(af: AlgebraFile) -> list[CmdResult]:
    res = []
    gd = af.algebra
    rep = courant_checks(gd)
    res.append(CmdResult("courant-leibniz", rep.leibniz.holds,
                         "left Leibniz identity holds on all triples"
                         if rep.leibniz.holds else
                         f"fails at {rep.leibniz.witness}"))
    want_jac = af.expects.get("jacobi")
    detail = ("jacobi holds" if rep.jacobi.holds else
              f"jacobi fails at {rep.jacobi.witness}")
    if want_jac is None:
        # failing Jacobi is the generic state of a Courant bracket
        jac_ok = None
    else:
        jac_ok = rep.jacobi.holds == want_jac
        detail += f" (expected {'holds' if want_jac else 'fails'})"
    res.append(CmdResult("courant-jacobi", jac_ok, detail,
                         list(rep.jacobi.witness or [])))
    res.append(CmdResult("courant-anchor", rep.anchor_morphism_ok,
                         "projection onto g is a bracket morphism"
                         if rep.anchor_morphism_ok else
                         f"fails at {rep.anchor_witness}"))
    res.append(CmdResult("courant-complete", rep.complete,
                         "projection onto g is surjective"))
    ct = courant_table(gd)
    if "courant" in af.tables:
        paper_labels, entries = af.tables["courant"]
        label_to_vec = _paper_map(ct.table, paper_labels,
                                  af.maps.get("courant", {}), "courant")
        cmp = compare_paper_table(ct.table, paper_labels, label_to_vec,
                                  entries)
        res.append(CmdResult("courant-table", cmp.ok, cmp.detail, cmp.witness))
    pair = courant_to_lr(gd)
    res.extend(_pair_law_checks(pair, "courant-lr"))
    dia = diamond_table(pair)
    n = gd.dim
    # diamond basis is (duals, g); the table is (g, duals)
    perm = [n + i for i in range(n)] + list(range(n))
    same = True
    for i in range(2 * n):
        for j in range(2 * n):
            want = ct.table.c[i][j]
            got = dia.table.c[perm[i]][perm[j]]
            if tuple(got[perm[k]] for k in range(2 * n)) != tuple(want):
                same = False
                break
        if not same:
            break
    res.append(CmdResult("courant-diamond", same,
                         "diamond product coincides with the double bracket"
                         if same else "diamond product disagrees"))
    return res


def run_pfaff_fixture(pf: PfaffFile) -> list[CmdResult]:
    res = []
    system = pf.system
    n = system.nvars
    pts = sample_points(n)
    if "contact" in pf.expects:
        want = pf.expects["contact"]
        got = [is_contact_form(system.forms[0], pt) for pt in pts]
        ok = all(g == want for g in got)
        res.append(CmdResult("contact", ok,
                             f"contact={want} at {len(pts)} sampled points"
                             if ok else "contact status differs from "
                             f"expectation ({got})"))
    if "class" in pf.expects:
        want = pf.expects["class"]
        got = [cartan_class_at(system, pt).cartan_class for pt in pts]
        char = [characteristic_generators_at(system, pt)[1] for pt in pts]
        ok = all(g == want for g in got) and char == got
        res.append(CmdResult("class", ok,
                             f"class = {want} at {len(pts)} sampled points, "
                             "characteristic dimension agrees" if ok else
                             f"classes {got}, characteristic dims {char}, "
                             f"expected {want}"))
    if "reeb" in pf.expects:
        want = tuple(pf.expects["reeb"])
        got = [reeb_at(system.forms[0], pt) for pt in pts]
        ok = all(g == want for g in got)
        res.append(CmdResult("reeb", ok,
                             f"Reeb field = {render_point(want)} at "
                             f"{len(pts)} sampled points" if ok else
                             f"Reeb fields {got}, expected {want}"))
    if "integrable" in pf.expects:
        want = pf.expects["integrable"]
        rep = integrability_check(system)
        ok = rep.holds == want
        detail = ("integrable" if rep.holds else
                  f"not integrable, witness form {rep.witness[0]}")
        if not ok:
            detail += f" (expected {'integrable' if want else 'not'})"
        res.append(CmdResult("integrable", ok, detail))
    return res


# ---------------------------------------------------------------------------
# commands

def _load_algebra(path: str) -> AlgebraFile:
    return parse_algebra_file(Path(path).read_text(encoding="utf-8"))


def _load_pfaff(path: str) -> PfaffFile:
    return parse_pfaff_file(Path(path).read_text(encoding="utf-8"))


def cmd_check(args) -> tuple[list[str], list[CmdResult]]:
    af = _load_algebra(args.file)
    if args.property:
        if args.property not in PROPERTIES:
            raise ParseError(f"property must be one of {PROPERTIES}", 1)
        if af.kind == "poisson":
            target = af.algebra.assoc if args.property in (
                "associative", "commutative") else af.algebra.bracket
        elif af.kind == "liealg-dual":
            target = af.algebra.g
        else:
            target = af.algebra
        rep = check_property(target, args.property)
        res = [CmdResult(args.property, rep.holds,
                         "holds" if rep.holds else f"fails at {rep.witness}",
                         list(rep.witness or []))]
    else:
        res = algebra_structure_checks(af)
    return [r.line() for r in res], res


def cmd_der(args) -> tuple[list[str], list[CmdResult]]:
    af = _load_algebra(args.file)
    if not isinstance(af.algebra, StructureAlgebra):
        raise ParseError("der expects a kind algebra or lie file", 1)
    der = derivations(af.algebra)
    lines = [f"dim Der(A) = {der.dim}"]
    for t, g in enumerate(der.gens):
        images = []
        for j in range(af.algebra.dim):
            img = render_combination(g.matrix.col(j), af.algebra.basis_labels)
            if img != "0":
                images.append(f"{af.algebra.basis_labels[j]} -> {img}")
        lines.append(f"D{t + 1}: " + ("; ".join(images) if images else "0"))
    if args.table and der.dim:
        lines.append("bracket table:")
        lines.extend(_table_text(der.bracket))
    res = [CmdResult("der-dim", None, f"dim Der(A) = {der.dim}")]
    return lines, res


def cmd_full_lr(args) -> tuple[list[str], list[CmdResult]]:
    af = _load_algebra(args.file)
    if not isinstance(af.algebra, StructureAlgebra):
        raise ParseError("full-lr expects a kind algebra file", 1)
    pair = full_lie_rinehart(af.algebra)
    res = _pair_law_checks(pair, "full-lr")
    lines = [r.line() for r in res]
    if all(r.ok for r in res):
        dia = diamond_table(pair)
        lines.append(f"dim A = {pair.a_dim}, dim L = {pair.l_dim}")
        lines.extend(_table_text(dia.table, diamond_render_order(dia)))
    return lines, res


def cmd_poisson_lr(args) -> tuple[list[str], list[CmdResult]]:
    af = _load_algebra(args.file)
    if af.kind != "poisson":
        raise ParseError("poisson-lr expects a kind poisson file", 1)
    rep = check_poisson(af.algebra)
    res = [CmdResult("poisson", rep.holds,
                     "valid Poisson structure" if rep.holds else
                     f"{rep.prop} fails at {rep.witness}")]
    if rep.holds:
        res.extend(_poisson_lr_checks(af))
    lines = [r.line() for r in res]
    if all(r.ok is not False for r in res):
        pair = poisson_to_lr(af.algebra)
        dia = diamond_table(pair)
        lines.append(f"dim Z_P = {poisson_center(af.algebra).dim}")
        lines.extend(_table_text(dia.table, diamond_render_order(dia)))
    return lines, res


def cmd_courant(args) -> tuple[list[str], list[CmdResult]]:
    af = _load_algebra(args.file)
    if af.kind != "liealg-dual":
        raise ParseError("courant expects a kind liealg-dual file", 1)
    res = _courant_checks(af)
    lines = [r.line() for r in res]
    ct = courant_table(af.algebra)
    lines.extend(_table_text(ct.table))
    return lines, res


def _pfaff_points(args, system: PfaffSystem) -> list[tuple]:
    if args.at:
        return [parse_point(args.at, system.nvars)]
    return sample_points(system.nvars)


def cmd_pfaff(args) -> tuple[list[str], list[CmdResult]]:
    if args.pfaff_cmd == "darboux":
        system = darboux_system(args.p, args.m)
        pf = PfaffFile(system, tuple(f"a{i + 1}" for i in range(args.p)), {})
        lines = [f"n = {system.nvars} = p + m + pm with p = {args.p}, "
                 f"m = {args.m}"]
        lines.extend(render_pfaff_source(pf).splitlines())
        return lines, [CmdResult("darboux", None,
                                 f"model system of rank {args.p} on "
                                 f"{system.nvars} variables")]
    pf = _load_pfaff(args.file)
    system = pf.system
    pts = _pfaff_points(args, system) if args.pfaff_cmd != "integrable" else []
    res = []
    lines = []
    if args.pfaff_cmd == "class":
        for pt in pts:
            rep = cartan_class_at(system, pt)
            _, cdim = characteristic_generators_at(system, pt)
            ok = cdim == rep.cartan_class
            res.append(CmdResult("class", ok,
                                 f"class {rep.cartan_class} = s_x {rep.s_x} "
                                 f"+ p {rep.rank} at {render_point(pt)}; "
                                 f"characteristic dim {cdim}"))
    elif args.pfaff_cmd == "reeb":
        if system.rank != 1:
            raise ParseError("reeb expects a single-form system", 1)
        for pt in pts:
            r = reeb_at(system.forms[0], pt)
            res.append(CmdResult("reeb", None,
                                 f"R = {render_point(r)} at "
                                 f"{render_point(pt)}"))
    elif args.pfaff_cmd == "contact":
        if system.rank != 1:
            raise ParseError("contact expects a single-form system", 1)
        for pt in pts:
            ok = is_contact_form(system.forms[0], pt)
            res.append(CmdResult("contact", ok,
                                 f"contact at {render_point(pt)}" if ok else
                                 f"not contact at {render_point(pt)}"))
    elif args.pfaff_cmd == "integrable":
        rep = integrability_check(system)
        res.append(CmdResult("integrable", rep.holds,
                             "integrable" if rep.holds else
                             f"not integrable, witness form {rep.witness[0]}"))
    lines.extend(r.line() for r in res)
    return lines, res


def cmd_bound(args) -> tuple[list[str], list[CmdResult]]:
    res = []
    ps = [args.p] if args.p else list(range(1, args.n))
    for p in ps:
        b = max_integral_dim(p, args.n)
        detail = f"p = {p}, n = {args.n}: q <= {b.bound}"
        if b.has_decomposition:
            detail += f"; decomposition (p, m) = ({p}, {b.m}), q = {b.q}"
        else:
            detail += "; no contact-system decomposition"
        res.append(CmdResult("bound", None, detail))
    feas = [f"(p={p}, m={max_integral_dim(p, args.n).m}, "
            f"q={max_integral_dim(p, args.n).q})"
            for p in range(1, args.n)
            if max_integral_dim(p, args.n).has_decomposition]
    if not args.p:
        res.append(CmdResult("decompositions", None,
                             ", ".join(feas) if feas else
                             "no p-contact system in this dimension"))
    return [r.line() for r in res], res


# ---------------------------------------------------------------------------
# corpus

def corpus_dir() -> Path:
    from importlib.resources import files
    return Path(str(files("lieform") / "corpus"))


def corpus_run() -> tuple[list[str], list[CmdResult]]:
    base = corpus_dir()
    paths = sorted(base.iterdir(), key=lambda p: p.name)
    lines = []
    allres = []
    n_fix = 0
    for path in paths:
        if path.suffix not in (".alg", ".lie", ".pfaff"):
            continue
        n_fix += 1
        lines.append(f"fixture {path.name}")
        text = path.read_text(encoding="utf-8")
        if path.suffix == ".pfaff":
            results = run_pfaff_fixture(parse_pfaff_file(text))
        else:
            results = run_algebra_fixture(parse_algebra_file(text))
        for r in results:
            lines.append("  " + r.line())
        allres.extend(results)
    fails = sum(1 for r in allres if r.ok is False)
    lines.append(f"corpus: {n_fix} fixtures, {len(allres)} checks, "
                 f"{fails} failures")
    return lines, allres


# ---------------------------------------------------------------------------
# dispatch

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lieform",
        description="Exact computer algebra for Lie-Rinehart structures, "
                    "Poisson and Courant brackets, and contact Pfaff systems.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the structural laws of a file")
    p.add_argument("file")
    p.add_argument("--property", choices=PROPERTIES)

    p = sub.add_parser("der", help="derivation algebra of an algebra file")
    p.add_argument("file")
    p.add_argument("--table", action="store_true")

    p = sub.add_parser("full-lr", help="full Lie-Rinehart pair on Der(A)")
    p.add_argument("file")

    p = sub.add_parser("poisson-lr", help="Lie-Rinehart pair of a Poisson "
                                          "algebra")
    p.add_argument("file")

    p = sub.add_parser("courant", help="double bracket on g + g*")
    p.add_argument("file")

    p = sub.add_parser("pfaff", help="contact and class computations")
    ps = p.add_subparsers(dest="pfaff_cmd", required=True)
    for name in ("class", "reeb", "contact", "integrable"):
        q = ps.add_parser(name)
        q.add_argument("file")
        if name != "integrable":
            q.add_argument("--at", help="rational point 'x1,x2,...'")
    q = ps.add_parser("darboux")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--m", type=int, required=True)

    p = sub.add_parser("bound", help="integral-manifold dimension bound")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("corpus", help="bundled fixtures")
    p.add_argument("corpus_cmd", choices=("run",))
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    handlers = {
        "check": cmd_check,
        "der": cmd_der,
        "full-lr": cmd_full_lr,
        "poisson-lr": cmd_poisson_lr,
        "courant": cmd_courant,
        "pfaff": cmd_pfaff,
        "bound": cmd_bound,
    }
    try:
        if args.command == "corpus":
            lines, results = corpus_run()
            inputs = ["corpus"]
        else:
            lines, results = handlers[args.command](args)
            inputs = [getattr(args, "file", None) or args.command]
    except (ParseError, OSError, ValueError, ConstructionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    exit_code = 1 if any(r.ok is False for r in results) else 0
    if args.format == "json":
        payload = {
            "command": args.command,
            "inputs": inputs,
            "results": [{"name": r.name, "ok": r.ok, "detail": r.detail}
                        for r in results],
            "witnesses": [{"name": r.name, "witness": r.witness}
                          for r in results if r.witness],
            "exit": exit_code,
        }
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in lines:
            print(line)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
