"""HGX: a line-oriented text format for structure constants.

Example::

    # Artin-Schreier extension over GF(2)
    field GF(2)

    [hopf H]
    basis: 1, x
    unit: 1
    m: x * x = x
    delta: x = x(x)1 + 1(x)x
    counit: x = 0
    antipode: x = x

    [comodule-algebra S]
    hopf: H
    basis: 1, y
    unit: 1
    m: y * y = 1 + y
    rho: y = y(x)1 + 1(x)x

Linear combinations are sums of ``label`` or ``coef*label`` terms, with an
optional leading ``-``; coefficients may be parenthesised (``(t+1)*y``).
Tensor terms are written ``a(x)b``.  Entries that are not listed are zero,
except that products and actions involving a unit given as a single basis
label are filled in automatically, as are ``delta``, ``counit`` and
``antipode`` of such a unit.

Block kinds: ``hopf``, ``algebra``, ``comodule-algebra``, ``action`` (a
module algebra, turned into a comodule algebra over the dual Hopf algebra),
``character``, ``cocycle`` and ``module`` (a bimodule over an algebra).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import AlgebraData, HopfAlgebraData, dual_hopf
from .cleft import TwoCocycle
from .errors import HopfGaloisError, ParseError
from .fields import Field
from .galois import ComoduleAlgebraData
from .picard import ModuleAction, TwistedModule

KINDS = ("hopf", "algebra", "comodule-algebra", "action", "character", "cocycle", "module")
_NAME = re.compile(r"^[A-Za-z_][^\s\[\]:#=,]*$")
_LABEL = re.compile(r"^[A-Za-z0-9_.^'{}#]+$")
MAX_DIM = 64


@dataclass
class Diagnostic:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


@dataclass
class Character:
    hopf: HopfAlgebraData
    values: object
    name: str = ""


@dataclass
class _Block:
    kind: str
    name: str
    line: int
    entries: list = dc_field(default_factory=list)    # (line, key, text)


@dataclass
class HgxDocument:
    field: Field
    objects: dict
    kinds: dict
    lines: dict

    def names(self, kind=None):
        return [n for n in self.objects if kind is None or self.kinds[n] == kind]

    def get(self, name):
        return self.objects[name]


class _Fail(Exception):
    def __init__(self, line, message):
        super().__init__(message)
        self.line = line
        self.message = message


# --- lexical layer ---------------------------------------------------------------------

def _split_top(text, seps):
    """Split at characters in ``seps`` outside parentheses, keeping the separator."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses")
        if depth == 0 and ch in seps and cur.strip():
            out.append(cur)
            cur = ch
        else:
            cur += ch
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    out.append(cur)
    return [t.strip() for t in out if t.strip()]


def _split_coef(term):
    """``coef*label`` or ``label`` -> (coef text or None, label)."""
    depth = 0
    star = -1
    for i, ch in enumerate(term):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "*" and depth == 0:
            star = i
    if star < 0:
        return None, term
    return term[:star].strip(), term[star + 1:].strip()


def _scalar(F, text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    if not text:
        raise ValueError("empty coefficient")
    if len(text) > 200:
        raise ValueError("coefficient too long")
    return F.parse(text)


def _terms(F, text, arity, labels):
    """Parse a combination into ``[(coef, (i, ...))]``."""
    text = text.strip()
    if not text:
        raise ValueError("empty expression")
    if text == "0":
        return []
    out = []
    for raw in _split_top(text, "+-"):
        sign = 1
        while raw and raw[0] in "+-":
            if raw[0] == "-":
                sign = -sign
            raw = raw[1:].strip()
        if not raw:
            raise ValueError("dangling sign")
        if raw == "0":
            continue
        if arity == 1:
            coef, lab = _split_coef(raw)
            parts = [lab]
        else:
            pieces = raw.split("(x)")
            if len(pieces) != arity:
                raise ValueError(f"expected {arity} tensor factors in {raw!r}")
            coef, first = _split_coef(pieces[0])
            parts = [first] + [p.strip() for p in pieces[1:]]
        c = F.one if coef is None else _scalar(F, coef)
        if sign < 0:
            c = F.neg(c)
        idx = []
        for k, lab in enumerate(parts):
            table = labels[k]
            if lab not in table:
                raise KeyError(lab)
            idx.append(table[lab])
        out.append((c, tuple(idx)))
    return out


# --- block layer -------------------------------------------------------------------------

def _read_blocks(text):
    field_decl = None
    blocks = []
    diags = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            m = re.fullmatch(r"\[\s*([A-Za-z-]+)\s+(\S+)\s*\]", line)
            if not m:
                diags.append(Diagnostic(no, f"malformed block header {line!r}"))
                blocks.append(None)
                continue
            kind, name = m.groups()
            if kind not in KINDS:
                diags.append(Diagnostic(no, f"unknown block kind {kind!r}"))
                blocks.append(None)
                continue
            if not _NAME.match(name):
                diags.append(Diagnostic(no, f"invalid object name {name!r}"))
                blocks.append(None)
                continue
            blocks.append(_Block(kind, name, no))
            continue
        if line.startswith("field"):
            if blocks:
                diags.append(Diagnostic(no, "field declaration must precede all blocks"))
                continue
            if field_decl is not None:
                diags.append(Diagnostic(no, "duplicate field declaration"))
                continue
            field_decl = (no, line[len("field"):].strip())
            continue
        if ":" not in line:
            diags.append(Diagnostic(no, f"expected 'key: value', got {line!r}"))
            continue
        if not blocks:
            diags.append(Diagnostic(no, "entry outside of any block"))
            continue
        key, value = line.split(":", 1)
        if blocks[-1] is not None:
            blocks[-1].entries.append((no, key.strip(), value.strip()))
    return field_decl, [b for b in blocks if b is not None], diags


def _parse_field(decl):
    no, text = decl
    m = re.fullmatch(r"(Q|GF\(\s*(\d+)\s*(?:\^\s*(\d+))?\s*\))(?:\s+modulus\s+([\d\s,]+))?", text)
    if not m:
        raise _Fail(no, f"unknown field {text!r}")
    if m.group(1) == "Q":
        if m.group(4):
            raise _Fail(no, "the rational field takes no modulus")
        return Field.rational()
    base, exp = int(m.group(2)), int(m.group(3) or 1)
    if base > 10 ** 6 or exp > 8:
        raise _Fail(no, "field too large")
    modulus = None
    if m.group(4):
        modulus = [int(c) for c in re.split(r"[\s,]+", m.group(4).strip()) if c]
    # GF(q) with q a prime power is accepted as well
    p, d = base, exp
    if exp == 1:
        for cand in range(2, base + 1):
            if base % cand == 0:
                p = cand
                break
        d = 0
        q = base
        while q > 1 and q % p == 0:
            q //= p
            d += 1
        if q != 1 or base < 2:
            raise _Fail(no, f"{base} is not a prime power")
    try:
        return Field.finite(p, d, modulus)
    except ValueError as exc:
        raise _Fail(no, str(exc)) from None


class _Builder:
    def __init__(self, F, objects, kinds):
        self.F = F
        self.objects = objects
        self.kinds = kinds

    # helpers
    def entries(self, block, key):
        return [(no, v) for no, k, v in block.entries if k == key]

    def single(self, block, key, required=True):
        found = self.entries(block, key)
        if len(found) > 1:
            raise _Fail(found[1][0], f"duplicate '{key}' entry")
        if not found:
            if required:
                raise _Fail(block.line, f"block '{block.name}' lacks '{key}'")
            return None, None
        return found[0]

    def check_keys(self, block, allowed):
        for no, k, _ in block.entries:
            if k not in allowed:
                raise _Fail(no, f"unexpected key '{k}' in {block.kind} block")

    def basis(self, block):
        no, text = self.single(block, "basis")
        labels = [s.strip() for s in text.split(",")]
        if not labels or any(not s for s in labels):
            raise _Fail(no, "empty basis label")
        for s in labels:
            if not _LABEL.match(s) or s == "0":
                raise _Fail(no, f"invalid basis label {s!r}")
        if len(set(labels)) != len(labels):
            raise _Fail(no, "repeated basis label")
        if len(labels) > MAX_DIM:
            raise _Fail(no, "basis too large")
        return labels

    def ref(self, block, key, kinds):
        no, name = self.single(block, key)
        if name not in self.objects:
            raise _Fail(no, f"undeclared object {name!r}")
        if self.kinds[name] not in kinds:
            raise _Fail(no, f"{name!r} is a {self.kinds[name]}, expected {' or '.join(kinds)}")
        return self.objects[name]

    def vector(self, no, text, labels):
        F = self.F
        v = F.zeros(len(labels))
        idx = {s: i for i, s in enumerate(labels)}
        for c, (i,) in self.terms(no, text, 1, [idx]):
            v[i] = F.scalar_array(F.add(F.get(v, i), c))
        return v

    def terms(self, no, text, arity, idx_list):
        try:
            return _terms(self.F, text, arity, idx_list)
        except KeyError as exc:
            raise _Fail(no, f"undeclared basis label {exc.args[0]!r}") from None
        except (ValueError, ZeroDivisionError) as exc:
            msg = "division by zero" if isinstance(exc, ZeroDivisionError) else str(exc)
            raise _Fail(no, f"bad expression: {msg}") from None

    def lhs_labels(self, no, text, sep, labels_list):
        if sep == ".":
            parts = [p.strip() for p in re.split(r"\s+\.\s+", text.strip())]
        elif sep:
            parts = [p.strip() for p in text.split(sep)]
        else:
            parts = [text.strip()]
        if len(parts) != len(labels_list):
            raise _Fail(no, f"expected {len(labels_list)} basis labels separated by {sep!r}")
        out = []
        for p, labels in zip(parts, labels_list):
            if p not in labels:
                raise _Fail(no, f"undeclared basis label {p!r}")
            out.append(labels.index(p))
        return tuple(out)

    def table(self, block, key, sep, lhs_labels, rhs_labels, arity=1, shape_tail=()):
        """Fill ``table[lhs..., rhs...]`` from entries ``key: l1 sep l2 = combination``."""
        F = self.F
        shape = tuple(len(x) for x in lhs_labels) + tuple(len(x) for x in rhs_labels)
        T = F.zeros(shape)
        seen = set()
        rhs_idx = [{s: i for i, s in enumerate(x)} for x in rhs_labels]
        for no, text in self.entries(block, key):
            if "=" not in text:
                raise _Fail(no, "expected '='")
            left, right = text.split("=", 1)
            pos = self.lhs_labels(no, left, sep, lhs_labels)
            if pos in seen:
                raise _Fail(no, f"duplicate {key} entry")
            seen.add(pos)
            for c, idx in self.terms(no, right, arity, rhs_idx):
                where = pos + idx
                T[where] = F.scalar_array(F.add(F.get(T, where), c))
        return T, seen

    # unit-based defaults
    def unit_index(self, unit):
        F = self.F
        nz = [i for i in range(F.shape(unit)[0]) if not F.is_zero(F.get(unit, i))]
        if len(nz) == 1 and F.get(unit, nz[0]) == F.one:
            return nz[0]
        return None

    def fill_mult(self, T, seen, u, n):
        F = self.F
        if u is None:
            return
        one = F.scalar_array(F.one)
        for j in range(n):
            if (u, j) not in seen:
                T[u, j] = F.zeros(n)
                T[u, j, j] = one
            if (j, u) not in seen:
                T[j, u] = F.zeros(n)
                T[j, u, j] = one

    # kinds
    def algebra(self, block, extra=()):
        self.check_keys(block, {"basis", "unit", "m", "gens"} | set(extra))
        labels = self.basis(block)
        n = len(labels)
        no, utext = self.single(block, "unit")
        unit = self.vector(no, utext, labels)
        T, seen = self.table(block, "m", "*", [labels, labels], [labels])
        self.fill_mult(T, seen, self.unit_index(unit), n)
        gens = None
        gno, gtext = self.single(block, "gens", required=False)
        if gtext is not None:
            gens = [self.vector(gno, g, labels) for g in gtext.split(",")]
        return AlgebraData(self.F, T, unit, labels, gens=gens, name=block.name)

    def hopf(self, block):
        F = self.F
        A = self.algebra(block, {"delta", "counit", "antipode"})
        labels, n = A.labels, A.dim
        D, dseen = self.table(block, "delta", None, [labels], [labels, labels], arity=2)
        eps = F.zeros(n)
        for no, text in self.entries(block, "counit"):
            if "=" not in text:
                raise _Fail(no, "expected '='")
            left, right = text.split("=", 1)
            (i,) = self.lhs_labels(no, left, None, [labels])
            eps[i] = F.scalar_array(self.scalar(no, right))
        S, sseen = self.table(block, "antipode", None, [labels], [labels])
        u = self.unit_index(A.unit)
        if u is not None:
            one = F.scalar_array(F.one)
            if (u,) not in dseen:
                D[u, u, u] = one
            given = {t.split("=", 1)[0].strip() for _, t in self.entries(block, "counit")}
            if labels[u] not in given:
                eps[u] = one
            if (u,) not in sseen:
                S[u, u] = one
        return HopfAlgebraData(F, A.mult, A.unit, D, eps, S, labels, gens=A.gens, name=block.name)

    def scalar(self, no, text):
        try:
            return _scalar(self.F, text)
        except (ValueError, ZeroDivisionError) as exc:
            raise _Fail(no, f"bad scalar: {exc}") from None

    def comodule_algebra(self, block):
        H = self.ref(block, "hopf", ("hopf",))
        A = self.algebra(block, {"hopf", "rho"})
        R, seen = self.table(block, "rho", None, [A.labels], [A.labels, H.labels], arity=2)
        u = self.unit_index(A.unit)
        hu = self.unit_index(H.unit)
        if u is not None and hu is not None and (u,) not in seen:
            R[u, u, hu] = self.F.scalar_array(self.F.one)
        return ComoduleAlgebraData(A, H, R, name=block.name)

    def action(self, block):
        F = self.F
        H = self.ref(block, "hopf", ("hopf",))
        A = self.ref(block, "algebra", ("algebra",))
        self.check_keys(block, {"hopf", "algebra", "act", "dual"})
        act, seen = self.table(block, "act", ".", [H.labels, A.labels], [A.labels])
        hu, au = self.unit_index(H.unit), self.unit_index(A.unit)
        one = F.scalar_array(F.one)
        if hu is not None:
            for j in range(A.dim):
                if (hu, j) not in seen:
                    act[hu, j] = F.zeros(A.dim)
                    act[hu, j, j] = one
        if au is not None:
            for h in range(H.dim):
                if (h, au) not in seen:
                    act[h, au] = F.scalar_array(F.zeros(A.dim))
                    act[h, au, au] = F.scalar_array(F.get(H.counit, h))
        dual = None
        dno, dname = self.single(block, "dual", required=False)
        if dname is not None:
            if dname not in self.objects or self.kinds[dname] != "hopf":
                raise _Fail(dno, f"undeclared hopf {dname!r}")
            dual = self.objects[dname]
        else:
            dual = dual_hopf(H)
            dual.name = f"{H.name}*"
        if dual.dim != H.dim:
            raise _Fail(dno, f"{dname!r} has the wrong dimension to be dual to {H.name!r}")
        # axioms are left to verify; the coaction is rho(a) = sum_i (e_i . a) (x) e^i
        R = np.moveaxis(act, 0, 2).copy()
        return ComoduleAlgebraData(A, dual, R, name=block.name)

    def character(self, block):
        F = self.F
        self.check_keys(block, {"hopf", "value"})
        H = self.ref(block, "hopf", ("hopf",))
        vals = F.zeros(H.dim)
        seen = set()
        for no, text in self.entries(block, "value"):
            if "=" not in text:
                raise _Fail(no, "expected '='")
            left, right = text.split("=", 1)
            (i,) = self.lhs_labels(no, left, None, [H.labels])
            if i in seen:
                raise _Fail(no, "duplicate value entry")
            seen.add(i)
            vals[i] = F.scalar_array(self.scalar(no, right))
        hu = self.unit_index(H.unit)
        if hu is not None and hu not in seen:
            vals[hu] = F.scalar_array(F.one)
        return Character(H, vals, block.name)

    def cocycle(self, block):
        F = self.F
        self.check_keys(block, {"hopf", "algebra", "sigma", "omega"})
        H = self.ref(block, "hopf", ("hopf",))
        B = self.ref(block, "algebra", ("algebra",))
        sig, seen = self.table(block, "sigma", ",", [H.labels, H.labels], [B.labels])
        hu = self.unit_index(H.unit)
        if hu is not None:
            for k in range(H.dim):
                for pos in ((hu, k), (k, hu)):
                    if pos not in seen:
                        sig[pos] = F.scalar_array(F.scale(B.unit, F.get(H.counit, k)))
        om, oseen = self.table(block, "omega", ".", [H.labels, B.labels], [B.labels])
        if not oseen:
            om = F.einsum("h,jk->hjk", H.counit, F.eye(B.dim))
        elif hu is not None:
            for j in range(B.dim):
                if (hu, j) not in oseen:
                    om[hu, j] = F.zeros(B.dim)
                    om[hu, j, j] = F.scalar_array(F.one)
        return TwoCocycle(B, H, sig, om)

    def module(self, block):
        F = self.F
        self.check_keys(block, {"algebra", "basis", "left", "right"})
        B = self.ref(block, "algebra", ("algebra",))
        labels = self.basis(block)
        L, lseen = self.table(block, "left", ".", [B.labels, labels], [labels])
        R, rseen = self.table(block, "right", ".", [labels, B.labels], [labels])
        R = R.transpose((1, 0, 2) + tuple(range(3, R.ndim))).copy()
        u = self.unit_index(B.unit)
        d = len(labels)
        if u is not None:
            for v in range(d):
                if (u, v) not in lseen:
                    L[u, v] = F.zeros(d)
                    L[u, v, v] = F.scalar_array(F.one)
                if (v, u) not in rseen:
                    R[u, v] = F.zeros(d)
                    R[u, v, v] = F.scalar_array(F.one)
        return TwistedModule(F, d, {"B-left": ModuleAction(B, L, "left"),
                                    "B-right": ModuleAction(B, R, "right")},
                             labels=labels, name=block.name)


def parse_hgx(text: str) -> HgxDocument:
    """Parse and validate; raises ParseError with line-numbered diagnostics."""
    if not isinstance(text, str):
        raise ParseError([Diagnostic(0, "input is not text")])
    try:
        return _parse(text)
    except ParseError:
        raise
    except RecursionError:
        raise ParseError([Diagnostic(0, "input nested too deeply")]) from None


def _parse(text):
    field_decl, blocks, diags = _read_blocks(text)
    if field_decl is None:
        diags.insert(0, Diagnostic(1, "missing field declaration"))
        raise ParseError(diags)
    try:
        F = _parse_field(field_decl)
    except _Fail as exc:
        raise ParseError([Diagnostic(exc.line, exc.message)] + diags) from None
    objects, kinds, lines = {}, {}, {}
    builder = _Builder(F, objects, kinds)
    for block in blocks:
        if block.name in objects:
            diags.append(Diagnostic(block.line, f"object {block.name!r} declared twice"))
            continue
        try:
            obj = getattr(builder, block.kind.replace("-", "_"))(block)
        except _Fail as exc:
            diags.append(Diagnostic(exc.line, exc.message))
            continue
        except HopfGaloisError as exc:
            diags.append(Diagnostic(block.line, f"{block.kind} '{block.name}': {exc}"))
            continue
        except (ValueError, TypeError, IndexError, OverflowError, ZeroDivisionError) as exc:
            diags.append(Diagnostic(block.line, f"{block.kind} '{block.name}': {exc}"))
            continue
        objects[block.name] = obj
        kinds[block.name] = block.kind
        lines[block.name] = block.line
    if diags:
        raise ParseError(sorted(diags, key=lambda d: d.line))
    return HgxDocument(F, objects, kinds, lines)


# --- emitter ----------------------------------------------------------------------------

def _coef(F, c):
    if c == F.one:
        return ""
    return f"({F.format(c)})*"


def format_combination(F, v, labels) -> str:
    terms = []
    for i, lab in enumerate(labels):
        c = F.get(v, i)
        if not F.is_zero(c):
            terms.append(f"{_coef(F, c)}{lab}")
    return " + ".join(terms) if terms else "0"


def format_tensor_combination(F, M, left, right) -> str:
    terms = []
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            c = F.get(M, (i, j))
            if not F.is_zero(c):
                terms.append(f"{_coef(F, c)}{a}(x){b}")
    return " + ".join(terms) if terms else "0"


def _field_line(F):
    if not F.is_finite:
        return "field Q"
    if F.d == 1:
        return f"field GF({F.p})"
    return f"field GF({F.p}^{F.d}) modulus " + " ".join(str(c) for c in F.modulus)


def _algebra_lines(A, omit_unit_products=True):
    F = A.field
    lines = [f"basis: {', '.join(A.labels)}", f"unit: {format_combination(F, A.unit, A.labels)}"]
    u = _Builder(F, {}, {}).unit_index(A.unit) if omit_unit_products else None
    for i, a in enumerate(A.labels):
        for j, b in enumerate(A.labels):
            if u is not None and u in (i, j):
                continue
            v = A.mult[i, j]
            if not F.is_zero_array(v):
                lines.append(f"m: {a} * {b} = {format_combination(F, v, A.labels)}")
    return lines, u


def emit_hgx(objects, comment=None) -> str:
    """Serialise Hopf algebras, algebras and comodule algebras (in order)."""
    objects = list(objects)
    F = objects[0].field
    out = []
    if comment:
        out.extend(f"# {c}" for c in comment.splitlines())
    out.append(_field_line(F))
    for obj in objects:
        out.append("")
        if isinstance(obj, HopfAlgebraData):
            out.append(f"[hopf {obj.name}]")
            lines, u = _algebra_lines(obj)
            out.extend(lines)
            for i, a in enumerate(obj.labels):
                if i == u:
                    continue
                out.append(f"delta: {a} = {format_tensor_combination(F, obj.comult[i], obj.labels, obj.labels)}")
            for i, a in enumerate(obj.labels):
                if i != u:
                    out.append(f"counit: {a} = {F.format(F.get(obj.counit, i))}")
            for i, a in enumerate(obj.labels):
                if i != u:
                    out.append(f"antipode: {a} = {format_combination(F, obj.antipode[i], obj.labels)}")
            if obj.gens:
                out.append("gens: " + ", ".join(format_combination(F, g, obj.labels) for g in obj.gens))
        elif isinstance(obj, ComoduleAlgebraData):
            out.append(f"[comodule-algebra {obj.name}]")
            out.append(f"hopf: {obj.hopf.name}")
            lines, u = _algebra_lines(obj.algebra)
            out.extend(lines)
            H = obj.hopf
            hu = _Builder(F, {}, {}).unit_index(H.unit)
            for i, a in enumerate(obj.labels):
                if i == u and hu is not None:
                    continue
                out.append(f"rho: {a} = {format_tensor_combination(F, obj.coaction[i], obj.labels, H.labels)}")
            if obj.algebra.gens:
                out.append("gens: " + ", ".join(format_combination(F, g, obj.labels) for g in obj.algebra.gens))
        elif isinstance(obj, AlgebraData):
            out.append(f"[algebra {obj.name}]")
            lines, _ = _algebra_lines(obj)
            out.extend(lines)
            if obj.gens:
                out.append("gens: " + ", ".join(format_combination(F, g, obj.labels) for g in obj.gens))
        else:
            raise TypeError(f"cannot emit {type(obj).__name__}")
    return "\n".join(out) + "\n"
