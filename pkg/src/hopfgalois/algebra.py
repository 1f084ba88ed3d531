"""Algebras, coalgebras and Hopf algebras given by structure constants.

Tables follow one layout throughout:

* ``mult[i, j, k]``: coefficient of basis vector ``k`` in ``e_i e_j``;
* ``unit[k]``: the unit element;
* ``comult[i, a, b]``: coefficient of ``e_a (x) e_b`` in ``Delta(e_i)``;
* ``counit[i]``;
* ``antipode[i, o]``: coefficient of ``e_o`` in ``S(e_i)``.

A linear map ``f: V -> W`` is a table ``f[v, w]`` (row ``v`` is the image of
``e_v``), so applying it to a coordinate vector is ``x @ f``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

import numpy as np

from . import linalg
from .errors import AxiomFailure, CapExceeded, DimensionMismatch, FieldMismatch, UnsupportedField
from .fields import Field
from .linalg import Subspace

DEFAULT_CAP = 1 << 20


# --- small helpers -----------------------------------------------------------

def format_vector(F: Field, v, labels) -> str:
    """``v`` as a linear combination of ``labels``, e.g. ``2*x + y``."""
    terms = []
    for i, lab in enumerate(labels):
        c = F.get(v, i)
        if F.is_zero(c):
            continue
        if c == F.one:
            terms.append(lab)
        elif c == F.neg(F.one):
            terms.append(f"-{lab}")
        else:
            s = F.format(c)
            if any(ch in s[1:] for ch in "+-"):
                s = f"({s})"
            terms.append(f"{s}*{lab}")
    return " + ".join(terms) if terms else "0"


def format_tensor(F: Field, M, left_labels, right_labels) -> str:
    """An element of ``V (x) W`` given as an array ``M[v, w]``."""
    terms = []
    for i, a in enumerate(left_labels):
        for j, b in enumerate(right_labels):
            c = F.get(M, (i, j))
            if F.is_zero(c):
                continue
            pair = f"{a}(x){b}"
            if c == F.one:
                terms.append(pair)
            elif c == F.neg(F.one):
                terms.append(f"-{pair}")
            else:
                s = F.format(c)
                if any(ch in s[1:] for ch in "+-"):
                    s = f"({s})"
                terms.append(f"{s}*{pair}")
    return " + ".join(terms) if terms else "0"


def table_key(F: Field, table):
    """Lexicographic sort key of a table (entries in row-major order)."""
    return tuple(F.sort_keys(table))


def _first_nonzero_index(F: Field, diff):
    return F.first_nonzero(diff)


class AxiomResult:
    __slots__ = ("name", "passed", "witness")

    def __init__(self, name, passed, witness=None):
        self.name = name
        self.passed = passed
        self.witness = witness

    def __repr__(self):
        status = "PASS" if self.passed else f"FAIL at {self.witness}"
        return f"{self.name}: {status}"


class AxiomReport:
    """Ordered pass/fail results; truthy iff every axiom passed."""

    def __init__(self, results=None):
        self.results = list(results or [])

    def add(self, name, F, lhs, rhs, labels_per_axis):
        diff = F.sub_arrays(lhs, rhs)
        idx = F.first_nonzero(diff)
        if idx is None:
            self.results.append(AxiomResult(name, True))
        else:
            wit = tuple(labels_per_axis[k][i] for k, i in enumerate(idx[: len(labels_per_axis)]))
            self.results.append(AxiomResult(name, False, wit))

    def add_result(self, name, passed, witness=None):
        self.results.append(AxiomResult(name, passed, witness))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self):
        return [r for r in self.results if not r.passed]

    def raise_on_failure(self, what="structure"):
        bad = self.failures()
        if bad:
            raise AxiomFailure(f"{what}: {bad[0].name} fails at {bad[0].witness}", bad[0].witness)

    def __repr__(self):
        return "AxiomReport(" + "; ".join(repr(r) for r in self.results) + ")"


# --- algebras ----------------------------------------------------------------

class AlgebraData:
    """A finite-dimensional unital algebra.

    ``gens`` optionally lists generator vectors; when absent a generating set
    is derived greedily from the basis whenever one is needed.
    """

    def __init__(self, field: Field, mult, unit, labels=None, gens=None, name=""):
        self.field = field
        self.mult = mult
        self.unit = unit
        n = field.shape(unit)[0]
        if field.shape(mult) != (n, n, n):
            raise DimensionMismatch(f"multiplication table has shape {field.shape(mult)}, expected {(n, n, n)}")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise DimensionMismatch("wrong number of basis labels")
        self.gens = gens
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def algebra(self) -> "AlgebraData":
        return self

    # elements
    def basis_vector(self, which):
        i = self.labels.index(which) if isinstance(which, str) else which
        v = self.field.zeros(self.dim)
        v[i] = self.field.scalar_array(self.field.one)
        return v

    def element(self, coeffs: dict):
        """Vector from ``{label: scalar}``."""
        F = self.field
        v = F.zeros(self.dim)
        for lab, c in coeffs.items():
            i = self.labels.index(lab)
            v[i] = F.scalar_array(F.add(F.get(v, i), F.coerce(c)))
        return v

    def zero(self):
        return self.field.zeros(self.dim)

    def multiply(self, x, y):
        F = self.field
        return F.einsum("j,jk->k", y, F.einsum("i,ijk->jk", x, self.mult))

    def multiply_rows(self, X, Y):
        """Row-wise products of two stacks of vectors."""
        F = self.field
        return F.einsum("rjk,rj->rk", F.einsum("ri,ijk->rjk", X, self.mult), Y)

    def left_matrix(self, x):
        """Table of ``y -> x y``."""
        return self.field.einsum("i,ijk->jk", x, self.mult)

    def right_matrix(self, x):
        """Table of ``y -> y x``."""
        return self.field.einsum("j,ijk->ik", x, self.mult)

    def power(self, x, k: int):
        out = self.unit.copy()
        for _ in range(k):
            out = self.multiply(out, x)
        return out

    def format(self, v) -> str:
        return format_vector(self.field, v, self.labels)

    def is_commutative(self) -> bool:
        return self.field.equal(self.mult, np.swapaxes(self.mult, 0, 1))

    def check(self) -> AxiomReport:
        rep = AxiomReport()
        check_algebra(self, rep)
        return rep

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<AlgebraData{nm} dim={self.dim} over {self.field.name}>"

    def generators(self):
        return self.gens if self.gens is not None else greedy_generators(self)


def check_algebra(A, rep: AxiomReport):
    F, T, u, L = A.field, A.mult, A.unit, A.labels
    n = len(L)
    left = F.einsum("ijx,xko->ijko", T, T)
    right = F.einsum("jky,iyo->ijko", T, T)
    rep.add("associativity", F, left, right, [L, L, L])
    eye = F.eye(n)
    rep.add("left unit", F, F.einsum("i,ijk->jk", u, T), eye, [L])
    rep.add("right unit", F, F.einsum("i,jik->jk", u, T), eye, [L])


def base_algebra(F: Field) -> AlgebraData:
    """The field itself as a one-dimensional algebra."""
    mult = F.zeros((1, 1, 1))
    mult[0, 0, 0] = F.scalar_array(F.one)
    unit = F.zeros(1)
    unit[0] = F.scalar_array(F.one)
    return AlgebraData(F, mult, unit, ["1"], name="k")


def tensor_algebra(A: AlgebraData, B: AlgebraData, sep=".") -> AlgebraData:
    F = A.field
    F.check_same(B.field)
    n, m = A.dim, B.dim
    T = F.einsum("iko,jlp->ijklop", A.mult, B.mult)
    T = T.reshape((n * m,) * 3 + T.shape[6:])
    u = F.einsum("i,j->ij", A.unit, B.unit).reshape((n * m,) + A.unit.shape[1:])
    labels = [f"{a}{sep}{b}" for a in A.labels for b in B.labels]
    return AlgebraData(F, T, u, labels, name=f"{A.name}{sep}{B.name}")


def opposite_algebra(A: AlgebraData) -> AlgebraData:
    return AlgebraData(A.field, np.swapaxes(A.mult, 0, 1).copy(), A.unit.copy(), A.labels,
                       name=f"{A.name}^op")


def subalgebra(A: AlgebraData, V: Subspace, labels=None, name="") -> AlgebraData:
    """The subalgebra with basis ``V.basis`` in canonical coordinates.

    Raises AxiomFailure when ``V`` is not closed under products or misses 1.
    """
    F = A.field
    k = V.dim
    if not V.contains(A.unit):
        raise AxiomFailure("subspace does not contain the unit")
    Bv = V.basis
    prods = F.einsum("ajk,bj->abk", F.einsum("ai,ijk->ajk", Bv, A.mult), Bv)
    flat = prods.reshape((k * k, A.dim) + prods.shape[3:])
    if k and not V.contains_all(flat):
        raise AxiomFailure("subspace is not closed under multiplication")
    T = V.coordinates(prods) if k else F.zeros((0, 0, 0))
    u = V.coordinates(A.unit)
    if labels is None:
        labels = [A.format(row) for row in Bv]
    return AlgebraData(F, T, u, labels, name=name)


def center(B: AlgebraData):
    """``(Z, ZB)``: the center as a Subspace of B and as an algebra."""
    F = B.field
    comm = F.sub_arrays(B.mult, np.swapaxes(B.mult, 0, 1))  # [b, j, k] = b e_j - e_j b
    n = B.dim
    # b lies in the center iff sum_b x_b comm[b, j, k] = 0 for all j, k
    A = linalg.tr(comm.reshape((n, n * n) + comm.shape[3:]))
    Z = linalg.kernel_subspace(F, A)
    ZB = subalgebra(B, Z, name=f"Z({B.name})")
    if not ZB.is_commutative():
        raise AxiomFailure("center computation produced a noncommutative algebra")
    return Z, ZB


def generated_subspace(A: AlgebraData, gens) -> Subspace:
    """Span of all products of ``gens`` (including 1)."""
    F = A.field
    rows = [A.unit]
    S = Subspace.span(F, A.dim, np.stack(rows))
    frontier = [A.unit]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                v = A.multiply(w, g)
                if not S.contains(v):
                    rows.append(v)
                    S = Subspace.span(F, A.dim, np.stack(rows))
                    new.append(v)
        frontier = new
    return S


def greedy_generators(A: AlgebraData):
    """Basis vectors, in order, that are not in the subalgebra of the previous ones."""
    gens = []
    S = generated_subspace(A, gens)
    for i in range(A.dim):
        if S.dim == A.dim:
            break
        e = A.basis_vector(i)
        if not S.contains(e):
            gens.append(e)
            S = generated_subspace(A, gens)
    return gens


def word_basis(A: AlgebraData, gens):
    """Words in the generators whose values form a basis of A.

    Returns ``(words, W)`` where ``words[r]`` is a tuple of generator indices
    and row ``r`` of ``W`` its value.
    """
    F = A.field
    words = [()]
    values = [A.unit]
    S = Subspace.span(F, A.dim, np.stack(values))
    frontier = [((), A.unit)]
    while frontier and S.dim < A.dim:
        nxt = []
        for w, val in frontier:
            for gi, g in enumerate(gens):
                v = A.multiply(val, g)
                if not S.contains(v):
                    words.append(w + (gi,))
                    values.append(v)
                    S = Subspace.span(F, A.dim, np.stack(values))
                    nxt.append((w + (gi,), v))
        frontier = nxt
    if S.dim < A.dim:
        raise AxiomFailure("the given generators do not generate the algebra")
    return words, np.stack(values)


def minimal_polynomial(A: AlgebraData, x):
    """Monic minimal polynomial of ``x`` over the base field, low-to-high raw coefficients."""
    F = A.field
    powers = [A.unit]
    while True:
        nxt = A.multiply(powers[-1], x)
        M = linalg.tr(np.stack(powers))
        sol, _ = linalg.solve_system(F, M, nxt)
        if sol is not None:
            # x^k = sum c_i x^i  ->  x^k - sum c_i x^i
            coefs = [F.neg(F.get(sol, i)) for i in range(len(powers))]
            return coefs + [F.one]
        powers.append(nxt)


def _int_divisors(n: int):
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(coefs):
    """Rational roots of a polynomial with Fraction coefficients (low-to-high)."""
    coefs = [Fraction(c) for c in coefs]
    while coefs and coefs[-1] == 0:
        coefs.pop()
    roots = set()
    while coefs and coefs[0] == 0:
        roots.add(Fraction(0))
        coefs = coefs[1:]
    if len(coefs) <= 1:
        return sorted(roots)
    den = 1
    for c in coefs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coefs]
    for p in _int_divisors(ints[0]):
        for q in _int_divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = Fraction(0)
                for c in reversed(ints):
                    val = val * cand + c
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def all_vectors(F: Field, n: int, cap=DEFAULT_CAP):
    """Every vector of ``F^n`` in lexicographic order (first entry most significant)."""
    if not F.is_finite:
        raise UnsupportedField("enumeration needs a finite field")
    q = F.order
    if q ** n > cap:
        raise CapExceeded(f"{q}^{n} candidates exceed the cap {cap}")
    codes = np.array(list(itertools.product(range(q), repeat=n)), dtype=np.int64).reshape(q ** n, n)
    return codes_to_array(F, codes)


def codes_to_array(F: Field, codes):
    if F.d == 1:
        return codes.astype(F._dtype) if F._dtype is not object else codes.astype(object)
    digits = np.stack([(codes // F.p ** i) % F.p for i in range(F.d)], axis=-1)
    return digits.astype(F._dtype)


def eval_polynomial_rows(B: AlgebraData, coefs, X):
    """Evaluate a polynomial with raw scalar coefficients at every row of ``X``."""
    F = B.field
    N = F.shape(X)[0]
    acc = F.zeros((N, B.dim))
    unit_rows = np.broadcast_to(B.unit, (N,) + B.unit.shape).copy()
    for c in reversed(coefs):
        acc = B.multiply_rows(acc, X)
        acc = F.add_arrays(acc, F.scale(unit_rows, c))
    return acc


def roots_in(B: AlgebraData, coefs, cap=DEFAULT_CAP):
    """All ``b`` in B with ``poly(b) = 0``, lexicographically ordered."""
    F = B.field
    if F.is_finite:
        X = all_vectors(F, B.dim, cap)
        vals = eval_polynomial_rows(B, coefs, X)
        flat = vals.reshape((F.shape(vals)[0], -1))
        keep = ~flat.any(axis=1) if F._dtype is not object else np.array([not any(r) for r in flat])
        return [X[i] for i in np.flatnonzero(keep)]
    if B.dim != 1:
        raise UnsupportedField("root search over Q is only implemented with target Q")
    scale = B.unit[0]
    out = []
    for r in rational_roots(coefs):
        out.append(np.array([r / scale], dtype=object))
    return out


def algebra_maps(A: AlgebraData, B: AlgebraData, cap=DEFAULT_CAP):
    """All unital multiplicative linear maps ``A -> B`` as tables ``[a, b]``.

    Each generator of ``A`` must go to a root of its minimal polynomial;
    every combination of roots is tried and kept if it is multiplicative on
    all basis pairs.  Ordered lexicographically by table entries.
    """
    F = A.field
    F.check_same(B.field)
    gens = A.generators()
    words, W = word_basis(A, gens)
    Winv = linalg.inverse(F, W)
    candidates = []
    total = 1
    for g in gens:
        roots = roots_in(B, minimal_polynomial(A, g), cap)
        candidates.append(roots)
        total *= len(roots)
        if total > cap:
            raise CapExceeded(f"{total} generator image combinations exceed the cap {cap}")
    found = []
    for combo in itertools.product(*candidates):
        images = []
        for w in words:
            v = B.unit
            for gi in w:
                v = B.multiply(v, combo[gi])
            images.append(v)
        f = linalg.matmul(F, Winv, np.stack(images))
        if is_algebra_map(A, B, f):
            found.append(f)
    found.sort(key=lambda t: table_key(F, t))
    return found


def is_algebra_map(A: AlgebraData, B: AlgebraData, f) -> bool:
    F = A.field
    if not F.equal(linalg.vecmat(F, A.unit, f), B.unit):
        return False
    lhs = F.einsum("ijk,kb->ijb", A.mult, f)
    fx = F.einsum("ia,abc->ibc", f, B.mult)
    rhs = F.einsum("ibc,jb->ijc", fx, f)
    return F.equal(lhs, rhs)


def characters(A: AlgebraData, cap=DEFAULT_CAP):
    """Algebra maps ``A -> k`` as vectors ``chi[a]``."""
    k = base_algebra(A.field)
    return [f[:, 0] for f in algebra_maps(A, k, cap)]


# --- coalgebras and Hopf algebras ------------------------------------------

class CoalgebraData:
    def __init__(self, field: Field, comult, counit, labels=None, name=""):
        self.field = field
        self.comult = comult
        self.counit = counit
        n = field.shape(counit)[0]
        if field.shape(comult) != (n, n, n):
            raise DimensionMismatch("comultiplication table has the wrong shape")
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        self.name = name

    @property
    def dim(self):
        return len(self.labels)

    def check(self) -> AxiomReport:
        rep = AxiomReport()
        check_coalgebra(self, rep)
        return rep


def check_coalgebra(C, rep: AxiomReport):
    F, D, e, L = C.field, C.comult, C.counit, C.labels
    n = len(L)
    left = F.einsum("iab,axy->ixyb", D, D)
    right = F.einsum("ixc,cyb->ixyb", D, D)
    rep.add("coassociativity", F, left, right, [L])
    eye = F.eye(n)
    rep.add("left counit", F, F.einsum("iab,a->ib", D, e), eye, [L])
    rep.add("right counit", F, F.einsum("iab,b->ia", D, e), eye, [L])


def tensor_coalgebra(C1, C2) -> CoalgebraData:
    F = C1.field
    n, m = C1.dim, C2.dim
    D = F.einsum("iab,jce->ijacbe", C1.comult, C2.comult)
    D = D.reshape((n * m,) * 3 + D.shape[6:])
    e = F.einsum("i,j->ij", C1.counit, C2.counit).reshape((n * m,) + C1.counit.shape[1:])
    labels = [f"{a}.{b}" for a in C1.labels for b in C2.labels]
    return CoalgebraData(F, D, e, labels)


class HopfAlgebraData(AlgebraData):
    """A finite-dimensional Hopf algebra; see the module docstring for the tables."""

    def __init__(self, field, mult, unit, comult, counit, antipode, labels=None, gens=None, name=""):
        super().__init__(field, mult, unit, labels, gens, name)
        n = self.dim
        if field.shape(comult) != (n, n, n):
            raise DimensionMismatch("comultiplication table has the wrong shape")
        if field.shape(counit) != (n,) or field.shape(antipode) != (n, n):
            raise DimensionMismatch("counit or antipode has the wrong shape")
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self._sinv = None

    @property
    def antipode_inverse(self):
        if self._sinv is None:
            inv = linalg.inverse(self.field, self.antipode)
            if inv is None:
                raise AxiomFailure("antipode is not invertible")
            self._sinv = inv
        return self._sinv

    @property
    def coalgebra(self) -> CoalgebraData:
        return CoalgebraData(self.field, self.comult, self.counit, self.labels, self.name)

    def delta(self, x):
        """``Delta(x)`` as an array ``[a, b]``."""
        return self.field.einsum("i,iab->ab", x, self.comult)

    def apply_antipode(self, x):
        return linalg.vecmat(self.field, x, self.antipode)

    def check(self) -> AxiomReport:
        return check_hopf_axioms(self)

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return f"<HopfAlgebraData{nm} dim={self.dim} over {self.field.name}>"


def check_hopf_axioms(H: HopfAlgebraData) -> AxiomReport:
    """Bialgebra and antipode axioms, each with the first failing basis tuple."""
    F, T, u, D, e, S, L = H.field, H.mult, H.unit, H.comult, H.counit, H.antipode, H.labels
    rep = AxiomReport()
    check_algebra(H, rep)
    check_coalgebra(H, rep)
    # Delta(e_i e_j) = Delta(e_i) Delta(e_j)
    lhs = F.einsum("ijk,kab->ijab", T, D)
    P = F.einsum("ixy,xzb->iyzb", D, T)          # [i, y, z, a]: sum_x D[i,x,y] T[x,z,a]
    Q = F.einsum("iyza,jzw->ijayw", P, D)         # [i, j, a, y, w]
    rhs = F.einsum("ijayw,ywb->ijab", Q, T)
    rep.add("comultiplication is multiplicative", F, lhs, rhs, [L, L])
    one = F.einsum("i,j->ij", u, u)
    rep.add("comultiplication is unital", F, F.einsum("i,iab->ab", u, D)[None], one[None], [["1"]])
    rep.add("counit is multiplicative", F, F.einsum("ijk,k->ij", T, e), F.einsum("i,j->ij", e, e), [L, L])
    eu = F.einsum("i,i->", u, e)
    rep.add("counit is unital", F, np.asarray(eu)[None], F.array([F.one]), [["1"]])
    eps_unit = F.einsum("i,o->io", e, u)
    left = _sd_left(F, D, S, T)
    rep.add("antipode (left)", F, left, eps_unit, [L])
    right = _sd_right(F, D, S, T)
    rep.add("antipode (right)", F, right, eps_unit, [L])
    rep.add_result("antipode invertible", linalg.inverse(F, S) is not None, None)
    return rep


def _sd_left(F, D, S, T):
    # sum D[i,a,b] S[a,x] T[x,b,o]
    P = F.einsum("iab,ax->ixb", D, S)
    return F.einsum("ixb,xbo->io", P, T)


def _sd_right(F, D, S, T):
    P = F.einsum("iab,by->iay", D, S)
    return F.einsum("iay,ayo->io", P, T)


def is_cocommutative(C) -> bool:
    return C.field.equal(C.comult, np.swapaxes(C.comult, 1, 2))


def dual_hopf(H: HopfAlgebraData, prefix="d_") -> HopfAlgebraData:
    """The dual Hopf algebra on the dual basis."""
    F = H.field
    mult = np.moveaxis(H.comult, 0, 2).copy()       # mult*[a, b, i] = D[i, a, b]
    comult = np.moveaxis(H.mult, 2, 0).copy()       # comult*[k, i, j] = T[i, j, k]
    antipode = linalg.tr(H.antipode).copy()
    labels = [prefix + lab for lab in H.labels]
    return HopfAlgebraData(F, mult, H.counit.copy(), comult, H.unit.copy(), antipode, labels,
                           name=f"{H.name}*")


def grouplikes(H: HopfAlgebraData, cap=DEFAULT_CAP):
    """All grouplike elements, lexicographically ordered, checked to form a group."""
    F = H.field
    if F.is_finite and F.order ** H.dim <= cap:
        X = all_vectors(F, H.dim, cap)
        lhs = F.einsum("ri,iab->rab", X, H.comult)
        rhs = F.einsum("ra,rb->rab", X, X)
        eps = F.einsum("ri,i->r", X, H.counit)
        ok = ~F.nonzero_mask(F.sub_arrays(lhs, rhs)).reshape(len(X), -1).any(axis=1)
        one = F.scalar_array(F.one)
        ok &= ~F.nonzero_mask(F.sub_arrays(eps, np.broadcast_to(one, eps.shape)))
        gs = [X[i] for i in np.flatnonzero(ok)]
    else:
        gs = characters(dual_hopf(H), cap)
        for g in gs:
            if not F.equal(H.delta(g), F.einsum("a,b->ab", g, g)):
                raise AxiomFailure("character of the dual is not grouplike")
    gs.sort(key=lambda v: table_key(F, v))
    _check_closed(H, gs)
    return gs


def _check_closed(H, gs):
    F = H.field
    for g in gs:
        for h in gs:
            p = H.multiply(g, h)
            if not any(F.equal(p, x) for x in gs):
                raise AxiomFailure("grouplikes are not closed under multiplication")
        if not F.equal(H.multiply(g, H.apply_antipode(g)), H.unit):
            raise AxiomFailure("S(g) is not inverse to a grouplike g")


# --- convolution ------------------------------------------------------------

def _same_structure(X, Y) -> bool:
    if X is Y:
        return True
    if X.field != Y.field or X.dim != Y.dim:
        return False
    for attr in ("mult", "unit", "comult", "counit"):
        a, b = getattr(X, attr, None), getattr(Y, attr, None)
        if (a is None) != (b is None):
            return False
        if a is not None and not X.field.equal(a, b):
            return False
    return True


class ConvolutionMap:
    """A linear map from a coalgebra to an algebra, table ``[h, a]``.

    ``f * g`` is the convolution product ``h -> f(h_(1)) g(h_(2))``.
    """

    def __init__(self, domain, codomain, table):
        self.domain = domain
        self.codomain = codomain
        self.table = table
        F = domain.field
        F.check_same(codomain.field)
        if F.shape(table) != (domain.dim, codomain.dim):
            raise DimensionMismatch(f"table of shape {F.shape(table)} for a map "
                                    f"{domain.dim} -> {codomain.dim}")

    @property
    def field(self):
        return self.domain.field

    @classmethod
    def unit_map(cls, domain, codomain) -> "ConvolutionMap":
        F = domain.field
        return cls(domain, codomain, F.einsum("h,a->ha", domain.counit, codomain.unit))

    def __mul__(self, other):
        return convolve(self, other)

    def __call__(self, v):
        return linalg.vecmat(self.field, v, self.table)

    def image(self, i):
        return self.table[i]

    def __eq__(self, other):
        if not isinstance(other, ConvolutionMap):
            return NotImplemented
        return self.field.equal(self.table, other.table)

    def __hash__(self):
        return hash(table_key(self.field, self.table))

    @property
    def matrix(self) -> linalg.Matrix:
        """The map as a (codomain x domain) matrix."""
        return linalg.Matrix(self.field, linalg.tr(self.table))

    def inverse(self):
        return conv_inverse(self)

    def describe(self) -> str:
        parts = []
        for i, lab in enumerate(self.domain.labels):
            parts.append(f"{lab} -> {format_vector(self.field, self.table[i], self.codomain.labels)}")
        return "; ".join(parts)

    def __repr__(self):
        return f"ConvolutionMap({self.describe()})"


def convolve(f: ConvolutionMap, g: ConvolutionMap) -> ConvolutionMap:
    if not (_same_structure(f.domain, g.domain) and _same_structure(f.codomain, g.codomain)):
        raise DimensionMismatch("convolution of maps with different domain or codomain")
    return ConvolutionMap(f.domain, f.codomain, convolve_tables(f.field, f.domain.comult, f.table, g.table,
                                                               f.codomain.mult))


def convolve_tables(F, D, f, g, T):
    P = F.einsum("hab,ax->hxb", D, f)
    Q = F.einsum("hxb,by->hxy", P, g)
    return F.einsum("hxy,xyo->ho", Q, T)


def conv_inverse(f: ConvolutionMap):
    """Two-sided convolution inverse, or None."""
    F = f.field
    C, A = f.domain, f.codomain
    m, n = C.dim, A.dim
    P = F.einsum("hab,ax->hxb", C.comult, f.table)
    K = F.einsum("hxb,xyo->byho", P, A.mult)          # coefficient of u[b, y] in (f*u)[h, o]
    M = linalg.tr(K.reshape((m * n, m * n) + K.shape[4:]))
    target = F.einsum("h,o->ho", C.counit, A.unit).reshape((m * n,) + K.shape[4:])
    sol, _ = linalg.solve_system(F, M, target)
    if sol is None:
        return None
    u = ConvolutionMap(C, A, sol.reshape((m, n) + K.shape[4:]))
    e = ConvolutionMap.unit_map(C, A)
    if convolve(u, f) != e or convolve(f, u) != e:
        return None
    return u


def identity_map(H: HopfAlgebraData) -> ConvolutionMap:
    return ConvolutionMap(H, H, H.field.eye(H.dim))


def antipode_map(H: HopfAlgebraData) -> ConvolutionMap:
    return ConvolutionMap(H, H, H.antipode.copy())


def random_map(domain, codomain, rng) -> ConvolutionMap:
    F = domain.field
    vals = [[F.random(rng) for _ in range(codomain.dim)] for _ in range(domain.dim)]
    return ConvolutionMap(domain, codomain, F.array(vals))
