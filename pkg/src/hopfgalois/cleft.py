"""Cleft extensions: total integrals, the induced action, 2-cocycles and crossed products.

For a comodule algebra A over H with coinvariants B, a total integral is a
convolution-invertible colinear map ``t: H -> A``.  Normalised so that
``t(1) = 1`` it yields

* the weak action ``omega(h (x) b) = t(h1) b u(h2)`` of H on B,
* the cocycle ``sigma(h (x) k) = t(h1) t(k1) u(h2 k2)`` with values in B,
* the isomorphism ``phi(b # h) = b t(h)`` from the crossed product onto A,
  with inverse ``a -> a_[0] u(a_[1]) # a_[2]``.

The crossed product ``B #_sigma H`` multiplies as
``(b # h)(c # k) = b (h1 . c) sigma(h2 (x) k1) # h3 k2``.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import linalg
from .algebra import (DEFAULT_CAP, AlgebraData, AxiomReport, ConvolutionMap, HopfAlgebraData,
                      check_algebra, conv_inverse, is_algebra_map, is_cocommutative, table_key,
                      tensor_coalgebra)
from .errors import AxiomFailure, CapExceeded, DimensionMismatch, UnsupportedField
from .galois import (ComoduleAlgebraData, Coinvariants, coinvariants, morphism_space, tables_of)
from .linalg import Subspace

QQ_TRIALS = 10_000
QQ_ALGEBRA_TRIALS = 200
QQ_HEIGHT = 3
PROBE = 4096


class TotalIntegral:
    """A colinear convolution-invertible ``t: H -> A`` with its inverse ``u``."""

    def __init__(self, A: ComoduleAlgebraData, t: ConvolutionMap, u: ConvolutionMap, B: Coinvariants = None):
        self.A = A
        self.t = t
        self.u = u
        self.B = B or coinvariants(A)
        F = A.field
        self.colinear = morphism_space(A, 1, 2).contains(t.table.reshape((-1,) + t.table.shape[2:]))
        self.unit_normalized = F.equal(t(A.hopf.unit), A.unit)
        self.algebra_map = is_algebra_map(A.hopf, A.algebra, t.table)
        if not self.colinear:
            raise AxiomFailure("integral is not colinear")
        e = ConvolutionMap.unit_map(A.hopf, A.algebra)
        if t * u != e or u * t != e:
            raise AxiomFailure("u is not a two-sided convolution inverse of t")

    @property
    def field(self):
        return self.A.field

    def normalized(self) -> "TotalIntegral":
        """``t' = u(1) t`` together with its inverse ``u t(1)``."""
        if self.unit_normalized:
            return self
        A, F = self.A, self.field
        u1 = self.u(A.hopf.unit)
        t1 = self.t(A.hopf.unit)
        t2 = linalg.matmul(F, self.t.table, A.algebra.left_matrix(u1))
        u2 = linalg.matmul(F, self.u.table, A.algebra.right_matrix(t1))
        return TotalIntegral(A, ConvolutionMap(A.hopf, A.algebra, t2),
                             ConvolutionMap(A.hopf, A.algebra, u2), self.B)

    def describe(self) -> str:
        return self.t.describe()

    def __repr__(self):
        return f"TotalIntegral({self.describe()})"


def _left_conv_operator(F, H, A, table):
    """Matrix of ``u -> t * u`` on flattened tables, shape (m*n, m*n)."""
    m, n = H.dim, A.dim
    P = F.einsum("hab,ax->hxb", H.comult, table)
    K = F.einsum("hxb,xyo->byho", P, A.mult)
    return K.reshape((m * n, m * n) + K.shape[4:])


def _is_conv_invertible(F, H, A, table) -> bool:
    K = _left_conv_operator(F, H, A, table)
    return linalg.rank(F, K) == F.shape(K)[0]


def _combos_lex(F, k, cap):
    """Coefficient vectors of F^k in lexicographic order, lazily."""
    q = F.order
    if q ** k > cap:
        raise CapExceeded(f"{q}^{k} candidates exceed the cap {cap}")
    for codes in itertools.product(range(q), repeat=k):
        yield [F.from_code(c) for c in codes]


def colinear_tables(A: ComoduleAlgebraData):
    V = morphism_space(A, 1, 2)
    return V, tables_of(V, A.hopf.dim, A.dim)


def find_total_integral(A: ComoduleAlgebraData, cap=DEFAULT_CAP, seed=0):
    """A normalised total integral, None when none exists, CapExceeded if undecided.

    Finite fields: the first ``PROBE`` lexicographic candidates of the colinear
    space, then a seeded random probe, then the rest of the lexicographic
    enumeration (so a None answer means the space was exhausted).  Over Q:
    basis elements, pairwise sums, then seeded random small-height elements.
    """
    F, H = A.field, A.hopf
    V, basis = colinear_tables(A)
    k = V.dim
    if k == 0:
        return None

    def attempt(coefs):
        table = F.einsum("i,ihx->hx", F.array(coefs) if not isinstance(coefs, np.ndarray) else coefs, basis)
        if F.is_zero_array(table) or not _is_conv_invertible(F, H, A.algebra, table):
            return None
        t = ConvolutionMap(H, A.algebra, table)
        u = conv_inverse(t)
        if u is None:
            return None
        return TotalIntegral(A, t, u).normalized()

    rng = np.random.default_rng(seed)
    if F.is_finite:
        total = F.order ** k
        if total > cap:
            # probe only; the answer cannot be certified negative
            for _ in range(min(cap, QQ_TRIALS)):
                r = attempt([F.random(rng) for _ in range(k)])
                if r is not None:
                    return r
            raise CapExceeded(f"colinear space has {total} elements, above the cap {cap}")
        gen = _combos_lex(F, k, cap)
        for coefs in itertools.islice(gen, PROBE):
            r = attempt(coefs)
            if r is not None:
                return r
        if total > PROBE:
            for _ in range(PROBE):
                r = attempt([F.random(rng) for _ in range(k)])
                if r is not None:
                    return r
            for coefs in gen:
                r = attempt(coefs)
                if r is not None:
                    return r
        return None
    one, zero = F.one, F.zero
    probes = []
    for i in range(k):
        probes.append([one if j == i else zero for j in range(k)])
    for i, j in itertools.combinations(range(k), 2):
        probes.append([one if x in (i, j) else zero for x in range(k)])
    probes.append([one] * k)
    for coefs in probes:
        r = attempt(coefs)
        if r is not None:
            return r
    for _ in range(QQ_TRIALS):
        r = attempt([F.random(rng, QQ_HEIGHT) for _ in range(k)])
        if r is not None:
            return r
    raise CapExceeded("no total integral found among the probed rational candidates")


def integral_from_table(A: ComoduleAlgebraData, table) -> TotalIntegral:
    t = ConvolutionMap(A.hopf, A.algebra, table)
    u = conv_inverse(t)
    if u is None:
        raise AxiomFailure("map is not convolution invertible")
    return TotalIntegral(A, t, u)


# --- omega and sigma ------------------------------------------------------------

def _to_B(B: Coinvariants, X, what):
    F = B.space.field
    n = B.space.ambient
    flat = X.reshape((-1, n) + X.shape[len(F.shape(X)):])
    if not B.space.contains_all(flat):
        raise AxiomFailure(f"{what} takes a value outside the coinvariants")
    return B.space.coordinates(X)


def omega(ti: TotalIntegral):
    """``omega[h, j, k]``: coordinates of ``t(h1) b_j u(h2)`` in the basis of B."""
    if not ti.unit_normalized:
        raise AxiomFailure("omega needs a unit-normalised integral")
    A, F, H = ti.A, ti.field, ti.A.hopf
    T, Bb = A.mult, ti.B.basis
    tb = F.einsum("ayo,jy->ajo", F.einsum("ax,xyo->ayo", ti.t.table, T), Bb)    # t(a) b_j
    X = F.einsum("ajo,ozp->ajzp", tb, T)                                        # [a, j, z, p]
    Y = F.einsum("ajzp,cz->ajcp", X, ti.u.table)                               # t(a) b_j u(c)
    W = F.einsum("hac,ajcp->hjp", H.comult, Y)
    return _to_B(ti.B, W, "omega")


def omega_hypotheses(ti: TotalIntegral) -> bool:
    """H cocommutative and B commutative: the setting where omega is canonical."""
    return is_cocommutative(ti.A.hopf) and ti.B.algebra.is_commutative()


def omega_commutation_report(ti: TotalIntegral, om):
    """``a b = omega(a_[1] (x) b) a_[0]`` for basis a in A and b in B.

    Returns None when H is not cocommutative or B is not commutative, since
    the identity is only asserted in that setting.
    """
    if not omega_hypotheses(ti):
        return None
    A, F = ti.A, ti.field
    T, R, Bb = A.mult, A.coaction, ti.B.basis
    lhs = F.einsum("jb,abo->ajo", Bb, T)                                        # a b_j
    omA = F.einsum("hjk,kx->hjx", om, Bb)                                       # omega in A
    P = F.einsum("axh,hjw->axjw", R, omA)
    rhs = F.einsum("axjw,wxo->ajo", P, T)
    rep = AxiomReport()
    rep.add("action commutation", F, lhs, rhs, [A.labels, ti.B.algebra.labels])
    return rep


def extract_sigma(ti: TotalIntegral) -> "TwoCocycle":
    if not ti.unit_normalized:
        raise AxiomFailure("sigma needs a unit-normalised integral")
    A, F, H = ti.A, ti.field, ti.A.hopf
    T = A.mult
    t, u = ti.t.table, ti.u.table
    tt = _pair_products(F, t, T)                                                # t(a) t(b)
    uu = F.einsum("hkg,go->hko", H.mult, u)                                     # u(hk)
    Z1 = F.einsum("hxy,xkp->hykp", H.comult, tt)                                # [h, h2, k1, o1]
    Z2 = F.einsum("hykp,gkw->hygwp", Z1, H.comult)                              # [h, h2, k, k2, o1]
    W = F.einsum("hygwp,ywq->hgpq", Z2, uu)
    out = F.einsum("hgpq,pqo->hgo", W, T)
    sig = _to_B(ti.B, out, "sigma")
    return TwoCocycle(ti.B.algebra, H, sig, omega(ti), provenance=ti)


def omega_independent(integrals) -> bool:
    """Whether all given integrals of one comodule algebra share the same omega."""
    tables = [omega(ti if ti.unit_normalized else ti.normalized()) for ti in integrals]
    F = integrals[0].field
    return all(F.equal(tables[0], t) for t in tables[1:])


def other_integrals(A: ComoduleAlgebraData, limit=4, cap=DEFAULT_CAP):
    """Up to ``limit`` distinct normalised total integrals (finite fields only)."""
    F, H = A.field, A.hopf
    if not F.is_finite:
        raise UnsupportedField("enumerating integrals needs a finite field")
    V, basis = colinear_tables(A)
    out, seen = [], set()
    for coefs in _combos_lex(F, V.dim, cap):
        table = F.einsum("i,ihx->hx", F.array(coefs), basis)
        if F.is_zero_array(table) or not _is_conv_invertible(F, H, A.algebra, table):
            continue
        ti = integral_from_table(A, table).normalized()
        key = table_key(F, ti.t.table)
        if key not in seen:
            seen.add(key)
            out.append(ti)
            if len(out) >= limit:
                break
    return out


def _pair_products(F, t, T):
    """``[a, b, o]``: t(a) t(b)."""
    X = F.einsum("ax,xyo->ayo", t, T)
    return F.einsum("ayo,by->abo", X, t)


class TwoCocycle:
    """``sigma[h, k, j]`` (B coordinates) with the weak action ``omega[h, j, k]``."""

    def __init__(self, B: AlgebraData, H: HopfAlgebraData, table, omega_table, provenance=None):
        F = B.field
        if F.shape(table) != (H.dim, H.dim, B.dim):
            raise DimensionMismatch("cocycle table has the wrong shape")
        self.B = B
        self.hopf = H
        self.table = table
        self.omega = omega_table
        self.provenance = provenance

    @property
    def field(self):
        return self.B.field

    def is_normal(self) -> bool:
        F, H, B = self.field, self.hopf, self.B
        left = F.einsum("h,hkj->kj", H.unit, self.table)
        right = F.einsum("k,hkj->hj", H.unit, self.table)
        target = F.einsum("k,j->kj", H.counit, B.unit)
        return F.equal(left, target) and F.equal(right, target)

    def as_map(self) -> ConvolutionMap:
        H = self.hopf
        HH = tensor_coalgebra(H, H)
        n = H.dim
        return ConvolutionMap(HH, self.B, self.table.reshape((n * n, self.B.dim) + self.table.shape[3:]))

    @classmethod
    def from_map(cls, f: ConvolutionMap, H, omega_table, provenance=None):
        n = H.dim
        return cls(f.codomain, H, f.table.reshape((n, n, f.codomain.dim) + f.table.shape[2:]),
                   omega_table, provenance)

    @classmethod
    def trivial(cls, B: AlgebraData, H: HopfAlgebraData, omega_table=None):
        F = B.field
        table = F.einsum("hk,j->hkj", F.einsum("h,k->hk", H.counit, H.counit), B.unit)
        if omega_table is None:
            omega_table = trivial_omega(B, H)
        return cls(B, H, table, omega_table)

    def describe(self) -> str:
        F, H = self.field, self.hopf
        parts = []
        for h, hl in enumerate(H.labels):
            for k, kl in enumerate(H.labels):
                parts.append(f"sigma({hl},{kl}) = {self.B.format(self.table[h, k])}")
        return "; ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, TwoCocycle):
            return NotImplemented
        return self.field.equal(self.table, other.table)

    def __repr__(self):
        return f"TwoCocycle({self.describe()})"


def trivial_omega(B: AlgebraData, H: HopfAlgebraData):
    F = B.field
    return F.einsum("h,jk->hjk", H.counit, F.eye(B.dim))


# --- crossed products -----------------------------------------------------------

class CrossedProductData:
    def __init__(self, comodule: ComoduleAlgebraData, sigma: TwoCocycle, report: AxiomReport):
        self.comodule = comodule
        self.sigma = sigma
        self.report = report

    @property
    def B(self):
        return self.sigma.B

    @property
    def hopf(self):
        return self.sigma.hopf

    @property
    def dim(self):
        return self.comodule.dim

    @property
    def is_associative(self) -> bool:
        return self.report["associativity"].passed


def crossed_product_table(B: AlgebraData, H: HopfAlgebraData, om, sig):
    """Multiplication table of ``B # H`` on the basis ``b_j # h``."""
    F = B.field
    kB, m = B.dim, H.dim
    TB, TH, D = B.mult, H.mult, H.comult
    D2 = F.einsum("hpc,pab->habc", D, D)                       # h1=a, h2=b, h3=c
    X1 = F.einsum("habc,alp->hlbcp", D2, om)                  # h1 . c_l
    X2 = F.einsum("hlbcp,bkq->hlckpq", X1, sig)               # sigma(h2, k1)
    X3 = F.einsum("hlckpq,pqr->hlckr", X2, TB)
    X4 = F.einsum("hlckr,gkw->hlgcwr", X3, D)                 # k1=k, k2=w
    X5 = F.einsum("hlgcwr,cwz->hlgrz", X4, TH)
    out = F.einsum("jro,hlgrz->jhlgoz", TB, X5)
    n = kB * m
    return out.reshape((n, n, n) + out.shape[6:])


def crossed_product(B: AlgebraData, om, sigma, H: HopfAlgebraData = None, check=True) -> CrossedProductData:
    """Build ``B #_sigma H``; ``sigma`` is a TwoCocycle or a table ``[h, k, j]``.

    The report lists associativity and unit failures with witnesses; a failed
    associativity check means sigma is not a 2-cocycle for omega.
    """
    if isinstance(sigma, TwoCocycle):
        H = H or sigma.hopf
        sig = sigma
    else:
        sig = TwoCocycle(B, H, sigma, om)
    F = B.field
    T = crossed_product_table(B, H, om, sig.table)
    kB, m = B.dim, H.dim
    unit = F.einsum("j,h->jh", B.unit, H.unit).reshape((kB * m,) + B.unit.shape[1:])
    labels = [f"{bl}#{hl}" for bl in _plain_labels(B) for hl in H.labels]
    alg = AlgebraData(F, T, unit, labels, name=f"{B.name or 'B'}#{H.name or 'H'}")
    R = F.einsum("jl,hgk->jhlgk", F.eye(kB), H.comult).reshape((kB * m, kB * m, m) + unit.shape[1:])
    cp = ComoduleAlgebraData(alg, H, R, name=alg.name)
    rep = AxiomReport()
    if check:
        check_algebra(alg, rep)
        if rep.passed:
            from .galois import check_comodule_algebra
            rep = check_comodule_algebra(cp)
    return CrossedProductData(cp, sig, rep)


def _plain_labels(B: AlgebraData):
    out = []
    for i, lab in enumerate(B.labels):
        if all(ch.isalnum() or ch in "_^" for ch in lab):
            out.append(lab)
        else:
            out.append(f"b{i}")
    return out


class PhiIso:
    def __init__(self, cp: CrossedProductData, A: ComoduleAlgebraData, phi, phi_inv, report):
        self.crossed_product = cp
        self.A = A
        self.phi = phi          # [(j, h), a]
        self.phi_inv = phi_inv  # [a, (j, h)]
        self.report = report

    @property
    def passed(self):
        return self.report.passed


def phi_iso(ti: TotalIntegral, cp: CrossedProductData = None) -> PhiIso:
    """``phi(b # h) = b t(h)`` and its inverse, with every identity verified."""
    if not ti.unit_normalized:
        ti = ti.normalized()
    A, F, H = ti.A, ti.field, ti.A.hopf
    if cp is None:
        sig = extract_sigma(ti)
        cp = crossed_product(ti.B.algebra, sig.omega, sig, H)
    T, R, Bb = A.mult, A.coaction, ti.B.basis
    kB, m, n = ti.B.dim, H.dim, A.dim
    X = F.einsum("jx,xyo->jyo", Bb, T)
    phi = F.einsum("jyo,hy->jho", X, ti.t.table).reshape((kB * m, n) + Bb.shape[2:])
    R2 = F.einsum("ayk,yxg->axgk", R, R)                         # a_[0]=x, a_[1]=g, a_[2]=k
    P = F.einsum("axgk,gz->axzk", R2, ti.u.table)
    W = F.einsum("axzk,xzo->ako", P, T)                           # [a, k, o] in A
    Wb = _to_B(ti.B, W, "phi inverse")                            # [a, k, j]
    phi_inv = np.swapaxes(Wb, 1, 2).reshape((n, kB * m) + Wb.shape[3:]).copy()
    rep = AxiomReport()
    rep.add("phi after inverse", F, linalg.matmul(F, phi_inv, phi), F.eye(n), [A.labels])
    rep.add("inverse after phi", F, linalg.matmul(F, phi, phi_inv), F.eye(kB * m), [cp.comodule.labels])
    CP = cp.comodule
    lhs = F.einsum("ijk,ko->ijo", CP.mult, phi)
    rhs = _pair_products(F, phi, T)
    rep.add("phi is multiplicative", F, lhs, rhs, [CP.labels, CP.labels])
    rep.add("phi is unital", F, linalg.vecmat(F, CP.unit, phi)[None], A.unit[None], [["1"]])
    lhs = F.einsum("ia,axh->ixh", phi, R)
    rhs = F.einsum("iyh,yx->ixh", CP.coaction, phi)
    rep.add("phi is colinear", F, lhs, rhs, [CP.labels])
    return PhiIso(cp, A, phi, phi_inv, rep)


def transported_integral(iso: PhiIso, ti: TotalIntegral) -> TotalIntegral:
    """``h -> 1 # h`` on the crossed product, which phi sends to t."""
    cp = iso.crossed_product.comodule
    F = cp.field
    m, kB = ti.A.hopf.dim, ti.B.dim
    table = F.einsum("j,hg->hjg", ti.B.algebra.unit, F.eye(m)).reshape((m, kB * m) + ti.B.algebra.unit.shape[1:])
    return integral_from_table(cp, table)


# --- algebra integrals ------------------------------------------------------------

class AlgebraIntegralSearch:
    """Outcome of :func:`find_algebra_integral`: ``integral`` or an exhaustion count."""

    def __init__(self, integral, exhausted, candidates):
        self.integral = integral
        self.exhausted = exhausted
        self.candidates = candidates

    @property
    def found(self):
        return self.integral is not None


def find_algebra_integral(A: ComoduleAlgebraData, cap=DEFAULT_CAP, seed=0) -> AlgebraIntegralSearch:
    """A colinear algebra map ``H -> A``.

    The candidates form the affine space ``{t colinear : t(1) = 1}``.  Over a
    finite field it is enumerated completely (CapExceeded above ``cap``);
    over Q a seeded small-height probe is run and failure raises CapExceeded.
    """
    F, H = A.field, A.hopf
    V, basis = colinear_tables(A)
    k = V.dim
    # t(1) = 1 as a linear system on the coordinates
    ones = F.einsum("h,ihx->ix", H.unit, basis) if k else F.zeros((0, A.dim))
    if k == 0:
        return AlgebraIntegralSearch(None, True, 0)
    sol, ker = linalg.solve_system(F, linalg.tr(ones), A.unit)
    if sol is None:
        return AlgebraIntegralSearch(None, True, 0)
    free = F.shape(ker)[0]

    def attempt(coefs):
        c = sol.copy()
        if free:
            c = F.add_arrays(c, F.einsum("i,ij->j", F.array(coefs), ker))
        table = F.einsum("i,ihx->hx", c, basis)
        if is_algebra_map(H, A.algebra, table):
            return table
        return None

    if F.is_finite:
        total = F.order ** free
        if total > cap:
            raise CapExceeded(f"{total} candidate algebra integrals exceed the cap {cap}")
        count = 0
        for coefs in _combos_lex(F, free, cap):
            count += 1
            table = attempt(coefs)
            if table is not None:
                return AlgebraIntegralSearch(integral_from_table(A, table), False, count)
        return AlgebraIntegralSearch(None, True, count)
    rng = np.random.default_rng(seed)
    if free == 0:
        table = attempt([])
        if table is not None:
            return AlgebraIntegralSearch(integral_from_table(A, table), False, 1)
        return AlgebraIntegralSearch(None, True, 1)
    for trial in range(QQ_ALGEBRA_TRIALS):
        coefs = [F.zero] * free if trial == 0 else [F.random(rng, QQ_HEIGHT) for _ in range(free)]
        table = attempt(coefs)
        if table is not None:
            return AlgebraIntegralSearch(integral_from_table(A, table), False, trial + 1)
    raise CapExceeded("no algebra integral among the probed rational candidates")
