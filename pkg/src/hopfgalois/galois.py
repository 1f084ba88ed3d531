"""Comodule algebras, coinvariants and Hopf-Galois certificates.

A right comodule algebra stores its coaction as ``coaction[a, x, h]``: the
coefficient of ``e_x (x) h`` in ``rho(e_a)``.  Elements of ``A (x) A`` are
arrays ``[a, b]`` (flattened row-major when a vector is needed), and the
translation map of a certificate is stored as ``gamma[h, a, b]``, one lifted
representative of ``gamma(h) = sum_i l_i(h) (x)_B r_i(h)`` per basis ``h``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .algebra import (AlgebraData, AxiomReport, HopfAlgebraData, base_algebra, center,
                      dual_hopf, format_tensor, format_vector, greedy_generators,
                      is_cocommutative, opposite_algebra, subalgebra, tensor_algebra)
from .errors import AxiomFailure, DimensionMismatch, HopfGaloisError, NotGalois
from .linalg import Subspace


class ComoduleAlgebraData:
    """An algebra with a right coaction ``rho: A -> A (x) H`` that is an algebra map."""

    def __init__(self, algebra: AlgebraData, hopf: HopfAlgebraData, coaction, name=""):
        F = algebra.field
        F.check_same(hopf.field)
        n, m = algebra.dim, hopf.dim
        if F.shape(coaction) != (n, n, m):
            raise DimensionMismatch(f"coaction has shape {F.shape(coaction)}, expected {(n, n, m)}")
        self.algebra = algebra
        self.hopf = hopf
        self.coaction = coaction
        self.name = name or algebra.name

    field = property(lambda self: self.algebra.field)
    dim = property(lambda self: self.algebra.dim)
    labels = property(lambda self: self.algebra.labels)
    mult = property(lambda self: self.algebra.mult)
    unit = property(lambda self: self.algebra.unit)

    _DELEGATED = frozenset({"multiply", "multiply_rows", "left_matrix", "right_matrix", "basis_vector",
                            "element", "format", "power", "is_commutative", "zero", "generators"})

    def __getattr__(self, name):
        if name in ComoduleAlgebraData._DELEGATED and "algebra" in self.__dict__:
            return getattr(self.__dict__["algebra"], name)
        raise AttributeError(name)

    def coact(self, v):
        """``rho(v)`` as an array ``[x, h]``."""
        return self.field.einsum("a,axh->xh", v, self.coaction)

    def check(self) -> AxiomReport:
        return check_comodule_algebra(self)

    def __repr__(self):
        return f"<ComoduleAlgebraData {self.name} dim={self.dim} over {self.hopf.name or 'H'}>"


def check_comodule_algebra(A: ComoduleAlgebraData) -> AxiomReport:
    F = A.field
    T, R, H = A.mult, A.coaction, A.hopf
    L, LH = A.labels, H.labels
    rep = AxiomReport()
    from .algebra import check_algebra
    check_algebra(A.algebra, rep)
    left = F.einsum("axh,xyg->aygh", R, R)
    right = F.einsum("ayk,kgh->aygh", R, H.comult)
    rep.add("coassociativity", F, left, right, [L])
    rep.add("counit", F, F.einsum("axh,h->ax", R, H.counit), F.eye(A.dim), [L])
    lhs = F.einsum("abk,kxh->abxh", T, R)
    P = F.einsum("apg,pqx->agqx", R, T)          # sum_p R[a,p,g] T[p,q,x]
    Q = F.einsum("agqx,bqj->agxbj", P, R)
    rhs = F.einsum("agxbj,gjh->abxh", Q, H.mult)
    rep.add("coaction is multiplicative", F, lhs, rhs, [L, L])
    rep.add("coaction is unital", F, F.einsum("a,axh->xh", A.unit, R)[None],
            F.einsum("x,h->xh", A.unit, H.unit)[None], [["1"]])
    return rep


def regular_comodule(H: HopfAlgebraData) -> ComoduleAlgebraData:
    """H as a comodule algebra over itself, coaction = comultiplication."""
    return ComoduleAlgebraData(H, H, H.comult.copy(), name=f"reg({H.name})")


def trivial_comodule(A: AlgebraData, H: HopfAlgebraData) -> ComoduleAlgebraData:
    F = A.field
    R = F.einsum("ax,h->axh", F.eye(A.dim), H.unit)
    return ComoduleAlgebraData(A, H, R, name=A.name)


# --- coinvariants and the canonical maps -------------------------------------

@dataclass
class Coinvariants:
    space: Subspace        # B inside A
    algebra: AlgebraData   # B in its canonical basis

    @property
    def dim(self):
        return self.space.dim

    @property
    def basis(self):
        return self.space.basis


def coinvariants(A: ComoduleAlgebraData) -> Coinvariants:
    F = A.field
    n, m = A.dim, A.hopf.dim
    diff = F.sub_arrays(A.coaction, F.einsum("ax,h->axh", F.eye(n), A.hopf.unit))
    M = linalg.tr(diff.reshape((n, n * m) + diff.shape[3:]))
    V = linalg.kernel_subspace(F, M)
    B = subalgebra(A.algebra, V, name=f"{A.name}^coH")
    return Coinvariants(V, B)


def balanced_relations(A: AlgebraData, B: Coinvariants) -> Subspace:
    """Span of ``a b (x) c - a (x) b c`` in ``A (x) A`` for b in B."""
    F = A.field
    n = A.dim
    gens_B = greedy_generators(B.algebra)
    rows = []
    eye = F.eye(n)
    for g in gens_B:
        beta = B.space.from_coordinates(g)
        Rb = A.right_matrix(beta)       # [a, x]: (e_a beta)[x]
        Lb = A.left_matrix(beta)        # [c, y]: (beta e_c)[y]
        X = F.sub_arrays(F.einsum("ax,cy->acxy", Rb, eye), F.einsum("ax,cy->acxy", eye, Lb))
        rows.append(X.reshape((n * n, n * n) + X.shape[4:]))
    if not rows:
        return Subspace.zero(F, n * n)
    return Subspace.span(F, n * n, np.concatenate(rows))


def free_basis(A: AlgebraData, B: Coinvariants, side="left", trials=200):
    """Elements of A forming a basis of A as a free B-module, or None.

    Basis vectors are tried first, in order; when they run out a fixed-seed
    stream of random elements is tried, ``trials`` per missing generator.
    """
    F = A.field
    n, k = A.dim, B.dim
    if k == 0 or n % k:
        return None
    rng = np.random.default_rng(0)
    chosen = []
    rows = []
    dim = 0

    def try_add(v):
        nonlocal rows, dim
        cand = [A.multiply(b, v) if side == "left" else A.multiply(v, b) for b in B.basis]
        S = Subspace.span(F, n, np.stack(rows + cand))
        if S.dim == dim + k:
            rows += cand
            dim += k
            chosen.append(v)
            return True
        return False

    for i in range(n):
        if dim == n:
            break
        try_add(A.basis_vector(i))
    while dim < n:
        for _ in range(trials):
            v = F.array([F.random(rng) for _ in range(n)])
            if try_add(v):
                break
        else:
            return None
    return chosen


def _can_tables(A: ComoduleAlgebraData):
    F = A.field
    T, R = A.mult, A.coaction
    n, m = A.dim, A.hopf.dim
    can = F.einsum("byh,ayx->abxh", R, T)        # a b_[0] (x) b_[1]
    canp = F.einsum("ayh,ybx->abxh", R, T)       # a_[0] b (x) a_[1]
    shape = (n * n, n * m) + can.shape[4:]
    return can.reshape(shape), canp.reshape(shape)


@dataclass
class CanonicalMaps:
    coinvariants: Coinvariants
    quotient: linalg.Quotient     # A (x)_B A
    can: object                   # (q, n*m) on quotient coordinates
    can_prime: object

    @property
    def dim(self):
        return self.quotient.dim


def canonical_maps(A: ComoduleAlgebraData, B: Coinvariants = None) -> CanonicalMaps:
    F = A.field
    B = B or coinvariants(A)
    rel = balanced_relations(A.algebra, B)
    Q = linalg.quotient(F, rel)
    can, canp = _can_tables(A)
    if rel.dim:
        for M in (can, canp):
            if not F.is_zero_array(linalg.matmul(F, rel.basis, M)):
                raise AxiomFailure("canonical map does not factor through the balanced tensor product")
    return CanonicalMaps(B, Q, linalg.matmul(F, Q.sect, can), linalg.matmul(F, Q.sect, canp))


# --- certificates --------------------------------------------------------------

GAMMA_IDENTITIES = (
    "translation",
    "centralizing",
    "right colinearity",
    "left colinearity",
    "counit",
    "absorption",
    "anti-multiplicativity",
)


class GaloisCertificate:
    """Evidence that ``A`` is an H-Galois extension of its coinvariants."""

    def __init__(self, A, maps: CanonicalMaps, can_inv, can_prime_inv, gamma, free_left, free_right):
        self.A = A
        self.maps = maps
        self.can_inv = can_inv
        self.can_prime_inv = can_prime_inv
        self.gamma = gamma
        self.free_left = free_left
        self.free_right = free_right

    field = property(lambda self: self.A.field)
    hopf = property(lambda self: self.A.hopf)
    coinvariants = property(lambda self: self.maps.coinvariants)
    B = property(lambda self: self.maps.coinvariants.algebra)
    quotient = property(lambda self: self.maps.quotient)

    @property
    def is_galois_object(self) -> bool:
        return self.coinvariants.dim == 1

    def project(self, X):
        """Project arrays whose last two axes are ``[a, b]`` into ``A (x)_B A``."""
        F = self.field
        n = self.A.dim
        lead = F.shape(X)[:-2]
        flat = X.reshape((-1, n * n) + X.shape[len(F.shape(X)):])
        out = linalg.matmul(F, flat, self.quotient.proj)
        return out.reshape(lead + (self.quotient.dim,) + X.shape[len(F.shape(X)):])

    def gamma_text(self, h) -> str:
        return format_tensor(self.field, self.gamma[h], self.A.labels, self.A.labels)

    def corrupted(self) -> "GaloisCertificate":
        """Copy with the two tensor legs of gamma exchanged (a negative control)."""
        return GaloisCertificate(self.A, self.maps, self.can_inv, self.can_prime_inv,
                                 np.swapaxes(self.gamma, 1, 2).copy(), self.free_left, self.free_right)

    def with_gamma(self, gamma) -> "GaloisCertificate":
        return GaloisCertificate(self.A, self.maps, self.can_inv, self.can_prime_inv,
                                 gamma, self.free_left, self.free_right)

    def __repr__(self):
        return (f"<GaloisCertificate {self.A.name}: dim A={self.A.dim}, dim B={self.coinvariants.dim}, "
                f"dim H={self.hopf.dim}>")


def galois_check(A: ComoduleAlgebraData) -> GaloisCertificate:
    """Certify that ``can`` is bijective and A is free over B; raise NotGalois otherwise."""
    F = A.field
    n, m = A.dim, A.hopf.dim
    B = coinvariants(A)
    left = free_basis(A.algebra, B, "left")
    right = free_basis(A.algebra, B, "right")
    if left is None or right is None:
        raise NotGalois(f"{A.name} is not free over its coinvariants (dim A={n}, dim B={B.dim})",
                        witness={"dim_A": n, "dim_B": B.dim})
    maps = canonical_maps(A, B)
    q = maps.dim
    if q == n * m:
        inv = linalg.inverse(F, maps.can)
    else:
        inv = None
    if inv is None:
        raise NotGalois(f"canonical map of {A.name} is not bijective", witness=_can_witness(A, maps))
    inv_p = linalg.inverse(F, maps.can_prime)
    # gamma(h) = can^{-1}(1 (x) h), lifted through the section
    ones = _one_tensor_h(F, A)
    coords = linalg.matmul(F, ones, inv)
    lifted = linalg.matmul(F, coords, maps.quotient.sect)
    gamma = lifted.reshape((m, n, n) + lifted.shape[2:])
    return GaloisCertificate(A, maps, inv, inv_p, gamma, left, right)


def _one_tensor_h(F, A):
    n, m = A.dim, A.hopf.dim
    X = F.einsum("x,hk->hxk", A.unit, F.eye(m))
    return X.reshape((m, n * m) + X.shape[3:])


def _can_witness(A, maps: CanonicalMaps):
    F = A.field
    n, m = A.dim, A.hopf.dim
    K = linalg.nullspace(F, linalg.tr(maps.can))
    if F.shape(K)[0]:
        elem = linalg.matmul(F, K[:1], maps.quotient.sect)[0].reshape((n, n) + K.shape[2:])
        return {"kind": "kernel", "element": format_tensor(F, elem, A.labels, A.labels)}
    image = Subspace.span(F, n * m, maps.can) if maps.dim else Subspace.zero(F, n * m)
    for idx in range(n * m):
        e = F.zeros(n * m)
        e[idx] = F.scalar_array(F.one)
        if not image.contains(e):
            x, h = divmod(idx, m)
            return {"kind": "cokernel", "element": f"{A.labels[x]}(x){A.hopf.labels[h]}",
                    "image_dim": image.dim, "target_dim": n * m}
    return {"kind": "unknown"}


# --- the seven translation-map identities -------------------------------------

def gamma_identities_report(cert: GaloisCertificate) -> AxiomReport:
    A, H, F, G = cert.A, cert.hopf, cert.field, cert.gamma
    T, R, D, S = A.mult, A.coaction, H.comult, H.antipode
    n, m = A.dim, H.dim
    L, LH = A.labels, H.labels
    rep = AxiomReport()
    # can(gamma(h)) = 1 (x) h
    P = F.einsum("hab,bck->hack", G, R)
    lhs = F.einsum("hack,acx->hxk", P, T)
    rhs = F.einsum("x,hk->hxk", A.unit, F.eye(m))
    rep.add(GAMMA_IDENTITIES[0], F, lhs, rhs, [LH])
    # b gamma(h) = gamma(h) b in A (x)_B A
    B = cert.coinvariants
    diffs = []
    for beta in B.basis:
        left_b = F.einsum("hab,ax->hxb", G, A.left_matrix(beta))
        right_b = F.einsum("hab,by->hay", G, A.right_matrix(beta))
        diffs.append(cert.project(F.sub_arrays(left_b, right_b)))
    d = np.stack(diffs, axis=1) if diffs else F.zeros((m, 0, 1))
    rep.add(GAMMA_IDENTITIES[1], F, d, F.zeros(F.shape(d)), [LH, B.algebra.labels])
    # gamma(h_1) (x) h_2 = l_i (x) r_i[0] (x) r_i[1]
    lhs = F.einsum("hxk,xab->hkab", D, G)
    rhs = F.einsum("hac,cbk->hkab", G, R)
    rep.add(GAMMA_IDENTITIES[2], F, cert.project(F.sub_arrays(lhs, rhs)),
            F.zeros((m, m, cert.quotient.dim)), [LH, LH])
    # gamma(h_2) (x) S(h_1) = l_i[0] (x) r_i (x) l_i[1]
    P = F.einsum("hxy,yab->hxab", D, G)
    lhs = F.einsum("hxab,xk->hkab", P, S)
    rhs = F.einsum("hcb,cak->hkab", G, R)
    rep.add(GAMMA_IDENTITIES[3], F, cert.project(F.sub_arrays(lhs, rhs)),
            F.zeros((m, m, cert.quotient.dim)), [LH, LH])
    # l_i r_i = eps(h) 1
    lhs = F.einsum("hab,abx->hx", G, T)
    rep.add(GAMMA_IDENTITIES[4], F, lhs, F.einsum("h,x->hx", H.counit, A.unit), [LH])
    # a_[0] l_i(a_[1]) (x) r_i(a_[1]) = 1 (x) a
    P = F.einsum("axk,kcb->axcb", R, G)
    lhs = F.einsum("axcb,xcy->ayb", P, T)
    rhs = F.einsum("y,ab->ayb", A.unit, F.eye(n))
    rep.add(GAMMA_IDENTITIES[5], F, cert.project(F.sub_arrays(lhs, rhs)),
            F.zeros((n, cert.quotient.dim)), [L])
    # gamma(h h') = l_i(h') l_j(h) (x) r_j(h) r_i(h')
    lhs = F.einsum("hgk,kab->hgab", H.mult, G)
    X = F.einsum("gpb,pqa->gqab", G, T)               # [h', a2, a, b1]
    Y = F.einsum("gqab,hqc->gahbc", X, G)             # [h', a, h, b1, b2]
    rhs = F.einsum("gahbc,cbz->hgaz", Y, T)
    rep.add(GAMMA_IDENTITIES[6], F, cert.project(F.sub_arrays(lhs, rhs)),
            F.zeros((m, m, cert.quotient.dim)), [LH, LH])
    return rep


# --- Miyashita-Ulbrich action ---------------------------------------------------

class MuActionData:
    """``h . x`` on the center of B; ``act[h]`` is the table of ``x -> h . x``."""

    def __init__(self, cert, center_space, center_algebra, act, report):
        self.cert = cert
        self.center_space = center_space      # Z(B) inside A
        self.center_algebra = center_algebra
        self.act = act
        self.report = report

    @property
    def is_trivial(self) -> bool:
        F = self.cert.field
        triv = F.einsum("h,xy->hxy", self.cert.hopf.counit, F.eye(self.center_algebra.dim))
        return F.equal(self.act, triv)


def center_in_A(cert: GaloisCertificate):
    """Z(B) as a Subspace of A together with its algebra structure."""
    F = cert.field
    B = cert.coinvariants
    Zb, ZB = center(B.algebra)
    Z_in_A = Subspace.span(F, cert.A.dim, B.space.from_coordinates(Zb.basis)) if Zb.dim else \
        Subspace.zero(F, cert.A.dim)
    # recompute the algebra on the canonical basis of the subspace of A
    ZA = subalgebra(cert.A.algebra, Z_in_A, name=f"Z({B.algebra.name})")
    return Z_in_A, ZA


def bullet_table(cert: GaloisCertificate, Zspace: Subspace):
    """``x . h = sum l_i(h) x r_i(h)`` for x in Z(B), in Z coordinates: ``[h, x, y]``."""
    F, A, G = cert.field, cert.A, cert.gamma
    T = A.mult
    z = Zspace.basis
    Lz = F.einsum("axy,jx->ajy", T, z)                 # e_a z_j
    P = F.einsum("hab,ajy->hbjy", G, Lz)
    out = F.einsum("hbjy,ybo->hjo", P, T)              # [h, j, o] in A
    m, k = cert.hopf.dim, Zspace.dim
    flat = out.reshape((m * k, A.dim) + out.shape[3:])
    if not Zspace.contains_all(flat):
        raise AxiomFailure("the translation action leaves the center of B")
    return Zspace.coordinates(out)


def mu_action(cert: GaloisCertificate) -> MuActionData:
    F, H = cert.field, cert.hopf
    Z, ZA = center_in_A(cert)
    bul = bullet_table(cert, Z)
    act = F.einsum("hk,kxy->hxy", H.antipode_inverse, bul)
    rep = check_module_algebra_action(H, ZA, act)
    rep.results.extend(commutation_report(cert, Z, act).results)
    return MuActionData(cert, Z, ZA, act, rep)


def check_module_algebra_action(H: HopfAlgebraData, Z: AlgebraData, act) -> AxiomReport:
    """Module and measuring axioms for ``act[h, x, y]`` (x -> h.x)."""
    F = H.field
    k = Z.dim
    LH, LZ = H.labels, Z.labels
    rep = AxiomReport()
    one_act = F.einsum("h,hxy->xy", H.unit, act)
    rep.add("unit acts trivially", F, one_act, F.eye(k), [LZ])
    lhs = F.einsum("hgo,oxy->hgxy", H.mult, act)
    rhs = F.einsum("gxp,hpy->hgxy", act, act)          # h.(g.x)
    rep.add("action is associative", F, lhs, rhs, [LH, LH, LZ])
    lhs = F.einsum("xyp,hpo->hxyo", Z.mult, act)
    P = F.einsum("hab,axp->hbxp", H.comult, act)
    Q = F.einsum("hbxp,byq->hxypq", P, act)
    rhs = F.einsum("hxypq,pqo->hxyo", Q, Z.mult)
    rep.add("measuring", F, lhs, rhs, [LH, LZ, LZ])
    rep.add("unit is preserved", F, F.einsum("x,hxy->hy", Z.unit, act),
            F.einsum("h,y->hy", H.counit, Z.unit), [LH])
    return rep


def commutation_report(cert: GaloisCertificate, Z: Subspace, act) -> AxiomReport:
    """``xa = a_[0](S(a_[1]).x)`` and ``ax = (a_[1].x)a_[0]`` on basis a, x."""
    F, A, H = cert.field, cert.A, cert.hopf
    T, R, S = A.mult, A.coaction, H.antipode
    z = Z.basis
    rep = AxiomReport()
    xa = F.einsum("jp,pao->jao", z, T)
    ax = F.einsum("jp,apo->jao", z, T)
    actA = F.einsum("hjp,pv->hjv", act, z)              # h.x_j as an element of A
    RS = F.einsum("abk,kl->abl", R, S)
    P = F.einsum("abl,ljv->ajbv", RS, actA)
    rhs1 = F.einsum("ajbv,bvo->jao", P, T)
    zl = [f"z{i}" for i in range(Z.dim)]
    rep.add("commutation (left)", F, xa, rhs1, [zl, A.labels])
    P = F.einsum("abk,kjv->ajbv", R, actA)
    rhs2 = F.einsum("ajbv,vbo->jao", P, T)
    rep.add("commutation (right)", F, ax, rhs2, [zl, A.labels])
    return rep


# --- cotensor products, opposites, the square envelope ---------------------------

def _require_cocommutative(H, what):
    if not is_cocommutative(H):
        raise AxiomFailure(f"{what} needs a cocommutative Hopf algebra")


def cotensor(M: ComoduleAlgebraData, N: ComoduleAlgebraData, name=None) -> "Cotensor":
    """``M box_H N`` inside ``M (x) N``, with coaction through the first factor.

    ``N`` is given by a right coaction; over a cocommutative H it is read as
    the left coaction ``n -> n_[1] (x) n_[0]``.
    """
    H = M.hopf
    _require_cocommutative(H, "the cotensor product")
    F = M.field
    if N.hopf is not H and not F.equal(N.hopf.mult, H.mult):
        raise DimensionMismatch("cotensor factors are comodules over different Hopf algebras")
    p, q, m = M.dim, N.dim, H.dim
    eyeM, eyeN = F.eye(p), F.eye(q)
    cond = F.sub_arrays(F.einsum("axh,by->abxyh", M.coaction, eyeN),
                        F.einsum("ax,byh->abxyh", eyeM, N.coaction))
    C = linalg.tr(cond.reshape((p * q, p * q * m) + cond.shape[5:]))
    V = linalg.kernel_subspace(F, C)
    big = tensor_algebra(M.algebra, N.algebra)
    alg = subalgebra(big, V, name=name or f"{M.name}[]{N.name}")
    rho = F.einsum("vab,axh->vxbh", V.basis.reshape((V.dim, p, q) + V.basis.shape[2:]), M.coaction)
    rho = rho.reshape((V.dim, p * q, m) + rho.shape[4:])
    flat = np.moveaxis(rho, 2, 1).reshape((V.dim * m, p * q) + rho.shape[3:])
    if V.dim and not V.contains_all(flat):
        raise AxiomFailure("cotensor coaction leaves the cotensor product")
    Rv = rho[:, V.pivots].copy()
    out = ComoduleAlgebraData(alg, H, Rv, name=alg.name)
    rep = out.check()
    rep.raise_on_failure("cotensor product")
    return Cotensor(out, V, M, N)


@dataclass
class Cotensor:
    comodule: ComoduleAlgebraData
    space: Subspace          # inside M (x) N
    left: ComoduleAlgebraData
    right: ComoduleAlgebraData

    @property
    def dim(self):
        return self.space.dim


def opposite(A: ComoduleAlgebraData) -> ComoduleAlgebraData:
    """Opposite algebra with coaction ``a_[0] (x) S(a_[1])``."""
    _require_cocommutative(A.hopf, "the opposite comodule algebra")
    F = A.field
    R = F.einsum("axh,hk->axk", A.coaction, A.hopf.antipode)
    op = ComoduleAlgebraData(opposite_algebra(A.algebra), A.hopf, R, name=f"{A.name}^op")
    op.check().raise_on_failure("opposite comodule algebra")
    return op


@dataclass
class SquareEnvelope:
    cotensor: Cotensor
    certificate: GaloisCertificate | None
    base_cert: GaloisCertificate
    cross_check: bool | None

    @property
    def comodule(self):
        return self.cotensor.comodule

    @property
    def dim(self):
        return self.cotensor.dim


# the balanced relations live in (n^2)^2 coordinates and are built as an (n^2)^4 array
ENVELOPE_CHECK_LIMIT = 4096


def square_envelope(cert: GaloisCertificate, certify=True, cross_check=True) -> SquareEnvelope:
    """``A box_H A^op``; optionally certify it and compare its gamma with the product formula."""
    A = cert.A
    ct = cotensor(A, opposite(A), name=f"{A.name}^e")
    env_cert = None
    agree = None
    if certify:
        env_cert = galois_check(ct.comodule)
        if cross_check:
            agree = envelope_gamma_agrees(cert, ct, env_cert)
    return SquareEnvelope(ct, env_cert, cert, agree)


def envelope_gamma_formula(cert: GaloisCertificate):
    """``sum (l_i(h1) (x) r_j(h2)) (x) (r_i(h1) (x) l_j(h2))`` as ``[h, a, b, c, d]``."""
    F, H, G = cert.field, cert.hopf, cert.gamma
    P = F.einsum("hxy,xac->hyac", H.comult, G)          # l_i(h1)=a, r_i(h1)=c
    X = F.einsum("hyac,ydb->habcd", P, G)               # l_j(h2)=d, r_j(h2)=b
    return X


def envelope_gamma_agrees(cert: GaloisCertificate, ct: Cotensor, env_cert: GaloisCertificate) -> bool:
    """Compare the envelope's certified gamma with the product formula.

    Both are pushed into ``(A (x) A) (x) (A (x) A)`` modulo the balanced
    relations over ``B (x) B^op``; when B is the ground field that is an
    exact comparison inside ``E (x) E``.  Returns None (undecided) when the
    relation space would exceed ``ENVELOPE_CHECK_LIMIT`` coordinates.
    """
    F = cert.field
    n = cert.A.dim
    m = cert.hopf.dim
    X = envelope_gamma_formula(cert).reshape((m, n * n, n * n) + ((F.d,) if F.d > 1 else ()))
    Vb = ct.space.basis                                  # [e, (a,b)]
    Ge = env_cert.gamma                                  # [h, e, f]
    Y = F.einsum("hef,fq->heq", Ge, Vb)
    Y = F.einsum("heq,ep->hpq", Y, Vb)
    diff = F.sub_arrays(X, Y)
    if cert.coinvariants.dim == 1:
        return F.is_zero_array(diff)
    if (n * n) ** 2 > ENVELOPE_CHECK_LIMIT:
        return None
    big = tensor_algebra(cert.A.algebra, opposite_algebra(cert.A.algebra))
    Benv = env_cert.coinvariants
    Bspace = Subspace.span(F, n * n, linalg.matmul(F, Benv.basis, Vb))
    Bbig = Coinvariants(Bspace, subalgebra(big, Bspace))
    rel = balanced_relations(big, Bbig)
    flat = diff.reshape((m, (n * n) ** 2) + diff.shape[3:])
    return rel.contains_all(flat)


# --- dualized actions and morphism spaces -----------------------------------------

def dualize_action(A: AlgebraData, H: HopfAlgebraData, act, dual=None, name="") -> ComoduleAlgebraData:
    """Left H-module algebra ``act[h, a, b]`` (h.e_a) as a right H*-comodule algebra.

    The coaction is ``rho(a) = sum_i (e_i . a) (x) e^i``.
    """
    F = A.field
    if F.shape(act) != (H.dim, A.dim, A.dim):
        raise DimensionMismatch("action table has the wrong shape")
    rep = check_module_algebra_action(H, A, act)
    rep.raise_on_failure("module algebra")
    Hd = dual if dual is not None else dual_hopf(H)
    R = np.moveaxis(act, 0, 2).copy()
    out = ComoduleAlgebraData(A, Hd, R, name=name or A.name)
    out.check().raise_on_failure("dualized comodule algebra")
    return out


def action_from_coaction(A: ComoduleAlgebraData):
    """Inverse of :func:`dualize_action`: ``act[i, a, b]`` with i indexing the dual of A.hopf."""
    return np.moveaxis(A.coaction, 2, 0).copy()


def morphism_space(A: ComoduleAlgebraData, i: int, j: int, B: Coinvariants = None) -> Subspace:
    """The linear maps ``H -> A`` of the given kind, as tables ``t[h, a]`` flattened.

    (1,1): maps into B.  (1,2): colinear, ``rho(t(h)) = t(h1) (x) h2``.
    (2,1): ``rho(u(h)) = u(h2) (x) S(h1)``.  (2,2): ``rho(w(h)) = w(h2) (x) S(h1) h3``.
    """
    F, H = A.field, A.hopf
    n, m = A.dim, H.dim
    if (i, j) not in {(1, 1), (1, 2), (2, 1), (2, 2)}:
        raise HopfGaloisError(f"objects are 1 and 2; got ({i}, {j})")
    if (i, j) == (1, 1):
        B = B or coinvariants(A)
        if B.dim == 0:
            return Subspace.zero(F, m * n)
        rows = F.einsum("hg,bx->bhgx", F.eye(m), B.basis).reshape((B.dim * m, m * n) + B.basis.shape[2:])
        return Subspace.span(F, m * n, rows)
    # linear constraint K[(g, a), (h, x, k)]: coefficient of t[g, a] in the defect at (h, x, k)
    eyeH, eyeA = F.eye(m), F.eye(n)
    left = F.einsum("hg,axk->gahxk", eyeH, A.coaction)     # rho(t(h))
    if (i, j) == (1, 2):
        right = F.einsum("hgk,ax->gahxk", H.comult, eyeA)
    elif (i, j) == (2, 1):
        P = F.einsum("hlg,lk->hgk", H.comult, H.antipode)  # h1=l, h2=g
        right = F.einsum("hgk,ax->gahxk", P, eyeA)
    else:
        D2 = F.einsum("hpc,pld->hldc", H.comult, H.comult)  # [h, h1, h2, h3]
        SH = F.einsum("lx,xck->lck", H.antipode, H.mult)    # S(h1) h3
        P = F.einsum("hlgc,lck->hgk", D2, SH)
        right = F.einsum("hgk,ax->gahxk", P, eyeA)
    K = F.sub_arrays(left, right)
    M = linalg.tr(K.reshape((m * n, m * n * m) + K.shape[5:]))
    return linalg.kernel_subspace(F, M)


def tables_of(space: Subspace, m: int, n: int):
    """Basis of a morphism space reshaped to tables ``[k, h, a]``."""
    return space.basis.reshape((space.dim, m, n) + space.basis.shape[2:])
