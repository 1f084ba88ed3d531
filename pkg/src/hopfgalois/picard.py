"""Invertible modules: Picard groups of Galois objects, twisted modules and their tensor products.

Modules are stored as families of operator tables ``act[a, x, y]`` (the
matrix of ``v -> a.v``, or ``v -> v.a`` for right actions, acting on row
vectors), keyed by the name of the acting structure:

* ``"left"`` / ``"right"``: the algebra A itself (relative Hopf bimodules),
* ``"envelope"``: the square envelope ``A box_H A^op`` acting on the left,
* ``"B-left"`` / ``"B-right"``: the coinvariant subalgebra B.

A module may carry a right H-coaction ``coaction[v, w, h]``.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import linalg
from .algebra import (DEFAULT_CAP, AlgebraData, AxiomReport, base_algebra, center, characters,
                      format_vector, greedy_generators, is_algebra_map, is_cocommutative, table_key)
from .catalog import builtin_artin_schreier, builtin_tensor_extension, builtin_trig  # noqa: F401
from .cohomology import OneCochain, Verdict, is_one_cocycle
from .errors import AxiomFailure, CapExceeded, DimensionMismatch, HopfGaloisError
from .galois import (ComoduleAlgebraData, GaloisCertificate, SquareEnvelope, galois_check, mu_action,
                     square_envelope)
from .linalg import Subspace

QQ_PROBES = 64
TENSOR_LIMIT = 4096


class ModuleAction:
    """``table[a, x, y]``: the operator of the basis element ``a`` of ``algebra``."""

    def __init__(self, algebra: AlgebraData, table, side="left"):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        self.algebra = algebra
        self.table = table
        self.side = side

    def of(self, x):
        """Operator of an arbitrary element ``x`` of the acting algebra."""
        return self.algebra.field.einsum("a,axy->xy", x, self.table)


class TwistedModule:
    def __init__(self, field, dim, actions: dict, coaction=None, labels=None, provenance=None, name="",
                 derived=()):
        self.field = field
        # actions obtained by restriction from another one; they are not checked separately
        self.derived = frozenset(derived)
        self.dim = dim
        self.actions = dict(actions)
        self.coaction = coaction
        self.labels = list(labels) if labels is not None else [f"v{i}" for i in range(dim)]
        self.provenance = provenance
        self.name = name
        for key, act in self.actions.items():
            if field.shape(act.table) != (act.algebra.dim, dim, dim):
                raise DimensionMismatch(f"operator table {key!r} has the wrong shape")

    def check(self, hopf=None, comodules=None) -> AxiomReport:
        """Module axioms for every action, commutation of distinct actions and,
        with a coaction, comodule axioms and colinearity of the actions that
        come from a comodule algebra in ``comodules`` (a dict key -> coaction)."""
        F = self.field
        rep = AxiomReport()
        L = self.labels
        primary = {k: a for k, a in self.actions.items() if k not in self.derived}
        for key, act in primary.items():
            A, X = act.algebra, act.table
            rep.add(f"{key}: unit acts as identity", F, act.of(A.unit), F.eye(self.dim), [L])
            lhs = F.einsum("abk,kxy->abxy", A.mult, X)
            if act.side == "left":
                rhs = F.einsum("bxp,apy->abxy", X, X)
            else:
                rhs = F.einsum("axp,bpy->abxy", X, X)
            rep.add(f"{key}: associativity", F, lhs, rhs, [A.labels, A.labels, L])
        for (k1, a1), (k2, a2) in itertools.combinations(primary.items(), 2):
            if a1.side == a2.side:
                continue
            lhs = F.einsum("axp,bpy->abxy", a1.table, a2.table)
            rhs = F.einsum("bxp,apy->abxy", a2.table, a1.table)
            rep.add(f"{k1} and {k2} commute", F, lhs, rhs, [a1.algebra.labels, a2.algebra.labels, L])
        if self.coaction is not None and hopf is not None:
            R = self.coaction
            left = F.einsum("vwh,wxg->vxgh", R, R)
            right = F.einsum("vwk,kgh->vwgh", R, hopf.comult)
            rep.add("coassociativity", F, left, right, [L])
            rep.add("counit", F, F.einsum("vwh,h->vw", R, hopf.counit), F.eye(self.dim), [L])
            for key, RA in (comodules or {}).items():
                act = self.actions[key]
                lhs = F.einsum("avy,ywh->avwh", act.table, R)
                if act.side == "left":
                    X1 = F.einsum("abg,bwz->agwz", RA, act.table)           # a0 acting: [a, h1, w0, w]
                    X2 = F.einsum("vwk,agwz->avgkz", R, X1)                  # [a, v, h1, h2, w]
                    rhs = F.einsum("avgkz,gkh->avzh", X2, hopf.mult)
                else:
                    X1 = F.einsum("abg,bwz->agwz", RA, act.table)
                    X2 = F.einsum("vwk,agwz->avkgz", R, X1)                  # [a, v, h1(v), h2(a), w]
                    rhs = F.einsum("avkgz,kgh->avzh", X2, hopf.mult)
                rep.add(f"{key} action is colinear", F, lhs, rhs, [act.algebra.labels, L])
        return rep

    def operator(self, key, x):
        return self.actions[key].of(x)

    def __repr__(self):
        return f"<TwistedModule {self.name} dim={self.dim} actions={sorted(self.actions)}>"


# --- intertwiners ------------------------------------------------------------------

def intertwiner_space(M: TwistedModule, N: TwistedModule, keys=None) -> Subspace:
    """Linear maps ``f: M -> N`` (tables ``[v, y]``, flattened) commuting with the
    shared actions and, when both carry one, with the coactions."""
    F = M.field
    F.check_same(N.field)
    p, q = M.dim, N.dim
    keys = sorted(set(M.actions) & set(N.actions)) if keys is None else keys
    I_p, I_q = F.eye(p), F.eye(q)
    blocks = []
    for key in keys:
        A1, A2 = M.actions[key], N.actions[key]
        if A1.algebra.dim != A2.algebra.dim or A1.side != A2.side:
            raise DimensionMismatch(f"modules act through different structures on {key!r}")
        C = F.sub_arrays(F.einsum("avw,yz->avzwy", A1.table, I_q), F.einsum("vw,ayz->avzwy", I_p, A2.table))
        blocks.append(C.reshape((A1.algebra.dim * p * q, p * q) + C.shape[5:]))
    if M.coaction is not None and N.coaction is not None:
        m = F.shape(M.coaction)[2]
        C = F.sub_arrays(F.einsum("vw,yzh->vzhwy", I_p, N.coaction),
                         F.einsum("vwh,yz->vzhwy", M.coaction, I_q))
        blocks.append(C.reshape((p * q * m, p * q) + C.shape[5:]))
    if not blocks:
        return Subspace.full(F, p * q)
    return linalg.kernel_subspace(F, np.concatenate(blocks))


def _invertible(F, X) -> bool:
    n = F.shape(X)[0]
    return linalg.rank(F, X) == n


def modules_isomorphic(M: TwistedModule, N: TwistedModule, cap=DEFAULT_CAP, seed=0) -> Verdict:
    """Search the intertwiner space for an invertible element.

    The verdict value is True (witness = the intertwiner), False (definitive)
    or None when the search was inconclusive.
    """
    F = M.field
    if M.dim != N.dim:
        return Verdict(False, note="dimensions differ")
    n = M.dim
    V = intertwiner_space(M, N)
    k = V.dim
    if k == 0:
        return Verdict(False, note="no nonzero intertwiner")
    mats = V.basis.reshape((k, n, n) + V.basis.shape[2:])

    def combo(coefs):
        return F.einsum("i,ixy->xy", F.array(coefs), mats)

    if F.is_finite:
        total = F.order ** k
        if total > cap:
            rng = np.random.default_rng(seed)
            for _ in range(min(cap, 4096)):
                X = combo([F.random(rng) for _ in range(k)])
                if _invertible(F, X):
                    return Verdict(True, X)
            return Verdict(None, note=f"{total} intertwiners exceed the cap {cap}")
        for codes in itertools.product(range(F.order), repeat=k):
            if not any(codes):
                continue
            X = combo([F.from_code(c) for c in codes])
            if _invertible(F, X):
                return Verdict(True, X)
        return Verdict(False, note=f"all {total - 1} nonzero intertwiners are singular")
    one, zero = F.one, F.zero
    for i in range(k):
        X = mats[i]
        if _invertible(F, X):
            return Verdict(True, X)
    if k == 1:
        return Verdict(False, note="the intertwiner space is spanned by a singular map")
    rng = np.random.default_rng(seed)
    for _ in range(QQ_PROBES):
        X = combo([F.random(rng, 3) for _ in range(k)])
        if _invertible(F, X):
            return Verdict(True, X)
    if k == 2:
        # det(c0 X0 + c1 X1) has degree <= n in each variable; vanishing on an
        # (n+1) x (n+1) grid forces it to vanish identically
        for c0, c1 in itertools.product(range(n + 1), repeat=2):
            X = combo([F.from_int(c0), F.from_int(c1)])
            if _invertible(F, X):
                return Verdict(True, X)
        return Verdict(False, note="the determinant vanishes identically on the intertwiner space")
    return Verdict(None, note=f"intertwiner space of dimension {k} over Q not searched exhaustively")


# --- tensor products over a subalgebra -----------------------------------------------

def tensor_over(M: TwistedModule, N: TwistedModule, right_key, left_key, keep_left=(), keep_right=(),
                hopf=None, name="") -> TwistedModule:
    """``M (x)_C N`` for C acting on M by ``right_key`` and on N by ``left_key``.

    Actions named in ``keep_left`` are carried over from M and those in
    ``keep_right`` from N.  With ``hopf`` given and both coactions present, the
    diagonal coaction ``v_[0] (x) w_[0] (x) v_[1] w_[1]`` is induced.
    """
    F = M.field
    R, L = M.actions[right_key], N.actions[left_key]
    if R.algebra.dim != L.algebra.dim:
        raise DimensionMismatch("tensor factors are modules over different algebras")
    p, q = M.dim, N.dim
    I_p, I_q = F.eye(p), F.eye(q)
    rows = []
    for g in greedy_generators(R.algebra) or [R.algebra.unit]:
        X = F.sub_arrays(F.einsum("vx,wy->vwxy", R.of(g), I_q), F.einsum("vx,wy->vwxy", I_p, L.of(g)))
        rows.append(X.reshape((p * q, p * q) + X.shape[4:]))
    rel = Subspace.span(F, p * q, np.concatenate(rows))
    Q = linalg.quotient(F, rel)
    d = Q.dim

    def induce(big):
        # big: [a, (v,w), (x,y)] operators on M (x) N
        X = F.einsum("ci,aij->acj", Q.sect, big)
        return F.einsum("acj,jd->acd", X, Q.proj)

    actions = {}
    for key in keep_left:
        act = M.actions[key]
        big = F.einsum("avx,wy->avwxy", act.table, I_q).reshape((act.algebra.dim, p * q, p * q) +
                                                                   act.table.shape[3:])
        actions[key] = ModuleAction(act.algebra, induce(big), act.side)
    for key in keep_right:
        act = N.actions[key]
        big = F.einsum("vx,awy->avwxy", I_p, act.table).reshape((act.algebra.dim, p * q, p * q) +
                                                                   act.table.shape[3:])
        actions[key] = ModuleAction(act.algebra, induce(big), act.side)
    coaction = None
    if hopf is not None and M.coaction is not None and N.coaction is not None:
        X = F.einsum("vxg,wyk->vwxygk", M.coaction, N.coaction)
        X = X.reshape((p * q, p * q, hopf.dim, hopf.dim) + X.shape[6:])
        big = F.einsum("ijgk,gkh->hij", X, hopf.mult)
        coaction = np.moveaxis(induce(big), 0, 2).copy()
    labels = [f"[{M.labels[c // q]}*{N.labels[c % q]}]" for c in Q.complement]
    return TwistedModule(F, d, actions, coaction, labels, provenance=(M, N), name=name)


# --- Picard groups of Galois objects --------------------------------------------------

class PicardGroupData:
    """Characters of H under convolution, indexed in lexicographic order."""

    def __init__(self, hopf, elements, table, identity, inverse, A=None):
        self.hopf = hopf
        self.elements = elements
        self.table = table
        self.identity = identity
        self.inverse = inverse
        self.A = A

    @property
    def order(self):
        return len(self.elements)

    def describe(self, i) -> str:
        H = self.hopf
        F = H.field
        return "; ".join(f"{lab} -> {F.format(F.get(self.elements[i], j))}" for j, lab in enumerate(H.labels))

    def check(self) -> AxiomReport:
        rep = AxiomReport()
        n, t = self.order, self.table
        bad = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                    if t[t[a][b]][c] != t[a][t[b][c]]), None)
        rep.add_result("associativity", bad is None, bad)
        bad = next((a for a in range(n) if t[self.identity][a] != a or t[a][self.identity] != a), None)
        rep.add_result("identity", bad is None, bad)
        bad = next((a for a in range(n) if t[a][self.inverse[a]] != self.identity
                    or t[self.inverse[a]][a] != self.identity), None)
        rep.add_result("inverses", bad is None, bad)
        return rep


def convolve_characters(H, alpha, beta):
    F = H.field
    return F.einsum("hb,b->h", F.einsum("hab,a->hb", H.comult, alpha), beta)


def pic_galois_object(A: ComoduleAlgebraData, cert: GaloisCertificate = None, cap=DEFAULT_CAP) -> PicardGroupData:
    """The H-Picard group of a Galois object over a cocommutative H, realised as
    the characters of H with convolution."""
    cert = cert or galois_check(A)
    if not cert.is_galois_object:
        raise HopfGaloisError("the Picard group is computed for Galois objects only (coinvariants = k)")
    H = A.hopf
    if not is_cocommutative(H):
        raise HopfGaloisError("Picard groups need a cocommutative Hopf algebra; "
                              "pass a commutative Hopf algebra through its dual instead")
    F = H.field
    chars = characters(H, cap)
    index = {table_key(F, c): i for i, c in enumerate(chars)}
    n = len(chars)
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            key = table_key(F, convolve_characters(H, chars[a], chars[b]))
            if key not in index:
                raise AxiomFailure("characters are not closed under convolution")
            row.append(index[key])
        table.append(row)
    identity = index[table_key(F, H.counit)]
    inverse = [index[table_key(F, linalg.matmul(F, H.antipode, c[:, None])[:, 0])] for c in chars]
    pic = PicardGroupData(H, chars, table, identity, inverse, A)
    pic.check().raise_on_failure("Picard group")
    return pic


# --- modules twisted by a character -----------------------------------------------------

def twist_module(A: ComoduleAlgebraData, alpha, check=True) -> TwistedModule:
    """``A`` as a relative Hopf bimodule with right action ``p.a = p a_[0] alpha(a_[1])``."""
    F, H = A.field, A.hopf
    if not is_algebra_map(H, base_algebra(F), alpha[:, None]):
        raise AxiomFailure("alpha is not a character of H")
    T, R = A.mult, A.coaction
    W = F.einsum("azh,h->az", R, alpha)
    right = F.einsum("az,xzy->axy", W, T)
    mod = TwistedModule(F, A.dim, {"left": ModuleAction(A.algebra, T.copy(), "left"),
                                   "right": ModuleAction(A.algebra, right, "right")},
                        coaction=R.copy(), labels=A.labels, provenance=alpha, name=f"P({A.name})")
    if check:
        mod.check(H, {"left": R, "right": R}).raise_on_failure("twisted bimodule")
    return mod


def twist_tensor(P: TwistedModule, Q: TwistedModule, hopf) -> TwistedModule:
    """``P (x)_A Q`` for relative Hopf bimodules."""
    return tensor_over(P, Q, "right", "left", keep_left=("left",), keep_right=("right",), hopf=hopf,
                       name=f"{P.name}*{Q.name}")


def twist_inverse_witness(A: ComoduleAlgebraData, alpha):
    """Intertwiner ``P_alpha (x)_A P_(alpha o S) -> A``, proving invertibility."""
    F, H = A.field, A.hopf
    P = twist_module(A, alpha)
    Pinv = twist_module(A, linalg.matmul(F, H.antipode, alpha[:, None])[:, 0])
    reg = twist_module(A, H.counit)
    return modules_isomorphic(twist_tensor(P, Pinv, H), reg)


def twist_action_lines(A: ComoduleAlgebraData, P: TwistedModule):
    """``label -> 1.label`` for each generator of A (right action on the unit)."""
    F = A.field
    lines = []
    gens = A.algebra.gens if A.algebra.gens else greedy_generators(A.algebra)
    for g in gens:
        image = linalg.vecmat(F, A.unit, P.operator("right", g))
        lines.append(f"{A.format(g)} -> {A.format(image)}")
    return lines


# --- modules over the square envelope ------------------------------------------------------

def envelope_coordinates(env: SquareEnvelope, X):
    """Coordinates in the envelope of elements of ``A (x) A`` given as ``[..., a, b]``."""
    F = env.comodule.field
    V = env.cotensor.space
    lead = F.shape(X)[:-2]
    flat = X.reshape((-1, V.ambient) + X.shape[len(F.shape(X)):])
    if not V.contains_all(flat):
        raise AxiomFailure("element does not lie in the square envelope")
    return V.coordinates(flat).reshape(lead + (V.dim,) + X.shape[len(F.shape(X)):])


def _b_actions(cert, env, module_table):
    """``B-left`` / ``B-right`` operators derived from an envelope action."""
    F = cert.field
    Bb = cert.coinvariants.basis
    one = cert.A.unit
    left = envelope_coordinates(env, F.einsum("ja,b->jab", Bb, one))
    right = envelope_coordinates(env, F.einsum("a,jb->jab", one, Bb))
    Bl = F.einsum("je,exy->jxy", left, module_table)
    Br = F.einsum("je,exy->jxy", right, module_table)
    B = cert.B
    return {"B-left": ModuleAction(B, Bl, "left"), "B-right": ModuleAction(B, Br, "right")}


def envelope_module(cert, env, table, provenance=None, name="", labels=None) -> TwistedModule:
    E = env.comodule.algebra
    actions = {"envelope": ModuleAction(E, table, "left")}
    actions.update(_b_actions(cert, env, table))
    d = cert.field.shape(table)[1]
    return TwistedModule(cert.field, d, actions, labels=labels, provenance=provenance, name=name,
                         derived=("B-left", "B-right"))


def g1_twist(cert: GaloisCertificate, alpha, env: SquareEnvelope = None, mu=None, check=True) -> TwistedModule:
    """B with the envelope acting by ``(sum a (x) a').b = a_[0] alpha(S(a_[1])) b a'``.

    ``alpha`` is a table ``[h, z]`` in the basis of the center of B (as
    returned by :func:`mu_action`); it must be a 1-cocycle for that action.
    """
    F, A, H = cert.field, cert.A, cert.hopf
    mu = mu or mu_action(cert)
    env = env or square_envelope(cert, certify=False)
    v = OneCochain(H, mu.center_algebra, alpha)
    ok = is_one_cocycle(v, mu.act)
    if not ok:
        raise AxiomFailure("alpha is not a 1-cocycle for the Miyashita-Ulbrich action", ok.witness)
    T, R = A.mult, A.coaction
    n = A.dim
    alphaA = F.einsum("hz,za->ha", alpha, mu.center_space.basis)
    aS = F.einsum("hg,ga->ha", H.antipode, alphaA)                  # alpha(S(h)) in A
    Y = F.einsum("azh,hw->azw", R, aS)
    Z = F.einsum("azw,zwp->ap", Y, T)                               # a_[0] alpha(S(a_[1]))
    Bb = cert.coinvariants.basis
    M1 = F.einsum("jy,pyo->jpo", Bb, T)                             # (e_p b_j)
    M2 = F.einsum("ap,jpo->ajo", Z, M1)
    M3 = F.einsum("ajo,ocq->ajcq", M2, T)                           # times a'
    V = env.cotensor.space.basis.reshape((env.dim, n, n) + Bb.shape[2:])
    out = F.einsum("eac,ajcq->ejq", V, M3)
    table = _to_b_coords(cert, out)
    labels = cert.B.labels
    mod = envelope_module(cert, env, table, provenance=alpha, name="g1", labels=labels)
    if check:
        mod.check().raise_on_failure("envelope module")
    return mod


def _to_b_coords(cert, X):
    F = cert.field
    S = cert.coinvariants.space
    flat = X.reshape((-1, S.ambient) + X.shape[len(F.shape(X)):])
    if not S.contains_all(flat):
        raise AxiomFailure("envelope action leaves B")
    return S.coordinates(X)


def standard_module(cert, env=None) -> TwistedModule:
    """B with ``(sum a (x) a').b = sum a b a'``."""
    mu = mu_action(cert)
    F, H = cert.field, cert.hopf
    triv = F.einsum("h,z->hz", H.counit, mu.center_algebra.unit)
    return g1_twist(cert, triv, env, mu)


def twist_envelope_character(P: TwistedModule, cert: GaloisCertificate, env: SquareEnvelope):
    """For a Galois object: ``e -> sum a.1.a'`` computed from a relative Hopf bimodule,
    as a ``[e, 0, 0]`` operator table on the one-dimensional coinvariants."""
    F, A = cert.field, cert.A
    n = A.dim
    V = env.cotensor.space.basis.reshape((env.dim, n, n) + A.unit.shape[1:])
    L, Rt = P.actions["left"].table, P.actions["right"].table
    X = F.einsum("x,axy->ay", A.unit, L)                            # a.1
    Y = F.einsum("ay,cyz->acz", X, Rt)                              # (a.1).a'
    out = F.einsum("eac,acz->ez", V, Y)
    return _to_b_coords(cert, out)[:, :, None]


# --- the tensor action on M (x)_B N --------------------------------------------------------

def square_action_on_tensor(M: TwistedModule, N: TwistedModule, cert: GaloisCertificate,
                            env: SquareEnvelope) -> TwistedModule:
    """The envelope acting on ``M (x)_B N`` by
    ``(sum a (x) a').(m (x) n) = (a_[0] (x) l_i(a_[1])).m (x) (r_i(a_[1]) (x) a').n``."""
    F, A = cert.field, cert.A
    n = A.dim
    if n ** 4 > TENSOR_LIMIT:
        raise HopfGaloisError(f"the fourfold tensor power of A has dimension {n ** 4}, above {TENSOR_LIMIT}")
    E = env.comodule.algebra
    e = E.dim
    V = env.cotensor.space.basis.reshape((e, n, n) + A.unit.shape[1:])
    P = F.einsum("eac,axh->exhc", V, A.coaction)
    Theta = F.einsum("exhc,hlr->exlrc", P, cert.gamma).reshape((e, n ** 4) + A.unit.shape[1:])
    Vb = env.cotensor.space.basis
    EE = F.einsum("fi,gj->fgij", Vb, Vb).reshape((e * e, n ** 4) + A.unit.shape[1:])
    rows = []
    eye = F.eye(n)
    for g in greedy_generators(cert.B):
        beta = cert.coinvariants.space.from_coordinates(g)
        Rb, Lb = A.right_matrix(beta), A.left_matrix(beta)
        rows.append(_balanced_rows(F, eye, Rb, Lb, n))
    if rows:
        rel = Subspace.span(F, n ** 4, np.concatenate(rows))
        Q = linalg.quotient(F, rel)
        EEp = linalg.matmul(F, EE, Q.proj)
        Thp = linalg.matmul(F, Theta, Q.proj)
    else:
        EEp, Thp = EE, Theta
    coeffs = []
    for i in range(e):
        sol, _ = linalg.solve_system(F, linalg.tr(EEp), Thp[i])
        if sol is None:
            raise AxiomFailure("the tensor action does not decompose through the envelope", E.labels[i])
        coeffs.append(sol)
    C = np.stack(coeffs).reshape((e, e, e) + A.unit.shape[1:])
    p, q = M.dim, N.dim
    XM, XN = M.actions["envelope"].table, N.actions["envelope"].table
    W = F.einsum("efg,fvx->egvx", C, XM)
    big = F.einsum("egvx,gwy->evwxy", W, XN).reshape((e, p * q, p * q) + A.unit.shape[1:])
    # M (x)_B N: (m.b) (x) n = m (x) (b.n)
    Bm, Bn = M.actions["B-right"], N.actions["B-left"]
    I_p, I_q = F.eye(p), F.eye(q)
    rel_rows = []
    for g in greedy_generators(cert.B) or [cert.B.unit]:
        X = F.sub_arrays(F.einsum("vx,wy->vwxy", Bm.of(g), I_q), F.einsum("vx,wy->vwxy", I_p, Bn.of(g)))
        rel_rows.append(X.reshape((p * q, p * q) + X.shape[4:]))
    Q2 = linalg.quotient(F, Subspace.span(F, p * q, np.concatenate(rel_rows)))
    Y = F.einsum("ci,aij->acj", Q2.sect, big)
    table = F.einsum("acj,jd->acd", Y, Q2.proj)
    labels = [f"[{M.labels[c // q]}*{N.labels[c % q]}]" for c in Q2.complement]
    out = envelope_module(cert, env, table, provenance=(M, N), name=f"{M.name}*{N.name}", labels=labels)
    out.check().raise_on_failure("tensor product module")
    return out


def _balanced_rows(F, eye, Rb, Lb, n):
    """Rows ``(x (x) l b) (x) (r (x) y) - (x (x) l) (x) (b r (x) y)`` of the fourfold tensor power."""
    left = F.einsum("lp,rq->lrpq", Rb, eye)
    right = F.einsum("lp,rq->lrpq", eye, Lb)
    mid = F.sub_arrays(left, right)                                # [l, r, p, q]
    X = F.einsum("ax,lrpq->alrxpq", eye, mid)
    X = F.einsum("alrxpq,cy->alrcxpqy", X, eye)
    return X.reshape((n ** 4, n ** 4) + eye.shape[2:])


# --- xi and H-stability -------------------------------------------------------------------

class XiMap:
    """``xi_M`` on the center of B: ``m x = xi(x) m`` for all m."""

    def __init__(self, matrix, center_space, center_algebra, report):
        self.matrix = matrix
        self.center_space = center_space        # Z(B) inside B
        self.center_algebra = center_algebra
        self.report = report

    def __call__(self, x):
        return linalg.vecmat(self.center_algebra.field, x, self.matrix)


def xi(M: TwistedModule, B: AlgebraData, mu=None, cert=None) -> XiMap:
    """Solve ``m x = y m`` for each basis element x of Z(B).

    With a certificate (or a precomputed Miyashita-Ulbrich action ``mu``),
    compatibility with the action on the center is also checked.
    """
    F = B.field
    Z, ZB = center(B)
    Lb, Rb = M.actions["B-left"], M.actions["B-right"]
    d = M.dim
    Lz = F.einsum("zj,jxy->zxy", Z.basis, Lb.table)
    Rz = F.einsum("zj,jxy->zxy", Z.basis, Rb.table)
    coef = linalg.tr(Lz.reshape((Z.dim, d * d) + Lz.shape[3:]))
    rows = []
    for x in range(Z.dim):
        sol, _ = linalg.solve_system(F, coef, Rz[x].reshape((d * d,) + Rz.shape[3:]))
        if sol is None:
            raise AxiomFailure("no central element y with m x = y m", ZB.labels[x])
        rows.append(sol)
    Xi = np.stack(rows) if rows else F.zeros((0, 0))
    rep = AxiomReport()
    rep.add_result("ring map", is_algebra_map(ZB, ZB, Xi))
    rep.add_result("invertible", linalg.rank(F, Xi) == Z.dim)
    if cert is not None or mu is not None:
        mu = mu or mu_action(cert)
        act = _mu_in_center_basis(mu, cert or mu.cert, Z)
        lhs = F.einsum("hxy,yz->hxz", act, Xi)
        rhs = F.einsum("xy,hyz->hxz", Xi, act)
        rep.add("commutes with the Miyashita-Ulbrich action", F, lhs, rhs, [mu.cert.hopf.labels, ZB.labels])
    rep.raise_on_failure("xi")
    return XiMap(Xi, Z, ZB, rep)


def _mu_in_center_basis(mu, cert, Z):
    """The action table of ``mu`` rewritten in the basis ``Z`` of the center (B coordinates)."""
    F = cert.field
    inA = cert.coinvariants.space.from_coordinates(Z.basis)
    C = mu.center_space.coordinates(inA)                            # ours -> mu basis
    Cinv = linalg.inverse(F, C)
    X = F.einsum("xy,hyz->hxz", C, mu.act)
    return F.einsum("hxz,zw->hxw", X, Cinv)


def automorphism_bimodule(B: AlgebraData, right_auto=None, left_auto=None, name="") -> TwistedModule:
    """B with ``b.m.c = left(b) m right(c)`` for algebra automorphisms given as tables."""
    F = B.field
    I = F.eye(B.dim)
    la = I if left_auto is None else left_auto
    ra = I if right_auto is None else right_auto
    for f in (la, ra):
        if not is_algebra_map(B, B, f) or linalg.rank(F, f) != B.dim:
            raise AxiomFailure("twisting map is not an algebra automorphism")
    L = F.einsum("jb,bxy->jxy", la, B.mult)                         # x -> left(b_j) x
    R = F.einsum("jb,xby->jxy", ra, B.mult)                         # x -> x right(b_j)
    return TwistedModule(F, B.dim, {"B-left": ModuleAction(B, L, "left"),
                                    "B-right": ModuleAction(B, R, "right")},
                         labels=B.labels, name=name or "B")


def bimodule_tensor(M: TwistedModule, N: TwistedModule) -> TwistedModule:
    return tensor_over(M, N, "B-right", "B-left", keep_left=("B-left",), keep_right=("B-right",),
                       name=f"{M.name}*{N.name}")


def hstable_check(M: TwistedModule, cert: GaloisCertificate, env: SquareEnvelope = None,
                  cap=DEFAULT_CAP) -> Verdict:
    """Whether ``env (x)_{B^e} M`` and ``M (x) H`` are isomorphic as B-bimodules
    and H-comodules; the witness is an explicit isomorphism."""
    F, H = cert.field, cert.hopf
    env = env or square_envelope(cert, certify=False)
    E = env.comodule
    e, d, m = E.dim, M.dim, H.dim
    Bb = cert.coinvariants.basis
    one = cert.A.unit
    Bl = envelope_coordinates(env, F.einsum("ja,b->jab", Bb, one))     # b (x) 1
    Br = envelope_coordinates(env, F.einsum("a,jb->jab", one, Bb))     # 1 (x) b
    ML, MR = M.actions["B-left"], M.actions["B-right"]
    I_e, I_d, I_m = F.eye(e), F.eye(d), F.eye(m)
    rows = []
    for g in greedy_generators(cert.B) or [cert.B.unit]:
        for side, Bside, act in (("l", Bl, ML), ("r", Br, MR)):
            x = F.einsum("j,je->e", g, Bside)
            RE = E.algebra.right_matrix(x)
            X = F.sub_arrays(F.einsum("ef,my->emfy", RE, I_d), F.einsum("ef,my->emfy", I_e, act.of(g)))
            rows.append(X.reshape((e * d, e * d) + X.shape[4:]))
    Q = linalg.quotient(F, Subspace.span(F, e * d, np.concatenate(rows)))

    def induce(big):
        Y = F.einsum("ci,aij->acj", Q.sect, big)
        return F.einsum("acj,jd->acd", Y, Q.proj)

    B = cert.B
    LE = F.einsum("je,efk->jfk", Bl, E.mult)                          # left multiplication by b (x) 1
    RE = F.einsum("je,efk->jfk", Br, E.mult)                          # left multiplication by 1 (x) b
    bigL = F.einsum("jfk,my->jfmky", LE, I_d).reshape((B.dim, e * d, e * d) + one.shape[1:])
    bigR = F.einsum("jfk,my->jfmky", RE, I_d).reshape((B.dim, e * d, e * d) + one.shape[1:])
    coE = F.einsum("fkh,my->hfmky", E.coaction, I_d).reshape((m, e * d, e * d) + one.shape[1:])
    X = TwistedModule(F, Q.dim, {"B-left": ModuleAction(B, induce(bigL), "left"),
                                 "B-right": ModuleAction(B, induce(bigR), "right")},
                      coaction=np.moveaxis(induce(coE), 0, 2).copy(), name="envelope*M")
    YL = F.einsum("jxy,hk->jxhyk", ML.table, I_m).reshape((B.dim, d * m, d * m) + one.shape[1:])
    YR = F.einsum("jxy,hk->jxhyk", MR.table, I_m).reshape((B.dim, d * m, d * m) + one.shape[1:])
    coY = F.einsum("xy,hkg->xhykg", I_d, H.comult).reshape((d * m, d * m, m) + one.shape[1:])
    Y = TwistedModule(F, d * m, {"B-left": ModuleAction(B, YL, "left"),
                                 "B-right": ModuleAction(B, YR, "right")}, coaction=coY, name="M*H")
    return modules_isomorphic(X, Y, cap)


def format_character(H, alpha) -> str:
    return format_vector(H.field, alpha, H.labels)
