"""Ready-made algebras, Hopf algebras and Galois objects.

* ``artin_schreier_hopf(F)``: H_q = F[x]/(x^q - x), x primitive, S(x) = -x;
* ``artin_schreier_object(H, a)``: S_a = F[y]/(y^q - y - a) with
  rho(y) = y (x) 1 + 1 (x) x;
* ``trig_hopf()``: Q[c, s]/(c^2 + s^2 - 1, sc) with the trigonometric
  coalgebra structure, basis 1, c, s, c2 (c2 = c^2);
* ``fourth_root_object()``: Q(mu), mu^4 = 2, as a comodule algebra over the
  dual of the trigonometric Hopf algebra;
* group algebras of cyclic groups, matrix algebras, products of fields.
"""

from __future__ import annotations

from math import comb

from .algebra import AlgebraData, HopfAlgebraData, dual_hopf, tensor_algebra
from .fields import Field
from .galois import ComoduleAlgebraData, dualize_action, galois_check


def _put(F, arr, idx, value):
    arr[idx] = F.scalar_array(F.coerce(value))


def _power_labels(var, n):
    return ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, n)]


def as_field(F, p=None, d=1):
    return F if F is not None else Field.finite(p, d)


# --- Artin-Schreier family ---------------------------------------------------

def artin_schreier_hopf(F: Field) -> HopfAlgebraData:
    q, p = F.order, F.p
    T = F.zeros((q, q, q))
    for i in range(q):
        for j in range(q):
            k = i + j
            if k >= q:
                k -= q - 1
            _put(F, T, (i, j, k), 1)
    D = F.zeros((q, q, q))
    for n in range(q):
        for k in range(n + 1):
            c = comb(n, k) % p
            if c:
                _put(F, D, (n, k, n - k), c)
    unit = F.zeros(q)
    _put(F, unit, 0, 1)
    eps = F.zeros(q)
    _put(F, eps, 0, 1)
    S = F.zeros((q, q))
    for n in range(q):
        _put(F, S, (n, n), (-1) ** n)
    H = HopfAlgebraData(F, T, unit, D, eps, S, _power_labels("x", q), name=f"H_{q}")
    H.gens = [H.basis_vector(1)] if q > 1 else []
    return H


def artin_schreier_object(H: HopfAlgebraData, a, name=None) -> ComoduleAlgebraData:
    F = H.field
    q, p = F.order, F.p
    a = F.coerce(a)
    T = F.zeros((q, q, q))
    for i in range(q):
        for j in range(q):
            k = i + j
            if k < q:
                _put(F, T, (i, j, k), 1)
            else:
                # y^k = y^(k-q) (y + a)
                _put(F, T, (i, j, k - q + 1), 1)
                cur = F.get(T, (i, j, k - q))
                T[i, j, k - q] = F.scalar_array(F.add(cur, a))
    unit = F.zeros(q)
    _put(F, unit, 0, 1)
    R = F.zeros((q, q, q))
    for n in range(q):
        for k in range(n + 1):
            c = comb(n, k) % p
            if c:
                _put(F, R, (n, k, n - k), c)
    label = name or f"S_{F.format(a)}"
    A = AlgebraData(F, T, unit, _power_labels("y", q), name=label)
    A.gens = [A.basis_vector(1)] if q > 1 else []
    return ComoduleAlgebraData(A, H, R, name=label)


def builtin_artin_schreier(p: int, d: int, a):
    """``(H_q, S_a, certificate)`` over GF(p^d)."""
    F = Field.finite(p, d)
    H = artin_schreier_hopf(F)
    S = artin_schreier_object(H, a)
    return H, S, galois_check(S)


# --- small algebras --------------------------------------------------------------

def cyclic_group_algebra(F: Field, n: int, var="g") -> HopfAlgebraData:
    T = F.zeros((n, n, n))
    D = F.zeros((n, n, n))
    S = F.zeros((n, n))
    for i in range(n):
        for j in range(n):
            _put(F, T, (i, j, (i + j) % n), 1)
        _put(F, D, (i, i, i), 1)
        _put(F, S, (i, (-i) % n), 1)
    unit = F.zeros(n)
    _put(F, unit, 0, 1)
    eps = F.array([1] * n)
    H = HopfAlgebraData(F, T, unit, D, eps, S, _power_labels(var, n), name=f"kC{n}")
    H.gens = [H.basis_vector(1)] if n > 1 else []
    return H


def trivial_hopf(F: Field) -> HopfAlgebraData:
    one = F.array([[[1]]])
    return HopfAlgebraData(F, one, F.array([1]), one.copy(), F.array([1]), F.array([[1]]), ["1"], name="k")


def matrix_algebra(F: Field, n: int) -> AlgebraData:
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    N = n * n
    T = F.zeros((N, N, N))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                _put(F, T, (i * n + j, j * n + l, i * n + l), 1)
    unit = F.zeros(N)
    for i in range(n):
        _put(F, unit, i * n + i, 1)
    return AlgebraData(F, T, unit, labels, name=f"M{n}")


def product_algebra(F: Field, k: int) -> AlgebraData:
    """``F^k`` with its primitive idempotents as basis."""
    T = F.zeros((k, k, k))
    for i in range(k):
        _put(F, T, (i, i, i), 1)
    return AlgebraData(F, T, F.array([1] * k), [f"p{i + 1}" for i in range(k)], name=f"k^{k}")


def polynomial_quotient(F: Field, coefs, var="z", name=None) -> AlgebraData:
    """``F[z]/(f)`` for a monic ``f`` given low-to-high (leading 1 included)."""
    coefs = [F.coerce(c) for c in coefs]
    n = len(coefs) - 1
    # reduction of z^k for k < 2n - 1
    red = []
    for k in range(2 * n - 1):
        if k < n:
            v = [F.zero] * n
            v[k] = F.one
        else:
            prev = red[k - 1]
            v = [F.zero] + prev[:-1]
            top = prev[-1]
            for i in range(n):
                v[i] = F.sub(v[i], F.mul(top, coefs[i]))
        red.append(v)
    T = F.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                T[i, j, k] = F.scalar_array(red[i + j][k])
    unit = F.zeros(n)
    _put(F, unit, 0, 1)
    A = AlgebraData(F, T, unit, _power_labels(var, n), name=name or f"k[{var}]")
    A.gens = [A.basis_vector(1)] if n > 1 else []
    return A


# --- trigonometric example -----------------------------------------------------

def trig_hopf() -> HopfAlgebraData:
    F = Field.rational()
    labels = ["1", "c", "s", "c2"]
    prod = {
        (1, 1): {3: 1}, (1, 2): {}, (1, 3): {1: 1},
        (2, 2): {0: 1, 3: -1}, (2, 3): {}, (3, 3): {3: 1},
    }
    T = F.zeros((4, 4, 4))
    for i in range(4):
        _put(F, T, (0, i, i), 1)
        _put(F, T, (i, 0, i), 1)
    for (i, j), out in prod.items():
        for k, c in out.items():
            _put(F, T, (i, j, k), c)
            _put(F, T, (j, i, k), c)
    unit = F.array([1, 0, 0, 0])
    D = F.zeros((4, 4, 4))
    _put(F, D, (0, 0, 0), 1)
    _put(F, D, (1, 1, 1), 1)
    _put(F, D, (1, 2, 2), -1)
    _put(F, D, (2, 2, 1), 1)
    _put(F, D, (2, 1, 2), 1)
    # Delta(c2) = Delta(c)^2 in H (x) H
    HH = tensor_algebra(AlgebraData(F, T, unit, labels), AlgebraData(F, T, unit, labels))
    dc = D[1].reshape(16)
    D[3] = HH.multiply(dc, dc).reshape(4, 4)
    eps = F.array([1, 1, 0, 1])
    S = F.zeros((4, 4))
    for i, c in enumerate([1, 1, -1, 1]):
        _put(F, S, (i, i), c)
    H = HopfAlgebraData(F, T, unit, D, eps, S, labels, name="Htrig")
    H.gens = [H.basis_vector(1), H.basis_vector(2)]
    return H


def fourth_root_action(H: HopfAlgebraData):
    """Action of the trigonometric Hopf algebra on Q(mu), ``act[h, mu^i, mu^j]``."""
    F = H.field
    act = F.zeros((4, 4, 4))
    for i in range(4):
        _put(F, act, (0, i, i), 1)
    c_vals = {0: 1, 1: 0, 2: -1, 3: 0}
    s_vals = {0: 0, 1: -1, 2: 0, 3: 1}
    for i in range(4):
        _put(F, act, (1, i, i), c_vals[i])
        _put(F, act, (2, i, i), s_vals[i])
        _put(F, act, (3, i, i), c_vals[i] ** 2)
    return act


def fourth_root_object(H: HopfAlgebraData = None):
    """``(Htrig, Htrig*, A_mu)`` with A_mu = Q(2^(1/4)) as an Htrig*-comodule algebra."""
    H = H or trig_hopf()
    F = H.field
    A = polynomial_quotient(F, [-2, 0, 0, 0, 1], var="mu", name="Q(mu)")
    Hd = dual_hopf(H)
    Hd.name = "Htrig*"
    obj = dualize_action(A, H, fourth_root_action(H), dual=Hd, name="Q(mu)")
    return H, Hd, obj


def builtin_trig():
    """``(Htrig, A_mu, certificate)``; A_mu is a comodule algebra over ``dual_hopf(Htrig)``."""
    H, Hd, A = fourth_root_object()
    return H, A, galois_check(A)


def quadratic_c2_object():
    """Q(sqrt 2) with C2 acting by z -> -z, dualized to a (QC2)*-comodule algebra."""
    F = Field.rational()
    H = cyclic_group_algebra(F, 2)
    A = polynomial_quotient(F, [-2, 0, 1], var="z", name="Q(z)")
    act = F.zeros((2, 2, 2))
    _put(F, act, (0, 0, 0), 1)
    _put(F, act, (0, 1, 1), 1)
    _put(F, act, (1, 0, 0), 1)
    _put(F, act, (1, 1, 1), -1)
    return H, dualize_action(A, H, act, name="Q(z)")


# --- tensor extensions B0 (x) S_a ------------------------------------------------

def tensor_extension(B0: AlgebraData, S: ComoduleAlgebraData) -> ComoduleAlgebraData:
    F = B0.field
    alg = tensor_algebra(B0, S.algebra)
    R = F.einsum("bc,sth->bscth", F.eye(B0.dim), S.coaction)
    n = B0.dim * S.dim
    R = R.reshape((n, n, S.hopf.dim) + R.shape[5:])
    name = f"{B0.name}.{S.name}"
    alg.name = name
    return ComoduleAlgebraData(alg, S.hopf, R, name=name)


def builtin_tensor_extension(B0: AlgebraData, p: int, d: int, a):
    """``(H_q, A = B0 (x) S_a, certificate)``."""
    F = B0.field
    if F != Field.finite(p, d):
        raise ValueError(f"B0 lives over {F}, not GF({p}^{d})")
    H = artin_schreier_hopf(F)
    S = artin_schreier_object(H, a)
    A = tensor_extension(B0, S)
    return H, A, galois_check(A)
