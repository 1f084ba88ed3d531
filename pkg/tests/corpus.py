"""Built-in objects shared by the tests, each built once per session."""

from pathlib import Path

from hopfgalois import catalog
from hopfgalois.fields import Field
from hopfgalois.galois import galois_check, regular_comodule

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

AS_PARAMS = [(2, 1), (3, 1), (2, 2)]

_cache = {}


def cached(key, build):
    if key not in _cache:
        _cache[key] = build()
    return _cache[key]


def artin_schreier(p, d, a=1):
    """(H_q, S_a, certificate), cached across tests."""
    return cached(("as", p, d, str(a)), lambda: catalog.builtin_artin_schreier(p, d, a))


def trig():
    return cached("trig", catalog.builtin_trig)


def tensor_ext(kind, q):
    def build():
        F = Field.finite(q)
        B0 = catalog.matrix_algebra(F, 2) if kind == "matrix" else catalog.product_algebra(F, 2)
        return catalog.builtin_tensor_extension(B0, q, 1, 1)
    return cached(("tensor", kind, q), build)


def regular(H):
    A = regular_comodule(H)
    return A, galois_check(A)


def qc2_regular():
    return cached("qc2", lambda: regular(catalog.cyclic_group_algebra(Field.rational(), 2)))


def qc2_quadratic():
    def build():
        H, A = catalog.quadratic_c2_object()
        return H, A, galois_check(A)
    return cached("qc2z", build)


def hq_regular(q=2):
    return cached(("hq", q), lambda: regular(catalog.artin_schreier_hopf(Field.finite(q))))
