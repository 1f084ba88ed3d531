from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hopfgalois import catalog, linalg
from hopfgalois.algebra import (AxiomReport, ConvolutionMap, HopfAlgebraData, algebra_maps, antipode_map,
                                center, characters, check_algebra, check_hopf_axioms, conv_inverse,
                                dual_hopf, grouplikes, identity_map, is_cocommutative, minimal_polynomial,
                                rational_roots, table_key, tensor_algebra)
from hopfgalois.errors import DimensionMismatch
from hopfgalois.fields import Field

QQ = Field.rational()


def hopf_corpus():
    hs = [catalog.artin_schreier_hopf(Field.finite(p, d)) for p, d in [(2, 1), (3, 1), (2, 2)]]
    trig = catalog.trig_hopf()
    hs += [trig, dual_hopf(trig), catalog.cyclic_group_algebra(QQ, 2), catalog.cyclic_group_algebra(QQ, 3),
           catalog.cyclic_group_algebra(Field.finite(3), 3), catalog.trivial_hopf(QQ)]
    return hs


HOPF = hopf_corpus()


@pytest.mark.parametrize("H", HOPF, ids=lambda H: f"{H.name}/{H.field}")
def test_hopf_axioms_hold(H):
    rep = check_hopf_axioms(H)
    assert rep.passed, rep.failures()
    assert len(rep.results) == 13


@pytest.mark.parametrize("H", HOPF, ids=lambda H: f"{H.name}/{H.field}")
def test_antipode_is_convolution_inverse_of_identity(H):
    assert conv_inverse(identity_map(H)) == antipode_map(H)
    assert conv_inverse(antipode_map(H)) == identity_map(H)


@pytest.mark.parametrize("H", HOPF, ids=lambda H: f"{H.name}/{H.field}")
def test_double_dual_is_original(H):
    DD = dual_hopf(dual_hopf(H))
    F = H.field
    for attr in ("mult", "unit", "comult", "counit", "antipode"):
        assert F.equal(getattr(DD, attr), getattr(H, attr)), attr


@pytest.mark.parametrize("H", HOPF, ids=lambda H: f"{H.name}/{H.field}")
def test_antipode_anti_multiplicative(H):
    F = H.field

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 31))
    def run(seed):
        rng = np.random.default_rng(seed)
        a = F.array([F.random(rng) for _ in range(H.dim)])
        b = F.array([F.random(rng) for _ in range(H.dim)])
        lhs = H.apply_antipode(H.multiply(a, b))
        rhs = H.multiply(H.apply_antipode(b), H.apply_antipode(a))
        assert F.equal(lhs, rhs)
        # Delta is multiplicative on arbitrary elements
        lhs = H.delta(H.multiply(a, b))
        Da, Db = H.delta(a), H.delta(b)
        P = F.einsum("xy,xzo->yzo", Da, H.mult)
        Q = F.einsum("yzo,zw->ywo", P, Db)
        rhs = F.einsum("ywo,ywp->op", Q, H.mult)
        assert F.equal(lhs, rhs)

    run()


def test_grouplikes_oracles():
    # [DERIVED] kC_n has exactly the n powers of g as grouplikes
    H = catalog.cyclic_group_algebra(QQ, 3)
    assert len(grouplikes(H)) == 3
    # [DERIVED] in characteristic p the additive group has no nontrivial
    # characters to k*, so H_q = k[x]/(x^q - x) has only 1 as grouplike ...
    for p, d in [(2, 1), (3, 1), (2, 2)]:
        Hq = catalog.artin_schreier_hopf(Field.finite(p, d))
        gs = grouplikes(Hq)
        assert len(gs) == 1 and Hq.field.equal(gs[0], Hq.unit)
        # ... but q characters, one for each value alpha(x) = b
        assert len(characters(Hq)) == p ** d


def test_trig_grouplikes_paper_value():
    # [PAPER] the grouplikes of the trigonometric coalgebra's dual
    # picture are 1 and c^2 - s^2 = 2c^2 - 1
    H = catalog.trig_hopf()
    F = H.field
    c = H.basis_vector("c")
    s = H.basis_vector("s")
    c2_minus_s2 = F.sub_arrays(H.multiply(c, c), H.multiply(s, s))
    two_c2_minus_1 = F.sub_arrays(F.scale(H.multiply(c, c), Fraction(2)), H.unit)
    assert F.equal(c2_minus_s2, two_c2_minus_1)
    keys = sorted(table_key(F, g) for g in grouplikes(H))
    assert keys == sorted([table_key(F, H.unit), table_key(F, two_c2_minus_1)])


def test_rational_roots_and_minimal_polynomial():
    assert rational_roots([1, -3, 2]) == [Fraction(1, 2), Fraction(1)]
    assert rational_roots([-2, 0, 0, 1]) == []
    assert rational_roots([0, 0, 1]) == [Fraction(0)]
    _, A, _ = catalog.builtin_trig()
    mu = A.basis_vector("mu")
    assert minimal_polynomial(A.algebra, mu) == [Fraction(-2), 0, 0, 0, 1]


def test_centers():
    F3 = Field.finite(3)
    Z, _ = center(catalog.matrix_algebra(F3, 2))
    assert Z.dim == 1
    Z, _ = center(catalog.product_algebra(F3, 2))
    assert Z.dim == 2


def test_algebra_maps_of_product_algebra():
    # [DERIVED] a unital map of k x k is fixed by the image e of the idempotent
    # e1 (then e2 -> 1 - e); the 4 idempotents 0, 1, e1, e2 all work and two
    # of the maps are bijective (identity and swap)
    F = Field.finite(5)
    k2 = catalog.product_algebra(F, 2)
    maps = algebra_maps(k2, k2)
    assert len(maps) == 4
    assert sum(linalg.rank(F, f) == 2 for f in maps) == 2
    assert any(F.equal(f, F.eye(2)) for f in maps)


def test_tensor_algebra_dimension_and_axioms():
    F = Field.finite(3)
    T = tensor_algebra(catalog.matrix_algebra(F, 2), catalog.product_algebra(F, 2))
    assert T.dim == 8
    rep = AxiomReport()
    check_algebra(T, rep)
    assert rep.passed


def test_corrupted_antipode_has_witness():
    H = catalog.artin_schreier_hopf(Field.finite(2))
    F = H.field
    S = F.zeros((2, 2))
    S[0, 0] = 1
    bad = HopfAlgebraData(F, H.mult, H.unit, H.comult, H.counit, S, H.labels, name="bad")
    rep = check_hopf_axioms(bad)
    assert not rep.passed
    assert rep["antipode (left)"].witness == ("x",)


def test_convolution_requires_matching_maps():
    H = catalog.artin_schreier_hopf(Field.finite(2))
    K = catalog.artin_schreier_hopf(Field.finite(3))
    with pytest.raises(DimensionMismatch):
        identity_map(H) * identity_map(K)
    with pytest.raises(DimensionMismatch):
        ConvolutionMap(H, H.algebra, H.field.zeros((3, 3)))


def test_cocommutativity():
    assert is_cocommutative(catalog.cyclic_group_algebra(QQ, 3))
    assert is_cocommutative(catalog.trig_hopf())
    # the trig coalgebra is cocommutative and its dual algebra commutative
    assert dual_hopf(catalog.trig_hopf()).is_commutative()
