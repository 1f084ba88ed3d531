import pytest

from corpus import AS_PARAMS, artin_schreier, tensor_ext, trig
from hopfgalois import catalog, linalg
from hopfgalois.errors import AxiomFailure, HopfGaloisError
from hopfgalois.fields import Field
from hopfgalois.galois import galois_check, square_envelope
from hopfgalois.picard import (automorphism_bimodule, bimodule_tensor, g1_twist, hstable_check,
                               modules_isomorphic, pic_galois_object, standard_module, twist_action_lines,
                               twist_envelope_character, twist_inverse_witness, twist_module, xi)


@pytest.mark.parametrize("pd", AS_PARAMS)
def test_artin_schreier_picard_order(pd):
    # [DERIVED] Pic is the character group of H_q, one character per value x -> b
    H, A, cert = artin_schreier(*pd)
    pic = pic_galois_object(A, cert)
    assert pic.order == A.field.order
    assert pic.check().passed
    assert pic.inverse[pic.identity] == pic.identity


def test_trig_picard_order():
    # [PAPER] the fourth root of 2 object has Pic of order 2
    H, A, cert = trig()
    pic = pic_galois_object(A, cert)
    assert pic.order == 2
    assert pic.identity == 1
    assert pic.table == [[1, 0], [0, 1]]


def test_twist_action_lines():
    # [DERIVED] the right action of alpha on the unit is y_[0] alpha(y_[1]) = y + alpha(x)
    H, A, cert = artin_schreier(2, 1, 1)
    pic = pic_galois_object(A, cert)
    lines = sorted(line for i in range(pic.order) for line in twist_action_lines(A, twist_module(A, pic.elements[i])))
    assert lines == ["y -> 1 + y", "y -> y"]
    H, A, cert = trig()
    pic = pic_galois_object(A, cert)
    assert twist_action_lines(A, twist_module(A, pic.elements[0])) == ["mu -> -mu"]


@pytest.mark.parametrize("pd", AS_PARAMS)
def test_twists_are_invertible(pd):
    H, A, cert = artin_schreier(*pd)
    pic = pic_galois_object(A, cert)
    for alpha in pic.elements:
        assert twist_inverse_witness(A, alpha).value is True


def test_twists_pairwise_non_isomorphic():
    H, A, cert = artin_schreier(3, 1)
    pic = pic_galois_object(A, cert)
    mods = [twist_module(A, alpha) for alpha in pic.elements]
    for i, M in enumerate(mods):
        for j, N in enumerate(mods):
            assert modules_isomorphic(M, N).value is (i == j)


@pytest.mark.parametrize("obj", ["as3", "trig"])
def test_g1_agrees_with_transported_twist(obj):
    # g1(alpha) and the envelope character read off P_alpha are the same action on B = k
    H, A, cert = artin_schreier(3, 1) if obj == "as3" else trig()
    F = A.field
    env = square_envelope(cert, certify=False)
    pic = pic_galois_object(A, cert)
    for alpha in pic.elements:
        g1 = g1_twist(cert, alpha[:, None], env)
        moved = twist_envelope_character(twist_module(A, alpha), cert, env)
        assert F.equal(g1.actions["envelope"].table, moved)


@pytest.mark.parametrize("obj", ["square", "matrix"])
def test_standard_module_is_h_stable(obj):
    H, A, cert = tensor_ext(obj, 2)
    M = standard_module(cert)
    verdict = hstable_check(M, cert)
    assert verdict.value is True


def swap(F):
    return F.array([[0, 1], [1, 0]])


def test_xi_of_automorphism_bimodules():
    # [DERIVED] on B = k x k twisted on the right by the swap s, m x = m s(x) = s(x) m,
    # so xi = s; twisting twice gives s^2 = 1
    F = Field.finite(3)
    B = catalog.product_algebra(F, 2)
    M = automorphism_bimodule(B, right_auto=swap(F))
    X = xi(M, B)
    assert linalg.rank(F, X.matrix) == 2
    assert F.equal(X.matrix, swap(F))
    MM = bimodule_tensor(M, M)
    assert F.equal(xi(MM, B).matrix, F.eye(2))
    assert F.equal(xi(automorphism_bimodule(B), B).matrix, F.eye(2))


def test_automorphism_bimodule_rejects_non_automorphisms():
    F = Field.finite(3)
    B = catalog.product_algebra(F, 2)
    with pytest.raises(AxiomFailure):
        automorphism_bimodule(B, right_auto=F.array([[1, 0], [1, 0]]))
    with pytest.raises(AxiomFailure):
        automorphism_bimodule(B, left_auto=F.zeros((2, 2)))


def test_picard_needs_galois_object():
    H, A, cert = tensor_ext("square", 2)
    with pytest.raises(HopfGaloisError):
        pic_galois_object(A, cert)


def test_picard_of_regular_comodule():
    # [DERIVED] kC_2 over GF(3) has characters g -> 1 and g -> -1
    from hopfgalois.galois import regular_comodule
    H = catalog.cyclic_group_algebra(Field.finite(3), 2)
    A = regular_comodule(H)
    pic = pic_galois_object(A, galois_check(A))
    assert pic.order == 2
