"""The nine acceptance criteria, one test each, exact arithmetic throughout.

Each test prints a single ``PASS``/``FAIL`` line for its criterion (visible
with ``pytest -s``) and re-raises on failure so the suite goes red.
"""

import random
import time

import numpy as np
import pytest

from corpus import (AS_PARAMS, FIXTURES, artin_schreier, hq_regular, qc2_quadratic, qc2_regular, tensor_ext,
                    trig)
from hopfgalois import catalog, linalg
from hopfgalois.algebra import (all_vectors, antipode_map, conv_inverse, dual_hopf, grouplikes, identity_map,
                                is_cocommutative, random_map, table_key)
from hopfgalois.cleft import extract_sigma, find_total_integral, phi_iso, transported_integral
from hopfgalois.cli import run_command
from hopfgalois.cohomology import h1, two_cocycle_trivial
from hopfgalois.errors import ParseError
from hopfgalois.fields import Field
from hopfgalois.galois import galois_check, gamma_identities_report, mu_action, square_envelope
from hopfgalois.hgx import parse_hgx
from hopfgalois.picard import (g1_twist, modules_isomorphic, pic_galois_object, square_action_on_tensor,
                               twist_module, twist_tensor)

TIME_LIMIT = 10.0


def _run(number, title, check):
    t0 = time.perf_counter()
    try:
        check()
        elapsed = time.perf_counter() - t0
        assert elapsed < TIME_LIMIT, f"took {elapsed:.1f}s"
    except BaseException:
        print(f"FAIL criterion {number}: {title}")
        raise
    print(f"PASS criterion {number}: {title} ({time.perf_counter() - t0:.2f}s)")


def galois_objects():
    """(name, A, certificate) for every Galois object of the corpus."""
    out = [(f"S_1 over GF({p}^{d})", *artin_schreier(p, d)[1:]) for p, d in AS_PARAMS]
    _, A, cert = trig()
    out.append(("Q(2^(1/4))", A, cert))
    A, cert = qc2_regular()
    out.append(("QC2 regular", A, cert))
    _, A, cert = qc2_quadratic()
    out.append(("Q(z) over QC2", A, cert))
    A, cert = hq_regular(2)
    out.append(("H_2 regular", A, cert))
    return out


def _field_elements(F):
    return list(F.elements())


# --- 1 ------------------------------------------------------------------------------------------

def test_criterion_1_fourth_root_of_two():
    def check():
        H = catalog.trig_hopf()
        F = H.field
        c = H.basis_vector("c")
        expected = {table_key(F, H.unit),
                    table_key(F, F.sub_arrays(F.scale(H.multiply(c, c), F.from_int(2)), H.unit))}
        assert {table_key(F, g) for g in grouplikes(H)} == expected

        _, A, cert = trig()
        pic = pic_galois_object(A, cert)
        assert pic.order == 2
        nontrivial = [i for i in range(2) if i != pic.identity]
        P = twist_module(A, pic.elements[nontrivial[0]])
        mu = A.basis_vector("mu")
        right_mu = P.operator("right", mu)
        for i, lab in enumerate(A.labels):
            p = A.basis_vector(lab)
            assert F.equal(linalg.vecmat(F, p, right_mu), F.neg_array(A.multiply(mu, p)))
        # a . mu^i = (-1)^i mu^i a for every basis a
        for i in range(4):
            mui = A.power(mu, i)
            op = P.operator("right", mui)
            for lab in A.labels:
                a = A.basis_vector(lab)
                rhs = A.multiply(mui, a)
                if i % 2:
                    rhs = F.neg_array(rhs)
                assert F.equal(linalg.vecmat(F, a, op), rhs)

    _run(1, "trig object: grouplikes {1, 2c^2-1}, Pic of order 2, p.mu = -mu p", check)


# --- 2 ------------------------------------------------------------------------------------------

def _alpha(H, b):
    F = H.field
    # H_q = k[x]/(x^q - x) on the basis 1, x, ..., x^(q-1); alpha(x^i) = b^i
    return F.array([F.power(b, i) for i in range(H.dim)])


def test_criterion_2_artin_schreier():
    def check():
        for p, d in AS_PARAMS:
            F = Field.finite(p, d)
            q = F.order
            elements = _field_elements(F)
            images = {table_key(F, F.array([F.sub(F.power(c, q), c)])) for c in elements}
            for a in elements:
                H, S, cert = artin_schreier(p, d, a)
                assert cert.coinvariants.dim == 1
                ti = find_total_integral(S)
                cls = two_cocycle_trivial(extract_sigma(ti.normalized()))
                should = table_key(F, F.array([a])) in images
                assert cls.is_trivial == should, (p, d, a)
                if d == 1:
                    assert cls.is_trivial == (a == 0)
            H, S, cert = artin_schreier(p, d, 1)
            assert pic_galois_object(S, cert).order == q
            y = S.basis_vector("y")
            for b in elements:
                P = twist_module(S, _alpha(H, b))
                op = P.operator("right", y)
                shifted = F.add_arrays(y, F.scale(S.unit, b))
                for lab in S.labels:
                    pv = S.basis_vector(lab)
                    assert F.equal(linalg.vecmat(F, pv, op), S.multiply(pv, shifted))

    _run(2, "Artin-Schreier: S_a Galois over k, |Pic| = q, p.y = p(y+b), sigma trivial iff a = c^q - c", check)


# --- 3 ------------------------------------------------------------------------------------------

def _fixed_points(Z, q):
    F = Z.field
    X = all_vectors(F, Z.dim)
    return sum(1 for v in X if F.equal(Z.power(v, q), v))


def test_criterion_3_tensor_extensions():
    def check():
        for kind, q in [("square", 2), ("square", 3), ("matrix", 3)]:
            H, A, cert = tensor_ext(kind, q)
            mu = mu_action(cert)
            assert mu.report.passed
            assert mu.is_trivial
            res = h1(H, mu.center_algebra, mu.act)
            assert res.order == _fixed_points(mu.center_algebra, q), (kind, q)
            env = square_envelope(cert, certify=False)
            twists = [g1_twist(cert, v.table, env, mu) for v in res.representatives]
            for i, M in enumerate(twists):
                for j, N in enumerate(twists):
                    verdict = modules_isomorphic(M, N)
                    assert verdict.value is (i == j), (kind, q, i, j, verdict.value)

    _run(3, "tensor extensions: trivial MU action, |H^1| = #{b : b^q = b}, twists pairwise non-isomorphic", check)


# --- 4 ------------------------------------------------------------------------------------------

def test_criterion_4_gamma_identities():
    def check():
        objects = galois_objects()
        for kind, q in [("square", 2), ("matrix", 3)]:
            _, A, cert = tensor_ext(kind, q)
            objects.append((A.name, A, cert))
        assert len(objects) >= 6
        for name, A, cert in objects:
            rep = gamma_identities_report(cert)
            assert rep.passed and len(rep.results) == 7, (name, rep)
            assert mu_action(cert).report.passed, name
        _, _, cert = artin_schreier(3, 1)
        assert not gamma_identities_report(cert.corrupted())["translation"].passed

    _run(4, "gamma identities and MU commutation on the corpus; corrupted certificate fails translation", check)


# --- 5 ------------------------------------------------------------------------------------------

def cleft_objects():
    out = [(name, A) for name, A, _ in galois_objects()]
    for kind, q in [("square", 2), ("matrix", 3)]:
        out.append((kind, tensor_ext(kind, q)[1]))
    return out


def test_criterion_5_crossed_product_round_trip():
    def check():
        for name, A in cleft_objects():
            F = A.field
            ti = find_total_integral(A).normalized()
            iso = phi_iso(ti)
            assert iso.passed, (name, iso.report.failures())
            assert F.equal(linalg.matmul(F, iso.phi_inv, iso.phi), F.eye(A.dim))
            sigma = extract_sigma(ti)
            again = extract_sigma(transported_integral(iso, ti))
            assert again == sigma, name

    _run(5, "phi: B #_sigma H -> A is a comodule algebra isomorphism; sigma re-extracted exactly", check)


# --- 6 ------------------------------------------------------------------------------------------

def test_criterion_6_square_envelope():
    def check():
        for name, A, cert in galois_objects():
            env = square_envelope(cert)
            assert env.certificate is not None, name
            assert env.cross_check is True, name
            assert env.dim == A.hopf.dim, name

    _run(6, "the square envelope is Galois, its gamma matches the product formula, dim = dim H", check)


# --- 7 ------------------------------------------------------------------------------------------

def hopf_corpus():
    Q = Field.rational()
    hs = [catalog.artin_schreier_hopf(Field.finite(p, d)) for p, d in AS_PARAMS]
    hs += [catalog.trig_hopf(), dual_hopf(catalog.trig_hopf()), catalog.cyclic_group_algebra(Q, 2),
           catalog.cyclic_group_algebra(Field.finite(3), 3), catalog.trivial_hopf(Q)]
    return hs


def test_criterion_7_convolution():
    def check():
        rng = np.random.default_rng(7)
        for H in hopf_corpus():
            assert conv_inverse(identity_map(H)) == antipode_map(H), H.name
            for _ in range(50):
                f, g, h = (random_map(H, H.algebra, rng) for _ in range(3))
                assert (f * g) * h == f * (g * h), H.name

    _run(7, "conv_inverse(id) = S on every Hopf algebra; convolution associative on 50 random triples", check)


# --- 8 ------------------------------------------------------------------------------------------

def test_criterion_8_group_law():
    def check():
        for name, A, cert in galois_objects():
            H = A.hopf
            assert is_cocommutative(H)
            pic = pic_galois_object(A, cert)
            n = pic.order
            mods = [twist_module(A, pic.elements[i]) for i in range(n)]
            env = square_envelope(cert, certify=False)
            g1 = [g1_twist(cert, pic.elements[i][:, None], env) for i in range(n)]
            for a in range(n):
                for b in range(n):
                    target = pic.table[a][b]
                    T = twist_tensor(mods[a], mods[b], H)
                    E = square_action_on_tensor(g1[a], g1[b], cert, env)
                    for c in range(n):
                        iso = modules_isomorphic(T, mods[c])
                        assert iso.value is (c == target), (name, a, b, c, iso.value)
                        if c == target:
                            assert iso.witness is not None
                        assert modules_isomorphic(E, g1[c]).value is (c == target), (name, a, b, c)

    _run(8, "module tensor products reproduce the character-convolution table", check)


# --- 9 ------------------------------------------------------------------------------------------

def fuzz_corpus(n=10_000, seed=2024):
    """Deterministic malformed variants of the shipped fixtures."""
    rng = random.Random(seed)
    sources = [(FIXTURES / f).read_text() for f in
               ("artin_schreier_2_1_1.hgx", "broken_cocycle.hgx", "trivial_coaction.hgx")]
    junk = ["[", "]", "(", ")", "(x)", "*", "=", ":", "+", "-", "/", "0", "1/0", "t^9", "#", "\n",
            "[hopf", "field Q", "field GF(4)", "basis:", "m:", "x", "y", ",", "  ", "\t", "é", "\x00",
            "99999999999999999999", "GF(", "rho: y =", "[comodule-algebra", "hopf: nothing"]
    out = []
    for i in range(n):
        text = rng.choice(sources)
        for _ in range(rng.randint(1, 4)):
            op = rng.randrange(5)
            pos = rng.randrange(len(text) + 1)
            if op == 0:
                text = text[:pos] + rng.choice(junk) + text[pos:]
            elif op == 1:
                end = min(len(text), pos + rng.randint(1, 12))
                text = text[:pos] + text[end:]
            elif op == 2:
                lines = text.split("\n")
                rng.shuffle(lines)
                text = "\n".join(lines)
            elif op == 3:
                lines = text.split("\n")
                j = rng.randrange(len(lines))
                lines[j] = lines[j].replace(rng.choice("xy1"), rng.choice(junk), 1)
                text = "\n".join(lines)
            else:
                text = text[:pos] + chr(rng.randrange(32, 0x2FF)) + text[pos:]
        out.append(text)
    return out


def test_criterion_9_negative_controls_and_fuzz():
    def check():
        code, out = run_command(["verify", str(FIXTURES / "corrupted_antipode.hgx")])
        assert code == 1
        assert "FAIL antipode (left) at (x)" in out.decode()
        code, out = run_command(["verify", str(FIXTURES / "broken_cocycle.hgx")])
        assert code == 1
        assert "FAIL 2-cocycle condition at (1#x, 1#x, 1#x^2)" in out.decode()
        code, out = run_command(["galois", str(FIXTURES / "trivial_coaction.hgx")])
        assert code == 1
        text = out.decode()
        assert "FAIL not Galois" in text and "witness:" in text
        parsed = rejected = 0
        for text in fuzz_corpus():
            try:
                parse_hgx(text)
                parsed += 1
            except ParseError as exc:
                assert exc.diagnostics
                rejected += 1
        assert parsed + rejected == 10_000
        assert rejected > 0

    _run(9, "negative fixtures exit 1 with witnesses; 10^4 malformed inputs never crash the parser", check)
