"""Sweedler cohomology in degrees 1 and 2 for cocommutative H and commutative B.

Degree 1: maps ``v: H -> B`` with ``v(1) = 1`` and
``v(hk) = v(h1) omega(h2 (x) v(k))``; coboundaries are ``h -> (h.b) b^-1``.
Degree 2: a table is a 2-cocycle when the crossed product it defines is
associative and unital, and its class is trivial exactly when that crossed
product admits a colinear algebra map from H.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .algebra import (DEFAULT_CAP, AlgebraData, ConvolutionMap, HopfAlgebraData, algebra_maps,
                      all_vectors, conv_inverse, is_cocommutative, table_key)
from .cleft import TwoCocycle, crossed_product, find_algebra_integral, trivial_omega
from .errors import AxiomFailure, CapExceeded, HopfGaloisError, UnsupportedField

TRIVIAL, NONTRIVIAL, UNKNOWN = "trivial", "nontrivial", "unknown"


def _require_sweedler(H, B):
    if not is_cocommutative(H):
        raise HopfGaloisError("Sweedler cohomology needs a cocommutative Hopf algebra")
    if not B.is_commutative():
        raise HopfGaloisError("Sweedler cohomology needs a commutative coefficient algebra")


def is_trivial_omega(H, B, om) -> bool:
    return H.field.equal(om, trivial_omega(B, H))


# --- degree one -------------------------------------------------------------------

class OneCochain:
    """A map ``v: H -> B`` with its invertibility and normalisation flags."""

    def __init__(self, H: HopfAlgebraData, B: AlgebraData, table):
        self.map = ConvolutionMap(H, B, table)
        F = H.field
        self.normalized = F.equal(self.map(H.unit), B.unit)
        self._inverse = conv_inverse(self.map)
        self.invertible = self._inverse is not None

    @property
    def table(self):
        return self.map.table

    @property
    def hopf(self):
        return self.map.domain

    @property
    def B(self):
        return self.map.codomain

    def __mul__(self, other):
        return OneCochain(self.hopf, self.B, (self.map * other.map).table)

    def inverse(self):
        if not self.invertible:
            raise AxiomFailure("cochain is not convolution invertible")
        return OneCochain(self.hopf, self.B, self._inverse.table)

    def key(self):
        return table_key(self.hopf.field, self.table)

    def __eq__(self, other):
        return isinstance(other, OneCochain) and self.map == other.map

    def __hash__(self):
        return hash(self.key())

    def describe(self):
        return self.map.describe()

    def __repr__(self):
        return f"OneCochain({self.describe()})"


class Verdict:
    """A boolean answer with an optional witness; truthy iff the answer is yes."""

    def __init__(self, value, witness=None, note=""):
        self.value = value
        self.witness = witness
        self.note = note

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"Verdict({self.value}, witness={self.witness})"


class CochainList(list):
    """Deterministically ordered cochains with the method that produced them."""

    def __init__(self, items, method):
        super().__init__(items)
        self.method = method


def one_cocycle_defect(H, B, om, v):
    """``v(hk) - v(h1) omega(h2 (x) v(k))`` as a table ``[h, k, o]``."""
    F = H.field
    lhs = F.einsum("hkg,go->hko", H.mult, v)
    X = F.einsum("kj,bjq->kbq", v, om)
    Y = F.einsum("hab,kbq->hakq", H.comult, X)
    Z = F.einsum("hakq,ap->hkpq", Y, v)
    rhs = F.einsum("hkpq,pqo->hko", Z, B.mult)
    return F.sub_arrays(lhs, rhs)


def is_one_cocycle(v, om) -> Verdict:
    """Check the cocycle identity on every basis pair; the witness is the first failing pair."""
    if not isinstance(v, OneCochain):
        raise TypeError("expected a OneCochain")
    H, B, F = v.hopf, v.B, v.hopf.field
    _require_sweedler(H, B)
    if not v.normalized:
        return Verdict(False, ("1",), "v(1) is not 1")
    idx = F.first_nonzero(one_cocycle_defect(H, B, om, v.table))
    if idx is None:
        return Verdict(True)
    return Verdict(False, (H.labels[idx[0]], H.labels[idx[1]]))


def _affine_unit_candidates(H, B, cap):
    """Tables with ``v(1) = 1``: the unit row is fixed, the others range over B."""
    F = H.field
    # write H in a basis whose first vector is the unit: solve for a complement
    m, k = H.dim, B.dim
    total = F.order ** ((m - 1) * k)
    if total > cap:
        raise CapExceeded(f"{total} candidate cochains exceed the cap {cap}")
    # change of basis: P has rows (1, complement basis vectors)
    comp = [i for i in range(m) if not F.is_zero(F.get(H.unit, i))]
    piv = comp[0]
    others = [i for i in range(m) if i != piv]
    P = F.zeros((m, m) + H.unit.shape[1:])
    P[0] = H.unit
    for r, i in enumerate(others, start=1):
        P[r, i] = F.scalar_array(F.one)
    Pinv = linalg.inverse(F, P)
    X = all_vectors(F, (m - 1) * k, cap)
    for row in X:
        W = F.zeros((m, k) + H.unit.shape[1:])
        W[0] = B.unit
        if m > 1:
            W[1:] = row.reshape((m - 1, k) + row.shape[1:])
        yield linalg.matmul(F, Pinv, W)


def one_cocycles(H: HopfAlgebraData, B: AlgebraData, om=None, cap=DEFAULT_CAP) -> CochainList:
    """All normalised 1-cocycles, lexicographically ordered.

    With the trivial action the cocycles are exactly the algebra maps H -> B,
    which are found from generator roots instead of a full enumeration.
    """
    _require_sweedler(H, B)
    F = H.field
    if om is None:
        om = trivial_omega(B, H)
    if is_trivial_omega(H, B, om):
        maps = algebra_maps(H, B, cap)
        return CochainList([OneCochain(H, B, f) for f in maps], "algebra maps (trivial action)")
    if not F.is_finite:
        raise UnsupportedField("1-cocycles for a nontrivial action need a finite field")
    found = []
    for v in _affine_unit_candidates(H, B, cap):
        if F.is_zero_array(one_cocycle_defect(H, B, om, v)):
            found.append(OneCochain(H, B, v))
    found.sort(key=OneCochain.key)
    return CochainList(found, "exhaustive enumeration")


def units_of(B: AlgebraData, cap=DEFAULT_CAP):
    F = B.field
    if not F.is_finite:
        raise UnsupportedField("units can only be enumerated over a finite field")
    out = []
    for b in all_vectors(F, B.dim, cap):
        if linalg.rank(F, B.left_matrix(b)) == B.dim:
            out.append(b)
    return out


def coboundary(H, B, om, b):
    """``h -> (h.b) b^-1`` for a unit b."""
    F = H.field
    Linv = linalg.inverse(F, B.right_matrix(b))
    binv = linalg.vecmat(F, B.unit, Linv)
    hb = F.einsum("j,hjk->hk", b, om)
    return F.einsum("hp,pq->hq", hb, B.right_matrix(binv))


def one_coboundaries(H, B, om=None, units=None, cap=DEFAULT_CAP) -> CochainList:
    """Distinct coboundaries, ordered lexicographically.

    Over a finite field all units are enumerated; over Q an explicit list of
    units has to be supplied.
    """
    _require_sweedler(H, B)
    F = H.field
    if om is None:
        om = trivial_omega(B, H)
    if units is None:
        units = units_of(B, cap)
    seen = {}
    for b in units:
        if linalg.rank(F, B.left_matrix(b)) != B.dim:
            raise AxiomFailure(f"{B.format(b)} is not a unit")
        v = OneCochain(H, B, coboundary(H, B, om, b))
        seen.setdefault(v.key(), v)
    return CochainList([seen[k] for k in sorted(seen)], "units of B")


class H1Result:
    def __init__(self, classes, cocycles, coboundaries, base_point=None):
        self.classes = classes
        self.cocycles = cocycles
        self.coboundaries = coboundaries
        self.base_point = base_point

    @property
    def order(self):
        return len(self.classes)

    @property
    def representatives(self):
        return [c[0] for c in self.classes]


def h1(H, B, om=None, cap=DEFAULT_CAP, units=None, context=None) -> H1Result:
    """Classes of 1-cocycles modulo coboundaries.

    Each class is listed in lexicographic order, so its first member is the
    canonical representative.  If a comodule algebra ``context`` is given,
    ``base_point`` records whether it has a colinear algebra map from H, which
    is what identifies these classes with classes of such maps.
    """
    if om is None:
        om = trivial_omega(B, H)
    Z = one_cocycles(H, B, om, cap)
    Bd = one_coboundaries(H, B, om, units, cap)
    for c in Bd:
        if not is_one_cocycle(c, om):
            raise AxiomFailure("a coboundary fails the cocycle identity", c.describe())
    index = {v.key(): i for i, v in enumerate(Z)}
    done = set()
    classes = []
    for v in Z:
        if v.key() in done:
            continue
        orbit = {}
        for c in Bd:
            w = c * v
            if w.key() not in index:
                raise AxiomFailure("coboundary times cocycle left the cocycle list", w.describe())
            orbit[w.key()] = w
        members = [orbit[k] for k in sorted(orbit)]
        done.update(orbit)
        classes.append(members)
    base = None
    if context is not None:
        try:
            base = find_algebra_integral(context, cap).found
        except CapExceeded:
            base = None
    return H1Result(classes, Z, Bd, base)


# --- degree two ---------------------------------------------------------------------

class CocycleClass:
    """Triviality status of a 2-cocycle with its witness or exhaustion count."""

    def __init__(self, representative: TwoCocycle, status, witness=None, certificate=None, crossed=None):
        self.representative = representative
        self.status = status
        self.witness = witness
        self.certificate = certificate
        self.crossed_product = crossed

    @property
    def is_trivial(self):
        return self.status == TRIVIAL

    def __repr__(self):
        return f"CocycleClass({self.status})"


def is_two_cocycle(B, om, sigma, H=None) -> Verdict:
    """Crossed product associativity and unitality; the witness is a failing triple."""
    cp = crossed_product(B, om, sigma, H)
    bad = cp.report.failures()
    if not bad:
        return Verdict(True)
    return Verdict(False, bad[0].witness, f"sigma is not a 2-cocycle for omega ({bad[0].name})")


def two_cocycle_trivial(sigma: TwoCocycle, context=None, cap=DEFAULT_CAP) -> CocycleClass:
    """Trivial iff the crossed product admits a colinear algebra map from H.

    ``context`` may be a comodule algebra A known to be isomorphic to the
    crossed product; it is recorded but the search always runs on the crossed
    product so that the certificate refers to sigma itself.
    """
    cp = crossed_product(sigma.B, sigma.omega, sigma, sigma.hopf)
    bad = cp.report.failures()
    if bad:
        raise AxiomFailure(f"sigma is not a 2-cocycle for omega ({bad[0].name})", bad[0].witness)
    try:
        search = find_algebra_integral(cp.comodule, cap)
    except CapExceeded as exc:
        return CocycleClass(sigma, UNKNOWN, certificate=str(exc), crossed=cp)
    if search.found:
        return CocycleClass(sigma, TRIVIAL, witness=search.integral, crossed=cp)
    return CocycleClass(sigma, NONTRIVIAL, certificate=f"{search.candidates} candidates exhausted", crossed=cp)


def cocycle_quotient(s1: TwoCocycle, s2: TwoCocycle) -> TwoCocycle:
    """``s1 * s2^-1`` in the convolution group of maps ``H (x) H -> B``."""
    H, B = s1.hopf, s1.B
    _require_sweedler(H, B)
    F = H.field
    if not F.equal(s1.omega, s2.omega):
        raise AxiomFailure("cocycles for different actions")
    inv = conv_inverse(s2.as_map())
    if inv is None:
        raise AxiomFailure("second cocycle is not convolution invertible")
    return TwoCocycle.from_map(s1.as_map() * inv, H, s1.omega)


def cocycle_classes_equal(s1: TwoCocycle, s2: TwoCocycle, cap=DEFAULT_CAP) -> Verdict:
    """Equal classes iff ``s1 * s2^-1`` is trivial; None value when undecided."""
    for s in (s1, s2):
        ok = is_two_cocycle(s.B, s.omega, s, s.hopf)
        if not ok:
            raise AxiomFailure(ok.note, ok.witness)
    cls = two_cocycle_trivial(cocycle_quotient(s1, s2), cap=cap)
    if cls.status == UNKNOWN:
        return Verdict(None, note=cls.certificate)
    return Verdict(cls.is_trivial, cls.witness if cls.is_trivial else cls.certificate)
