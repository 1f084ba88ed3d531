"""Exact scalar fields: the rationals and the finite fields GF(p^d).

Scalars travel in two forms.  A *raw* scalar is a plain Python value:
``Fraction`` for Q, ``int`` in ``range(p)`` for GF(p), and a tuple of ``d``
residues (coefficients low-to-high) for GF(p^d) with d > 1.  A *field array*
is a numpy array holding many raw scalars at once; for d > 1 it carries one
extra trailing axis of length ``d``.  All higher modules do their tensor
arithmetic through the array methods of :class:`Field` so that the storage
detail never leaks.

GF(p^d) is realised as GF(p)[t]/(modulus).  When no modulus is given the
monic irreducible polynomial with the smallest code sum(c_i p^i) is used.
"""

from __future__ import annotations

import itertools
import re
import string
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import FieldMismatch

_INT64_PRIME_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# --- polynomials over GF(p), coefficient lists low-to-high -----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bc) % p
        a = _trim(a)
    return a


def _monic_polys(p, degree):
    for lower in itertools.product(range(p), repeat=degree):
        yield list(reversed(lower)) + [1]


def is_irreducible(poly, p: int) -> bool:
    """Trial factorisation of ``poly`` (low-to-high) over GF(p)."""
    poly = [c % p for c in poly]
    poly = _trim(poly)
    degree = len(poly) - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    for k in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, k):
            if not _poly_rem(poly, divisor, p):
                return False
    return True


def default_modulus(p: int, d: int) -> tuple:
    """Monic irreducible polynomial of degree ``d`` with the least code."""
    if d == 1:
        return (0, 1)
    for code in range(p ** d):
        lower = [(code // p ** i) % p for i in range(d)]
        poly = lower + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ValueError(f"no irreducible polynomial of degree {d} over GF({p})")


class Field:
    """An exact field: ``Field.rational()`` or ``Field.finite(p, d)``."""

    def __init__(self, kind, p=None, d=1, modulus=None):
        self.kind = kind
        self.p = p
        self.d = d
        self.modulus = modulus
        if kind == "finite":
            self._dtype = np.int64 if p < _INT64_PRIME_LIMIT else object
            if d > 1:
                self._mul_tensor = self._build_mul_tensor()

    # -- construction -------------------------------------------------------

    @classmethod
    def rational(cls) -> "Field":
        return _QQ

    @classmethod
    def finite(cls, p: int, d: int = 1, modulus=None) -> "Field":
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"characteristic must be prime, got {p!r}")
        if not isinstance(d, int) or d < 1:
            raise ValueError(f"degree must be a positive integer, got {d!r}")
        if modulus is None:
            modulus = default_modulus(p, d)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(_trim(modulus)) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree d")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        return _finite_field(p, d, modulus)

    def _build_mul_tensor(self):
        p, d, f = self.p, self.d, self.modulus
        powers = []
        for m in range(2 * d - 1):
            mono = [0] * m + [1]
            powers.append(_poly_rem(mono, f, p) + [0] * d)
        c = np.zeros((d, d, d), dtype=self._dtype)
        for i in range(d):
            for j in range(d):
                c[i, j, :] = powers[i + j][:d]
        return c

    # -- identity -----------------------------------------------------------

    @property
    def key(self):
        if self.kind == "rational":
            return ("Q",)
        return ("GF", self.p, self.d, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        if self.kind == "rational":
            return "Field.rational()"
        if self.d == 1:
            return f"Field.finite({self.p})"
        return f"Field.finite({self.p}, {self.d}, modulus={self.modulus})"

    def __str__(self):
        return self.name

    @property
    def name(self) -> str:
        if self.kind == "rational":
            return "Q"
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d})"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def order(self):
        return self.p ** self.d if self.is_finite else None

    @property
    def characteristic(self) -> int:
        return self.p if self.is_finite else 0

    @property
    def extension(self) -> bool:
        return self.is_finite and self.d > 1

    def check_same(self, other: "Field"):
        if self != other:
            raise FieldMismatch(f"mixed fields {self} and {other}")

    # -- raw scalars --------------------------------------------------------

    @property
    def zero(self):
        if self.kind == "rational":
            return Fraction(0)
        return (0,) * self.d if self.d > 1 else 0

    @property
    def one(self):
        if self.kind == "rational":
            return Fraction(1)
        return (1,) + (0,) * (self.d - 1) if self.d > 1 else 1

    def from_int(self, n: int):
        if self.kind == "rational":
            return Fraction(n)
        if self.d > 1:
            return (n % self.p,) + (0,) * (self.d - 1)
        return n % self.p

    def coerce(self, value):
        """Turn ints, Fractions, strings, tuples or Scalars into a raw scalar."""
        if isinstance(value, Scalar):
            self.check_same(value.field)
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (bool, np.bool_)):
            return self.from_int(int(value))
        if isinstance(value, (int, np.integer)):
            return self.from_int(int(value))
        if isinstance(value, Fraction):
            if self.kind == "rational":
                return value
            num = self.from_int(value.numerator)
            return self.mul(num, self.inv(self.from_int(value.denominator)))
        if isinstance(value, (tuple, list, np.ndarray)) and self.d > 1:
            coefs = [int(c) % self.p for c in value]
            if len(coefs) != self.d:
                raise ValueError(f"expected {self.d} residues, got {len(coefs)}")
            return tuple(coefs)
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def add(self, a, b):
        if self.kind == "rational":
            return a + b
        if self.d > 1:
            return tuple((x + y) % self.p for x, y in zip(a, b))
        return (a + b) % self.p

    def neg(self, a):
        if self.kind == "rational":
            return -a
        if self.d > 1:
            return tuple((-x) % self.p for x in a)
        return (-a) % self.p

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "rational":
            return a * b
        if self.d == 1:
            return (a * b) % self.p
        prod = np.einsum("i,j,ijk->k", np.array(a, dtype=self._dtype),
                         np.array(b, dtype=self._dtype), self._mul_tensor)
        return tuple(int(c) % self.p for c in prod)

    def is_zero(self, a) -> bool:
        if self.d > 1:
            return not any(a)
        return a == 0

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.kind == "rational":
            return 1 / a
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self.power(a, self.order - 2)

    def power(self, a, n: int):
        if n < 0:
            return self.power(self.inv(a), -n)
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sort_key(self, a):
        if self.kind == "rational":
            return a
        if self.d > 1:
            return sum(c * self.p ** i for i, c in enumerate(a))
        return a

    def elements(self):
        """All elements of a finite field, in increasing ``sort_key`` order."""
        if not self.is_finite:
            raise TypeError("the rationals cannot be enumerated")
        for code in range(self.order):
            yield self.from_code(code)

    def from_code(self, code: int):
        if self.d == 1:
            return code % self.p
        return tuple((code // self.p ** i) % self.p for i in range(self.d))

    def random(self, rng, height: int = 3):
        """A random element; over Q numerators and denominators are <= height."""
        if self.is_finite:
            return self.from_code(int(rng.integers(self.order)))
        num = int(rng.integers(-height, height + 1))
        den = int(rng.integers(1, height + 1))
        return Fraction(num, den)

    # -- text syntax --------------------------------------------------------

    def format(self, a) -> str:
        if self.kind == "rational":
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        if self.d == 1:
            return str(int(a))
        terms = []
        for i in reversed(range(self.d)):
            c = a[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = "t" if i == 1 else f"t^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    _TERM = re.compile(r"^(\d+)?(\*)?(t(?:\^(\d+))?)?$")

    def parse(self, text: str):
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        if self.kind == "rational":
            if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
                raise ValueError(f"bad rational {text!r}")
            value = Fraction(s)
            return value
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
        coefs = [0] * max(self.d, 1)
        terms = re.findall(r"[+-]?[^+-]+", s)
        if "".join(terms) != s:
            raise ValueError(f"bad finite-field element {text!r}")
        for term in terms:
            sign = -1 if term.startswith("-") else 1
            body = term.lstrip("+-")
            m = self._TERM.match(body)
            if not body or not m:
                raise ValueError(f"bad finite-field element {text!r}")
            num, star, mono, exp = m.groups()
            if star and not (num and mono):
                raise ValueError(f"bad finite-field element {text!r}")
            if not num and not mono:
                raise ValueError(f"bad finite-field element {text!r}")
            c = int(num) if num else 1
            e = 0 if not mono else (int(exp) if exp else 1)
            if e >= self.d:
                if self.d == 1:
                    raise ValueError(f"{text!r}: no generator t in {self}")
                raise ValueError(f"{text!r}: exponent must be below {self.d}")
            coefs[e] = (coefs[e] + sign * c) % self.p
        if self.d == 1:
            return coefs[0]
        return tuple(coefs)

    def __call__(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    # -- field arrays -------------------------------------------------------

    def _tail(self):
        return (self.d,) if self.d > 1 else ()

    def zeros(self, shape):
        shape = tuple(shape) if not isinstance(shape, int) else (shape,)
        if self.kind == "rational":
            return np.full(shape, Fraction(0), dtype=object)
        return np.zeros(shape + self._tail(), dtype=self._dtype)

    def eye(self, n: int):
        a = self.zeros((n, n))
        for i in range(n):
            a[i, i] = self.one if self.d == 1 else np.array(self.one)
        return a

    def array(self, nested):
        """Build a field array from nested lists of anything ``coerce`` takes."""

        def conv(x):
            if isinstance(x, (list, tuple)) and not (self.d > 1 and _is_flat_residue(x, self.d)):
                return [conv(y) for y in x]
            return self.coerce(x)

        raw = conv(nested)
        if self.kind == "rational":
            out = np.empty(_nested_shape(raw), dtype=object)
            for idx in np.ndindex(out.shape):
                v = raw
                for i in idx:
                    v = v[i]
                out[idx] = v
            return out
        return np.array(raw, dtype=self._dtype).reshape(_nested_shape(raw, self.d) + self._tail())

    def shape(self, a):
        return a.shape[:-1] if self.d > 1 else a.shape

    def get(self, a, index):
        """Raw scalar stored at ``index``."""
        v = a[index]
        if self.kind == "rational":
            return Fraction(v)
        if self.d > 1:
            return tuple(int(c) for c in v)
        return int(v)

    def put(self, a, index, value):
        raw = self.coerce(value)
        a[index] = np.array(raw, dtype=self._dtype) if self.d > 1 else raw

    def scalar_array(self, raw):
        if self.d > 1:
            return np.array(raw, dtype=self._dtype)
        return raw

    def add_arrays(self, a, b):
        if self.kind == "rational":
            return a + b
        return (a + b) % self.p

    def sub_arrays(self, a, b):
        if self.kind == "rational":
            return a - b
        return (a - b) % self.p

    def neg_array(self, a):
        if self.kind == "rational":
            return -a
        return (-a) % self.p

    def scale(self, a, s):
        """Multiply every entry of the field array ``a`` by the raw scalar ``s``."""
        if self.kind == "rational":
            return a * s
        if self.d == 1:
            return (a * s) % self.p
        t = np.einsum("...i,ijk->...jk", a, self._mul_tensor) % self.p
        return np.einsum("...jk,j->...k", t, np.array(s, dtype=self._dtype)) % self.p

    def einsum(self, spec: str, a, b):
        """Two-operand ``np.einsum`` with field arithmetic."""
        if self.kind == "rational":
            return np.einsum(spec, a, b)
        if self.d == 1:
            return np.einsum(spec, a, b) % self.p
        inputs, out = spec.split("->")
        left, right = inputs.split(",")
        free = [c for c in string.ascii_letters if c not in spec]
        x, y, z = free[:3]
        pair = np.einsum(f"{left}{x},{right}{y}->{out}{x}{y}", a, b) % self.p
        return np.einsum(f"...{x}{y},{x}{y}{z}->...{z}", pair, self._mul_tensor) % self.p

    def outer(self, u, v):
        return self.einsum("i,j->ij", u, v)

    def nonzero_mask(self, a):
        if self.kind == "rational":
            return np.array([x != 0 for x in a.flat], dtype=bool).reshape(a.shape)
        if self.d > 1:
            return (a != 0).any(axis=-1)
        return a != 0

    def is_zero_array(self, a) -> bool:
        return not self.nonzero_mask(a).any()

    def equal(self, a, b) -> bool:
        if self.shape(a) != self.shape(b):
            return False
        return self.is_zero_array(self.sub_arrays(a, b))

    def first_nonzero(self, a):
        """Index tuple of the first nonzero entry in row-major order, or None."""
        mask = self.nonzero_mask(a)
        idx = np.argwhere(mask)
        if len(idx) == 0:
            return None
        return tuple(int(i) for i in idx[0])

    def sort_keys(self, a):
        """Flat list of ``sort_key`` values, used for lexicographic ordering."""
        flat_shape = (-1, self.d) if self.d > 1 else (-1,)
        return [self.sort_key(self._raw(v)) for v in a.reshape(flat_shape)]

    def _raw(self, v):
        if self.kind == "rational":
            return Fraction(v)
        if self.d > 1:
            return tuple(int(c) for c in v)
        return int(v)

    def raw_list(self, a):
        """Field array to nested lists of raw scalars."""
        if not isinstance(a, np.ndarray) or len(self.shape(a)) == 0:
            return self._raw(a)
        return [self.raw_list(row) for row in a]


def _is_flat_residue(x, d):
    return len(x) == d and all(isinstance(c, (int, np.integer)) for c in x)


def _nested_shape(raw, d=1):
    shape = []
    while isinstance(raw, list):
        shape.append(len(raw))
        if not raw:
            break
        raw = raw[0]
    return tuple(shape)


@lru_cache(maxsize=None)
def _finite_field(p, d, modulus):
    return Field("finite", p, d, modulus)


_QQ = Field("rational")


class Scalar:
    """A field element with operator overloading; immutable."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            self.field.check_same(other.field)
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __rtruediv__(self, other):
        return Scalar(self.field, self.field.mul(self._other(other), self.field.inv(self.value)))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.power(self.value, n))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except (TypeError, ValueError, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __repr__(self):
        return f"Scalar({self.field.name}, {self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)
