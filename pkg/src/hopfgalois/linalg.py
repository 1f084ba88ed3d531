"""Dense exact linear algebra over a :class:`~hopfgalois.fields.Field`.

Two layers live here.  The functions prefixed with nothing and taking a
field first (``rref(F, A)``, ``nullspace(F, A)``, ...) work on raw field
arrays and are what the rest of the package uses.  :class:`Matrix`,
:func:`solve`, :func:`kernel` and friends wrap them with Scalars for
interactive use.

Conventions: ``solve`` and ``kernel`` use the usual ``A x = b`` reading.
Everywhere else in the package a linear map is stored as ``f[input, output]``
so that ``x @ f`` applies it.

A :class:`Subspace` keeps its basis in *reverse reduced echelon form*: the
last nonzero entry of every row is a 1 (its pivot), all other rows vanish
at that column, and rows are sorted by pivot.  The form is unique, so two
subspaces are equal exactly when their bases are equal entry by entry, and
the coordinates of a vector in the subspace are simply its pivot entries.
It is also the shape in which free-variable kernel bases come out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, FieldMismatch
from .fields import Field, Scalar


def tr(A):
    """Transpose the two matrix axes, leaving any residue axis in place."""
    return np.swapaxes(A, 0, 1)


def matmul(F: Field, A, B):
    return F.einsum("ij,jk->ik", A, B)


def vecmat(F: Field, v, A):
    return F.einsum("i,ij->j", v, A)


def kron(F: Field, A, B):
    """Kronecker product of two matrices (row index pairs flattened row-major)."""
    m, n = F.shape(A)
    r, s = F.shape(B)
    out = F.einsum("ij,kl->ikjl", A, B)
    return out.reshape((m * r, n * s) + out.shape[4:])


def rref(F: Field, A):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = np.array(A, copy=True)
    m, n = F.shape(R)[:2] if R.ndim else (0, 0)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(F.nonzero_mask(R[r:, c]))
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = F.scale(R[r], F.inv(F.get(R, (r, c))))
        mask = F.nonzero_mask(R[:, c])
        mask[r] = False
        rows = np.flatnonzero(mask)
        if len(rows):
            R[rows] = F.sub_arrays(R[rows], F.einsum("i,j->ij", R[rows, c], R[r]))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: Field, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F: Field, A):
    """Basis rows (k, n) of ``{x : A x = 0}`` in reverse echelon form."""
    m, n = F.shape(A)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in set(pivots)]
    K = F.zeros((len(free), n))
    for i, f in enumerate(free):
        K[i, f] = F.scalar_array(F.one)
        for r, p in enumerate(pivots):
            K[i, p] = F.neg_array(R[r, f])
    return K


def solve_system(F: Field, A, b):
    """Solve ``A x = b``; return ``(x, kernel_rows)`` or ``(None, kernel_rows)``."""
    m, n = F.shape(A)
    if F.shape(b) != (m,):
        raise DimensionMismatch(f"right-hand side has shape {F.shape(b)}, expected ({m},)")
    aug = np.concatenate([A, b[:, None]], axis=1)
    R, pivots = rref(F, aug)
    K = nullspace(F, A)
    if pivots and pivots[-1] == n:
        return None, K
    x = F.zeros(n)
    for r, p in enumerate(pivots):
        x[p] = R[r, n]
    return x, K


def solve_many(F: Field, A, Bcols):
    """Solve ``A X = B`` column by column; returns ``X`` or None if inconsistent."""
    m, n = F.shape(A)
    k = F.shape(Bcols)[1]
    aug = np.concatenate([A, Bcols], axis=1)
    R, pivots = rref(F, aug)
    if any(p >= n for p in pivots):
        return None
    X = F.zeros((n, k))
    for r, p in enumerate(pivots):
        X[p] = R[r, n:]
    return X


def inverse(F: Field, A):
    """Inverse of a square matrix, or None when singular."""
    n, m = F.shape(A)
    if n != m:
        raise DimensionMismatch("inverse of a non-square matrix")
    R, pivots = rref(F, np.concatenate([A, F.eye(n)], axis=1))
    if pivots[:n] != list(range(n)):
        return None
    return R[:, n:]


def determinant_is_zero(F: Field, A) -> bool:
    n = F.shape(A)[0]
    return rank(F, A) < n


class Subspace:
    """A subspace of ``field^ambient`` with canonical basis rows."""

    def __init__(self, field: Field, ambient: int, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = list(pivots)

    @classmethod
    def span(cls, field: Field, ambient: int, rows) -> "Subspace":
        rows = np.asarray(rows) if not isinstance(rows, np.ndarray) else rows
        if rows.size == 0 or F_rows(field, rows) == 0:
            return cls(field, ambient, field.zeros((0, ambient)), [])
        if field.shape(rows)[1] != ambient:
            raise DimensionMismatch("spanning vectors have the wrong length")
        rev = rows[:, ::-1]
        R, pivots = rref(field, rev)
        R = R[: len(pivots), ::-1]
        piv = [ambient - 1 - p for p in pivots]
        order = np.argsort(piv, kind="stable")
        return cls(field, ambient, R[order], [piv[i] for i in order])

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.zeros((0, ambient)), [])

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, field.eye(ambient), list(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, V):
        """Reduce rows of ``V`` modulo the subspace (zero exactly on members)."""
        if self.dim == 0:
            return V
        single = len(self.field.shape(V)) == 1
        W = V[None] if single else V
        out = self.field.sub_arrays(W, self.field.einsum("ij,jk->ik", W[:, self.pivots], self.basis))
        return out[0] if single else out

    def contains(self, v) -> bool:
        return self.field.is_zero_array(self.reduce(v))

    def contains_all(self, V) -> bool:
        return self.field.is_zero_array(self.reduce(V))

    def coordinates(self, v):
        """Coordinates of a member ``v`` (or rows of members) in the canonical basis."""
        return v[..., self.pivots] if self.field.d == 1 else v[..., self.pivots, :]

    def from_coordinates(self, c):
        if self.dim == 0:
            shape = self.field.shape(c)[:-1] + (self.ambient,)
            return self.field.zeros(shape)
        if len(self.field.shape(c)) == 1:
            return self.field.einsum("i,ij->j", c, self.basis)
        return self.field.einsum("ki,ij->kj", c, self.basis)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return other.contains_all(self.basis) if self.dim else True

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, np.concatenate([self.basis, other.basis]))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.pivots == other.pivots and self.field.equal(self.basis, other.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field.name})"

    @property
    def basis_matrix(self) -> "Matrix":
        return Matrix(self.field, self.basis)

    def __contains__(self, v):
        if isinstance(v, Matrix):
            v = v.data
        elif not isinstance(v, np.ndarray):
            v = self.field.array(list(v))
        return self.contains(v)


def F_rows(field: Field, rows) -> int:
    return field.shape(rows)[0]


def kernel_subspace(F: Field, A) -> Subspace:
    n = F.shape(A)[1]
    K = nullspace(F, A)
    return Subspace(F, n, K, _reverse_pivots(F, K))


def _reverse_pivots(F: Field, K):
    piv = []
    mask = F.nonzero_mask(K)
    for row in mask:
        piv.append(int(np.flatnonzero(row)[-1]))
    return piv


@dataclass
class Quotient:
    """``V / R`` with the complement of the pivot columns as chosen section.

    ``proj`` is ``(n, q)`` and ``sect`` is ``(q, n)`` in row convention, so
    ``v @ proj`` projects and ``c @ sect`` lifts.
    """

    field: Field
    relations: Subspace
    complement: list
    proj: object
    sect: object

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, V):
        return _apply(self.field, V, self.proj)

    def lift(self, C):
        return _apply(self.field, C, self.sect)

    @property
    def projection(self) -> "Matrix":
        return Matrix(self.field, tr(self.proj))

    @property
    def section(self) -> "Matrix":
        return Matrix(self.field, tr(self.sect))


def _apply(F: Field, V, M):
    if len(F.shape(V)) == 1:
        return F.einsum("i,ij->j", V, M)
    return F.einsum("ki,ij->kj", V, M)


def quotient(F: Field, R: Subspace) -> Quotient:
    n = R.ambient
    pivset = set(R.pivots)
    comp = [c for c in range(n) if c not in pivset]
    q = len(comp)
    proj = F.zeros((n, q))
    sect = F.zeros((q, n))
    one = F.scalar_array(F.one)
    for k, c in enumerate(comp):
        proj[c, k] = one
        sect[k, c] = one
    for j, p in enumerate(R.pivots):
        proj[p] = F.neg_array(R.basis[j, comp])
    return Quotient(F, R, comp, proj, sect)


# --- Scalar-facing API -------------------------------------------------------

class Matrix:
    """A dense matrix (or vector when 1-D) over an exact field."""

    def __init__(self, field: Field, data):
        self.field = field
        if isinstance(data, np.ndarray):
            self.data = data
        else:
            self.data = field.array(data)
        if len(field.shape(self.data)) not in (1, 2):
            raise DimensionMismatch("a Matrix is one- or two-dimensional")

    @property
    def shape(self):
        return self.field.shape(self.data)

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1] if len(self.shape) == 2 else 1

    def __getitem__(self, idx):
        return Scalar(self.field, self.field.get(self.data, idx))

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.field != other.field:
            raise FieldMismatch(f"mixed fields {self.field} and {other.field}")

    def __matmul__(self, other):
        self._check(other)
        a, b = len(self.shape), len(other.shape)
        if self.shape[-1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        spec = {(2, 2): "ij,jk->ik", (2, 1): "ij,j->i", (1, 2): "i,ij->j", (1, 1): "i,i->"}[(a, b)]
        out = self.field.einsum(spec, self.data, other.data)
        if a == b == 1:
            return Scalar(self.field, self.field._raw(out))
        return Matrix(self.field, out)

    def __add__(self, other):
        self._check(other)
        return Matrix(self.field, self.field.add_arrays(self.data, other.data))

    def __sub__(self, other):
        self._check(other)
        return Matrix(self.field, self.field.sub_arrays(self.data, other.data))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.field.equal(self.data, other.data)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, tr(self.data))

    def is_zero(self) -> bool:
        return self.field.is_zero_array(self.data)

    def tolist(self):
        return self.field.raw_list(self.data)

    def __repr__(self):
        fmt = self.field.format
        raw = self.tolist()
        if len(self.shape) == 1:
            body = ", ".join(fmt(x) for x in raw)
        else:
            body = "; ".join(", ".join(fmt(x) for x in row) for row in raw)
        return f"Matrix({self.field.name}, [{body}])"

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, field.eye(n))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros((rows, cols)))


@dataclass
class Solution:
    particular: Matrix | None
    kernel: Subspace

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def _as_vector(field, b):
    return b if isinstance(b, Matrix) else Matrix(field, b)


def solve(A: Matrix, b) -> Solution:
    """Solve ``A x = b``; free variables are set to zero in the particular solution."""
    b = _as_vector(A.field, b)
    A._check(b)
    if len(b.shape) != 1 or b.shape[0] != A.rows:
        raise DimensionMismatch(f"right-hand side of length {b.shape} for {A.rows} equations")
    x, K = solve_system(A.field, A.data, b.data)
    ker = Subspace(A.field, A.cols, K, _reverse_pivots(A.field, K))
    return Solution(None if x is None else Matrix(A.field, x), ker)


def kernel(A: Matrix) -> Subspace:
    return kernel_subspace(A.field, A.data)


def matrix_rank(A: Matrix) -> int:
    return rank(A.field, A.data)


def matrix_inverse(A: Matrix) -> Matrix | None:
    inv = inverse(A.field, A.data)
    return None if inv is None else Matrix(A.field, inv)


def span(field: Field, vectors) -> Subspace:
    data = vectors.data if isinstance(vectors, Matrix) else field.array(vectors)
    return Subspace.span(field, field.shape(data)[1], data)


def quotient_with_section(V: int, R: Subspace) -> Quotient:
    """Quotient of ``field^V`` by ``R``; see :class:`Quotient` for conventions."""
    if R.ambient != V:
        raise DimensionMismatch(f"relations live in dimension {R.ambient}, not {V}")
    return quotient(R.field, R)
