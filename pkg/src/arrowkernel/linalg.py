"""Exact linear algebra over prime fields GF(p) and the rationals.

Matrices are plain numpy arrays.  Over GF(p) they have dtype int64 with
entries in ``[0, p)``; over Q they have dtype object holding ``gmpy2.mpq``
values.  A :class:`Field` knows how to canonicalize, multiply and row-reduce
arrays of its kind; everything above this module goes through it.

Row vectors are the convention throughout the package: a subspace is the row
space of a matrix, and ``x @ A`` is how a matrix acts.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np

__all__ = [
    "AmbientMismatch",
    "Field",
    "Subspace",
    "is_prime",
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "subspace_ops",
]

_FLOAT_EXACT = 2**53


class AmbientMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) when ``p`` is set, otherwise the rationals."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not (isinstance(self.p, int) and 2 <= self.p < 2**31 and is_prime(self.p)):
                raise ValueError(f"GF(p) needs a prime p < 2^31, got {self.p!r}")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return self.p or 0

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    def __str__(self) -> str:
        return self.name

    # -- scalars -------------------------------------------------------
    def scalar(self, x):
        if self.p is not None:
            if isinstance(x, (Fraction, type(gmpy2.mpq()))):
                num, den = int(x.numerator), int(x.denominator)
                return num % self.p * pow(den, -1, self.p) % self.p
            return int(x) % self.p
        return gmpy2.mpq(x)

    def inverse(self, x):
        if self.p is not None:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return gmpy2.mpq(1) / x

    @property
    def zero(self):
        return 0 if self.p is not None else gmpy2.mpq(0)

    @property
    def one(self):
        return 1 if self.p is not None else gmpy2.mpq(1)

    def to_python(self, x):
        """JSON-friendly scalar: int for GF(p), int or 'a/b' string for Q."""
        if self.p is not None:
            return int(x)
        x = gmpy2.mpq(x)
        if x.denominator == 1:
            return int(x.numerator)
        return f"{int(x.numerator)}/{int(x.denominator)}"

    # -- arrays --------------------------------------------------------
    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def array(self, data) -> np.ndarray:
        if self.p is not None:
            a = np.array(data, dtype=object)
            if a.size and not all(isinstance(v, (int, np.integer)) for v in a.flat):
                a = np.vectorize(self.scalar, otypes=[object])(a)
            return (a % self.p).astype(np.int64)
        a = np.array(data, dtype=object)
        if a.size:
            a = np.vectorize(gmpy2.mpq, otypes=[object])(a)
        return a

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is not None:
            return np.zeros((rows, cols), dtype=np.int64)
        out = np.empty((rows, cols), dtype=object)
        out.fill(gmpy2.mpq(0))
        return out

    def zero_vector(self, n: int) -> np.ndarray:
        return self.zeros(1, n)[0]

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return np.mod(a, self.p)
        return a

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, a, c):
        if self.p is not None:
            return np.mod(a * (int(c) % self.p), self.p)
        return a * gmpy2.mpq(c)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.ndim == 1:
            return self.matmul(a[None, :], b)[0]
        if b.ndim == 1:
            return self.matmul(a, b[:, None])[:, 0]
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is not None:
            bound = a.shape[1] * (self.p - 1) ** 2
            if bound < _FLOAT_EXACT:
                prod = a.astype(np.float64) @ b.astype(np.float64)
                return np.mod(prod.astype(np.int64), self.p)
            # split b into 16-bit limbs so int64 accumulation cannot overflow
            if a.shape[1] * (self.p - 1) * 2**16 < 2**63:
                lo = b & 0xFFFF
                hi = b >> 16
                r_lo = np.mod(a @ lo, self.p)
                r_hi = np.mod(a @ hi, self.p)
                return np.mod(r_lo + np.mod(r_hi * (2**16 % self.p), self.p), self.p)
            return np.mod(a.astype(object) @ b.astype(object), self.p).astype(np.int64)
        return _object_matmul(a, b)

    def is_zero(self, a: np.ndarray) -> bool:
        if self.p is not None:
            return not np.any(a)
        return all(v == 0 for v in a.flat)


def _object_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sparse-aware product for object arrays; cost ~ rows(a) * nnz(b)."""
    out = np.empty((a.shape[0], b.shape[1]), dtype=object)
    out.fill(gmpy2.mpq(0))
    nz_b = b != 0
    rows_a_nz = a != 0
    for i in range(b.shape[0]):
        cols = np.flatnonzero(nz_b[i])
        if cols.size == 0:
            continue
        ai = a[:, i]
        rows = np.flatnonzero(rows_a_nz[:, i])
        if rows.size == 0:
            continue
        out[np.ix_(rows, cols)] += np.multiply.outer(ai[rows], b[i, cols])
    return out


def _rref_inplace(F: Field, m: np.ndarray) -> list[int]:
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    p = F.p
    for c in range(cols):
        if r >= rows:
            break
        col = m[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = F.inverse(m[r, c])
        if p is not None:
            m[r] = np.mod(m[r] * inv, p)
        else:
            m[r] = m[r] * inv
        others = np.flatnonzero(m[:, c] != 0)
        others = others[others != r]
        if others.size:
            support = np.flatnonzero(m[r] != 0)
            if p is not None:
                upd = np.multiply.outer(m[others, c], m[r, support])
                m[np.ix_(others, support)] = np.mod(m[np.ix_(others, support)] - upd, p)
            else:
                upd = np.multiply.outer(m[others, c], m[r, support])
                m[np.ix_(others, support)] = m[np.ix_(others, support)] - upd
        pivots.append(c)
        r += 1
    return pivots


def rref(F: Field, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form (same shape as ``m``) and its pivot columns."""
    work = np.array(m, dtype=F.dtype, copy=True)
    if work.ndim != 2:
        work = work.reshape(len(work), -1)
    if work.size == 0:
        return work, []
    pivots = _rref_inplace(F, work)
    return work, pivots


def rank(F: Field, m: np.ndarray) -> int:
    if m.size == 0:
        return 0
    return len(rref(F, m)[1])


def nullspace(F: Field, m: np.ndarray) -> "Subspace":
    """Right kernel {v : m @ v = 0} in canonical (RREF) form."""
    m = np.asarray(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(F, cols)
    R, piv = rref(F, m)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = F.zeros(len(free), cols)
    for k, fcol in enumerate(free):
        basis[k, fcol] = F.one
        for i, pc in enumerate(piv):
            if R[i, fcol] != 0:
                basis[k, pc] = F.neg(R[i, fcol]) if F.p is None else (-int(R[i, fcol])) % F.p
    return Subspace.from_rows(F, basis, cols)


def left_nullspace(F: Field, m: np.ndarray) -> "Subspace":
    """{x : x @ m = 0}."""
    m = np.asarray(m)
    return nullspace(F, m.T)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis``; the basis is always in RREF with no zero rows."""

    field: Field
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...] = dc_field(default=())

    @classmethod
    def from_rows(cls, F: Field, rows, ambient_dim: int | None = None) -> "Subspace":
        rows = np.asarray(rows, dtype=F.dtype) if not isinstance(rows, np.ndarray) else rows
        if ambient_dim is None:
            ambient_dim = rows.shape[1]
        if rows.size == 0:
            return cls(F, ambient_dim, F.zeros(0, ambient_dim), ())
        R, piv = rref(F, rows.reshape(-1, ambient_dim))
        basis = R[: len(piv)].copy()
        basis.setflags(write=False)
        return cls(F, ambient_dim, basis, tuple(piv))

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, F.zeros(0, n), ())

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        b = F.eye(n)
        b.setflags(write=False)
        return cls(F, n, b, tuple(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.pivots))

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of vectors known to lie in the subspace (RREF pivot trick)."""
        vectors = np.asarray(vectors)
        if vectors.ndim == 1:
            return vectors[list(self.pivots)]
        return vectors[:, list(self.pivots)]

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Remainder of each row after eliminating the pivot columns."""
        F = self.field
        vectors = np.array(vectors, dtype=F.dtype, copy=True)
        single = vectors.ndim == 1
        if single:
            vectors = vectors[None, :]
        if self.dim:
            coeff = vectors[:, list(self.pivots)]
            vectors = F.sub(vectors, F.matmul(coeff, self.basis))
        return vectors[0] if single else vectors

    def contains_vectors(self, vectors: np.ndarray) -> bool:
        r = self.reduce(vectors)
        return self.field.is_zero(r)

    def contains(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return other.dim == 0 or self.contains_vectors(other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace.from_rows(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        F = self.field
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(F, self.ambient_dim)
        # x A = y B  <=>  [x, -y] [A; B] = 0
        stacked = np.vstack([self.basis, other.basis])
        ker = left_nullspace(F, stacked)
        if ker.dim == 0:
            return Subspace.zero(F, self.ambient_dim)
        vecs = F.matmul(ker.basis[:, : self.dim], self.basis)
        return Subspace.from_rows(F, vecs, self.ambient_dim)

    def complement_coordinates(self) -> list[int]:
        return [c for c in range(self.ambient_dim) if c not in set(self.pivots)]


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient dims differ: {a.ambient_dim} vs {b.ambient_dim}")
    if a.field != b.field:
        raise AmbientMismatch(f"fields differ: {a.field} vs {b.field}")


def subspace_ops(a: Subspace, b: Subspace) -> dict:
    s = a + b
    return {"sum": s, "intersection": a.intersection(b), "contains": s == a}


def stack(F: Field, blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return F.zeros(0, cols)
    return np.vstack(blocks)


def block_diag(F: Field, mats: Iterable[np.ndarray]) -> np.ndarray:
    mats = list(mats)
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = F.zeros(r, c)
    i = j = 0
    for m in mats:
        out[i : i + m.shape[0], j : j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out
