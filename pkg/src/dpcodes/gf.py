"""Arithmetic in the small finite fields F_2, F_3, F_4, F_5 and F_7.

Elements are stored by their serialized integer value.  Prime fields use the
residue in ``[0, p)``; F_4 = F_2[x]/(x^2+x+1) maps ``c0 + c1*w`` to
``c0 + 2*c1`` so that 0, 1, w, w+1 serialize as 0, 1, 2, 3 and addition is XOR.

Scalar code goes through :class:`FieldElement`.  Bulk code works on numpy integer
arrays of serialized values through the vectorized methods on
:class:`FiniteField`.  F_2 additionally has a packed lane (rows stored as bits
of ``uint64`` words) used by the distance kernels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

SUPPORTED_ORDERS = (2, 3, 4, 5, 7)


class FieldMismatchError(ValueError):
    """Raised when elements of different fields meet in one operation."""


@dataclass(frozen=True, eq=False)
class FiniteField:
    """The field of order ``q``.  Obtain instances through :func:`GF`."""

    q: int
    characteristic: int
    modulus: tuple[int, ...] | None = None
    add_table: np.ndarray = field(repr=False, default=None)
    mul_table: np.ndarray = field(repr=False, default=None)
    neg_table: np.ndarray = field(repr=False, default=None)
    inv_table: np.ndarray = field(repr=False, default=None)

    @property
    def is_prime(self) -> bool:
        return self.modulus is None

    def __eq__(self, other):
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def __repr__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (GF, (self.q,))

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self._canon(value), self)

    def __iter__(self):
        return (FieldElement(v, self) for v in range(self.q))

    def __len__(self):
        return self.q

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def _canon(self, value) -> int:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(f"{value!r} is not an element of {self!r}")
            return value.value
        value = int(value)
        if self.is_prime:
            return value % self.q
        if not 0 <= value < self.q:
            raise ValueError(f"F_{self.q} elements are serialized as 0..{self.q - 1}, got {value}")
        return value

    # -- vectorized arithmetic on arrays of serialized values -----------------
    def array(self, values) -> np.ndarray:
        arr = np.asarray(values, dtype=np.int64)
        if self.is_prime:
            return arr % self.q
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ValueError(f"values out of range for {self!r}")
        return arr

    def add(self, x, y):
        if self.q == 4:
            return np.bitwise_xor(x, y)
        return (np.asarray(x) + y) % self.q

    def sub(self, x, y):
        if self.q == 4:
            return np.bitwise_xor(x, y)
        return (np.asarray(x) - y) % self.q

    def neg(self, x):
        if self.q == 4:
            return np.asarray(x).copy()
        return (-np.asarray(x)) % self.q

    def mul(self, x, y):
        if self.q == 4:
            return self.mul_table[x, y]
        return (np.asarray(x) * y) % self.q

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise ZeroDivisionError("inversion of zero")
        return self.inv_table[x]

    def matmul(self, x, y) -> np.ndarray:
        """Matrix product of (stacks of) matrices over the field."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.is_prime:
            return np.matmul(x, y) % self.q
        if x.ndim == 1:
            return self.matmul(x[None, :], y)[0]
        if y.ndim == 1:
            return self.matmul(x, y[:, None])[..., 0]
        out = None
        for t in range(x.shape[-1]):
            term = self.mul_table[x[..., :, t, None], y[..., None, t, :]]
            out = term if out is None else out ^ term
        return out

    def dot(self, x, y) -> int:
        return int(self.matmul(np.asarray(x)[None, :], np.asarray(y)[:, None])[0, 0])


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`FiniteField`."""

    value: int
    field: FiniteField

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        return self.field._canon(other)

    def __add__(self, other):
        return FieldElement(int(self.field.add_table[self.value, self._other(other)]), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(int(self.field.add_table[self.value, self.field.neg_table[o]]), self.field)

    def __rsub__(self, other):
        return FieldElement(self._other(other), self.field) - self

    def __neg__(self):
        return FieldElement(int(self.field.neg_table[self.value]), self.field)

    def __mul__(self, other):
        return FieldElement(int(self.field.mul_table[self.value, self._other(other)]), self.field)

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("inversion of zero")
        return FieldElement(int(self.field.inv_table[self.value]), self.field)

    def __truediv__(self, other):
        return self * FieldElement(self._other(other), self.field).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = self.field.one, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            other = int(other)
            return self.value == (other % self.field.q if self.field.is_prime else other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        if self.field.q == 4:
            return ("0", "1", "w", "w+1")[self.value]
        return f"{self.value} (mod {self.field.q})"


def _f4_mul(x: int, y: int) -> int:
    # carry-less product then reduce by x^2 = x + 1
    r = 0
    for i in range(2):
        if (y >> i) & 1:
            r ^= x << i
    if r & 4:
        r ^= 0b111
    return r


@lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    """Return the (cached) field of order ``q``."""
    if q not in SUPPORTED_ORDERS:
        raise ValueError(f"unsupported field order {q}; expected one of {SUPPORTED_ORDERS}")
    vals = np.arange(q)
    if q == 4:
        p, modulus = 2, (1, 1, 1)
        add = vals[:, None] ^ vals[None, :]
        mul = np.array([[_f4_mul(x, y) for y in range(4)] for x in range(4)])
        neg = vals.copy()
    else:
        p, modulus = q, None
        add = (vals[:, None] + vals[None, :]) % q
        mul = (vals[:, None] * vals[None, :]) % q
        neg = (-vals) % q
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = int(np.flatnonzero(mul[x] == 1)[0])
    tables = []
    for t in (add, mul, neg, inv):
        t = np.ascontiguousarray(t, dtype=np.int64)
        t.setflags(write=False)
        tables.append(t)
    return FiniteField(q, p, modulus, *tables)


def fe_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def fe_sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def fe_neg(x: FieldElement) -> FieldElement:
    return -x


def fe_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def fe_inv(x: FieldElement) -> FieldElement:
    return x.inverse()


# -- packed F_2 lane -----------------------------------------------------------

def pack_bits(bits) -> np.ndarray:
    """Pack a (..., N) 0/1 array into (..., ceil(N/64)) uint64 words, bit j of word w = column 64w+j."""
    bits = np.asarray(bits, dtype=np.uint64) & np.uint64(1)
    N = bits.shape[-1]
    W = max(1, -(-N // 64))
    out = np.zeros(bits.shape[:-1] + (W,), dtype=np.uint64)
    for j in range(N):
        out[..., j // 64] |= bits[..., j] << np.uint64(j % 64)
    return out


def unpack_bits(words: np.ndarray, N: int) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint64)
    out = np.empty(words.shape[:-1] + (N,), dtype=np.int64)
    for j in range(N):
        out[..., j] = ((words[..., j // 64] >> np.uint64(j % 64)) & np.uint64(1)).astype(np.int64)
    return out


def packed_weight(words: np.ndarray) -> np.ndarray:
    """Hamming weight of packed F_2 vectors along the last axis."""
    return np.bitwise_count(words).sum(axis=-1, dtype=np.int64)


def packed_dot(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Standard inner product of packed F_2 vectors (parity of the AND)."""
    return packed_weight(np.bitwise_and(x, y)) & 1
