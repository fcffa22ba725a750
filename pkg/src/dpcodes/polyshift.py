"""Polyshifts, companion matrices, polycirculant matrices and the transpose witness Q.

Row-vector convention throughout: the polyshift sends a row vector ``v`` to
``v @ D`` where ``D`` has ones on the superdiagonal and ``c`` as its last row,
i.e. ``(0, v_0, ..., v_{n-2}) + v_{n-1} c``.  The stored companion matrix is
``T = D^t`` (subdiagonal ones, last column ``c``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF, FiniteField
from .linalg import rank
from .polyalg import Polynomial, trinomial_params


@dataclass(frozen=True)
class PolyshiftSpec:
    """Associate vector ``c``; the polyshift's polynomial is f(x) = x^n - c(x)."""

    c: tuple[int, ...]
    field: FiniteField

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.field._canon(v) for v in self.c))
        if not self.c:
            raise ValueError("associate vector must be nonempty")

    @classmethod
    def from_polynomial(cls, f: Polynomial) -> PolyshiftSpec:
        if not f.is_monic() or f.degree < 1:
            raise ValueError(f"polyshift polynomial must be monic of degree >= 1, got {f}")
        neg = f.field.neg_table
        return cls(tuple(int(neg[f.coefficient(i)]) for i in range(f.degree)), f.field)

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def polynomial(self) -> Polynomial:
        neg = self.field.neg_table
        return Polynomial([int(neg[v]) for v in self.c] + [1], self.field)

    @property
    def trinomial(self) -> tuple[int, int, int] | None:
        """``(m, a, b)`` when f = x^n - a x^m - b with a, b != 0."""
        t = trinomial_params(self.polynomial)
        return None if t is None else t[1:]

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.c, dtype=np.int64)


def companion_matrix(f: Polynomial) -> np.ndarray:
    """T = D^t: ones on the subdiagonal, last column (c_0, ..., c_{n-1})."""
    if not f.is_monic():
        raise ValueError(f"companion matrix needs a monic polynomial, got {f}")
    spec = PolyshiftSpec.from_polynomial(f)
    n = spec.n
    T = np.zeros((n, n), dtype=np.int64)
    T[np.arange(1, n), np.arange(n - 1)] = 1
    T[:, n - 1] = spec.c
    return T


def shift_matrix(spec: PolyshiftSpec) -> np.ndarray:
    """D, the right-multiplication matrix of the polyshift on row vectors."""
    return companion_matrix(spec.polynomial).T.copy()


def polyshift_apply(spec: PolyshiftSpec, v) -> np.ndarray:
    """(0, v_0, ..., v_{n-2}) + v_{n-1} c for a vector or a stack of vectors."""
    F = spec.field
    v = F.array(v)
    if v.shape[-1] != spec.n:
        raise ValueError(f"vector length {v.shape[-1]} != polyshift length {spec.n}")
    out = np.zeros_like(v)
    out[..., 1:] = v[..., :-1]
    return F.add(out, F.mul(v[..., -1:], spec.vector))


def polycirculant_stack(first_rows, spec: PolyshiftSpec) -> np.ndarray:
    """Polycirculant matrices for a ``(B, n)`` batch of first rows, shape ``(B, n, n)``."""
    rows = spec.field.array(first_rows)
    if rows.ndim != 2 or rows.shape[1] != spec.n:
        raise ValueError(f"first rows must have shape (B, {spec.n})")
    out = np.empty((rows.shape[0], spec.n, spec.n), dtype=np.int64)
    out[:, 0] = rows
    for i in range(1, spec.n):
        out[:, i] = polyshift_apply(spec, out[:, i - 1])
    return out


@dataclass(frozen=True, eq=False)
class PolycirculantMatrix:
    first_row: tuple[int, ...]
    spec: PolyshiftSpec
    rows: np.ndarray

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def field(self) -> FiniteField:
        return self.spec.field

    def __array__(self, dtype=None, copy=None):
        return self.rows if dtype is None else self.rows.astype(dtype)

    def __eq__(self, other):
        if isinstance(other, PolycirculantMatrix):
            return self.spec == other.spec and self.first_row == other.first_row
        return np.array_equal(self.rows, np.asarray(other))

    __hash__ = None


def polycirculant(a, spec: PolyshiftSpec) -> PolycirculantMatrix:
    """The matrix with rows a, T(a), ..., T^(n-1)(a)."""
    a = spec.field.array(a)
    if a.shape != (spec.n,):
        raise ValueError(f"first row must have length {spec.n}, got shape {a.shape}")
    rows = polycirculant_stack(a[None], spec)[0]
    rows.setflags(write=False)
    return PolycirculantMatrix(tuple(int(v) for v in a), spec, rows)


@dataclass(frozen=True)
class MonomialMatrix:
    """Sparse monomial matrix: row ``i`` has the single entry ``scales[i]`` in column ``perm[i]``."""

    perm: tuple[int, ...]
    scales: tuple[int, ...]
    field: FiniteField

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.scales) != n:
            raise ValueError("perm must be a permutation of 0..n-1 with one scale per row")
        if any(self.field._canon(s) == 0 for s in self.scales):
            raise ValueError("monomial scales must be nonzero")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int, field: FiniteField) -> MonomialMatrix:
        return cls(tuple(range(n)), (1,) * n, field)

    @classmethod
    def from_dense(cls, M, field: FiniteField) -> MonomialMatrix:
        M = field.array(M)
        nz = M != 0
        if not (np.all(nz.sum(axis=0) == 1) and np.all(nz.sum(axis=1) == 1)):
            raise ValueError("matrix is not monomial")
        perm = tuple(int(np.flatnonzero(r)[0]) for r in nz)
        return cls(perm, tuple(int(M[i, j]) for i, j in enumerate(perm)), field)

    def to_dense(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=np.int64)
        M[np.arange(self.n), self.perm] = self.scales
        return M

    def inverse(self) -> MonomialMatrix:
        inv = self.field.inv_table
        perm = [0] * self.n
        scales = [0] * self.n
        for i, (j, s) in enumerate(zip(self.perm, self.scales)):
            perm[j] = i
            scales[j] = int(inv[s])
        return MonomialMatrix(tuple(perm), tuple(scales), self.field)

    def __matmul__(self, other: MonomialMatrix) -> MonomialMatrix:
        # (PQ)[i, :] = s_i * Q[perm[i], :]
        mul = self.field.mul_table
        perm = tuple(other.perm[j] for j in self.perm)
        scales = tuple(int(mul[s, other.scales[j]]) for s, j in zip(self.scales, self.perm))
        return MonomialMatrix(perm, scales, self.field)

    def apply_right(self, X) -> np.ndarray:
        """X @ M for a matrix (or stack) X."""
        X = np.asarray(X)
        out = np.zeros_like(X)
        out[..., list(self.perm)] = self.field.mul(X, np.array(self.scales))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition of the underlying permutation, 1-based like the textbook notation."""
        seen, out = set(), []
        for start in range(self.n):
            if start in seen:
                continue
            cyc, i = [], start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self.perm[i]
            out.append(tuple(cyc))
        return out

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "scales": list(self.scales)}


def block_diagonal(blocks: list[MonomialMatrix]) -> MonomialMatrix:
    perm, scales, off = [], [], 0
    for b in blocks:
        perm += [p + off for p in b.perm]
        scales += list(b.scales)
        off += b.n
    return MonomialMatrix(tuple(perm), tuple(scales), blocks[0].field)


def q_monomial(n: int, m: int, b, field: FiniteField | None = None) -> MonomialMatrix:
    """Q with Q[i,j] = 1 if i+j = m+1 and b if i+j = n+m+1 (1-based indices), else 0."""
    if field is None:
        field = b.field if hasattr(b, "field") else GF(2)
    b = field._canon(b)
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")
    if b == 0:
        raise ValueError("b must be nonzero")
    perm, scales = [], []
    for i in range(1, n + 1):
        if i <= m:
            perm.append(m + 1 - i - 1)
            scales.append(1)
        else:
            perm.append(n + m + 1 - i - 1)
            scales.append(b)
    return MonomialMatrix(tuple(perm), tuple(scales), field)


def q_for_spec(spec: PolyshiftSpec) -> MonomialMatrix | None:
    t = spec.trinomial
    if t is None:
        return None
    m, _, b = t
    return q_monomial(spec.n, m, b, spec.field)


def verify_transpose_relation(A, Q: MonomialMatrix) -> bool:
    """A Q == Q A^t over the field."""
    F = Q.field
    A = np.asarray(A)
    if A.shape != (Q.n, Q.n):
        raise ValueError(f"sizes differ: A is {A.shape}, Q is {Q.n}x{Q.n}")
    Qd = Q.to_dense()
    return bool(np.array_equal(F.matmul(A, Qd), F.matmul(Qd, A.T)))


def transpose_relation_stack(As: np.ndarray, Q: MonomialMatrix) -> np.ndarray:
    """Vectorized :func:`verify_transpose_relation` over a ``(B, n, n)`` stack."""
    F = Q.field
    Qd = Q.to_dense()
    lhs = F.matmul(As, Qd)
    rhs = F.matmul(Qd, np.swapaxes(As, 1, 2))
    return np.all(lhs == rhs, axis=(1, 2))


def cyclic_vector_matrix(T, w, field: FiniteField) -> np.ndarray:
    """Rows w, Tw, ..., T^(n-1) w with T acting on column vectors."""
    T = field.array(T)
    w = field.array(w)
    rows = [w]
    for _ in range(len(w) - 1):
        rows.append(field.matmul(T, rows[-1]))
    return np.array(rows)


def is_nonsingular(M, field: FiniteField) -> bool:
    M = np.asarray(M)
    return rank(M, field) == M.shape[0]


def charpoly(M, field: FiniteField) -> Polynomial:
    """Characteristic polynomial det(xI - M) via Hessenberg reduction (any field)."""
    H = field.array(M).copy()
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1 :, j])
        if nz.size == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        tinv = int(field.inv_table[H[j + 1, j]])
        for r in range(j + 2, n):
            u = int(field.mul_table[H[r, j], tinv])
            if u:
                H[r] = field.sub(H[r], field.mul(u, H[j + 1]))
                H[:, j + 1] = field.add(H[:, j + 1], field.mul(u, H[:, r]))
    x = Polynomial.x(field)
    p = [Polynomial([1], field)]
    for k in range(n):
        nxt = (x - Polynomial([int(H[k, k])], field)) * p[k]
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = int(field.mul_table[prod, H[i + 1, i]])
            coef = int(field.mul_table[H[i, k], prod])
            if coef:
                nxt = nxt - p[i].scale(coef)
        p.append(nxt)
    return p[n]
