"""Linear codes, double polycirculant (DP) codes and their duality predicates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .distance import DEFAULT_BUDGET, DistanceResult, minimum_distance, weight_histogram
from .gf import FiniteField
from .linalg import nullspace, rank, rref_stack, same_row_space
from .polyalg import format_poly
from .polyshift import (
    MonomialMatrix,
    PolycirculantMatrix,
    PolyshiftSpec,
    block_diagonal,
    polycirculant,
    polycirculant_stack,
    q_for_spec,
    transpose_relation_stack,
)


class WitnessError(AssertionError):
    """The constructed isoduality witness failed verification."""


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Row space of a full-rank ``k x N`` generator matrix over ``field``."""

    generator: np.ndarray
    field: FiniteField

    def __post_init__(self):
        G = self.field.array(self.generator)
        if G.ndim != 2:
            raise ValueError("generator must be a matrix")
        if rank(G, self.field) != G.shape[0]:
            raise ValueError("generator rows must be linearly independent")
        G.setflags(write=False)
        object.__setattr__(self, "generator", G)

    @property
    def N(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def q(self) -> int:
        return self.field.q

    def dual(self) -> LinearCode:
        return LinearCode(dual_generator(self), self.field)

    def contains(self, x) -> bool:
        x = self.field.array(x)
        return rank(np.vstack([self.generator, x[None]]), self.field) == self.k


@dataclass(frozen=True, eq=False)
class DPCode(LinearCode):
    """Code generated by (I | A) with A polycirculant."""

    spec: PolyshiftSpec = dc_field(default=None)
    A: PolycirculantMatrix = dc_field(default=None)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def first_row(self) -> tuple[int, ...]:
        return self.A.first_row

    @property
    def is_degenerate(self) -> bool:
        return not any(self.first_row)


def dp_code(a, spec: PolyshiftSpec) -> DPCode:
    A = polycirculant(a, spec)
    G = np.hstack([np.eye(spec.n, dtype=np.int64), A.rows])
    return DPCode(G, spec.field, spec, A)


def dual_generator(code: LinearCode) -> np.ndarray:
    """Generator of the dual code; (-A^t | I) for DP codes."""
    F = code.field
    if isinstance(code, DPCode):
        return np.hstack([F.neg(code.A.rows.T), np.eye(code.n, dtype=np.int64)])
    return nullspace(code.generator, F)


# -- weight enumerators ----------------------------------------------------------

@dataclass(frozen=True)
class WeightEnumerator:
    """Weight distribution: ``counts[w]`` codewords of weight ``w`` (zero counts omitted)."""

    counts: dict[int, int]
    N: int
    q: int

    def __post_init__(self):
        counts = {int(w): int(c) for w, c in sorted(self.counts.items()) if c}
        if counts.get(0) != 1:
            raise ValueError("a linear code has exactly one codeword of weight 0")
        if any(not 0 <= w <= self.N for w in counts):
            raise ValueError("weights must lie in [0, N]")
        size = sum(counts.values())
        k = round(math.log(size, self.q))
        if self.q**k != size:
            raise ValueError(f"total count {size} is not a power of {self.q}")
        object.__setattr__(self, "counts", counts)

    @property
    def size(self) -> int:
        return sum(self.counts.values())

    @property
    def k(self) -> int:
        return round(math.log(self.size, self.q))

    @property
    def min_weight(self) -> int | None:
        nz = [w for w in self.counts if w > 0]
        return min(nz) if nz else None

    def to_json(self) -> dict[str, int]:
        return {str(w): c for w, c in self.counts.items()}


def weight_enumerator(code: LinearCode, *, budget: int = DEFAULT_BUDGET, workers: int = 1) -> WeightEnumerator:
    hist = weight_histogram(code.generator, code.field, budget=budget, workers=workers)
    return WeightEnumerator({w: int(c) for w, c in enumerate(hist) if c}, code.N, code.q)


def _krawtchouk(j: int, i: int, N: int, q: int) -> int:
    return sum(
        (-1) ** s * (q - 1) ** (j - s) * math.comb(i, s) * math.comb(N - i, j - s) for s in range(j + 1)
    )


def macwilliams_transform(W: WeightEnumerator) -> WeightEnumerator:
    """Weight distribution of the dual, from W alone: q^-k W(x + (q-1)y, x - y)."""
    size = W.size
    out = {}
    for j in range(W.N + 1):
        total = sum(c * _krawtchouk(j, i, W.N, W.q) for i, c in W.counts.items())
        if total % size:
            raise ArithmeticError("MacWilliams transform produced a non-integral count")
        if total:
            out[j] = total // size
    return WeightEnumerator(out, W.N, W.q)


def is_fsd(code: LinearCode, *, budget: int = DEFAULT_BUDGET) -> bool:
    W = weight_enumerator(code, budget=budget)
    return W == macwilliams_transform(W)


# -- duality predicates ----------------------------------------------------------

def _half_swap(n: int, field: FiniteField) -> MonomialMatrix:
    # (X | Y) -> (Y | -X)
    minus_one = int(field.neg_table[1])
    perm = tuple(range(n, 2 * n)) + tuple(range(n))
    return MonomialMatrix(perm, (minus_one,) * n + (1,) * n, field)


def witness_for_spec(spec: PolyshiftSpec) -> MonomialMatrix | None:
    """The 2n x 2n monomial map sending every trinomial DP code's dual onto the code.

    With A Q = Q A^t we have -A^t = -Q^-1 A Q, so (-A^t | I) diag(Q^-1, Q^-1)
    = Q^-1 (-A | I), and swapping halves with a sign gives Q^-1 (I | A).
    """
    Q = q_for_spec(spec)
    if Q is None:
        return None
    Qi = Q.inverse()
    return block_diagonal([Qi, Qi]) @ _half_swap(spec.n, spec.field)


def is_self_dual(code: LinearCode) -> bool:
    F = code.field
    if isinstance(code, DPCode):
        A = code.A.rows
        return bool(np.array_equal(F.matmul(A, A.T), F.neg(np.eye(code.n, dtype=np.int64))))
    G = code.generator
    return 2 * code.k == code.N and not F.matmul(G, G.T).any()


def isodual_witness(code: LinearCode) -> MonomialMatrix | None:
    """A monomial M with rowspace(dual_generator(code) @ M) == rowspace(G), or None.

    Self-dual codes get the identity.  Trinomial DP codes get the block witness
    built from Q, verified by comparing reduced row-echelon forms.
    """
    if is_self_dual(code):
        return MonomialMatrix.identity(code.N, code.field)
    if not isinstance(code, DPCode):
        return None
    M = witness_for_spec(code.spec)
    if M is None:
        return None
    mapped = M.apply_right(dual_generator(code))
    if not same_row_space(mapped, code.generator, code.field):
        raise WitnessError(f"isoduality witness failed for a={code.first_row}, f={format_poly(code.spec.polynomial)}")
    return M


def isoduality_stack(spec: PolyshiftSpec, first_rows) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized check over many first rows for one trinomial spec.

    Returns two boolean arrays: A Q == Q A^t, and RREF(H M) == RREF(G).
    """
    F = spec.field
    Q = q_for_spec(spec)
    if Q is None:
        raise ValueError("isoduality witness needs a trinomial polyshift")
    As = polycirculant_stack(first_rows, spec)
    B, n = As.shape[0], spec.n
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), (B, n, n))
    G = np.concatenate([eye, As], axis=2)
    H = np.concatenate([F.neg(np.swapaxes(As, 1, 2)), eye], axis=2)
    X = witness_for_spec(spec).apply_right(H)
    # (I | A) is already reduced, so it is its own canonical form
    RX, rX = rref_stack(X, F)
    rows_ok = (rX == n) & np.all(RX == G, axis=(1, 2))
    return transpose_relation_stack(As, Q), rows_ok


def is_even(code: LinearCode) -> bool:
    """Binary only: every codeword has even weight iff every generator row does."""
    if code.q != 2:
        raise ValueError("evenness is defined for binary codes only")
    return bool(np.all(np.count_nonzero(code.generator, axis=1) % 2 == 0))


def self_dual_stack(spec: PolyshiftSpec, first_rows) -> np.ndarray:
    """Vectorized :func:`is_self_dual` for the DP codes of many first rows: A A^t == -I."""
    F = spec.field
    As = polycirculant_stack(first_rows, spec)
    minus_eye = F.neg(np.eye(spec.n, dtype=np.int64))
    return np.all(F.matmul(As, np.swapaxes(As, 1, 2)) == minus_eye, axis=(1, 2))


def even_stack(spec: PolyshiftSpec, first_rows) -> np.ndarray:
    """Vectorized :func:`is_even`: (I | A) is even iff every row of A has odd weight."""
    if spec.field.q != 2:
        raise ValueError("evenness is defined for binary codes only")
    As = polycirculant_stack(first_rows, spec)
    return np.all(As.sum(axis=2) % 2 == 1, axis=1)


def min_distance(
    code: LinearCode,
    budget: int = DEFAULT_BUDGET,
    *,
    engine: str = "auto",
    workers: int = 1,
    stop_below: int | None = None,
) -> DistanceResult:
    return minimum_distance(
        code.generator, code.field, budget=budget, engine=engine, workers=workers, stop_below=stop_below
    )


def first_row_bound(a) -> int:
    """d <= 1 + wt(a): the first generator row is (1, 0, ..., 0 | a)."""
    return 1 + int(np.count_nonzero(a))


# -- summaries -------------------------------------------------------------------

@dataclass(frozen=True)
class CodeSummary:
    q: int
    n: int
    f: str
    a: tuple[int, ...]
    d: int
    enumerator: WeightEnumerator | None
    flags: dict
    certified: bool
    degenerate: bool = False

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "f": self.f,
            "a": list(self.a),
            "d": self.d,
            "enumerator": None if self.enumerator is None else self.enumerator.to_json(),
            "flags": dict(self.flags),
            "certified": self.certified,
            "degenerate": self.degenerate,
        }


def summarize(code: DPCode, *, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CodeSummary:
    """Distance, enumerator (when q^n fits the budget) and duality flags of a DP code."""
    dist = min_distance(code, budget, workers=workers)
    enum = None
    if code.q**code.k <= budget:
        enum = weight_enumerator(code, budget=budget, workers=workers)
        if dist.certified and enum.min_weight != dist.d:
            raise AssertionError("distance engine disagrees with the weight enumerator")
    self_dual = is_self_dual(code)
    isodual = self_dual or isodual_witness(code) is not None
    if enum is not None:
        fsd = enum == macwilliams_transform(enum)
        if isodual and not fsd:
            raise AssertionError("isodual code with a non-FSD enumerator")
    else:
        fsd = isodual
    flags = {
        "isodual": isodual,
        "fsd": fsd,
        "self_dual": self_dual,
        "even": is_even(code) if code.q == 2 else None,
    }
    return CodeSummary(
        code.q,
        code.n,
        format_poly(code.spec.polynomial),
        code.first_row,
        dist.d,
        enum,
        flags,
        dist.certified,
        code.is_degenerate,
    )
