"""Search over DP-code space, counting experiments and Gilbert-Varshamov utilities.

Search determinism: exhaustive sweeps visit first rows in lexicographic order of
their serialized digits (a_0 most significant), trinomial by trinomial.  Random
sweeps draw ``budget`` samples in blocks of ``block`` samples; block ``j`` uses
the PCG64 stream seeded by ``SeedSequence(seed, spawn_key=(j,))`` and draws a
trinomial index then a first row for each sample.  Workers take whole blocks,
so reports do not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import numpy as np
from scipy.optimize import bisect

from .distance import DEFAULT_BUDGET
from .gf import GF, FiniteField
from .linalg import inverse_stack, rref_stack
from .linear_code import CodeSummary, dp_code, summarize
from .polyalg import Polynomial, enumerate_irreducible_trinomials, enumerate_trinomials, format_poly
from .polyshift import PolyshiftSpec, polycirculant_stack

_SLAB = 1 << 22


# -- batched distance kernel ------------------------------------------------------

@lru_cache(maxsize=None)
def _messages(n: int, q: int, w: int) -> np.ndarray:
    """All weight-w vectors of F_q^n whose first nonzero entry is 1."""
    rest = list(itertools.product(range(1, q), repeat=w - 1))
    out = np.zeros((math.comb(n, w) * len(rest), n), dtype=np.int64)
    r = 0
    for support in itertools.combinations(range(n), w):
        for vals in rest:
            out[r, list(support)] = (1,) + vals
            r += 1
    out.setflags(write=False)
    return out


def _min_right_weight(U: np.ndarray, mats: np.ndarray, field: FiniteField) -> np.ndarray:
    per = max(1, _SLAB // max(1, U.size))
    out = np.empty(len(mats), dtype=np.int64)
    for s in range(0, len(mats), per):
        prod = field.matmul(U[None], mats[s : s + per])
        out[s : s + per] = np.count_nonzero(prod, axis=2).min(axis=1)
    return out


def dp_distance_stack(spec: PolyshiftSpec, first_rows, *, stop_below: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """Minimum distances of many DP codes sharing one polyshift.

    Brouwer-Zimmermann with the two disjoint information sets of (I | A) and
    (A^-1 | I).  Codes with singular A only have the first set, which still
    certifies once the message weight reaches the best weight found.  Codes
    found to have a codeword of weight < ``stop_below`` are abandoned early and
    reported uncertified with that weight as an upper bound.

    Returns ``(d, certified)`` arrays.
    """
    F = spec.field
    n = spec.n
    As = polycirculant_stack(first_rows, spec)
    B = len(As)
    Ainv, ok = inverse_stack(As, F)
    upper = np.full(B, 2 * n + 1, dtype=np.int64)
    certified = np.zeros(B, dtype=bool)
    active = np.ones(B, dtype=bool)
    for w in range(1, n + 1):
        if not active.any():
            break
        U = _messages(n, F.q, w)
        for side in (As, Ainv):
            idx = np.flatnonzero(active & ok) if side is Ainv else np.flatnonzero(active)
            if idx.size == 0:
                continue
            found = w + _min_right_weight(U, side[idx], F)
            upper[idx] = np.minimum(upper[idx], found)
            if w == n and side is As:
                lower = upper[idx]
            elif side is As:
                # unseen codewords weigh > w on the first set, and >= w on the second when it exists
                lower = np.where(ok[idx], 2 * w + 1, w + 1)
            else:
                lower = 2 * w + 2
            done = lower >= upper[idx]
            certified[idx[done]] = True
            active[idx[done | (upper[idx] < stop_below)]] = False
    return upper, certified


# -- search -----------------------------------------------------------------------

@dataclass
class SearchReport:
    q: int
    n: int
    trinomials: list[Polynomial]
    strategy: str
    seed: int | None
    budget: int | None
    best: list[CodeSummary]
    evaluated: int
    wall_time: float = field(default=0.0, compare=False)

    @property
    def best_d(self) -> int | None:
        return self.best[0].d if self.best else None

    def to_json(self, *, include_timing: bool = False) -> dict:
        out = {
            "q": self.q,
            "n": self.n,
            "length": 2 * self.n,
            "trinomials": [format_poly(f) for f in self.trinomials],
            "strategy": self.strategy,
            "seed": self.seed,
            "budget": self.budget,
            "evaluated": self.evaluated,
            "best_d": self.best_d,
            "best": [s.to_json() for s in self.best],
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def dumps(self, *, include_timing: bool = False) -> str:
        return json.dumps(self.to_json(include_timing=include_timing), indent=2) + "\n"

    def to_csv(self) -> str:
        dp, fsd = published_reference(self.q, 2 * self.n)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["2n", "d_found", "d_paper_dp", "d_paper_fsd"])
        w.writerow([2 * self.n, self.best_d, dp, fsd])
        return buf.getvalue()


def search_trinomials(field: FiniteField, n: int, kind: str = "all") -> list[Polynomial]:
    """Trinomials x^n - a x^m - b to search: ``"all"`` of them or only the ``"irreducible"`` ones."""
    if kind == "all":
        return enumerate_trinomials(field, n)
    if kind == "irreducible":
        return enumerate_irreducible_trinomials(field, n)
    raise ValueError(f"unknown trinomial family {kind!r}")


def _index_rows(start: int, stop: int, q: int, n: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


class _Best:
    """Running best distance shared by workers; only used to prune."""

    def __init__(self):
        self.d = 0
        self._lock = threading.Lock()

    def raise_to(self, d: int):
        with self._lock:
            self.d = max(self.d, d)


def _evaluate(specs, groups, best: _Best, cap: int):
    """groups: list of (trinomial index, keys, rows).  Returns (local best, achievers)."""
    local_d, achievers = 0, []
    for t, keys, rows in groups:
        thr = max(best.d, local_d)
        keep = 1 + np.count_nonzero(rows, axis=1) >= thr
        if not keep.any():
            continue
        rows, keys = rows[keep], keys[keep]
        d, _ = dp_distance_stack(specs[t], rows, stop_below=thr)
        top = int(d.max())
        if top < thr:
            continue
        if top > local_d:
            local_d, achievers = top, []
        for i in np.flatnonzero(d == local_d):
            if len(achievers) < cap:
                achievers.append((tuple(int(k) for k in keys[i]), t, tuple(int(v) for v in rows[i])))
        best.raise_to(local_d)
    return local_d, achievers


def search_best(
    q: int,
    n: int,
    trinomials: list[Polynomial] | None = None,
    strategy: str = "exhaustive",
    budget: int | None = None,
    seed: int = 0,
    *,
    cap: int = 10,
    workers: int = 1,
    block: int = 4096,
    summary_budget: int = DEFAULT_BUDGET,
) -> SearchReport:
    """Best minimum distance over DP codes of length 2n with the given trinomial polyshifts."""
    F = GF(q)
    if trinomials is None:
        trinomials = search_trinomials(F, n)
    if not trinomials:
        raise ValueError("no trinomials to search")
    specs = []
    for f in trinomials:
        if f.field != F or f.degree != n:
            raise ValueError(f"{f} is not a degree-{n} polynomial over GF({q})")
        spec = PolyshiftSpec.from_polynomial(f)
        if spec.trinomial is None:
            raise ValueError(f"{f} is not of the form x^n - a x^m - b")
        specs.append(spec)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    start_time = time.perf_counter()
    T = len(specs)
    if strategy == "exhaustive":
        if budget is not None:
            raise ValueError("the exhaustive strategy takes no budget")
        total = q**n
        evaluated = total * T
        jobs = [
            [(t, np.column_stack([np.full(e - s, t), np.arange(s, e)]), _index_rows(s, e, q, n))]
            for t in range(T)
            for s, e in ((s, min(s + block, total)) for s in range(0, total, block))
        ]
        seed = None
    elif strategy == "random":
        if budget is None or budget <= 0:
            raise ValueError("the random strategy needs a positive budget")
        evaluated = budget
        jobs = []
        for j, s in enumerate(range(0, budget, block)):
            size = min(block, budget - s)
            rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(j,))))
            ti = rng.integers(0, T, size=size)
            rows = rng.integers(0, q, size=(size, n))
            keys = np.column_stack([np.full(size, j), np.arange(size)])
            jobs.append([(t, keys[ti == t], rows[ti == t]) for t in range(T) if np.any(ti == t)])
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    best = _Best()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda g: _evaluate(specs, g, best, cap), jobs))
    else:
        results = [_evaluate(specs, g, best, cap) for g in jobs]

    top = max(r[0] for r in results)
    winners = sorted(a for d, ach in results if d == top for a in ach)[:cap]
    summaries = []
    for _, t, row in winners:
        s = summarize(dp_code(row, specs[t]), budget=summary_budget)
        if s.d != top or not s.certified:
            raise AssertionError(f"batched and generic distance engines disagree on a={row}")
        if not s.flags["fsd"]:
            raise AssertionError(f"search produced a non-FSD code a={row}")
        summaries.append(s)
    return SearchReport(
        q, n, list(trinomials), strategy, seed, budget if strategy == "random" else None,
        summaries, evaluated, time.perf_counter() - start_time,
    )


# -- reference values -------------------------------------------------------------

@lru_cache(maxsize=1)
def _published_tables() -> dict:
    text = resources.files("dpcodes").joinpath("data/published_tables.json").read_text()
    return json.loads(text)


def published_reference(q: int, length: int) -> tuple[str, str]:
    """Published (dp, fsd) distances for (q, 2n) as strings, or ('', '') when absent."""
    row = _published_tables().get(str(q), {}).get(str(length))
    return (row[0], row[1]) if row else ("", "")


def published_lengths(q: int) -> list[int]:
    return sorted(int(k) for k in _published_tables().get(str(q), {}))


# -- counting experiments -----------------------------------------------------------

def count_dp_codes(q: int, n: int) -> int:
    """Number of DP codes of length 2n for one polyshift: q^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return q**n


def all_first_rows(q: int, n: int) -> np.ndarray:
    return _index_rows(0, q**n, q, n)


def distinct_row_space_count(spec: PolyshiftSpec) -> int:
    """Number of distinct row spaces among all q^n DP codes for ``spec`` (via RREF)."""
    F = spec.field
    rows = all_first_rows(F.q, spec.n)
    As = polycirculant_stack(rows, spec)
    eye = np.broadcast_to(np.eye(spec.n, dtype=np.int64), As.shape)
    R, _ = rref_stack(np.concatenate([eye, As], axis=2), F)
    return len({r.tobytes() for r in R.astype(np.int8)})


def containment_count(u, v, spec: PolyshiftSpec) -> int:
    """How many first rows a give a DP code containing (u | v)."""
    F = spec.field
    u, v = F.array(u), F.array(v)
    if not (u.any() or v.any()):
        raise ValueError("(u, v) must be nonzero")
    As = polycirculant_stack(all_first_rows(F.q, spec.n), spec)
    # the left half of a codeword is its message, so (u|v) is a codeword iff uA = v
    return int(np.all(F.matmul(u[None, None, :], As)[:, 0, :] == v, axis=1).sum())


# -- entropy and the Gilbert-Varshamov ingredients ------------------------------------

def entropy(x: float) -> float:
    """Binary entropy in bits."""
    if not 0 < x < 1:
        raise ValueError(f"entropy is defined on (0, 1), got {x}")
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def entropy_inverse(y: float) -> float:
    """The x in (0, 1/2] with entropy(x) = y, by bisection to 1e-12."""
    if not 0 < y <= 1:
        raise ValueError(f"entropy_inverse is defined on (0, 1], got {y}")
    if y == 1:
        return 0.5
    return bisect(lambda x: entropy(x) - y, np.finfo(float).tiny, 0.5, xtol=1e-12, rtol=4 * np.finfo(float).eps)


GV_HALF = entropy_inverse(0.5)
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class AsymptoticCheck:
    delta: float
    n: int
    d_n: int
    omega: int
    v: int
    entropic_bound: float
    v_within_bound: bool
    omega_exceeds_v: bool
    conclusive: bool

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "n": self.n,
            "d_n": self.d_n,
            "omega": self.omega,
            "v": self.v,
            "entropic_bound": self.entropic_bound,
            "v_within_bound": self.v_within_bound,
            "omega_exceeds_v": self.omega_exceeds_v,
            "conclusive": self.conclusive,
        }


def asymptotic_check(n: int, delta: float, q: int = 2) -> AsymptoticCheck:
    """Finite ingredients of the expurgated random-coding argument at half-length n.

    ``d_n = floor(2 delta n)``; ``V_n`` counts binary vectors of length 2n and
    weight < d_n exactly; ``Omega_n = 2^n``.  ``conclusive`` is false when
    delta >= H^-1(1/2), where the entropic bound cannot beat 2^n for large n.
    """
    if q != 2:
        raise ValueError("the asymptotic argument is binary only")
    if not 0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta}")
    if n < 1:
        raise ValueError("n must be >= 1")
    d_n = math.floor(Fraction(repr(delta)) * 2 * n)
    v = sum(math.comb(2 * n, w) for w in range(d_n))
    omega = 2**n
    bound = 2.0 ** (2 * n * entropy(delta))
    return AsymptoticCheck(
        delta, n, d_n, omega, v, bound, v <= bound * (1 + BOUND_SLACK), omega > v, delta < GV_HALF
    )
