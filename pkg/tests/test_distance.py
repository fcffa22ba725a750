import itertools

import numpy as np
import pytest

from conftest import brute_distance, brute_weights
from dpcodes import GF, BudgetExceeded, PolyshiftSpec, dp_code, enumerate_trinomials
from dpcodes import distance as dist
from dpcodes.distance import (
    brouwer_zimmermann,
    exhaustive_distance,
    minimum_distance,
    weight_histogram,
)
from dpcodes.dpsearch import dp_distance_stack
from dpcodes.linalg import inverse_stack, rank
from dpcodes.polyshift import polycirculant_stack

F2 = GF(2)


def random_generator(rng, q, k, N):
    while True:
        G = rng.integers(0, q, size=(k, N))
        if rank(G, GF(q)) == k:
            return G


def hist_dict(h):
    return {w: int(c) for w, c in enumerate(h) if c}


def test_engines_match_brute_force(field):
    rng = np.random.default_rng(field.q * 13)
    for _ in range(15):
        k = int(rng.integers(1, 5 if field.q <= 3 else 4))
        N = int(rng.integers(k, k + 6))
        G = random_generator(rng, field.q, k, N)
        want = brute_distance(G, field)
        ex = exhaustive_distance(G, field)
        bz = brouwer_zimmermann(G, field)
        assert ex.d == bz.d == want
        assert ex.certified and bz.certified and bz.lower == bz.d
        assert hist_dict(weight_histogram(G, field)) == brute_weights(G, field)


def test_gray_walk_over_high_block(monkeypatch, field):
    # a tiny low table forces most of the enumeration through the Gray-code walk
    monkeypatch.setattr(dist, "_LOW_TARGET", 2)
    rng = np.random.default_rng(field.q)
    for _ in range(6):
        k = 4 if field.q <= 3 else 3
        G = random_generator(rng, field.q, k, k + 4)
        assert hist_dict(weight_histogram(G, field)) == brute_weights(G, field)
        assert hist_dict(weight_histogram(G, field, workers=3)) == brute_weights(G, field)


def test_worker_count_does_not_change_results(field):
    rng = np.random.default_rng(99)
    k = {2: 14, 3: 8, 4: 6, 5: 6, 7: 5}[field.q]
    G = random_generator(rng, field.q, k, 2 * k)
    h1 = weight_histogram(G, field)
    for workers in (2, 4, 7):
        assert np.array_equal(weight_histogram(G, field, workers=workers), h1)
    assert h1.sum() == field.q**k


def test_exhaustive_budget():
    G = np.hstack([np.eye(10, dtype=int), np.ones((10, 3), dtype=int)])
    with pytest.raises(BudgetExceeded):
        exhaustive_distance(G, F2, budget=2**9)
    with pytest.raises(BudgetExceeded):
        minimum_distance(G, F2, budget=2**9, engine="exhaustive")
    assert exhaustive_distance(G, F2, budget=2**10).d == 2


def test_auto_engine_switch():
    G = np.hstack([np.eye(6, dtype=int), np.eye(6, dtype=int)])
    assert minimum_distance(G, F2).engine == "exhaustive"
    r = minimum_distance(G, F2, budget=8)
    assert r.engine == "brouwer-zimmermann" and r.d == 2 and r.certified
    with pytest.raises(ValueError):
        minimum_distance(G, F2, engine="magic")


def test_bz_uncertified_on_tiny_budget():
    rng = np.random.default_rng(1)
    G = np.hstack([np.eye(20, dtype=int), rng.integers(0, 2, size=(20, 20))])
    r = brouwer_zimmermann(G, F2, budget=10)
    assert not r.certified
    assert r.lower <= r.d
    full = brouwer_zimmermann(G, F2)
    assert full.certified and r.lower <= full.d <= r.d


def test_bz_stop_below():
    G = np.hstack([np.eye(8, dtype=int), np.eye(8, dtype=int)])
    r = brouwer_zimmermann(G, F2, stop_below=5)
    assert r.d == 2 and r.lower <= 2


def test_zero_code_rejected():
    with pytest.raises(ValueError):
        exhaustive_distance(np.zeros((2, 4), dtype=int), F2)
    with pytest.raises(ValueError):
        brouwer_zimmermann(np.zeros((2, 4), dtype=int), F2)


def test_redundant_rows_are_reduced():
    G = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1]]
    assert exhaustive_distance(G, F2).examined == 4
    assert brouwer_zimmermann(G, F2).d == 2


def test_result_json():
    r = exhaustive_distance([[1, 1, 1]], F2)
    assert r.to_json() == {"d": 3, "lower": 3, "upper": 3, "certified": True, "engine": "exhaustive", "examined": 2}
    assert int(r) == 3 == r.upper


@pytest.mark.parametrize("q,n", [(2, 6), (2, 9), (3, 5), (4, 4), (5, 4), (7, 3)])
def test_dp_kernel_matches_generic_engine(q, n):
    F = GF(q)
    rng = np.random.default_rng(q * n)
    for f in enumerate_trinomials(F, n)[:5]:
        spec = PolyshiftSpec.from_polynomial(f)
        rows = rng.integers(0, q, size=(40, n))
        rows[0] = 0
        d, cert = dp_distance_stack(spec, rows)
        assert cert.all()
        for r, got in zip(rows, d):
            assert got == exhaustive_distance(dp_code(r, spec).generator, F).d


def test_dp_kernel_stop_below_gives_upper_bounds():
    spec = PolyshiftSpec.from_polynomial(enumerate_trinomials(F2, 8)[0])
    rows = np.array(list(itertools.product(range(2), repeat=8)))
    exact, _ = dp_distance_stack(spec, rows)
    d, cert = dp_distance_stack(spec, rows, stop_below=4)
    assert np.all(d >= exact)
    assert np.array_equal(d[cert], exact[cert])
    assert np.all(exact[~cert] < 4)
    assert cert[exact >= 4].all()


@pytest.mark.parametrize("q,n", [(2, 8), (3, 4), (7, 3)])
def test_dp_kernel_singular_a(q, n):
    F = GF(q)
    for f in enumerate_trinomials(F, n)[:4]:
        spec = PolyshiftSpec.from_polynomial(f)
        rows = np.array(list(itertools.product(range(q), repeat=n)))
        _, ok = inverse_stack(polycirculant_stack(rows, spec), F)
        singular = rows[~ok]
        assert len(singular) > 0
        d, cert = dp_distance_stack(spec, singular)
        assert cert.all()
        for r, got in zip(singular, d):
            assert got == exhaustive_distance(dp_code(r, spec).generator, F).d
