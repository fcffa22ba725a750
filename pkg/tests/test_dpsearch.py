import csv
import io
import itertools
import json
import math

import mpmath
import numpy as np
import pytest

from dpcodes import (
    GF,
    PolyshiftSpec,
    asymptotic_check,
    containment_count,
    count_dp_codes,
    distinct_row_space_count,
    entropy,
    entropy_inverse,
    enumerate_irreducible_trinomials,
    enumerate_trinomials,
    parse_poly,
    search_best,
    search_trinomials,
)
from dpcodes.dpsearch import GV_HALF, published_lengths, published_reference

F2, F3 = GF(2), GF(3)


def test_count_dp_codes_examples():
    assert count_dp_codes(2, 3) == 8
    assert count_dp_codes(3, 2) == 9
    assert count_dp_codes(2, 1) == 2
    assert count_dp_codes(7, 40) == 7**40
    with pytest.raises(ValueError):
        count_dp_codes(2, 0)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4)])
def test_row_spaces_are_all_distinct(q, n):
    F = GF(q)
    specs = [PolyshiftSpec((1,) * n, F)] if n == 1 else [PolyshiftSpec.from_polynomial(f) for f in enumerate_trinomials(F, n)]
    for spec in specs:
        assert distinct_row_space_count(spec) == count_dp_codes(q, n)


def test_containment_examples():
    spec = PolyshiftSpec.from_polynomial(parse_poly("x^3+x+1", F2))
    assert containment_count((1, 0, 0), (0, 1, 1), spec) == 1
    assert containment_count((0, 0, 0), (1, 0, 0), spec) == 0
    with pytest.raises(ValueError):
        containment_count((0, 0, 0), (0, 0, 0), spec)


def test_containment_brute_force_n3():
    spec = PolyshiftSpec.from_polynomial(parse_poly("x^3+x+1", F2))
    counts = []
    for w in itertools.product(range(2), repeat=6):
        if any(w):
            counts.append(containment_count(w[:3], w[3:], spec))
    assert len(counts) == 63 and max(counts) == 1
    # each of the 8 codes has 7 nonzero codewords, all distinct across codes
    assert sum(counts) == 8 * 7


def test_default_trinomials_are_all_of_them():
    assert search_trinomials(F2, 4) == enumerate_trinomials(F2, 4)
    assert search_trinomials(F2, 4, "irreducible") == enumerate_irreducible_trinomials(F2, 4)
    with pytest.raises(ValueError):
        search_trinomials(F2, 4, "cubic")


@pytest.mark.parametrize("q,n,want", [(2, 3, 3), (2, 6, 4), (3, 4, 4)])
def test_search_examples(q, n, want):
    rep = search_best(q, n)
    assert rep.best_d is not None and rep.best_d >= want
    if (q, n) == (2, 3):
        assert rep.best_d == 3
    assert rep.evaluated == q**n * len(enumerate_trinomials(GF(q), n))
    assert all(s.d == rep.best_d and s.flags["fsd"] for s in rep.best)


def test_search_cap_and_order():
    rep = search_best(2, 5, cap=3)
    assert len(rep.best) == 3
    full = search_best(2, 5, cap=50)
    assert [s.to_json() for s in full.best[:3]] == [s.to_json() for s in rep.best]


def test_search_errors():
    with pytest.raises(ValueError):
        search_best(2, 4, trinomials=[])
    with pytest.raises(ValueError):
        search_best(2, 4, strategy="random")
    with pytest.raises(ValueError):
        search_best(2, 4, strategy="random", budget=0)
    with pytest.raises(ValueError):
        search_best(2, 4, strategy="exhaustive", budget=10)
    with pytest.raises(ValueError):
        search_best(2, 4, strategy="annealing")
    with pytest.raises(ValueError):
        search_best(2, 4, trinomials=[parse_poly("x^4+x^3+x+1", F2)])
    with pytest.raises(ValueError):
        search_best(2, 4, trinomials=[parse_poly("x^3+x+1", F2)])


def test_random_search_is_deterministic():
    a = search_best(3, 6, strategy="random", budget=3000, seed=5, block=512)
    b = search_best(3, 6, strategy="random", budget=3000, seed=5, block=512)
    c = search_best(3, 6, strategy="random", budget=3000, seed=5, block=512, workers=4)
    assert a.dumps() == b.dumps() == c.dumps()
    assert a.evaluated == 3000 and a.seed == 5 and a.budget == 3000


def test_exhaustive_search_worker_independent():
    one = search_best(2, 8, workers=1, block=64)
    many = search_best(2, 8, workers=4, block=64)
    assert one.dumps() == many.dumps()


def test_report_json_schema():
    rep = search_best(2, 3)
    doc = json.loads(rep.dumps())
    assert list(doc) == ["q", "n", "length", "trinomials", "strategy", "seed", "budget", "evaluated", "best_d", "best"]
    assert doc["trinomials"] == ["x^3+x+1", "x^3+x^2+1"]
    assert doc["strategy"] == "exhaustive" and doc["seed"] is None and doc["budget"] is None
    assert "wall_time" not in doc and "wall_time" in rep.to_json(include_timing=True)


def test_report_csv():
    rows = list(csv.reader(io.StringIO(search_best(2, 3).to_csv())))
    assert rows == [["2n", "d_found", "d_paper_dp", "d_paper_fsd"], ["6", "3", "3*", "3"]]


def test_published_reference_values():
    assert published_reference(2, 6) == ("3*", "3")
    assert published_reference(2, 99) == ("", "")
    assert published_lengths(2)[0] == 4
    for q in (2, 3, 4, 5, 7):
        assert published_lengths(q)


def test_entropy_values():
    assert entropy(0.5) == 1.0
    mpmath.mp.dps = 40
    x = mpmath.mpf("0.11")
    oracle = -x * mpmath.log(x, 2) - (1 - x) * mpmath.log(1 - x, 2)
    assert entropy(0.11) == pytest.approx(float(oracle), abs=1e-12)
    assert entropy(0.11) == pytest.approx(0.49991595816452799564, abs=1e-12)
    for x in np.linspace(0.01, 0.49, 25):
        assert entropy(x) == pytest.approx(entropy(1 - x), abs=1e-15)
    for bad in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            entropy(bad)


def test_entropy_inverse():
    assert entropy_inverse(1.0) == 0.5
    assert entropy_inverse(0.5) == pytest.approx(0.110028, abs=5e-7)
    mpmath.mp.dps = 40
    root = mpmath.findroot(lambda t: -t * mpmath.log(t, 2) - (1 - t) * mpmath.log(1 - t, 2) - mpmath.mpf(1) / 2, 0.11)
    assert GV_HALF == pytest.approx(float(root), abs=1e-11)
    for y in np.linspace(0.01, 0.99, 30):
        assert entropy(entropy_inverse(y)) == pytest.approx(y, abs=1e-10)
    for bad in (0.0, 1.2):
        with pytest.raises(ValueError):
            entropy_inverse(bad)


def test_asymptotic_examples():
    c = asymptotic_check(10, 0.1)
    assert (c.d_n, c.v, c.omega, c.omega_exceeds_v) == (2, 21, 1024, True)
    assert c.v_within_bound and c.conclusive
    z = asymptotic_check(1, 0.4)
    assert (z.d_n, z.v, z.omega_exceeds_v) == (0, 0, True)
    assert not asymptotic_check(10, 0.2).conclusive
    assert set(c.to_json()) >= {"delta", "n", "d_n", "omega", "v", "entropic_bound"}
    for bad in [(10, 0.0), (10, 0.5), (0, 0.1)]:
        with pytest.raises(ValueError):
            asymptotic_check(*bad)
    with pytest.raises(ValueError):
        asymptotic_check(10, 0.1, q=3)


def test_asymptotic_sweep():
    for n in range(1, 65):
        c = asymptotic_check(n, 0.1)
        assert c.v == sum(math.comb(2 * n, w) for w in range(math.floor(0.2 * n + 1e-12)))
        assert c.omega_exceeds_v and c.v_within_bound
    # the largest V_n / 2^n ratio at delta=0.1 stays far from 1
    assert max(asymptotic_check(n, 0.1).v / 2**n for n in range(1, 65)) == 0.03125
