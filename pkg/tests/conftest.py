"""Independent brute-force oracles shared by the test modules.

Nothing here goes through the engines under test: polynomials are plain coefficient
lists, codes are enumerated with itertools.product.
"""

import itertools
import sys

import numpy as np
import pytest

from dpcodes import GF


def list_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def list_mod(a, b, F):
    """Schoolbook remainder of coefficient lists (low degree first)."""
    a = list_trim(a)
    b = list_trim(b)
    inv = int(F.inv_table[b[-1]])
    while len(a) >= len(b):
        c = int(F.mul_table[a[-1], inv])
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] = int(F.add_table[a[shift + i], F.neg_table[F.mul_table[c, v]]])
        a = list_trim(a)
    return a


def brute_irreducible(coeffs, F):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    n = len(list_trim(coeffs)) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(F.q), repeat=d):
            if not list_mod(coeffs, list(low) + [1], F):
                return False
    return True


def brute_codewords(G, F):
    G = np.asarray(G)
    k, N = G.shape
    for msg in itertools.product(range(F.q), repeat=k):
        word = np.zeros(N, dtype=np.int64)
        for c, row in zip(msg, G):
            word = F.add_table[word, F.mul_table[c, row]]
        yield word


def brute_weights(G, F):
    counts = {}
    for w in brute_codewords(G, F):
        wt = int(np.count_nonzero(w))
        counts[wt] = counts.get(wt, 0) + 1
    return dict(sorted(counts.items()))


def brute_distance(G, F):
    return min(int(np.count_nonzero(w)) for w in brute_codewords(G, F) if w.any())


def brute_dual_weights(G, F):
    """Weight distribution of {x : x.G^t = 0}, by scanning all of F_q^N."""
    G = np.asarray(G)
    N = G.shape[1]
    counts = {}
    for x in itertools.product(range(F.q), repeat=N):
        x = np.array(x)
        ok = True
        for row in G:
            acc = 0
            for u, v in zip(x, row):
                acc = int(F.add_table[acc, F.mul_table[u, v]])
            if acc:
                ok = False
                break
        if ok:
            wt = int(np.count_nonzero(x))
            counts[wt] = counts.get(wt, 0) + 1
    return dict(sorted(counts.items()))


def poly_list_mul(a, b, F):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] = int(F.add_table[out[i + j], F.mul_table[u, v]])
    return list_trim(out)


def poly_list_add(a, b, F):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return list_trim([int(F.add_table[u, v]) for u, v in zip(a, b)])


def cofactor_charpoly(M, F):
    """det(xI - M) by Laplace expansion along the first row, entries as coefficient lists."""
    M = np.asarray(M)
    n = M.shape[0]
    X = [[list_trim([int(F.neg_table[M[i, j]])] + ([1] if i == j else [])) for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if not rows:
            return [1]
        r = rows[0]
        total = []
        for t, c in enumerate(cols):
            minor = det(rows[1:], cols[:t] + cols[t + 1 :])
            term = poly_list_mul(X[r][c], minor, F)
            if t % 2:
                term = [int(F.neg_table[v]) for v in term]
            total = poly_list_add(total, term, F)
        return total

    return det(list(range(n)), list(range(n)))


@pytest.fixture(params=[2, 3, 4, 5, 7], ids=lambda q: f"GF{q}")
def field(request):
    return GF(request.param)


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    lines = getattr(acceptance, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
