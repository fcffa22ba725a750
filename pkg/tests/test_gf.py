import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dpcodes import GF, FieldMismatchError, fe_add, fe_inv, fe_mul, fe_neg, fe_sub
from dpcodes.gf import pack_bits, packed_dot, packed_weight, unpack_bits

W = 2  # serialized omega in F_4


def test_add_examples():
    assert fe_add(GF(2)(1), GF(2)(1)) == GF(2)(0)
    assert fe_add(GF(7)(5), GF(7)(4)) == GF(7)(2)
    assert fe_add(GF(4)(W), GF(4)(W)) == GF(4)(0)


def test_mul_examples():
    assert fe_mul(GF(7)(3), GF(7)(5)) == GF(7)(1)
    assert fe_mul(GF(4)(W), GF(4)(W)) == GF(4)(3)  # w^2 = w + 1
    assert fe_mul(GF(2)(1), GF(2)(1)) == GF(2)(1)


def test_inv_examples():
    assert fe_inv(GF(7)(3)) == GF(7)(5)
    assert fe_inv(GF(4)(W)) == GF(4)(3)
    assert fe_inv(GF(2)(1)) == GF(2)(1)


def test_neg_sub():
    assert fe_neg(GF(7)(3)) == GF(7)(4)
    assert fe_sub(GF(5)(1), GF(5)(3)) == GF(5)(3)
    assert fe_neg(GF(4)(3)) == GF(4)(3)


def test_errors():
    with pytest.raises(FieldMismatchError):
        GF(3)(1) + GF(5)(1)
    with pytest.raises(FieldMismatchError):
        GF(2)(1) * GF(4)(1)
    with pytest.raises(ZeroDivisionError):
        fe_inv(GF(5)(0))
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(4)(4)


def test_prime_fields_reduce_representatives():
    assert GF(7)(-1).value == 6
    assert GF(3)(10).value == 1


def test_field_axioms_exhaustive(field):
    els = list(field)
    zero, one = field.zero, field.one
    for x, y, z in itertools.product(els, repeat=3):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
    for x, y in itertools.product(els, repeat=2):
        assert x + y == y + x
        assert x * y == y * x
        assert x - y + y == x
    for x in els:
        assert x + zero == x and x * one == x
        assert x + (-x) == zero
        if x:
            assert x * x.inverse() == one
    # identities are unique
    assert [e for e in els if all(e + x == x for x in els)] == [zero]
    assert [e for e in els if all(e * x == x for x in els)] == [one]


def test_f4_modulus_and_characteristic():
    F = GF(4)
    assert F.modulus == (1, 1, 1) and F.characteristic == 2
    w = F(W)
    assert w * w + w + F.one == F.zero


def test_vectorized_matches_scalar(field):
    x = np.arange(field.q)
    X, Y = np.meshgrid(x, x, indexing="ij")
    for i, j in itertools.product(range(field.q), repeat=2):
        assert field.add(X, Y)[i, j] == (field(i) + field(j)).value
        assert field.mul(X, Y)[i, j] == (field(i) * field(j)).value
        assert field.sub(X, Y)[i, j] == (field(i) - field(j)).value


def test_matmul_matches_scalar(field):
    rng = np.random.default_rng(3)
    A = rng.integers(0, field.q, (3, 4))
    B = rng.integers(0, field.q, (4, 2))
    C = field.matmul(A, B)
    for i in range(3):
        for j in range(2):
            acc = field.zero
            for t in range(4):
                acc = acc + field(A[i, t]) * field(B[t, j])
            assert C[i, j] == acc.value


def test_serialization_is_int():
    assert [int(e) for e in GF(4)] == [0, 1, 2, 3]
    assert repr(GF(4)(3)) == "w+1"


@given(st.lists(st.integers(0, 1), min_size=1, max_size=150), st.lists(st.integers(0, 1), min_size=1, max_size=150))
def test_packed_lane_matches_elementwise(a, b):
    n = min(len(a), len(b))
    a, b = np.array(a[:n]), np.array(b[:n])
    pa, pb = pack_bits(a), pack_bits(b)
    assert np.array_equal(unpack_bits(pa, n), a)
    assert packed_weight(pa ^ pb) == np.count_nonzero((a + b) % 2)
    assert packed_dot(pa, pb) == int(a @ b) % 2
