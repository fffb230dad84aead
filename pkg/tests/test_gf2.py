import random

import pytest
from hypothesis import given, settings, strategies as st

from archphase.gf2 import BitMatrix, BitVector, SingularMatrixError, invert, multiply, row_add

from oracles import gf2_rank, random_invertible_rows

P_PRIME = ["1011", "0101", "0001", "0010"]
# computed by exhaustive search over all 4x4 binary matrices
P_PRIME_INV = ["1011", "0110", "0001", "0010"]


def test_bitvector_basics():
    v = BitVector.from_string("0110")
    assert str(v) == "0110" and v[1] == 1 and v[0] == 0 and len(v) == 4
    assert v.weight() == 2
    assert (v ^ v).is_zero()
    assert v.dot(BitVector.from_string("0100")) == 1
    assert BitVector.from_bits([1, 0, 1]) == BitVector.from_string("101")
    assert BitVector.unit(3, 2) == BitVector.from_string("001")
    with pytest.raises(ValueError):
        v ^ BitVector.from_string("01")
    with pytest.raises(ValueError):
        BitVector.from_string("012")


def test_row_add_example():
    m = BitMatrix.from_strings(["011", "110"])
    row_add(m, 0, 1)
    assert m.to_strings() == ["101", "110"]


def test_row_add_zero_row_is_noop():
    m = BitMatrix.from_strings(["011", "000"])
    row_add(m, 0, 1)
    assert m.to_strings() == ["011", "000"]


def test_row_add_errors():
    m = BitMatrix.identity(3)
    with pytest.raises(IndexError):
        row_add(m, 0, 3)
    with pytest.raises(ValueError):
        row_add(m, 1, 1)


def test_invert_small():
    assert invert(BitMatrix.identity(5)) == BitMatrix.identity(5)
    m = BitMatrix.from_lists([[1, 1], [0, 1]])
    assert invert(m) == m


def test_invert_p_prime():
    p = BitMatrix.from_strings(P_PRIME)
    inv = invert(p)
    assert inv.to_strings() == P_PRIME_INV
    assert multiply(p, inv).is_identity()
    assert multiply(inv, p).is_identity()


def test_invert_singular():
    with pytest.raises(SingularMatrixError):
        invert(BitMatrix.from_strings(["110", "011", "101"]))
    with pytest.raises(ValueError):
        invert(BitMatrix.from_strings(["10", "01", "11"]))


def test_multiply_examples():
    a = BitMatrix.from_lists([[1, 1], [0, 1]])
    b = BitMatrix.from_lists([[1, 0], [1, 1]])
    assert multiply(a, b).to_lists() == [[0, 1], [1, 1]]
    m = BitMatrix.from_strings(["101", "011"])
    assert multiply(m, BitMatrix.identity(3)) == m
    with pytest.raises(ValueError):
        multiply(m, m)


def test_transpose_and_columns():
    m = BitMatrix.from_strings(["110", "011"])
    assert m.transpose().to_strings() == ["10", "11", "01"]
    assert m.column(1) == 0b11
    assert BitMatrix.from_columns([m.column(j) for j in range(3)], 2) == m


def test_apply_matches_multiply():
    m = BitMatrix.from_strings(P_PRIME)
    for x in range(16):
        col = BitMatrix.from_columns([x], 4)
        assert BitMatrix.from_columns([m.apply(x)], 4) == multiply(m, col)


matrices = st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(min_value=0, max_value=2**32))
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_inverse_property(spec):
    n, seed = spec
    m = BitMatrix(random_invertible_rows(n, random.Random(seed)), n)
    assert multiply(m, invert(m)).is_identity()
    assert multiply(invert(m), m).is_identity()


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 10), st.integers(0, 2**32), st.data())
def test_row_add_involution_and_rank(n, seed, data):
    rng = random.Random(seed)
    m = BitMatrix([rng.getrandbits(n) for _ in range(n)], n)
    before = m.copy()
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(0, n - 1).filter(lambda x: x != i))
    row_add(m, i, j)
    assert m.rank() == before.rank() == gf2_rank(list(before.rows), n)
    row_add(m, i, j)
    assert m == before


def test_set_get_and_errors():
    m = BitMatrix.zeros(2, 3)
    m[1, 2] = 1
    assert m[1, 2] == 1 and m.row(1) == 0b100
    with pytest.raises(IndexError):
        m[2, 0]
    with pytest.raises(ValueError):
        BitMatrix([8], 3)
    with pytest.raises(ValueError):
        BitMatrix.from_strings(["10", "1"])
