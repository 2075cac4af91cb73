import numpy as np
import pytest
from hypothesis import given, strategies as st

from nilcone.gf import Field, is_irreducible, least_irreducible, make_field

from strategies import fields

QS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("q", QS)
def test_field_axioms_exhaustive(q):
    fd = make_field(q)
    a, b, c = np.meshgrid(*(np.arange(q),) * 3, indexing="ij")
    assert np.array_equal(fd.add(a, b), fd.add(b, a))
    assert np.array_equal(fd.mul(a, b), fd.mul(b, a))
    assert np.array_equal(fd.add(fd.add(a, b), c), fd.add(a, fd.add(b, c)))
    assert np.array_equal(fd.mul(fd.mul(a, b), c), fd.mul(a, fd.mul(b, c)))
    assert np.array_equal(fd.mul(a, fd.add(b, c)), fd.add(fd.mul(a, b), fd.mul(a, c)))
    x = np.arange(q)
    assert not fd.add(x, fd.neg(x)).any()
    assert np.array_equal(fd.mul(x, 1), x)
    units = np.arange(1, q)
    assert np.all(fd.mul(units, fd.inv(units)) == 1)


@pytest.mark.parametrize("q", QS)
def test_index_encoding(q):
    fd = make_field(q)
    # 1 added to itself p times is zero, and the prime subfield is 0..p-1 in order
    acc = 0
    for k in range(1, fd.p + 1):
        acc = int(fd.add(acc, 1))
        assert acc == k % fd.p
    assert len(fd.modulus) == fd.k + 1 and is_irreducible(fd.modulus, fd.p)


@pytest.mark.parametrize("q", QS)
def test_primitive_element(q):
    fd = make_field(q)
    g = fd.primitive_element()
    assert {fd.power(g, e) for e in range(q - 1)} == set(range(1, q))


@pytest.mark.parametrize("bad", [0, 1, 6, 10, 12])
def test_rejects_non_prime_powers(bad):
    with pytest.raises(ValueError):
        Field(bad)


def test_bound():
    with pytest.raises(ValueError):
        Field(128)


def test_least_irreducible_known():
    assert least_irreducible(2, 2) == (1, 1, 1)
    assert least_irreducible(2, 3) == (1, 1, 0, 1)
    assert least_irreducible(3, 2) == (1, 0, 1)


def test_equality_and_cache():
    assert make_field(4) is make_field(4)
    assert Field(4) == make_field(4) and hash(Field(4)) == hash(make_field(4))


@given(fields, st.data())
def test_matmul_matches_loops(q, data):
    fd = make_field(q)
    n, m, k = (data.draw(st.integers(1, 4)) for _ in range(3))
    a = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=n * m, max_size=n * m))).reshape(n, m)
    b = np.array(data.draw(st.lists(st.integers(0, q - 1), min_size=m * k, max_size=m * k))).reshape(m, k)
    out = fd.matmul(a, b)
    for i in range(n):
        for j in range(k):
            acc = 0
            for t in range(m):
                acc = int(fd.add(acc, fd.mul(a[i, t], b[t, j])))
            assert out[i, j] == acc
    assert np.array_equal(fd.matmul(a, b[:, 0]), out[:, 0])


@given(fields, st.lists(st.integers(0, 100), min_size=1, max_size=6))
def test_sum(q, xs):
    fd = make_field(q)
    xs = np.array(xs) % q
    acc = 0
    for x in xs:
        acc = int(fd.add(acc, x))
    assert int(fd.sum(xs)) == acc


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        make_field(5).inv(0)
