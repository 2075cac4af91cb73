import pytest
from hypothesis import given, strategies as st

from nilcone.combinatorics import Partition, b_invariant, enumerate_bipartitions, enumerate_partitions, parse_bipartition
from nilcone.qcount import (
    InexactDivision,
    Q,
    QPoly,
    enhanced_orbit_size,
    enhanced_stab_order,
    enhanced_unipotent_dim,
    exotic_orbit_size,
    exotic_stab_order,
    exotic_unipotent_dim,
    fini_check,
    gl_order,
    ordinary_orbit_size,
    ordinary_stab_order,
    sp_order,
)

from strategies import bipartitions

polys = st.lists(st.integers(-20, 20), max_size=6).map(QPoly)


def bp(text):
    return parse_bipartition(text)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == QPoly()


@given(polys, polys, st.integers(-5, 5))
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(polys, st.integers(1, 4), st.integers(-3, 3))
def test_subs_power(a, k, x):
    assert a.subs_power(k)(x) == a(x**k)


unit_lead = st.tuples(st.lists(st.integers(-20, 20), max_size=4), st.sampled_from([1, -1])).map(
    lambda t: QPoly(t[0] + [t[1]])
)


@given(polys, unit_lead)
def test_division(a, b):
    quot, rem = a.divmod(b)
    assert quot * b + rem == a
    assert rem.is_zero() or rem.degree < b.degree
    assert (a * b).exact_div(b) == a


def test_inexact_division_names_context():
    with pytest.raises(InexactDivision, match="ctx"):
        (Q * Q + 1).exact_div(Q - 1, "ctx")


def test_zero_degree():
    assert QPoly().degree is None
    assert QPoly([0, 0]).is_zero()


def test_group_orders():
    assert gl_order(0) == 1
    assert gl_order(1) == Q - 1
    assert gl_order(2) == QPoly([0, 1, -1, -1, 1])
    assert gl_order(2)(2) == 6
    assert sp_order(0) == 1
    assert sp_order(1) == Q**3 - Q
    assert sp_order(2)(2) == 720


def test_ordinary():
    assert ordinary_stab_order(Partition([1, 1])) == gl_order(2)
    assert ordinary_stab_order(Partition([2])) == Q * Q - Q
    assert ordinary_stab_order(Partition([2, 2, 1, 1])).degree == 20
    assert ordinary_orbit_size(Partition([1, 1, 1])) == 1
    assert ordinary_orbit_size(Partition([2])) == Q * Q - 1


@pytest.mark.parametrize(
    "text, q, stab, orbit",
    [
        (";", 2, 1, 1),
        ("1;1", 2, 2, 3),
        ("1,1,1,1;1,1", 2, 12288, None),
        ("2;", 2, None, 6),
    ],
)
def test_enhanced_examples(text, q, stab, orbit):
    x = bp(text)
    if stab is not None:
        assert enhanced_stab_order(x)(q) == stab
    if orbit is not None:
        assert enhanced_orbit_size(x)(q) == orbit


def test_enhanced_orbit_polynomials():
    assert enhanced_orbit_size(bp("1;1")) == QPoly([1, -1, -1, 1])
    assert enhanced_orbit_size(bp(";1,1,1")) == 1


def test_exotic_examples():
    assert exotic_stab_order(bp(";")) == 1
    assert exotic_stab_order(bp("1;"))(2) == 2
    assert exotic_stab_order(bp("1,1;1"))(2) == 384
    assert exotic_orbit_size(bp(";1")) == 1
    assert exotic_orbit_size(bp("1;"))(3) == 8
    assert exotic_orbit_size(bp("1;1"))(2) == 45


def test_unipotent_dims():
    assert enhanced_unipotent_dim(bp("1,1,1,1;1,1")) == 11
    assert enhanced_unipotent_dim(bp("1;1")) == 1
    assert exotic_unipotent_dim(bp("1,1;1")) == 6
    assert exotic_unipotent_dim(bp("1,1,1,1;1,1")) == 25
    assert exotic_unipotent_dim(bp(";")) == 0


@pytest.mark.parametrize("n", range(7))
def test_sums(n):
    assert sum((enhanced_orbit_size(x) for x in enumerate_bipartitions(n)), QPoly()) == Q ** (n * n)
    assert sum((exotic_orbit_size(x) for x in enumerate_bipartitions(n)), QPoly()) == Q ** (2 * n * n)
    assert sum((ordinary_orbit_size(p) for p in enumerate_partitions(n)), QPoly()) == Q ** (n * n - n)


@given(bipartitions(max_size=7))
def test_orbit_polynomial_shape(x):
    n, b = x.size, b_invariant(x)
    enh, exo = enhanced_orbit_size(x), exotic_orbit_size(x)
    assert enh.is_monic() and enh.degree == n * n - b
    assert exo.is_monic() and exo.degree == 2 * n * n - 2 * b
    assert enhanced_stab_order(x).degree == b
    assert exotic_stab_order(x).degree == n + 2 * b
    for q in (2, 3, 4, 5, 7, 8, 9):
        assert enh(q) > 0 and exo(q) > 0
    assert enhanced_stab_order(x) * enh == gl_order(n)
    assert exotic_stab_order(x) * exo == sp_order(n)


@given(bipartitions(max_size=8))
def test_fini(x):
    assert fini_check(x)


@given(bipartitions(max_size=7))
def test_v_zero_slice(x):
    from nilcone.combinatorics import Bipartition

    lam = x.lam
    assert enhanced_orbit_size(Bipartition(Partition(), lam)) == ordinary_orbit_size(lam)
