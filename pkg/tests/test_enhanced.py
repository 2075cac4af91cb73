import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nilcone import enhanced as en
from nilcone import linalg as la
from nilcone.combinatorics import Partition, enumerate_bipartitions, parse_bipartition, shape_data
from nilcone.gf import make_field
from nilcone.qcount import enhanced_orbit_size, gl_order

NOTE = parse_bipartition("1,1,1,1;1,1")


def test_representative_of_note():
    pt = en.representative(NOTE, make_field(2))
    assert pt.v.tolist() == [1, 0, 0, 0, 1, 0]
    assert la.jordan_type(pt.fd, pt.x) == (2, 2, 1, 1)
    full = en.representative(NOTE, make_field(2), full=True)
    assert full.v.tolist() == [1, 0, 1, 0, 1, 1]
    # both normal forms lie in one orbit
    assert en.representative_orbit(NOTE, make_field(2)).contains(full.v, full.x)


def test_point_validation():
    fd = make_field(2)
    with pytest.raises(ValueError):
        en.EnhancedPoint(fd, [0, 0], la.identity(2))
    with pytest.raises(ValueError):
        en.EnhancedPoint(fd, [0], np.zeros((2, 2)))


@pytest.mark.parametrize("q, n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)])
def test_bfs_sizes(q, n):
    fd = make_field(q)
    total = 0
    for bp in enumerate_bipartitions(n):
        size = en.representative_orbit(bp, fd).size
        assert size == enhanced_orbit_size(bp)(q)
        total += size
    assert total == q ** (n * n)


@settings(max_examples=15)
@given(st.sampled_from(enumerate_bipartitions(3)), st.integers(0, 2**32 - 1))
def test_classify_random_conjugates(bp, seed):
    fd = make_field(2)
    rng = np.random.default_rng(seed)
    pt = en.representative(bp, fd).act(la.random_invertible(fd, 3, rng))
    assert en.classify(pt) == bp


def test_note_fixture():
    fd = make_field(2)
    pt = en.representative(NOTE, fd)
    assert en.ker_psi_count(NOTE, fd) == 2**11
    H = en.enumerate_H(NOTE, fd)
    assert len(H) == 6
    # orbit-stabiliser on the brute-force orbit
    assert gl_order(6)(2) // en.representative_orbit(NOTE, fd).size == 12288
    shape = shape_data(NOTE)
    images = set()
    for g in H:
        assert np.array_equal(fd.matmul(g, pt.v), pt.v)
        assert np.array_equal(fd.matmul(g, pt.x), fd.matmul(pt.x, g))
        images.add(tuple(b.tobytes() for b in en.psi_image(fd, g, shape)))
    assert len(images) == 6


@pytest.mark.parametrize("bp", enumerate_bipartitions(3), ids=str)
def test_H_is_closed_under_products(bp):
    fd = make_field(2)
    H = en.enumerate_H(bp, fd)
    keys = {g.tobytes() for g in H}
    for a in H:
        for b in H:
            assert fd.matmul(a, b).tobytes() in keys


def test_psi_rejects_non_stabilisers():
    fd = make_field(2)
    shape = shape_data(parse_bipartition("1;1"))
    with pytest.raises(ValueError):
        en.psi_image(fd, np.array([[1, 0], [1, 1]]), shape)


def test_direct_stabiliser_matches_count():
    fd = make_field(3)
    for bp in enumerate_bipartitions(2):
        pt = en.representative(bp, fd)
        assert len(en.stabiliser_elements(pt)) == en.stabiliser_count(pt)


def test_text_roundtrip():
    from nilcone.cli import read_point

    pt = en.representative(NOTE, make_field(3))
    back = read_point(pt.to_text())
    assert np.array_equal(back.v, pt.v) and np.array_equal(back.x, pt.x)
