import pytest

from nilcone import suites
from nilcone.combinatorics import parse_bipartition


def all_pass(checks):
    failed = [c for c in checks if not c.passed]
    assert not failed, failed[:3]
    return checks


def test_check_records():
    c = suites.Check("x", 3, 3)
    assert c.passed and c.as_dict() == {"name": "x", "observed": 3, "expected": 3, "passed": True}
    assert not suites.Check("y", 1, 2).passed


def test_bounds():
    b = suites.Bounds()
    assert b.limit("enhanced-bfs", 2) == 4 and b.limit("enhanced-bfs", 3) == 3
    assert b.limit("exotic-bfs", 2) == 3 and b.limit("exotic-bfs", 3) == 2
    assert b.limit("symbolic", None) == 12
    assert b.limit("levi", 7) == b.fallback_n


@pytest.mark.parametrize("suite, n, q", [
    ("symbolic", 5, None),
    ("enhanced-bfs", 2, 3),
    ("exotic-bfs", 2, 2),
    ("fini", 2, 3),
    ("levi", 2, 2),
    ("commutant", 3, 3),
])
def test_suites_pass(suite, n, q):
    all_pass(suites.run_suite(suite, n, q))


def test_levi_exotic_sampled_branch():
    cfg = suites.RunConfig(samples=10)
    checks = all_pass(suites.levi_exotic(parse_bipartition(";1,1"), 2, cfg, brute_stabiliser=False, full_limit=10))
    assert any("recovers sampled" in c.name for c in checks)


def test_thread_count_does_not_change_results():
    one = suites.run_suite("levi", 2, 3, "exotic", suites.RunConfig(threads=1))
    many = suites.run_suite("levi", 2, 3, "exotic", suites.RunConfig(threads=4))
    assert [c.as_dict() for c in one] == [c.as_dict() for c in many]


def test_unknown_suite():
    with pytest.raises(ValueError):
        suites.run_suite("nope", 1, 2)
    with pytest.raises(ValueError):
        suites.run_suite("levi", 1, None)
