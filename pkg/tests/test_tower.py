import math
import time

import pytest

from cycloset import (
    CapacityError,
    CosetPartition,
    CyclotomicCoset,
    enumerate_cosets,
    enumerate_naive,
    factorization_plan,
    lift_partition,
    project,
    verify,
    worker_count,
)


def _seed(q):
    return CosetPartition(q, 1, (CyclotomicCoset(q, 1, 0, 1),))


def test_factorization_plan():
    assert factorization_plan(3888).factors == ((2, 4), (3, 5))
    assert factorization_plan(1).factors == ()
    assert factorization_plan(360).factors == ((2, 3), (3, 2), (5, 1))
    assert factorization_plan(3888).modulus == 3888


def test_lift_partition_identity():
    base = enumerate_cosets(5, 16)
    assert lift_partition(3, 5, base, 0) is base


def test_lift_partition_mod16():
    part = lift_partition(2, 5, _seed(5), 4)
    assert [(c.rep, c.size) for c in part.cosets] == [
        (0, 1), (1, 4), (2, 2), (3, 4), (4, 1), (6, 2), (8, 1), (12, 1),
    ]


def test_lift_partition_errors():
    base16 = enumerate_cosets(5, 16)
    with pytest.raises(ValueError):
        lift_partition(2, 5, base16, 1)  # base modulus not coprime to ell
    with pytest.raises(ValueError):
        lift_partition(5, 5, _seed(5), 1)  # ell divides q
    with pytest.raises(ValueError):
        lift_partition(4, 5, _seed(5), 1)  # ell not prime
    with pytest.raises(CapacityError):
        lift_partition(2, 5, _seed(5), 63)


def test_enumerate_cosets_golden():
    part = enumerate_cosets(5, 16)
    assert part.reps() == [0, 1, 2, 3, 4, 6, 8, 12]
    assert [c.size for c in part.cosets] == [1, 4, 2, 4, 1, 2, 1, 1]

    part = enumerate_cosets(7, 1)
    assert [(c.rep, c.size) for c in part.cosets] == [(0, 1)]

    part = enumerate_cosets(5, 3888)
    assert len(part.cosets) == 68
    assert part.total() == 3888
    assert part.size_counter() == enumerate_naive(5, 3888).size_counter()
    # fixed points are exactly the multiples of 972
    assert sorted(c.rep for c in part.cosets if c.size == 1) == [0, 972, 1944, 2916]


def test_enumerate_cosets_errors():
    with pytest.raises(ValueError):
        enumerate_cosets(6, 7)  # q not a prime power
    with pytest.raises(ValueError):
        enumerate_cosets(5, 10)  # gcd(q, n) != 1
    with pytest.raises(ValueError):
        enumerate_cosets(5, 0)


def test_prime_order_independence():
    # folding the towers largest-prime-first relabels cosets but yields
    # the same partition
    for q, n in ((5, 3888), (7, 720), (2, 1575)):
        ascending = enumerate_cosets(q, n)
        part = _seed(q)
        for ell, f in reversed(factorization_plan(n).factors):
            part = lift_partition(ell, q, part, f)
        assert part.n == ascending.n
        assert part.leader_map() == ascending.leader_map()


def test_projection_refinement():
    part = enumerate_cosets(5, 3888)
    for n_prime in (16, 243, 48, 1296, 3888, 1):
        projected = {project(c, n_prime).leader() for c in part.cosets}
        assert projected == set(enumerate_cosets(5, n_prime).leader_map())


def test_verify_golden():
    report = verify(5, 3888)
    assert report.match
    assert report.coset_count == 68
    assert report.mismatches == ()

    report = verify(2, 7)
    assert report.match
    assert report.coset_count == 3

    assert verify(7, 1).match


def test_verify_cap():
    with pytest.raises(CapacityError):
        verify(2, 1001, oracle_cap=1000)


def test_structured_path_is_fast():
    enumerate_cosets(5, 3888)  # warm caches
    t0 = time.perf_counter()
    part = enumerate_cosets(5, 3888)
    elapsed = time.perf_counter() - t0
    assert part.total() == 3888
    assert elapsed < 0.010


def test_large_smooth_modulus_without_orbits():
    # ~3.8e12: hopeless for any orbit walk, fine for the closed forms
    n = 2**12 * 3**10 * 5**6
    t0 = time.perf_counter()
    part = enumerate_cosets(7, n)
    elapsed = time.perf_counter() - t0
    assert part.total() == n
    assert all(0 <= c.rep < n for c in part.cosets)
    assert elapsed < 10.0


def test_worker_count_env(monkeypatch):
    monkeypatch.delenv("CYCLOSET_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("CYCLOSET_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("CYCLOSET_THREADS", "junk")
    assert worker_count() == 1


def test_threaded_lift_is_deterministic():
    base = enumerate_cosets(5, 16)
    sequential = lift_partition(3, 5, base, 5, workers=1)
    threaded = lift_partition(3, 5, base, 5, workers=4)
    assert sequential == threaded


def test_verify_sweep_sample():
    for q in (2, 3, 4, 5):
        for n in range(1, 120):
            if math.gcd(q, n) != 1:
                continue
            assert verify(q, n).match, (q, n)
