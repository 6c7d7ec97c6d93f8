"""Acceptance checks: one test per criterion, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; every line of the report is
one criterion.
"""

import math
import random
import time

import pytest

from minimal_codes.bounds import (
    bound_gap_table,
    entropy_q,
    epsilon_monotonicity_audit,
    epsilon_proof,
    is_prime_power,
    liminf_lower_bound,
    profile,
    solve_epsilon,
)
from minimal_codes.gfcodes import (
    LinearCode,
    ashikhmin_barg_check,
    enumerate_codewords,
    is_minimal_code,
    is_strong_blocking_set,
    projective_points,
    weight_profile,
)
from minimal_codes.search import SearchConfig, enumerate_families, search, to_mask

from oracles import brute_short_codes, random_projective_code

QS = [2, 3, 4, 5, 7, 8]
RATIOS = [3.5276, 4.5516, 5.568, 6.5805, 8.5987, 9.6057]
EPSILONS = [1.5204, 1.5450, 1.5624, 1.5757, 1.5951, 1.6025]
PRIME_POWERS_TO_64 = [q for q in range(2, 65) if is_prime_power(q)]
# smallest prime power above 10^6, which is not itself a field size
NEAR_MILLION = 1_000_003

_minimal_codes_seen: list[LinearCode] = []


@pytest.fixture(scope="module", autouse=True)
def _warm_kernel():
    # load the compiled search kernel once so timings measure the search only
    search(3)
    search(5)


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_01_liminf_table():
    rows, elapsed = _timed(bound_gap_table, QS)
    bad = []
    for row, expected in zip(rows, RATIOS):
        tol = 5e-4 if row.q == 4 else 1e-3
        if abs(row.liminf_ratio - expected) > tol:
            bad.append(f"q={row.q}: {row.liminf_ratio:.6f} vs {expected}")
    assert not bad, bad
    assert elapsed < 1.0, f"{elapsed:.3f}s"


def test_02_epsilon_table_monotonicity_and_limit():
    start = time.perf_counter()
    failures = []
    for q, expected in zip(QS, EPSILONS):
        eps = epsilon_proof(q).epsilon
        if abs(eps - expected) > 1e-3:
            failures.append(f"eps({q}) = {eps:.6f}, expected {expected}")
    if not epsilon_monotonicity_audit(PRIME_POWERS_TO_64):
        failures.append("epsilon not strictly increasing over prime powers 2..64")
    every_q = [solve_epsilon(q) for q in range(2, 65)]
    if any(b <= a for a, b in zip(every_q, every_q[1:])):
        failures.append("epsilon not strictly increasing over integers 2..64")
    limit = math.sqrt(2) + 0.5
    eps_big = epsilon_proof(NEAR_MILLION).epsilon
    if abs(eps_big - limit) > 1e-2:
        failures.append(f"eps({NEAR_MILLION}) = {eps_big:.6f} is {abs(eps_big - limit):.4f} from {limit:.6f}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s")
    assert not failures, failures


def test_03_plotkin_crossing_is_q_plus_one():
    for q in QS:
        _, ratio = liminf_lower_bound(q, profile("plotkin", q))
        assert abs(ratio - (q + 1)) <= 1e-9, (q, ratio)


def test_04_entropy_product_at_most_one():
    for q in PRIME_POWERS_TO_64:
        sol = epsilon_proof(q)
        assert sol.entropy_product <= 1 + 1e-9, (q, sol.entropy_product)
    for q in range(2, 65):
        eps = solve_epsilon(q)
        c = eps + 2 - 2 * math.sqrt(eps + 1)
        a = (q - 1) * c / (q * (q + eps))
        assert (q + eps) * entropy_q(a, q) <= 1 + 1e-9, q


def test_05_nonexistence():
    limits = {4: 1e-3, 6: 10.0, 8: 10.0, 7: 120.0, 10: 120.0}
    for N, limit in limits.items():
        cert, elapsed = _timed(search, N)
        assert cert.outcome == "exhausted", N
        assert elapsed < limit, f"N={N}: {elapsed:.4f}s >= {limit}s"
        if N == 4:
            assert cert.nodes == 0 and cert.pruned_by["parity"] > 0


def test_06_positive_controls():
    for N in (1, 2, 3, 5):
        cert = search(N)
        assert cert.found, N
        code = cert.generator
        assert (code.n, code.k) == (3 * N, N + 1)
        assert is_minimal_code(code)[0]
        d, w_max, _ = weight_profile(code)
        assert d == N + 1
        assert w_max <= 2 * N
        assert is_strong_blocking_set(projective_points(code))[0]
        _minimal_codes_seen.append(code)


def test_07_minimality_oracle_equivalence():
    rng = random.Random(20240601)
    agree = 0
    for _ in range(200):
        k = rng.randint(2, 5)
        n = rng.randint(k, min(12, 2**k - 1))
        code = LinearCode(tuple(random_projective_code(rng, 2, k, n)))
        assert code.is_nondegenerate() and projective_points(code).is_projective
        minimal = is_minimal_code(code)[0]
        blocking = is_strong_blocking_set(projective_points(code))[0]
        agree += minimal == blocking
        if ashikhmin_barg_check(code):
            assert minimal
        if minimal:
            _minimal_codes_seen.append(code)
    assert agree == 200


def test_08_small_completeness():
    for N in (1, 2, 3):
        ts = [N // 2] if N % 2 == 0 else [(N + 1) // 2, (N - 1) // 2]
        # P2 must fit inside {1..2N-1}, which rules out t = 0 for N = 1
        p2 = [to_mask(range(N - t + 1, 2 * N - t + 1)) for t in ts if t >= 1]
        brute = set(brute_short_codes(N, p2, N - 1))
        assert bool(brute) == search(N).found, N
        assert bool(brute) == search(N, SearchConfig(orbit_p3=False)).found, N
        if N >= 2:
            pruned = {f.rows for f in enumerate_families(N, SearchConfig(orbit_p3=False))}
            assert pruned == brute, N


def test_09_distance_and_weight_bounds():
    if not _minimal_codes_seen:
        test_06_positive_controls()
        test_07_minimality_oracle_equivalence()
    assert _minimal_codes_seen
    for code in _minimal_codes_seen:
        q, k, n = code.q, code.k, code.n
        assert code.d >= (q - 1) * (k - 1) + 1
        assert all(c.weight <= n - k + 1 for c in enumerate_codewords(code))
