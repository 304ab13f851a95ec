"""Acceptance suite: one test per criterion, at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS/FAIL line
per criterion, including measured wall time against the stated budget.
"""

import math
import random
from contextlib import contextmanager
from fractions import Fraction
from time import perf_counter

from conftest import brute_force_classical_value
from xorgames import (
    LessThanOne,
    MerpStrategy,
    PrefSpecification,
    Word,
    apd,
    capped_ghz,
    classical_refutation,
    classical_value1,
    classical_value_exact,
    decide_symmetric,
    duality_check,
    find_merp,
    find_pref,
    game_123,
    game_matrix,
    ghz,
    induced_pref_vector,
    is_refutation,
    merp_value,
    min_refutation_bfs,
    random_game,
    random_symmetric_game,
    reduce_word,
    sigma2,
    small_123,
    verify_pref,
)
from xorgames.builder import (
    build_refutation_symmetric,
    compose_shuffles,
    shuffle_decompose,
    value_upper_bound_from_refutation,
)
from xorgames.experiments import wire_coverage
from xorgames.games import apd_b_matrix
from xorgames.linalg import integer_kernel_basis
from xorgames.quantum import merp_assignment, merp_state, simulate_strategy_value, verify_123


@contextmanager
def criterion(num: int, budget_s: float, description: str):
    start = perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE {num:2d} FAIL: {description}")
        raise
    elapsed = perf_counter() - start
    print(f"\nACCEPTANCE {num:2d} PASS: {description} [{elapsed:.2f}s <= {budget_s:g}s]")
    assert elapsed <= budget_s, f"runtime {elapsed:.2f}s over the {budget_s}s budget"


def test_criterion_01_ghz():
    with criterion(1, 1.0, "GHZ: no PREF, exact perfect MERP, simulated value 1, classical 3/4"):
        g = ghz()
        assert find_pref(g) is None
        strategy = find_merp(g)
        assert strategy is not None
        exact, _ = merp_value(g, strategy)
        assert exact
        simulated = simulate_strategy_value(g, merp_assignment(g, strategy), merp_state(3))
        assert simulated >= 1 - 1e-9
        assert classical_value_exact(g) == Fraction(3, 4)
        assert brute_force_classical_value(g) == Fraction(3, 4)


def test_criterion_02_capped_ghz_family():
    gen = (-1, 1, 1, 1, -2, -2, -2, 4)
    for n in range(2, 9):
        with criterion(2, 5.0, f"capped GHZ n={n}: PREF decision + built refutation verifies"):
            g = capped_ghz(n)
            outcome = decide_symmetric(g)
            assert isinstance(outcome, LessThanOne)
            assert verify_pref(g, outcome.pref.z)
            if n == 3:
                assert outcome.pref.z in (gen, tuple(-v for v in gen))
            cert = build_refutation_symmetric(g, outcome.pref.z)
            assert is_refutation(g, cert.indices)
            bound = value_upper_bound_from_refutation(g.m, len(cert.indices))
            assert bound < 1


def test_criterion_03_cg2_bfs_minimum():
    with criterion(3, 30.0, "capped GHZ n=2: BFS refutation exists, minimum >= 6"):
        g = capped_ghz(2)
        found = min_refutation_bfs(g, max_len=8)
        assert found is not None
        length, indices = found
        assert is_refutation(g, indices)
        assert length >= 2 ** (2 + 1) - 2
        print(f"  exact minimum refutation length for CG_2: {length}")


def test_criterion_04_123_game():
    with criterion(4, 1.0, "123 game: PREF exists yet the Pauli strategy is perfect; classical 5/6"):
        g = game_123()
        pref = find_pref(g)
        assert pref is not None and verify_pref(g, pref.z)
        assert verify_123()  # residual tolerance 1e-12 inside
        assert classical_value_exact(g) == Fraction(5, 6)


def test_criterion_05_small123_printed_refutation():
    with criterion(5, 1.0, "small 123 game: printed clause order is a refutation"):
        assert is_refutation(small_123(), (1, 2, 3, 4, 5, 6))


def test_criterion_06_apd_family():
    with criterion(6, 10.0, "APD K=1..6: trivial kernels, sigma2 = K+1, perfect MERP for any signs"):
        rng = random.Random(2718)
        for K in range(1, 7):
            assert integer_kernel_basis(apd_b_matrix(K)) == []
            assert sigma2(apd(K)) == K + 1
            for _ in range(20):
                g = apd(K, "random", seed=rng.randint(0, 2**32))
                assert find_pref(g) is None
                strategy = find_merp(g)
                assert strategy is not None
                exact, _ = merp_value(g, strategy)
                assert exact
        for K in (2, 3):
            value = classical_value_exact(apd(K, "adversarial"))
            assert value <= Fraction(1, 2) + math.sqrt((K + 1) / 2 ** (K + 1))


def test_criterion_07_duality_property_suites():
    with criterion(7, 60.0, "1000 random games: exclusive classical and PREF/MERP dualities"):
        rng = random.Random(31415)
        for _ in range(1000):
            k = rng.choice((2, 3, 4))
            n = rng.randint(1, 6)
            m = rng.randint(1, 20)
            g = random_game(k, n, m, seed=rng.randint(0, 2**32))
            a, s_hat = game_matrix(g)

            strategy = classical_value1(g)
            refutation = classical_refutation(g)
            assert (strategy is None) != (refutation is None)
            if strategy is not None:
                out = [sum(r * e for r, e in zip(row, strategy.bits)) % 2 for row in a]
                assert out == s_hat
            else:
                y = refutation.y
                for j in range(k * n):
                    assert sum(a[i][j] * y[i] for i in range(m)) % 2 == 0
                assert sum(s * v for s, v in zip(s_hat, y)) % 2 == 1

            outcome = duality_check(g)
            if isinstance(outcome, PrefSpecification):
                assert verify_pref(g, outcome.z)  # independent counting check
                for j in range(k * n):
                    assert sum(a[i][j] * outcome.z[i] for i in range(m)) == 0
            else:
                assert isinstance(outcome, MerpStrategy)
                exact, _ = merp_value(g, outcome)
                assert exact


def test_criterion_08_random_unsat_phase():
    with criterion(8, 120.0, "random 3-XOR n=30 m=99: PREF found in >= 195 of 200 trials"):
        found = 0
        for t in range(200):
            g = random_game(3, 30, 99, seed=9000 + t)
            if find_pref(g) is not None:
                found += 1
        print(f"  PREF found in {found}/200 trials (per-trial bound 1 - 2^-9)")
        assert found >= 195


def test_criterion_09_giant_component():
    with criterion(9, 60.0, "bipartite letter graph n=2000: coverage >= 0.95 in >= 18/20 trials"):
        n = 2000
        m = math.ceil(3.3 * n)
        good = 0
        for t in range(20):
            g = random_game(3, n, m, seed=500 + t)
            edges = [(c.query[2], c.query[1]) for c in g.clauses]
            if wire_coverage(n, edges) >= 0.95:
                good += 1
        print(f"  coverage >= 0.95 in {good}/20 trials")
        assert good >= 18


def test_criterion_10_word_engine_properties():
    with criterion(10, 60.0, "reduction laws on 10^4 words; built certificates induce valid PREFs"):
        rng = random.Random(6022)
        for _ in range(10_000):
            wires = tuple(
                tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 12)))
                for _ in range(rng.randint(1, 4))
            )
            w = Word(wires)
            reduced = reduce_word(w)
            assert reduce_word(reduced) == reduced
            assert reduce_word(w.concat(w.reverse())).is_identity()

        certs = []
        for n in range(2, 9):
            g = capped_ghz(n)
            certs.append((g, build_refutation_symmetric(g, find_pref(g).z).indices))
        seed = 0
        built = 0
        while built < 10:
            seed += 1
            g = random_symmetric_game(3, 3, 4, seed)
            pref = find_pref(g)
            if pref is None:
                continue
            certs.append((g, build_refutation_symmetric(g, pref.z).indices))
            built += 1
        length, indices = min_refutation_bfs(capped_ghz(2), max_len=8)
        certs.append((capped_ghz(2), indices))
        for g, indices in certs:
            assert is_refutation(g, indices)
            assert verify_pref(g, induced_pref_vector(g, indices))


def test_criterion_11_shuffle_decomposition():
    with criterion(11, 10.0, "100 random permutations L <= 64 decompose into valid riffles"):
        rng = random.Random(1618)
        for _ in range(100):
            length = rng.randint(1, 64)
            perm = list(range(length))
            rng.shuffle(perm)
            factors = shuffle_decompose(perm)
            if length > 1:
                assert len(factors) <= math.ceil(math.log2(length))
            else:
                assert factors == []
            assert compose_shuffles(factors, length) == tuple(perm)
            for f in factors:
                assert f.is_valid()
