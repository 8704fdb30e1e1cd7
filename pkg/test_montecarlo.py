#!/usr/bin/env python3
"""
蒙特卡洛估计测试
"""

import time

import numpy as np
import pytest

from game import SCHEMES, GameResult, ShuffleOutcome, StrategyKind, analytic_payoff, play_one
from montecarlo import MASK64, mc_payoff, splitmix64, trial_word, trial_words
from oracle import quantum_informant

PAIRS = [(strategy, name) for strategy in StrategyKind for name in SCHEMES]


def test_trial_word_known_value():
    # SplitMix64 以 0 为种子的第一个输出
    assert trial_word(0, 0) == 0xE220A8397B1DCDAF


def test_trial_words_match_scalar():
    for seed in (0, 42, MASK64):
        words = trial_words(seed, 5, 20)
        assert [int(w) for w in words] == [trial_word(seed, i) for i in range(5, 20)]
    assert int(splitmix64(np.array([0], dtype=np.uint64))[0]) == 0


def test_mc_is_deterministic():
    scheme = SCHEMES['fair']
    a = mc_payoff(StrategyKind.OBSERVE, scheme, trials=50_000, seed=7)
    b = mc_payoff(StrategyKind.OBSERVE, scheme, trials=50_000, seed=7)
    assert a == b
    c = mc_payoff(StrategyKind.OBSERVE, scheme, trials=50_000, seed=8)
    assert c != a


def test_mc_independent_of_chunking_and_threads():
    scheme = SCHEMES['original']
    base = mc_payoff(StrategyKind.ORACLE_WITHDRAW, scheme, trials=100_003, seed=123)
    for chunk_size, workers in [(1000, 1), (4096, 4), (100_003, 2), (777, 3)]:
        other = mc_payoff(StrategyKind.ORACLE_WITHDRAW, scheme, trials=100_003, seed=123,
                          chunk_size=chunk_size, workers=workers)
        assert other == base


@pytest.mark.parametrize("strategy", list(StrategyKind))
def test_vectorized_matches_play_one(strategy):
    scheme = SCHEMES['fair']
    seed, trials = 99, 2_000
    estimate = mc_payoff(strategy, scheme, trials=trials, seed=seed)

    total_a = 0
    counts = {result.value: 0 for result in GameResult}
    for i in range(trials):
        result = play_one(strategy, ShuffleOutcome.from_word(trial_word(seed, i)))
        total_a += scheme.payoff(result)[0]
        counts[result.value] += 1

    assert estimate.mean_alice == total_a / trials
    assert estimate.counts == counts


def test_mc_converges_for_all_pairs():
    start = time.perf_counter()
    for strategy, name in PAIRS:
        scheme = SCHEMES[name]
        exact = analytic_payoff(strategy, scheme)
        estimate = mc_payoff(strategy, scheme, trials=1_000_000, seed=42)
        assert abs(estimate.mean_alice - float(exact.alice)) <= 0.006
        assert abs(estimate.mean_bob - float(exact.bob)) <= 0.006
        assert sum(estimate.counts.values()) == 1_000_000
    assert time.perf_counter() - start < 10.0


def test_oracle_withdraw_any_seed_near_zero():
    estimate = mc_payoff(StrategyKind.ORACLE_WITHDRAW, SCHEMES['original'], trials=1_000_000, seed=0)
    assert abs(estimate.mean_alice) <= 0.006
    assert abs(estimate.mean_bob) <= 0.006
    for count in estimate.counts.values():
        assert count / 1_000_000 == pytest.approx(1 / 3, abs=0.005)


def test_mc_within_four_standard_errors():
    for strategy, name in PAIRS:
        scheme = SCHEMES[name]
        exact = float(analytic_payoff(strategy, scheme).alice)
        hits = 0
        for seed in range(100):
            estimate = mc_payoff(strategy, scheme, trials=100_000, seed=seed)
            hits += abs(estimate.mean_alice - exact) <= 4 * estimate.stderr_alice
        assert hits >= 99


def test_standard_error():
    # 原始方案下收益只取 +-1，标准误差约为 sqrt(1 - mean^2) / sqrt(n)
    estimate = mc_payoff(StrategyKind.NAIVE, SCHEMES['original'], trials=100_000, seed=3)
    expected = np.sqrt((1 - estimate.mean_alice ** 2) * 100_000 / 99_999) / np.sqrt(100_000)
    assert estimate.stderr_alice == pytest.approx(expected, rel=1e-9)
    assert estimate.stderr_bob == pytest.approx(estimate.stderr_alice, rel=1e-12)


def test_single_trial_has_zero_stderr():
    estimate = mc_payoff(StrategyKind.NAIVE, SCHEMES['original'], trials=1, seed=0)
    assert estimate.stderr_alice == 0.0
    assert estimate.mean_alice in (-1.0, 1.0)


@pytest.mark.parametrize("trials, seed", [(0, 0), (-5, 0), (10, -1), (10, 1 << 64)])
def test_mc_rejects_bad_arguments(trials, seed):
    with pytest.raises(ValueError):
        mc_payoff(StrategyKind.NAIVE, SCHEMES['original'], trials=trials, seed=seed)


def test_mc_quantum_informant_matches_classical():
    scheme = SCHEMES['fair']
    classical = mc_payoff(StrategyKind.ORACLE_WITHDRAW, scheme, trials=20_000, seed=11)
    quantum = mc_payoff(StrategyKind.ORACLE_WITHDRAW, scheme, trials=20_000, seed=11,
                        informant=quantum_informant)
    assert classical == quantum
