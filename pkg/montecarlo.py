"""
蒙特卡洛期望收益估计

第 i 次试验的随机字由 (seed, i) 经 SplitMix64 终结函数确定性导出，
因此结果与分块大小、线程数和执行顺序无关。
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config import Config
from game import (
    NUM_CARDS, GameResult, Informant, PayoffScheme, ShuffleOutcome, StrategyKind, play_one
)
from utils import format_time

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# 计数列顺序
_RESULT_ORDER = (GameResult.ALICE_WINS, GameResult.BOB_WINS, GameResult.WITHDRAWN)


def splitmix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 终结函数（uint64 数组，溢出按模 2^64 回绕）"""
    z = np.asarray(x, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def trial_word(seed: int, index: int) -> int:
    """单次试验的随机字（纯 Python 实现，与 trial_words 逐位一致）"""
    z = (seed + (index + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def trial_words(seed: int, start: int, stop: int) -> np.ndarray:
    """试验 [start, stop) 的随机字"""
    idx = np.arange(start, stop, dtype=np.uint64)
    state = np.uint64(seed) + (idx + np.uint64(1)) * np.uint64(GOLDEN_GAMMA)
    return splitmix64(state)


@dataclass(frozen=True)
class MCEstimate:
    strategy: str
    scheme: str
    trials: int
    seed: int
    mean_alice: float
    mean_bob: float
    stderr_alice: float
    stderr_bob: float
    counts: Dict[str, int]


def _payoff_tables(strategy: StrategyKind, scheme: PayoffScheme,
                   informant: Optional[Informant]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """对 (朝向编码, 抽牌, 候选选择) 的全部组合预先计算收益和结果"""
    shape = (1 << NUM_CARDS, NUM_CARDS, 2)
    alice = np.zeros(shape, dtype=np.int64)
    bob = np.zeros(shape, dtype=np.int64)
    results = np.zeros(shape, dtype=np.int64)
    for code in range(shape[0]):
        for drawn in range(shape[1]):
            for pick in range(shape[2]):
                shuffle = ShuffleOutcome.from_code(code, drawn_index=drawn, pick=pick)
                result = play_one(strategy, shuffle, informant)
                alice[code, drawn, pick], bob[code, drawn, pick] = scheme.payoff(result)
                results[code, drawn, pick] = _RESULT_ORDER.index(result)
    return alice, bob, results


def _chunk_sums(seed: int, start: int, stop: int, tables) -> List[int]:
    """一个分块的整数累加量：[sum_a, sumsq_a, sum_b, sumsq_b, 各结果计数...]"""
    alice, bob, results = tables
    words = trial_words(seed, start, stop)
    code = (words & np.uint64(7)).astype(np.intp)
    pick = ((words >> np.uint64(3)) & np.uint64(1)).astype(np.intp)
    drawn = (((words >> np.uint64(32)) * np.uint64(NUM_CARDS)) >> np.uint64(32)).astype(np.intp)

    pay_a = alice[code, drawn, pick]
    pay_b = bob[code, drawn, pick]
    counts = np.bincount(results[code, drawn, pick], minlength=len(_RESULT_ORDER))
    return [
        int(pay_a.sum()), int((pay_a * pay_a).sum()),
        int(pay_b.sum()), int((pay_b * pay_b).sum()),
        *(int(c) for c in counts),
    ]


def _mean_and_stderr(total: int, total_sq: int, n: int) -> Tuple[float, float]:
    mean = total / n
    if n < 2:
        return mean, 0.0
    # 样本方差用精确有理数计算，避免大样本下的相消误差
    variance = Fraction(total_sq * n - total * total, n * (n - 1))
    return mean, math.sqrt(float(variance / n))


def mc_payoff(strategy: StrategyKind, scheme: PayoffScheme, trials: int, seed: int,
              chunk_size: int = Config.MC_CHUNK_SIZE, workers: int = 1,
              progress: bool = False, informant: Optional[Informant] = None) -> MCEstimate:
    """蒙特卡洛估计期望收益；结果是 (strategy, scheme, trials, seed) 的纯函数"""
    if not isinstance(trials, int) or isinstance(trials, bool) or trials < 1:
        raise ValueError(f"试验次数必须是正整数，当前为{trials!r}")
    if not isinstance(seed, int) or not 0 <= seed <= MASK64:
        raise ValueError(f"种子必须是64位无符号整数，当前为{seed!r}")
    if chunk_size < 1 or workers < 1:
        raise ValueError(f"分块大小和线程数必须为正: chunk_size={chunk_size}, workers={workers}")

    start_time = time.time()
    tables = _payoff_tables(strategy, scheme, informant)
    bounds = [(lo, min(lo + chunk_size, trials)) for lo in range(0, trials, chunk_size)]

    totals = [0] * (4 + len(_RESULT_ORDER))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        chunks = pool.map(lambda b: _chunk_sums(seed, b[0], b[1], tables), bounds)
        for sums in tqdm(chunks, total=len(bounds), desc="Monte Carlo", disable=not progress):
            totals = [t + s for t, s in zip(totals, sums)]

    mean_a, stderr_a = _mean_and_stderr(totals[0], totals[1], trials)
    mean_b, stderr_b = _mean_and_stderr(totals[2], totals[3], trials)
    counts = {result.value: totals[4 + i] for i, result in enumerate(_RESULT_ORDER)}

    logging.info(f"蒙特卡洛 [{strategy.value}/{scheme.name}] 试验 {trials:,} 次, "
                 f"{len(bounds)} 个分块, 用时 {format_time(time.time() - start_time)}")

    return MCEstimate(
        strategy=strategy.value,
        scheme=scheme.name,
        trials=trials,
        seed=seed,
        mean_alice=mean_a,
        mean_bob=mean_b,
        stderr_alice=stderr_a,
        stderr_bob=stderr_b,
        counts=counts,
    )
