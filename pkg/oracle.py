"""
卡牌游戏的相位预言机线路及其受控Z等价线路

预言机线路：每根线 |0> -> H -> U_k(r_k) -> H，r_k 在构造线路时作为经典参数给出。
等价线路：6 个量子比特，0-2 为查询比特，3-5 为数据比特 |r0 r1 r2>，
每张牌依次作用 H(查询k)、CZ(查询k, 数据k)、H(查询k)。
两者输出都是 |r> 的确定性读出，即预言机只是把朝上的面告诉了 Bob。
"""

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from config import Config
from qstate import (
    GatePlacement, StateVector, apply_1q, apply_cz, apply_placement, basis_state,
    kron_apply_reference, make_gate_h, make_gate_u, measure_all_distribution,
    overlap, states_equal, check_bit
)

NUM_CARDS = 3
DATA_OFFSET = NUM_CARDS  # 等价线路中数据比特的起始位置


@dataclass(frozen=True)
class CardRecord:
    """三张牌朝上的面 |r0 r1 r2>，0 = 圆圈朝上，1 = 圆点朝上"""
    r: Tuple[int, int, int]

    def __post_init__(self):
        bits = tuple(self.r)
        if len(bits) != NUM_CARDS:
            raise ValueError(f"卡牌记录必须包含{NUM_CARDS}个比特，当前为{bits!r}")
        object.__setattr__(self, 'r', tuple(check_bit(b, 'r_k') for b in bits))

    @property
    def index(self) -> int:
        """|r0 r1 r2> 的基矢索引（r0 为最高位）"""
        r0, r1, r2 = self.r
        return (r0 << 2) | (r1 << 1) | r2

    @classmethod
    def from_index(cls, idx: int) -> 'CardRecord':
        if not 0 <= idx < (1 << NUM_CARDS):
            raise ValueError(f"卡牌记录索引 {idx} 超出范围[0, 8)")
        return cls(((idx >> 2) & 1, (idx >> 1) & 1, idx & 1))

    @classmethod
    def all(cls) -> List['CardRecord']:
        """全部 8 种记录，按索引排序"""
        return [cls.from_index(i) for i in range(1 << NUM_CARDS)]

    def __str__(self):
        return ''.join(str(b) for b in self.r)


def fig1_placements(record: CardRecord) -> List[GatePlacement]:
    """预言机线路的门序列"""
    h = make_gate_h()
    placements = []
    for k, r_k in enumerate(record.r):
        placements += [
            GatePlacement.single(k, h),
            GatePlacement.single(k, make_gate_u(r_k)),
            GatePlacement.single(k, h),
        ]
    return placements


def fig2_placements() -> List[GatePlacement]:
    """等价线路的门序列，与卡牌无关（卡牌信息在数据比特的输入态中）"""
    h = make_gate_h()
    placements = []
    for k in range(NUM_CARDS):
        placements += [
            GatePlacement.single(k, h),
            GatePlacement.cz(k, DATA_OFFSET + k),
            GatePlacement.single(k, h),
        ]
    return placements


def fig2_input(record: CardRecord) -> StateVector:
    """|000> x |r0 r1 r2>，查询比特在高位，索引恰为 index(r)"""
    return basis_state(2 * NUM_CARDS, record.index)


def fig2_target_index(record: CardRecord) -> int:
    """|r>|r> 的索引 = index(r) * 8 + index(r)"""
    return (record.index << NUM_CARDS) | record.index


def run_fig1_oracle(record: CardRecord) -> StateVector:
    return apply_placement(basis_state(NUM_CARDS, 0), fig1_placements(record))


def run_fig2_equivalent(record: CardRecord) -> StateVector:
    return apply_placement(fig2_input(record), fig2_placements())


class SingleCardTrace(NamedTuple):
    """单张牌 (H x I) V_k (H x I) |0>|r_k> 的各中间态"""
    initial: StateVector
    after_h: StateVector
    after_v: StateVector
    output: StateVector


def single_card_trace(r_k: int) -> SingleCardTrace:
    r_k = check_bit(r_k)
    h = make_gate_h()
    initial = basis_state(2, r_k)
    after_h = apply_1q(initial, 0, h)
    after_v = apply_cz(after_h, 0, 1)
    output = apply_1q(after_v, 0, h)
    return SingleCardTrace(initial, after_h, after_v, output)


def single_card_identity(r_k: int) -> StateVector:
    """单张牌的变换结果，应等于 |r_k>|r_k>"""
    return single_card_trace(r_k).output


def _point_index(state: StateVector) -> int:
    return int(np.argmax(np.abs(state.amplitudes)))


def _max_off_target(state: StateVector, target: int) -> float:
    mags = np.abs(state.amplitudes).copy()
    mags[target] = 0.0
    return float(mags.max())


def _is_plus_one(value: complex, tol: float) -> bool:
    return abs(value.imag) <= tol and abs(value.real - 1.0) <= tol


@dataclass
class CaseResult:
    """单个卡牌配置的验证结果"""
    record: CardRecord
    fig1_index: int
    fig2_index: int
    max_off_target: float
    overlap_fig1: complex
    overlap_fig2: complex
    reference_max_diff: Optional[float]
    passed: bool


@dataclass
class TrivialityReport:
    cases: List[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return len(self.cases) == (1 << NUM_CARDS) and all(c.passed for c in self.cases)

    @property
    def num_passed(self) -> int:
        return sum(c.passed for c in self.cases)


def verify_case(record: CardRecord, tol: float = Config.CIRCUIT_TOL,
                cross_check: bool = True) -> CaseResult:
    """验证一个卡牌配置：两条线路都输出带 +1 相位的基矢"""
    fig1 = run_fig1_oracle(record)
    fig2 = run_fig2_equivalent(record)

    target1 = record.index
    target2 = fig2_target_index(record)
    expected1 = basis_state(NUM_CARDS, target1)
    expected2 = basis_state(2 * NUM_CARDS, target2)

    overlap1 = overlap(expected1, fig1)
    overlap2 = overlap(expected2, fig2)
    max_off = max(_max_off_target(fig1, target1), _max_off_target(fig2, target2))

    passed = (
        _point_index(fig1) == target1
        and _point_index(fig2) == target2
        and states_equal(fig1, expected1, tol)
        and states_equal(fig2, expected2, tol)
        and _is_plus_one(overlap1, tol)
        and _is_plus_one(overlap2, tol)
    )

    reference_diff = None
    if cross_check:
        ref1 = kron_apply_reference(basis_state(NUM_CARDS, 0), fig1_placements(record))
        ref2 = kron_apply_reference(fig2_input(record), fig2_placements())
        reference_diff = max(
            float(np.max(np.abs(ref1.amplitudes - fig1.amplitudes))),
            float(np.max(np.abs(ref2.amplitudes - fig2.amplitudes))),
        )
        passed = passed and reference_diff <= tol

    return CaseResult(
        record=record,
        fig1_index=_point_index(fig1),
        fig2_index=_point_index(fig2),
        max_off_target=max_off,
        overlap_fig1=overlap1,
        overlap_fig2=overlap2,
        reference_max_diff=reference_diff,
        passed=passed,
    )


def verify_triviality(tol: float = Config.CIRCUIT_TOL, cross_check: bool = True) -> TrivialityReport:
    """对全部 8 种卡牌配置验证预言机只是经典读出"""
    report = TrivialityReport()
    for record in CardRecord.all():
        case = verify_case(record, tol=tol, cross_check=cross_check)
        if not case.passed:
            logging.error(f"配置 r={record} 验证失败: fig1={case.fig1_index}, "
                          f"fig2={case.fig2_index}, 最大偏离振幅={case.max_off_target:.3e}")
        report.cases.append(case)

    logging.info(f"预言机验证完成: {report.num_passed}/{len(report.cases)} 通过")
    return report


def oracle_readout(record: CardRecord) -> CardRecord:
    """运行预言机线路并读出测量结果（确定性点分布）"""
    distribution = measure_all_distribution(run_fig1_oracle(record))
    idx, prob = max(distribution.items(), key=lambda item: item[1])
    if abs(prob - 1.0) > Config.NORM_TOL:
        raise RuntimeError(f"预言机输出不是确定性的: r={record}, 分布={distribution}")
    return CardRecord.from_index(idx)


def quantum_informant(r: Tuple[int, int, int]) -> Tuple[int, int, int]:
    """Bob 通过一次预言机查询得知的朝上面记录"""
    return oracle_readout(CardRecord(tuple(r))).r
