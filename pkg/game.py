"""
三卡牌游戏：牌组、洗牌模型、Bob 的策略、收益方案与精确期望收益

三张牌：圆圈/圆圈、圆点/圆点、圆圈/圆点。Alice 把牌放进黑盒摇匀，Bob 抽一张；
两面相同则 Alice 赢，否则 Bob 赢。
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

Record = Tuple[int, int, int]
Informant = Callable[[Record], Record]

NUM_CARDS = 3


class Face(Enum):
    """牌面记号，取值与预言机中的比特一致"""
    CIRCLE = 0
    DOT = 1

    @property
    def symbol(self) -> str:
        return 'O' if self is Face.CIRCLE else 'D'


@dataclass(frozen=True)
class Card:
    face_a: Face
    face_b: Face

    @property
    def identical(self) -> bool:
        return self.face_a == self.face_b

    @property
    def label(self) -> str:
        return self.face_a.symbol + self.face_b.symbol


DECK: Tuple[Card, ...] = (
    Card(Face.CIRCLE, Face.CIRCLE),
    Card(Face.DOT, Face.DOT),
    Card(Face.CIRCLE, Face.DOT),
)


def _check_orientations(orientations: Sequence[int]) -> Tuple[int, int, int]:
    bits = tuple(orientations)
    if len(bits) != NUM_CARDS or any(b not in (0, 1) for b in bits):
        raise ValueError(f"朝向必须是{NUM_CARDS}个比特，当前为{orientations!r}")
    return tuple(int(b) for b in bits)


@dataclass(frozen=True)
class ShuffleOutcome:
    """
    一次原子随机结果

    orientations: 每张牌哪一面朝上（0 = face_a 朝上）
    drawn_index: 随机抽牌策略抽中的牌
    pick: 观察策略在两张候选牌中选第几张
    """
    orientations: Tuple[int, int, int]
    drawn_index: int = 0
    pick: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'orientations', _check_orientations(self.orientations))
        if self.drawn_index not in range(NUM_CARDS):
            raise ValueError(f"抽牌索引必须在[0, {NUM_CARDS})之间，当前为{self.drawn_index!r}")
        if self.pick not in (0, 1):
            raise ValueError(f"候选选择必须是0或1，当前为{self.pick!r}")

    @property
    def code(self) -> int:
        """朝向编码 o0 | o1<<1 | o2<<2"""
        o0, o1, o2 = self.orientations
        return o0 | (o1 << 1) | (o2 << 2)

    @classmethod
    def from_code(cls, code: int, drawn_index: int = 0, pick: int = 0) -> 'ShuffleOutcome':
        return cls((code & 1, (code >> 1) & 1, (code >> 2) & 1), drawn_index, pick)

    @classmethod
    def from_word(cls, word: int) -> 'ShuffleOutcome':
        """由一个64位随机字导出：0-2位为朝向，3位为候选选择，高32位乘3取整为抽牌"""
        word = int(word)
        drawn = ((word >> 32) * NUM_CARDS) >> 32
        return cls.from_code(word & 7, drawn_index=drawn, pick=(word >> 3) & 1)


class StrategyKind(Enum):
    NAIVE = 'naive'
    OBSERVE = 'observe'
    ORACLE_WITHDRAW = 'oracle-withdraw'


class GameResult(Enum):
    ALICE_WINS = 'alice_wins'
    BOB_WINS = 'bob_wins'
    WITHDRAWN = 'withdrawn'


@dataclass(frozen=True)
class PayoffScheme:
    """收益方案：(alice, bob) 在 Alice 赢 / Bob 赢时的收益；退出时双方为 0"""
    name: str
    on_alice_win: Tuple[int, int]
    on_bob_win: Tuple[int, int]

    @property
    def is_zero_sum(self) -> bool:
        return sum(self.on_alice_win) == 0 and sum(self.on_bob_win) == 0

    def payoff(self, result: GameResult) -> Tuple[int, int]:
        if result is GameResult.ALICE_WINS:
            return self.on_alice_win
        if result is GameResult.BOB_WINS:
            return self.on_bob_win
        return (0, 0)


ORIGINAL = PayoffScheme('original', on_alice_win=(1, -1), on_bob_win=(-1, 1))
FAIR = PayoffScheme('fair', on_alice_win=(1, -1), on_bob_win=(-2, 2))
SCHEMES: Dict[str, PayoffScheme] = {s.name: s for s in (ORIGINAL, FAIR)}


@dataclass(frozen=True)
class ExpectedPayoff:
    alice: Fraction
    bob: Fraction

    @property
    def total(self) -> Fraction:
        return self.alice + self.bob


def classical_informant(record: Record) -> Record:
    """第三方直接把朝上的面告诉 Bob"""
    return tuple(record)


def upper_face(card: Card, orientation: int) -> Face:
    return card.face_b if orientation else card.face_a


def upper_faces(orientations: Sequence[int]) -> Tuple[Face, ...]:
    orientations = _check_orientations(orientations)
    return tuple(upper_face(card, o) for card, o in zip(DECK, orientations))


def upper_record(orientations: Sequence[int]) -> Record:
    """朝上面的比特记录 r（0 = 圆圈，1 = 圆点），即预言机编码的 |r>"""
    return tuple(face.value for face in upper_faces(orientations))


def _minority_position(faces: Sequence[Face]) -> int:
    counts = Counter(faces)
    minority = [face for face, count in counts.items() if count == 1]
    if len(minority) != 1:
        raise RuntimeError(f"不变式被破坏：朝上面 {[f.symbol for f in faces]} 没有唯一的少数面")
    return list(faces).index(minority[0])


def minority_card_index(orientations: Sequence[int]) -> int:
    """朝上面与另外两张不同的那张牌；它必然两面相同"""
    idx = _minority_position(upper_faces(orientations))
    if not DECK[idx].identical:
        raise RuntimeError(f"不变式被破坏：少数面的牌 {DECK[idx].label} 两面不同")
    return idx


def remaining_cards(orientations: Sequence[int]) -> Tuple[int, int]:
    """少数面之外的两张牌，按索引升序"""
    minority = minority_card_index(orientations)
    return tuple(i for i in range(NUM_CARDS) if i != minority)


def random_shuffle(rng: np.random.Generator) -> ShuffleOutcome:
    return ShuffleOutcome.from_word(int(rng.bit_generator.random_raw()))


def drawn_card(strategy: StrategyKind, shuffle: ShuffleOutcome) -> int:
    """该策略下实际抽到的牌"""
    if strategy is StrategyKind.OBSERVE:
        return remaining_cards(shuffle.orientations)[shuffle.pick]
    return shuffle.drawn_index


def play_one(strategy: StrategyKind,
             shuffle: Union[ShuffleOutcome, np.random.Generator],
             informant: Optional[Informant] = None) -> GameResult:
    """进行一局游戏"""
    if isinstance(shuffle, np.random.Generator):
        shuffle = random_shuffle(shuffle)

    drawn = drawn_card(strategy, shuffle)

    if strategy is StrategyKind.ORACLE_WITHDRAW:
        # Bob 得知全部朝上面后，若抽到的牌朝上面与另两张都不同则退出
        learned = (informant or classical_informant)(upper_record(shuffle.orientations))
        if _minority_position([Face(b) for b in learned]) == drawn:
            return GameResult.WITHDRAWN

    return GameResult.ALICE_WINS if DECK[drawn].identical else GameResult.BOB_WINS


def atomic_outcomes(strategy: StrategyKind) -> List[Tuple[ShuffleOutcome, Fraction]]:
    """全部原子结果及其概率：8 种朝向 x (3 种抽牌 或 2 种候选选择)"""
    outcomes = []
    if strategy is StrategyKind.OBSERVE:
        prob = Fraction(1, (1 << NUM_CARDS) * 2)
        for code in range(1 << NUM_CARDS):
            for pick in (0, 1):
                outcomes.append((ShuffleOutcome.from_code(code, pick=pick), prob))
    else:
        prob = Fraction(1, (1 << NUM_CARDS) * NUM_CARDS)
        for code in range(1 << NUM_CARDS):
            for drawn in range(NUM_CARDS):
                outcomes.append((ShuffleOutcome.from_code(code, drawn_index=drawn), prob))
    return outcomes


@dataclass(frozen=True)
class OutcomeRow:
    shuffle: ShuffleOutcome
    drawn_index: int
    result: GameResult
    probability: Fraction
    payoff: Tuple[int, int]

    @property
    def description(self) -> str:
        faces = ''.join(f.symbol for f in upper_faces(self.shuffle.orientations))
        orient = ''.join(str(o) for o in self.shuffle.orientations)
        return f"orient={orient} up={faces} draw={self.drawn_index}({DECK[self.drawn_index].label})"


def enumerate_outcomes(strategy: StrategyKind, scheme: PayoffScheme,
                       informant: Optional[Informant] = None) -> List[OutcomeRow]:
    """逐个列出原子结果、概率和收益"""
    rows = []
    for shuffle, prob in atomic_outcomes(strategy):
        result = play_one(strategy, shuffle, informant)
        rows.append(OutcomeRow(
            shuffle=shuffle,
            drawn_index=drawn_card(strategy, shuffle),
            result=result,
            probability=prob,
            payoff=scheme.payoff(result),
        ))
    return rows


def result_probabilities(strategy: StrategyKind,
                         informant: Optional[Informant] = None) -> Dict[GameResult, Fraction]:
    """各游戏结果的精确概率"""
    probs = {result: Fraction(0) for result in GameResult}
    for shuffle, prob in atomic_outcomes(strategy):
        probs[play_one(strategy, shuffle, informant)] += prob
    return probs


def analytic_payoff(strategy: StrategyKind, scheme: PayoffScheme,
                    informant: Optional[Informant] = None) -> ExpectedPayoff:
    """精确期望收益：按结果概率加权"""
    alice = Fraction(0)
    bob = Fraction(0)
    for result, prob in result_probabilities(strategy, informant).items():
        pay_a, pay_b = scheme.payoff(result)
        alice += prob * pay_a
        bob += prob * pay_b

    logging.info(f"解析期望收益 [{strategy.value}/{scheme.name}]: alice={alice}, bob={bob}")
    return ExpectedPayoff(alice, bob)
