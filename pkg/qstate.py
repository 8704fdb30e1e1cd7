"""
最小态矢量模拟器

索引约定：qubit 0 是 ket 记号中最左侧的符号，即基矢索引的最高位，
|b0 b1 ... b_{n-1}> 的索引为 sum(b_k * 2^(n-1-k))。
"""

from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from config import Config


class QStateError(ValueError):
    """态矢量模拟错误基类"""


class InvalidArgumentError(QStateError):
    """参数不合法（量子比特数、索引、门形状等）"""


class UnsupportedSizeError(QStateError):
    """超出参考路径支持的规模"""


class InvalidStateError(QStateError):
    """态矢量未归一化或含有非有限值"""


def _check_num_qubits(n: int, limit: int = Config.MAX_QUBITS):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or not 1 <= n <= limit:
        raise InvalidArgumentError(f"量子比特数必须在[1, {limit}]之间，当前为{n!r}")


def _check_qubit(q: int, n: int, name: str = 'q'):
    if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or not 0 <= q < n:
        raise InvalidArgumentError(f"量子比特索引 {name}={q!r} 超出范围[0, {n})")


def check_bit(value: int, name: str = 'r_k') -> int:
    if not isinstance(value, (int, np.integer)) or value not in (0, 1):
        raise InvalidArgumentError(f"{name} 必须是比特0或1，当前为{value!r}")
    return int(value)


def _bit_mask(n: int, q: int) -> np.ndarray:
    """所有基矢中 qubit q 为1的位置"""
    return ((np.arange(1 << n) >> (n - 1 - q)) & 1).astype(bool)


class StateVector:
    """
    n 量子比特态矢量（不可变）

    振幅为 complex128 数组，长度 2^n；构造后数组只读。
    """

    __slots__ = ('_num_qubits', '_amplitudes')

    def __init__(self, amplitudes, check_norm: bool = True):
        arr = np.array(amplitudes, dtype=np.complex128)
        if arr.ndim != 1:
            raise InvalidArgumentError(f"振幅必须是一维数组，当前维度为{arr.ndim}")

        dim = arr.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or (1 << n) != dim:
            raise InvalidArgumentError(f"振幅长度必须为2^n，当前为{dim}")
        _check_num_qubits(n)

        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("振幅包含NaN或Inf")

        if check_norm:
            norm = float(np.vdot(arr, arr).real)
            if abs(norm - 1.0) > Config.NORM_TOL:
                raise InvalidStateError(f"态矢量未归一化: |psi|^2 = {norm!r}")

        arr.setflags(write=False)
        self._num_qubits = n
        self._amplitudes = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray, n: int) -> 'StateVector':
        # 内核输出已是新数组且保范，跳过校验
        obj = cls.__new__(cls)
        arr.setflags(write=False)
        obj._num_qubits = n
        obj._amplitudes = arr
        return obj

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def ket_label(self, idx: int) -> str:
        """基矢索引的 ket 标签，如 5 -> '101'"""
        return format(idx, f'0{self._num_qubits}b')

    def __repr__(self):
        terms = [
            f"({amp.real:+.6g}{amp.imag:+.6g}j)|{self.ket_label(i)}>"
            for i, amp in enumerate(self._amplitudes) if amp != 0
        ]
        return f"StateVector(n={self._num_qubits}, {' '.join(terms) or '0'})"


def is_unitary(matrix: np.ndarray, tol: float = Config.UNITARY_TOL) -> bool:
    """检查 G^dagger G = I（逐元素容差）"""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))) <= tol


class Gate1Q:
    """单量子比特门（2x2 幺正矩阵，构造时校验幺正性）"""

    __slots__ = ('_entries', 'name')

    def __init__(self, entries, name: str = 'U'):
        m = np.array(entries, dtype=np.complex128)
        if m.shape != (2, 2):
            raise InvalidArgumentError(f"单比特门必须是2x2矩阵，当前形状为{m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidArgumentError(f"门 {name} 包含NaN或Inf")
        if not is_unitary(m):
            raise InvalidArgumentError(f"门 {name} 不是幺正矩阵")
        m.setflags(write=False)
        self._entries = m
        self.name = name

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __matmul__(self, other: 'Gate1Q') -> 'Gate1Q':
        return Gate1Q(self._entries @ other._entries, name=f"{self.name}{other.name}")

    def __repr__(self):
        return f"Gate1Q({self.name}, {self._entries.tolist()})"


def identity_gate() -> Gate1Q:
    return Gate1Q(np.eye(2), name='I')


def make_gate_h() -> Gate1Q:
    """Hadamard 门 (1/sqrt2)[[1,1],[1,-1]]"""
    s = 1.0 / np.sqrt(2.0)
    return Gate1Q([[s, s], [s, -s]], name='H')


def make_gate_x() -> Gate1Q:
    return Gate1Q([[0, 1], [1, 0]], name='X')


def make_gate_z() -> Gate1Q:
    return Gate1Q([[1, 0], [0, -1]], name='Z')


def make_gate_u(r_k: int) -> Gate1Q:
    """
    相位门 U_k = diag(1, e^{i pi r_k})

    e^{i pi r_k} 直接取精确实数 (-1)^{r_k}：r_k=0 为 I，r_k=1 为 sigma_z。
    """
    r_k = check_bit(r_k)
    phase = -1.0 if r_k else 1.0
    return Gate1Q([[1, 0], [0, phase]], name=f'U({r_k})')


def basis_state(n: int, idx: int) -> StateVector:
    """计算基矢 |idx>"""
    _check_num_qubits(n)
    if not isinstance(idx, (int, np.integer)) or isinstance(idx, bool) or not 0 <= idx < (1 << n):
        raise InvalidArgumentError(f"基矢索引 {idx!r} 超出范围[0, {1 << n})")
    arr = np.zeros(1 << n, dtype=np.complex128)
    arr[idx] = 1.0
    return StateVector._wrap(arr, n)


def apply_1q(state: StateVector, q: int, g: Gate1Q) -> StateVector:
    """在 qubit q 上作用 I x ... x g x ... x I"""
    n = state.num_qubits
    _check_qubit(q, n)
    # 按位步长重排为 (高位块, 目标位, 低位块)
    psi = state.amplitudes.reshape(1 << q, 2, 1 << (n - q - 1))
    out = np.einsum('ij,ajb->aib', g.entries, psi)
    return StateVector._wrap(np.ascontiguousarray(out).reshape(-1), n)


def apply_cz(state: StateVector, a: int, b: int) -> StateVector:
    """受控Z：a、b 均为1的基矢振幅取反"""
    n = state.num_qubits
    _check_qubit(a, n, 'a')
    _check_qubit(b, n, 'b')
    if a == b:
        raise InvalidArgumentError(f"受控Z的两个量子比特必须不同: a=b={a}")
    out = state.amplitudes.copy()
    mask = _bit_mask(n, a) & _bit_mask(n, b)
    out[mask] = -out[mask]
    return StateVector._wrap(out, n)


@dataclass(frozen=True)
class GatePlacement:
    """一次门放置：单比特门或受控Z"""
    kind: str
    qubits: Tuple[int, ...]
    gate: Optional[Gate1Q] = None

    @classmethod
    def single(cls, q: int, gate: Gate1Q) -> 'GatePlacement':
        return cls('single', (q,), gate)

    @classmethod
    def cz(cls, a: int, b: int) -> 'GatePlacement':
        return cls('cz', (a, b))

    def describe(self) -> str:
        if self.kind == 'single':
            return f"{self.gate.name}[{self.qubits[0]}]"
        return f"CZ[{self.qubits[0]},{self.qubits[1]}]"


Placements = Union[GatePlacement, Sequence[GatePlacement]]


def _as_placements(placement: Placements) -> List[GatePlacement]:
    if isinstance(placement, GatePlacement):
        return [placement]
    return list(placement)


def apply_placement(state: StateVector, placement: Placements) -> StateVector:
    """按顺序在快速路径上执行一个或多个门放置"""
    for p in _as_placements(placement):
        if p.kind == 'single':
            state = apply_1q(state, p.qubits[0], p.gate)
        elif p.kind == 'cz':
            state = apply_cz(state, *p.qubits)
        else:
            raise InvalidArgumentError(f"未知的门放置类型: {p.kind}")
    return state


def _placement_matrix(p: GatePlacement, n: int) -> np.ndarray:
    """展开为完整的 2^n x 2^n 矩阵"""
    if p.kind == 'single':
        q = p.qubits[0]
        _check_qubit(q, n)
        factors = [p.gate.entries if k == q else np.eye(2) for k in range(n)]
        return reduce(np.kron, factors)
    if p.kind == 'cz':
        a, b = p.qubits
        _check_qubit(a, n, 'a')
        _check_qubit(b, n, 'b')
        if a == b:
            raise InvalidArgumentError(f"受控Z的两个量子比特必须不同: a=b={a}")
        diag = np.where(_bit_mask(n, a) & _bit_mask(n, b), -1.0, 1.0)
        return np.diag(diag).astype(np.complex128)
    raise InvalidArgumentError(f"未知的门放置类型: {p.kind}")


def kron_apply_reference(state: StateVector, placement: Placements) -> StateVector:
    """
    全矩阵参考路径

    用 Kronecker 积展开每个门放置再做矩阵乘法，仅用于与快速路径交叉核对。
    """
    n = state.num_qubits
    if n > Config.REFERENCE_MAX_QUBITS:
        raise UnsupportedSizeError(
            f"参考路径最多支持{Config.REFERENCE_MAX_QUBITS}个量子比特，当前为{n}"
        )
    matrix = np.eye(1 << n, dtype=np.complex128)
    for p in _as_placements(placement):
        matrix = _placement_matrix(p, n) @ matrix
    return StateVector._wrap(matrix @ state.amplitudes, n)


def norm_squared(state: StateVector) -> float:
    return float(np.vdot(state.amplitudes, state.amplitudes).real)


def measure_all_distribution(state: StateVector) -> Dict[int, float]:
    """全测量分布 {基矢索引: 概率}，只列出概率非零的基矢"""
    norm = norm_squared(state)
    if abs(norm - 1.0) > Config.NORM_TOL:
        raise InvalidStateError(f"测量前态矢量未归一化: |psi|^2 = {norm!r}")
    probs = np.abs(state.amplitudes) ** 2
    return {int(i): float(probs[i]) for i in np.flatnonzero(probs)}


def marginal_distribution(state: StateVector, qubits: Sequence[int]) -> Dict[int, float]:
    """部分量子比特的边缘分布，qubits[0] 为结果索引的最高位"""
    n = state.num_qubits
    qubits = list(qubits)
    for q in qubits:
        _check_qubit(q, n)
    if len(set(qubits)) != len(qubits):
        raise InvalidArgumentError(f"量子比特列表有重复: {qubits}")

    probs = (np.abs(state.amplitudes) ** 2).reshape([2] * n)
    others = tuple(k for k in range(n) if k not in qubits)
    marginal = probs.sum(axis=others) if others else probs
    # 求和后剩余轴按原顺序排列，再按请求顺序转置
    order = sorted(qubits)
    marginal = np.transpose(marginal, [order.index(q) for q in qubits]).reshape(-1)
    return {int(i): float(marginal[i]) for i in np.flatnonzero(marginal)}


def _check_same_size(a: StateVector, b: StateVector):
    if a.num_qubits != b.num_qubits:
        raise InvalidArgumentError(f"量子比特数不一致: {a.num_qubits} != {b.num_qubits}")


def states_equal(a: StateVector, b: StateVector, tol: float = Config.CIRCUIT_TOL) -> bool:
    """逐振幅比较（对全局相位敏感）"""
    _check_same_size(a, b)
    return float(np.max(np.abs(a.amplitudes - b.amplitudes))) <= tol


def overlap(a: StateVector, b: StateVector) -> complex:
    """内积 <a|b>"""
    _check_same_size(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2，与全局相位无关，用于诊断"""
    return abs(overlap(a, b)) ** 2


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    """随机归一化态"""
    _check_num_qubits(n)
    arr = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    arr /= np.linalg.norm(arr)
    return StateVector(arr)


def random_unitary_gate(rng: np.random.Generator) -> Gate1Q:
    """随机2x2幺正门（复高斯矩阵的QR分解，修正对角相位）"""
    z = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return Gate1Q(q * (d / np.abs(d)), name='R')


