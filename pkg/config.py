#!/usr/bin/env python3
"""
配置文件
"""

import os
import logging

logger = logging.getLogger(__name__)


def env_positive_int(name: str, default: int) -> int:
    """读取正整数环境变量，非法时回退到默认值"""
    raw = os.environ.get(name)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        logger.warning(f"环境变量 {name}={raw!r} 不是正整数，使用默认值 {default}")
        return default
    return value


def env_log_level(name: str, default: str = 'WARNING') -> str:
    """读取日志级别环境变量（不区分大小写），未知级别时回退到默认值"""
    raw = os.environ.get(name)
    if not raw:
        return default
    level = raw.strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        logger.warning(f"环境变量 {name}={raw!r} 不是合法的日志级别，使用默认值 {default}")
        return default
    return level


class Config:
    """基础配置"""
    # 量子态模拟配置
    MAX_QUBITS = 12
    REFERENCE_MAX_QUBITS = 6  # 全矩阵参考路径的规模上限

    # 数值容差
    CIRCUIT_TOL = 1e-12
    UNITARY_TOL = 1e-12
    NORM_TOL = 1e-9

    # 蒙特卡洛配置
    DEFAULT_TRIALS = 1_000_000
    DEFAULT_SEED = 0
    MC_CHUNK_SIZE = 1 << 16
    MC_WORKERS = env_positive_int('CARDGAME_MC_WORKERS', 1)

    # 日志配置
    LOG_LEVEL = env_log_level('CARDGAME_LOG_LEVEL', 'WARNING')

    # 退出码
    EXIT_OK = 0
    EXIT_VERIFY_FAILED = 1
    EXIT_USAGE = 2
