#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
三卡牌游戏验证工具主程序

退出码：0 = 成功/验证通过，1 = 验证失败或运行错误，2 = 用法错误
"""

import sys
import json
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Tuple

from args import CliConfig, parse_args
from config import Config
from game import (
    SCHEMES, StrategyKind, analytic_payoff, enumerate_outcomes
)
from montecarlo import mc_payoff
from oracle import quantum_informant, verify_triviality
from utils import (
    setup_logging, format_time, format_fraction, fraction_to_json, render_table,
    save_results_summary, save_table_csv
)


def _informant(config: CliConfig):
    return quantum_informant if config.informant == 'quantum' else None


def _finish(config: CliConfig, payload: Dict[str, Any], text: str) -> str:
    """按输出格式选择渲染结果，并按需保存JSON"""
    if config.save:
        save_results_summary(payload, config.save)
    if config.output == 'json':
        return json.dumps(payload, ensure_ascii=False, indent=2)
    return text


def cmd_verify_oracle(config: CliConfig) -> Tuple[str, int]:
    """验证预言机平凡性"""
    report = verify_triviality(tol=Config.CIRCUIT_TOL, cross_check=config.cross_check)

    cases = [
        {
            'r': list(case.record.r),
            'fig1_index': case.fig1_index,
            'fig2_index': case.fig2_index,
            'max_off_target': case.max_off_target,
            'pass': case.passed,
        }
        for case in report.cases
    ]
    payload = {'command': 'verify-oracle', 'pass': report.passed, 'cases': cases}

    table = render_table([
        {
            'r': ''.join(str(b) for b in case['r']),
            'fig1_index': str(case['fig1_index']),
            'fig2_index': str(case['fig2_index']),
            'max_off_target': repr(case['max_off_target']),
            'pass': 'PASS' if case['pass'] else 'FAIL',
        }
        for case in cases
    ])
    text = "\n".join([
        "预言机平凡性验证（相位预言机线路 / 受控Z等价线路）",
        table,
        f"结果: {report.num_passed}/{len(report.cases)} 通过",
        f"总体: {'PASS' if report.passed else 'FAIL'}",
    ])

    code = Config.EXIT_OK if report.passed else Config.EXIT_VERIFY_FAILED
    return _finish(config, payload, text), code


def _header(config: CliConfig, mode: Optional[str] = None) -> str:
    parts = [f"策略: {config.strategy.value}", f"收益方案: {config.scheme}"]
    if mode:
        parts.append(f"模式: {mode}")
    if config.strategy is StrategyKind.ORACLE_WITHDRAW:
        parts.append(f"信息来源: {config.informant}")
    return "  ".join(parts)


def cmd_payoff(config: CliConfig) -> Tuple[str, int]:
    """期望收益（解析或蒙特卡洛）"""
    scheme = SCHEMES[config.scheme]
    base = {
        'command': 'payoff',
        'strategy': config.strategy.value,
        'scheme': scheme.name,
        'mode': config.mode,
    }

    if config.mode == 'analytic':
        expected = analytic_payoff(config.strategy, scheme, _informant(config))
        payload = {
            **base,
            'alice': fraction_to_json(expected.alice),
            'bob': fraction_to_json(expected.bob),
        }
        text = "\n".join([
            _header(config, 'analytic'),
            f"alice: {format_fraction(expected.alice)}",
            f"bob: {format_fraction(expected.bob)}",
        ])
        return _finish(config, payload, text), Config.EXIT_OK

    estimate = mc_payoff(
        config.strategy, scheme, trials=config.trials, seed=config.seed,
        workers=config.workers, progress=config.progress, informant=_informant(config)
    )
    payload = {
        **base,
        'trials': estimate.trials,
        'seed': estimate.seed,
        'mean_alice': estimate.mean_alice,
        'mean_bob': estimate.mean_bob,
        'stderr_alice': estimate.stderr_alice,
        'stderr_bob': estimate.stderr_bob,
        'counts': estimate.counts,
    }
    text = "\n".join([
        _header(config, 'mc'),
        f"trials: {estimate.trials}",
        f"seed: {estimate.seed}",
        f"alice: mean={estimate.mean_alice!r} stderr={estimate.stderr_alice!r}",
        f"bob: mean={estimate.mean_bob!r} stderr={estimate.stderr_bob!r}",
        "counts: " + ", ".join(f"{k}={v}" for k, v in estimate.counts.items()),
    ])
    return _finish(config, payload, text), Config.EXIT_OK


def cmd_enumerate(config: CliConfig) -> Tuple[str, int]:
    """列出全部原子结果"""
    scheme = SCHEMES[config.scheme]
    outcomes = enumerate_outcomes(config.strategy, scheme, _informant(config))

    total_prob = sum(row.probability for row in outcomes)
    expected_alice = sum(row.probability * row.payoff[0] for row in outcomes)
    expected_bob = sum(row.probability * row.payoff[1] for row in outcomes)

    rows = [
        {
            'outcome': row.description,
            'orientations': list(row.shuffle.orientations),
            'drawn_index': row.drawn_index,
            'result': row.result.value,
            'probability': fraction_to_json(row.probability),
            'payoff': {'alice': row.payoff[0], 'bob': row.payoff[1]},
        }
        for row in outcomes
    ]
    payload = {
        'command': 'enumerate',
        'strategy': config.strategy.value,
        'scheme': scheme.name,
        'rows': rows,
        'total_probability': fraction_to_json(total_prob),
        'expected': {
            'alice': fraction_to_json(expected_alice),
            'bob': fraction_to_json(expected_bob),
        },
    }

    table_rows = [
        {
            'outcome': row.description,
            'probability': format_fraction(row.probability),
            'result': row.result.value,
            'alice': str(row.payoff[0]),
            'bob': str(row.payoff[1]),
        }
        for row in outcomes
    ]
    if config.csv:
        save_table_csv(table_rows, config.csv)

    text = "\n".join([
        _header(config),
        render_table(table_rows),
        f"概率合计: {format_fraction(total_prob)}",
        f"期望: alice={format_fraction(expected_alice)} bob={format_fraction(expected_bob)}",
    ])
    return _finish(config, payload, text), Config.EXIT_OK


def cmd_summary(config: CliConfig) -> Tuple[str, int]:
    """全部策略 x 收益方案的解析期望收益"""
    rows = []
    for strategy in StrategyKind:
        for scheme in SCHEMES.values():
            expected = analytic_payoff(strategy, scheme)
            rows.append({
                'strategy': strategy.value,
                'scheme': scheme.name,
                'alice': fraction_to_json(expected.alice),
                'bob': fraction_to_json(expected.bob),
            })
    payload = {'command': 'summary', 'rows': rows}

    table = render_table([
        {
            'strategy': row['strategy'],
            'scheme': row['scheme'],
            'alice': f"{row['alice']['num']}/{row['alice']['den']}",
            'bob': f"{row['bob']['num']}/{row['bob']['den']}",
        }
        for row in rows
    ])
    text = "期望收益汇总\n" + table
    return _finish(config, payload, text), Config.EXIT_OK


COMMANDS: Dict[str, Callable[[CliConfig], Tuple[str, int]]] = {
    'verify-oracle': cmd_verify_oracle,
    'payoff': cmd_payoff,
    'enumerate': cmd_enumerate,
    'summary': cmd_summary,
}


def _log_run_summary(config: CliConfig):
    """打印运行摘要"""
    logging.info("=" * 60)
    logging.info(f"命令: {config.command}")
    if config.command in ('payoff', 'enumerate'):
        logging.info(f"策略: {config.strategy.value}")
        logging.info(f"收益方案: {config.scheme}")
        logging.info(f"信息来源: {config.informant}")
    if config.command == 'payoff':
        logging.info(f"模式: {config.mode}")
        if config.mode == 'mc':
            logging.info(f"试验次数: {config.trials:,}")
            logging.info(f"随机种子: {config.seed}")
            logging.info(f"线程数: {config.workers}")
    logging.info("=" * 60)


def main(argv: Optional[List[str]] = None) -> int:
    """主函数，返回退出码"""
    try:
        config = parse_args(argv)
    except SystemExit as e:
        # argparse 已把用法和出错的参数打印到标准错误
        return Config.EXIT_OK if not e.code else Config.EXIT_USAGE

    setup_logging('INFO' if config.verbose else Config.LOG_LEVEL, config.log_file)
    _log_run_summary(config)

    start_time = time.time()
    try:
        rendered, code = COMMANDS[config.command](config)
    except Exception as e:
        logging.exception(f"命令 {config.command} 执行失败: {e}")
        return Config.EXIT_VERIFY_FAILED

    print(rendered)
    logging.info(f"完成，用时: {format_time(time.time() - start_time)}")
    return code


if __name__ == "__main__":
    sys.exit(main())
