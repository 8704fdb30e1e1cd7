import argparse
from dataclasses import dataclass
from typing import List, Optional

from config import Config
from game import SCHEMES, StrategyKind


@dataclass
class CliConfig:
    """命令行配置"""
    command: str
    strategy: StrategyKind = StrategyKind.NAIVE
    scheme: str = 'original'
    mode: str = 'analytic'
    trials: int = Config.DEFAULT_TRIALS
    seed: int = Config.DEFAULT_SEED
    output: str = 'text'
    informant: str = 'classical'
    cross_check: bool = True
    workers: int = Config.MC_WORKERS
    progress: bool = False
    verbose: bool = False
    log_file: Optional[str] = None
    save: Optional[str] = None
    csv: Optional[str] = None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"不是合法整数: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须 >= 1，当前为 {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"不是合法整数: {text!r}")
    if not 0 <= value < (1 << 64):
        raise argparse.ArgumentTypeError(f"种子必须在[0, 2^64)之间，当前为 {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cardgame',
        description='三卡牌游戏：量子预言机平凡性验证与收益分析'
    )

    # 各子命令共享的输出与日志参数
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', dest='output', action='store_const', const='json', default='text',
                        help='以JSON输出（等同 --output json）')
    common.add_argument('--output', dest='output', choices=['text', 'json'], default='text',
                        help='输出格式')
    common.add_argument('--verbose', action='store_true', help='输出INFO级别日志到标准错误')
    common.add_argument('--log_file', type=str, default=None, help='日志文件路径')
    common.add_argument('--save', type=str, default=None, help='同时把JSON结果保存到该文件')

    # 策略相关参数
    game_args = argparse.ArgumentParser(add_help=False)
    game_args.add_argument('--strategy', choices=[s.value for s in StrategyKind],
                           default=StrategyKind.NAIVE.value, help='Bob的策略')
    game_args.add_argument('--scheme', choices=sorted(SCHEMES), default='original',
                           help='收益方案')
    game_args.add_argument('--informant', choices=['classical', 'quantum'], default='classical',
                           help='oracle-withdraw 策略下Bob获取朝上面的方式')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    verify = subparsers.add_parser('verify-oracle', parents=[common],
                                   help='验证预言机对全部8种卡牌配置只是经典读出')
    verify.add_argument('--no_cross_check', dest='cross_check', action='store_false',
                        help='跳过全矩阵参考路径的交叉核对')

    payoff = subparsers.add_parser('payoff', parents=[common, game_args],
                                   help='计算期望收益（解析或蒙特卡洛）')
    payoff.add_argument('--mode', choices=['analytic', 'mc'], default='analytic', help='计算方式')
    payoff.add_argument('--trials', type=_positive_int, default=Config.DEFAULT_TRIALS,
                        help='蒙特卡洛试验次数')
    payoff.add_argument('--seed', type=_seed, default=Config.DEFAULT_SEED, help='64位随机种子')
    payoff.add_argument('--workers', type=_positive_int, default=Config.MC_WORKERS,
                        help='蒙特卡洛线程数（不影响结果）')
    payoff.add_argument('--progress', action='store_true', help='在标准错误上显示进度条')

    enumerate_parser = subparsers.add_parser('enumerate', parents=[common, game_args],
                                             help='列出全部原子结果及其精确概率')
    enumerate_parser.add_argument('--csv', type=str, default=None, help='把结果表保存为CSV')

    subparsers.add_parser('summary', parents=[common],
                          help='全部策略与收益方案的解析期望收益')

    return parser


def parse_args(argv: Optional[List[str]] = None) -> CliConfig:
    """解析命令行参数；非法参数时打印用法并以退出码2退出"""
    ns = build_parser().parse_args(argv)

    values = {key: value for key, value in vars(ns).items() if value is not None}
    if 'strategy' in values:
        values['strategy'] = StrategyKind(values['strategy'])
    return CliConfig(**values)
