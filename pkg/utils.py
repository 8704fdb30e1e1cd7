import os
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional

import pandas as pd


def setup_logging(level: str = 'WARNING', log_file: Optional[str] = None) -> logging.Logger:
    """设置日志记录（诊断信息只写到标准错误和可选的日志文件）"""
    # 获取根日志记录器
    logger = logging.getLogger()

    # 清除现有的处理器
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    logger.setLevel(level)

    formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')

    # 控制台处理器（stderr，stdout 留给报告）
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # 禁用第三方库的日志
    logging.getLogger('numpy').setLevel(logging.WARNING)
    logging.getLogger('pandas').setLevel(logging.WARNING)

    return logger


def format_time(seconds: float) -> str:
    """格式化时间"""
    if seconds < 60:
        return f"{seconds:.2f}s"
    elif seconds < 3600:
        minutes = seconds // 60
        seconds = seconds % 60
        return f"{int(minutes)}m {seconds:.2f}s"
    else:
        hours = seconds // 3600
        minutes = (seconds % 3600) // 60
        seconds = seconds % 60
        return f"{int(hours)}h {int(minutes)}m {seconds:.2f}s"


def format_fraction(value: Fraction) -> str:
    """精确分数渲染为 'num/den'，0 渲染为 '0/1'"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def fraction_to_json(value: Fraction) -> Dict[str, int]:
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator}


def render_table(rows: List[Dict[str, Any]]) -> str:
    """把行列表渲染成纯文本表格；数值应事先转成字符串以保持与 JSON 一致"""
    if not rows:
        return ''
    return pd.DataFrame(rows).to_string(index=False)


def save_results_summary(results: Dict[str, Any], path: str):
    """保存 JSON 结果"""
    out_dir = os.path.dirname(path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)

    with open(path, 'w', encoding='utf-8') as f:
        json.dump(results, f, indent=2, ensure_ascii=False)

    logging.info(f"结果已保存到: {path}")


def save_table_csv(rows: List[Dict[str, Any]], path: str):
    """把表格行写成 CSV"""
    out_dir = os.path.dirname(path)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)

    pd.DataFrame(rows).to_csv(path, index=False)

    logging.info(f"表格已保存到: {path}")
