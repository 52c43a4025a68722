#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分析配置 - 定义各模块使用的默认参数，可通过 config/settings.ini 覆盖
"""

import configparser
import logging
import os

logger = logging.getLogger('FilterSynth.Config')

# 离散部分的默认参数
ANALYSIS_CONFIG = {
    'horizon': 64,                 # 耦合运行的默认观测步数上限
    'depth_multiplier': 2,         # 表格策略默认深度 K = depth_multiplier * |X| * |滤波器状态|
    'search_budget': 200000,       # 反应式策略穷举的节点预算
    'workers': 1,                  # 可行性检查的并行线程数
    'minimize_method': 'worklist'  # worklist | fixpoint
}

# 几何部分的默认参数
GEOMETRY_CONFIG = {
    'boundary_eps': 1e-9,          # 到边界距离小于该值视为在边界上
    'bisection_tol': 1e-6,         # 事件定位的二分精度（路径参数）
    'step_size': 0.02,             # 事件采样步长（长度单位）
    'angle_tol': 1e-4,             # 判断共线（分裂/合并）的角度容差
    'joint_margin': 1e-5,          # 折线转折点两侧的采样距离（长度单位）
    'samples': 10000,              # 反例搜索的采样点数
    'start_samples': 24,           # GNT 检查每个多边形的起点数
    'seed': 0
}

# 输出配置
OUTPUT_CONFIG = {
    'out_dir': 'output',
    'dot': False,
    # 按动作着色，其余动作按调色板循环
    'action_colors': {
        'u1': 'blue',
        'u2': 'orange',
        'u3': 'green',
        'xi': 'red',
        '()': 'gray'
    },
    'palette': ['purple', 'brown', 'cyan', 'olive', 'pink', 'gold']
}

# 日志配置
LOGGING_CONFIG = {
    'log_dir': 'logs',
    'level': 'INFO',
    'file_prefix': 'filter_synth'
}

_SECTIONS = {
    'analysis': ANALYSIS_CONFIG,
    'geometry': GEOMETRY_CONFIG,
    'output': OUTPUT_CONFIG,
    'logging': LOGGING_CONFIG
}


def _coerce(value, current):
    """按默认值的类型转换配置项"""
    if isinstance(current, bool):
        return value.strip().lower() in ('1', 'true', 'yes', 'on')
    if isinstance(current, int):
        return int(value)
    if isinstance(current, float):
        return float(value)
    return value.strip()


def load_config(path=None):
    """
    读取 ini 配置文件并覆盖默认值

    Args:
        path: 配置文件路径，默认 config/settings.ini

    Returns:
        dict: 节名 -> 合并后的配置字典
    """
    if path is None:
        project_root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
        path = os.path.join(project_root, 'config', 'settings.ini')

    merged = {name: dict(section) for name, section in _SECTIONS.items()}
    if not os.path.exists(path):
        return merged

    parser = configparser.ConfigParser()
    parser.read(path, encoding='utf-8')
    for name in parser.sections():
        if name not in merged:
            logger.warning(f"忽略未知配置节: [{name}]")
            continue
        for key, value in parser.items(name):
            if key not in merged[name] or isinstance(merged[name][key], (dict, list)):
                logger.warning(f"忽略未知配置项: [{name}] {key}")
                continue
            try:
                merged[name][key] = _coerce(value, merged[name][key])
            except ValueError:
                logger.warning(f"配置项格式错误，使用默认值: [{name}] {key} = {value}")
    logger.info(f"已加载配置文件: {path}")
    return merged


def apply_config(merged):
    """把合并后的配置写回模块级字典，使各模块的默认参数生效"""
    for name, values in merged.items():
        _SECTIONS[name].update(values)
