#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
分析报表 - 用 DataFrame 整理标注表、运行轨迹与状态数统计
"""

import logging
import os

import pandas as pd

from ..core.symbols import NO_ACTION, is_dead_output
from .scenario_io import write_atomic

logger = logging.getLogger('FilterSynth.Report')


def machine_table(machine, kappa=None):
    """
    机器状态表

    Columns:
        state, info, output, 以及每个观测下的后继；给出 kappa 时附加块号
    """
    rows = []
    for q in machine.reachable():
        row = {'state': q, 'info': machine.describe(q), 'output': machine.output[q]}
        for y in machine.alphabet:
            row[f"-{y}->"] = machine.step[(q, y)]
        if kappa is not None:
            row['block'] = kappa[q]
        rows.append(row)
    return pd.DataFrame(rows)


def labeling_table(labeling, name='label'):
    rows = [{'state': s, name: l} for s, l in sorted(labeling.items(), key=lambda kv: repr(kv[0]))]
    return pd.DataFrame(rows, columns=['state', name])


def runs_table(runs):
    """耦合运行结果，每个初始状态一行"""
    rows = []
    for run in runs:
        rows.append({
            'initial': run.initial_state,
            'outcome': run.outcome.value,
            'steps': run.history.stage,
            'history': ' '.join(map(str, run.history)),
            'actions': ' '.join(map(str, run.action_trace))
        })
    return pd.DataFrame(rows, columns=['initial', 'outcome', 'steps', 'history', 'actions'])


def trace_table(runs):
    """逐步轨迹：stage, 信息状态, 外部状态, 观测, 动作"""
    rows = []
    for run in runs:
        for record in run.records:
            rows.append({'initial': run.initial_state, 'stage': record.stage,
                         'its_state': record.its_state, 'state': record.state,
                         'observation': record.observation, 'action': record.action})
    return pd.DataFrame(rows, columns=['initial', 'stage', 'its_state', 'state', 'observation', 'action'])


def state_counts(machine, stop_action=None):
    """
    状态数统计

    Returns:
        dict: total（全部可达状态）、live（去掉 xi）、without_prior（再去掉根），
        给出 stop_action 时 without_stop 为去掉终止动作状态后的数目
    """
    reachable = machine.reachable()
    counts = {
        'total': len(reachable),
        'live': sum(1 for q in reachable if not is_dead_output(machine.output[q])),
        'without_prior': sum(1 for q in reachable
                             if not is_dead_output(machine.output[q]) and machine.output[q] != NO_ACTION)
    }
    if stop_action is not None:
        counts['without_stop'] = sum(1 for q in reachable if machine.output[q] != stop_action)
    return counts


def events_table(events):
    rows = [{'t': e.t, 'x': e.position[0], 'y': e.position[1], 'kind': e.kind,
             'gaps': ' '.join(map(str, e.gaps)), 'after': ' '.join(map(str, e.after)), 'segment': e.segment}
            for e in events]
    return pd.DataFrame(rows, columns=['t', 'x', 'y', 'kind', 'gaps', 'after', 'segment'])


class ReportWriter:
    """把文本与表格写入输出目录"""

    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.written = []

    def ensure_directory(self):
        if not os.path.exists(self.out_dir):
            os.makedirs(self.out_dir)

    def text(self, filename, text):
        self.ensure_directory()
        path = os.path.join(self.out_dir, filename)
        write_atomic(path, text)
        self.written.append(path)
        logger.info(f"已写入 {path}")
        return path

    def table(self, filename, frame):
        return self.text(filename, frame.to_csv(index=False))

    def summary(self, title, sections):
        """
        文本报告

        Args:
            sections: [(小标题, 文本或 DataFrame)]
        """
        lines = ['=' * 60, title, '=' * 60]
        for heading, body in sections:
            lines.append('')
            lines.append(f"[{heading}]")
            if isinstance(body, pd.DataFrame):
                lines.append(body.to_string(index=False) if not body.empty else '(空)')
            else:
                lines.append(str(body))
        return '\n'.join(lines) + '\n'
