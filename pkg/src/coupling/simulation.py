#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
耦合仿真 - 带策略标注的信息迁移系统与外部系统的闭环运行
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from ..core.config import ANALYSIS_CONFIG
from ..core.errors import NotFull, PolicyEmitsXi
from ..core.symbols import XI, NO_ACTION
from .belief import initial_belief, belief_step
from .history import History

logger = logging.getLogger('FilterSynth.Simulation')


@dataclass
class PolicyLabeledITS:
    """
    信息迁移系统及其策略标注

    its 的边标签为观测，初始状态为尚未观测时的信息状态；
    policy 把可达信息状态映射到动作，或 xi / () 两个保留值
    """
    its: object
    policy: object

    def step(self, state, observation):
        target = self.its.successor(state, observation)
        if target is None:
            raise NotFull(f"信息状态 {state!r} 不能读取观测 {observation!r}")
        return target

    def action(self, state):
        return self.policy[state]


class Outcome(Enum):
    ACCOMPLISHED = 'accomplished'
    DIVERGES = 'diverges'
    HORIZON_EXCEEDED = 'horizon_exceeded'


@dataclass
class TraceRecord:
    stage: int
    its_state: object
    state: object
    observation: object
    action: object = None


@dataclass
class CoupledRun:
    """一次耦合运行的结果"""
    initial_state: object
    history: History
    outcome: Outcome
    records: list = field(default_factory=list)
    final_action: object = None

    @property
    def accomplished(self):
        return self.outcome is Outcome.ACCOMPLISHED

    @property
    def action_trace(self):
        """历史中的动作，完成时再加上最终信息状态的输出"""
        actions = tuple(self.history.actions)
        if self.accomplished and self.final_action is not None:
            actions += (self.final_action,)
        return actions


def run_coupled(pits, es, x1, task):
    """
    从外部状态 x1 开始运行闭环，直到完成任务、出现重复构型或超过步数上限

    构型 (信息状态, 外部状态, 信念) 重复出现说明运行进入了不含目标的环

    Raises:
        PolicyEmitsXi: 策略在运行中输出 xi
    """
    iota = pits.its.initial
    x = x1
    y = es.h(x)
    iota = pits.step(iota, y)
    history = History.start(y)
    belief = initial_belief(es, y)
    records = [TraceRecord(1, iota, x, y)]
    seen = set()

    while True:
        if task.reached(y, belief):
            final_action = pits.action(iota)
            return CoupledRun(x1, history, Outcome.ACCOMPLISHED, records, final_action)

        key = (iota, x, belief)
        if key in seen:
            logger.debug(f"从 {x1!r} 出发的运行在第{history.stage}步进入循环")
            return CoupledRun(x1, history, Outcome.DIVERGES, records)
        seen.add(key)

        if history.stage >= task.horizon:
            return CoupledRun(x1, history, Outcome.HORIZON_EXCEEDED, records)

        u = pits.action(iota)
        if u in (XI, NO_ACTION):
            raise PolicyEmitsXi(f"信息状态 {iota!r} 在历史 {tuple(history)} 上输出 {u!r}")
        records[-1].action = u

        x = es.f(x, u)
        y = es.h(x)
        belief = belief_step(es, belief, u, y)
        iota = pits.step(iota, y)
        history = history.extend(u, y)
        records.append(TraceRecord(history.stage, iota, x, y))


def is_feasible(pits, es, task, initial_set=None, workers=None, return_runs=False):
    """
    策略对初始集合中每个状态都能完成任务

    Args:
        workers: 并行线程数，默认读取 ANALYSIS_CONFIG
        return_runs: 同时返回各初始状态的运行结果
    """
    starts = list(es.states if initial_set is None else initial_set)
    workers = workers or ANALYSIS_CONFIG['workers']

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            runs = list(executor.map(lambda x: run_coupled(pits, es, x, task), starts))
    else:
        runs = [run_coupled(pits, es, x, task) for x in starts]

    feasible = all(run.accomplished for run in runs)
    failed = [run.initial_state for run in runs if not run.accomplished]
    if failed:
        logger.info(f"策略在 {len(failed)} 个初始状态上失败: {failed[:5]}")
    if return_runs:
        return feasible, runs
    return feasible
