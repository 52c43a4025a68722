#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
反应式传感器 - 状态反馈策略、传感器充分性与最小传感器
"""

import itertools
import logging
from dataclasses import dataclass

from ..core.config import ANALYSIS_CONFIG
from ..core.errors import NotBijective, SearchBudgetExceeded
from ..core.labeling import Labeling, is_refinement
from ..coupling.simulation import run_coupled
from ..restriction.restriction import build_restriction

logger = logging.getLogger('FilterSynth.Reactive')


@dataclass
class StatePolicy:
    """无记忆状态反馈策略 pi_X: X -> U"""
    action_of: dict

    def __getitem__(self, state):
        return self.action_of[state]

    def labeling(self):
        return Labeling(self.action_of)

    def items(self):
        return self.action_of.items()


@dataclass
class SensorMap:
    """传感器划分 h: X -> 块标签"""
    labeling: Labeling

    @classmethod
    def from_blocks(cls, blocks):
        return cls(Labeling.from_blocks(blocks))

    @classmethod
    def of(cls, es):
        return cls(es.sensor.restrict(es.states))

    def blocks(self):
        return self.labeling.blocks()

    def __getitem__(self, state):
        return self.labeling[state]


def extract_state_policy(es, pol, task, depth_bound=None):
    """
    从单点传感器系统上的可行历史策略中提取状态策略

    从每个初始状态运行闭环，记录沿途 (状态, 动作)；
    完成时最后一个状态取最终信息状态的输出

    Returns:
        StatePolicy 或 None（运行失败或同一状态需要不同动作）

    Raises:
        NotBijective: 传感器不是单点划分
    """
    if not es.is_bijective():
        raise NotBijective(f"{es.name} 的传感器不是单点划分")

    machine = build_restriction(es, pol, depth_bound=depth_bound)
    pits = machine.as_policy_its()
    action_of = {}
    for x1 in es.states:
        run = run_coupled(pits, es, x1, task)
        if not run.accomplished:
            logger.info(f"从 {x1!r} 出发策略没有完成任务: {run.outcome.value}")
            return None
        visited = [record.state for record in run.records]
        for state, action in zip(visited, run.action_trace):
            if action_of.setdefault(state, action) != action:
                logger.info(f"状态 {state!r} 上的动作不唯一: {action_of[state]!r} / {action!r}")
                return None
    return StatePolicy(action_of)


def sensor_sufficient_for_reactive(sensor, state_policy):
    """传感器划分是否加细状态策略诱导的划分"""
    sensor_labeling = sensor.labeling if isinstance(sensor, SensorMap) else sensor
    return is_refinement(sensor_labeling.restrict(state_policy.action_of),
                         state_policy.labeling())


def minimal_reactive_sensor(state_policy):
    """最粗的充分传感器：按动作分块"""
    return SensorMap(state_policy.labeling())


def compose_reactive(sensor, observation_policy):
    """pi_X = pi_Y ∘ h"""
    return StatePolicy({x: observation_policy[y] for x, y in sensor.labeling.items()})


def reactive_execution_feasible(es, state_policy, task, initial_set=None):
    """
    无记忆执行：每一步按真实状态取动作，重复状态即失败

    Returns:
        bool
    """
    for x1 in (es.states if initial_set is None else initial_set):
        x = x1
        visited = set()
        stage = 1
        while not task.reached_by_state(es, x):
            if x in visited or stage >= task.horizon:
                return False
            visited.add(x)
            x = es.f(x, state_policy[x])
            stage += 1
    return True


def _fails_on_assigned(es, task, assignment, start):
    """从 start 出发沿已赋值状态前进，判断是否已确定失败"""
    x = start
    visited = set()
    while not task.reached_by_state(es, x):
        if x not in assignment:
            return False
        if x in visited:
            return True
        visited.add(x)
        x = es.f(x, assignment[x])
    return False


def find_reactive_policy(es, task, budget=None):
    """
    回溯搜索可行的状态策略

    按状态声明顺序赋值，每次赋值后剪掉已经闭合成不含目标的环的分支

    Raises:
        SearchBudgetExceeded: 搜索节点数超出预算，partial_verdict 为 False
    """
    budget = budget or ANALYSIS_CONFIG['search_budget']
    states = [x for x in es.states if not task.reached_by_state(es, x)]
    assignment = {}
    explored = 0

    def search(index):
        nonlocal explored
        if index == len(states):
            return True
        state = states[index]
        for u in es.actions:
            explored += 1
            if explored > budget:
                raise SearchBudgetExceeded(f"已搜索 {explored} 个节点", partial_verdict=False)
            assignment[state] = u
            if not _fails_on_assigned(es, task, assignment, state) and search(index + 1):
                return True
            del assignment[state]
        return False

    if not search(0):
        return None
    # 目标状态上的动作不影响可行性
    full = {x: assignment.get(x, es.actions[0]) for x in es.states}
    policy = StatePolicy(full)
    if not reactive_execution_feasible(es, policy, task):
        return None
    return policy


def reactive_policy_exists(es, task, budget=None):
    """是否存在可行的无记忆状态策略"""
    return find_reactive_policy(es, task, budget=budget) is not None


def observation_policies(sensor, actions):
    """枚举传感器块上的全部观测策略 pi_Y"""
    labels = sorted(sensor.blocks(), key=repr)
    for choice in itertools.product(actions, repeat=len(labels)):
        yield dict(zip(labels, choice))
