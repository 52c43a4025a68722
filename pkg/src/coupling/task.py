#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
任务 - 观测目标或状态目标，带观测步数上限
"""

from dataclasses import dataclass

from .belief import belief_after

OBSERVATION_GOAL = 'observation'
STATE_GOAL = 'state'


@dataclass(frozen=True)
class TaskSpec:
    """
    任务规格

    Attributes:
        variant: observation | state
        goal: 目标观测集合或目标状态集合（非空）
        horizon: 允许的最大观测个数
    """
    variant: str
    goal: frozenset
    horizon: int = 64

    def __post_init__(self):
        if self.variant not in (OBSERVATION_GOAL, STATE_GOAL):
            raise ValueError(f"未知任务类型: {self.variant}")
        if not self.goal:
            raise ValueError("目标集合不能为空")
        if self.horizon < 1:
            raise ValueError("horizon 必须 >= 1")
        object.__setattr__(self, 'goal', frozenset(self.goal))

    @classmethod
    def observation_goal(cls, goal, horizon=64):
        return cls(OBSERVATION_GOAL, frozenset(goal), horizon)

    @classmethod
    def state_goal(cls, goal, horizon=64):
        return cls(STATE_GOAL, frozenset(goal), horizon)

    def reached(self, observation, belief):
        """当前观测与信念下任务是否已完成"""
        if self.variant == OBSERVATION_GOAL:
            return observation in self.goal
        return not belief.is_empty() and belief.support <= self.goal

    def reached_by_state(self, es, state):
        """按真实状态判断目标（无记忆执行使用）"""
        if self.variant == OBSERVATION_GOAL:
            return es.h(state) in self.goal
        return state in self.goal

    def as_state_goal(self, es):
        """把观测目标换算为目标状态集合"""
        if self.variant == STATE_GOAL:
            return self
        goal = frozenset(x for x in es.states if es.h(x) in self.goal)
        return TaskSpec(STATE_GOAL, goal, self.horizon)

    def with_horizon(self, horizon):
        return TaskSpec(self.variant, self.goal, horizon)


def task_label(task, es, eta):
    """kappa_task(eta) ∈ {0, 1}"""
    if not eta:
        return 0
    belief = belief_after(es, eta)
    return 1 if task.reached(eta[-1], belief) else 0
