#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信念策略综合 - 在信念空间上做与或搜索，求最坏情况步数最少的策略
"""

import logging
from collections import deque

from ..coupling.belief import initial_belief, belief_step
from .policy import HistoryPolicy
from .restriction import belief_filter_machine

logger = logging.getLogger('FilterSynth.Synthesis')


def _reachable_beliefs(es):
    """在所有动作下从先验出发可达的非空信念"""
    start = [initial_belief(es, y) for y in es.observations]
    start = [b for b in start if not b.is_empty()]
    seen = set(start)
    queue = deque(start)
    while queue:
        belief = queue.popleft()
        for u in es.actions:
            for y in es.observations:
                nxt = belief_step(es, belief, u, y)
                if not nxt.is_empty() and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return start, seen


def _goal_belief(es, task, belief):
    observation = es.h(next(iter(belief.support)))
    return task.reached(observation, belief)


def synthesize_belief_policy(es, task, stop_action=None):
    """
    按轮次求解：第 k 轮解出存在某动作使所有非空后继都已解出的信念

    同一轮内的候选动作最坏步数相同，按动作声明顺序取第一个

    Args:
        stop_action: 目标信念上的动作，默认取第一个声明的动作

    Returns:
        (dict, dict): 信念 -> 动作，信念 -> 最坏情况剩余步数；
        某个初始信念无解时返回 (None, costs)
    """
    stop_action = stop_action if stop_action is not None else es.actions[0]
    start, beliefs = _reachable_beliefs(es)

    cost = {}
    choice = {}
    for belief in beliefs:
        if _goal_belief(es, task, belief):
            cost[belief] = 0
            choice[belief] = stop_action

    pending = [b for b in sorted(beliefs, key=lambda b: sorted(map(repr, b.support))) if b not in cost]
    rounds = 0
    while pending:
        rounds += 1
        solved = {}
        for belief in pending:
            for u in es.actions:
                successors = [belief_step(es, belief, u, y) for y in es.observations]
                successors = [b for b in successors if not b.is_empty()]
                if all(b in cost for b in successors):
                    solved[belief] = (rounds, u)
                    break
        if not solved:
            break
        for belief, (value, u) in solved.items():
            cost[belief] = value
            choice[belief] = u
        pending = [b for b in pending if b not in solved]

    unsolved = [b for b in start if b not in cost]
    if unsolved:
        logger.info(f"{len(unsolved)} 个初始信念无解，例如 {unsolved[0]}")
        return None, cost
    logger.info(f"综合完成: {len(choice)} 个信念，最坏情况 {max(cost[b] for b in start)} 步")
    return choice, cost


def synthesize_policy(es, task, stop_action=None, name='synthesized'):
    """
    综合信念策略并包装成以信念滤波机为生成机的历史策略

    Returns:
        HistoryPolicy 或 None
    """
    choice, _ = synthesize_belief_policy(es, task, stop_action=stop_action)
    if choice is None:
        return None
    stop_action = stop_action if stop_action is not None else es.actions[0]
    generator = belief_filter_machine(es, choice, default=stop_action, name=name)
    return HistoryPolicy.from_machine(generator, name=name)

