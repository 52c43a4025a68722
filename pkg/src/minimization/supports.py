#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
支持检查 - 候选信息迁移系统能否通过输出标注实现给定的策略机
"""

import logging
from collections import deque
from dataclasses import dataclass

from ..core.labeling import Labeling
from ..core.symbols import is_dead_output

logger = logging.getLogger('FilterSynth.Supports')


@dataclass
class SupportConflict:
    """两条观测序列到达同一候选状态却要求不同输出"""
    candidate_state: object
    first: tuple
    second: tuple
    first_output: object
    second_output: object

    def explain(self):
        return (f"观测序列 {self.first} 与 {self.second} 到达同一候选状态 "
                f"{self.candidate_state!r}，但分别需要输出 {self.first_output!r} 与 {self.second_output!r}")


@dataclass
class MissingTransition:
    """候选系统不能读取机器需要的观测"""
    candidate_state: object
    observation: object
    prefix: tuple

    def explain(self):
        return f"候选状态 {self.candidate_state!r} 在观测序列 {self.prefix} 之后不能读取观测 {self.observation!r}"


def find_support(candidate, machine, attainable_only=False):
    """
    在 (候选状态, 机器状态) 乘积上 BFS，收集每个候选状态需要的输出

    Args:
        candidate: 以观测为边标签的 TransitionSystem
        machine: ObsMooreMachine
        attainable_only: 只要求在输出不是 xi 的机器状态上一致

    Returns:
        (Labeling 或 None, 失败原因 或 None)
    """
    start = (candidate.initial, machine.initial)
    prefix = {start: ()}
    mu = {}
    witness = {}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        c, m = pair
        out = machine.output[m]
        if attainable_only and is_dead_output(out):
            continue
        if c in mu and mu[c] != out:
            conflict = SupportConflict(c, witness[c], prefix[pair], mu[c], out)
            logger.debug(conflict.explain())
            return None, conflict
        if c not in mu:
            mu[c] = out
            witness[c] = prefix[pair]

        for y in machine.alphabet:
            m_next = machine.step[(m, y)]
            if attainable_only and is_dead_output(machine.output[m_next]):
                continue
            c_next = candidate.successor(c, y)
            if c_next is None:
                return None, MissingTransition(c, y, prefix[pair])
            nxt = (c_next, m_next)
            if nxt not in prefix:
                prefix[nxt] = prefix[pair] + (y,)
                queue.append(nxt)
    return Labeling(mu), None


def supports(candidate, machine, attainable_only=False):
    """
    候选系统是否支持策略机

    Returns:
        Labeling 或 None: 候选状态 -> 输出
    """
    mu, _ = find_support(candidate, machine, attainable_only=attainable_only)
    return mu
