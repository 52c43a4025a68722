#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
观测 Moore 机 - 以观测为输入、以动作为输出的确定性有限机
"""

import logging
from collections import deque

from ..core.errors import NotFull, UnknownObservation
from ..core.labeling import Labeling, ordered
from ..core.symbols import is_dead_output
from ..core.transition_system import TransitionSystem
from ..coupling.simulation import PolicyLabeledITS

logger = logging.getLogger('FilterSynth.Machine')


class ObsMooreMachine:
    """
    观测 Moore 机 (Q, Y, step, q0, output)

    Attributes:
        dead: 输出 xi 且对所有观测自环的吸收状态，可以为 None
        info: 状态 -> 可读描述（报表与导出使用）
    """

    def __init__(self, states, alphabet, step, initial, output, dead=None, info=None, name=None):
        self.states = ordered(states)
        self.alphabet = ordered(alphabet)
        self.step = dict(step)
        self.initial = initial
        self.output = dict(output)
        self.dead = dead
        self.info = dict(info or {})
        self.name = name or 'machine'

        if initial not in self.output:
            raise ValueError(f"初始状态 {initial!r} 没有输出")
        for q in self.states:
            if q not in self.output:
                raise ValueError(f"状态 {q!r} 没有输出")
            for y in self.alphabet:
                if (q, y) not in self.step:
                    raise NotFull(f"{self.name}: 状态 {q!r} 缺少观测 {y!r} 的迁移")
        if dead is not None:
            if not is_dead_output(self.output[dead]):
                raise ValueError(f"死状态 {dead!r} 的输出必须是 xi 或全 xi 元组")
            if any(self.step[(dead, y)] != dead for y in self.alphabet):
                raise ValueError(f"死状态 {dead!r} 必须自环")

    # ---- 运行 ----

    def run(self, observations, state=None):
        q = self.initial if state is None else state
        for y in observations:
            if y not in self.alphabet:
                raise UnknownObservation(f"观测 {y!r} 不在字母表中")
            q = self.step[(q, y)]
        return q

    def evaluate(self, observations):
        """读入观测序列后的输出"""
        return self.output[self.run(observations)]

    # ---- 结构 ----

    def reachable(self):
        order = [self.initial]
        seen = {self.initial}
        queue = deque(order)
        while queue:
            q = queue.popleft()
            for y in self.alphabet:
                target = self.step[(q, y)]
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def live_states(self):
        """可达且输出不是 xi 的状态"""
        return [q for q in self.reachable() if not is_dead_output(self.output[q])]

    def as_transition_system(self):
        return TransitionSystem(self.states, self.alphabet, self.step, self.initial, name=self.name)

    def output_labeling(self, reachable_only=True):
        states = self.reachable() if reachable_only else self.states
        return Labeling({q: self.output[q] for q in states})

    def as_policy_its(self):
        return PolicyLabeledITS(self.as_transition_system(), self.output_labeling(reachable_only=False))

    def with_outputs(self, output, name=None):
        dead = self.dead if self.dead is not None and is_dead_output(output.get(self.dead)) else None
        return ObsMooreMachine(self.states, self.alphabet, self.step, self.initial, output,
                               dead=dead, info=self.info, name=name or self.name)

    def check_dead_closure(self):
        """输出 xi 的状态只能到达输出 xi 的状态"""
        for q in self.states:
            if not is_dead_output(self.output[q]):
                continue
            for y in self.alphabet:
                if not is_dead_output(self.output[self.step[(q, y)]]):
                    return False
        return True

    def describe(self, state):
        return self.info.get(state, str(state))

    def __repr__(self):
        return (f"ObsMooreMachine({self.name!r}, states={len(self.states)}, "
                f"alphabet={len(self.alphabet)})")


def unroll(machine, depth):
    """
    把机器按观测序列展开成深度为 depth 的树

    Returns:
        (TransitionSystem, Labeling): 节点为观测序列元组，标注为机器输出
    """
    nodes = [()]
    trans = {}
    outputs = {(): machine.output[machine.initial]}
    frontier = [((), machine.initial)]
    for _ in range(depth):
        next_frontier = []
        for prefix, q in frontier:
            for y in machine.alphabet:
                child = prefix + (y,)
                target = machine.step[(q, y)]
                nodes.append(child)
                trans[(prefix, y)] = child
                outputs[child] = machine.output[target]
                next_frontier.append((child, target))
        frontier = next_frontier
    ts = TransitionSystem(nodes, machine.alphabet, trans, (), name=f"{machine.name}@{depth}")
    return ts, Labeling(outputs)