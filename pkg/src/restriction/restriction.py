#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
策略限制 - 把历史空间限制到策略实际产生的历史上，得到有限的观测 Moore 机
"""

import logging
from collections import deque

from ..core.config import ANALYSIS_CONFIG
from ..core.errors import AlphabetMismatch, OutOfDomain, NotFeasible
from ..core.symbols import XI, NO_ACTION
from ..coupling.belief import BeliefState, initial_belief, belief_step
from ..coupling.history import History
from ..coupling.simulation import is_feasible
from .machine import ObsMooreMachine
from .policy import MACHINE, kappa_pi

logger = logging.getLogger('FilterSynth.Restriction')

DEAD_KEY = ('dead',)


class _MachineBuilder:
    """按 BFS 首次访问顺序给状态编号"""

    def __init__(self, alphabet):
        self.alphabet = alphabet
        self.ids = {}
        self.output = {}
        self.info = {}
        self.step = {}
        self.queue = deque()

    def state(self, key, output, info):
        if key not in self.ids:
            q = len(self.ids)
            self.ids[key] = q
            self.output[q] = output
            self.info[q] = info
            self.queue.append(key)
        return self.ids[key]

    def dead(self):
        return self.state(DEAD_KEY, XI, 'xi')

    def build(self, name):
        dead = self.dead()
        for y in self.alphabet:
            self.step[(dead, y)] = dead
        return ObsMooreMachine(range(len(self.ids)), self.alphabet, self.step, 0,
                               self.output, dead=dead, info=self.info, name=name)


def _live_action(output, where):
    if output in (XI, NO_ACTION):
        raise OutOfDomain(f"策略在可达信息状态 {where} 上没有动作")
    return output


def _restrict_generator(es, generator, name):
    missing = [y for y in es.observations if y not in generator.alphabet]
    if missing:
        raise AlphabetMismatch(f"生成机缺少观测: {missing}")

    builder = _MachineBuilder(es.observations)
    builder.state(('prior', generator.initial), NO_ACTION, '()')
    while builder.queue:
        key = builder.queue.popleft()
        if key == DEAD_KEY:
            continue
        q = builder.ids[key]
        for y in es.observations:
            if key[0] == 'prior':
                g = generator.step[(key[1], y)]
                belief = initial_belief(es, y)
            else:
                _, g_prev, prev_belief = key
                u = _live_action(generator.output[g_prev], f"g={g_prev} b={prev_belief}")
                g = generator.step[(g_prev, y)]
                belief = belief_step(es, prev_belief, u, y)
            if belief.is_empty():
                target = builder.dead()
            else:
                output = generator.output[g]
                target = builder.state(('live', g, belief), output,
                                       f"g={generator.describe(g)} b={belief}")
            builder.step[(q, y)] = target
    return builder.build(name)


def _restrict_table(es, pol, depth_bound, name):
    builder = _MachineBuilder(es.observations)
    builder.state(('node', History(), None), NO_ACTION, '()')
    while builder.queue:
        key = builder.queue.popleft()
        if key == DEAD_KEY:
            continue
        q = builder.ids[key]
        _, eta, belief = key
        for y in es.observations:
            if eta.stage >= depth_bound:
                builder.step[(q, y)] = builder.dead()
                continue
            if not eta:
                child = History.start(y)
                child_belief = initial_belief(es, y)
            else:
                u = builder.output[q]
                child = eta.extend(u, y)
                child_belief = belief_step(es, belief, u, y)
            if child_belief.is_empty():
                target = builder.dead()
            else:
                action = pol.action(child)
                if action is None:
                    raise OutOfDomain(f"表格缺少可达历史 {tuple(child)} 的动作")
                target = builder.state(('node', child, child_belief), action,
                                       f"{' '.join(map(str, child))} b={child_belief}")
            builder.step[(q, y)] = target
    return builder.build(name)


def build_restriction(es, pol, depth_bound=None, task=None, initial_set=None, name=None):
    """
    构造策略限制的观测 Moore 机

    可达历史按策略转移，不可达历史统一进入死状态；
    表格策略在 depth_bound 个观测之后的行为不表示，同样进入死状态

    Args:
        es: 外部系统
        pol: HistoryPolicy
        depth_bound: 表格策略的深度上界
        task: 给出时检查策略可行性

    Raises:
        DepthRequired: 表格策略没有深度上界
        NotFeasible: 给出任务但策略不可行
    """
    name = name or f"restriction({pol.name})"
    if pol.kind == MACHINE:
        machine = _restrict_generator(es, pol.generator, name)
    else:
        machine = _restrict_table(es, pol, pol.require_depth(depth_bound), name)

    logger.info(f"{name}: {len(machine.states)} 个状态，其中 {len(machine.live_states())} 个活状态")

    if task is not None and not is_feasible(machine.as_policy_its(), es, task, initial_set=initial_set):
        raise NotFeasible(f"策略 {pol.name} 不能完成任务")
    return machine


def belief_filter_machine(es, mu, default=None, name=None):
    """
    信念滤波机：状态为可达信念，输出为 mu(信念)

    Args:
        mu: 信念（BeliefState 或状态集合）-> 动作
        default: mu 缺项时使用的动作

    Raises:
        OutOfDomain: 可达信念缺少动作且没有默认动作
    """
    lookup = {}
    for key, action in mu.items():
        support = key.support if isinstance(key, BeliefState) else frozenset(key)
        lookup[support] = action

    builder = _MachineBuilder(es.observations)
    builder.state(('prior',), NO_ACTION, '()')
    while builder.queue:
        key = builder.queue.popleft()
        if key == DEAD_KEY:
            continue
        q = builder.ids[key]
        for y in es.observations:
            if key[0] == 'prior':
                belief = initial_belief(es, y)
            else:
                belief = belief_step(es, key[1], builder.output[q], y)
            if belief.is_empty():
                target = builder.dead()
            else:
                action = lookup.get(belief.support, default)
                if action is None:
                    raise OutOfDomain(f"信念 {belief} 没有对应动作")
                target = builder.state(('belief', belief), action, str(belief))
            builder.step[(q, y)] = target
    return builder.build(name or 'belief_filter')


def restricted_histories(es, pol, depth):
    """
    枚举策略限制后的历史空间，直到 depth 个观测

    可达历史只沿策略动作延伸；不可达历史沿全部动作延伸

    Yields:
        (History, 标签)
    """
    yield History(), NO_ACTION
    stack = [History.start(y) for y in reversed(es.observations)]
    while stack:
        eta = stack.pop()
        label = kappa_pi(es, pol, eta)
        yield eta, label
        if eta.stage >= depth:
            continue
        actions = es.actions if label == XI else (label,)
        for u in reversed(actions):
            for y in reversed(es.observations):
                stack.append(eta.extend(u, y))


def default_depth(es, filter_states):
    """表格策略未声明深度时的默认上界 K = depth_multiplier * |X| * |滤波器状态|"""
    return ANALYSIS_CONFIG['depth_multiplier'] * len(es.states) * filter_states
