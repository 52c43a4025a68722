#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
迁移系统 - 带边标签的确定性（可部分定义的）迁移系统及其商
"""

import logging
from collections import deque

from .errors import NotSufficient, NotFull, UndefinedLabel
from .labeling import Labeling, ordered
from .symbols import SINK

logger = logging.getLogger('FilterSynth.TransitionSystem')


class TransitionSystem:
    """
    迁移系统 (S, Lambda, delta, s0)

    Attributes:
        states: 状态元组（稳定顺序）
        edge_labels: 边标签元组（稳定顺序，决定遍历顺序）
        trans: (状态, 边标签) -> 后继状态，可部分定义
        initial: 初始状态
    """

    def __init__(self, states, edge_labels, trans, initial, name=None):
        self.states = ordered(states)
        self.edge_labels = ordered(edge_labels)
        self.trans = dict(trans)
        self.initial = initial
        self.name = name or 'ts'

        state_set = set(self.states)
        label_set = set(self.edge_labels)
        if initial not in state_set:
            raise ValueError(f"初始状态 {initial!r} 不在状态集合中")
        for (source, label), target in self.trans.items():
            if source not in state_set or target not in state_set:
                raise ValueError(f"迁移 {source!r} --{label!r}--> {target!r} 引用了未知状态")
            if label not in label_set:
                raise ValueError(f"迁移使用了未声明的边标签 {label!r}")

    def successor(self, state, label):
        return self.trans.get((state, label))

    def is_full(self):
        return all((s, l) in self.trans for s in self.states for l in self.edge_labels)

    def require_full(self):
        for s in self.states:
            for l in self.edge_labels:
                if (s, l) not in self.trans:
                    raise NotFull(f"{self.name}: 状态 {s!r} 缺少标签 {l!r} 的迁移")

    def reachable(self):
        """从初始状态 BFS，按边标签顺序返回首次访问序"""
        order = [self.initial]
        seen = {self.initial}
        queue = deque(order)
        while queue:
            state = queue.popleft()
            for label in self.edge_labels:
                target = self.trans.get((state, label))
                if target is not None and target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
        return order

    def with_initial(self, initial):
        return TransitionSystem(self.states, self.edge_labels, self.trans, initial, self.name)

    def __repr__(self):
        return (f"TransitionSystem({self.name!r}, states={len(self.states)}, "
                f"labels={len(self.edge_labels)}, transitions={len(self.trans)})")


def identity_labeling(ts):
    """恒等标注：最细的标注，总是充分的"""
    return Labeling.identity(ts.reachable())


def is_sufficient(ts, kappa):
    """
    标注是否充分：同标签的状态经相同边标签到达同标签的状态

    只检查可达状态；双方都有定义的迁移才参与比较
    """
    reachable = ts.reachable()
    for state in reachable:
        if state not in kappa:
            raise UndefinedLabel(f"可达状态 {state!r} 没有标注")

    successor_label = {}
    for state in reachable:
        block = kappa[state]
        for label in ts.edge_labels:
            target = ts.trans.get((state, label))
            if target is None:
                continue
            key = (block, label)
            seen = successor_label.setdefault(key, kappa[target])
            if seen != kappa[target]:
                logger.debug(f"块 {block!r} 在标签 {label!r} 下到达 {seen!r} 与 {kappa[target]!r}")
                return False
    return True


def quotient_by(ts, kappa, name=None):
    """
    按充分标注构造商系统，状态为标签

    Raises:
        NotSufficient: 标注不充分
    """
    reachable = ts.reachable()
    states = {}
    trans = {}
    for state in reachable:
        block = kappa[state]
        states.setdefault(block, None)
        for label in ts.edge_labels:
            target = ts.trans.get((state, label))
            if target is None:
                continue
            key = (block, label)
            if trans.setdefault(key, kappa[target]) != kappa[target]:
                raise NotSufficient(f"块 {block!r} 在标签 {label!r} 下的后继不唯一")
    return TransitionSystem(states, ts.edge_labels, trans, kappa[ts.initial],
                            name or f"{ts.name}/kappa")


def complete_with_sink(ts, sink=SINK):
    """用吸收状态补全部分定义的迁移函数"""
    if sink in ts.states:
        raise ValueError(f"吸收状态名 {sink!r} 已被占用")
    trans = dict(ts.trans)
    for state in ts.states + (sink,):
        for label in ts.edge_labels:
            trans.setdefault((state, label), sink)
    return TransitionSystem(ts.states + (sink,), ts.edge_labels, trans, ts.initial, ts.name)
