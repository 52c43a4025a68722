#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
信念滤波 - 与历史一致的外部状态集合
"""

from dataclasses import dataclass

from .history import History


@dataclass(frozen=True)
class BeliefState:
    """信念状态：与历史相容的外部状态集合"""
    support: frozenset

    @classmethod
    def of(cls, states):
        return cls(frozenset(states))

    def is_empty(self):
        return not self.support

    def __len__(self):
        return len(self.support)

    def __iter__(self):
        return iter(sorted(self.support, key=repr))

    def __str__(self):
        return '{' + ','.join(str(x) for x in self) + '}'


def initial_belief(es, observation):
    return BeliefState(es.preimage(observation))


def belief_step(es, belief, action, observation):
    """b' = f(b, u) ∩ h^{-1}(y)"""
    image = {es.f(x, action) for x in belief.support}
    return BeliefState(frozenset(image) & es.preimage(observation))


def belief_after(es, eta):
    """
    按历史折叠信念滤波

    空历史返回先验（全部状态）

    Raises:
        MalformedHistory: 历史含有未知观测或动作
    """
    eta = History(eta).validate(es)
    if not eta:
        return BeliefState(frozenset(es.states))
    belief = initial_belief(es, eta[0])
    for k in range(1, len(eta), 2):
        if belief.is_empty():
            break
        belief = belief_step(es, belief, eta[k], eta[k + 1])
    return belief


def is_attainable(es, eta):
    """存在初始状态使外部系统在动作序列下恰好产生这些观测"""
    return not belief_after(es, eta).is_empty()
