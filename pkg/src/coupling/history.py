#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
历史 - 观测与动作交替的序列 (y1, u1, y2, ..., u_{k-1}, y_k)
"""

from ..core.errors import MalformedHistory


class History(tuple):
    """
    交替历史，偶数位为观测、奇数位为动作

    空历史表示尚未得到任何观测
    """

    def __new__(cls, items=()):
        items = tuple(items)
        if items and len(items) % 2 == 0:
            raise MalformedHistory(f"历史长度必须为奇数: {items}")
        return super().__new__(cls, items)

    @classmethod
    def start(cls, observation):
        return cls((observation,))

    def extend(self, action, observation):
        return History(tuple(self) + (action, observation))

    @property
    def observations(self):
        return tuple(self[0::2])

    @property
    def actions(self):
        return tuple(self[1::2])

    @property
    def stage(self):
        """已得到的观测个数"""
        return (len(self) + 1) // 2

    def validate(self, es):
        for y in self.observations:
            if y not in es.observations:
                raise MalformedHistory(f"未知观测 {y!r}")
        for u in self.actions:
            if u not in es.actions:
                raise MalformedHistory(f"未知动作 {u!r}")
        return self

    def __repr__(self):
        return f"History{tuple(self)!r}"


def project_to_obs(eta):
    """去掉动作，只保留观测序列"""
    return History(eta).observations
