#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
外部系统 - 状态 X、动作 U、确定性迁移 f 与传感器 h
"""

import logging

from ..core.errors import IntegrityError, UndefinedLabel
from ..core.labeling import Labeling, ordered
from ..core.transition_system import TransitionSystem

logger = logging.getLogger('FilterSynth.ExternalSystem')


class ExternalSystem:
    """
    外部系统 (X, U, f, Y, h)

    f 必须完全定义；observations 可以声明比 h 的值域更大的观测集合
    """

    def __init__(self, base, sensor, observations=None, name=None):
        base.require_full()
        for state in base.states:
            if state not in sensor:
                raise UndefinedLabel(f"状态 {state!r} 没有传感器读数")
        self.base = base
        self.sensor = sensor
        self.name = name or base.name

        range_obs = ordered([sensor[x] for x in base.states])
        if observations is None:
            self.observations = range_obs
        else:
            self.observations = ordered(observations)
            missing = [y for y in range_obs if y not in self.observations]
            if missing:
                raise IntegrityError(f"传感器输出了未声明的观测: {missing}", name=missing[0])

        self._preimage = {y: frozenset() for y in self.observations}
        for y, block in sensor.restrict(base.states).blocks().items():
            self._preimage[y] = block

    @classmethod
    def from_tables(cls, states, actions, transitions, sensor, observations=None, name=None):
        """
        由表格构造

        Args:
            states: 状态列表
            actions: 动作列表
            transitions: (x, u) -> x' 映射
            sensor: x -> y 映射或 Labeling
        """
        states = ordered(states)
        base = TransitionSystem(states, actions, transitions, states[0], name=name)
        if not isinstance(sensor, Labeling):
            sensor = Labeling(sensor)
        return cls(base, sensor, observations=observations, name=name)

    @property
    def states(self):
        return self.base.states

    @property
    def actions(self):
        return self.base.edge_labels

    def f(self, state, action):
        return self.base.trans[(state, action)]

    def h(self, state):
        return self.sensor[state]

    def preimage(self, observation):
        return self._preimage.get(observation, frozenset())

    def is_bijective(self):
        return len({self.sensor[x] for x in self.states}) == len(self.states)

    def with_sensor(self, sensor, observations=None):
        """换传感器，动力学不变"""
        return ExternalSystem(self.base, sensor, observations=observations, name=self.name)

    def bijective_version(self):
        """以状态名为观测的单点传感器版本"""
        return self.with_sensor(Labeling.identity(self.states))

    def __repr__(self):
        return (f"ExternalSystem({self.name!r}, |X|={len(self.states)}, "
                f"|U|={len(self.actions)}, |Y|={len(self.observations)})")
