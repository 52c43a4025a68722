#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
历史策略 - 以有限机生成或以有限深度表格给出的历史到动作的映射
"""

import logging

from ..core.errors import OutOfDomain, DepthRequired
from ..core.symbols import XI, NO_ACTION
from ..coupling.belief import is_attainable
from ..coupling.history import History

logger = logging.getLogger('FilterSynth.Policy')

MACHINE = 'machine'
TABLE = 'table'


class HistoryPolicy:
    """
    历史策略

    两种表示：
    - machine: 读取观测投影的 Moore 机，输出即动作
    - table: 显式的 历史 -> 动作 表，只在 depth 个观测以内有定义
    """

    def __init__(self, kind, generator=None, table=None, depth=None, name=None):
        if kind not in (MACHINE, TABLE):
            raise ValueError(f"未知策略表示: {kind}")
        if kind == MACHINE and generator is None:
            raise ValueError("machine 策略需要生成机")
        self.kind = kind
        self.generator = generator
        self.table = {History(k): v for k, v in (table or {}).items()}
        self.depth = depth
        self.name = name or kind

    @classmethod
    def from_machine(cls, generator, name=None):
        return cls(MACHINE, generator=generator, name=name or generator.name)

    @classmethod
    def from_table(cls, table, depth=None, name=None):
        if depth is None:
            depth = max((History(k).stage for k in table), default=0)
        return cls(TABLE, table=table, depth=depth, name=name)

    def action(self, eta):
        """
        策略在历史上的动作

        Returns:
            动作；表格缺项时返回 None
        """
        eta = History(eta)
        if not eta:
            return NO_ACTION
        if self.kind == MACHINE:
            return self.generator.evaluate(eta.observations)
        return self.table.get(eta)

    def require_depth(self, depth_bound=None):
        bound = depth_bound if depth_bound is not None else self.depth
        if self.kind == TABLE and bound is None:
            raise DepthRequired("表格策略需要深度上界")
        return bound

    def __repr__(self):
        return f"HistoryPolicy({self.name!r}, kind={self.kind})"


def kappa_pi(es, pol, eta):
    """
    策略在历史上诱导的标注

    不可达历史为 xi；空历史为 ()；其余为策略动作

    Raises:
        OutOfDomain: 可达历史不在策略定义域内
    """
    eta = History(eta)
    if not eta:
        return NO_ACTION
    if not is_attainable(es, eta):
        return XI
    if pol.kind == TABLE and pol.depth is not None and eta.stage > pol.depth:
        raise OutOfDomain(f"历史 {tuple(eta)} 超出表格深度 {pol.depth}")
    action = pol.action(eta)
    if action is None:
        raise OutOfDomain(f"策略没有定义历史 {tuple(eta)} 上的动作")
    return action
