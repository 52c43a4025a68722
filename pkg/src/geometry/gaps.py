#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
间隙传感器 - 可见区域边界上的深度不连续，按方位角排成循环序列
"""

import math
from dataclasses import dataclass

from ..core.errors import OutsidePolygon, OnBoundary
from .polygon import INSIDE, BOUNDARY
from .predicates import orient
from .visibility import visible

ANONYMOUS = 'g'
LEFT = 'L'
RIGHT = 'R'


def canonical_rotation(tokens):
    if not tokens:
        return ()
    return min(tokens[i:] + tokens[:i] for i in range(len(tokens)))


@dataclass(frozen=True, eq=False)
class GapObservation:
    """
    间隙观测

    tokens 是机器人能感知的部分，相等性按循环旋转比较；
    occluders 是产生各间隙的反射顶点编号，只作为真值保留
    """
    tokens: tuple
    occluders: tuple

    def canonical(self):
        return canonical_rotation(self.tokens)

    def __eq__(self, other):
        if not isinstance(other, GapObservation):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __len__(self):
        return len(self.tokens)

    def __str__(self):
        return '[' + ' '.join(self.tokens) + ']'


def gap_observation(x, polygon, chirality=False):
    """
    x 处的间隙观测

    可见反射顶点 r 的两个邻点严格位于直线 x-r 同侧时，r 产生一个间隙

    Args:
        chirality: 为真时记号区分被遮挡区域在射线左侧还是右侧

    Raises:
        OutsidePolygon: x 在多边形外
        OnBoundary: x 在边界上
    """
    x = (float(x[0]), float(x[1]))
    where = polygon.classify(x)
    if where == BOUNDARY:
        raise OnBoundary(f"点 {x} 在边界上")
    if where != INSIDE:
        raise OutsidePolygon(f"点 {x} 在多边形外")

    found = []
    for r in polygon.reflex:
        point = polygon.points[r]
        before = orient(x, point, polygon.points[polygon.prev(r)])
        after = orient(x, point, polygon.points[polygon.next(r)])
        if before * after <= 0:
            continue
        if not visible(x, point, polygon):
            continue
        angle = math.atan2(point[1] - x[1], point[0] - x[0]) % (2 * math.pi)
        token = (LEFT if before > 0 else RIGHT) if chirality else ANONYMOUS
        found.append((angle, r, token))

    found.sort()
    return GapObservation(tuple(t for _, _, t in found), tuple(r for _, r, _ in found))
