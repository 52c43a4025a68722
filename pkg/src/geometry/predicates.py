#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
几何谓词 - 浮点过滤 + 有理数精确回退的方向判定
"""

from fractions import Fraction

# 浮点行列式相对误差界，超出时直接信任符号
_FILTER = 1e-12


def orient(a, b, c):
    """
    c 相对有向直线 a->b 的位置

    Returns:
        1 左侧，-1 右侧，0 共线
    """
    left = (b[0] - a[0]) * (c[1] - a[1])
    right = (b[1] - a[1]) * (c[0] - a[0])
    det = left - right
    if abs(det) > _FILTER * (abs(left) + abs(right)):
        return 1 if det > 0 else -1

    ax, ay = Fraction(a[0]), Fraction(a[1])
    exact = (Fraction(b[0]) - ax) * (Fraction(c[1]) - ay) - (Fraction(b[1]) - ay) * (Fraction(c[0]) - ax)
    return (exact > 0) - (exact < 0)


def on_segment(p, a, b):
    """p 是否在闭线段 ab 上"""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and
            min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_intersect(p, q, a, b):
    """闭线段 pq 与 ab 是否相交（含端点接触）"""
    o1, o2 = orient(p, q, a), orient(p, q, b)
    o3, o4 = orient(a, b, p), orient(a, b, q)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (on_segment(a, p, q) or on_segment(b, p, q) or
            on_segment(p, a, b) or on_segment(q, a, b))


def crosses_properly(p, q, a, b):
    """两线段在各自内部交于一点"""
    return orient(p, q, a) * orient(p, q, b) < 0 and orient(a, b, p) * orient(a, b, q) < 0


def segment_param(p, q, point):
    """point 在 p->q 上的参数（假定共线）"""
    dx, dy = q[0] - p[0], q[1] - p[1]
    if abs(dx) >= abs(dy):
        return (point[0] - p[0]) / dx if dx else 0.0
    return (point[1] - p[1]) / dy
