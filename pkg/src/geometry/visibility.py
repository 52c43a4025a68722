#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
可见性 - 闭多边形内两点之间的线段是否完全落在多边形内
"""

from ..core.errors import OutsidePolygon
from .predicates import crosses_properly, on_segment, segment_param


def visible(p, q, polygon):
    """
    线段 pq 是否在闭多边形内（允许沿边界）

    线段被多边形顶点与端点切成若干段，逐段检查中点

    Raises:
        OutsidePolygon: 端点在多边形外
    """
    for end in (p, q):
        if not polygon.contains(end):
            raise OutsidePolygon(f"点 {end} 在多边形外")
    if p == q:
        return True

    breakpoints = {0.0, 1.0}
    for a, b in polygon.edges():
        if crosses_properly(p, q, a, b):
            return False
        for v in (a, b):
            if on_segment(v, p, q):
                breakpoints.add(min(1.0, max(0.0, segment_param(p, q, v))))

    ts = sorted(breakpoints)
    for t0, t1 in zip(ts, ts[1:]):
        if t1 - t0 <= 0.0:
            continue
        t = 0.5 * (t0 + t1)
        mid = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
        if not polygon.contains(mid):
            return False
    return True


def visible_vertices(p, polygon):
    """从 p 可见的顶点编号"""
    return [i for i, v in enumerate(polygon.points) if visible(p, v, polygon)]
