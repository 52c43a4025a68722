#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
临界事件 - 沿折线运动时间隙的出现、消失、分裂与合并
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..core.config import GEOMETRY_CONFIG
from ..core.errors import OnBoundary, StepTooCoarse
from .gaps import gap_observation, canonical_rotation

logger = logging.getLogger('FilterSynth.Events')

APPEAR = 'appear'
DISAPPEAR = 'disappear'
SPLIT = 'split'
MERGE = 'merge'


@dataclass(frozen=True)
class GapEvent:
    """
    一个临界事件

    Attributes:
        kind: appear | disappear | split | merge
        gaps: appear/disappear 为 (r,)；split/merge 为 (保留的间隙, 分出/并入的间隙)
        t: 事件在折线上的参数位置 [0, 1]
        before / after: 事件前后的遮挡顶点，按方位角循环排列、最小编号在前
        segment: 事件之后所在的折线段
    """
    kind: str
    gaps: tuple
    t: float
    position: tuple
    before: tuple
    after: tuple
    segment: int = 0

    def symbol(self):
        """作为信息迁移系统输入的符号"""
        return (self.kind, self.gaps, self.after)


class Polyline:
    """按弧长参数化到 [0, 1] 的折线"""

    def __init__(self, points):
        self.points = np.asarray(points, dtype=float)
        seg = np.linalg.norm(np.diff(self.points, axis=0), axis=1)
        self.cumulative = np.concatenate([[0.0], np.cumsum(seg)])
        self.length = float(self.cumulative[-1])

    @property
    def segments(self):
        return len(self.points) - 1

    def joint_param(self, i):
        """第 i 个折线顶点的参数"""
        return float(self.cumulative[i]) / self.length

    def segment_at(self, t):
        s = min(max(t, 0.0), 1.0) * self.length
        i = int(np.searchsorted(self.cumulative, s, side='right')) - 1
        return min(max(i, 0), self.segments - 1)

    def point_at(self, t):
        if self.length == 0.0:
            return tuple(self.points[0])
        s = min(max(t, 0.0), 1.0) * self.length
        i = self.segment_at(t)
        seg_len = self.cumulative[i + 1] - self.cumulative[i]
        u = 0.0 if seg_len == 0.0 else (s - self.cumulative[i]) / seg_len
        p = self.points[i] + u * (self.points[i + 1] - self.points[i])
        return float(p[0]), float(p[1])


def _observe(polygon, point):
    try:
        return canonical_rotation(gap_observation(point, polygon).occluders)
    except OnBoundary:
        return None


def _cyclic(polygon, position, labels):
    """从 position 看去按方位角排列"""
    def angle(r):
        p = polygon.points[r]
        return math.atan2(p[1] - position[1], p[0] - position[0]) % (2 * math.pi)
    return canonical_rotation(tuple(sorted(set(labels), key=angle)))


def _defined_between(polygon, line, lo, hi):
    """在 (lo, hi) 内找一个不在边界上的采样"""
    for k in (32, 16, 48, 8, 56, 4, 60, 1, 63):
        t = lo + (hi - lo) * k / 64.0
        obs = _observe(polygon, line.point_at(t))
        if obs is not None:
            return t, obs
    return None, None


def _collinear(x, a, b, angle_tol):
    va = (a[0] - x[0], a[1] - x[1])
    vb = (b[0] - x[0], b[1] - x[1])
    cross = va[0] * vb[1] - va[1] * vb[0]
    dot = va[0] * vb[0] + va[1] * vb[1]
    return dot > 0 and abs(math.atan2(cross, dot)) <= angle_tol


def classify_event(polygon, point, before, after, angle_tol=None):
    """
    按前后间隙集合的差判断事件类型

    新增/消失的间隙与另一个间隙（离 x 更近者在前）共线时为分裂/合并

    Raises:
        StepTooCoarse: 集合差多于一个间隙
    """
    angle_tol = GEOMETRY_CONFIG['angle_tol'] if angle_tol is None else angle_tol
    added = [g for g in after if g not in before]
    removed = [g for g in before if g not in after]

    if len(added) == 1 and not removed:
        r = added[0]
        others, kind_pair, kind_single = before, SPLIT, APPEAR
    elif len(removed) == 1 and not added:
        r = removed[0]
        others, kind_pair, kind_single = after, MERGE, DISAPPEAR
    else:
        raise StepTooCoarse(f"在 {point} 处同时发生多个事件: {before} -> {after}")

    rp = polygon.points[r]
    for g in others:
        gp = polygon.points[g]
        if _collinear(point, gp, rp, angle_tol) and math.dist(point, gp) < math.dist(point, rp):
            return kind_pair, (g, r)
    return kind_single, (r,)


def _elementary_events(polygon, t, position, segment, before, after, strict):
    """
    把二分到精度仍同时变化的多个间隙拆成单个事件，先消失后出现

    Raises:
        StepTooCoarse: strict 为真且变化多于一个间隙
    """
    removed = sorted(g for g in before if g not in after)
    added = sorted(g for g in after if g not in before)
    if strict and len(removed) + len(added) > 1:
        raise StepTooCoarse(f"在 {position} 处同时发生多个事件: {before} -> {after}")

    events = []
    current = tuple(before)
    for r in removed:
        nxt = _cyclic(polygon, position, [g for g in current if g != r])
        kind, gaps = classify_event(polygon, position, current, nxt)
        events.append(GapEvent(kind, gaps, t, position, current, nxt, segment))
        current = nxt
    for r in added:
        nxt = _cyclic(polygon, position, list(current) + [r])
        kind, gaps = classify_event(polygon, position, current, nxt)
        events.append(GapEvent(kind, gaps, t, position, current, nxt, segment))
        current = nxt
    return events


def _passing_events(polygon, reached, t, position, segment, before, after):
    """
    折线经过多边形顶点时的事件

    到达的间隙先消失，它挡住的、离开后可见的间隙提升为根；
    离开后该顶点在身后重新成为间隙，此时被它挡住的间隙并入它
    """
    events = []
    current = tuple(before)

    def emit(kind, gaps, labels):
        nonlocal current
        nxt = _cyclic(polygon, position, labels)
        events.append(GapEvent(kind, gaps, t, position, current, nxt, segment))
        current = nxt

    for v in reached:
        if v in current:
            revealed = [g for g in after if g not in current and g not in reached]
            emit(DISAPPEAR, (v,), [g for g in current if g != v] + revealed)

    behind = reached[-1]
    if behind in after and behind not in current:
        emit(APPEAR, (behind,), list(current) + [behind])
    for r in [g for g in current if g not in after]:
        rest = [g for g in current if g != r]
        if r != behind and behind in current:
            emit(MERGE, (behind, r), rest)
        else:
            emit(DISAPPEAR, (r,), rest)
    for g in after:
        if g not in current:
            emit(APPEAR, (g,), list(current) + [g])
    return events


def _vertex_at(polygon, point):
    eps = GEOMETRY_CONFIG['boundary_eps']
    for v, p in enumerate(polygon.points):
        if math.dist(p, point) <= eps:
            return v
    return None


def _sample_params(line, step_size, margin):
    """每段内均匀采样，段端各留 margin，不在折线顶点上取样"""
    params = {0.0, 1.0}
    for i in range(line.segments):
        lo, hi = line.joint_param(i), line.joint_param(i + 1)
        span = hi - lo
        if span <= 0.0:
            continue
        pad = min(margin / line.length, span / 4)
        count = max(2, int(math.ceil(span * line.length / step_size)) + 1)
        params.update(float(t) for t in np.linspace(lo + pad, hi - pad, count))
    return sorted(params)


def _locate(polygon, line, lo, hi, prev, hi_obs, tol):
    """二分到 tol，返回第一个与 prev 不同的观测及其参数"""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        mid_obs = _observe(polygon, line.point_at(mid))
        if mid_obs is None:
            mid, mid_obs = _defined_between(polygon, line, lo, hi)
            if mid is None:
                break
        if set(mid_obs) == set(prev):
            lo = mid
        else:
            hi, hi_obs = mid, mid_obs
    return hi, hi_obs


def event_trace(path_points, polygon, step_size=None, tol=None, strict=False):
    """
    沿折线采样间隙观测，在观测变化的步长内二分定位事件

    边界上的采样点没有间隙观测，直接跳过。折线在多边形顶点处转折时，
    该顶点两侧的变化按经过顶点处理，不做二分

    Args:
        path_points: 折线顶点序列
        step_size: 采样步长（长度单位）
        tol: 二分精度（参数单位）
        strict: 为真时二分到精度仍有多个间隙同时变化则报错，否则拆成单个事件

    Returns:
        list[GapEvent]

    Raises:
        StepTooCoarse: 仅在 strict 模式下
    """
    step_size = GEOMETRY_CONFIG['step_size'] if step_size is None else step_size
    tol = GEOMETRY_CONFIG['bisection_tol'] if tol is None else tol
    line = Polyline(path_points)
    if line.length == 0.0:
        return []

    joints = []
    for i in range(1, line.segments):
        v = _vertex_at(polygon, tuple(line.points[i]))
        if v is not None:
            joints.append((line.joint_param(i), v))

    events = []
    prev_t, prev = None, None
    for t in _sample_params(line, step_size, GEOMETRY_CONFIG['joint_margin']):
        obs = _observe(polygon, line.point_at(t))
        if obs is None:
            continue
        if prev is None:
            prev_t, prev = t, obs
            continue
        reached = [v for param, v in joints if prev_t < param < t]
        if reached:
            batch = _passing_events(polygon, reached, t, line.point_at(t), line.segment_at(t), prev, obs)
            events.extend(batch)
            logger.debug(f"t={t:.6f} 经过顶点 {reached}: {[(e.kind, e.gaps) for e in batch]}")
        else:
            while set(obs) != set(prev):
                hi, hi_obs = _locate(polygon, line, prev_t, t, prev, obs, tol)
                batch = _elementary_events(polygon, hi, line.point_at(hi), line.segment_at(hi),
                                           prev, hi_obs, strict)
                events.extend(batch)
                logger.debug(f"t={hi:.6f} {[(e.kind, e.gaps) for e in batch]}")
                prev_t, prev = hi, hi_obs
        prev_t, prev = t, obs
    return events
