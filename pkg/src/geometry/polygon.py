#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
简单多边形 - 逆时针顶点序列，闭集（边界属于多边形）
"""

import logging

import numpy as np

from ..core.config import GEOMETRY_CONFIG
from .predicates import orient, segments_intersect

logger = logging.getLogger('FilterSynth.Polygon')

INSIDE = 'inside'
BOUNDARY = 'boundary'
OUTSIDE = 'outside'


class SimplePolygon:
    """
    简单多边形

    Attributes:
        vertices: (n, 2) 数组，逆时针
        points: 顶点坐标元组列表，顶点编号即下标
        reflex: 反射顶点（内角大于 pi）编号
    """

    def __init__(self, vertices, name=None):
        vertices = np.asarray(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) < 3:
            raise ValueError(f"多边形顶点数组形状错误: {vertices.shape}")
        self.name = name or 'polygon'
        if _signed_area(vertices) < 0:
            logger.warning(f"{self.name}: 顶点为顺时针，已反转为逆时针")
            vertices = vertices[::-1].copy()
        self.vertices = vertices
        self.points = [(float(x), float(y)) for x, y in vertices]
        self.n = len(self.points)
        self._check_simple()
        self.reflex = tuple(i for i in range(self.n)
                            if orient(self.points[i - 1], self.points[i], self.points[(i + 1) % self.n]) < 0)

    def _check_simple(self):
        edges = list(self.edges())
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if j == i + 1 or (i == 0 and j == self.n - 1):
                    continue
                if segments_intersect(*edges[i], *edges[j]):
                    raise ValueError(f"{self.name}: 第{i}条边与第{j}条边相交，不是简单多边形")

    def edges(self):
        for i in range(self.n):
            yield self.points[i], self.points[(i + 1) % self.n]

    def prev(self, i):
        return (i - 1) % self.n

    def next(self, i):
        return (i + 1) % self.n

    def is_convex(self):
        return not self.reflex

    @property
    def area(self):
        return abs(_signed_area(self.vertices))

    @property
    def bbox(self):
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def boundary_distance(self, p):
        """点到边界的距离"""
        a = self.vertices
        b = np.roll(self.vertices, -1, axis=0)
        ab = b - a
        ap = np.asarray(p, dtype=float) - a
        t = np.clip(np.einsum('ij,ij->i', ap, ab) / np.einsum('ij,ij->i', ab, ab), 0.0, 1.0)
        nearest = a + t[:, None] * ab
        return float(np.min(np.linalg.norm(nearest - np.asarray(p, dtype=float), axis=1)))

    def winding_number(self, p):
        winding = 0
        for source, target in self.edges():
            if source[1] <= p[1]:
                if target[1] > p[1] and orient(source, target, p) > 0:
                    winding += 1
            elif target[1] <= p[1] and orient(source, target, p) < 0:
                winding -= 1
        return winding

    def classify(self, p, eps=None):
        """inside | boundary | outside"""
        eps = GEOMETRY_CONFIG['boundary_eps'] if eps is None else eps
        if self.boundary_distance(p) <= eps:
            return BOUNDARY
        return INSIDE if self.winding_number(p) != 0 else OUTSIDE

    def contains(self, p, eps=None):
        """闭多边形包含"""
        return self.classify(p, eps) != OUTSIDE

    def sample_interior(self, rng, count):
        """包围盒内拒绝采样严格内部点"""
        low, high = self.bbox
        result = []
        while len(result) < count:
            batch = rng.uniform(low, high, size=(max(count, 64), 2))
            for x, y in batch:
                if self.classify((float(x), float(y))) == INSIDE:
                    result.append((float(x), float(y)))
                    if len(result) == count:
                        break
        return result

    def __repr__(self):
        return f"SimplePolygon({self.name!r}, n={self.n}, reflex={list(self.reflex)})"


def _signed_area(vertices):
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
