#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最短路径 - 可见图上的 Dijkstra，路径只在顶点处转折
"""

import logging
import math
import weakref
from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import csgraph_from_dense, dijkstra

from ..core.config import GEOMETRY_CONFIG
from ..core.errors import OutsidePolygon
from .polygon import OUTSIDE
from .visibility import visible, visible_vertices

logger = logging.getLogger('FilterSynth.ShortestPath')

_GRAPHS = weakref.WeakKeyDictionary()


@dataclass
class PathResult:
    """从起点到目标顶点的最短路径，vertices 不含起点"""
    length: float
    vertices: tuple
    points: list

    @property
    def first_vertex(self):
        return self.vertices[0] if self.vertices else None


@dataclass
class VertexAction:
    """朝某个顶点运动的动作，heading 为方向角（弧度）"""
    target: int
    heading: float
    length: float


class VisibilityGraph:
    """顶点可见图及全源最短路"""

    def __init__(self, polygon):
        n = polygon.n
        weights = np.full((n, n), np.inf)
        np.fill_diagonal(weights, 0.0)
        for i in range(n):
            for j in range(i + 1, n):
                if visible(polygon.points[i], polygon.points[j], polygon):
                    weights[i, j] = weights[j, i] = math.dist(polygon.points[i], polygon.points[j])
        graph = csgraph_from_dense(weights, null_value=np.inf)
        self.dist, self.pred = dijkstra(graph, directed=False, return_predecessors=True)

    def path(self, source, target):
        """source 到 target 的顶点序列（不含 source）"""
        if source == target:
            return ()
        vertices = []
        j = target
        while j != source:
            if j < 0:
                raise ValueError(f"顶点 {source} 与 {target} 不连通")
            vertices.append(int(j))
            j = self.pred[source, j]
        return tuple(reversed(vertices))


def visibility_graph(polygon):
    graph = _GRAPHS.get(polygon)
    if graph is None:
        graph = VisibilityGraph(polygon)
        _GRAPHS[polygon] = graph
    return graph


def _coincident_vertex(x, polygon):
    eps = GEOMETRY_CONFIG['boundary_eps']
    for i, v in enumerate(polygon.points):
        if math.dist(x, v) <= eps:
            return i
    return None


def shortest_path(x, goal, polygon, candidates=None):
    """
    x 到顶点 goal 的最短路径

    Args:
        candidates: 预先算好的 x 可见顶点，省去重复计算

    Raises:
        OutsidePolygon: x 不在闭多边形内
    """
    x = (float(x[0]), float(x[1]))
    if polygon.classify(x) == OUTSIDE:
        raise OutsidePolygon(f"点 {x} 在多边形外")
    graph = visibility_graph(polygon)
    g = polygon.points[goal]

    at = _coincident_vertex(x, polygon)
    if at is not None:
        vertices = graph.path(at, goal)
        return PathResult(float(graph.dist[at, goal]), vertices, [polygon.points[v] for v in vertices])

    if candidates is None:
        candidates = visible_vertices(x, polygon)
    if goal in candidates:
        return PathResult(math.dist(x, g), (goal,), [g])

    best = None
    for v in candidates:
        length = math.dist(x, polygon.points[v]) + graph.dist[v, goal]
        if not np.isfinite(length):
            continue
        if best is None or (length, v) < best:
            best = (length, v)
    if best is None:
        raise ValueError(f"从 {x} 无法到达顶点 {goal}")
    length, v = best
    vertices = (v,) + graph.path(v, goal)
    return PathResult(float(length), vertices, [polygon.points[u] for u in vertices])


def optimal_action(x, goal, polygon, candidates=None):
    """沿最短路径朝第一个转折顶点（或目标）运动"""
    path = shortest_path(x, goal, polygon, candidates=candidates)
    if not path.vertices:
        return VertexAction(goal, 0.0, 0.0)
    target = path.vertices[0]
    heading = math.atan2(polygon.points[target][1] - x[1], polygon.points[target][0] - x[0])
    return VertexAction(target, heading, path.length)
