#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试辅助 - 固定场景、随机系统生成器与暴力参照实现
"""

import itertools
import math
import os
import random
import sys

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra
from scipy.spatial import cKDTree

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.core.labeling import Labeling, enumerate_partitions, is_refinement
from src.core.transition_system import is_sufficient
from src.coupling.external_system import ExternalSystem
from src.coupling.task import TaskSpec
from src.data.polygon_io import load_polygon
from src.data.scenario_io import load_scenario
from src.minimization.refinement import moore_partition_fixpoint
from src.restriction.machine import ObsMooreMachine
from src.restriction.synthesis import synthesize_policy

SCENARIO_DIR = os.path.join(project_root, 'scenarios')
POLYGON_DIR = os.path.join(SCENARIO_DIR, 'polygons')


def scenario_path(name):
    return os.path.join(SCENARIO_DIR, name)


def tetromino():
    """斜四格骨牌场景: (场景, 外部系统, 任务)"""
    scenario = load_scenario(scenario_path('tetromino.scn'))
    return scenario, scenario.external_system(), scenario.task


def polygon(name):
    return load_polygon(os.path.join(POLYGON_DIR, f'{name}.poly'))


# ---- 随机离散系统 ----

def random_external_system(rng, max_states=5, max_actions=3, max_observations=3):
    n = rng.randint(1, max_states)
    m = rng.randint(1, max_actions)
    k = rng.randint(1, max_observations)
    states = [f"x{i}" for i in range(n)]
    actions = [f"u{i}" for i in range(m)]
    observations = [f"y{i}" for i in range(k)]
    transitions = {(x, u): rng.choice(states) for x in states for u in actions}
    sensor = {x: rng.choice(observations) for x in states}
    return ExternalSystem.from_tables(states, actions, transitions, sensor, observations=observations,
                                      name=f"random{n}x{m}x{k}")


def random_generator(rng, es, max_states=4):
    """输出为动作的随机生成机，字母表为外部系统的观测"""
    n = rng.randint(1, max_states)
    step = {(q, y): rng.randrange(n) for q in range(n) for y in es.observations}
    output = {q: rng.choice(es.actions) for q in range(n)}
    return ObsMooreMachine(range(n), es.observations, step, 0, output, name=f"gen{n}")


def feasible_systems(count, seed=0, attempts=None):
    """
    生成 count 个带可行策略的随机系统

    Yields:
        (ExternalSystem, TaskSpec, HistoryPolicy, random.Random)
    """
    attempts = attempts or count * 40
    found = 0
    for trial in range(attempts):
        rng = random.Random(seed * 1000003 + trial)
        es = random_external_system(rng)
        goal = rng.choice([es.h(x) for x in es.states])
        task = TaskSpec.observation_goal({goal})
        policy = synthesize_policy(es, task)
        if policy is None:
            continue
        yield es, task, policy, rng
        found += 1
        if found == count:
            return


def congruence(machine, tags):
    """包含 tags 的最粗同余划分（可达状态上）"""
    outputs = {q: tags.get(q, '_') for q in machine.states}
    return Labeling(moore_partition_fixpoint(machine.with_outputs(outputs), machine.reachable()))


def brute_force_minimum(machine):
    """在所有加细输出标注的划分中枚举充分者，返回最少块数"""
    ts = machine.as_transition_system()
    pi = machine.output_labeling()
    blocks = list(pi.blocks().values())
    best = None
    for parts in itertools.product(*(list(enumerate_partitions(block)) for block in blocks)):
        label_of = {}
        for index, part in enumerate(parts):
            for state, label in part.items():
                label_of[state] = (index, label)
        kappa = Labeling(label_of)
        if not is_refinement(kappa, pi) or not is_sufficient(ts, kappa):
            continue
        count = len(kappa.blocks())
        if best is None or count < best:
            best = count
    return best


def shuffled_copy(machine, rng):
    """状态改名并打乱声明顺序的副本"""
    names = list(machine.states)
    rng.shuffle(names)
    rename = {q: f"s{i}" for i, q in enumerate(names)}
    step = {(rename[q], y): rename[t] for (q, y), t in machine.step.items()}
    output = {rename[q]: out for q, out in machine.output.items()}
    dead = rename[machine.dead] if machine.dead is not None else None
    return ObsMooreMachine([rename[q] for q in names], machine.alphabet, step, rename[machine.initial],
                           output, dead=dead, name=f"{machine.name}~")


def observation_sequences(alphabet, depth):
    for length in range(depth + 1):
        yield from itertools.product(alphabet, repeat=length)


def run_candidate(candidate, mu, observations):
    state = candidate.initial
    for y in observations:
        state = candidate.successor(state, y)
    return mu[state]


# ---- 几何参照 ----

def _inside_or_on(poly, pts, eps=1e-9):
    """向量化的闭多边形包含：奇偶规则加边界距离"""
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    near = np.zeros(len(pts), dtype=bool)
    for (ax, ay), (bx, by) in poly.edges():
        spans = (ay > y) != (by > y)
        with np.errstate(divide='ignore', invalid='ignore'):
            cross_x = ax + (y - ay) * (bx - ax) / (by - ay)
        inside ^= spans & (x < cross_x)
        dx, dy = bx - ax, by - ay
        t = np.clip(((x - ax) * dx + (y - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0)
        near |= np.hypot(x - ax - t * dx, y - ay - t * dy) <= eps
    return inside | near


def _blocked(poly, p, q):
    """点对线段是否与某条边真相交"""
    def side(u, v, w):
        return (v[:, 0] - u[:, 0]) * (w[:, 1] - u[:, 1]) - (v[:, 1] - u[:, 1]) * (w[:, 0] - u[:, 0])

    blocked = np.zeros(len(p), dtype=bool)
    for a, b in poly.edges():
        a = np.broadcast_to(np.asarray(a, dtype=float), p.shape)
        b = np.broadcast_to(np.asarray(b, dtype=float), p.shape)
        blocked |= (side(p, q, a) * side(p, q, b) < 0) & (side(a, b, p) * side(a, b, q) < 0)
    return blocked


def grid_reference_lengths(poly, starts, cell=None, radius=5):
    """
    网格参照：格点、多边形顶点与起点组成的图，半径 radius 格以内、线段留在多边形内的点对连边

    Args:
        cell: 格距，默认取包围盒较长边的 1%

    Returns:
        np.ndarray: (起点数, 顶点数) 的最短长度
    """
    low, high = poly.bbox
    cell = cell or 0.01 * float(max(high[0] - low[0], high[1] - low[1]))
    xs = np.arange(low[0], high[0] + cell / 2, cell)
    ys = np.arange(low[1], high[1] + cell / 2, cell)
    grid = np.array([(x, y) for x in xs for y in ys], dtype=float)
    grid = grid[_inside_or_on(poly, grid)]
    fixed = np.vstack([np.asarray(poly.points, dtype=float), np.asarray(starts, dtype=float)])
    # 与顶点或起点重合的格点去掉
    grid = grid[cKDTree(fixed).query(grid)[0] > 1e-9]
    nodes = np.vstack([fixed, grid])

    pairs = cKDTree(nodes).query_pairs(radius * cell + 1e-12, output_type='ndarray')
    p, q = nodes[pairs[:, 0]], nodes[pairs[:, 1]]
    keep = ~_blocked(poly, p, q)
    for t in (0.25, 0.5, 0.75):
        keep &= _inside_or_on(poly, p + t * (q - p))
    pairs = pairs[keep]
    lengths = np.linalg.norm(nodes[pairs[:, 0]] - nodes[pairs[:, 1]], axis=1)
    graph = coo_matrix((lengths, (pairs[:, 0], pairs[:, 1])), shape=(len(nodes), len(nodes)))

    n = poly.n
    dist = dijkstra(graph.tocsr(), directed=False, indices=list(range(n, n + len(starts))))
    return dist[:, :n]


def path_length(points):
    return sum(math.dist(a, b) for a, b in zip(points, points[1:]))
