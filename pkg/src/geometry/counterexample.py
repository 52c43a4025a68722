#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
反应式间隙传感器反例 - 两个间隙观测相同、最优动作不同的点
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core.config import ANALYSIS_CONFIG, GEOMETRY_CONFIG
from ..core.errors import OnBoundary
from .gaps import gap_observation
from .shortest_path import optimal_action

logger = logging.getLogger('FilterSynth.Counterexample')


@dataclass
class CounterexamplePair:
    first: tuple
    second: tuple
    observation: object
    first_target: int
    second_target: int

    def explain(self):
        return (f"{self.first} 与 {self.second} 的间隙观测都是 {self.observation}，"
                f"最优动作分别朝向顶点 {self.first_target} 与 {self.second_target}")


def _probe(polygon, goal, point):
    try:
        observation = gap_observation(point, polygon)
    except OnBoundary:
        return None
    return observation, optimal_action(point, goal, polygon).target


def gap_sensor_reactive_counterexample(polygon, goal, samples=None, seed=None, workers=None):
    """
    采样内部点，按间隙观测分组，寻找组内最优动作不同的两点

    返回字典序最小的一对：先取组内最小点，再取与其动作不同的最小点，组间取最小者

    Returns:
        CounterexamplePair 或 None
    """
    samples = GEOMETRY_CONFIG['samples'] if samples is None else samples
    seed = GEOMETRY_CONFIG['seed'] if seed is None else seed
    workers = workers or ANALYSIS_CONFIG['workers']

    rng = np.random.default_rng(seed)
    points = polygon.sample_interior(rng, samples)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            probes = list(executor.map(lambda p: _probe(polygon, goal, p), points))
    else:
        probes = [_probe(polygon, goal, p) for p in points]

    groups = {}
    for point, probe in zip(points, probes):
        if probe is None:
            continue
        observation, target = probe
        groups.setdefault(observation, []).append((point, target, observation))

    best = None
    for members in groups.values():
        members.sort(key=lambda m: m[0])
        p0, t0, observation = members[0]
        for q, t, _ in members[1:]:
            if t != t0:
                if best is None or (p0, q) < (best.first, best.second):
                    best = CounterexamplePair(p0, q, observation, t0, t)
                break

    if best is None:
        logger.info(f"{polygon.name}: {samples} 个采样点中没有找到反例")
    else:
        logger.info(f"{polygon.name}: {best.explain()}")
    return best
