#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
几何模块 - 多边形、可见性、最短路径、间隙传感器与间隙导航树
"""

from .polygon import SimplePolygon
from .predicates import orient
from .visibility import visible, visible_vertices
from .shortest_path import shortest_path, optimal_action
from .gaps import GapObservation, gap_observation
from .events import GapEvent, event_trace, classify_event
from .gnt import (GapNode, GapTree, gnt_step, explored_tree, navigation_traces,
                  gnt_transition_system, gnt_supports_navigation)
from .counterexample import gap_sensor_reactive_counterexample

__all__ = [
    'SimplePolygon',
    'orient',
    'visible',
    'visible_vertices',
    'shortest_path',
    'optimal_action',
    'GapObservation',
    'gap_observation',
    'GapEvent',
    'event_trace',
    'classify_event',
    'GapNode',
    'GapTree',
    'gnt_step',
    'explored_tree',
    'navigation_traces',
    'gnt_transition_system',
    'gnt_supports_navigation',
    'gap_sensor_reactive_counterexample'
]
