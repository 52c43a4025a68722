#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
数据模块 - 场景/机器/多边形文件读写、DOT 导出与报表
"""

from .scenario_io import (ScenarioFile, PolicySpec, parse_scenario, serialize_scenario, load_scenario,
                          save_scenario, parse_machine, serialize_machine, load_machine, save_machine)
from .polygon_io import parse_polygon, serialize_polygon, load_polygon, save_polygon, bundled_polygons
from .report import ReportWriter

__all__ = [
    'ScenarioFile',
    'PolicySpec',
    'parse_scenario',
    'serialize_scenario',
    'load_scenario',
    'save_scenario',
    'parse_machine',
    'serialize_machine',
    'load_machine',
    'save_machine',
    'parse_polygon',
    'serialize_polygon',
    'load_polygon',
    'save_polygon',
    'bundled_polygons',
    'ReportWriter'
]
