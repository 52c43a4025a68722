#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多边形文件读写 - 每行一个顶点坐标，可选 name 行
"""

import glob
import logging
import os

from ..core.errors import ParseError
from ..geometry.polygon import SimplePolygon
from .scenario_io import write_atomic

logger = logging.getLogger('FilterSynth.PolygonIO')

POLYGON_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                           'scenarios', 'polygons')


def parse_polygon(text, name='polygon'):
    vertices = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == 'name':
            if len(tokens) != 2:
                raise ParseError("name 行格式错误", line=lineno)
            name = tokens[1]
            continue
        if len(tokens) != 2:
            raise ParseError("顶点行必须是 'x y'", line=lineno)
        try:
            vertices.append((float(tokens[0]), float(tokens[1])))
        except ValueError:
            raise ParseError(f"坐标不是数字: {line}", line=lineno) from None
    if len(vertices) < 3:
        raise ParseError("多边形至少需要 3 个顶点")
    try:
        return SimplePolygon(vertices, name=name)
    except ValueError as e:
        raise ParseError(str(e)) from None


def serialize_polygon(polygon):
    lines = [f"name {polygon.name}"]
    lines += [f"{x!r} {y!r}" for x, y in polygon.points]
    return '\n'.join(lines) + '\n'


def load_polygon(path):
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    return parse_polygon(text, name=os.path.splitext(os.path.basename(path))[0])


def save_polygon(polygon, path):
    write_atomic(path, serialize_polygon(polygon))


def bundled_polygons(directory=None):
    """读取随项目提供的多边形，按名字索引"""
    directory = directory or POLYGON_DIR
    polygons = {}
    for path in sorted(glob.glob(os.path.join(directory, '*.poly'))):
        polygon = load_polygon(path)
        polygons[polygon.name] = polygon
    logger.debug(f"已读取 {len(polygons)} 个多边形: {list(polygons)}")
    return polygons
