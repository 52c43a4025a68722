#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
核心模块 - 迁移系统、标注函数与通用异常
"""

from .errors import FilterSynthError
from .symbols import XI, NO_ACTION, SINK, is_dead_output
from .labeling import Labeling, is_refinement, join_labelings, enumerate_partitions
from .transition_system import (TransitionSystem, is_sufficient, quotient_by,
                                complete_with_sink, identity_labeling)

__all__ = [
    'FilterSynthError',
    'XI',
    'NO_ACTION',
    'SINK',
    'is_dead_output',
    'Labeling',
    'is_refinement',
    'join_labelings',
    'enumerate_partitions',
    'TransitionSystem',
    'is_sufficient',
    'quotient_by',
    'complete_with_sink',
    'identity_labeling'
]
