#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最小化模块 - 最小充分加细、支持检查、同构与多策略联合
"""

from .refinement import (evaluate_pi, minimal_sufficient_refinement, moore_partition_fixpoint,
                         moore_partition_worklist, canonical_numbering)
from .supports import supports, find_support, SupportConflict, MissingTransition
from .isomorphism import find_isomorphism, is_isomorphic
from .multi_policy import product_machine, project_outputs, multi_policy_minimal

__all__ = [
    'evaluate_pi',
    'minimal_sufficient_refinement',
    'moore_partition_fixpoint',
    'moore_partition_worklist',
    'canonical_numbering',
    'supports',
    'find_support',
    'SupportConflict',
    'MissingTransition',
    'find_isomorphism',
    'is_isomorphic',
    'product_machine',
    'project_outputs',
    'multi_policy_minimal'
]
