#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
策略限制模块 - 观测 Moore 机、历史策略、限制机构造与信念策略综合
"""

from .machine import ObsMooreMachine, unroll
from .policy import HistoryPolicy, kappa_pi
from .restriction import build_restriction, belief_filter_machine, restricted_histories, default_depth
from .synthesis import synthesize_belief_policy, synthesize_policy

__all__ = [
    'ObsMooreMachine',
    'unroll',
    'HistoryPolicy',
    'kappa_pi',
    'build_restriction',
    'belief_filter_machine',
    'restricted_histories',
    'default_depth',
    'synthesize_belief_policy',
    'synthesize_policy'
]
