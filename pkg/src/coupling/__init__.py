#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
耦合模块 - 外部系统、历史、信念与耦合仿真
"""

from .external_system import ExternalSystem
from .history import History, project_to_obs
from .belief import BeliefState, initial_belief, belief_step, belief_after, is_attainable
from .task import TaskSpec, task_label
from .simulation import (PolicyLabeledITS, Outcome, CoupledRun, TraceRecord,
                         run_coupled, is_feasible)

__all__ = [
    'ExternalSystem',
    'History',
    'project_to_obs',
    'BeliefState',
    'initial_belief',
    'belief_step',
    'belief_after',
    'is_attainable',
    'TaskSpec',
    'task_label',
    'PolicyLabeledITS',
    'Outcome',
    'CoupledRun',
    'TraceRecord',
    'run_coupled',
    'is_feasible'
]
