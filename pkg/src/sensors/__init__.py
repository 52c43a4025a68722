#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
传感器模块 - 反应式传感器的充分性与最小化
"""

from .reactive import (StatePolicy, SensorMap, extract_state_policy, sensor_sufficient_for_reactive,
                       minimal_reactive_sensor, compose_reactive, reactive_execution_feasible,
                       find_reactive_policy, reactive_policy_exists, observation_policies)

__all__ = [
    'StatePolicy',
    'SensorMap',
    'extract_state_policy',
    'sensor_sufficient_for_reactive',
    'minimal_reactive_sensor',
    'compose_reactive',
    'reactive_execution_feasible',
    'find_reactive_policy',
    'reactive_policy_exists',
    'observation_policies'
]
