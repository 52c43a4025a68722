#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
反应式传感器测试
"""

import sys
import os
import itertools

import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.core.errors import NotBijective, SearchBudgetExceeded
from src.core.labeling import Labeling, enumerate_partitions
from src.coupling import ExternalSystem, TaskSpec
from src.restriction import HistoryPolicy, synthesize_policy
from src.sensors import (StatePolicy, SensorMap, extract_state_policy, sensor_sufficient_for_reactive,
                         minimal_reactive_sensor, compose_reactive, reactive_execution_feasible,
                         find_reactive_policy, reactive_policy_exists, observation_policies)
from tests.helpers import tetromino


def _tetromino_state_policy():
    scenario, es, task = tetromino()
    return es, task, scenario.build_state_policy()


def test_extract_state_policy_on_tetromino():
    """测试从单点传感器版本提取状态策略"""
    print("Testing state policy extraction...")
    scenario, es, task = tetromino()
    bijective = es.bijective_version()
    state_task = task.as_state_goal(es)
    policy = synthesize_policy(bijective, state_task, stop_action='u1')
    pix = extract_state_policy(bijective, policy, state_task)
    assert pix is not None
    assert pix.action_of == scenario.build_state_policy().action_of
    assert reactive_execution_feasible(es, pix, task)

    with pytest.raises(NotBijective):
        extract_state_policy(es, scenario.build_policy(es), task)
    print("Extraction OK")


def test_extract_rejects_history_dependent_actions():
    """同一状态在不同历史上需要不同动作时无法提取"""
    es = ExternalSystem.from_tables(['a', 'b'], ['u1', 'u2'],
                                    {('a', 'u1'): 'a', ('a', 'u2'): 'b', ('b', 'u1'): 'b', ('b', 'u2'): 'b'},
                                    Labeling.identity(['a', 'b']))
    task = TaskSpec.state_goal({'b'})
    table = {
        ('a',): 'u1',
        ('b',): 'u1',
        ('a', 'u1', 'a'): 'u2',
        ('b', 'u1', 'b'): 'u1',
        ('a', 'u1', 'a', 'u2', 'b'): 'u1',
        ('b', 'u1', 'b', 'u1', 'b'): 'u1'
    }
    policy = HistoryPolicy.from_table(table)
    assert policy.depth == 3
    assert extract_state_policy(es, policy, task) is None


def test_tetromino_sensor_is_not_sufficient_for_reactive():
    """测试骨牌传感器不能无记忆执行"""
    print("Testing reactive sensor on tetromino...")
    es, task, pix = _tetromino_state_policy()
    sensor = SensorMap.of(es)
    assert not sensor_sufficient_for_reactive(sensor, pix)

    minimal = minimal_reactive_sensor(pix)
    assert minimal.labeling.partition() == frozenset({
        frozenset({'x1', 'x3'}), frozenset({'x2'}), frozenset({'x4'})
    })
    assert sensor_sufficient_for_reactive(minimal, pix)

    pi_y = {label: pix[next(iter(block))] for label, block in minimal.blocks().items()}
    composed = compose_reactive(minimal, pi_y)
    assert composed.action_of == pix.action_of
    assert reactive_execution_feasible(es, composed, task)

    for pi_y in observation_policies(sensor, es.actions):
        assert not reactive_execution_feasible(es, compose_reactive(sensor, pi_y), task)
    print("Reactive sensor OK")


def test_reactive_search_on_tetromino():
    es, task, pix = _tetromino_state_policy()
    found = find_reactive_policy(es, task)
    assert found is not None
    assert reactive_execution_feasible(es, found, task)
    assert reactive_policy_exists(es, task)

    with pytest.raises(SearchBudgetExceeded) as info:
        find_reactive_policy(es, task, budget=1)
    assert info.value.partial_verdict is False


def test_trap_has_no_reactive_policy():
    """吸收陷阱使任何无记忆策略都失败"""
    es = ExternalSystem.from_tables(['a', 't', 'g'], ['u1', 'u2'],
                                    {('a', 'u1'): 't', ('a', 'u2'): 't', ('t', 'u1'): 't', ('t', 'u2'): 't',
                                     ('g', 'u1'): 'g', ('g', 'u2'): 'g'},
                                    {'a': '0', 't': '0', 'g': '1'})
    task = TaskSpec.state_goal({'g'})
    assert not reactive_policy_exists(es, task)
    assert find_reactive_policy(es, task) is None
    for blocks in enumerate_partitions(es.states):
        sensor = SensorMap(blocks)
        for pi_y in observation_policies(sensor, es.actions):
            assert not reactive_execution_feasible(es, compose_reactive(sensor, pi_y), task)


def _all_systems(n, m):
    states = [f"x{i}" for i in range(n)]
    actions = [f"u{i}" for i in range(m)]
    keys = [(x, u) for x in states for u in actions]
    for targets in itertools.product(states, repeat=len(keys)):
        yield ExternalSystem.from_tables(states, actions, dict(zip(keys, targets)), Labeling.identity(states))


def _all_state_policies(es):
    for choice in itertools.product(es.actions, repeat=len(es.states)):
        yield StatePolicy(dict(zip(es.states, choice)))


def test_reactive_execution_iff_sensor_refines_feasible_policy():
    """
    穷举小系统：存在可行的 pi_Y ∘ h 当且仅当 h 加细某个可行的 pi_X；
    不存在可行 pi_X 时所有 (h, pi_Y) 都失败
    """
    print("Testing reactive characterization exhaustively...")
    checked = 0
    for n, m in ((2, 2), (3, 2), (4, 1)):
        for es in _all_systems(n, m):
            task = TaskSpec.state_goal({es.states[-1]})
            feasible = [pix for pix in _all_state_policies(es) if reactive_execution_feasible(es, pix, task)]
            assert reactive_policy_exists(es, task) == bool(feasible)
            for blocks in enumerate_partitions(es.states):
                sensor = SensorMap(blocks)
                reactive = any(reactive_execution_feasible(es, compose_reactive(sensor, pi_y), task)
                               for pi_y in observation_policies(sensor, es.actions))
                refines = any(sensor_sufficient_for_reactive(sensor, pix) for pix in feasible)
                assert reactive == refines
                if not feasible:
                    assert not reactive
                checked += 1
    print(f"Checked {checked} (system, sensor) pairs")


def main():
    """主函数"""
    print("=" * 50)
    print("Reactive Sensor Test")
    print("=" * 50)

    try:
        test_extract_state_policy_on_tetromino()
        test_extract_rejects_history_dependent_actions()
        test_tetromino_sensor_is_not_sufficient_for_reactive()
        test_reactive_search_on_tetromino()
        test_trap_has_no_reactive_policy()
        test_reactive_execution_iff_sensor_refines_feasible_policy()
        print("\nAll reactive sensor tests completed successfully")
        return 0
    except Exception as e:
        print(f"Reactive sensor test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main())
