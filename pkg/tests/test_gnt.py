#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
临界事件与间隙导航树测试
"""

import sys
import os

import numpy as np
import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.core.errors import UnknownGapToken, TraceInconsistent, StepTooCoarse
from src.geometry import (GapNode, GapTree, gnt_step, explored_tree, event_trace, classify_event, visible,
                          navigation_traces, gnt_transition_system, gnt_supports_navigation)
from src.geometry.events import APPEAR, DISAPPEAR, SPLIT, MERGE
from src.geometry.gnt import PRE, INIT, NavigationTrace, navigation_trace, navigation_policy_machine
from tests.helpers import polygon

BUNDLED = ('square', 'lshape', 'tetromino', 'double_notch', 'tristar')


def _crossing(p0, p1, a, b):
    """线段 p0->p1 与直线 ab 交点的参数，平行时为 None"""
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = ex * (p1[1] - p0[1]) - ey * (p1[0] - p0[0])
    if abs(denom) < 1e-12:
        return None
    return -(ex * (p0[1] - a[1]) - ey * (p0[0] - a[0])) / denom


def _partners(poly, r):
    """过反射顶点 r 的临界直线的另一端：两个邻点（阴影边界）与其他反射顶点（双切线）"""
    return [poly.prev(r), poly.next(r)] + [g for g in poly.reflex if g != r]


def test_appear_and_disappear_in_lshape():
    """测试 L 形中的出现与消失事件"""
    print("Testing appear/disappear events...")
    lshape = polygon('lshape')
    events = event_trace([(1.5, 0.5), (0.5, 0.5)], lshape)
    assert len(events) == 1
    assert events[0].kind == DISAPPEAR
    assert events[0].gaps == (3,)
    assert events[0].after == ()
    assert events[0].segment == 0
    assert abs(events[0].t - 0.5) < 1e-3

    events = event_trace([(0.5, 0.5), (0.5, 1.5)], lshape)
    assert [(e.kind, e.gaps) for e in events] == [(APPEAR, (3,))]
    assert abs(events[0].t - 0.5) < 1e-3

    assert event_trace([(0.2, 0.2), (0.8, 0.8)], lshape) == []
    assert event_trace([(0.5, 0.5), (0.5, 0.5)], lshape) == []
    print("Appear/disappear OK")


def test_split_and_merge_in_double_notch():
    """测试双缺口中的分裂与合并事件"""
    print("Testing split/merge events...")
    notch = polygon('double_notch')
    events = event_trace([(0.5, 0.5), (0.5, 1.9)], notch)
    assert len(events) == 1
    assert events[0].kind == SPLIT
    assert events[0].gaps == (2, 7)
    assert abs(events[0].t - 1.1 / 1.4) < 1e-3
    assert set(events[0].after) == {2, 7}

    events = event_trace([(0.5, 1.9), (0.5, 0.5)], notch)
    assert len(events) == 1
    assert events[0].kind == MERGE
    assert events[0].gaps == (2, 7)
    assert abs(events[0].t - 0.3 / 1.4) < 1e-3
    print("Split/merge OK")


def test_passing_a_reflex_vertex():
    """经过反射顶点：追逐的间隙消失，离开后在身后重新出现"""
    lshape = polygon('lshape')
    events = event_trace([(1.8, 0.5), (1.0, 1.0), (0.0, 2.0)], lshape)
    assert [(e.kind, e.gaps, e.after) for e in events] == [(DISAPPEAR, (3,), ()), (APPEAR, (3,), (3,))]
    assert all(e.segment == 1 for e in events)
    joint = 0.8 ** 2 + 0.5 ** 2
    joint = joint ** 0.5 / (joint ** 0.5 + 2 ** 0.5)
    assert all(abs(e.t - joint) < 1e-4 for e in events)


def test_simultaneous_changes_are_split_into_single_events():
    """骨牌形中 y=1 上四点共线，穿过它时两个间隙同时变化"""
    tetromino = polygon('tetromino')
    path = [(1.5, 0.5), (1.5, 1.7)]
    with pytest.raises(StepTooCoarse):
        event_trace(path, tetromino, strict=True)

    events = event_trace(path, tetromino)
    assert [(e.kind, e.gaps) for e in events] == [(DISAPPEAR, (2,)), (APPEAR, (6,))]
    assert all(abs(e.t - 0.5 / 1.2) < 1e-3 for e in events)
    assert events[0].after == events[1].before == ()


def test_events_lie_on_critical_lines():
    """直线段上的事件都落在阴影边界或双切线与该段的交点上，且不多于交点数"""
    print("Testing events against critical lines...")
    rng = np.random.default_rng(11)
    for name in ('lshape', 'tetromino', 'double_notch', 'tristar'):
        poly = polygon(name)
        lines = [(r, u) for r in poly.reflex for u in (poly.prev(r), poly.next(r))]
        lines += [(g, r) for g in poly.reflex for r in poly.reflex if g < r]
        points = poly.sample_interior(rng, 40)
        checked = 0
        for p0, p1 in zip(points[::2], points[1::2]):
            if not visible(p0, p1, poly):
                continue
            crossings = [_crossing(p0, p1, poly.points[a], poly.points[b]) for a, b in lines]
            crossings = [s for s in crossings if s is not None and 0.0 < s < 1.0]
            events = event_trace([p0, p1], poly)
            assert len(events) <= len(crossings), (name, p0, p1)
            for e in events:
                r = e.gaps[-1]
                predicted = [_crossing(p0, p1, poly.points[r], poly.points[u]) for u in _partners(poly, r)]
                assert any(s is not None and abs(s - e.t) < 2e-6 for s in predicted), (name, p0, p1, e)
            checked += 1
        assert checked > 0
    print("Critical lines OK")


def test_classify_event_rejects_coarse_steps():
    notch = polygon('double_notch')
    with pytest.raises(StepTooCoarse):
        classify_event(notch, (0.5, 1.7), (), (2, 7))
    assert classify_event(notch, (0.5, 0.5), (), (2,)) == (APPEAR, (2,))


def test_gnt_step_updates():
    """测试间隙导航树的四种更新"""
    print("Testing GNT updates...")
    two = GapTree((GapNode(2), GapNode(7)))
    merged = gnt_step(two, (MERGE, (2, 7), (2,)))
    assert str(merged) == '[2(7)]'
    assert gnt_step(merged, (SPLIT, (2, 7), (2, 7))) == two

    deep = GapTree((GapNode(2, (GapNode(5), GapNode(7, (GapNode(8),)))),))
    assert str(gnt_step(deep, (SPLIT, (2, 7), (2, 7)))) == '[2(5) 7(8)]'

    empty = GapTree()
    leaf = gnt_step(empty, (APPEAR, (3,), (3,)))
    assert str(leaf) == '[3]'
    assert gnt_step(leaf, (DISAPPEAR, (3,), ())) == empty

    explored = GapTree((GapNode(3, (GapNode(4), GapNode(5))),))
    assert str(gnt_step(explored, (APPEAR, (5,), (3, 5)))) == '[3(4) 5]'
    assert str(gnt_step(explored, (DISAPPEAR, (3,), (4,)))) == '[4]'
    assert str(gnt_step(explored, (DISAPPEAR, (3,), ()))) == '[]'
    assert str(gnt_step(explored, (DISAPPEAR, (3,), (5, 9)))) == '[5 9]'
    print("GNT updates OK")


def test_gnt_step_errors():
    leaf = GapTree((GapNode(3),))
    with pytest.raises(UnknownGapToken):
        gnt_step(leaf, (DISAPPEAR, (9,), (3,)))
    with pytest.raises(UnknownGapToken):
        gnt_step(leaf, (MERGE, (3, 9), (3,)))
    with pytest.raises(TraceInconsistent):
        gnt_step(leaf, (APPEAR, (3,), (3,)))
    with pytest.raises(TraceInconsistent):
        gnt_step(GapTree(), (APPEAR, (3,), (3, 4)))
    with pytest.raises(ValueError):
        gnt_step(leaf, ('teleport', (3,), ()))


def test_chase_readout():
    tree = GapTree((GapNode(3, (GapNode(4), GapNode(5))),))
    assert tree.chase(5) == ('chase', 3)
    assert tree.chase(3) == ('chase', 3)
    assert tree.chase(0) == ('goal',)
    assert GapTree().chase(0) == ('goal',)


def test_explored_tree_in_lshape():
    lshape = polygon('lshape')
    assert str(explored_tree((1.8, 0.5), lshape)) == '[3(4 5)]'
    assert str(explored_tree((1.1, 0.1), lshape)) == '[3(4)]'
    assert str(explored_tree((0.5, 0.5), lshape)) == '[]'
    assert set(explored_tree((1.8, 0.5), lshape).labels()) == {3, 4, 5}


def test_navigation_trace_in_lshape():
    lshape = polygon('lshape')
    trace = navigation_trace(lshape, (0.5, 0.5), 2)
    assert trace.symbols[0] == (INIT, GapTree())
    assert [s[:2] for s in trace.symbols[1:]] == [(APPEAR, (3,))]
    assert trace.outputs == [('goal',), ('goal',)]

    hidden = navigation_trace(lshape, (1.8, 0.5), 5)
    assert [s[:2] for s in hidden.symbols[1:]] == [(DISAPPEAR, (3,)), (APPEAR, (3,))]
    assert hidden.outputs == [('chase', 3), ('goal',), ('goal',)]


def test_outputs_follow_the_tree():
    """每个事件之后的策略输出等于导航树对目标的追逐读数"""
    for name in ('lshape', 'tetromino', 'double_notch', 'tristar'):
        poly = polygon(name)
        for trace in navigation_traces(poly, samples=6, seed=2):
            tree = None
            for symbol, token in zip(trace.symbols, trace.outputs):
                tree = symbol[1] if symbol[0] == INIT else gnt_step(tree, symbol)
                assert tree.chase(trace.goal) == token, (name, trace.start, trace.goal, str(tree))


def test_conflicting_traces_have_no_policy():
    tree = GapTree()
    first = NavigationTrace((0.5, 0.5), 0, [(INIT, tree)], [('goal',)])
    second = NavigationTrace((0.6, 0.5), 0, [(INIT, tree)], [('chase', 3)])
    assert navigation_policy_machine([first, second], [(INIT, tree)], 0) is None
    machine = navigation_policy_machine([first], [(INIT, tree)], 0)
    assert machine.evaluate([(INIT, tree)]) == ('goal',)


def test_gnt_on_square_is_minimal():
    """凸多边形只有一个空树状态"""
    print("Testing GNT on square...")
    square = polygon('square')
    report = gnt_supports_navigation(square, samples=8)
    assert report.supported
    assert report.traces == 4 * 8
    assert report.gnt_states == 2
    assert report.joint_states == 2
    assert report.minimal
    print("Square OK")


def test_gnt_supports_navigation_in_lshape():
    """测试 L 形中导航树支持所有目标顶点的导航策略"""
    print("Testing GNT on lshape...")
    lshape = polygon('lshape')
    traces = navigation_traces(lshape, samples=8)
    gnt = gnt_transition_system(traces)
    assert gnt.initial == PRE
    assert gnt.reachable()[0] == PRE
    assert all(trace.symbols[0][0] == INIT for trace in traces)

    report = gnt_supports_navigation(lshape, traces=traces)
    assert report.supported
    assert set(report.per_goal) == set(range(lshape.n))
    assert report.per_goal[5]
    assert not report.failures
    assert report.gnt_states == report.joint_states
    print(f"lshape: GNT {report.gnt_states} 状态, 联合最小机 {report.joint_states} 状态")


def test_gnt_is_minimal_on_bundled_polygons():
    """每个附带多边形上导航树都支持全部目标，且状态数等于联合最小机"""
    print("Testing GNT on bundled polygons...")
    for name in BUNDLED:
        poly = polygon(name)
        report = gnt_supports_navigation(poly, samples=8)
        assert not report.failures, (name, report.failures)
        assert report.supported, (name, report.per_goal)
        assert report.gnt_states == report.joint_states, (name, report.gnt_states, report.joint_states)
        assert report.minimal
        print(f"{name}: GNT {report.gnt_states} 状态")
    print("Bundled polygons OK")


def main():
    """主函数"""
    print("=" * 50)
    print("Gap Navigation Tree Test")
    print("=" * 50)

    try:
        test_appear_and_disappear_in_lshape()
        test_split_and_merge_in_double_notch()
        test_passing_a_reflex_vertex()
        test_simultaneous_changes_are_split_into_single_events()
        test_events_lie_on_critical_lines()
        test_classify_event_rejects_coarse_steps()
        test_gnt_step_updates()
        test_gnt_step_errors()
        test_chase_readout()
        test_explored_tree_in_lshape()
        test_navigation_trace_in_lshape()
        test_outputs_follow_the_tree()
        test_conflicting_traces_have_no_policy()
        test_gnt_on_square_is_minimal()
        test_gnt_supports_navigation_in_lshape()
        test_gnt_is_minimal_on_bundled_polygons()
        print("\nAll GNT tests completed successfully")
        return 0
    except Exception as e:
        print(f"GNT test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main())
