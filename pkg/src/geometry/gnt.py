#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
间隙导航树 - 以临界事件为输入的信息迁移系统及其对导航策略的支持检查
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from ..core.config import GEOMETRY_CONFIG
from ..core.errors import UnknownGapToken, TraceInconsistent
from ..core.symbols import XI, NO_ACTION, SINK, is_dead_output
from ..core.transition_system import TransitionSystem, complete_with_sink
from ..core.labeling import ordered
from ..minimization.refinement import minimal_sufficient_refinement
from ..minimization.supports import supports
from ..restriction.machine import ObsMooreMachine
from .events import APPEAR, DISAPPEAR, SPLIT, MERGE, event_trace
from .gaps import gap_observation, canonical_rotation
from .shortest_path import shortest_path
from .visibility import visible_vertices

logger = logging.getLogger('FilterSynth.GNT')

PRE = 'pre'
INIT = 'init'
GOAL = ('goal',)


def chase(label):
    return ('chase', label)


@dataclass(frozen=True)
class GapNode:
    """子节点按编号排序"""
    label: int
    children: tuple = ()

    def labels(self):
        yield self.label
        for child in self.children:
            yield from child.labels()

    def adopt(self, child):
        children = tuple(sorted(self.children + (child,), key=lambda n: n.label))
        return GapNode(self.label, children)

    def __str__(self):
        if not self.children:
            return str(self.label)
        return f"{self.label}(" + ' '.join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class GapTree:
    """根下的子节点与当前间隙一一对应，按方位角循环排列、最小编号在前"""
    children: tuple = ()

    def root_labels(self):
        return tuple(node.label for node in self.children)

    def labels(self):
        for node in self.children:
            yield from node.labels()

    def chase(self, goal):
        """目标所在子树的根间隙；目标不在树中（可见且不产生间隙）时直接前往"""
        for node in self.children:
            if goal in node.labels():
                return chase(node.label)
        return GOAL

    def __len__(self):
        return len(self.children)

    def __str__(self):
        return '[' + ' '.join(str(c) for c in self.children) + ']'


def _detach(nodes, label):
    """从一组节点中摘下第一个标签为 label 的子树"""
    result = []
    found = None
    for node in nodes:
        if found is None and node.label == label:
            found = node
            continue
        if found is None:
            children, found = _detach(node.children, label)
            node = GapNode(node.label, children)
        result.append(node)
    return tuple(result), found


def _root_index(tree, label):
    for i, node in enumerate(tree.children):
        if node.label == label:
            return i
    raise UnknownGapToken(f"间隙 {label} 不在树根上: {tree}")


def gnt_step(tree, event):
    """
    按事件更新间隙导航树

    - appear: 新增叶子（若该顶点已作为隐藏节点出现在树中，则把它的子树移到根上）
    - disappear: 删除节点，事件后仍可见的间隙从它的子树中提升到根上，其余子树丢弃
    - merge: 被遮住的间隙成为保留间隙的子节点
    - split: 分出的间隙从保留间隙的子树中摘下，成为新的根

    Raises:
        UnknownGapToken: 事件引用的间隙不在根上
        TraceInconsistent: 更新后的根与观测到的间隙不一致
    """
    kind, gaps, after = event.symbol() if hasattr(event, 'symbol') else event
    roots = list(tree.children)

    if kind == APPEAR:
        (r,) = gaps
        if r in tree.root_labels():
            raise TraceInconsistent(f"间隙 {r} 已经在树根上")
        rest, node = _detach(tuple(roots), r)
        roots = list(rest) + [node or GapNode(r)]
    elif kind == DISAPPEAR:
        (r,) = gaps
        hidden = roots.pop(_root_index(tree, r)).children
        for label in after:
            if any(n.label == label for n in roots):
                continue
            hidden, node = _detach(hidden, label)
            if node is None:
                rest, node = _detach(tuple(roots), label)
                roots = list(rest)
            roots.append(node or GapNode(label))
    elif kind == MERGE:
        g, r = gaps
        node_g = tree.children[_root_index(tree, g)]
        node_r = tree.children[_root_index(tree, r)]
        roots = [n for n in roots if n.label not in (g, r)]
        roots.append(node_g.adopt(node_r))
    elif kind == SPLIT:
        g, r = gaps
        node_g = roots.pop(_root_index(tree, g))
        children, node_r = _detach(node_g.children, r)
        if node_r is None:
            rest, node_r = _detach(tuple(roots), r)
            roots = list(rest)
        roots.append(GapNode(g, children))
        roots.append(node_r or GapNode(r))
    else:
        raise ValueError(f"未知事件类型: {kind}")

    if sorted(n.label for n in roots) != sorted(after):
        raise TraceInconsistent(f"{kind} {gaps} 之后树根为 {[n.label for n in roots]}，观测为 {list(after)}")
    position = {label: i for i, label in enumerate(after)}
    roots.sort(key=lambda n: position[n.label])
    return GapTree(tuple(roots))


def explored_tree(x, polygon):
    """
    起点处的间隙导航树：根为当前间隙，隐藏顶点挂在最短路径上的前一个节点下
    """
    observation = gap_observation(x, polygon)
    roots = list(canonical_rotation(observation.occluders))
    candidates = visible_vertices(x, polygon)
    hidden = [v for v in range(polygon.n) if v not in candidates]

    parent = {}
    in_tree = set(roots) | set(hidden)
    for v in hidden:
        path = shortest_path(x, v, polygon, candidates=candidates)
        chain = [u for u in path.vertices[:-1] if u in in_tree]
        if chain:
            parent[v] = chain[-1]
        else:
            logger.debug(f"隐藏顶点 {v} 的最短路径不经过任何间隙，忽略")

    def build(label):
        kids = sorted(v for v, p in parent.items() if p == label)
        return GapNode(label, tuple(build(k) for k in kids))

    return GapTree(tuple(build(r) for r in roots))


def stage_token(path, goal, segment, gaps):
    """
    沿最短路径走到第 segment 段时的动作

    中间段追逐该段终点的反射顶点；最后一段朝目标走，目标本身是间隙时记为追逐它
    """
    target = path.vertices[segment] if segment < len(path.vertices) else goal
    if target != goal:
        return chase(target)
    return chase(goal) if goal in gaps else GOAL


@dataclass
class NavigationTrace:
    """从一个起点朝一个目标顶点运动时的事件符号与各事件后的策略输出"""
    start: tuple
    goal: int
    symbols: list
    outputs: list


def navigation_trace(polygon, start, goal, step_size=None):
    path = shortest_path(start, goal, polygon)
    events = event_trace([start] + path.points, polygon, step_size=step_size)
    start_gaps = gap_observation(start, polygon).occluders
    symbols = [(INIT, explored_tree(start, polygon))] + [e.symbol() for e in events]
    outputs = [stage_token(path, goal, 0, start_gaps)]
    outputs += [stage_token(path, goal, e.segment, e.after) for e in events]
    return NavigationTrace(tuple(start), goal, symbols, outputs)


def navigation_traces(polygon, goals=None, starts=None, samples=None, seed=None, step_size=None):
    """对采样起点与每个目标顶点生成导航轨迹"""
    goals = list(range(polygon.n)) if goals is None else list(goals)
    if starts is None:
        rng = np.random.default_rng(GEOMETRY_CONFIG['seed'] if seed is None else seed)
        count = GEOMETRY_CONFIG['start_samples'] if samples is None else samples
        starts = polygon.sample_interior(rng, count)
    return [navigation_trace(polygon, s, g, step_size=step_size) for g in goals for s in starts]


def gnt_transition_system(traces):
    """把轨迹回放成间隙导航树的迁移系统，初始状态为 pre"""
    alphabet = ordered({s for trace in traces for s in trace.symbols})
    states = {PRE: None}
    trans = {}
    for trace in traces:
        state = PRE
        for symbol in trace.symbols:
            if symbol[0] == INIT:
                nxt = symbol[1]
            else:
                nxt = gnt_step(state, symbol)
            trans[(state, symbol)] = nxt
            states.setdefault(nxt, None)
            state = nxt
    return TransitionSystem(states, alphabet, trans, PRE, name='gnt')


def navigation_policy_machine(traces, alphabet, goal):
    """
    目标 goal 的导航策略：事件符号前缀树，缺失分支进入死状态

    Returns:
        ObsMooreMachine 或 None（同一前缀要求不同输出）
    """
    ids = {(): 0}
    output = {0: NO_ACTION}
    children = {}
    for trace in traces:
        prefix = ()
        for symbol, token in zip(trace.symbols, trace.outputs):
            parent = ids[prefix]
            prefix = prefix + (symbol,)
            if prefix not in ids:
                ids[prefix] = len(ids)
                output[ids[prefix]] = token
                children[(parent, symbol)] = ids[prefix]
            elif output[ids[prefix]] != token:
                logger.info(f"目标 {goal}: 同一事件历史要求 {output[ids[prefix]]} 与 {token}")
                return None

    dead = len(ids)
    output[dead] = XI
    step = {}
    for q in range(dead + 1):
        for symbol in alphabet:
            step[(q, symbol)] = children.get((q, symbol), dead)
    return ObsMooreMachine(range(dead + 1), alphabet, step, 0, output, dead=dead,
                           name=f"navigate({goal})")


def joint_navigation_machine(gnt, goals, labelings):
    """
    导航树上输出各目标动作元组的 Moore 机

    策略有定义处取支持标注，其余位置取树上的追逐读数；pre 输出全 NO_ACTION，吸收状态输出全 xi
    """
    full = complete_with_sink(gnt)
    output = {}
    for state in full.states:
        if state == PRE:
            output[state] = tuple(NO_ACTION for _ in goals)
        elif state == SINK:
            output[state] = tuple(XI for _ in goals)
        else:
            output[state] = tuple(labelings[g].get(state, state.chase(g)) if g in labelings
                                  else state.chase(g) for g in goals)
    step = {(q, y): full.trans[(q, y)] for q in full.states for y in full.edge_labels}
    return ObsMooreMachine(full.states, full.edge_labels, step, full.initial, output, dead=SINK,
                           name='navigate(*)')


@dataclass
class NavigationReport:
    polygon: str
    supported: bool
    per_goal: dict = field(default_factory=dict)
    gnt_states: int = 0
    joint_states: int = 0
    traces: int = 0
    failures: list = field(default_factory=list)

    @property
    def minimal(self):
        return self.supported and self.gnt_states == self.joint_states


def gnt_supports_navigation(polygon, traces=None, **trace_options):
    """
    间隙导航树是否支持每个目标顶点的最优导航策略

    同时报告导航树的状态数（含 pre）与各目标联合输出的最小机的活状态数
    """
    if traces is None:
        traces = navigation_traces(polygon, **trace_options)
    report = NavigationReport(polygon.name, False, traces=len(traces))

    try:
        gnt = gnt_transition_system(traces)
    except (TraceInconsistent, UnknownGapToken) as e:
        report.failures.append(str(e))
        logger.warning(f"{polygon.name}: 导航树回放失败: {e}")
        return report
    full = complete_with_sink(gnt)
    report.gnt_states = len(gnt.reachable())

    goals = ordered({t.goal for t in traces})
    labelings = {}
    for goal in goals:
        machine = navigation_policy_machine([t for t in traces if t.goal == goal], gnt.edge_labels, goal)
        if machine is None:
            report.per_goal[goal] = False
            continue
        mu = supports(full, machine, attainable_only=True)
        report.per_goal[goal] = mu is not None
        if mu is not None:
            labelings[goal] = mu

    report.supported = bool(report.per_goal) and all(report.per_goal.values())
    if goals:
        _, joint = minimal_sufficient_refinement(joint_navigation_machine(gnt, goals, labelings))
        report.joint_states = sum(1 for q in joint.reachable() if not is_dead_output(joint.output[q]))
    logger.info(f"{polygon.name}: 支持={report.supported} 导航树状态 {report.gnt_states} "
                f"联合最小机状态 {report.joint_states}")
    return report
