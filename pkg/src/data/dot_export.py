#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
DOT 导出 - 迁移系统、策略机与间隙导航树的 GraphViz 文本
"""

from ..core.config import OUTPUT_CONFIG
from ..core.symbols import is_dead_output


def _quote(value):
    text = str(value).replace('\\', '\\\\').replace('"', '\\"')
    return f'"{text}"'


def action_color(action, actions=()):
    """固定动作用固定颜色，其余按调色板循环"""
    colors = OUTPUT_CONFIG['action_colors']
    if str(action) in colors:
        return colors[str(action)]
    palette = OUTPUT_CONFIG['palette']
    others = [a for a in actions if str(a) not in colors]
    index = others.index(action) if action in others else 0
    return palette[index % len(palette)]


def _digraph(name, nodes, edges):
    lines = [f'digraph {_quote(name)} {{', '\trankdir=LR;', '\tnode [shape=circle];']
    lines += ['\t' + n for n in nodes]
    lines += ['\t' + e for e in edges]
    lines.append('}')
    return '\n'.join(lines) + '\n'


def _grouped_edges(trans, states):
    """同一对状态之间的多条边合并成一条，标签用逗号连接"""
    grouped = {}
    for (source, label), target in trans.items():
        if source in states:
            grouped.setdefault((source, target), []).append(str(label))
    return [f'{_quote(s)} -> {_quote(t)} [label={_quote(",".join(ls))}];'
            for (s, t), ls in grouped.items()]


def transition_system_to_dot(ts, labeling=None):
    """迁移系统，给出标注时按标注着色"""
    states = set(ts.reachable())
    labels = labeling.labels() if labeling is not None else ()
    nodes = [f'{_quote("__start")} [shape=point];', f'{_quote("__start")} -> {_quote(ts.initial)};']
    for q in ts.reachable():
        attrs = [f'label={_quote(q)}']
        if labeling is not None and q in labeling:
            attrs.append(f'style=filled fillcolor={action_color(labeling[q], labels)}')
        nodes.append(f'{_quote(q)} [{" ".join(attrs)}];')
    return _digraph(ts.name, nodes, _grouped_edges(ts.trans, states))


def machine_to_dot(machine):
    """策略机，节点按输出动作着色"""
    reachable = machine.reachable()
    actions = [a for a in dict.fromkeys(machine.output[q] for q in reachable)]
    nodes = [f'{_quote("__start")} [shape=point];', f'{_quote("__start")} -> {_quote(machine.initial)};']
    for q in reachable:
        out = machine.output[q]
        shape = 'doublecircle' if is_dead_output(out) else 'circle'
        label = f"{machine.describe(q)}\\n{out}"
        nodes.append(f'{_quote(q)} [label="{label}" shape={shape} style=filled '
                     f'fillcolor={action_color(out, actions)}];')
    return _digraph(machine.name, nodes, _grouped_edges(machine.step, set(reachable)))


def gap_tree_to_dot(tree, name='gnt'):
    """间隙导航树，根为机器人"""
    nodes = [f'{_quote("root")} [shape=box label="robot"];']
    edges = []
    counter = [0]

    def visit(parent, node):
        counter[0] += 1
        node_id = f"n{counter[0]}"
        nodes.append(f'{_quote(node_id)} [label={_quote(node.label)}];')
        edges.append(f'{_quote(parent)} -> {_quote(node_id)};')
        for child in node.children:
            visit(node_id, child)

    for child in tree.children:
        visit('root', child)
    return _digraph(name, nodes, edges)


def event_trace_to_dot(events, name='events'):
    """事件序列画成链"""
    nodes = [f'{_quote("e0")} [label="start" shape=box];']
    edges = []
    for i, event in enumerate(events, start=1):
        nodes.append(f'{_quote(f"e{i}")} [label={_quote(f"{event.kind} {event.gaps}")}];')
        edges.append(f'{_quote(f"e{i - 1}")} -> {_quote(f"e{i}")} [label={_quote(f"t={event.t:.6f}")}];')
    return _digraph(name, nodes, edges)
