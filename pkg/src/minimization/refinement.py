#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最小充分加细 - Moore 机最小化

两种实现：
- fixpoint: 按 (块, 各后继块) 签名反复细分直到不动点，作为参照实现
- worklist: Hopcroft 式工作表划分细化

块号按从初始状态出发、按字母表顺序的 BFS 首次访问序规范编号
"""

import logging
from collections import deque
from dataclasses import dataclass, field

from ..core.config import ANALYSIS_CONFIG
from ..core.labeling import Labeling
from ..core.symbols import is_dead_output
from ..restriction.machine import ObsMooreMachine

logger = logging.getLogger('FilterSynth.Minimization')

FIXPOINT = 'fixpoint'
WORKLIST = 'worklist'


def evaluate_pi(machine, observations):
    """读入观测序列后机器的输出"""
    return machine.evaluate(observations)


def _initial_blocks(states, output):
    block_of = {}
    ids = {}
    for q in states:
        block_of[q] = ids.setdefault(output[q], len(ids))
    return block_of


def moore_partition_fixpoint(machine, states=None):
    """
    参照实现：签名细分到不动点

    Returns:
        dict: 状态 -> 块号（任意编号）
    """
    states = states if states is not None else machine.reachable()
    block_of = _initial_blocks(states, machine.output)
    count = len(set(block_of.values()))
    while True:
        signatures = {}
        refined = {}
        for q in states:
            signature = (block_of[q],) + tuple(block_of[machine.step[(q, y)]] for y in machine.alphabet)
            refined[q] = signatures.setdefault(signature, len(signatures))
        block_of = refined
        if len(signatures) == count:
            return block_of
        count = len(signatures)


@dataclass
class PartitionRefinementState:
    """工作表划分细化的中间状态"""
    blocks: dict = field(default_factory=dict)
    block_of: dict = field(default_factory=dict)
    worklist: deque = field(default_factory=deque)
    pending: set = field(default_factory=set)

    def push(self, block, symbol):
        if (block, symbol) not in self.pending:
            self.pending.add((block, symbol))
            self.worklist.append((block, symbol))

    def pop(self):
        item = self.worklist.popleft()
        self.pending.discard(item)
        return item


def moore_partition_worklist(machine, states=None):
    """
    Hopcroft 式划分细化

    Returns:
        dict: 状态 -> 块号（任意编号）
    """
    states = states if states is not None else machine.reachable()
    state_set = set(states)
    inverse = {}
    for q in states:
        for y in machine.alphabet:
            inverse.setdefault((machine.step[(q, y)], y), []).append(q)

    refinement = PartitionRefinementState()
    for q, block in _initial_blocks(states, machine.output).items():
        refinement.blocks.setdefault(block, set()).add(q)
        refinement.block_of[q] = block
    for block in list(refinement.blocks):
        for y in machine.alphabet:
            refinement.push(block, y)

    while refinement.worklist:
        splitter, y = refinement.pop()
        predecessors = set()
        for target in refinement.blocks[splitter]:
            predecessors.update(p for p in inverse.get((target, y), ()) if p in state_set)

        touched = {}
        for q in predecessors:
            touched.setdefault(refinement.block_of[q], set()).add(q)

        for block, inside in touched.items():
            members = refinement.blocks[block]
            if len(inside) == len(members):
                continue
            new_block = len(refinement.blocks)
            refinement.blocks[block] = members - inside
            refinement.blocks[new_block] = inside
            for q in inside:
                refinement.block_of[q] = new_block
            for symbol in machine.alphabet:
                if (block, symbol) in refinement.pending:
                    refinement.push(new_block, symbol)
                elif len(inside) <= len(members - inside):
                    refinement.push(new_block, symbol)
                else:
                    refinement.push(block, symbol)

    return dict(refinement.block_of)


def canonical_numbering(machine, block_of):
    """按 BFS 首次访问序把块重新编号为 0..k-1"""
    numbering = {}
    queue = deque([machine.initial])
    seen = {machine.initial}
    while queue:
        q = queue.popleft()
        numbering.setdefault(block_of[q], len(numbering))
        for y in machine.alphabet:
            target = machine.step[(q, y)]
            if target not in seen:
                seen.add(target)
                queue.append(target)
    return {q: numbering[block] for q, block in block_of.items()}


def minimal_sufficient_refinement(machine, method=None):
    """
    求机器输出标注的最粗充分加细，并构造商机器

    Args:
        machine: 完全的观测 Moore 机
        method: worklist | fixpoint，默认读取 ANALYSIS_CONFIG

    Returns:
        (Labeling, ObsMooreMachine): 可达状态上的块标注与最小机
    """
    method = method or ANALYSIS_CONFIG['minimize_method']
    reachable = machine.reachable()
    if method == FIXPOINT:
        block_of = moore_partition_fixpoint(machine, reachable)
    elif method == WORKLIST:
        block_of = moore_partition_worklist(machine, reachable)
    else:
        raise ValueError(f"未知最小化方法: {method}")

    block_of = canonical_numbering(machine, block_of)
    kappa = Labeling(block_of)

    count = len(set(block_of.values()))
    step = {}
    output = {}
    info = {}
    for q in reachable:
        block = block_of[q]
        output.setdefault(block, machine.output[q])
        info.setdefault(block, machine.describe(q))
        for y in machine.alphabet:
            step.setdefault((block, y), block_of[machine.step[(q, y)]])

    dead = None
    if machine.dead is not None and machine.dead in block_of:
        dead = block_of[machine.dead]
    else:
        # 没有显式死状态时取输出 xi 的自环块
        for block in range(count):
            if is_dead_output(output[block]) and all(step[(block, y)] == block for y in machine.alphabet):
                dead = block
                break

    minimal = ObsMooreMachine(range(count), machine.alphabet, step, 0, output, dead=dead,
                              info=info, name=f"min({machine.name})")
    logger.info(f"{machine.name}: {len(reachable)} 个可达状态最小化为 {count} 个 ({method})")
    return kappa, minimal
