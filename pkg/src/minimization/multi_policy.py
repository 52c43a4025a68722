#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多策略联合 - 同步乘积后最小化，得到同时支持所有策略的最小机器
"""

import logging
from collections import deque

from ..core.errors import AlphabetMismatch
from ..core.symbols import is_dead_output
from ..restriction.machine import ObsMooreMachine
from .refinement import minimal_sufficient_refinement

logger = logging.getLogger('FilterSynth.MultiPolicy')


def product_machine(machines, name=None):
    """
    同步乘积，输出为各分量输出组成的元组

    Raises:
        AlphabetMismatch: 字母表不一致
    """
    machines = list(machines)
    if not machines:
        raise ValueError("至少需要一台机器")
    alphabet = machines[0].alphabet
    for machine in machines[1:]:
        if set(machine.alphabet) != set(alphabet):
            raise AlphabetMismatch(f"{machine.name} 的字母表与 {machines[0].name} 不一致")

    start = tuple(m.initial for m in machines)
    ids = {start: 0}
    queue = deque([start])
    step = {}
    output = {}
    info = {}
    while queue:
        key = queue.popleft()
        q = ids[key]
        output[q] = tuple(m.output[s] for m, s in zip(machines, key))
        info[q] = '(' + ', '.join(m.describe(s) for m, s in zip(machines, key)) + ')'
        for y in alphabet:
            nxt = tuple(m.step[(s, y)] for m, s in zip(machines, key))
            if nxt not in ids:
                ids[nxt] = len(ids)
                queue.append(nxt)
            step[(q, y)] = ids[nxt]

    dead = None
    for q, out in output.items():
        if is_dead_output(out) and all(step[(q, y)] == q for y in alphabet):
            dead = q
            break
    return ObsMooreMachine(range(len(ids)), alphabet, step, 0, output, dead=dead, info=info,
                           name=name or 'x'.join(m.name for m in machines))


def project_outputs(machine, index):
    """取元组输出的第 index 个分量"""
    output = {q: out[index] for q, out in machine.output.items()}
    return machine.with_outputs(output, name=f"{machine.name}[{index}]")


def multi_policy_minimal(machines, method=None):
    """
    同时支持多个策略的最小机器

    Returns:
        ObsMooreMachine: 输出为元组的最小乘积机
    """
    product = product_machine(machines)
    _, minimal = minimal_sufficient_refinement(product, method=method)
    logger.info(f"{len(product.states)} 个乘积状态最小化为 {len(minimal.states)} 个")
    return minimal
