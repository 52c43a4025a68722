#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
同构判定 - 两台观测 Moore 机的可达部分是否只差状态改名
"""

import logging
from collections import deque

logger = logging.getLogger('FilterSynth.Isomorphism')


def find_isomorphism(first, second, output_map=None):
    """
    同步 BFS 建立强制的状态对应

    Args:
        output_map: 比较前对 first 的输出做的换名

    Returns:
        dict 或 None: first 的可达状态 -> second 的可达状态
    """
    if set(first.alphabet) != set(second.alphabet):
        return None
    output_map = output_map or {}

    forward = {first.initial: second.initial}
    backward = {second.initial: first.initial}
    queue = deque([first.initial])
    while queue:
        p = queue.popleft()
        q = forward[p]
        out = first.output[p]
        if output_map.get(out, out) != second.output[q]:
            logger.debug(f"状态 {p!r} 与 {q!r} 的输出不同")
            return None
        for y in first.alphabet:
            p_next = first.step[(p, y)]
            q_next = second.step[(q, y)]
            if p_next in forward:
                if forward[p_next] != q_next:
                    return None
                continue
            if q_next in backward:
                return None
            forward[p_next] = q_next
            backward[q_next] = p_next
            queue.append(p_next)
    return forward


def is_isomorphic(first, second, output_map=None):
    return find_isomorphism(first, second, output_map=output_map) is not None
