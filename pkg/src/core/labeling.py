#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
标注函数 - 有限状态集合上的划分，标签本身只用于区分块
"""

import logging

from .errors import UndefinedLabel, DomainMismatch

logger = logging.getLogger('FilterSynth.Labeling')


def ordered(items):
    """
    稳定地排列一组名字

    列表/元组/字典保持声明顺序，集合按 repr 排序，保证输出可复现
    """
    if isinstance(items, (list, tuple, dict)):
        return tuple(dict.fromkeys(items))
    return tuple(sorted(items, key=repr))


class Labeling:
    """
    标注函数 kappa: 状态 -> 标签

    两个标注诱导相同划分时视为等价，见 same_partition
    """

    def __init__(self, label_of):
        self._label_of = dict(label_of)

    @classmethod
    def from_blocks(cls, blocks):
        """由块列表构造，块号即标签"""
        label_of = {}
        for index, block in enumerate(blocks):
            for state in block:
                label_of[state] = index
        return cls(label_of)

    @classmethod
    def identity(cls, states):
        return cls({state: state for state in states})

    @classmethod
    def constant(cls, states, label='*'):
        return cls({state: label for state in states})

    @property
    def domain(self):
        return frozenset(self._label_of)

    def __getitem__(self, state):
        try:
            return self._label_of[state]
        except KeyError:
            raise UndefinedLabel(f"状态 {state!r} 没有标注") from None

    def __contains__(self, state):
        return state in self._label_of

    def __len__(self):
        return len(self._label_of)

    def get(self, state, default=None):
        return self._label_of.get(state, default)

    def items(self):
        return self._label_of.items()

    def labels(self):
        return ordered(list(self._label_of.values()))

    def blocks(self):
        """标签 -> 该标签的原像"""
        result = {}
        for state, label in self._label_of.items():
            result.setdefault(label, set()).add(state)
        return {label: frozenset(states) for label, states in result.items()}

    def partition(self):
        return frozenset(self.blocks().values())

    def preimage(self, label):
        return frozenset(s for s, l in self._label_of.items() if l == label)

    def restrict(self, states):
        return Labeling({s: self[s] for s in states})

    def same_partition(self, other):
        return self.domain == other.domain and self.partition() == other.partition()

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self._label_of == other._label_of

    def __hash__(self):
        return hash(frozenset(self._label_of.items()))

    def __repr__(self):
        body = ', '.join(f"{s!r}: {l!r}" for s, l in sorted(self._label_of.items(), key=repr))
        return f"Labeling({{{body}}})"


def is_refinement(fine, coarse):
    """
    判断 fine 是否是 coarse 的加细 (fine ⪰ coarse)

    即 fine(a) == fine(b) 蕴含 coarse(a) == coarse(b)
    """
    if fine.domain != coarse.domain:
        raise DomainMismatch("标注的定义域不一致")
    seen = {}
    for state, label in fine.items():
        target = coarse[state]
        if seen.setdefault(label, target) != target:
            return False
    return True


def join_labelings(labelings):
    """
    标注的合取：新标签为各分量标签组成的元组

    结果同时加细每个输入标注，并且是这样的标注中最粗的一个
    """
    labelings = list(labelings)
    if not labelings:
        raise ValueError("至少需要一个标注")
    domain = labelings[0].domain
    for labeling in labelings[1:]:
        if labeling.domain != domain:
            raise DomainMismatch("标注的定义域不一致")
    return Labeling({s: tuple(l[s] for l in labelings) for s in domain})


def enumerate_partitions(items):
    """
    按受限增长串枚举集合的全部划分

    Yields:
        Labeling: 标签为块号
    """
    items = ordered(items)
    if not items:
        yield Labeling({})
        return

    def extend(index, assignment, block_count):
        if index == len(items):
            yield Labeling(dict(zip(items, assignment)))
            return
        for block in range(block_count + 1):
            assignment.append(block)
            yield from extend(index + 1, assignment, max(block_count, block + 1))
            assignment.pop()

    yield from extend(0, [], 0)
