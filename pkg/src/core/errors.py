#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义 - 所有库函数只抛出 FilterSynthError 的子类
"""


class FilterSynthError(Exception):
    """系统异常基类"""


# ---- 迁移系统与标注 ----

class UndefinedLabel(FilterSynthError):
    """可达状态缺少标注"""


class DomainMismatch(FilterSynthError):
    """两个标注函数的定义域不一致"""


class NotSufficient(FilterSynthError):
    """标注不充分，商系统将不确定"""


class NotFull(FilterSynthError):
    """迁移函数缺少某个 (状态, 观测) 的后继"""


# ---- 耦合仿真 ----

class MalformedHistory(FilterSynthError):
    """历史序列不满足 观测/动作 交替结构"""


class PolicyEmitsXi(FilterSynthError):
    """策略在运行中到达了被标为 xi 的状态"""


# ---- 策略限制 ----

class OutOfDomain(FilterSynthError):
    """可达历史超出了策略表示的定义域"""


class NotFeasible(FilterSynthError):
    """策略不能完成任务"""


class DepthRequired(FilterSynthError):
    """表格型策略必须给出深度上界"""


# ---- 最小化 ----

class UnknownObservation(FilterSynthError):
    """观测不在输入字母表中"""


class AlphabetMismatch(FilterSynthError):
    """多个机器的观测字母表不一致"""


# ---- 反应式传感器 ----

class NotBijective(FilterSynthError):
    """传感器划分不是单点划分"""


class SearchBudgetExceeded(FilterSynthError):
    """穷举搜索超出预算"""

    def __init__(self, message, partial_verdict=None):
        super().__init__(message)
        self.partial_verdict = partial_verdict


# ---- 几何 ----

class OutsidePolygon(FilterSynthError):
    """点在多边形外部"""


class OnBoundary(FilterSynthError):
    """点在多边形边界上，间隙观测无定义"""


class StepTooCoarse(FilterSynthError):
    """一个采样步长内发生了多个临界事件"""


class UnknownGapToken(FilterSynthError):
    """事件引用了间隙树根上不存在的间隙"""


class TraceInconsistent(FilterSynthError):
    """间隙树更新与观测到的事件不同步"""


# ---- 场景文件 ----

class ParseError(FilterSynthError):
    """场景文件语法错误"""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"第{line}行: {message}"
        super().__init__(message)
        self.line = line


class IntegrityError(FilterSynthError):
    """场景文件引用了未声明的名字"""

    def __init__(self, message, name=None):
        super().__init__(message)
        self.name = name
