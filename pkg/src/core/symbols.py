#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
保留符号
"""

# 不可达/策略外信息状态的哑标签
XI = 'xi'

# 根状态（尚未得到任何观测）的输出
NO_ACTION = '()'

# 补全部分迁移函数时使用的吸收状态
SINK = '_sink'

RESERVED_NAMES = (XI, NO_ACTION, SINK)


def is_dead_output(output):
    """xi，或各分量全为 xi 的联合输出"""
    if isinstance(output, tuple):
        return len(output) > 0 and all(part == XI for part in output)
    return output == XI
