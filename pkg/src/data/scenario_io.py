#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
场景文件读写 - 外部系统、任务、策略与机器的文本格式

场景文件由 [节名] 分隔，# 之后为注释，名字之间用空白分隔：

    [states]        状态名
    [actions]       动作名
    [observations]  观测名（可选，默认为传感器值域）
    [transitions]   x u x'
    [sensor]        y: x1 x2 ...
    [task]          variant observation|state / goal ... / horizon N
    [initial]       初始状态集合（可选）
    [policy]        kind belief|table|synthesize / default u / stop u / depth K / 左部 -> u
    [state_policy]  x u
    [options]       键 值
"""

import logging
import os
import tempfile
from dataclasses import dataclass, field

from ..core.errors import ParseError, IntegrityError
from ..core.symbols import RESERVED_NAMES
from ..core.transition_system import TransitionSystem
from ..coupling.external_system import ExternalSystem
from ..coupling.task import TaskSpec
from ..restriction.machine import ObsMooreMachine
from ..restriction.policy import HistoryPolicy, TABLE
from ..restriction.restriction import belief_filter_machine
from ..restriction.synthesis import synthesize_policy
from ..sensors.reactive import StatePolicy

logger = logging.getLogger('FilterSynth.ScenarioIO')

SCENARIO_SECTIONS = ('system', 'states', 'actions', 'observations', 'transitions', 'sensor',
                     'task', 'initial', 'policy', 'state_policy', 'options')
MACHINE_SECTIONS = ('machine', 'states', 'alphabet', 'initial', 'transitions', 'outputs', 'dead')

POLICY_KINDS = ('belief', 'table', 'synthesize')


@dataclass
class PolicySpec:
    """场景文件中的策略描述"""
    kind: str
    entries: tuple = ()
    default: str = None
    stop: str = None
    depth: int = None


@dataclass
class ScenarioFile:
    name: str
    states: tuple
    actions: tuple
    observations: tuple
    transitions: dict
    sensor: dict
    task: TaskSpec = None
    initial: tuple = None
    policy: PolicySpec = None
    state_policy: dict = None
    options: dict = field(default_factory=dict)

    def external_system(self):
        return ExternalSystem.from_tables(self.states, self.actions, self.transitions, self.sensor,
                                          observations=self.observations, name=self.name)

    def build_policy(self, es=None):
        """
        按策略描述构造历史策略

        Returns:
            HistoryPolicy 或 None（综合失败）
        """
        if self.policy is None:
            raise IntegrityError(f"场景 {self.name} 没有 [policy] 节", name='policy')
        es = es or self.external_system()
        spec = self.policy
        if spec.kind == 'belief':
            mu = {frozenset(lhs): action for lhs, action in spec.entries}
            generator = belief_filter_machine(es, mu, default=spec.default, name=f"{self.name}.belief")
            return HistoryPolicy.from_machine(generator)
        if spec.kind == 'table':
            table = {lhs: action for lhs, action in spec.entries}
            # 未声明 depth 时保持 None，由调用方决定默认上界
            return HistoryPolicy(TABLE, table=table, depth=spec.depth, name=f"{self.name}.table")
        if self.task is None:
            raise IntegrityError(f"场景 {self.name} 综合策略需要 [task] 节", name='task')
        return synthesize_policy(es, self.task, stop_action=spec.stop, name=f"{self.name}.synth")

    def build_state_policy(self):
        return StatePolicy(dict(self.state_policy)) if self.state_policy is not None else None

    def option(self, key, default=None, cast=str):
        value = self.options.get(key)
        return default if value is None else cast(value)


def _lines(text, sections):
    """逐行切分，返回 (节名, 行号, 记号列表)"""
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('['):
            if not line.endswith(']'):
                raise ParseError(f"节名缺少右括号: {line}", line=lineno)
            section = line[1:-1].strip()
            if section not in sections:
                raise ParseError(f"未知节名 [{section}]", line=lineno)
            continue
        if section is None:
            raise ParseError("内容出现在任何节之前", line=lineno)
        yield section, lineno, line.split()


def _check_name(name, lineno):
    if name in RESERVED_NAMES:
        raise ParseError(f"名字 {name!r} 是保留字", line=lineno)
    return name


def _split_arrow(tokens, lineno):
    if '->' not in tokens:
        raise ParseError("策略条目缺少 '->'", line=lineno)
    i = tokens.index('->')
    if len(tokens) != i + 2:
        raise ParseError("'->' 右侧必须恰好一个动作", line=lineno)
    return tuple(tokens[:i]), tokens[i + 1]


def parse_scenario(text, name='scenario'):
    """
    解析场景文本

    Raises:
        ParseError: 语法错误（带行号）
        IntegrityError: 引用了未声明的名字
    """
    data = {s: [] for s in SCENARIO_SECTIONS}
    for section, lineno, tokens in _lines(text, SCENARIO_SECTIONS):
        data[section].append((lineno, tokens))

    for lineno, tokens in data['system']:
        if tokens[0] == 'name' and len(tokens) == 2:
            name = tokens[1]
        else:
            raise ParseError(f"无法识别的 [system] 条目: {' '.join(tokens)}", line=lineno)

    states = tuple(_check_name(t, n) for n, ts in data['states'] for t in ts)
    actions = tuple(_check_name(t, n) for n, ts in data['actions'] for t in ts)
    if not states:
        raise ParseError("缺少 [states]")
    if not actions:
        raise ParseError("缺少 [actions]")
    state_set, action_set = set(states), set(actions)

    def need_state(x):
        if x not in state_set:
            raise IntegrityError(f"未声明的状态 {x!r}", name=x)
        return x

    def need_action(u):
        if u not in action_set:
            raise IntegrityError(f"未声明的动作 {u!r}", name=u)
        return u

    transitions = {}
    for lineno, tokens in data['transitions']:
        if len(tokens) != 3:
            raise ParseError("迁移必须是 x u x'", line=lineno)
        x, u, nxt = tokens
        key = (need_state(x), need_action(u))
        if key in transitions:
            raise ParseError(f"重复的迁移 {x} {u}", line=lineno)
        transitions[key] = need_state(nxt)

    sensor = {}
    sensor_values = []
    for lineno, tokens in data['sensor']:
        if not tokens[0].endswith(':'):
            raise ParseError("传感器条目必须是 'y: x1 x2 ...'", line=lineno)
        y = _check_name(tokens[0][:-1], lineno)
        sensor_values.append(y)
        for x in tokens[1:]:
            if need_state(x) in sensor:
                raise ParseError(f"状态 {x} 有多个传感器读数", line=lineno)
            sensor[x] = y

    observations = tuple(_check_name(t, n) for n, ts in data['observations'] for t in ts)
    if not observations:
        observations = tuple(dict.fromkeys(sensor_values))
    obs_set = set(observations)
    for y in sensor_values:
        if y not in obs_set:
            raise IntegrityError(f"传感器使用了未声明的观测 {y!r}", name=y)

    task = _parse_task(data['task'], need_state, obs_set)
    initial = None
    if data['initial']:
        initial = tuple(need_state(t) for _, ts in data['initial'] for t in ts)

    policy = _parse_policy(data['policy'], need_state, need_action, obs_set)

    state_policy = None
    if data['state_policy']:
        state_policy = {}
        for lineno, tokens in data['state_policy']:
            if len(tokens) != 2:
                raise ParseError("状态策略条目必须是 'x u'", line=lineno)
            state_policy[need_state(tokens[0])] = need_action(tokens[1])

    options = {}
    for lineno, tokens in data['options']:
        if len(tokens) != 2:
            raise ParseError("选项必须是 '键 值'", line=lineno)
        options[tokens[0]] = tokens[1]

    return ScenarioFile(name, states, actions, observations, transitions, sensor, task=task,
                        initial=initial, policy=policy, state_policy=state_policy, options=options)


def _parse_task(rows, need_state, obs_set):
    if not rows:
        return None
    variant, goal, horizon = None, None, 64
    for lineno, tokens in rows:
        key, values = tokens[0], tokens[1:]
        if key == 'variant' and len(values) == 1:
            variant = values[0]
        elif key == 'goal' and values:
            goal = tuple(values)
        elif key == 'horizon' and len(values) == 1:
            try:
                horizon = int(values[0])
            except ValueError:
                raise ParseError(f"horizon 不是整数: {values[0]}", line=lineno) from None
        else:
            raise ParseError(f"无法识别的 [task] 条目: {' '.join(tokens)}", line=lineno)
    if variant not in ('observation', 'state') or not goal:
        raise ParseError("[task] 需要 variant observation|state 与非空 goal")
    if variant == 'observation':
        for y in goal:
            if y not in obs_set:
                raise IntegrityError(f"目标使用了未声明的观测 {y!r}", name=y)
        return TaskSpec.observation_goal(goal, horizon)
    return TaskSpec.state_goal([need_state(x) for x in goal], horizon)


def _parse_policy(rows, need_state, need_action, obs_set):
    if not rows:
        return None
    kind, default, stop, depth = None, None, None, None
    entries = []
    for lineno, tokens in rows:
        if '->' in tokens:
            entries.append((lineno,) + _split_arrow(tokens, lineno))
            continue
        key, values = tokens[0], tokens[1:]
        if len(values) != 1:
            raise ParseError(f"无法识别的 [policy] 条目: {' '.join(tokens)}", line=lineno)
        if key == 'kind':
            if values[0] not in POLICY_KINDS:
                raise ParseError(f"未知策略类型 {values[0]}", line=lineno)
            kind = values[0]
        elif key == 'default':
            default = need_action(values[0])
        elif key == 'stop':
            stop = need_action(values[0])
        elif key == 'depth':
            try:
                depth = int(values[0])
            except ValueError:
                raise ParseError(f"depth 不是整数: {values[0]}", line=lineno) from None
        else:
            raise ParseError(f"无法识别的 [policy] 条目: {key}", line=lineno)
    if kind is None:
        raise ParseError("[policy] 缺少 kind")

    checked = []
    for lineno, lhs, action in entries:
        need_action(action)
        if kind == 'belief':
            for x in lhs:
                need_state(x)
        elif kind == 'table':
            if len(lhs) % 2 == 0:
                raise ParseError("历史长度必须为奇数（观测与动作交替）", line=lineno)
            for i, token in enumerate(lhs):
                if i % 2 == 0 and token not in obs_set:
                    raise IntegrityError(f"历史使用了未声明的观测 {token!r}", name=token)
                if i % 2 == 1:
                    need_action(token)
        else:
            raise ParseError("synthesize 策略不接受条目", line=lineno)
        checked.append((lhs, action))
    return PolicySpec(kind, tuple(checked), default=default, stop=stop, depth=depth)


def serialize_scenario(scenario):
    """场景对象转回文本，parse_scenario(serialize_scenario(s)) == s"""
    lines = ['[system]', f"name {scenario.name}", '', '[states]', ' '.join(scenario.states),
             '', '[actions]', ' '.join(scenario.actions),
             '', '[observations]', ' '.join(scenario.observations), '', '[transitions]']
    for (x, u), nxt in scenario.transitions.items():
        lines.append(f"{x} {u} {nxt}")
    lines += ['', '[sensor]']
    for y in scenario.observations:
        members = [x for x in scenario.states if scenario.sensor.get(x) == y]
        if members:
            lines.append(f"{y}: " + ' '.join(members))
    if scenario.task is not None:
        task = scenario.task
        goal = sorted(task.goal, key=repr)
        lines += ['', '[task]', f"variant {task.variant}", 'goal ' + ' '.join(goal),
                  f"horizon {task.horizon}"]
    if scenario.initial is not None:
        lines += ['', '[initial]', ' '.join(scenario.initial)]
    if scenario.policy is not None:
        spec = scenario.policy
        lines += ['', '[policy]', f"kind {spec.kind}"]
        for key in ('default', 'stop', 'depth'):
            if getattr(spec, key) is not None:
                lines.append(f"{key} {getattr(spec, key)}")
        for lhs, action in spec.entries:
            lines.append(' '.join(lhs) + f" -> {action}")
    if scenario.state_policy is not None:
        lines += ['', '[state_policy]']
        lines += [f"{x} {u}" for x, u in scenario.state_policy.items()]
    if scenario.options:
        lines += ['', '[options]']
        lines += [f"{k} {v}" for k, v in scenario.options.items()]
    return '\n'.join(lines) + '\n'


def parse_machine(text, name='machine'):
    """
    解析机器文件，有 [outputs] 节时返回 ObsMooreMachine，否则返回 TransitionSystem
    """
    data = {s: [] for s in MACHINE_SECTIONS}
    for section, lineno, tokens in _lines(text, MACHINE_SECTIONS):
        data[section].append((lineno, tokens))
    for lineno, tokens in data['machine']:
        if tokens[0] == 'name' and len(tokens) == 2:
            name = tokens[1]
        else:
            raise ParseError(f"无法识别的 [machine] 条目: {' '.join(tokens)}", line=lineno)

    states = tuple(t for _, ts in data['states'] for t in ts)
    alphabet = tuple(t for _, ts in data['alphabet'] for t in ts)
    initial = [t for _, ts in data['initial'] for t in ts]
    if not states or not alphabet or len(initial) != 1:
        raise ParseError("机器文件需要 [states]、[alphabet] 与唯一的 [initial]")
    state_set, alphabet_set = set(states), set(alphabet)

    def need(value, pool, what):
        if value not in pool:
            raise IntegrityError(f"未声明的{what} {value!r}", name=value)
        return value

    trans = {}
    for lineno, tokens in data['transitions']:
        if len(tokens) != 3:
            raise ParseError("迁移必须是 q y q'", line=lineno)
        q, y, nxt = tokens
        trans[(need(q, state_set, '状态'), need(y, alphabet_set, '观测'))] = need(nxt, state_set, '状态')
    need(initial[0], state_set, '状态')

    if not data['outputs']:
        return TransitionSystem(states, alphabet, trans, initial[0], name=name)

    output = {}
    for lineno, tokens in data['outputs']:
        if len(tokens) != 2:
            raise ParseError("输出条目必须是 'q u'", line=lineno)
        output[need(tokens[0], state_set, '状态')] = tokens[1]
    dead = None
    if data['dead']:
        dead = need(data['dead'][0][1][0], state_set, '状态')
    return ObsMooreMachine(states, alphabet, trans, initial[0], output, dead=dead, name=name)


def _label_text(value):
    if isinstance(value, tuple):
        return '(' + ','.join(str(v) for v in value) + ')'
    return str(value)


def serialize_machine(machine):
    """TransitionSystem 或 ObsMooreMachine 转为机器文件文本"""
    is_moore = isinstance(machine, ObsMooreMachine)
    alphabet = machine.alphabet if is_moore else machine.edge_labels
    trans = machine.step if is_moore else machine.trans
    lines = ['[machine]', f"name {machine.name}", '', '[states]',
             ' '.join(str(q) for q in machine.states), '', '[alphabet]',
             ' '.join(str(y) for y in alphabet), '', '[initial]', str(machine.initial),
             '', '[transitions]']
    for q in machine.states:
        for y in alphabet:
            if (q, y) in trans:
                lines.append(f"{q} {y} {trans[(q, y)]}")
    if is_moore:
        lines += ['', '[outputs]']
        lines += [f"{q} {_label_text(machine.output[q])}" for q in machine.states]
        if machine.dead is not None:
            lines += ['', '[dead]', str(machine.dead)]
    return '\n'.join(lines) + '\n'


def _read(path):
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def write_atomic(path, text):
    """先写临时文件再替换，避免留下写了一半的输出"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp_')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def load_scenario(path):
    name = os.path.splitext(os.path.basename(path))[0]
    scenario = parse_scenario(_read(path), name=name)
    logger.info(f"已读取场景 {scenario.name}: {len(scenario.states)} 个状态，{len(scenario.actions)} 个动作")
    return scenario


def save_scenario(scenario, path):
    write_atomic(path, serialize_scenario(scenario))


def load_machine(path):
    return parse_machine(_read(path), name=os.path.splitext(os.path.basename(path))[0])


def save_machine(machine, path):
    write_atomic(path, serialize_machine(machine))
