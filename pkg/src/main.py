#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最小充分滤波器分析工具主程序入口

退出码: 0 成功 / 1 否定结论 / 2 错误
"""

import argparse
import logging
import os
import sys
from datetime import datetime

# 添加项目根目录到Python路径
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.__version__ import get_version_info, check_compatibility
from src.core.config import load_config, apply_config
from src.core.errors import FilterSynthError, SearchBudgetExceeded, IntegrityError
from src.core.labeling import Labeling
from src.coupling.simulation import is_feasible
from src.data.dot_export import machine_to_dot, transition_system_to_dot, gap_tree_to_dot, event_trace_to_dot
from src.data.polygon_io import load_polygon
from src.data.report import (ReportWriter, machine_table, labeling_table, runs_table, trace_table,
                             state_counts, events_table)
from src.data.scenario_io import load_scenario, load_machine, serialize_machine
from src.geometry.counterexample import gap_sensor_reactive_counterexample
from src.geometry.events import event_trace
from src.geometry.gaps import gap_observation
from src.geometry.gnt import explored_tree, gnt_supports_navigation
from src.geometry.shortest_path import shortest_path
from src.minimization.isomorphism import find_isomorphism
from src.minimization.multi_policy import multi_policy_minimal
from src.minimization.refinement import minimal_sufficient_refinement
from src.minimization.supports import find_support
from src.restriction.machine import ObsMooreMachine
from src.restriction.policy import TABLE
from src.restriction.restriction import build_restriction, default_depth
from src.restriction.synthesis import synthesize_policy
from src.sensors.reactive import (SensorMap, extract_state_policy, sensor_sufficient_for_reactive,
                                  minimal_reactive_sensor, reactive_policy_exists)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

DISCRETE_VERBS = ('restrict', 'minimize', 'supports', 'isomorphic', 'join', 'feasible',
                  'extract-pix', 'sensor-check', 'minimal-sensor', 'reactive-exists')
GEOMETRY_VERBS = ('gaps', 'spt', 'events', 'gnt-run', 'reactive-counterexample')

logger = logging.getLogger('FilterSynth')


def setup_logging(level='INFO', log_file=True, log_dir='logs', prefix='filter_synth'):
    """设置日志系统"""
    log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)
        handlers.append(logging.FileHandler(
            os.path.join(log_dir, f'{prefix}_{datetime.now().strftime("%Y%m%d")}.log'),
            encoding='utf-8'
        ))

    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO), format=log_format,
                        handlers=handlers, force=True)
    app_logger = logging.getLogger('FilterSynth')
    app_logger.info("日志系统初始化完成")
    return app_logger


def build_parser():
    parser = argparse.ArgumentParser(prog='filter-synth', description='信息迁移系统与间隙导航树分析')
    parser.add_argument('verb', choices=DISCRETE_VERBS + GEOMETRY_VERBS, help='分析动作')
    parser.add_argument('target', help='场景文件 (.scn) 或多边形文件 (.poly)')
    parser.add_argument('--out-dir', default=None, help='输出目录')
    parser.add_argument('--config', default=None, help='配置文件路径')
    parser.add_argument('--depth', type=int, default=None, help='表格策略的深度上界')
    parser.add_argument('--horizon', type=int, default=None, help='覆盖任务的观测步数上限')
    parser.add_argument('--method', choices=('worklist', 'fixpoint'), default=None, help='最小化方法')
    parser.add_argument('--candidate', default=None, help='候选机器文件 (.its)')
    parser.add_argument('--with', dest='others', action='append', default=[], help='联合的其他场景')
    parser.add_argument('--attainable-only', action='store_true', help='支持检查只比较可达状态')
    parser.add_argument('--budget', type=int, default=None, help='反应式策略搜索预算')
    parser.add_argument('--workers', type=int, default=None, help='并行线程数')
    parser.add_argument('--point', type=float, nargs=2, default=None, metavar=('X', 'Y'))
    parser.add_argument('--goal', type=int, default=None, help='目标顶点编号')
    parser.add_argument('--path', default=None, help='折线 "x,y;x,y;..."')
    parser.add_argument('--chirality', action='store_true', help='间隙记号区分左右')
    parser.add_argument('--samples', type=int, default=None, help='采样点数')
    parser.add_argument('--seed', type=int, default=None, help='随机种子')
    parser.add_argument('--step', type=float, default=None, help='事件采样步长')
    parser.add_argument('--dot', action='store_true', help='同时导出 DOT 文件')
    parser.add_argument('--log-level', default=None, help='日志级别')
    parser.add_argument('--no-log-file', action='store_true', help='不写日志文件')
    return parser


# ---- 离散部分 ----

class _Context:
    """一次离散分析用到的场景、外部系统、任务与策略"""

    def __init__(self, args):
        self.scenario = load_scenario(args.target)
        self.es = self.scenario.external_system()
        self.task = self.scenario.task
        if self.task is not None and args.horizon is not None:
            self.task = self.task.with_horizon(args.horizon)
        self.args = args
        self._policy = None

    @property
    def policy(self):
        if self._policy is None:
            self._policy = self.scenario.build_policy(self.es)
            if self._policy is None:
                raise IntegrityError(f"场景 {self.scenario.name} 的策略综合失败", name='policy')
        return self._policy

    def require_task(self):
        if self.task is None:
            raise IntegrityError(f"场景 {self.scenario.name} 缺少 [task] 节", name='task')
        return self.task

    def restriction(self):
        depth = self.args.depth if self.args.depth is not None else self.scenario.option('depth', None, int)
        policy = self.policy
        if depth is None and policy.kind == TABLE and policy.depth is None:
            # 表格本身是一台前缀树滤波器
            depth = default_depth(self.es, len(policy.table) + 1)
            logger.warning(f"表格策略 {policy.name} 未声明深度，使用默认上界 {depth}")
        return build_restriction(self.es, policy, depth_bound=depth)

    @property
    def stop_action(self):
        spec = self.scenario.policy
        if spec is None:
            return None
        return spec.stop or spec.default


def _cmd_restrict(ctx, writer):
    machine = ctx.restriction()
    name = ctx.scenario.name
    counts = state_counts(machine)
    writer.text(f"{name}.restriction.its", serialize_machine(machine))
    table = machine_table(machine)
    writer.table(f"{name}.restriction.csv", table)
    if ctx.args.dot:
        writer.text(f"{name}.restriction.dot", machine_to_dot(machine))
    sections = [('状态数', counts), ('状态表', table)]
    if ctx.task is not None:
        feasible = is_feasible(machine.as_policy_its(), ctx.es, ctx.task, initial_set=ctx.scenario.initial)
        sections.append(('可行性', '可行' if feasible else '不可行'))
    writer.text(f"{name}.restriction.txt", writer.summary(f"策略限制: {name}", sections))
    return EXIT_OK, f"限制机共 {counts['total']} 个可达状态"


def _cmd_minimize(ctx, writer):
    machine = ctx.restriction()
    kappa, minimal = minimal_sufficient_refinement(machine, method=ctx.args.method)
    name = ctx.scenario.name
    counts = state_counts(minimal, stop_action=ctx.stop_action)
    writer.text(f"{name}.minimal.its", serialize_machine(minimal))
    writer.table(f"{name}.kappa.csv", machine_table(machine, kappa))
    if ctx.args.dot:
        writer.text(f"{name}.minimal.dot", machine_to_dot(minimal))
    sections = [('限制机状态数', state_counts(machine)), ('最小机状态数', counts),
                ('最小机', machine_table(minimal))]
    writer.text(f"{name}.minimal.txt", writer.summary(f"最小充分加细: {name}", sections))
    return EXIT_OK, f"最小机共 {counts['total']} 个状态"


def _candidate(path):
    candidate = load_machine(path)
    return candidate.as_transition_system() if isinstance(candidate, ObsMooreMachine) else candidate


def _cmd_supports(ctx, writer):
    if not ctx.args.candidate:
        raise IntegrityError("supports 需要 --candidate", name='candidate')
    candidate = _candidate(ctx.args.candidate)
    machine = ctx.restriction()
    mu, reason = find_support(candidate, machine, attainable_only=ctx.args.attainable_only)
    if mu is None:
        return EXIT_NEGATIVE, f"不支持: {reason.explain()}"
    writer.table(f"{ctx.scenario.name}.support.csv", labeling_table(mu, 'output'))
    if ctx.args.dot:
        writer.text(f"{ctx.scenario.name}.support.dot", transition_system_to_dot(candidate, mu))
    return EXIT_OK, f"支持，输出标注覆盖 {len(mu)} 个候选状态"


def _cmd_isomorphic(ctx, writer):
    machine = ctx.restriction()
    if ctx.args.candidate:
        other = load_machine(ctx.args.candidate)
        if not isinstance(other, ObsMooreMachine):
            raise IntegrityError("候选机器文件缺少 [outputs] 节", name='outputs')
        _, first = minimal_sufficient_refinement(machine, method=ctx.args.method)
        _, second = minimal_sufficient_refinement(other, method=ctx.args.method)
    elif ctx.policy.generator is not None:
        first, second = machine, ctx.policy.generator
    else:
        raise IntegrityError("表格策略需要 --candidate 才能比较", name='candidate')
    mapping = find_isomorphism(first, second)
    if mapping is None:
        return EXIT_NEGATIVE, "不同构"
    rows = Labeling(dict(mapping))
    writer.table(f"{ctx.scenario.name}.isomorphism.csv", labeling_table(rows, 'image'))
    return EXIT_OK, f"同构，{len(mapping)} 对状态"


def _cmd_join(ctx, writer):
    machines = [ctx.restriction()]
    for path in ctx.args.others:
        args = argparse.Namespace(**{**vars(ctx.args), 'target': path})
        machines.append(_Context(args).restriction())
    joint = multi_policy_minimal(machines, method=ctx.args.method)
    name = ctx.scenario.name
    writer.text(f"{name}.joint.its", serialize_machine(joint))
    sections = [('策略数', len(machines)), ('联合最小机状态数', state_counts(joint)),
                ('联合最小机', machine_table(joint))]
    writer.text(f"{name}.joint.txt", writer.summary(f"多策略联合: {name}", sections))
    return EXIT_OK, f"{len(machines)} 个策略的联合最小机共 {len(joint.reachable())} 个状态"


def _cmd_feasible(ctx, writer):
    task = ctx.require_task()
    machine = ctx.restriction()
    feasible, runs = is_feasible(machine.as_policy_its(), ctx.es, task, initial_set=ctx.scenario.initial,
                                 workers=ctx.args.workers, return_runs=True)
    name = ctx.scenario.name
    writer.table(f"{name}.runs.csv", runs_table(runs))
    writer.table(f"{name}.trace.csv", trace_table(runs))
    if feasible:
        return EXIT_OK, f"可行: {len(runs)} 个初始状态都完成任务"
    failed = [str(r.initial_state) for r in runs if not r.accomplished]
    return EXIT_NEGATIVE, f"不可行: 从 {', '.join(failed)} 出发失败"


def _state_policy(ctx):
    """场景给出的状态策略，没有时在单点传感器版本上综合后提取"""
    pix = ctx.scenario.build_state_policy()
    if pix is not None:
        return pix
    task = ctx.require_task().as_state_goal(ctx.es)
    bijective = ctx.es.bijective_version()
    policy = synthesize_policy(bijective, task, stop_action=ctx.stop_action)
    if policy is None:
        return None
    return extract_state_policy(bijective, policy, task)


def _format_state_policy(pix):
    return ', '.join(f"{x}->{u}" for x, u in pix.items())


def _cmd_extract_pix(ctx, writer):
    task = ctx.require_task().as_state_goal(ctx.es)
    bijective = ctx.es.bijective_version()
    policy = synthesize_policy(bijective, task, stop_action=ctx.stop_action)
    pix = extract_state_policy(bijective, policy, task) if policy is not None else None
    if pix is None:
        return EXIT_NEGATIVE, "无法提取状态策略"
    writer.table(f"{ctx.scenario.name}.pix.csv", labeling_table(pix.labeling(), 'action'))
    return EXIT_OK, f"状态策略: {_format_state_policy(pix)}"


def _blocks_text(sensor):
    return ' | '.join(' '.join(map(str, sorted(b, key=repr))) for b in
                      sorted(sensor.blocks().values(), key=lambda b: sorted(map(repr, b))))


def _cmd_sensor_check(ctx, writer):
    pix = _state_policy(ctx)
    if pix is None:
        return EXIT_NEGATIVE, "没有可用的状态策略"
    if sensor_sufficient_for_reactive(SensorMap.of(ctx.es), pix):
        return EXIT_OK, "传感器对反应式执行充分"
    return EXIT_NEGATIVE, (f"传感器不充分；状态策略 {_format_state_policy(pix)} 需要的最小传感器为 "
                           f"{_blocks_text(minimal_reactive_sensor(pix))}")


def _cmd_minimal_sensor(ctx, writer):
    pix = _state_policy(ctx)
    if pix is None:
        return EXIT_NEGATIVE, "没有可用的状态策略"
    sensor = minimal_reactive_sensor(pix)
    writer.table(f"{ctx.scenario.name}.sensor.csv", labeling_table(sensor.labeling, 'block'))
    return EXIT_OK, f"最小反应式传感器: {_blocks_text(sensor)}"


def _cmd_reactive_exists(ctx, writer):
    task = ctx.require_task()
    if reactive_policy_exists(ctx.es, task, budget=ctx.args.budget):
        return EXIT_OK, "存在可行的无记忆状态策略"
    return EXIT_NEGATIVE, "不存在可行的无记忆状态策略"


# ---- 几何部分 ----

def _parse_path(text):
    points = []
    for chunk in text.split(';'):
        chunk = chunk.strip()
        if chunk:
            x, y = chunk.split(',')
            points.append((float(x), float(y)))
    if len(points) < 2:
        raise ValueError("折线至少需要两个点")
    return points


def _require(value, flag):
    if value is None:
        raise IntegrityError(f"缺少参数 {flag}", name=flag)
    return value


def _cmd_gaps(polygon, args, writer):
    point = tuple(_require(args.point, '--point'))
    observation = gap_observation(point, polygon, chirality=args.chirality)
    if args.dot:
        writer.text(f"{polygon.name}.gnt.dot", gap_tree_to_dot(explored_tree(point, polygon)))
    return EXIT_OK, f"{len(observation)} 个间隙 {observation}，遮挡顶点 {list(observation.occluders)}"


def _cmd_spt(polygon, args, writer):
    point = tuple(_require(args.point, '--point'))
    goal = _require(args.goal, '--goal')
    path = shortest_path(point, goal, polygon)
    return EXIT_OK, f"长度 {path.length:.9f}，经过顶点 {list(path.vertices)}"


def _cmd_events(polygon, args, writer):
    points = _parse_path(_require(args.path, '--path'))
    events = event_trace(points, polygon, step_size=args.step)
    writer.table(f"{polygon.name}.events.csv", events_table(events))
    if args.dot:
        writer.text(f"{polygon.name}.events.dot", event_trace_to_dot(events, polygon.name))
    kinds = ' '.join(f"{e.kind}{list(e.gaps)}@{e.t:.6f}" for e in events) or '(无)'
    return EXIT_OK, f"{len(events)} 个事件: {kinds}"


def _cmd_gnt_run(polygon, args, writer):
    report = gnt_supports_navigation(polygon, samples=args.samples, seed=args.seed, step_size=args.step)
    sections = [('支持', report.supported), ('各目标', report.per_goal),
                ('导航树状态数', report.gnt_states), ('联合最小机状态数', report.joint_states),
                ('轨迹数', report.traces)]
    if report.failures:
        sections.append(('回放失败', '\n'.join(report.failures)))
    writer.text(f"{polygon.name}.gnt.txt", writer.summary(f"间隙导航树: {polygon.name}", sections))
    message = (f"支持={report.supported} 导航树 {report.gnt_states} 个状态，"
               f"联合最小机 {report.joint_states} 个状态")
    return (EXIT_OK if report.supported else EXIT_NEGATIVE), message


def _cmd_reactive_counterexample(polygon, args, writer):
    goal = _require(args.goal, '--goal')
    pair = gap_sensor_reactive_counterexample(polygon, goal, samples=args.samples, seed=args.seed,
                                              workers=args.workers)
    if pair is None:
        return EXIT_NEGATIVE, "采样范围内没有反例"
    return EXIT_OK, pair.explain()


DISCRETE_COMMANDS = {
    'restrict': _cmd_restrict,
    'minimize': _cmd_minimize,
    'supports': _cmd_supports,
    'isomorphic': _cmd_isomorphic,
    'join': _cmd_join,
    'feasible': _cmd_feasible,
    'extract-pix': _cmd_extract_pix,
    'sensor-check': _cmd_sensor_check,
    'minimal-sensor': _cmd_minimal_sensor,
    'reactive-exists': _cmd_reactive_exists
}

GEOMETRY_COMMANDS = {
    'gaps': _cmd_gaps,
    'spt': _cmd_spt,
    'events': _cmd_events,
    'gnt-run': _cmd_gnt_run,
    'reactive-counterexample': _cmd_reactive_counterexample
}


def run_pipeline(args, out_dir='output'):
    """
    执行一个分析动作

    Returns:
        (exit_code, message)
    """
    writer = ReportWriter(out_dir)
    try:
        if args.verb in DISCRETE_COMMANDS:
            return DISCRETE_COMMANDS[args.verb](_Context(args), writer)
        polygon = load_polygon(args.target)
        return GEOMETRY_COMMANDS[args.verb](polygon, args, writer)
    except SearchBudgetExceeded as e:
        logger.warning(f"搜索超出预算: {e}")
        return EXIT_ERROR, f"搜索超出预算 ({e})，部分结论: {e.partial_verdict}"
    except FilterSynthError as e:
        logger.error(f"{args.verb} 失败: {e}")
        return EXIT_ERROR, f"{type(e).__name__}: {e}"
    except (OSError, ValueError) as e:
        logger.error(f"{args.verb} 失败: {e}")
        return EXIT_ERROR, str(e)
    except Exception as e:
        logger.error(f"{args.verb} 异常: {e}", exc_info=True)
        return EXIT_ERROR, f"程序异常: {e}"


def main(argv=None):
    """主函数"""
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    apply_config(config)
    logging_config = config['logging']
    setup_logging(level=args.log_level or logging_config['level'], log_file=not args.no_log_file,
                  log_dir=logging_config['log_dir'], prefix=logging_config['file_prefix'])

    version_info = get_version_info()
    print("=" * 60)
    print(f"[系统启动] {version_info['app_name']} {version_info['version']}")
    print(f"[分析动作] {args.verb} {args.target}")
    print("=" * 60)

    compatible, message = check_compatibility()
    if not compatible:
        logger.error(f"版本兼容性检查失败: {message}")
        print(f"[错误信息] {message}")
        return EXIT_ERROR

    out_dir = args.out_dir or config['output']['out_dir']
    code, message = run_pipeline(args, out_dir=out_dir)
    tag = {EXIT_OK: '完成', EXIT_NEGATIVE: '否定', EXIT_ERROR: '错误'}[code]
    print(f"[{tag}] {message}")
    logger.info(f"{args.verb} 结束，退出码 {code}")
    return code


if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n[系统退出] 用户中断，程序退出")
        sys.exit(0)
    except Exception as e:
        print(f"\n[异常退出] 程序异常退出: {e}")
        sys.exit(EXIT_ERROR)
