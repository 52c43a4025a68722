#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行入口与场景文件格式测试
"""

import io
import sys
import os
import tempfile
from contextlib import redirect_stdout
from pathlib import Path

import pandas as pd
import pytest

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from src.core.errors import ParseError, IntegrityError
from src.data.scenario_io import (parse_scenario, serialize_scenario, load_scenario, load_machine,
                                   save_scenario, save_machine)
from src.data.polygon_io import load_polygon, save_polygon
from src.main import main, EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR
from src.minimization.isomorphism import is_isomorphic
from src.restriction import build_restriction
from tests.helpers import scenario_path, POLYGON_DIR


def _run(verb, target, out_dir, *extra):
    return main([verb, target, '--out-dir', str(out_dir), '--no-log-file', '--log-level', 'WARNING', *extra])


def _run_output(verb, target, out_dir, *extra):
    """运行命令并返回 (退出码, 标准输出)"""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = _run(verb, target, out_dir, *extra)
    return code, buffer.getvalue()


def _poly(name):
    return os.path.join(POLYGON_DIR, f'{name}.poly')


def test_scenario_text_round_trip():
    """测试场景文本的解析与序列化"""
    print("Testing scenario round trip...")
    for name in ('tetromino.scn', 'tetromino_table.scn', 'tetromino_synth.scn'):
        scenario = load_scenario(scenario_path(name))
        assert parse_scenario(serialize_scenario(scenario), name=scenario.name) == scenario
    print("Round trip OK")


def test_scenario_parse_errors():
    with pytest.raises(ParseError) as info:
        parse_scenario("[states]\nx1 x2\n[bogus]\n")
    assert info.value.line == 3

    with pytest.raises(ParseError) as info:
        parse_scenario("[states]\nx1\n[actions]\nu1\n[transitions]\nx1 u1\n")
    assert info.value.line == 6

    with pytest.raises(ParseError):
        parse_scenario("[states]\nxi\n[actions]\nu1\n")

    with pytest.raises(IntegrityError):
        parse_scenario("[states]\nx1\n[actions]\nu1\n[transitions]\nx1 u1 x9\n")


def test_restrict_and_minimize(tmp_path):
    """测试限制与最小化命令的输出文件"""
    print("Testing restrict/minimize commands...")
    assert _run('restrict', scenario_path('tetromino.scn'), tmp_path, '--dot') == EXIT_OK
    for suffix in ('its', 'csv', 'txt', 'dot'):
        assert (tmp_path / f'tetromino.restriction.{suffix}').exists()

    scenario = load_scenario(scenario_path('tetromino.scn'))
    es = scenario.external_system()
    written = load_machine(str(tmp_path / 'tetromino.restriction.its'))
    assert is_isomorphic(written, build_restriction(es, scenario.build_policy(es)))

    table = pd.read_csv(tmp_path / 'tetromino.restriction.csv')
    assert len(table) == 6

    assert _run('minimize', scenario_path('tetromino_table.scn'), tmp_path, '--method', 'fixpoint') == EXIT_OK
    minimal = load_machine(str(tmp_path / 'tetromino_table.minimal.its'))
    assert len(minimal.states) == 9
    assert (tmp_path / 'tetromino_table.kappa.csv').exists()
    print("Restrict/minimize OK")


def test_supports_and_isomorphic(tmp_path):
    code, out = _run_output('supports', scenario_path('tetromino.scn'), tmp_path,
                            '--candidate', scenario_path('onestate.its'))
    assert code == EXIT_NEGATIVE
    assert '[否定]' in out

    assert _run('minimize', scenario_path('tetromino_table.scn'), tmp_path) == EXIT_OK
    assert _run('supports', scenario_path('tetromino_table.scn'), tmp_path,
                '--candidate', str(tmp_path / 'tetromino_table.minimal.its')) == EXIT_OK
    assert _run('supports', scenario_path('tetromino_table.scn'), tmp_path, '--dot',
                '--candidate', str(tmp_path / 'tetromino_table.minimal.its')) == EXIT_OK
    assert (tmp_path / 'tetromino_table.support.csv').exists()
    assert (tmp_path / 'tetromino_table.support.dot').read_text(encoding='utf-8').startswith('digraph')

    assert _run('supports', scenario_path('tetromino.scn'), tmp_path) == EXIT_ERROR

    assert _run('isomorphic', scenario_path('tetromino.scn'), tmp_path) == EXIT_OK
    assert _run('restrict', scenario_path('tetromino.scn'), tmp_path) == EXIT_OK
    assert _run('isomorphic', scenario_path('tetromino_synth.scn'), tmp_path,
                '--candidate', str(tmp_path / 'tetromino.restriction.its')) == EXIT_OK
    assert _run('isomorphic', scenario_path('tetromino_table.scn'), tmp_path,
                '--candidate', str(tmp_path / 'tetromino.restriction.its')) == EXIT_NEGATIVE


def test_join_and_feasible(tmp_path):
    assert _run('join', scenario_path('tetromino.scn'), tmp_path,
                '--with', scenario_path('tetromino_synth.scn')) == EXIT_OK
    assert (tmp_path / 'tetromino.joint.its').exists()

    assert _run('feasible', scenario_path('tetromino.scn'), tmp_path, '--workers', '2') == EXIT_OK
    runs = pd.read_csv(tmp_path / 'tetromino.runs.csv')
    assert len(runs) == 4
    assert _run('feasible', scenario_path('tetromino.scn'), tmp_path, '--horizon', '1') == EXIT_NEGATIVE


def test_reactive_commands(tmp_path):
    """测试反应式传感器相关命令"""
    print("Testing reactive commands...")
    code, out = _run_output('extract-pix', scenario_path('tetromino.scn'), tmp_path)
    assert code == EXIT_OK
    assert 'x1->u3' in out

    assert _run('sensor-check', scenario_path('tetromino.scn'), tmp_path) == EXIT_NEGATIVE
    code, out = _run_output('minimal-sensor', scenario_path('tetromino.scn'), tmp_path)
    assert code == EXIT_OK
    assert 'x1 x3' in out

    assert _run('reactive-exists', scenario_path('tetromino.scn'), tmp_path) == EXIT_OK
    assert _run('reactive-exists', scenario_path('tetromino.scn'), tmp_path, '--budget', '1') == EXIT_ERROR
    print("Reactive commands OK")


def test_geometry_commands(tmp_path):
    """测试几何命令"""
    print("Testing geometry commands...")
    code, out = _run_output('gaps', _poly('lshape'), tmp_path, '--point', '1.5', '0.5', '--dot')
    assert code == EXIT_OK
    assert '1 个间隙' in out
    assert (tmp_path / 'lshape.gnt.dot').exists()

    code, out = _run_output('spt', _poly('lshape'), tmp_path, '--point', '1.8', '0.5', '--goal', '5')
    assert code == EXIT_OK
    assert '[3, 5]' in out

    assert _run('events', _poly('double_notch'), tmp_path, '--path', '0.5,0.5;0.5,1.9') == EXIT_OK
    events = pd.read_csv(tmp_path / 'double_notch.events.csv')
    assert list(events['kind']) == ['split']

    assert _run('reactive-counterexample', _poly('lshape'), tmp_path,
                '--goal', '5', '--samples', '400', '--seed', '1') == EXIT_OK
    assert _run('reactive-counterexample', _poly('square'), tmp_path,
                '--goal', '2', '--samples', '200', '--seed', '1') == EXIT_NEGATIVE
    assert _run('gnt-run', _poly('square'), tmp_path, '--samples', '4') == EXIT_OK
    assert (tmp_path / 'square.gnt.txt').exists()
    print("Geometry commands OK")


def test_save_and_reload(tmp_path):
    """测试场景、机器与多边形的保存后重新读取"""
    scenario = load_scenario(scenario_path('tetromino.scn'))
    save_scenario(scenario, str(tmp_path / 'tetromino.scn'))
    assert load_scenario(str(tmp_path / 'tetromino.scn')) == scenario

    es = scenario.external_system()
    machine = build_restriction(es, scenario.build_policy(es))
    save_machine(machine, str(tmp_path / 'tetromino.its'))
    assert is_isomorphic(load_machine(str(tmp_path / 'tetromino.its')), machine)

    lshape = load_polygon(_poly('lshape'))
    save_polygon(lshape, str(tmp_path / 'lshape.poly'))
    assert load_polygon(str(tmp_path / 'lshape.poly')).points == lshape.points


def test_table_without_depth_uses_default_bound(tmp_path):
    """测试未声明深度的表格策略按默认上界检查"""
    text = Path(scenario_path('tetromino_table.scn')).read_text(encoding='utf-8')
    undeclared = tmp_path / 'undeclared.scn'
    undeclared.write_text(text.replace('depth 4\n', ''), encoding='utf-8')
    assert load_scenario(str(undeclared)).policy.depth is None

    # 默认上界 2 * 4 * 12 = 96，表格只覆盖到第 4 个观测
    code, out = _run_output('restrict', str(undeclared), tmp_path)
    assert code == EXIT_ERROR
    assert 'OutOfDomain' in out
    assert _run('restrict', str(undeclared), tmp_path, '--depth', '4') == EXIT_OK


def test_error_exit_codes(tmp_path):
    assert _run('restrict', str(tmp_path / 'missing.scn'), tmp_path) == EXIT_ERROR
    assert _run('gaps', _poly('lshape'), tmp_path) == EXIT_ERROR
    assert _run('gaps', _poly('lshape'), tmp_path, '--point', '1.0', '0.0') == EXIT_ERROR
    assert _run('events', _poly('lshape'), tmp_path, '--path', '0.5,0.5') == EXIT_ERROR

    broken = tmp_path / 'broken.scn'
    broken.write_text("[states]\nx1\n[nonsense]\n", encoding='utf-8')
    assert _run('restrict', str(broken), tmp_path) == EXIT_ERROR


def main_runner():
    print("=" * 50)
    print("Command Line Test")
    print("=" * 50)

    try:
        test_scenario_text_round_trip()
        test_scenario_parse_errors()
        test_restrict_and_minimize(Path(tempfile.mkdtemp()))
        test_supports_and_isomorphic(Path(tempfile.mkdtemp()))
        test_join_and_feasible(Path(tempfile.mkdtemp()))
        test_reactive_commands(Path(tempfile.mkdtemp()))
        test_geometry_commands(Path(tempfile.mkdtemp()))
        test_save_and_reload(Path(tempfile.mkdtemp()))
        test_table_without_depth_uses_default_bound(Path(tempfile.mkdtemp()))
        test_error_exit_codes(Path(tempfile.mkdtemp()))
        print("\nAll command line tests completed successfully")
        return 0
    except Exception as e:
        print(f"Command line test failed: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == '__main__':
    sys.exit(main_runner())
