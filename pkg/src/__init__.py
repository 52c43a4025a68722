#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
最小充分滤波器分析工具
Filter Synth
"""

from .__version__ import __version__, get_version_info

__author__ = "Filter Synth Team"
