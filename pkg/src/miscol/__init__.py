# -*- coding: utf-8 -*-
"""多指标随机配点（MISC）估计器工具集"""
from .basic import *

__version__ = '1.0.0'

__all__ = [
    'Counter',
    'Logger',
    'MultiTask',
]
