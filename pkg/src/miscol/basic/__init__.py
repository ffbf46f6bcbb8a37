# -*- coding: utf-8 -*-
from .counter import Counter
from .logger import Logger
from .misc import get_count_for_human
from .misc import get_iso8601_now
from .misc import list_slicer
from .misc import parse_real
from .multitask import MultiTask

__all__ = [
    'Counter',
    'Logger',
    'MultiTask',
    'get_count_for_human',
    'get_iso8601_now',
    'list_slicer',
    'parse_real',
]
