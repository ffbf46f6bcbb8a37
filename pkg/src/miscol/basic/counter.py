# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-02 10:40
@Description : 支持预估结束时间的求解计数工具，同时累计自由度
@FileName    : counter
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 2.0.0
"""
import datetime
import threading
import time
import typing as t

from .logger import Logger

__all__ = [
    'Counter',
]


class Counter:
    """
    支持预估结束时间的求解计数工具

    每完成一次求解调用 ``increase``，累计求解次数与自由度；
    每累计 ``interval`` 次求解打印一次进度。
    """

    def __init__(
            self,
            title: t.Optional[str],
            total: int = 0,
            interval: int = 100,
            logger: t.Optional[Logger] = None,
    ):
        """
        :param title: 标题
        :param total: 预计求解总数，0 表示未知
        :param interval: 打印间隔（求解次数）
        :param logger: 日志类
        """
        self.title = title
        self.total = total
        self.interval = max(int(interval), 1)
        self.logger = logger or Logger('Counter')

        self._lock = threading.Lock()
        self._value = 0
        self._dof = 0
        self._title = f'{title:<40}' if title else ''
        self._start_time = time.time()
        self._monotonic_time = time.monotonic()
        self._printed_value = 0

    def increase(self, value: int = 1, dof: int = 0):
        """自增函数，支持链式调用打印函数"""
        with self._lock:
            self._value += value
            self._dof += dof
        return self

    def print(self, *, force: bool = False):
        if force or self.printable:
            self._printed_value = self._value // self.interval * self.interval
            self.logger.info(str(self))

    @property
    def value(self) -> int:
        return self._value

    @property
    def dof(self) -> int:
        return self._dof

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self._monotonic_time

    @property
    def printable(self) -> bool:
        return self._value - self._printed_value >= self.interval

    @property
    def progress(self) -> str:
        if self.total == 0:
            return f'{self._value:>8}'
        return f'{self._value:>8} / {self.total:<8}'

    @property
    def percentage(self) -> str:
        if self.total == 0:
            return '100.000%'
        return f'{self._value / self.total * 100:>7.3f}%'

    @property
    def completion_time(self) -> str:
        if self._value == 0:
            return '9999-12-31 23:59:59'
        completed_time = self.elapsed * self.total / self._value + self._start_time
        return datetime.datetime.fromtimestamp(completed_time).strftime('%Y-%m-%d %H:%M:%S')

    def __str__(self):
        if self.total == 0:
            return f'{self._title}【{self.progress}】dof={self._dof}'
        return f'{self._title}（{self.percentage}）【{self.progress}】dof={self._dof}〈{self.completion_time}〉'
