#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-02 15:54
@Description : 求解任务池的测试：结果顺序、回调顺序、异常传播
@FileName    : test_basic_multitask
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import time

import pytest

from miscol import Logger, MultiTask

logger = Logger('Test', level=Logger.INFO, verbose=True)


def task_worker_square(tag: int) -> int:
    # 靠前的任务更晚完成，用于检验结果顺序
    time.sleep(0.01 * (8 - tag))
    return tag * tag


def task_worker_failed(tag: int) -> int:
    if tag == 3:
        raise ValueError('tag %d failed' % tag)
    return tag


def test_task_map_order():
    for mode in ['serial', 'thread', 'process']:
        logger.warning('即将测试 %s 模式的 map', mode)
        with MultiTask(mode, max_workers=4, logger=logger) as multi_task:
            seen = []
            results = multi_task.map(task_worker_square, [(i,) for i in range(8)], callback=seen.append)
            assert results == [i * i for i in range(8)]
            assert seen == results
            assert multi_task.total == 8


def test_task_bounded():
    for mode in ['thread', 'process']:
        logger.warning('即将测试 %s 模式的 bounded', mode)
        with MultiTask(mode, bounded=True, max_workers=2, logger=logger) as multi_task:
            assert multi_task.max_workers == 2
            assert multi_task.map(task_worker_square, [(i,) for i in range(6)]) == [i * i for i in range(6)]


def test_task_exception():
    for mode in ['serial', 'thread']:
        logger.warning('即将测试 %s 模式的异常传播', mode)
        with MultiTask(mode, max_workers=2, logger=logger) as multi_task:
            with pytest.raises(ValueError, match='tag 3 failed'):
                multi_task.map(task_worker_failed, [(i,) for i in range(6)])


def test_task_serial_submit():
    multi_task = MultiTask(logger=logger)
    assert multi_task.mode == 'serial'
    assert multi_task.max_workers == 1
    future = multi_task.submit(task_worker_failed, 3)
    assert isinstance(future.exception(), ValueError)
    assert multi_task.submit(task_worker_square, 7).result() == 49


def test_task_invalid_mode():
    with pytest.raises(ValueError):
        MultiTask('cluster')


def main():
    logger.warning('=' * 80)
    test_task_map_order()

    logger.warning('=' * 80)
    test_task_bounded()

    logger.warning('=' * 80)
    test_task_exception()


if __name__ == '__main__':
    main()
