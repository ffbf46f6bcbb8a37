# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-02 11:05
@Description : 基于多线程、多进程实现的求解任务池，用于并发计算 (α, y) 处的求解
@FileName    : multitask
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 2.0.0
"""
import concurrent.futures
import multiprocessing
import threading
import typing as t

from .logger import Logger

__all__ = [
    'MultiTask',
]

_T = t.TypeVar('_T')


# noinspection PyUnusedLocal
class _BoundedPoolExecutor(concurrent.futures.Executor):
    """对 submit 进行信号量限制，避免一次性堆积大量未完成的求解任务"""
    _semaphore = None

    def acquire(self):
        self._semaphore.acquire()

    def release(self, fn: concurrent.futures.Future):
        self._semaphore.release()

    def submit(self, fn: t.Callable, *args: t.Any, **kwargs: t.Any):
        self.acquire()
        future = super().submit(fn, *args, **kwargs)
        future.add_done_callback(self.release)
        return future


class _ThreadPoolExecutor(concurrent.futures.ThreadPoolExecutor):
    @property
    def max_workers(self) -> int:
        return self._max_workers


class _BoundedThreadPoolExecutor(_BoundedPoolExecutor, _ThreadPoolExecutor):
    def __init__(self, *args: t.Any, **kwargs: t.Any):
        super().__init__(*args, **kwargs)
        self._semaphore = threading.BoundedSemaphore(self.max_workers * 2)


class _ProcessPoolExecutor(concurrent.futures.ProcessPoolExecutor):
    @property
    def max_workers(self) -> int:
        return self._max_workers


class _BoundedProcessPoolExecutor(_BoundedPoolExecutor, _ProcessPoolExecutor):
    def __init__(self, *args: t.Any, **kwargs: t.Any):
        super().__init__(*args, **kwargs)
        self._semaphore = multiprocessing.BoundedSemaphore(self.max_workers * 2)


class _SerialFuture(concurrent.futures.Future):
    """串行模式下立即执行并返回结果的 Future"""

    def __init__(self, fn: t.Callable, *args: t.Any, **kwargs: t.Any):
        super().__init__()
        try:
            self.set_result(fn(*args, **kwargs))
        except BaseException as e:
            self.set_exception(e)


class MultiTask:
    """
    基于多线程、多进程实现的求解任务池，减少重复书写非逻辑代码。

    ========= ===============================================================
    有关模式的简要描述
    ----------------------- -------------------------------------------------
    'serial'                串行，在调用线程内立即执行，结果可复现且便于调试
    'thread'                线程池，适合释放 GIL 的稀疏求解
    'process'               进程池，任务函数及参数需可序列化
    'thread'/'process' bounded  对 submit 进行信号量限制的有界池
    ======================= =================================================

    无论何种模式，``map`` 都按输入顺序返回结果。
    """
    MODE = {'serial', 'thread', 'process'}
    EXECUTOR_MAP = {
        'thread': [_ThreadPoolExecutor, _BoundedThreadPoolExecutor],
        'process': [_ProcessPoolExecutor, _BoundedProcessPoolExecutor],
    }

    def __init__(
            self,
            mode: t.Literal['serial', 'thread', 'process'] = 'serial',
            *,
            bounded: bool = False,
            max_workers: t.Optional[int] = None,
            logger: t.Optional[Logger] = None,
    ):
        """
        初始化任务池

        :param mode: 执行器模式，可选 serial / thread / process 值
        :param bounded: 是否限制未完成任务的数量
        :param max_workers: 执行器工人上限
        :param logger: 日志类
        """
        if mode not in self.MODE:
            raise ValueError('模式无效，可选值：serial / thread / process')

        self._mode = mode
        self._logger = logger or Logger('MultiTask')
        self._executor_total = 0
        self._executor_pool = None
        if mode != 'serial':
            self._executor_pool = self.EXECUTOR_MAP[mode][bounded](max_workers=max_workers)
            self._logger.debug('已初始化 %s 模式的任务池，池大小：%d', mode, self._executor_pool.max_workers)

    @property
    def mode(self) -> str:
        return self._mode

    @property
    def max_workers(self) -> int:
        if self._executor_pool is None:
            return 1
        return self._executor_pool.max_workers

    @property
    def total(self) -> int:
        return self._executor_total

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.shutdown()

    def __del__(self):
        if getattr(self, '_executor_pool', None) is not None:
            self.shutdown()

    def submit(self, fn: t.Callable[..., _T], *args: t.Any, **kwargs: t.Any) -> concurrent.futures.Future:
        self._executor_total += 1
        if self._executor_pool is None:
            return _SerialFuture(fn, *args, **kwargs)
        return self._executor_pool.submit(fn, *args, **kwargs)

    def map(
            self,
            fn: t.Callable[..., _T],
            arguments: t.Iterable[t.Sequence[t.Any]],
            *,
            callback: t.Optional[t.Callable[[_T], t.Any]] = None,
    ) -> t.List[_T]:
        """
        提交一批任务并按提交顺序收集结果，首个失败任务的异常将被重新抛出

        :param fn: 任务函数
        :param arguments: 每个任务的位置参数
        :param callback: 每个任务完成后（按提交顺序）调用的回调
        :return: 按提交顺序排列的结果
        """
        futures = [self.submit(fn, *args) for args in arguments]
        self._logger.debug('已提交 %d 个任务，累计 %d 个', len(futures), self._executor_total)
        results = []
        try:
            for future in futures:
                result = future.result()
                if callback is not None:
                    callback(result)
                results.append(result)
        except BaseException:
            for future in futures:
                future.cancel()
            raise
        return results

    def shutdown(self):
        if self._executor_pool is not None:
            self._executor_pool.shutdown()
            self._executor_pool = None
            self._logger.debug('任务已全部结束，累计提交 %d 个任务', self._executor_total)
