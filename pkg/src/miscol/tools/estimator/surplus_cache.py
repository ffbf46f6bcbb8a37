# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-07 15:40
@Description : 点值、张量积求积与混合差分的线程安全缓存，并统计求解工作量
@FileName    : surplus_cache
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import contextlib
import threading
import typing as t

__all__ = [
    'CacheTally',
    'CacheSession',
    'SurplusCache',
]

Alpha = t.Tuple[int, ...]
PointKey = t.Tuple[t.Tuple[int, int], ...]


class CacheTally(t.NamedTuple):
    """累计的求解次数与自由度·点数"""
    evaluations: int = 0
    dof: int = 0


class CacheSession:
    """记录一次估计所触及的 (α, y)，以及其中首次写入缓存的部分"""

    def __init__(self):
        self._touched = {}
        self._charged = CacheTally()

    def _touch(self, alpha: Alpha, key: PointKey, dof: int):
        self._touched[(alpha, key)] = dof

    def _charge(self, dof: int):
        self._charged = CacheTally(self._charged.evaluations + 1, self._charged.dof + dof)

    @property
    def points_touched(self) -> int:
        return len(self._touched)

    @property
    def work_touched(self) -> int:
        """触及的不同 (α, y) 的自由度之和，与缓存冷热无关"""
        return sum(self._touched.values())

    @property
    def work_charged(self) -> int:
        """本次会话中新求解的自由度之和，缓存已热时为 0"""
        return self._charged.dof

    @property
    def evaluations_charged(self) -> int:
        return self._charged.evaluations


class SurplusCache:
    """
    估计器缓存：点值 (α, 点键) → F^α(y)，张量积求积 (α, β) → Q^{m(β)}[F^α]，混合差分

    所有写入均为“若不存在则插入”，首个写入者胜出；重复计算不会被重复计入工作量。
    """

    def __init__(self):
        self._lock = threading.RLock()
        self._points: t.Dict[t.Tuple[Alpha, PointKey], float] = {}
        self._quadratures: t.Dict[t.Tuple[Alpha, t.Tuple[int, ...]], float] = {}
        self._deltas: t.Dict[t.Hashable, float] = {}
        self._tally = CacheTally()
        self._sessions: t.List[CacheSession] = []

    def __len__(self) -> int:
        return len(self._points)

    @property
    def tally(self) -> CacheTally:
        return self._tally

    def has_point(self, alpha: Alpha, key: PointKey) -> bool:
        return (alpha, key) in self._points

    def get_point(self, alpha: Alpha, key: PointKey) -> t.Optional[float]:
        return self._points.get((alpha, key))

    def put_point(self, alpha: Alpha, key: PointKey, value: float, dof: int = 1) -> float:
        """写入点值，已存在时保留原值并返回之"""
        with self._lock:
            fresh = (alpha, key) not in self._points
            stored = self._points.setdefault((alpha, key), float(value))
            if fresh:
                self._tally = CacheTally(self._tally.evaluations + 1, self._tally.dof + dof)
            for session in self._sessions:
                if fresh:
                    session._charge(dof)
                session._touch(alpha, key, dof)
            return stored

    def touch(self, alpha: Alpha, keys: t.Iterable[PointKey], dof: int = 1):
        """将已缓存的点记入当前会话"""
        if not self._sessions:
            return
        with self._lock:
            for key in keys:
                for session in self._sessions:
                    session._touch(alpha, key, dof)

    def get_quadrature(self, alpha: Alpha, beta: t.Tuple[int, ...]) -> t.Optional[float]:
        return self._quadratures.get((alpha, beta))

    def put_quadrature(self, alpha: Alpha, beta: t.Tuple[int, ...], value: float) -> float:
        with self._lock:
            return self._quadratures.setdefault((alpha, beta), float(value))

    def get_delta(self, key: t.Hashable) -> t.Optional[float]:
        return self._deltas.get(key)

    def put_delta(self, key: t.Hashable, value: float) -> float:
        with self._lock:
            return self._deltas.setdefault(key, float(value))

    @contextlib.contextmanager
    def session(self) -> t.Iterator[CacheSession]:
        """在 with 块内记录触及与新求解的 (α, y)"""
        session = CacheSession()
        with self._lock:
            self._sessions.append(session)
        try:
            yield session
        finally:
            with self._lock:
                self._sessions.remove(session)

    def clear(self):
        with self._lock:
            self._points.clear()
            self._quadratures.clear()
            self._deltas.clear()
            self._tally = CacheTally()
