# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-08 10:25
@Description : 混合一阶差分、组合系数、MISC 估计器以及工作量/误差贡献
@FileName    : misc_estimator
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import itertools
import math
import typing as t

import numpy as np

from miscol.basic import Counter, Logger, MultiTask, list_slicer
from miscol.tools.collocation import new_points_count, tensor_grid
from miscol.tools.index.multi_index import IndexSet, MultiIndex, spatial_directions
from miscol.tools.problem.fd_solver import DofCapExceededError, grid_dof
from .surplus_cache import SurplusCache

if t.TYPE_CHECKING:
    from miscol.tools.index.set_builder import RateModel

__all__ = [
    'EvaluationError',
    'Contribution',
    'FunctionEvaluator',
    'MiscEstimator',
    'combination_coefficients',
    'work_contribution',
]

Direction = t.Tuple[int, ...]


class EvaluationError(RuntimeError):
    """求值器在 (α, y) 处失败"""

    def __init__(self, alpha: t.Tuple[int, ...], y: t.Tuple[float, ...], reason: str = ''):
        super().__init__(alpha, y, reason)
        self.alpha = tuple(alpha)
        self.y = tuple(y)
        self.reason = reason

    def __str__(self):
        return '求值失败：α=%s y=%s %s' % (self.alpha, [round(v, 12) for v in self.y], self.reason)


class Contribution(t.NamedTuple):
    """多指标的误差贡献 ΔE、工作量贡献 ΔW 与收益 ΔE/ΔW"""
    dE: float
    dW: float
    profit: float

    @classmethod
    def of(cls, dE: float, dW: float) -> 'Contribution':
        if dW <= 0:
            raise ValueError('工作量贡献必须为正数：%r' % (dW,))
        return cls(float(dE), float(dW), float(dE) / float(dW))


class FunctionEvaluator:
    """将解析函数 f(α, y) 包装为求值器，用于测试与合成问题"""

    def __init__(
            self,
            fn: t.Callable[[t.Tuple[int, ...], np.ndarray], float],
            *,
            dof: t.Optional[t.Callable[[t.Tuple[int, ...]], int]] = None,
            dof_cap: t.Optional[int] = None,
    ):
        self._fn = fn
        self._dof = dof
        self._dof_cap = dof_cap

    def __call__(self, alpha: t.Tuple[int, ...], y: np.ndarray) -> float:
        return float(self._fn(alpha, y))

    def dof(self, alpha: t.Tuple[int, ...]) -> int:
        return int(self._dof(alpha)) if self._dof is not None else 1

    def check_level(self, alpha: t.Tuple[int, ...]):
        dof = self.dof(alpha)
        if self._dof_cap is not None and dof > self._dof_cap:
            raise DofCapExceededError(alpha, dof, self._dof_cap)


def _evaluate_one(evaluator: t.Callable, alpha: t.Tuple[int, ...], y: np.ndarray) -> float:
    try:
        return float(evaluator(alpha, y))
    except DofCapExceededError:
        raise
    except Exception as e:
        raise EvaluationError(alpha, tuple(float(v) for v in y), '%s: %s' % (type(e).__name__, e)) from e


def _subsets(directions: t.Sequence[Direction]) -> t.Iterator[t.Tuple[int, Direction]]:
    """遍历方向子集 j ∈ {0,1}^k，给出 |j| 与 Σ j_k v_k"""
    size = len(directions[0]) if directions else 0
    for choice in itertools.product((0, 1), repeat=len(directions)):
        total = [0] * size
        for use, v in zip(choice, directions):
            if use:
                total = [a + b for a, b in zip(total, v)]
        yield sum(choice), tuple(total)


def _difference_terms(idx: MultiIndex, directions: t.Sequence[Direction]) -> t.Dict[MultiIndex, int]:
    # 仅对减去后仍合法的方向展开，其余项按约定为零
    active = [v for v in directions if idx.shift(v, -1).is_valid()]
    terms = {}
    for order, offset in _subsets(active):
        term = idx.shift(offset, -1) if active else idx
        terms[term] = terms.get(term, 0) + (-1) ** order
    return {term: sign for term, sign in terms.items() if sign}


def combination_coefficients(index_set: t.Union[IndexSet, t.Iterable[MultiIndex]]) -> t.Dict[MultiIndex, int]:
    """
    组合系数 c_{α,β} = Σ_{j ∈ {0,1}^k, [α,β]+j ∈ 𝓘} (-1)^{|j|}

    :param index_set: 向下封闭的多指标集，非封闭集合将抛出 IndexSetError
    :return: 每个成员的组合系数，系数之和为 1
    """
    if not isinstance(index_set, IndexSet):
        members = list(index_set)
        if not members:
            raise ValueError('多指标集不能为空')
        index_set = IndexSet(members, members[0].D, members[0].N)

    coefficients = {}
    for idx in index_set:
        active = [v for v in index_set.directions if idx.shift(v) in index_set]
        coefficient = 0
        for order, offset in _subsets(active):
            if not active or idx.shift(offset) in index_set:
                coefficient += (-1) ** order
        coefficients[idx] = coefficient
    return coefficients


def work_contribution(
        idx: MultiIndex,
        rates: 'RateModel',
        mode: t.Literal['model', 'measured'] = 'model',
        *,
        h0: t.Optional[float] = None,
        spatial: str = 'full',
) -> float:
    """
    工作量贡献 ΔW_{α,β}

    ======== ===============================================================
    model    C_work·e^{Σ γ_i α_i}·e^{δ|β|}
    measured (2^D 个后向空间网格的自由度之和) × ∏_j (m(β_j) - m(β_j - 1))
    ======== ===============================================================

    :param idx: 多指标
    :param rates: 速率模型
    :param mode: model 或 measured
    :param h0: measured 模式下的基准网格尺寸
    :param spatial: measured 模式下的方向族
    """
    if mode == 'model':
        exponent = sum(g * a for g, a in zip(rates.gammas, idx.alpha)) + rates.delta * sum(idx.beta)
        return rates.C_work * math.exp(exponent)
    if mode != 'measured':
        raise ValueError('工作量模式无效，可选值：model / measured')
    if h0 is None:
        raise ValueError('measured 模式需要提供 h0')

    spatial_only = [v[:idx.D] for v in spatial_directions(idx.D, idx.N, spatial) if any(v[:idx.D])]
    solves = 0
    for _, offset in _subsets(spatial_only):
        alpha = tuple(a - o for a, o in zip(idx.alpha, offset)) if spatial_only else idx.alpha
        if min(alpha) >= 1:
            solves += grid_dof(alpha, h0)
    return float(solves * math.prod(new_points_count(b) for b in idx.beta))


class MiscEstimator:
    """
    MISC 估计器

    所有 (α, y) 处的求值均经由缓存；缺失的点先成批提交到任务池并发求解，
    再按排序后的键用 math.fsum 归约，结果与完成顺序无关。
    """

    def __init__(
            self,
            evaluator: t.Callable[[t.Tuple[int, ...], np.ndarray], float],
            *,
            cache: t.Optional[SurplusCache] = None,
            pool: t.Optional[MultiTask] = None,
            interval: int = 100,
            logger: t.Optional[Logger] = None,
    ):
        """
        :param evaluator: 求值器 F^α(y)，可提供 dof(α) 与 check_level(α)
        :param cache: 缓存，默认新建
        :param pool: 任务池，默认串行
        :param interval: 进度打印间隔（求解次数）
        :param logger: 日志类
        """
        self._evaluator = evaluator
        self._cache = cache if cache is not None else SurplusCache()
        self._logger = logger or Logger('MiscEstimator')
        self._pool = pool or MultiTask('serial', logger=self._logger)
        self._interval = interval

    @property
    def evaluator(self):
        return self._evaluator

    @property
    def cache(self) -> SurplusCache:
        return self._cache

    @property
    def pool(self) -> MultiTask:
        return self._pool

    def dof(self, alpha: t.Tuple[int, ...]) -> int:
        dof = getattr(self._evaluator, 'dof', None)
        return int(dof(alpha)) if dof is not None else 1

    def _check_level(self, alpha: t.Tuple[int, ...]):
        check = getattr(self._evaluator, 'check_level', None)
        if check is not None:
            check(alpha)

    def prefetch(self, pairs: t.Iterable[t.Tuple[t.Sequence[int], t.Sequence[int]]]) -> int:
        """
        成批求解缺失的点值

        :param pairs: 需要的 (α, β) 张量积求积
        :return: 新求解的点数
        """
        tasks = []
        seen = set()
        for alpha, beta in sorted({(tuple(a), tuple(b)) for a, b in pairs}):
            if min(alpha + beta) < 1 or self._cache.get_quadrature(alpha, beta) is not None:
                continue
            self._check_level(alpha)
            grid = tensor_grid(beta)
            for key, y in zip(grid.keys, grid.points):
                if (alpha, key) not in seen and not self._cache.has_point(alpha, key):
                    seen.add((alpha, key))
                    tasks.append((alpha, key, y))
        if not tasks:
            return 0

        counter = Counter('求解 F^α(y)', total=len(tasks), interval=self._interval, logger=self._logger)
        pending = iter(tasks)

        def on_done(value: float):
            alpha, key, _ = next(pending)
            dof = self.dof(alpha)
            self._cache.put_point(alpha, key, value, dof)
            counter.increase(dof=dof).print()

        # 分批提交，单批任务数不超过工人数的 64 倍
        for batch in list_slicer(tasks, self._pool.max_workers * 64):
            self._pool.map(_evaluate_one, [(self._evaluator, alpha, y) for alpha, _, y in batch], callback=on_done)
        counter.print(force=counter.total >= self._interval)
        return len(tasks)

    def tensor_quadrature(self, alpha: t.Sequence[int], beta: t.Sequence[int]) -> float:
        """
        张量积求积 F_{α,β} = Q^{m(β)}[F^α]，任一分量为零时按约定返回 0

        :param alpha: 空间层级
        :param beta: 随机层级
        """
        alpha, beta = tuple(int(a) for a in alpha), tuple(int(b) for b in beta)
        if min(alpha + beta) < 1:
            return 0.0
        grid = tensor_grid(beta)
        dof = self.dof(alpha)
        cached = self._cache.get_quadrature(alpha, beta)
        if cached is None:
            self.prefetch([(alpha, beta)])
            values = [self._cache.get_point(alpha, key) for key in grid.keys]
            cached = self._cache.put_quadrature(
                alpha, beta, math.fsum(float(w) * v for w, v in zip(grid.weights, values)))
        self._cache.touch(alpha, grid.keys, dof)
        return cached

    def mixed_difference(self, idx: MultiIndex, directions: t.Optional[t.Sequence[Direction]] = None) -> float:
        """
        混合一阶差分 Δ[F_{α,β}] = Σ_j (-1)^{|j|} F_{[α,β]-j}，含零分量的项按约定为零

        :param idx: 多指标
        :param directions: 方向族，默认 D+N 个单位向量
        """
        if not idx.is_valid():
            return 0.0
        directions = tuple(directions) if directions is not None else spatial_directions(idx.D, idx.N)
        terms = _difference_terms(idx, directions)
        key = (directions, idx)
        cached = self._cache.get_delta(key)
        if cached is None:
            self.prefetch((term.alpha, term.beta) for term in terms)
            cached = self._cache.put_delta(key, math.fsum(
                sign * self.tensor_quadrature(term.alpha, term.beta) for term, sign in sorted(terms.items())))
        else:
            for term in terms:
                self.tensor_quadrature(term.alpha, term.beta)
        return cached

    def stochastic_difference(self, alpha: t.Sequence[int], beta: t.Sequence[int]) -> float:
        """仅沿随机方向的差分 Δ^stoc[F_{α,β}]，空间层级固定"""
        idx = MultiIndex.of(alpha, beta)
        return self.mixed_difference(idx, spatial_directions(idx.D, idx.N, 'fixed'))

    def error_contribution(self, idx: MultiIndex, directions: t.Optional[t.Sequence[Direction]] = None) -> float:
        """误差贡献 ΔE_{α,β} = |Δ[F_{α,β}]|"""
        return abs(self.mixed_difference(idx, directions))

    def contributions(
            self,
            index_set: IndexSet,
            rates: 'RateModel',
            *,
            work_mode: t.Literal['model', 'measured'] = 'model',
            h0: t.Optional[float] = None,
    ) -> t.Dict[MultiIndex, Contribution]:
        """计算集合内每个多指标的误差、工作量贡献与收益"""
        self.prefetch((idx.alpha, idx.beta) for idx in index_set)
        return {
            idx: Contribution.of(
                self.error_contribution(idx, index_set.directions),
                work_contribution(idx, rates, work_mode, h0=h0, spatial=index_set.spatial),
            )
            for idx in index_set
        }

    def estimate(
            self,
            index_set: IndexSet,
            mode: t.Literal['surplus', 'combination'] = 'combination',
    ) -> float:
        """
        MISC 估计值

        ============ ==========================================================
        surplus      Σ_{𝓘} Δ[F_{α,β}]，保留全部差分以便增量构造
        combination  Σ_{c ≠ 0} c_{α,β}·F_{α,β}，只计算系数非零的项
        ============ ==========================================================

        :param index_set: 向下封闭的多指标集
        :param mode: surplus 或 combination
        """
        if mode == 'surplus':
            self.prefetch((idx.alpha, idx.beta) for idx in index_set)
            value = math.fsum(self.mixed_difference(idx, index_set.directions) for idx in index_set)
        elif mode == 'combination':
            coefficients = {idx: c for idx, c in combination_coefficients(index_set).items() if c}
            self.prefetch((idx.alpha, idx.beta) for idx in coefficients)
            value = math.fsum(c * self.tensor_quadrature(idx.alpha, idx.beta) for idx, c in sorted(coefficients.items()))
        else:
            raise ValueError('估计模式无效，可选值：surplus / combination')
        self._logger.info('估计完成，模式：%s，集合大小：%d，估计值：%.12e', mode, len(index_set), value)
        return value
