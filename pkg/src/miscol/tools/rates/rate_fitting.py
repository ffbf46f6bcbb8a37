# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-11 16:02
@Description : 沿射线采样 |ΔE| 并以最小二乘拟合空间速率 r̃、随机速率 g、工作量指数 ϑ
@FileName    : rate_fitting
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import time
import typing as t

import numpy as np
from scipy import stats

from miscol.tools.index import LOG2, MultiIndex, RateModel, spatial_directions

if t.TYPE_CHECKING:
    from miscol.tools.estimator import MiscEstimator

__all__ = [
    'NOISE_FLOOR',
    'RateFitError',
    'RaySamples',
    'ProductStructureReport',
    'PolyellipseRates',
    'sample_ray',
    'fit_spatial_rates',
    'fit_stochastic_rates',
    'verify_product_structure',
    'apriori_g',
    'measure_solve_times',
    'fit_work_exponent',
]

NOISE_FLOOR = 1e-13


class RateFitError(ValueError):
    """拟合样本不合法或可用样本不足"""


class RaySamples(t.NamedTuple):
    """沿射线 [α, β] = j·direction + 1 的 |ΔE| 样本"""
    direction: t.Tuple[int, ...]
    offsets: t.Tuple[int, ...]
    values: t.Tuple[float, ...]

    def indices(self, D: int) -> t.List[MultiIndex]:
        return [MultiIndex.from_flat([j * v + 1 for v in self.direction], D) for j in self.offsets]


class ProductStructureReport(t.NamedTuple):
    """乘积结构检验：实测值相对模型的对数偏差（已按均值锚定常数）"""
    deviations: t.Tuple[float, ...]
    max_deviation: float
    within_order: bool


class PolyellipseRates(t.NamedTuple):
    tau: t.Tuple[float, ...]
    g_star: t.Tuple[float, ...]
    g_tilde: t.Tuple[float, ...]


def sample_ray(
        estimator: 'MiscEstimator',
        direction: t.Sequence[int],
        offsets: t.Sequence[int],
        D: int,
        *,
        base: t.Optional[t.Sequence[int]] = None,
        stochastic_only: bool = False,
) -> RaySamples:
    """
    沿射线 [α, β] = j·direction + base 计算 |Δ[F_{α,β}]|

    :param estimator: 估计器
    :param direction: 射线方向（D+N 维）
    :param offsets: 偏移 j，严格递增
    :param D: 空间维数
    :param base: 起点，默认全 1
    :param stochastic_only: 是否仅取随机方向的差分 Δ^stoc
    """
    direction = tuple(int(v) for v in direction)
    offsets = tuple(int(j) for j in offsets)
    if any(b <= a for a, b in zip(offsets, offsets[1:])):
        raise ValueError('偏移必须严格递增')
    base = tuple(base) if base is not None else (1,) * len(direction)
    indices = [MultiIndex.from_flat([b + j * v for b, v in zip(base, direction)], D) for j in offsets]
    directions = spatial_directions(D, len(direction) - D, 'fixed' if stochastic_only else 'full')
    estimator.prefetch(
        (term.alpha, term.beta)
        for idx in indices
        for term in (idx, *(idx.shift(v, -1) for v in directions))
    )
    if stochastic_only:
        values = [abs(estimator.stochastic_difference(idx.alpha, idx.beta)) for idx in indices]
    else:
        values = [estimator.error_contribution(idx) for idx in indices]
    return RaySamples(direction, offsets, tuple(values))


def _axis(direction: t.Sequence[int]) -> int:
    nonzero = [i for i, v in enumerate(direction) if v]
    if len(nonzero) != 1 or direction[nonzero[0]] != 1:
        raise RateFitError('拟合射线必须沿单位方向：%s' % (tuple(direction),))
    return nonzero[0]


def _usable(samples: RaySamples, noise_floor: float) -> t.Tuple[np.ndarray, np.ndarray]:
    offsets = np.asarray(samples.offsets, dtype=float)
    values = np.asarray(samples.values, dtype=float)
    keep = values > noise_floor
    return offsets[keep], values[keep]


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(stats.linregress(x, y).slope)


def fit_spatial_rates(
        samples: t.Sequence[RaySamples],
        *,
        noise_floor: float = NOISE_FLOOR,
) -> t.Tuple[float, ...]:
    """
    拟合空间误差速率：log|ΔE| 对 α_i·log2 的最小二乘斜率的相反数

    :param samples: 每个空间单位方向一条射线，β 固定为全 1
    :param noise_floor: 低于该值的样本视为噪声而舍弃
    :return: 各射线的 r̃ 估计
    """
    rates = []
    for ray in samples:
        _axis(ray.direction)
        if any(v <= 0 for v in ray.values):
            raise RateFitError('样本必须为正数：方向 %s' % (ray.direction,))
        offsets, values = _usable(ray, noise_floor)
        if len(values) < 3:
            raise RateFitError('方向 %s 的可用样本少于 3 个' % (ray.direction,))
        r_tilde = -_slope((offsets + 1) * LOG2, np.log(values))
        if r_tilde <= 0:
            raise RateFitError('方向 %s 的拟合速率非正：%.6g' % (ray.direction, r_tilde))
        rates.append(r_tilde)
    return tuple(rates)


def fit_stochastic_rates(
        samples: t.Sequence[RaySamples],
        *,
        noise_floor: float = NOISE_FLOOR,
) -> t.Tuple[float, ...]:
    """
    拟合随机误差速率：log|ΔE| 对 -2^{β_n} 的最小二乘斜率

    :param samples: 每个随机单位方向一条射线，α 固定为足够细的层级
    :param noise_floor: 低于该值的样本视为噪声而舍弃
    :return: 各射线的 g 估计
    """
    rates = []
    for ray in samples:
        _axis(ray.direction)
        offsets, values = _usable(ray, noise_floor)
        if len(values) < 3:
            raise RateFitError('方向 %s 高于噪声下限的样本少于 3 个' % (ray.direction,))
        g = _slope(-np.exp2(offsets + 1), np.log(values))
        if g <= 0:
            raise RateFitError('方向 %s 的拟合速率非正：%.6g' % (ray.direction, g))
        rates.append(g)
    return tuple(rates)


def verify_product_structure(
        rays: t.Sequence[RaySamples],
        rates: RateModel,
) -> ProductStructureReport:
    """
    比较混合射线上的实测 |ΔE| 与乘积模型 C·e^{-Σ r_i α_i}·e^{-Σ g_j e^{δβ_j}}

    常数 C 取对数偏差的均值，偏差不超过 log10 视为在一个数量级之内。

    :param rays: α、β 同时变化的射线
    :param rates: 速率模型
    """
    log_ratios = []
    for ray in rays:
        for idx, value in zip(ray.indices(rates.D), ray.values):
            if value <= 0:
                raise RateFitError('样本必须为正数：%s' % (idx,))
            model = math.fsum(r * a for r, a in zip(rates.rs, idx.alpha)) + math.fsum(
                g * math.exp(rates.delta * b) for g, b in zip(rates.gs, idx.beta))
            log_ratios.append(math.log(value) + model)
    if not log_ratios:
        raise RateFitError('没有可用于检验的样本')
    anchor = math.fsum(log_ratios) / len(log_ratios)
    deviations = tuple(v - anchor for v in log_ratios)
    max_deviation = max(abs(v) for v in deviations)
    return ProductStructureReport(deviations, max_deviation, max_deviation <= math.log(10.0))


def apriori_g(
        N: int,
        lambdas: t.Sequence[float],
        eps_E: float = 0.0,
) -> PolyellipseRates:
    """
    由解析性区域给出的先验随机速率

    τ_n = π/(2Nλ_n)，ρ_n = τ_n + √(τ_n²+1)，g*_n = log ρ_n，g̃_n = (g*_n/2)(1-ε_E)

    :param N: 随机变量个数
    :param lambdas: λ_n
    :param eps_E: 松弛量 ε_E ∈ [0, 1)
    """
    if not 0 <= eps_E < 1:
        raise ValueError('ε_E 必须位于 [0, 1)：%r' % (eps_E,))
    lambdas = [float(v) for v in lambdas]
    if not lambdas or min(lambdas) <= 0:
        raise ValueError('λ_n 必须为正数')
    tau = tuple(math.pi / (2.0 * N * v) for v in lambdas)
    g_star = tuple(math.asinh(v) for v in tau)
    g_tilde = tuple(v / 2.0 * (1.0 - eps_E) for v in g_star)
    return PolyellipseRates(tau, g_star, g_tilde)


def measure_solve_times(
        evaluator: t.Callable[[t.Tuple[int, ...], np.ndarray], float],
        alphas: t.Sequence[t.Sequence[int]],
        y: np.ndarray,
        *,
        repeats: int = 3,
) -> t.List[t.Tuple[t.Tuple[int, ...], float]]:
    """
    测量各空间层级单次求解的墙钟时间（取多次中的最小值）

    :param evaluator: 求值器
    :param alphas: 空间层级
    :param y: 参数点
    :param repeats: 重复次数
    """
    timings = []
    for alpha in alphas:
        alpha = tuple(int(a) for a in alpha)
        best = math.inf
        for _ in range(max(repeats, 1)):
            start = time.perf_counter()
            evaluator(alpha, y)
            best = min(best, time.perf_counter() - start)
        timings.append((alpha, best))
    return timings


def fit_work_exponent(
        timings: t.Sequence[t.Tuple[t.Sequence[int], float]],
        h0: float,
) -> float:
    """
    拟合工作量指数 ϑ：log(时间) 对 log ∏ h_i^{-1} 的最小二乘斜率

    :param timings: (α, 秒) 样本，至少 3 个
    :param h0: 基准网格尺寸
    """
    if len(timings) < 3:
        raise RateFitError('工作量拟合至少需要 3 个样本')
    x, y = [], []
    for alpha, seconds in timings:
        if seconds <= 0:
            raise RateFitError('求解时间必须为正数：%s' % (tuple(alpha),))
        x.append(math.fsum(-math.log(h0 * 2.0 ** -a) for a in alpha))
        y.append(math.log(seconds))
    if len(set(x)) < 2:
        raise RateFitError('工作量拟合需要至少两种不同的网格规模')
    theta = _slope(np.asarray(x), np.asarray(y))
    if theta <= 0:
        raise RateFitError('拟合得到的工作量指数非正：%.6g' % theta)
    return theta
