# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-03 09:20
@Description : 嵌套 Clenshaw-Curtis 配点、均匀测度下的一维及张量积求积规则
@FileName    : clenshaw_curtis
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import functools
import itertools
import math
import typing as t

import numpy as np
from scipy.interpolate import BarycentricInterpolator

__all__ = [
    'NodeKey',
    'PointKey',
    'TensorGrid',
    'level_to_nodes',
    'new_points_count',
    'cc_node_keys',
    'cc_nodes',
    'cc_weights',
    'map_to_interval',
    'tensor_grid',
    'lebesgue_estimate',
]

# 节点的整数键：节点 cos(π·p/q) 以既约分数 (p, q) 表示，与层级无关
NodeKey = t.Tuple[int, int]
PointKey = t.Tuple[NodeKey, ...]


class TensorGrid(t.NamedTuple):
    """张量积配点网格 𝒯^{m(β)}，points 的每一行对应 keys 中同位置的整数键"""
    levels: t.Tuple[int, ...]
    points: np.ndarray
    weights: np.ndarray
    keys: t.Tuple[PointKey, ...]

    @property
    def cardinality(self) -> int:
        return len(self.keys)


def level_to_nodes(level: int) -> int:
    """
    层级到节点数的映射：m(0)=0, m(1)=1, m(i)=2^{i-1}+1

    :param level: 插值层级
    :return: 节点数
    """
    if level < 0:
        raise ValueError('层级不能为负数：%d' % level)
    if level <= 1:
        return level
    return 2 ** (level - 1) + 1


def new_points_count(level: int) -> int:
    """嵌套配点在层级 level 新增的节点数 m(β) - m(β-1)"""
    if level < 1:
        raise ValueError('层级必须为正整数：%d' % level)
    return level_to_nodes(level) - level_to_nodes(level - 1)


def _reduce(p: int, q: int) -> NodeKey:
    if p == 0:
        return 0, 1
    while p % 2 == 0 and q % 2 == 0:
        p //= 2
        q //= 2
    return p, q


@functools.lru_cache(maxsize=None)
def cc_node_keys(level: int) -> t.Tuple[NodeKey, ...]:
    """
    层级 level 的节点整数键，按 cos((j-1)π/(m-1)) 的余弦顺序排列

    层级 1 仅含中点，对应 cos(π/2)，即键 (1, 2)。
    """
    m = level_to_nodes(level)
    if m == 0:
        return ()
    if m == 1:
        return ((1, 2),)
    return tuple(_reduce(j, m - 1) for j in range(m))


def _node_value(key: NodeKey) -> float:
    p, q = key
    # 关于 0 对称的节点取相反数，保证数值上严格对称且跨层级逐位一致
    if 2 * p == q:
        return 0.0
    if 2 * p > q:
        return -math.cos(math.pi * (q - p) / q)
    return math.cos(math.pi * p / q)


@functools.lru_cache(maxsize=None)
def _cc_nodes(level: int) -> np.ndarray:
    nodes = np.array([_node_value(key) for key in cc_node_keys(level)], dtype=float)
    nodes.setflags(write=False)
    return nodes


def cc_nodes(level: int) -> np.ndarray:
    """
    Clenshaw-Curtis 节点 y^j = cos((j-1)π/(m-1))，m=1 时取中点 0

    :param level: 插值层级，0 返回空数组
    :return: 只读的节点数组
    """
    if level < 0:
        raise ValueError('层级不能为负数：%d' % level)
    return _cc_nodes(level)


@functools.lru_cache(maxsize=None)
def _cc_weights(level: int) -> np.ndarray:
    nodes = _cc_nodes(level)
    m = len(nodes)
    if m == 0:
        weights = np.zeros(0)
    elif m == 1:
        weights = np.ones(1)
    else:
        # 以 Gauss-Legendre 参考规则精确积分 Lagrange 基函数，参考规则代数精度 ≥ 2m，
        # 取偶数个参考节点使其不与中点重合
        n_ref = m + 1 + (m + 1) % 2
        ref_nodes, ref_weights = np.polynomial.legendre.leggauss(n_ref)
        basis = BarycentricInterpolator(nodes, np.eye(m))(ref_nodes)
        weights = 0.5 * (ref_weights @ basis)
        weights = 0.5 * (weights + weights[::-1])
    weights.setflags(write=False)
    return weights


def cc_weights(level: int) -> np.ndarray:
    """
    均匀密度 1/2 下的求积权重 ϖ_j = ∫ ℓ_j(y)/2 dy

    :param level: 插值层级，0 返回空数组
    :return: 只读的权重数组，和为 1
    """
    if level < 0:
        raise ValueError('层级不能为负数：%d' % level)
    return _cc_weights(level)


def map_to_interval(nodes: t.Sequence[float], interval: t.Tuple[float, float]) -> np.ndarray:
    """
    将 [-1, 1] 上的节点仿射映射到 [a, b]，权重不变

    :param nodes: [-1, 1] 上的节点
    :param interval: 目标区间 (a, b)
    """
    a, b = float(interval[0]), float(interval[1])
    if not a < b:
        raise ValueError('区间退化：[%r, %r]' % (a, b))
    nodes = np.asarray(nodes, dtype=float)
    return 0.5 * (a + b) + 0.5 * (b - a) * nodes


@functools.lru_cache(maxsize=4096)
def _tensor_grid(levels: t.Tuple[int, ...]) -> TensorGrid:
    per_keys = [cc_node_keys(level) for level in levels]
    per_nodes = [_cc_nodes(level) for level in levels]
    per_weights = [_cc_weights(level) for level in levels]

    points = np.array(list(itertools.product(*per_nodes)), dtype=float).reshape(-1, len(levels))
    weights = np.ones(1)
    for w in per_weights:
        weights = np.multiply.outer(weights, w).ravel()
    keys = tuple(itertools.product(*per_keys))
    points.setflags(write=False)
    weights.setflags(write=False)
    return TensorGrid(levels, points, weights, keys)


def tensor_grid(
        levels: t.Sequence[int],
        intervals: t.Optional[t.Sequence[t.Tuple[float, float]]] = None,
) -> TensorGrid:
    """
    张量积网格：各方向节点的笛卡尔积与权重的张量积，基数为 ∏ m(β_n)

    :param levels: 各方向的插值层级，均须 ≥ 1
    :param intervals: 各方向的区间，默认 [-1, 1]
    """
    levels = tuple(int(level) for level in levels)
    if any(level < 1 for level in levels):
        raise ValueError('张量积网格的层级必须 ≥ 1：%s' % (levels,))
    grid = _tensor_grid(levels)
    if intervals is None:
        return grid
    if len(intervals) != len(levels):
        raise ValueError('区间数量与方向数量不一致')
    points = np.column_stack([
        map_to_interval(grid.points[:, n], interval) for n, interval in enumerate(intervals)
    ]) if levels else grid.points
    return TensorGrid(grid.levels, points, grid.weights, grid.keys)


def _lebesgue_1d(q: int) -> float:
    if q == 1:
        return 1.0
    return 2.0 / math.pi * math.log(q - 1) + 1.0


def lebesgue_estimate(levels: t.Sequence[int]) -> float:
    """
    Lebesgue 常数估计 ∏_n 𝕄_est(m(β_n))，𝕄_est(1)=1，𝕄_est(q)=(2/π)log(q-1)+1

    :param levels: 各方向的插值层级，均须 ≥ 1
    """
    if any(level < 1 for level in levels):
        raise ValueError('层级必须 ≥ 1：%s' % (tuple(levels),))
    return math.prod(_lebesgue_1d(level_to_nodes(level)) for level in levels)
