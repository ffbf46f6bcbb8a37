# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-04 20:15
@Description : Clenshaw-Curtis 节点、权重与张量积网格的测试
@FileName    : test_tool_collocation
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math

import numpy as np
import pytest

from miscol.tools.collocation import (
    cc_node_keys,
    cc_nodes,
    cc_weights,
    lebesgue_estimate,
    level_to_nodes,
    map_to_interval,
    new_points_count,
    tensor_grid,
)


def test_level_to_nodes():
    assert [level_to_nodes(i) for i in range(6)] == [0, 1, 3, 5, 9, 17]
    assert [new_points_count(i) for i in range(1, 6)] == [1, 2, 2, 4, 8]
    with pytest.raises(ValueError):
        level_to_nodes(-1)
    with pytest.raises(ValueError):
        new_points_count(0)


def test_cc_nodes():
    assert cc_nodes(0).shape == (0,)
    assert cc_nodes(1).tolist() == [0.0]
    assert cc_nodes(2).tolist() == [1.0, 0.0, -1.0]
    nodes = cc_nodes(3)
    assert nodes == pytest.approx([1.0, math.sqrt(0.5), 0.0, -math.sqrt(0.5), -1.0])
    # 关于 0 严格对称
    assert np.array_equal(nodes, -nodes[::-1])
    with pytest.raises(ValueError):
        nodes[0] = 2.0


def test_cc_nodes_nested():
    for level in range(1, 8):
        coarse, fine = set(cc_node_keys(level)), set(cc_node_keys(level + 1))
        assert coarse <= fine
        assert len(fine - coarse) == new_points_count(level + 1)
        # 相同的键在不同层级上取逐位相同的节点值
        values = dict(zip(cc_node_keys(level + 1), cc_nodes(level + 1)))
        for key, value in zip(cc_node_keys(level), cc_nodes(level)):
            assert values[key] == value


def test_cc_weights():
    assert cc_weights(0).shape == (0,)
    assert cc_weights(1).tolist() == [1.0]
    assert cc_weights(2) == pytest.approx([1 / 6, 2 / 3, 1 / 6])
    assert cc_weights(3) == pytest.approx([1 / 30, 4 / 15, 2 / 5, 4 / 15, 1 / 30])
    for level in range(1, 8):
        weights = cc_weights(level)
        assert math.fsum(weights) == pytest.approx(1.0, abs=1e-14)
        assert np.all(weights > 0)


def test_cc_exactness():
    # 均匀密度 1/2 下 ∫ y^k dy / 2 = 1/(k+1)（k 为偶数）
    for level in range(2, 7):
        nodes, weights = cc_nodes(level), cc_weights(level)
        m = level_to_nodes(level)
        for k in range(m):
            exact = 1.0 / (k + 1) if k % 2 == 0 else 0.0
            assert float(weights @ nodes ** k) == pytest.approx(exact, abs=1e-13)


def test_tensor_grid():
    grid = tensor_grid((2, 1, 3))
    assert grid.cardinality == 3 * 1 * 5
    assert grid.points.shape == (15, 3)
    assert math.fsum(grid.weights) == pytest.approx(1.0)
    assert len(set(grid.keys)) == 15
    assert np.all(grid.points[:, 1] == 0.0)

    # ∫∫∫ (1 + y1²)·y3⁴ 在均匀密度下等于 (4/3)·(1/5)
    values = (1 + grid.points[:, 0] ** 2) * grid.points[:, 2] ** 4
    assert float(grid.weights @ values) == pytest.approx(4 / 15)

    with pytest.raises(ValueError):
        tensor_grid((1, 0))


def test_tensor_grid_intervals():
    grid = tensor_grid((2,), intervals=[(0.0, 2.0)])
    assert grid.points[:, 0].tolist() == [2.0, 1.0, 0.0]
    assert map_to_interval([-1.0, 1.0], (3.0, 5.0)).tolist() == [3.0, 5.0]
    with pytest.raises(ValueError):
        map_to_interval([0.0], (1.0, 1.0))
    with pytest.raises(ValueError):
        tensor_grid((2, 2), intervals=[(0.0, 1.0)])


def test_lebesgue_estimate():
    assert lebesgue_estimate((1, 1)) == 1.0
    assert lebesgue_estimate((2,)) == pytest.approx(2 / math.pi * math.log(2) + 1)
    assert lebesgue_estimate((3, 2)) == pytest.approx(
        (2 / math.pi * math.log(4) + 1) * (2 / math.pi * math.log(2) + 1))
