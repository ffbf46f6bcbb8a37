# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-07 22:18
@Description : 多指标、向下封闭集及各类集合构造的测试
@FileName    : test_tool_index
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import itertools
import math

import numpy as np
import pytest

from miscol.tools.index import (
    LOG2,
    IndexSet,
    IndexSetError,
    MultiIndex,
    RateModel,
    apriori_profit,
    apriori_profit_exponent,
    apriori_set,
    dantzig_select,
    default_margin,
    downward_closure,
    mlsc_set,
    random_downward_closed_set,
    scc_set,
    sgsc_sets,
    spatial_directions,
)

RATES_1D = RateModel.from_tilde(1.0, 2.0, [2.4855], D=1)
RATES_3D = RateModel.from_tilde(1.0, 2.0, [2.4855, 2.8174], D=3)


def idx(alpha, beta) -> MultiIndex:
    return MultiIndex.of(alpha, beta)


def test_multi_index():
    index = idx((2, 1), (3,))
    assert index.D == 2 and index.N == 1
    assert index.flat == (2, 1, 3)
    assert MultiIndex.from_flat((2, 1, 3), 2) == index
    assert index.shift((1, 0, 0)) == idx((3, 1), (3,))
    assert not index.shift((0, 1, 0), -1).is_valid()
    assert str(index) == '(2,1; 3)'
    assert MultiIndex.root(2, 3) == idx((1, 1), (1, 1, 1))


def test_spatial_directions():
    assert spatial_directions(1, 2) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert spatial_directions(2, 1, 'diagonal') == ((1, 1, 0), (0, 0, 1))
    assert spatial_directions(2, 2, 'fixed') == ((0, 0, 1, 0), (0, 0, 0, 1))
    with pytest.raises(ValueError):
        spatial_directions(1, 1, 'sparse')


def test_index_set_validation():
    members = [idx((1,), (1,)), idx((2,), (1,)), idx((1,), (2,))]
    index_set = IndexSet(members, 1, 1)
    assert len(index_set) == 3
    assert idx((2,), (1,)) in index_set
    assert list(index_set) == sorted(members)
    assert index_set.root == idx((1,), (1,))
    assert index_set == IndexSet(reversed(members), 1, 1)

    with pytest.raises(IndexSetError):
        IndexSet([], 1, 1)
    with pytest.raises(IndexSetError):
        IndexSet([idx((1,), (1,)), idx((1,), (3,))], 1, 1)
    with pytest.raises(IndexSetError):
        IndexSet([idx((0,), (1,))], 1, 1)
    with pytest.raises(IndexSetError):
        IndexSet([idx((1, 1), (1,))], 1, 1)
    with pytest.raises(IndexSetError):
        IndexSet([idx((1, 1), (1,)), idx((2, 1), (1,))], 2, 1, spatial='diagonal')
    with pytest.raises(IndexSetError):
        IndexSet([idx((1,), (1,)), idx((2,), (1,))], 1, 1, spatial='fixed')


def test_index_set_neighbors():
    root = IndexSet([MultiIndex.root(1, 2)], 1, 2)
    assert root.frontier() == [idx((1,), (1, 2)), idx((1,), (2, 1)), idx((2,), (1, 1))]
    extended = root.extend([idx((2,), (1, 2))])
    assert len(extended) == 4
    assert extended.backward_neighbors(idx((2,), (1, 2))) == [idx((1,), (1, 2)), idx((2,), (1, 1))]
    assert idx((2,), (1, 2)) not in extended.frontier()

    union = extended.union(IndexSet([idx((1,), (1, 1)), idx((1,), (2, 1))], 1, 2))
    assert len(union) == 5
    with pytest.raises(IndexSetError):
        extended.union(IndexSet([idx((1,), (1, 1))], 1, 2, spatial='fixed'))


def test_downward_closure():
    closed = downward_closure([idx((2,), (2,))], 1, 1)
    assert set(closed) == {idx((1,), (1,)), idx((2,), (1,)), idx((1,), (2,)), idx((2,), (2,))}

    diagonal = downward_closure([idx((3, 3), (2,))], 2, 1, spatial='diagonal')
    assert len(diagonal) == 6
    assert all(index.alpha[0] == index.alpha[1] for index in diagonal)


def test_random_downward_closed_set():
    rng = np.random.default_rng(7)
    for spatial in ('full', 'diagonal'):
        index_set = random_downward_closed_set(rng, 2, 2, 12, spatial=spatial)
        assert len(index_set) == 12
        assert index_set.root == MultiIndex.root(2, 2)
    fixed = random_downward_closed_set(rng, 1, 2, 5, spatial='fixed', root=idx((3,), (1, 1)))
    assert {index.alpha for index in fixed} == {(3,)}


def test_text_format(tmp_path):
    index_set = apriori_set(14.0, RATES_1D)
    text = index_set.to_text()
    assert text.splitlines()[0] == '# D=1 N=1 spatial=full'
    assert text.splitlines()[1] == '1 1'
    assert IndexSet.from_text(text) == index_set

    path = tmp_path / 'set.txt'
    index_set.save(path)
    assert IndexSet.load(path) == index_set

    with pytest.raises(IndexSetError):
        IndexSet.from_text('1 1\n')
    with pytest.raises(IndexSetError):
        IndexSet.from_text('# D=1 N=1\n1 1 1\n')
    with pytest.raises(IndexSetError):
        IndexSet.from_text('# D=1 N=1\n1 1\n1 3\n')


def test_rate_model():
    assert RATES_3D.gammas == pytest.approx((LOG2,) * 3)
    assert RATES_3D.rs == pytest.approx((2 * LOG2,) * 3)
    assert RATES_3D.gamma_tilde == pytest.approx((1.0,) * 3)
    assert RATES_3D.D == 3 and RATES_3D.N == 2
    assert RateModel.from_dict(RATES_3D.to_dict()) == RATES_3D
    assert default_margin(RATES_1D) == pytest.approx(6 * LOG2)

    with pytest.raises(ValueError):
        RateModel.from_tilde(1.0, 2.0, [1.0])
    with pytest.raises(ValueError):
        RateModel([1.0], [1.0, 2.0], [1.0])
    with pytest.raises(ValueError):
        RateModel([1.0], [-1.0], [1.0])
    with pytest.raises(ValueError):
        RateModel.from_dict({'gamma_tilde': [1.0]})


def test_apriori_profit():
    root = MultiIndex.root(1, 1)
    assert apriori_profit_exponent(root, RATES_1D) == pytest.approx(4 * LOG2 + 2 * 2.4855)
    assert apriori_profit(root, RATES_1D) == pytest.approx(math.exp(-(4 * LOG2 + 2 * 2.4855)))
    # 收益指数在各方向上单调递增
    for v in spatial_directions(1, 1):
        assert apriori_profit_exponent(root.shift(v), RATES_1D) > apriori_profit_exponent(root, RATES_1D)
    with pytest.raises(ValueError):
        apriori_profit_exponent(MultiIndex.root(3, 1), RATES_1D)


def test_apriori_set():
    assert set(apriori_set(10.0, RATES_1D)) == {idx((1,), (1,)), idx((2,), (1,))}
    index_set = apriori_set(14.0, RATES_1D)
    assert set(index_set) == {
        idx((1,), (1,)), idx((2,), (1,)), idx((3,), (1,)), idx((4,), (1,)), idx((1,), (2,)),
    }
    for index in index_set:
        assert apriori_profit_exponent(index, RATES_1D) <= 14.0
    for index in index_set.frontier():
        assert apriori_profit_exponent(index, RATES_1D) > 14.0

    # 阈值增大时集合单调增长
    previous = set()
    for L in (19.0, 22.0, 25.0, 28.0):
        current = set(apriori_set(L, RATES_3D))
        assert previous <= current
        previous = current

    with pytest.raises(IndexSetError):
        apriori_set(7.0, RATES_1D)
    with pytest.raises(ValueError):
        apriori_set(10.0, RATES_1D, spatial='fixed')


def test_apriori_set_brute_force():
    rng = np.random.default_rng(13)
    for _ in range(10):
        D, N = int(rng.integers(1, 3)), int(rng.integers(1, 3))
        rates = RateModel.from_tilde(rng.uniform(1, 3, D).tolist(), rng.uniform(1, 3, D).tolist(),
                                     rng.uniform(0.5, 3, N).tolist())
        L = apriori_profit_exponent(MultiIndex.root(D, N), rates) + rng.uniform(0, 10)
        expected = set()
        for flat in itertools.product(range(1, 11), repeat=D + N):
            index = MultiIndex.from_flat(flat, D)
            if apriori_profit_exponent(index, rates) <= L:
                expected.add(index)
        assert set(apriori_set(L, rates)) == expected


def test_scc_set():
    assert set(scc_set(3, 1)) == {idx((1,), (1,)), idx((2,), (1,)), idx((1,), (2,))}
    assert len(scc_set(4, 1)) == 6
    assert len(scc_set(6, 2, 1)) == math.comb(6, 3)
    assert all(sum(index.flat) <= 7 for index in scc_set(7, 2, 3))
    with pytest.raises(IndexSetError):
        scc_set(1, 1)


def test_mlsc_set():
    index_set = mlsc_set(27.0, RATES_3D)
    assert index_set.spatial == 'diagonal'
    assert len(index_set) > 1
    assert all(len(set(index.alpha)) == 1 for index in index_set)
    assert {index.alpha for index in index_set} >= {(1, 1, 1), (2, 2, 2)}
    with pytest.raises(ValueError):
        mlsc_set(27.0, RATES_3D, 'aposteriori')
    with pytest.raises(ValueError):
        mlsc_set(27.0, RATES_3D, 'greedy')


def test_sgsc_sets():
    small, large = sgsc_sets((2,), [7.0, 12.0], RATES_1D)
    assert set(small) == {idx((2,), (1,))}
    assert set(large) == {idx((2,), (1,)), idx((2,), (2,))}
    assert large.spatial == 'fixed'
    # 阈值低于根指标时仅含根指标
    assert len(sgsc_sets((3,), [1.0], RATES_1D)[0]) == 1
    with pytest.raises(ValueError):
        sgsc_sets((0,), [7.0], RATES_1D)


def test_dantzig_select():
    candidates = [idx((1,), (1,)), idx((2,), (1,)), idx((1,), (2,)), idx((3,), (1,))]
    profits = {candidates[0]: 1.0, candidates[1]: 0.5, candidates[2]: 0.5, candidates[3]: 0.01}
    assert dantzig_select(candidates, profits.get, 0.1) == [candidates[0], candidates[2], candidates[1]]
    assert dantzig_select(candidates, profits.get, 0.0)[-1] == candidates[3]
    assert dantzig_select(candidates, profits.get, 2.0) == []
