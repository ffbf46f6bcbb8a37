# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-09 14:18
@Description : 速率模型与各类多指标集的构造：先验/后验 MISC、SCC、MLSC、SGSC
@FileName    : set_builder
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import typing as t

from .multi_index import IndexSet, IndexSetError, MultiIndex, downward_closure, spatial_directions

if t.TYPE_CHECKING:
    from miscol.tools.estimator import MiscEstimator

__all__ = [
    'LOG2',
    'RateModel',
    'spatial_exponent',
    'stochastic_exponent',
    'apriori_profit_exponent',
    'apriori_profit',
    'default_margin',
    'apriori_set',
    'aposteriori_set',
    'scc_set',
    'mlsc_set',
    'sgsc_sets',
    'dantzig_select',
]

LOG2 = math.log(2.0)


class RateModel:
    """
    速率模型：γ_i = γ̃_i·log2，r_i = r̃_i·log2，g_j，δ = log2

    ΔW_{α,β} ≤ C_work·e^{Σ γ_i α_i}·e^{δ|β|}，
    ΔE_{α,β} ≤ C_error·e^{-Σ r_i α_i}·e^{-Σ g_j e^{δ β_j}}。
    """

    def __init__(
            self,
            gammas: t.Sequence[float],
            rs: t.Sequence[float],
            gs: t.Sequence[float],
            *,
            C_work: float = 1.0,
            C_error: float = 1.0,
    ):
        """
        :param gammas: 空间工作量速率 γ_i
        :param rs: 空间误差速率 r_i
        :param gs: 随机误差速率 g_j
        :param C_work: 工作量常数
        :param C_error: 误差常数
        """
        self._gammas = tuple(float(v) for v in gammas)
        self._rs = tuple(float(v) for v in rs)
        self._gs = tuple(float(v) for v in gs)
        if not self._gammas or len(self._gammas) != len(self._rs):
            raise ValueError('γ 与 r 的个数必须相同且不为零')
        if not self._gs:
            raise ValueError('g 不能为空')
        if min(self._gammas + self._rs + self._gs) <= 0:
            raise ValueError('所有速率必须为正数')
        if C_work <= 0 or C_error <= 0:
            raise ValueError('常数 C_work、C_error 必须为正数')
        self._C_work = float(C_work)
        self._C_error = float(C_error)

    @classmethod
    def from_tilde(
            cls,
            gamma_tilde: t.Union[float, t.Sequence[float]],
            r_tilde: t.Union[float, t.Sequence[float]],
            gs: t.Sequence[float],
            *,
            D: t.Optional[int] = None,
            C_work: float = 1.0,
            C_error: float = 1.0,
    ) -> 'RateModel':
        """
        由 γ̃、r̃ 构造速率模型，标量将广播到 D 个方向

        :param gamma_tilde: γ̃_i，默认取 ϑ
        :param r_tilde: r̃_i
        :param gs: g_j
        :param D: 空间维数，γ̃、r̃ 为标量时必须提供
        """
        def expand(value):
            if isinstance(value, (int, float)):
                if D is None:
                    raise ValueError('γ̃、r̃ 为标量时必须提供 D')
                return [float(value)] * D
            return [float(v) for v in value]

        gammas = [v * LOG2 for v in expand(gamma_tilde)]
        rs = [v * LOG2 for v in expand(r_tilde)]
        return cls(gammas, rs, gs, C_work=C_work, C_error=C_error)

    @property
    def gammas(self) -> t.Tuple[float, ...]:
        return self._gammas

    @property
    def rs(self) -> t.Tuple[float, ...]:
        return self._rs

    @property
    def gs(self) -> t.Tuple[float, ...]:
        return self._gs

    @property
    def delta(self) -> float:
        return LOG2

    @property
    def C_work(self) -> float:
        return self._C_work

    @property
    def C_error(self) -> float:
        return self._C_error

    @property
    def D(self) -> int:
        return len(self._gammas)

    @property
    def N(self) -> int:
        return len(self._gs)

    @property
    def gamma_tilde(self) -> t.Tuple[float, ...]:
        return tuple(v / LOG2 for v in self._gammas)

    @property
    def r_tilde(self) -> t.Tuple[float, ...]:
        return tuple(v / LOG2 for v in self._rs)

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {
            'gamma_tilde': list(self.gamma_tilde),
            'r_tilde': list(self.r_tilde),
            'g': list(self._gs),
            'C_work': self._C_work,
            'C_error': self._C_error,
        }

    @classmethod
    def from_dict(cls, data: t.Mapping[str, t.Any]) -> 'RateModel':
        try:
            return cls.from_tilde(
                data['gamma_tilde'], data['r_tilde'], data['g'],
                D=data.get('D'), C_work=data.get('C_work', 1.0), C_error=data.get('C_error', 1.0),
            )
        except KeyError as e:
            raise ValueError('速率模型缺少字段：%s' % e)

    def __eq__(self, other):
        if not isinstance(other, RateModel):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'RateModel(γ̃=%s, r̃=%s, g=%s)' % (
            [round(v, 6) for v in self.gamma_tilde], [round(v, 6) for v in self.r_tilde], list(self._gs))


def spatial_exponent(alpha: t.Sequence[int], rates: RateModel) -> float:
    """Σ (r_i + γ_i)·α_i"""
    return math.fsum((r + g) * a for r, g, a in zip(rates.rs, rates.gammas, alpha))


def stochastic_exponent(beta: t.Sequence[int], rates: RateModel) -> float:
    """Σ (δ·β_j + g_j·e^{δ·β_j})"""
    delta = rates.delta
    return math.fsum(delta * b + g * math.exp(delta * b) for g, b in zip(rates.gs, beta))


def apriori_profit_exponent(idx: MultiIndex, rates: RateModel) -> float:
    """
    先验收益指数 Σ(r_i+γ_i)α_i + Σ(δβ_j + g_j e^{δβ_j})，在各分量上单调递增

    :param idx: 多指标
    :param rates: 速率模型
    """
    if idx.D != rates.D or idx.N != rates.N:
        raise ValueError('多指标的维数与速率模型不一致')
    return spatial_exponent(idx.alpha, rates) + stochastic_exponent(idx.beta, rates)


def apriori_profit(idx: MultiIndex, rates: RateModel) -> float:
    """先验收益 ΔE/ΔW = (C_error/C_work)·e^{-exponent}"""
    return rates.C_error / rates.C_work * math.exp(-apriori_profit_exponent(idx, rates))


def default_margin(rates: RateModel) -> float:
    """搜索缓冲与参考解的默认阈值增量 2·max(r_i + γ_i)"""
    return 2.0 * max(r + g for r, g in zip(rates.rs, rates.gammas))


def _build_set(
        root: MultiIndex,
        exponent: t.Callable[[MultiIndex], float],
        L: float,
        spatial: str,
) -> IndexSet:
    """从根指标出发沿方向族展开，保留 exponent ≤ L 的多指标，已访问的指标不再重复展开"""
    directions = spatial_directions(root.D, root.N, spatial)
    members = set()
    visited = {root}
    stack = [root]
    while stack:
        idx = stack.pop()
        members.add(idx)
        for v in directions:
            nxt = idx.shift(v)
            if nxt not in visited:
                visited.add(nxt)
                if exponent(nxt) <= L:
                    stack.append(nxt)
    return IndexSet(members, root.D, root.N, spatial=spatial)


def apriori_set(L: float, rates: RateModel, *, spatial: str = 'full') -> IndexSet:
    """
    先验拟最优集 𝓘(L) = {[α,β] : exponent([α,β]) ≤ L}

    :param L: 阈值 L = -log ε
    :param rates: 速率模型
    :param spatial: 方向族，full 或 diagonal
    """
    if spatial not in ('full', 'diagonal'):
        raise ValueError('先验集的方向族只能是 full 或 diagonal')
    root = MultiIndex.root(rates.D, rates.N)
    bound = apriori_profit_exponent(root, rates)
    if bound > L:
        raise IndexSetError('L=%.6g 小于根指标的收益指数 %.6g，集合为空' % (L, bound))
    return _build_set(root, lambda idx: apriori_profit_exponent(idx, rates), L, spatial)


def aposteriori_set(
        epsilon: float,
        search_buffer: IndexSet,
        estimator: 'MiscEstimator',
        rates: RateModel,
) -> IndexSet:
    """
    后验集：在搜索缓冲内选出 |Δ[F]|/ΔW_model ≥ ε 的多指标，再补齐向下封闭性

    :param epsilon: 收益阈值 ε
    :param search_buffer: 向下封闭的搜索缓冲，通常为更大 L 下的先验集
    :param estimator: 计算 |Δ[F]| 的估计器
    :param rates: 速率模型
    """
    if epsilon < 0:
        raise ValueError('ε 不能为负数：%r' % (epsilon,))
    contributions = estimator.contributions(search_buffer, rates)
    selected = {idx for idx, c in contributions.items() if c.profit >= epsilon}
    selected.add(search_buffer.root)
    return downward_closure(selected, search_buffer.D, search_buffer.N, spatial=search_buffer.spatial)


def scc_set(w: int, N: int, D: int = 1) -> IndexSet:
    """
    稀疏组合配点（SCC）集：Σα_i + Σβ_n ≤ w

    :param w: 总阶数
    :param N: 随机维数
    :param D: 空间维数
    """
    if w < D + N:
        raise IndexSetError('w=%d 小于 D+N=%d，集合为空' % (w, D + N))
    return _build_set(MultiIndex.root(D, N), lambda idx: sum(idx.flat), w, 'full')


def mlsc_set(
        threshold: float,
        rates: RateModel,
        mode: t.Literal['apriori', 'aposteriori'] = 'apriori',
        *,
        estimator: t.Optional['MiscEstimator'] = None,
        buffer_margin: t.Optional[float] = None,
) -> IndexSet:
    """
    多层随机配点（MLSC）集：限制 α_1 = … = α_D 的对角空间层级，返回完整维数的多指标集

    对角层级 ℓ 的收益指数取各方向指数之和 Σ_i (r_i+γ_i)·ℓ 加随机部分。

    :param threshold: 阈值 L，后验模式下 ε = e^{-L}
    :param rates: 速率模型
    :param mode: apriori 或 aposteriori
    :param estimator: 后验模式所需的估计器
    :param buffer_margin: 后验模式的搜索缓冲增量，默认 2·max(r_i+γ_i)
    """
    if mode == 'apriori':
        return apriori_set(threshold, rates, spatial='diagonal')
    if mode != 'aposteriori':
        raise ValueError('模式无效，可选值：apriori / aposteriori')
    if estimator is None:
        raise ValueError('后验模式需要提供估计器')
    margin = default_margin(rates) if buffer_margin is None else buffer_margin
    buffer = apriori_set(threshold + margin, rates, spatial='diagonal')
    return aposteriori_set(math.exp(-threshold), buffer, estimator, rates)


def sgsc_sets(
        alpha_fixed: t.Sequence[int],
        thresholds: t.Sequence[float],
        rates: RateModel,
) -> t.List[IndexSet]:
    """
    固定空间层级的单层稀疏网格随机配点（SGSC）集

    每个阈值 L 对应 {(α_fixed; β) : Σ(δβ_j + g_j e^{δβ_j}) ≤ L}，阈值低于根指标时仅含根指标。

    :param alpha_fixed: 固定的空间层级
    :param thresholds: 随机部分的阈值列表
    :param rates: 速率模型
    """
    alpha_fixed = tuple(int(a) for a in alpha_fixed)
    if len(alpha_fixed) != rates.D or min(alpha_fixed) < 1:
        raise ValueError('固定空间层级不合法：%s' % (alpha_fixed,))
    root = MultiIndex(alpha_fixed, (1,) * rates.N)
    return [
        _build_set(root, lambda idx: stochastic_exponent(idx.beta, rates), L, 'fixed')
        for L in thresholds
    ]


def dantzig_select(
        candidates: t.Iterable[MultiIndex],
        profit: t.Callable[[MultiIndex], float],
        epsilon: float,
) -> t.List[MultiIndex]:
    """
    按收益降序排列候选多指标（收益相同时按字典序），截取收益 ≥ ε 的部分

    :param candidates: 候选多指标
    :param profit: 收益函数
    :param epsilon: 收益阈值
    :return: 贪心选择的顺序
    """
    ranked = sorted(((profit(idx), idx) for idx in candidates), key=lambda item: (-item[0], item[1]))
    return [idx for value, idx in ranked if value >= epsilon]
