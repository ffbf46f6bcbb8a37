# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-12 09:47
@Description : 复杂度参数 Ξ、χ、ζ、𝔷，给定工作量预算下的阈值 L 以及预测误差曲线
@FileName    : complexity
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import typing as t

from miscol.tools.index import RateModel

__all__ = [
    'BudgetTooSmallError',
    'ComplexityParams',
    'complexity_params',
    'level_for_budget',
    'predicted_error',
]


class BudgetTooSmallError(ValueError):
    """工作量预算不足以进入渐近区间"""

    def __init__(self, message: str, bound: float):
        super().__init__(message, bound)
        self.message = message
        self.bound = bound

    def __str__(self):
        return self.message


class ComplexityParams(t.NamedTuple):
    Xi: t.Tuple[float, ...]
    chi: float
    zeta: float
    zfrak: int
    C_W: float = 1.0


def complexity_params(rates: RateModel, C_W: float = 1.0) -> ComplexityParams:
    """
    Ξ_i = γ_i/(γ_i+r_i)，χ = max(Ξ)，ζ = min r_i/γ_i，𝔷 = #{i : r_i/γ_i = ζ}

    :param rates: 速率模型
    :param C_W: 工作量常数 𝒞_W
    """
    if C_W <= 0:
        raise ValueError('𝒞_W 必须为正数：%r' % (C_W,))
    Xi = tuple(g / (g + r) for g, r in zip(rates.gammas, rates.rs))
    ratios = [r / g for g, r in zip(rates.gammas, rates.rs)]
    zeta = min(ratios)
    zfrak = sum(1 for v in ratios if math.isclose(v, zeta, rel_tol=1e-12))
    return ComplexityParams(Xi, max(Xi), zeta, zfrak, float(C_W))


def level_for_budget(W_max: float, params: ComplexityParams) -> float:
    """
    L(W) = (1/χ)·(log(W/𝒞_W) - (𝔷-1)·log((1/χ)·log(W/𝒞_W)))

    :param W_max: 工作量预算，须 ≥ 𝒞_W·e^χ
    :param params: 复杂度参数
    """
    bound = params.C_W * math.exp(params.chi)
    if W_max < bound:
        raise BudgetTooSmallError('工作量预算 %.6g 低于下限 𝒞_W·e^χ = %.6g' % (W_max, bound), bound)
    log_w = math.log(W_max / params.C_W)
    L = (log_w - (params.zfrak - 1) * math.log(log_w / params.chi)) / params.chi
    if L <= 0:
        raise BudgetTooSmallError('工作量预算 %.6g 仍处于预渐近区间，得到 L=%.6g ≤ 0' % (W_max, L), bound)
    return L


def predicted_error(W: float, params: ComplexityParams) -> float:
    """
    误差曲线形状 W^{-ζ}·(log W)^{(ζ+1)(𝔷-1)}，不含常数 𝒞_E

    :param W: 工作量，须 > 1
    :param params: 复杂度参数
    """
    if W <= 1:
        raise ValueError('工作量必须大于 1：%r' % (W,))
    return W ** -params.zeta * math.log(W) ** ((params.zeta + 1) * (params.zfrak - 1))
