# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-04 14:02
@Description : 对数均匀随机扩散系数、三角模态以及高斯加权的关注量
@FileName    : random_field
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import typing as t

import numpy as np

__all__ = [
    'MODE_TABLE_3D',
    'FieldSpec',
    'QoISpec',
    'phi',
    'psi',
    'diffusion',
    'qoi_weight',
]

# d=3 时 ψ_n(x) = φ_i(x1)·φ_j(x2)·φ_k(x3) 的 (i, j, k)，n = 1..10
MODE_TABLE_3D: t.Tuple[t.Tuple[int, int, int], ...] = (
    (1, 1, 1),
    (2, 1, 1),
    (1, 2, 1),
    (1, 1, 2),
    (3, 1, 1),
    (2, 2, 1),
    (2, 1, 2),
    (1, 3, 1),
    (1, 2, 2),
    (1, 1, 3),
)

ArrayLike = t.Union[float, t.Sequence[float], np.ndarray]


class FieldSpec:
    """随机扩散系数 a(x, y) = exp(Σ λ_n ψ_n(x) y_n) 的描述，λ_n = √3·e^{-n}"""

    def __init__(
            self,
            d: int = 1,
            N: int = 1,
            *,
            mode_table: t.Optional[t.Sequence[t.Sequence[int]]] = None,
    ):
        """
        :param d: 空间维数，1 或 3
        :param N: 随机变量个数
        :param mode_table: d=3 时的模态表，默认使用内置的 10 项模态表
        """
        if d not in (1, 3):
            raise ValueError('空间维数仅支持 1 或 3：%r' % (d,))
        if N < 1:
            raise ValueError('随机变量个数必须为正整数：%r' % (N,))

        self._d = d
        self._N = N
        self._mode_table = None
        if d == 3:
            table = tuple(tuple(int(v) for v in row) for row in (mode_table or MODE_TABLE_3D))
            if any(len(row) != 3 or min(row) < 1 for row in table):
                raise ValueError('模态表的每一行必须是三个正整数')
            if N > len(table):
                raise ValueError('d=3 时模态表仅定义了 %d 个模态，无法支持 N=%d' % (len(table), N))
            self._mode_table = table[:N]
        self._lambdas = np.sqrt(3.0) * np.exp(-np.arange(1, N + 1, dtype=float))
        self._lambdas.setflags(write=False)

    @property
    def d(self) -> int:
        return self._d

    @property
    def N(self) -> int:
        return self._N

    @property
    def lambdas(self) -> np.ndarray:
        return self._lambdas

    @property
    def mode_table(self) -> t.Optional[t.Tuple[t.Tuple[int, int, int], ...]]:
        return self._mode_table

    @property
    def a_min(self) -> float:
        return math.exp(-float(np.sum(self._lambdas)))

    @property
    def a_max(self) -> float:
        return math.exp(float(np.sum(self._lambdas)))

    def modes(self, x: np.ndarray) -> np.ndarray:
        """
        计算 ψ_1..ψ_N 在一组点上的取值

        :param x: 形如 (..., d) 的坐标数组（d=1 时也可为 (...,)）
        :return: 形如 (N, ...) 的模态值
        """
        return np.stack([psi(n, x, self._d, self._mode_table) for n in range(1, self._N + 1)])

    def to_dict(self) -> t.Dict[str, t.Any]:
        data = {'d': self._d, 'N': self._N}
        if self._mode_table is not None:
            data['modes'] = [list(row) for row in self._mode_table]
        return data

    def __repr__(self):
        return 'FieldSpec(d=%d, N=%d)' % (self._d, self._N)


class QoISpec:
    """关注量 F(y) = ∫ u(x, y) Q(x) dx 中的高斯核 Q 的描述"""

    def __init__(
            self,
            d: int = 1,
            *,
            sigma: float = 0.16,
            x0: t.Optional[ArrayLike] = None,
    ):
        """
        :param d: 空间维数
        :param sigma: 高斯核宽度
        :param x0: 高斯核中心，默认 d=1 时为 0.3，d=3 时为 [0.3, 0.2, 0.6]
        """
        if sigma <= 0:
            raise ValueError('sigma 必须为正数：%r' % (sigma,))
        if x0 is None:
            x0 = [0.3] if d == 1 else [0.3, 0.2, 0.6][:d] if d <= 3 else [0.5] * d
        x0 = np.atleast_1d(np.asarray(x0, dtype=float))
        if x0.shape != (d,):
            raise ValueError('x0 的维数与空间维数不一致')
        if np.any(x0 <= 0) or np.any(x0 >= 1):
            raise ValueError('x0 必须严格位于 (0, 1)^d 内部')
        x0.setflags(write=False)
        self._d = d
        self._sigma = float(sigma)
        self._x0 = x0

    @property
    def d(self) -> int:
        return self._d

    @property
    def sigma(self) -> float:
        return self._sigma

    @property
    def x0(self) -> np.ndarray:
        return self._x0

    def to_dict(self) -> t.Dict[str, t.Any]:
        return {'sigma': self._sigma, 'x0': [float(v) for v in self._x0]}

    def __repr__(self):
        return 'QoISpec(d=%d, sigma=%r, x0=%s)' % (self._d, self._sigma, list(self._x0))


def phi(n: int, x: ArrayLike) -> np.ndarray:
    """
    一维三角模态：n 为偶数时 sin(nπx/2)，n 为奇数时 cos((n-1)πx/2)

    :param n: 模态编号，n ≥ 1
    :param x: 坐标
    """
    if n < 1:
        raise ValueError('模态编号必须为正整数：%r' % (n,))
    x = np.asarray(x, dtype=float)
    if n % 2 == 0:
        return np.sin(n / 2 * np.pi * x)
    return np.cos((n - 1) / 2 * np.pi * x)


def psi(
        n: int,
        x: ArrayLike,
        d: int = 1,
        mode_table: t.Optional[t.Sequence[t.Sequence[int]]] = None,
) -> np.ndarray:
    """
    空间模态 ψ_n：d=1 时为 φ_n(x)，d=3 时按模态表取 φ_i(x1)·φ_j(x2)·φ_k(x3)

    :param n: 模态编号
    :param x: d=1 时为坐标数组，d=3 时为形如 (..., 3) 的坐标数组
    :param d: 空间维数
    :param mode_table: d=3 时的模态表
    """
    if d == 1:
        x = np.asarray(x, dtype=float)
        if x.ndim and x.shape[-1:] == (1,):
            x = x[..., 0]
        return phi(n, x)
    if d != 3:
        raise ValueError('空间维数仅支持 1 或 3：%r' % (d,))
    table = mode_table or MODE_TABLE_3D
    if not 1 <= n <= len(table):
        raise ValueError('d=3 时模态编号超出模态表范围：%r' % (n,))
    x = np.asarray(x, dtype=float)
    i, j, k = table[n - 1]
    return phi(i, x[..., 0]) * phi(j, x[..., 1]) * phi(k, x[..., 2])


def diffusion(spec: FieldSpec, x: ArrayLike, y: ArrayLike) -> np.ndarray:
    """
    扩散系数 a(x, y) = exp(Σ_n λ_n ψ_n(x) y_n)

    :param spec: 随机场描述
    :param x: 坐标（d=1 时为标量或数组，d=3 时为 (..., 3) 数组）
    :param y: 参数点，长度 N，分量位于 [-1, 1]
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (spec.N,):
        raise ValueError('参数点的维数与 N 不一致')
    if np.any(np.abs(y) > 1.0):
        raise ValueError('参数点的分量必须位于 [-1, 1]')
    modes = spec.modes(np.asarray(x, dtype=float))
    return np.exp(np.tensordot(spec.lambdas * y, modes, axes=1))


def qoi_weight(spec: QoISpec, x: ArrayLike) -> np.ndarray:
    """
    高斯核 Q(x) = exp(-‖x - x0‖² / (2σ²)) / (σ√(2π))^d

    :param spec: 关注量描述
    :param x: 形如 (..., d) 的坐标数组（d=1 时也可为标量或 (...,)）
    """
    x = np.asarray(x, dtype=float)
    if spec.d == 1 and (x.ndim == 0 or x.shape[-1] != 1):
        x = x[..., np.newaxis]
    squared = np.sum((x - spec.x0) ** 2, axis=-1)
    scale = (spec.sigma * math.sqrt(2.0 * math.pi)) ** spec.d
    return np.exp(-squared / (2.0 * spec.sigma ** 2)) / scale
