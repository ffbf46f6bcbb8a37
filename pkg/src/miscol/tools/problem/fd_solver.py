# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-05 10:16
@Description : [0,1]^d 上 -div(a∇u)=𝓕 的各向异性张量有限差分离散、线性求解与离散关注量
@FileName    : fd_solver
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import typing as t

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from miscol.basic import Logger
from .random_field import FieldSpec, QoISpec, diffusion, qoi_weight

__all__ = [
    'DEFAULT_DOF_CAP',
    'GridError',
    'DofCapExceededError',
    'SolverDivergedError',
    'Grid',
    'LinearSystem',
    'DiscreteSolution',
    'WorkTally',
    'grid_dof',
    'build_grid',
    'assemble',
    'assemble_from_coefficient',
    'assemble_system',
    'solve',
    'evaluate_qoi',
    'work_of_solve',
    'FiniteDifferenceEvaluator',
]

DEFAULT_DOF_CAP = 2 ** 17

PointFunction = t.Callable[[np.ndarray], np.ndarray]


class GridError(ValueError):
    """网格参数不合法"""


class DofCapExceededError(ValueError):
    """线性系统规模超过自由度上限"""

    def __init__(self, alpha: t.Tuple[int, ...], dof: int, cap: int):
        super().__init__(alpha, dof, cap)
        self.alpha = tuple(alpha)
        self.dof = dof
        self.cap = cap

    def __str__(self):
        return '空间层级 α=%s 的自由度 %d 超过上限 %d，请缩小问题规模（降低阈值或空间维数）或调大 solver.dof_cap' % (
            self.alpha, self.dof, self.cap)


class SolverDivergedError(RuntimeError):
    """Krylov 迭代在迭代上限内未收敛"""

    def __init__(self, residual: float, iterations: int):
        super().__init__(residual, iterations)
        self.residual = residual
        self.iterations = iterations

    def __str__(self):
        return '线性求解未收敛：迭代 %d 次后相对残差为 %.3e' % (self.iterations, self.residual)


class Grid(t.NamedTuple):
    """空间层级 α 对应的内部节点网格，h_i = h0·2^{-α_i}"""
    alpha: t.Tuple[int, ...]
    h0: float
    h: t.Tuple[float, ...]
    coords: t.Tuple[np.ndarray, ...]

    @property
    def shape(self) -> t.Tuple[int, ...]:
        return tuple(len(c) for c in self.coords)

    @property
    def dof(self) -> int:
        return math.prod(self.shape)

    @property
    def d(self) -> int:
        return len(self.alpha)


class LinearSystem(t.NamedTuple):
    matrix: scipy.sparse.csr_matrix
    rhs: np.ndarray
    grid: Grid


class DiscreteSolution(t.NamedTuple):
    values: np.ndarray
    grid: Grid
    iterations: int = 0
    residual: float = 0.0


class WorkTally(t.NamedTuple):
    dof: int
    solver_iterations: int
    model_work: float


def _inverse_h0(h0: float) -> int:
    inverse = 1.0 / h0
    rounded = round(inverse)
    if h0 <= 0 or rounded < 1 or abs(inverse - rounded) > 1e-9 * max(1.0, inverse):
        raise GridError('1/h0 必须为正整数：h0=%r' % (h0,))
    return int(rounded)


def grid_dof(alpha: t.Sequence[int], h0: float) -> int:
    """网格自由度 ∏ (1/h_i - 1)"""
    inverse = _inverse_h0(h0)
    return math.prod(inverse * 2 ** int(a) - 1 for a in alpha)


def build_grid(alpha: t.Sequence[int], h0: float) -> Grid:
    """
    构造空间层级 α 的内部节点网格，第 i 个方向的节点为 x_i^k = k·h_i, k = 1..n_i

    :param alpha: 空间层级，各分量 ≥ 1
    :param h0: 基准网格尺寸，1/h0 须为整数
    """
    alpha = tuple(int(a) for a in alpha)
    if not alpha or min(alpha) < 1:
        raise GridError('空间层级的各分量必须 ≥ 1：%s' % (alpha,))
    inverse = _inverse_h0(h0)
    cells = tuple(inverse * 2 ** a for a in alpha)
    h = tuple(1.0 / c for c in cells)
    coords = tuple(np.arange(1, c, dtype=float) / c for c in cells)
    return Grid(alpha, float(h0), h, coords)


def _mesh(coords: t.Sequence[np.ndarray]) -> np.ndarray:
    return np.stack(np.meshgrid(*coords, indexing='ij'), axis=-1)


def _face_coords(grid: Grid, axis: int) -> t.List[np.ndarray]:
    # 沿 axis 方向取半点 (k+1/2)·h，k = 0..n，其余方向取内部节点
    coords = list(grid.coords)
    n = len(coords[axis])
    coords[axis] = (np.arange(n + 1, dtype=float) + 0.5) * grid.h[axis]
    return coords


def assemble_system(
        grid: Grid,
        face_coefficients: t.Sequence[np.ndarray],
        rhs_values: np.ndarray,
) -> LinearSystem:
    """
    以守恒型二阶格式组装线性系统，沿第 i 个方向的通量使用半点处的系数

    :param grid: 网格
    :param face_coefficients: 每个方向上半点处的系数，沿该方向长度为 n_i+1
    :param rhs_values: 内部节点处的右端项
    """
    shape = grid.shape
    index = np.arange(grid.dof).reshape(shape)
    diagonal = np.zeros(shape)
    rows, cols, values = [], [], []

    for axis, coefficient in enumerate(face_coefficients):
        n = shape[axis]
        if coefficient.shape[axis] != n + 1:
            raise ValueError('第 %d 个方向的半点系数长度应为 %d' % (axis, n + 1))
        inv_h2 = 1.0 / grid.h[axis] ** 2
        lower = np.take(coefficient, range(0, n), axis=axis)
        upper = np.take(coefficient, range(1, n + 1), axis=axis)
        diagonal += (lower + upper) * inv_h2
        if n < 2:
            continue
        inner = -np.take(coefficient, range(1, n), axis=axis).ravel() * inv_h2
        left = np.take(index, range(0, n - 1), axis=axis).ravel()
        right = np.take(index, range(1, n), axis=axis).ravel()
        rows.extend((left, right))
        cols.extend((right, left))
        values.extend((inner, inner))

    rows.append(index.ravel())
    cols.append(index.ravel())
    values.append(diagonal.ravel())
    matrix = scipy.sparse.coo_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
        shape=(grid.dof, grid.dof),
    ).tocsr()
    return LinearSystem(matrix, np.asarray(rhs_values, dtype=float).ravel(), grid)


def _rhs(grid: Grid, forcing: t.Optional[PointFunction]) -> np.ndarray:
    if forcing is None:
        return np.ones(grid.shape)
    return np.broadcast_to(forcing(_mesh(grid.coords)), grid.shape)


def assemble_from_coefficient(
        coefficient: PointFunction,
        grid: Grid,
        forcing: t.Optional[PointFunction] = None,
) -> LinearSystem:
    """
    以任意系数函数组装线性系统

    :param coefficient: 扩散系数 a(x)，输入形如 (..., d) 的坐标
    :param grid: 网格
    :param forcing: 右端项 𝓕(x)，默认恒为 1
    """
    faces = []
    for axis in range(grid.d):
        face_coords = _face_coords(grid, axis)
        shape = tuple(len(c) for c in face_coords)
        faces.append(np.broadcast_to(coefficient(_mesh(face_coords)), shape))
    return assemble_system(grid, faces, _rhs(grid, forcing))


def assemble(
        field: FieldSpec,
        y: t.Sequence[float],
        grid: Grid,
        forcing: t.Optional[PointFunction] = None,
) -> LinearSystem:
    """
    组装 -div(a(·, y)∇u) = 𝓕 的线性系统，齐次 Dirichlet 边界行已消去

    :param field: 随机场描述
    :param y: 参数点
    :param grid: 网格
    :param forcing: 右端项，默认恒为 1
    """
    if field.d != grid.d:
        raise ValueError('随机场维数与网格维数不一致')
    return assemble_from_coefficient(lambda x: diffusion(field, x, y), grid, forcing)


def solve(
        system: LinearSystem,
        tol: float = 1e-10,
        *,
        method: t.Literal['cg', 'direct'] = 'cg',
        maxiter: t.Optional[int] = None,
) -> DiscreteSolution:
    """
    求解对称正定线性系统

    :param system: 线性系统
    :param tol: 相对残差容差 ‖r‖ ≤ tol·‖b‖
    :param method: cg 为共轭梯度法，direct 为稀疏直接分解
    :param maxiter: 迭代上限，默认 10·dof
    """
    matrix, rhs, grid = system
    rhs_norm = float(np.linalg.norm(rhs))
    iterations = 0

    if rhs_norm == 0.0:
        values = np.zeros_like(rhs)
    elif method == 'direct':
        values = scipy.sparse.linalg.spsolve(matrix.tocsc(), rhs)
    elif method == 'cg':
        counter = [0]

        def callback(_):
            counter[0] += 1

        maxiter = maxiter or 10 * grid.dof
        values, info = scipy.sparse.linalg.cg(matrix, rhs, rtol=tol, atol=0.0, maxiter=maxiter, callback=callback)
        iterations = counter[0]
        if info != 0:
            residual = float(np.linalg.norm(rhs - matrix @ values)) / rhs_norm
            raise SolverDivergedError(residual, iterations)
    else:
        raise ValueError('未知的求解方法：%r' % (method,))

    residual = float(np.linalg.norm(rhs - matrix @ values)) / rhs_norm if rhs_norm else 0.0
    return DiscreteSolution(np.asarray(values).reshape(grid.shape), grid, iterations, residual)


def _qoi_values(grid: Grid, qoi: QoISpec) -> np.ndarray:
    return qoi_weight(qoi, _mesh(grid.coords))


def _integrate(values: np.ndarray, weights: np.ndarray, h: t.Sequence[float]) -> float:
    # 边界值为零的张量梯形公式
    return float(np.sum(values * weights)) * math.prod(h)


def evaluate_qoi(solution: DiscreteSolution, qoi: QoISpec) -> float:
    """
    离散关注量 F^α(y) ≈ ∫ u_h Q dx，采用边界值为零的张量梯形公式

    :param solution: 离散解
    :param qoi: 关注量描述
    """
    return _integrate(solution.values, _qoi_values(solution.grid, qoi), solution.grid.h)


def work_of_solve(grid: Grid, theta: float = 1.0, iterations: int = 0) -> WorkTally:
    """
    单次求解的工作量：自由度 ∏(1/h_i - 1) 与模型工作量 ∏ h_i^{-ϑ}

    :param grid: 网格
    :param theta: 工作量指数 ϑ
    :param iterations: 实际迭代次数
    """
    if theta <= 0:
        raise ValueError('ϑ 必须为正数：%r' % (theta,))
    return WorkTally(grid.dof, iterations, math.prod(h ** -theta for h in grid.h))


class FiniteDifferenceEvaluator:
    """
    计算 F^α(y) 的求值器，供 MISC 估计器调用

    模态 ψ_n 在每个 α 的半点网格上只计算一次，不同 y 之间复用。
    """

    def __init__(
            self,
            field: FieldSpec,
            qoi: QoISpec,
            h0: float = 1.0 / 3.0,
            *,
            tol: float = 1e-10,
            method: t.Literal['auto', 'cg', 'direct'] = 'auto',
            dof_cap: t.Optional[int] = DEFAULT_DOF_CAP,
            logger: t.Optional[Logger] = None,
    ):
        """
        :param field: 随机场描述
        :param qoi: 关注量描述
        :param h0: 基准网格尺寸
        :param tol: 线性求解的相对容差
        :param method: 线性求解方法，auto 表示 d=1 时直接分解，其余共轭梯度
        :param dof_cap: 自由度上限，None 表示不限制
        :param logger: 日志类
        """
        if field.d != qoi.d:
            raise ValueError('随机场与关注量的空间维数不一致')
        _inverse_h0(h0)
        if method not in ('auto', 'cg', 'direct'):
            raise ValueError('未知的求解方法：%r' % (method,))

        self._field = field
        self._qoi = qoi
        self._h0 = float(h0)
        self._tol = tol
        self._method = ('direct' if field.d == 1 else 'cg') if method == 'auto' else method
        self._dof_cap = dof_cap
        self._logger = logger or Logger('FiniteDifferenceEvaluator')
        self._cache = {}

    def __getstate__(self):
        state = self.__dict__.copy()
        state['_cache'] = {}
        return state

    @property
    def field(self) -> FieldSpec:
        return self._field

    @property
    def qoi(self) -> QoISpec:
        return self._qoi

    @property
    def h0(self) -> float:
        return self._h0

    @property
    def D(self) -> int:
        return self._field.d

    @property
    def N(self) -> int:
        return self._field.N

    @property
    def method(self) -> str:
        return self._method

    @property
    def dof_cap(self) -> t.Optional[int]:
        return self._dof_cap

    def dof(self, alpha: t.Sequence[int]) -> int:
        return grid_dof(alpha, self._h0)

    def check_level(self, alpha: t.Sequence[int]):
        """检查空间层级是否超过自由度上限"""
        dof = self.dof(alpha)
        if self._dof_cap is not None and dof > self._dof_cap:
            raise DofCapExceededError(tuple(alpha), dof, self._dof_cap)

    def _prepare(self, alpha: t.Tuple[int, ...]):
        prepared = self._cache.get(alpha)
        if prepared is None:
            grid = build_grid(alpha, self._h0)
            modes = [self._field.modes(_mesh(_face_coords(grid, axis))) for axis in range(grid.d)]
            prepared = grid, modes, _qoi_values(grid, self._qoi)
            self._cache[alpha] = prepared
        return prepared

    def __call__(self, alpha: t.Sequence[int], y: t.Sequence[float]) -> float:
        alpha = tuple(int(a) for a in alpha)
        self.check_level(alpha)
        grid, modes, q_values = self._prepare(alpha)

        weights = self._field.lambdas * np.asarray(y, dtype=float)
        faces = [np.exp(np.tensordot(weights, m, axes=1)) for m in modes]
        system = assemble_system(grid, faces, np.ones(grid.shape))
        solution = solve(system, self._tol, method=self._method)
        value = _integrate(solution.values, q_values, grid.h)
        self._logger.debug('α=%s y=%s dof=%d 迭代=%d F=%.12e', alpha, np.round(y, 6).tolist(), grid.dof,
                           solution.iterations, value)
        return value
