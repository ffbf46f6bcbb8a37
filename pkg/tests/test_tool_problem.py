# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-06 21:02
@Description : 随机场、有限差分组装与求解、关注量求值器的测试
@FileName    : test_tool_problem
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import math
import pickle

import numpy as np
import pytest
from scipy.integrate import trapezoid

from miscol import Logger
from miscol.tools.problem import (
    MODE_TABLE_3D,
    DofCapExceededError,
    FieldSpec,
    FiniteDifferenceEvaluator,
    GridError,
    QoISpec,
    SolverDivergedError,
    assemble,
    assemble_from_coefficient,
    build_grid,
    diffusion,
    evaluate_qoi,
    grid_dof,
    phi,
    psi,
    qoi_weight,
    solve,
    work_of_solve,
)

logger = Logger('Test', level=Logger.INFO, verbose=True)


def test_phi_psi():
    x = np.array([0.0, 0.25, 0.5])
    assert phi(1, x).tolist() == [1.0, 1.0, 1.0]
    assert phi(2, x) == pytest.approx(np.sin(np.pi * x))
    assert phi(3, x) == pytest.approx(np.cos(np.pi * x))
    assert phi(4, x) == pytest.approx(np.sin(2 * np.pi * x))
    with pytest.raises(ValueError):
        phi(0, x)

    point = np.array([0.3, 0.2, 0.6])
    i, j, k = MODE_TABLE_3D[5]
    assert psi(6, point, 3) == pytest.approx(phi(i, 0.3) * phi(j, 0.2) * phi(k, 0.6))
    with pytest.raises(ValueError):
        psi(11, point, 3)


def test_psi_diffusion_bounds():
    x = np.linspace(0, 1, 10001)
    for n in range(1, 11):
        values = psi(n, x, 1)
        assert np.all(np.abs(values) <= 1.0)
        assert np.max(np.abs(values)) >= 0.999

    axis = np.linspace(0, 1, 21)
    mesh = np.stack(np.meshgrid(axis, axis, axis, indexing='ij'), axis=-1)
    for n in range(1, 11):
        values = psi(n, mesh, 3)
        assert np.all(np.abs(values) <= 1.0)
        assert np.max(np.abs(values)) >= 0.999

    # 扩散系数落在 [a_min, a_max] 内
    rng = np.random.default_rng(29)
    for d, N, points in ((1, 10, x), (3, 10, mesh)):
        field = FieldSpec(d, N)
        for _ in range(20):
            a = diffusion(field, points, rng.uniform(-1, 1, N))
            assert np.all(a >= field.a_min * (1 - 1e-12))
            assert np.all(a <= field.a_max * (1 + 1e-12))


def test_field_spec():
    field = FieldSpec(1, 3)
    assert field.lambdas == pytest.approx(math.sqrt(3) * np.exp(-np.arange(1, 4)))
    assert field.a_min < 1 < field.a_max
    assert field.modes(np.linspace(0, 1, 7)).shape == (3, 7)
    assert FieldSpec(3, 10).modes(np.zeros((4, 5, 3))).shape == (10, 4, 5)

    # d=1, N=1 时 ψ_1 ≡ 1，扩散系数与 x 无关
    a = diffusion(FieldSpec(1, 1), np.linspace(0, 1, 5), [0.5])
    assert a == pytest.approx(np.full(5, math.exp(math.sqrt(3) * math.exp(-1) * 0.5)))

    with pytest.raises(ValueError):
        FieldSpec(2, 1)
    with pytest.raises(ValueError):
        FieldSpec(3, 11)
    with pytest.raises(ValueError):
        diffusion(field, 0.5, [0.0, 0.0])
    with pytest.raises(ValueError):
        diffusion(field, 0.5, [0.0, 0.0, 1.5])


def test_qoi_spec():
    qoi = QoISpec(1)
    assert qoi.x0.tolist() == [0.3]
    peak = qoi_weight(qoi, 0.3)
    assert float(peak) == pytest.approx(1.0 / (0.16 * math.sqrt(2 * math.pi)))
    assert QoISpec(3).x0.tolist() == [0.3, 0.2, 0.6]

    # 高斯核在 (0, 1) 内的积分接近 1
    x = np.linspace(0.0, 1.0, 4001)
    assert float(trapezoid(qoi_weight(qoi, x), x)) == pytest.approx(0.97, abs=0.02)

    with pytest.raises(ValueError):
        QoISpec(1, sigma=0.0)
    with pytest.raises(ValueError):
        QoISpec(1, x0=[1.0])


def test_grid():
    assert grid_dof((1,), 1 / 3) == 5
    assert grid_dof((1, 1, 1), 1 / 3) == 125
    assert grid_dof((2, 2, 2), 1 / 3) == 1331
    grid = build_grid((2, 1), 1 / 3)
    assert grid.shape == (11, 5)
    assert grid.dof == 55
    assert grid.h == pytest.approx((1 / 12, 1 / 6))
    assert grid.coords[0][0] == pytest.approx(1 / 12)
    assert grid.coords[0][-1] == pytest.approx(11 / 12)

    with pytest.raises(GridError):
        build_grid((0,), 1 / 3)
    with pytest.raises(GridError):
        build_grid((1,), 0.3)


def test_work_of_solve():
    assert work_of_solve(build_grid((2, 2, 2), 1 / 3)).model_work == pytest.approx(1728)
    assert work_of_solve(build_grid((3, 1, 1), 1 / 3)).model_work == pytest.approx(864)
    tally = work_of_solve(build_grid((1,), 1 / 3), theta=2.0, iterations=4)
    assert tally.dof == 5
    assert tally.solver_iterations == 4
    assert tally.model_work == pytest.approx(36)


def test_assemble_symmetric():
    field = FieldSpec(3, 4)
    system = assemble(field, [0.5, -0.5, 1.0, -1.0], build_grid((1, 1, 1), 1 / 3))
    matrix = system.matrix
    assert matrix.shape == (125, 125)
    assert abs(matrix - matrix.T).max() == pytest.approx(0.0, abs=1e-12)
    # 对称正定
    assert np.all(np.linalg.eigvalsh(matrix.toarray()) > 0)


def test_solve_quadratic_exact():
    # a ≡ 1、𝓕 ≡ 1 时 u = x(1-x)/2，二阶差分格式在节点上精确
    grid = build_grid((2,), 1 / 3)
    system = assemble_from_coefficient(lambda x: np.ones(x.shape[:-1]), grid)
    exact = grid.coords[0] * (1 - grid.coords[0]) / 2
    for method in ('direct', 'cg'):
        solution = solve(system, 1e-12, method=method)
        assert solution.values == pytest.approx(exact, abs=1e-10)
        assert solution.residual < 1e-10


def test_solve_second_order_3d():
    # u = ∏ sin(πx_i)，𝓕 = 3π²u，误差随网格加密约以 4 倍递减
    def forcing(x):
        return 3 * np.pi ** 2 * np.prod(np.sin(np.pi * x), axis=-1)

    errors = []
    for level in (1, 2):
        grid = build_grid((level,) * 3, 1 / 3)
        system = assemble_from_coefficient(lambda x: np.ones(x.shape[:-1]), grid, forcing)
        solution = solve(system, 1e-12, method='cg')
        mesh = np.stack(np.meshgrid(*grid.coords, indexing='ij'), axis=-1)
        errors.append(float(np.max(np.abs(solution.values - np.prod(np.sin(np.pi * mesh), axis=-1)))))
    assert 3.5 < errors[0] / errors[1] < 4.5


def test_solve_second_order_1d():
    # u = sin(πx)，𝓕 = π²u，相邻层级的最大节点误差之比约为 4
    def forcing(x):
        return np.pi ** 2 * np.sin(np.pi * x[..., 0])

    errors = []
    for level in (1, 2, 3, 4):
        grid = build_grid((level,), 1 / 3)
        system = assemble_from_coefficient(lambda x: np.ones(x.shape[:-1]), grid, forcing)
        solution = solve(system, 1e-12, method='direct')
        errors.append(float(np.max(np.abs(solution.values - np.sin(np.pi * grid.coords[0])))))
    for coarse, fine in zip(errors, errors[1:]):
        assert 3.2 <= coarse / fine <= 4.8


def test_solve_diverged():
    grid = build_grid((3, 3, 3), 1 / 3)
    system = assemble(FieldSpec(3, 1), [0.0], grid)
    with pytest.raises(SolverDivergedError):
        solve(system, 1e-14, method='cg', maxiter=2)
    with pytest.raises(ValueError):
        solve(system, method='jacobi')


def test_evaluate_qoi():
    field, qoi = FieldSpec(1, 1), QoISpec(1)
    grid = build_grid((6,), 1 / 3)
    solution = solve(assemble(field, [0.0], grid), method='direct')
    # a ≡ 1 时 F = ∫ x(1-x)/2·Q(x) dx
    x = np.linspace(0.0, 1.0, 20001)
    exact = float(trapezoid(x * (1 - x) / 2 * qoi_weight(qoi, x), x))
    assert evaluate_qoi(solution, qoi) == pytest.approx(exact, rel=1e-3)


def test_evaluator():
    field, qoi = FieldSpec(1, 1), QoISpec(1)
    evaluator = FiniteDifferenceEvaluator(field, qoi, dof_cap=100, logger=logger)
    assert evaluator.method == 'direct'
    assert evaluator.D == 1 and evaluator.N == 1
    assert evaluator.dof((2,)) == 11

    # d=1、N=1 时 a = e^{λy}，解按 e^{-λy} 缩放
    lam = float(field.lambdas[0])
    base = evaluator((3,), [0.0])
    assert evaluator((3,), [1.0]) == pytest.approx(base * math.exp(-lam), rel=1e-10)
    assert evaluator((3,), [-1.0]) == pytest.approx(base * math.exp(lam), rel=1e-10)

    with pytest.raises(DofCapExceededError) as info:
        evaluator((6,), [0.0])
    assert info.value.dof == 191
    assert info.value.cap == 100
    assert 'solver.dof_cap' in str(info.value)

    restored = pickle.loads(pickle.dumps(evaluator))
    assert restored((3,), [0.5]) == pytest.approx(evaluator((3,), [0.5]))


def test_evaluator_3d():
    evaluator = FiniteDifferenceEvaluator(FieldSpec(3, 2), QoISpec(3), logger=logger)
    assert evaluator.method == 'cg'
    value = evaluator((1, 1, 1), [0.3, -0.7])
    assert value > 0
    assert evaluator((1, 1, 1), [0.3, -0.7]) == pytest.approx(value, rel=1e-8)
    with pytest.raises(ValueError):
        FiniteDifferenceEvaluator(FieldSpec(3, 2), QoISpec(1))
    with pytest.raises(GridError):
        FiniteDifferenceEvaluator(FieldSpec(1, 1), QoISpec(1), h0=0.3)
