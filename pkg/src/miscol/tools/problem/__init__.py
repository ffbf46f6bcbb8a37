# -*- coding: utf-8 -*-

__all__ = [
    'MODE_TABLE_3D',
    'FieldSpec',
    'QoISpec',
    'phi',
    'psi',
    'diffusion',
    'qoi_weight',
    'DEFAULT_DOF_CAP',
    'GridError',
    'DofCapExceededError',
    'SolverDivergedError',
    'Grid',
    'DiscreteSolution',
    'WorkTally',
    'grid_dof',
    'build_grid',
    'assemble',
    'assemble_from_coefficient',
    'solve',
    'evaluate_qoi',
    'work_of_solve',
    'FiniteDifferenceEvaluator',
]

try:
    import numpy
    import scipy.sparse
except ImportError:
    raise ImportError(
        'Tool `problem` cannot be imported.',
        'Please execute `pip install miscol` to install dependencies first.'
    )
else:
    from .random_field import MODE_TABLE_3D, FieldSpec, QoISpec, phi, psi, diffusion, qoi_weight
    from .fd_solver import (
        DEFAULT_DOF_CAP,
        GridError,
        DofCapExceededError,
        SolverDivergedError,
        Grid,
        DiscreteSolution,
        WorkTally,
        grid_dof,
        build_grid,
        assemble,
        assemble_from_coefficient,
        solve,
        evaluate_qoi,
        work_of_solve,
        FiniteDifferenceEvaluator,
    )
