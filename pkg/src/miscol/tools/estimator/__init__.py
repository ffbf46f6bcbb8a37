# -*- coding: utf-8 -*-

__all__ = [
    'CacheTally',
    'CacheSession',
    'SurplusCache',
    'EvaluationError',
    'Contribution',
    'FunctionEvaluator',
    'MiscEstimator',
    'combination_coefficients',
    'work_contribution',
]

try:
    import numpy
    import scipy
except ImportError:
    raise ImportError(
        'Tool `estimator` cannot be imported.',
        'Please execute `pip install miscol` to install dependencies first.'
    )
else:
    from .surplus_cache import CacheTally, CacheSession, SurplusCache
    from .misc_estimator import (
        EvaluationError,
        Contribution,
        FunctionEvaluator,
        MiscEstimator,
        combination_coefficients,
        work_contribution,
    )
