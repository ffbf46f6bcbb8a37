# -*- coding: utf-8 -*-

__all__ = [
    'NOISE_FLOOR',
    'RateFitError',
    'RaySamples',
    'ProductStructureReport',
    'PolyellipseRates',
    'sample_ray',
    'fit_spatial_rates',
    'fit_stochastic_rates',
    'verify_product_structure',
    'apriori_g',
    'measure_solve_times',
    'fit_work_exponent',
    'BudgetTooSmallError',
    'ComplexityParams',
    'complexity_params',
    'level_for_budget',
    'predicted_error',
]

try:
    import numpy
    import scipy.stats
except ImportError:
    raise ImportError(
        'Tool `rates` cannot be imported.',
        'Please execute `pip install miscol` to install dependencies first.'
    )
else:
    from .rate_fitting import (
        NOISE_FLOOR,
        RateFitError,
        RaySamples,
        ProductStructureReport,
        PolyellipseRates,
        sample_ray,
        fit_spatial_rates,
        fit_stochastic_rates,
        verify_product_structure,
        apriori_g,
        measure_solve_times,
        fit_work_exponent,
    )
    from .complexity import (
        BudgetTooSmallError,
        ComplexityParams,
        complexity_params,
        level_for_budget,
        predicted_error,
    )
