# -*- coding: utf-8 -*-
from .multi_index import (
    SPATIAL_MODES,
    IndexSetError,
    MultiIndex,
    IndexSet,
    spatial_directions,
    downward_closure,
    random_downward_closed_set,
)
from .set_builder import (
    LOG2,
    RateModel,
    spatial_exponent,
    stochastic_exponent,
    apriori_profit_exponent,
    apriori_profit,
    default_margin,
    apriori_set,
    aposteriori_set,
    scc_set,
    mlsc_set,
    sgsc_sets,
    dantzig_select,
)

__all__ = [
    'SPATIAL_MODES',
    'IndexSetError',
    'MultiIndex',
    'IndexSet',
    'spatial_directions',
    'downward_closure',
    'random_downward_closed_set',
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
