# -*- coding: utf-8 -*-

__all__ = [
    'TensorGrid',
    'level_to_nodes',
    'new_points_count',
    'cc_node_keys',
    'cc_nodes',
    'cc_weights',
    'map_to_interval',
    'tensor_grid',
    'lebesgue_estimate',
]

try:
    import numpy
    import scipy
except ImportError:
    raise ImportError(
        'Tool `collocation` cannot be imported.',
        'Please execute `pip install miscol` to install dependencies first.'
    )
else:
    from .clenshaw_curtis import (
        TensorGrid,
        level_to_nodes,
        new_points_count,
        cc_node_keys,
        cc_nodes,
        cc_weights,
        map_to_interval,
        tensor_grid,
        lebesgue_estimate,
    )
