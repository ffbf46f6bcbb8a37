# -*- coding: utf-8 -*-

__all__ = [
    'ConfigError',
    'StudyConfig',
    'resolve_rates',
    'save_rates',
    'load_rates',
    'ConvergenceRecord',
    'ReferenceRecord',
    'StudyRunner',
    'write_csv',
    'read_csv',
    'sgsc_envelope',
    'emit_plots',
    'main',
]

try:
    import yaml
except ImportError:
    raise ImportError(
        'Tool `harness` cannot be imported.',
        'Please execute `pip install miscol[harness]` to install dependencies first.'
    )
else:
    from .config import ConfigError, StudyConfig, resolve_rates, save_rates, load_rates
    from .study import ConvergenceRecord, ReferenceRecord, StudyRunner, write_csv, read_csv, sgsc_envelope
    from .plotting import emit_plots
    from .cli import main
