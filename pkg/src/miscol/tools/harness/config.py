# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-13 10:30
@Description : 收敛性研究的 YAML 配置（带版本号），以及速率模型的来源解析
@FileName    : config
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import os
import typing as t

from miscol.basic import Logger, parse_real
from miscol.tools.index import RateModel, default_margin, spatial_exponent, stochastic_exponent
from miscol.tools.problem import DEFAULT_DOF_CAP, FieldSpec, QoISpec
from miscol.tools.rates import apriori_g

try:
    import yaml
except ImportError:
    raise ImportError(
        'Tool `harness` cannot be imported.',
        'Please execute `pip install miscol[harness]` to install dependencies first.'
    )

__all__ = [
    'SCHEMA_VERSION',
    'METHODS',
    'TABLE_G',
    'ConfigError',
    'ProblemConfig',
    'SolverConfig',
    'RatesConfig',
    'StudySection',
    'FitConfig',
    'ExecutionConfig',
    'OutputConfig',
    'LoggingConfig',
    'StudyConfig',
    'resolve_rates',
    'save_rates',
    'load_rates',
]

SCHEMA_VERSION = 1

METHODS = ('misc-apriori', 'misc-aposteriori', 'mlsc-apriori', 'mlsc-aposteriori', 'scc', 'sgsc')

# 随机方向 n = 1..10 的随机误差速率，d=1 与 d=3 相同
TABLE_G = (2.4855, 2.8174, 4.5044, 4.1938, 4.7459, 6.8444, 7.1513, 7.8622, 8.6584, 9.4545)

# 默认阈值表的步数
DEFAULT_STEPS = 6


class ConfigError(ValueError):
    """配置文件不合法"""


class ProblemConfig(t.NamedTuple):
    d: int = 1
    N: int = 1
    h0: float = 1.0 / 3.0
    sigma: float = 0.16
    x0: t.Optional[t.Tuple[float, ...]] = None
    modes: t.Optional[t.Tuple[t.Tuple[int, int, int], ...]] = None

    def field(self) -> FieldSpec:
        return FieldSpec(self.d, self.N, mode_table=self.modes)

    def qoi(self) -> QoISpec:
        return QoISpec(self.d, sigma=self.sigma, x0=self.x0)


class SolverConfig(t.NamedTuple):
    method: str = 'auto'
    tol: float = 1e-10
    dof_cap: t.Optional[int] = DEFAULT_DOF_CAP


class RatesConfig(t.NamedTuple):
    source: str = 'table'
    gamma_tilde: t.Union[float, t.Tuple[float, ...]] = 1.0
    r_tilde: t.Union[float, t.Tuple[float, ...]] = 2.0
    g: t.Optional[t.Tuple[float, ...]] = None
    eps_E: float = 0.0
    file: t.Optional[str] = None


class StudySection(t.NamedTuple):
    method: str = 'misc-apriori'
    schedule: t.Optional[t.Tuple[float, ...]] = None
    estimate_mode: str = 'combination'
    reference_level: t.Optional[float] = None
    reference_margin: t.Optional[float] = None
    buffer_margin: t.Optional[float] = None
    sgsc_levels: t.Optional[t.Tuple[t.Tuple[int, ...], ...]] = None
    theta: float = 1.0


class FitConfig(t.NamedTuple):
    spatial_offsets: t.Tuple[int, ...] = (1, 2, 3, 4)
    stochastic_offsets: t.Tuple[int, ...] = (1, 2, 3, 4)
    stochastic_alpha: t.Optional[t.Tuple[int, ...]] = None
    noise_floor: float = 1e-13


class ExecutionConfig(t.NamedTuple):
    mode: str = 'serial'
    max_workers: t.Optional[int] = None


class OutputConfig(t.NamedTuple):
    directory: str = 'output'
    csv: str = 'convergence.csv'
    plot: str = 'convergence_plot.py'
    reference: str = 'reference.yaml'

    def path(self, name: str) -> str:
        return name if os.path.isabs(name) else os.path.join(self.directory, name)


class LoggingConfig(t.NamedTuple):
    level: str = 'INFO'
    verbose: bool = False
    logfile: t.Optional[str] = None


_SECTIONS = {
    'problem': ProblemConfig,
    'solver': SolverConfig,
    'rates': RatesConfig,
    'study': StudySection,
    'fit': FitConfig,
    'execution': ExecutionConfig,
    'output': OutputConfig,
    'logging': LoggingConfig,
}


def _tuple(value, cast=float):
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return tuple(_tuple(v, cast) if isinstance(v, (list, tuple)) else cast(v) for v in value)
    return cast(value)


def _section(cls, data: t.Optional[t.Mapping[str, t.Any]], name: str):
    data = dict(data or {})
    unknown = set(data) - set(cls._fields)
    if unknown:
        raise ConfigError('配置节 %s 含有未知字段：%s' % (name, ', '.join(sorted(unknown))))
    return cls(**data)


class StudyConfig:
    """
    收敛性研究配置

    配置文件为单个 YAML 文件，必须包含 ``version: 1``，其余各节均可省略并使用默认值，
    默认值见 docs/miscol/tools/harness/config.md。
    """

    def __init__(
            self,
            problem: ProblemConfig = ProblemConfig(),
            solver: SolverConfig = SolverConfig(),
            rates: RatesConfig = RatesConfig(),
            study: StudySection = StudySection(),
            fit: FitConfig = FitConfig(),
            execution: ExecutionConfig = ExecutionConfig(),
            output: OutputConfig = OutputConfig(),
            logging: LoggingConfig = LoggingConfig(),
    ):
        self.problem = self._normalize_problem(problem)
        self.solver = solver
        self.rates = rates
        self.study = study
        self.fit = fit
        self.execution = execution
        self.output = output
        self.logging = logging
        self.validate()

    @staticmethod
    def _normalize_problem(problem: ProblemConfig) -> ProblemConfig:
        return problem._replace(
            h0=parse_real(problem.h0),
            x0=_tuple(problem.x0),
            modes=_tuple(problem.modes, int),
        )

    def validate(self):
        try:
            self.problem.field()
            self.problem.qoi()
        except ValueError as e:
            raise ConfigError('problem 配置不合法：%s' % e)
        if self.solver.method not in ('auto', 'cg', 'direct'):
            raise ConfigError('solver.method 可选值：auto / cg / direct')
        if self.rates.source not in ('table', 'lemma', 'explicit', 'file'):
            raise ConfigError('rates.source 可选值：table / lemma / explicit / file')
        if self.rates.source == 'table' and self.problem.N > len(TABLE_G):
            raise ConfigError('rates.source=table 仅适用于 N ≤ %d' % len(TABLE_G))
        if self.rates.source == 'explicit' and (self.rates.g is None or len(self.rates.g) != self.problem.N):
            raise ConfigError('rates.source=explicit 需要提供 N 个 g')
        if self.rates.source == 'file' and not self.rates.file:
            raise ConfigError('rates.source=file 需要提供 rates.file')
        if self.study.method not in METHODS:
            raise ConfigError('study.method 可选值：%s' % ' / '.join(METHODS))
        if self.study.estimate_mode not in ('surplus', 'combination'):
            raise ConfigError('study.estimate_mode 可选值：surplus / combination')
        schedule = self.study.schedule
        if schedule is not None:
            if not schedule:
                raise ConfigError('study.schedule 不能为空')
            if any(b <= a for a, b in zip(schedule, schedule[1:])):
                raise ConfigError('study.schedule 必须严格递增')
        if self.execution.mode not in ('serial', 'thread', 'process'):
            raise ConfigError('execution.mode 可选值：serial / thread / process')

    @classmethod
    def from_dict(cls, data: t.Mapping[str, t.Any]) -> 'StudyConfig':
        if not isinstance(data, t.Mapping):
            raise ConfigError('配置文件的顶层必须是映射')
        version = data.get('version')
        if version != SCHEMA_VERSION:
            raise ConfigError('不支持的配置版本：%r，当前版本为 %d' % (version, SCHEMA_VERSION))
        unknown = set(data) - set(_SECTIONS) - {'version'}
        if unknown:
            raise ConfigError('配置文件含有未知配置节：%s' % ', '.join(sorted(unknown)))
        sections = {name: _section(cls_, data.get(name), name) for name, cls_ in _SECTIONS.items()}
        sections['rates'] = sections['rates']._replace(
            gamma_tilde=_tuple(sections['rates'].gamma_tilde),
            r_tilde=_tuple(sections['rates'].r_tilde),
            g=_tuple(sections['rates'].g),
        )
        study = sections['study']
        sections['study'] = study._replace(
            schedule=_tuple(study.schedule),
            sgsc_levels=_tuple(study.sgsc_levels, int),
        )
        fit = sections['fit']
        sections['fit'] = fit._replace(
            spatial_offsets=_tuple(fit.spatial_offsets, int),
            stochastic_offsets=_tuple(fit.stochastic_offsets, int),
            stochastic_alpha=_tuple(fit.stochastic_alpha, int),
        )
        try:
            return cls(**sections)
        except TypeError as e:
            raise ConfigError('配置字段类型错误：%s' % e)

    @classmethod
    def load(cls, path: t.Union[str, os.PathLike]) -> 'StudyConfig':
        with open(path, 'r', encoding='utf-8') as file:
            try:
                data = yaml.safe_load(file)
            except yaml.YAMLError as e:
                raise ConfigError('无法解析配置文件 %s：%s' % (path, e))
        return cls.from_dict(data or {})

    def to_dict(self) -> t.Dict[str, t.Any]:
        def plain(value):
            if isinstance(value, tuple):
                return [plain(v) for v in value]
            return value

        data = {'version': SCHEMA_VERSION}
        for name in _SECTIONS:
            section = getattr(self, name)
            data[name] = {k: plain(v) for k, v in section._asdict().items()}
        return data

    def dump(self, path: t.Union[str, os.PathLike]):
        with open(path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(self.to_dict(), file, allow_unicode=True, sort_keys=False)

    def override(self, **changes: t.Any) -> 'StudyConfig':
        """
        以 ``节__字段`` 形式覆盖单个字段，值为 None 的项被忽略

        例如 ``config.override(problem__N=5, study__method='scc')``。
        """
        sections = {name: getattr(self, name) for name in _SECTIONS}
        for key, value in changes.items():
            if value is None:
                continue
            name, _, field = key.partition('__')
            if name not in sections or field not in sections[name]._fields:
                raise ConfigError('未知的配置项：%s' % key)
            sections[name] = sections[name]._replace(**{field: value})
        return StudyConfig(**sections)

    def make_logger(self, name: str = 'miscol') -> Logger:
        return Logger(name, self.logging.level, verbose=self.logging.verbose, logfile=self.logging.logfile or False)

    @property
    def stochastic_alpha(self) -> t.Tuple[int, ...]:
        if self.fit.stochastic_alpha is not None:
            return self.fit.stochastic_alpha
        return (4,) if self.problem.d == 1 else (3,) * self.problem.d

    @property
    def sgsc_levels(self) -> t.Tuple[t.Tuple[int, ...], ...]:
        if self.study.sgsc_levels is not None:
            return self.study.sgsc_levels
        return tuple((k,) * self.problem.d for k in (1, 2, 3, 4))

    def schedule(self, rates: RateModel, method: t.Optional[str] = None) -> t.Tuple[float, ...]:
        """
        阈值表：未配置时，scc 取 w = D+N+k，其余方法取 L = L_root + k·max(r_i+γ_i)，k = 0..5

        :param rates: 速率模型
        :param method: 研究方法，默认取配置中的方法
        """
        method = method or self.study.method
        if self.study.schedule is not None:
            return self.study.schedule
        D, N = self.problem.d, self.problem.N
        if method == 'scc':
            return tuple(float(D + N + k) for k in range(DEFAULT_STEPS))
        root = spatial_exponent((1,) * D, rates) + stochastic_exponent((1,) * N, rates)
        step = default_margin(rates) / 2.0
        return tuple(root + k * step for k in range(DEFAULT_STEPS))

    def reference_level(self, rates: RateModel) -> float:
        """参考解的阈值 L_ref = L_max + margin，margin 默认 2·max(r_i+γ_i)"""
        if self.study.reference_level is not None:
            return float(self.study.reference_level)
        margin = default_margin(rates) if self.study.reference_margin is None else self.study.reference_margin
        if self.study.method != 'scc':
            return max(self.schedule(rates)) + margin
        if self.study.schedule is not None:
            raise ConfigError('scc 方法配置了 w 阈值表时必须显式提供 study.reference_level')
        return max(self.schedule(rates, 'misc-apriori')) + margin


def resolve_rates(config: StudyConfig, logger: t.Optional[Logger] = None) -> RateModel:
    """
    按 rates.source 构造速率模型

    ========= ==============================================================
    table     内置速率表 g_n
    lemma     由解析性区域给出的 g̃_n = (g*_n/2)(1-ε_E)
    explicit  配置中给出的 g
    file      读取保存的速率模型文件
    ========= ==============================================================
    """
    logger = logger or Logger('StudyConfig')
    rates, problem = config.rates, config.problem
    if rates.source == 'file':
        model = load_rates(rates.file)
        if model.D != problem.d or model.N != problem.N:
            raise ConfigError('速率模型文件的维数与问题不一致')
        logger.info('已从 %s 读取速率模型：%r', rates.file, model)
        return model
    if rates.source == 'table':
        gs = TABLE_G[:problem.N]
    elif rates.source == 'lemma':
        gs = apriori_g(problem.N, problem.field().lambdas, rates.eps_E).g_tilde
    else:
        gs = rates.g
    model = RateModel.from_tilde(rates.gamma_tilde, rates.r_tilde, gs, D=problem.d)
    if model.D != problem.d:
        raise ConfigError('γ̃、r̃ 的个数与空间维数不一致')
    logger.debug('速率模型（%s）：%r', rates.source, model)
    return model


def save_rates(model: RateModel, path: t.Union[str, os.PathLike]):
    with open(path, 'w', encoding='utf-8') as file:
        yaml.safe_dump({'version': SCHEMA_VERSION, 'rates': model.to_dict()}, file, allow_unicode=True,
                       sort_keys=False)


def load_rates(path: t.Union[str, os.PathLike]) -> RateModel:
    with open(path, 'r', encoding='utf-8') as file:
        data = yaml.safe_load(file) or {}
    if data.get('version') != SCHEMA_VERSION or 'rates' not in data:
        raise ConfigError('速率模型文件格式不合法：%s' % path)
    try:
        return RateModel.from_dict(data['rates'])
    except ValueError as e:
        raise ConfigError('速率模型文件 %s 不合法：%s' % (path, e))
