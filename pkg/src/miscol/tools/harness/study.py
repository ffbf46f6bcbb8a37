# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-14 14:55
@Description : 收敛性研究：参考解、按阈值表构造集合并估计、CSV 输出与 SGSC 下包络
@FileName    : study
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import csv
import math
import os
import typing as t

from miscol.basic import Logger, MultiTask, get_count_for_human, get_iso8601_now
from miscol.tools.estimator import MiscEstimator, SurplusCache, work_contribution
from miscol.tools.index import (
    IndexSet,
    RateModel,
    aposteriori_set,
    apriori_set,
    default_margin,
    mlsc_set,
    scc_set,
    sgsc_sets,
    spatial_exponent,
)
from miscol.tools.problem import FiniteDifferenceEvaluator
from miscol.tools.rates import fit_spatial_rates, fit_stochastic_rates, sample_ray
from .config import ConfigError, StudyConfig, resolve_rates

try:
    import yaml
except ImportError:
    raise ImportError(
        'Tool `harness` cannot be imported.',
        'Please execute `pip install miscol[harness]` to install dependencies first.'
    )

__all__ = [
    'CSV_COLUMNS',
    'ConvergenceRecord',
    'ReferenceRecord',
    'StudyRunner',
    'write_csv',
    'read_csv',
    'sgsc_envelope',
]

CSV_COLUMNS = (
    'method', 'threshold', 'set_size', 'work_model', 'work_measured', 'estimate', 'abs_error',
    'work_incremental', 'status',
)


class ConvergenceRecord(t.NamedTuple):
    method: str
    threshold: float
    set_size: int
    work_model: float
    work_measured: int
    estimate: float
    abs_error: float
    work_incremental: int = 0
    status: str = 'ok'

    @property
    def ok(self) -> bool:
        return self.status == 'ok'

    def to_row(self) -> t.Dict[str, str]:
        return {
            'method': self.method,
            'threshold': repr(float(self.threshold)),
            'set_size': str(self.set_size),
            'work_model': repr(float(self.work_model)),
            'work_measured': str(self.work_measured),
            'estimate': repr(float(self.estimate)),
            'abs_error': repr(float(self.abs_error)),
            'work_incremental': str(self.work_incremental),
            'status': self.status,
        }

    @classmethod
    def from_row(cls, row: t.Mapping[str, str]) -> 'ConvergenceRecord':
        return cls(
            row['method'], float(row['threshold']), int(row['set_size']), float(row['work_model']),
            int(row['work_measured']), float(row['estimate']), float(row['abs_error']),
            int(row.get('work_incremental') or 0), row.get('status') or 'ok',
        )


class ReferenceRecord(t.NamedTuple):
    value: float
    level: float
    index_set: IndexSet


def write_csv(records: t.Iterable[ConvergenceRecord], path: t.Union[str, os.PathLike]) -> str:
    """按 CSV_COLUMNS 的列顺序写出记录，换行符固定为 \\n"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as file:
        writer = csv.DictWriter(file, fieldnames=CSV_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for record in records:
            writer.writerow(record.to_row())
    return os.fspath(path)


def read_csv(path: t.Union[str, os.PathLike]) -> t.List[ConvergenceRecord]:
    with open(path, 'r', encoding='utf-8', newline='') as file:
        return [ConvergenceRecord.from_row(row) for row in csv.DictReader(file)]


def sgsc_envelope(
        curves: t.Mapping[t.Any, t.Sequence[ConvergenceRecord]],
        method: str = 'sgsc',
) -> t.List[ConvergenceRecord]:
    """
    SGSC 曲线的逐工作量下包络

    在所有曲线合并后的每个工作量 w 处，各曲线取其工作量不超过 w 的最后一个点的误差，
    包络取这些误差中的最小值；只有一条曲线时包络即为该曲线本身。失败的记录被忽略。

    :param curves: 按固定空间层级分组的收敛记录
    :param method: 包络记录的方法名
    """
    sorted_curves = [
        sorted((record for record in records if record.ok), key=lambda record: record.work_model)
        for records in curves.values()
    ]
    works = sorted({record.work_model for records in sorted_curves for record in records})
    envelope = []
    for work in works:
        candidates = []
        for records in sorted_curves:
            latest = [record for record in records if record.work_model <= work]
            if latest:
                candidates.append(latest[-1])
        best = min(candidates, key=lambda record: record.abs_error)
        envelope.append(best._replace(method=method, work_model=work))
    return envelope


class StudyRunner:
    """
    收敛性研究的执行器

    所有估计共享同一个缓存；每次估计在独立的缓存会话中运行，
    因此实测工作量与缓存冷热及执行顺序无关。
    """

    def __init__(
            self,
            config: StudyConfig,
            *,
            evaluator: t.Optional[t.Callable] = None,
            rates: t.Optional[RateModel] = None,
            logger: t.Optional[Logger] = None,
    ):
        """
        :param config: 研究配置
        :param evaluator: 求值器，默认按配置构造有限差分求值器
        :param rates: 速率模型，默认按配置解析
        :param logger: 日志类
        """
        self._config = config
        self._logger = logger or Logger('StudyRunner')
        problem, solver = config.problem, config.solver
        self._evaluator = evaluator or FiniteDifferenceEvaluator(
            problem.field(), problem.qoi(), problem.h0,
            tol=solver.tol, method=solver.method, dof_cap=solver.dof_cap, logger=self._logger,
        )
        self._rates = rates
        self._pool = MultiTask(config.execution.mode, max_workers=config.execution.max_workers, logger=self._logger)
        self._estimator = MiscEstimator(self._evaluator, cache=SurplusCache(), pool=self._pool, logger=self._logger)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def close(self):
        self._pool.shutdown()

    @property
    def config(self) -> StudyConfig:
        return self._config

    @property
    def estimator(self) -> MiscEstimator:
        return self._estimator

    @property
    def rates(self) -> RateModel:
        if self._rates is None:
            self._rates = resolve_rates(self._config, self._logger)
        return self._rates

    def schedule(self, method: t.Optional[str] = None) -> t.Tuple[float, ...]:
        return self._config.schedule(self.rates, method)

    def build_set(
            self,
            method: str,
            threshold: float,
            *,
            alpha_fixed: t.Optional[t.Sequence[int]] = None,
    ) -> IndexSet:
        """
        按方法与阈值构造多指标集

        :param method: 研究方法
        :param threshold: 阈值 L（scc 为 w）
        :param alpha_fixed: sgsc 的固定空间层级
        """
        rates, study = self.rates, self._config.study
        buffer_margin = default_margin(rates) if study.buffer_margin is None else study.buffer_margin
        if method == 'misc-apriori':
            return apriori_set(threshold, rates)
        if method == 'misc-aposteriori':
            buffer = apriori_set(threshold + buffer_margin, rates)
            return aposteriori_set(math.exp(-threshold), buffer, self._estimator, rates)
        if method in ('mlsc-apriori', 'mlsc-aposteriori'):
            return mlsc_set(threshold, rates, method.split('-')[1], estimator=self._estimator,
                            buffer_margin=buffer_margin)
        if method == 'scc':
            return scc_set(int(round(threshold)), rates.N, rates.D)
        if method == 'sgsc':
            if alpha_fixed is None:
                raise ValueError('sgsc 方法需要提供固定空间层级')
            return sgsc_sets(alpha_fixed, [threshold - spatial_exponent(alpha_fixed, rates)], rates)[0]
        raise ConfigError('未知的研究方法：%s' % method)

    def run_set(
            self,
            method: str,
            threshold: float,
            index_set: IndexSet,
            reference: t.Optional[float] = None,
    ) -> ConvergenceRecord:
        """
        估计给定集合，并统计模型工作量、实测工作量（触及的自由度·点数）与增量工作量（本次新求解的部分）

        缓存已热时重复运行同一集合的增量工作量为 0。
        """
        with self._estimator.cache.session() as session:
            value = self._estimator.estimate(index_set, self._config.study.estimate_mode)
        work_model = math.fsum(work_contribution(idx, self.rates, 'model') for idx in index_set)
        error = abs(value - reference) if reference is not None else math.nan
        self._logger.info('%s 阈值=%.6g 集合大小=%d 模型工作量=%s 实测工作量=%s 增量工作量=%s 误差=%.3e', method,
                          threshold, len(index_set), get_count_for_human(work_model),
                          get_count_for_human(session.work_touched), get_count_for_human(session.work_charged), error)
        return ConvergenceRecord(method, float(threshold), len(index_set), work_model, session.work_touched, value,
                                 error, session.work_charged)

    def reference_value(self, level: t.Optional[float] = None) -> ReferenceRecord:
        """
        参考解：L_ref = L_max + margin 下的先验 MISC 估计

        :param level: 指定的参考阈值，默认按配置计算
        """
        level = self._config.reference_level(self.rates) if level is None else float(level)
        index_set = apriori_set(level, self.rates)
        self._logger.info('正在计算参考解，L_ref=%.6g，集合大小=%d', level, len(index_set))
        value = self._estimator.estimate(index_set, self._config.study.estimate_mode)
        return ReferenceRecord(value, level, index_set)

    def save_reference(self, reference: ReferenceRecord, path: t.Optional[str] = None) -> str:
        """保存参考解记录（YAML）及其多指标集文件"""
        output = self._config.output
        path = path or output.path(output.reference)
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        set_path = os.path.splitext(path)[0] + '.set'
        reference.index_set.save(set_path)
        record = {
            'version': 1,
            'value': float(reference.value),
            'level': float(reference.level),
            'set_size': len(reference.index_set),
            'set_file': os.path.basename(set_path),
            'estimate_mode': self._config.study.estimate_mode,
            'created': get_iso8601_now(),
            'problem': self._config.to_dict()['problem'],
            'rates': self.rates.to_dict(),
        }
        with open(path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(record, file, allow_unicode=True, sort_keys=False)
        self._logger.info('参考解已保存：%s', path)
        return path

    @staticmethod
    def load_reference(path: t.Union[str, os.PathLike]) -> ReferenceRecord:
        with open(path, 'r', encoding='utf-8') as file:
            record = yaml.safe_load(file) or {}
        try:
            set_path = os.path.join(os.path.dirname(os.path.abspath(path)), record['set_file'])
            return ReferenceRecord(float(record['value']), float(record['level']), IndexSet.load(set_path))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError('参考解记录 %s 不合法：%s' % (path, e))

    def convergence_study(
            self,
            method: t.Optional[str] = None,
            reference: t.Optional[float] = None,
            *,
            alpha_fixed: t.Optional[t.Sequence[int]] = None,
            schedule: t.Optional[t.Sequence[float]] = None,
    ) -> t.List[ConvergenceRecord]:
        """
        按阈值表逐一构造集合并估计，单个阈值失败时记录失败信息并继续

        :param method: 研究方法，默认取配置
        :param reference: 参考值，默认计算参考解
        :param alpha_fixed: sgsc 的固定空间层级
        :param schedule: 阈值表，默认取配置
        """
        method = method or self._config.study.method
        if reference is None:
            reference = self.reference_value().value
        label = method if alpha_fixed is None else '%s%s' % (method, list(alpha_fixed))
        records = []
        for threshold in schedule or self.schedule(method):
            try:
                index_set = self.build_set(method, threshold, alpha_fixed=alpha_fixed)
                records.append(self.run_set(label, threshold, index_set, reference))
            except Exception as e:
                self._logger.warning('%s 阈值=%.6g 失败：%s', label, threshold, e)
                records.append(ConvergenceRecord(label, float(threshold), 0, math.nan, 0, math.nan, math.nan,
                                                 status='%s: %s' % (type(e).__name__, e)))
        return records

    def sgsc_study(
            self,
            reference: t.Optional[float] = None,
            levels: t.Optional[t.Sequence[t.Sequence[int]]] = None,
    ) -> t.Dict[t.Tuple[int, ...], t.List[ConvergenceRecord]]:
        """对每个固定空间层级运行 SGSC 收敛研究"""
        if reference is None:
            reference = self.reference_value().value
        curves = {}
        for alpha_fixed in levels or self._config.sgsc_levels:
            alpha_fixed = tuple(int(a) for a in alpha_fixed)
            curves[alpha_fixed] = self.convergence_study('sgsc', reference, alpha_fixed=alpha_fixed,
                                                         schedule=self.schedule('sgsc'))
        return curves

    def fit_rates(self) -> RateModel:
        """
        沿单位方向射线拟合 r̃ 与 g，γ̃ 取 ϑ

        空间射线固定 β 为全 1，随机射线固定在较细的空间层级上只做随机方向的差分。
        """
        fit, D, N = self._config.fit, self._config.problem.d, self._config.problem.N
        spatial = [
            sample_ray(self._estimator, [int(k == i) for k in range(D + N)], fit.spatial_offsets, D)
            for i in range(D)
        ]
        base = self._config.stochastic_alpha + (1,) * N
        stochastic = [
            sample_ray(self._estimator, [int(k == D + n) for k in range(D + N)], fit.stochastic_offsets, D,
                       base=base, stochastic_only=True)
            for n in range(N)
        ]
        r_tilde = fit_spatial_rates(spatial, noise_floor=fit.noise_floor)
        gs = fit_stochastic_rates(stochastic, noise_floor=fit.noise_floor)
        model = RateModel.from_tilde([self._config.study.theta] * D, r_tilde, gs)
        self._logger.info('拟合得到速率模型：%r', model)
        return model
