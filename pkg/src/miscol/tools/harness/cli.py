# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-15 16:08
@Description : 命令行入口：fit-rates / build-set / estimate / reference / converge / envelope / plot
@FileName    : cli
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import argparse
import os
import sys
import typing as t

from miscol.basic import Logger, parse_real
from miscol.tools.index import IndexSet
from miscol.tools.rates import complexity_params
from .config import METHODS, StudyConfig, resolve_rates, save_rates
from .plotting import emit_plots
from .study import StudyRunner, sgsc_envelope, write_csv

__all__ = [
    'build_parser',
    'load_config',
    'main',
]


def _schedule(text: str) -> t.Tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError('阈值表应为逗号分隔的数值：%s' % text)


def _reals(text: str) -> t.Tuple[float, ...]:
    try:
        return tuple(parse_real(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError('应为逗号分隔的数值：%s' % text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', help='YAML 配置文件，缺省时使用全部默认值')
    common.add_argument('--d', type=int, help='空间维数（1 或 3）')
    common.add_argument('--N', type=int, help='随机变量个数')
    common.add_argument('--h0', help='基准网格尺寸，可写作分数，如 1/3')
    common.add_argument('--sigma', type=float, help='关注量高斯核宽度 σ')
    common.add_argument('--x0', type=_reals, help='关注量高斯核中心，逗号分隔')
    common.add_argument('--rates-source', choices=('table', 'lemma', 'explicit', 'file'), help='速率模型来源')
    common.add_argument('--rates-file', help='速率模型文件（rates-source=file）')
    common.add_argument('--g', type=_reals, help='随机速率 g，逗号分隔（rates-source=explicit）')
    common.add_argument('--method', choices=METHODS, help='研究方法')
    common.add_argument('--schedule', type=_schedule, help='逗号分隔的阈值表（L，scc 为 w）')
    common.add_argument('--estimate-mode', choices=('surplus', 'combination'), help='估计形式')
    common.add_argument('--reference-level', type=float, help='参考解阈值 L_ref')
    common.add_argument('--reference-margin', type=float, help='参考解阈值相对阈值表最大值的余量')
    common.add_argument('--buffer-margin', type=float, help='后验方法搜索缓冲集的阈值余量')
    common.add_argument('--solver', choices=('auto', 'cg', 'direct'), help='线性求解器')
    common.add_argument('--tol', type=float, help='线性求解的相对残差容差')
    common.add_argument('--dof-cap', type=int, help='自由度上限')
    common.add_argument('--mode', choices=('serial', 'thread', 'process'), help='任务池模式')
    common.add_argument('--workers', type=int, help='任务池工人上限')
    common.add_argument('--output', help='输出目录')
    common.add_argument('--log-level', help='日志等级')
    common.add_argument('--verbose', action='store_true', default=None, help='详细日志')

    parser = argparse.ArgumentParser(prog='miscol', description='多指标随机配点（MISC）估计器与收敛性研究')
    commands = parser.add_subparsers(dest='command', required=True)

    command = commands.add_parser('fit-rates', parents=[common], help='沿射线拟合 r̃ 与 g')
    command.add_argument('--out', help='速率模型文件，默认 <输出目录>/rates.yaml')

    command = commands.add_parser('build-set', parents=[common], help='构造多指标集并写出文本格式')
    command.add_argument('--threshold', type=float, required=True, help='阈值 L（scc 为 w）')
    command.add_argument('--alpha-fixed', type=lambda s: tuple(int(v) for v in s.split(',')),
                         help='sgsc 的固定空间层级，逗号分隔')
    command.add_argument('--out', help='输出文件，缺省时打印到标准输出')

    command = commands.add_parser('estimate', parents=[common], help='对多指标集计算 MISC 估计值')
    group = command.add_mutually_exclusive_group(required=True)
    group.add_argument('--set', dest='set_file', help='多指标集文件')
    group.add_argument('--threshold', type=float, help='阈值 L（scc 为 w）')

    command = commands.add_parser('reference', parents=[common], help='计算并保存参考解')
    command.add_argument('--level', type=float, help='参考阈值 L_ref')

    command = commands.add_parser('converge', parents=[common], help='收敛性研究并写出 CSV')
    command.add_argument('--reference', help='已保存的参考解记录，缺省时重新计算')

    command = commands.add_parser('envelope', parents=[common], help='SGSC 各空间层级曲线及其下包络')
    command.add_argument('--reference', help='已保存的参考解记录，缺省时重新计算')

    command = commands.add_parser('plot', parents=[common], help='由 CSV 生成绘图脚本')
    command.add_argument('csv', nargs='+', help='收敛 CSV 文件')
    command.add_argument('--out', help='脚本输出路径')
    return parser


def load_config(args: argparse.Namespace) -> StudyConfig:
    """读取配置文件并以命令行参数覆盖"""
    config = StudyConfig.load(args.config) if args.config else StudyConfig()
    return config.override(
        problem__d=args.d,
        problem__N=args.N,
        problem__h0=args.h0,
        problem__sigma=args.sigma,
        problem__x0=args.x0,
        rates__source=args.rates_source,
        rates__file=args.rates_file,
        rates__g=args.g,
        study__method=args.method,
        study__schedule=args.schedule,
        study__estimate_mode=args.estimate_mode,
        study__reference_level=args.reference_level,
        study__reference_margin=args.reference_margin,
        study__buffer_margin=args.buffer_margin,
        solver__method=args.solver,
        solver__tol=args.tol,
        solver__dof_cap=args.dof_cap,
        execution__mode=args.mode,
        execution__max_workers=args.workers,
        output__directory=args.output,
        logging__level=args.log_level,
        logging__verbose=args.verbose,
    )


def _reference(runner: StudyRunner, path: t.Optional[str]) -> float:
    if path:
        return runner.load_reference(path).value
    reference = runner.reference_value()
    runner.save_reference(reference)
    return reference.value


def _run(args: argparse.Namespace, config: StudyConfig, logger: Logger) -> int:
    output = config.output
    if args.command == 'plot':
        params = None
        try:
            params = complexity_params(resolve_rates(config, logger))
        except Exception as e:
            logger.warning('无法解析速率模型，预测曲线将被省略：%s', e)
        path = emit_plots(args.csv, args.out or output.path(output.plot), params)
        logger.info('绘图脚本已生成：%s', path)
        return 0

    with StudyRunner(config, logger=logger) as runner:
        if args.command == 'fit-rates':
            model = runner.fit_rates()
            path = args.out or output.path('rates.yaml')
            os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
            save_rates(model, path)
            logger.info('速率模型已保存：%s', path)
        elif args.command == 'build-set':
            index_set = runner.build_set(config.study.method, args.threshold, alpha_fixed=args.alpha_fixed)
            if args.out:
                index_set.save(args.out)
                logger.info('多指标集（%d 个）已保存：%s', len(index_set), args.out)
            else:
                sys.stdout.write(index_set.to_text())
        elif args.command == 'estimate':
            if args.set_file:
                index_set = IndexSet.load(args.set_file)
            else:
                index_set = runner.build_set(config.study.method, args.threshold)
            value = runner.estimator.estimate(index_set, config.study.estimate_mode)
            sys.stdout.write('%.16e\n' % value)
        elif args.command == 'reference':
            reference = runner.reference_value(args.level)
            runner.save_reference(reference)
            sys.stdout.write('%.16e\n' % reference.value)
        elif args.command == 'converge':
            reference = _reference(runner, args.reference)
            records = runner.convergence_study(reference=reference)
            path = write_csv(records, output.path(output.csv))
            logger.info('收敛记录已保存：%s', path)
            failed = [record for record in records if not record.ok]
            if len(failed) == len(records):
                logger.error('所有阈值均失败')
                return 1
        elif args.command == 'envelope':
            reference = _reference(runner, args.reference)
            curves = runner.sgsc_study(reference)
            write_csv([record for records in curves.values() for record in records], output.path('sgsc_curves.csv'))
            path = write_csv(sgsc_envelope(curves), output.path('sgsc_envelope.csv'))
            logger.info('SGSC 下包络已保存：%s', path)
    return 0


def main(argv: t.Optional[t.Sequence[str]] = None) -> int:
    """命令行入口，成功返回 0，失败时记录一行诊断信息并返回非零值"""
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = Logger('miscol')
    try:
        config = load_config(args)
        logger = config.make_logger('miscol')
        return _run(args, config, logger)
    except KeyboardInterrupt:
        logger.error('命令 %s 已中断', args.command)
        return 130
    except Exception as e:
        logger.error('命令 %s 执行失败：%s: %s', args.command, type(e).__name__, e)
        return 1


if __name__ == '__main__':
    sys.exit(main())
