# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-15 11:20
@Description : 由收敛 CSV 生成自包含的 matplotlib 绘图脚本（误差-工作量双对数图及预测曲线）
@FileName    : plotting
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import csv
import json
import os
import typing as t

from miscol.tools.rates import ComplexityParams

__all__ = [
    'REQUIRED_COLUMNS',
    'collect_series',
    'emit_plots',
]

REQUIRED_COLUMNS = ('method', 'work_model', 'abs_error')

_SCRIPT = '''# -*- coding: utf-8 -*-
"""由 miscol 生成的收敛图脚本，数据已内嵌"""
import math

import matplotlib.pyplot as plt

SERIES = {series}
ZETA = {zeta}
ZFRAK = {zfrak}


def predicted(w):
    return w ** -ZETA * math.log(w) ** ((ZETA + 1) * (ZFRAK - 1))


def main():
    fig, ax = plt.subplots(figsize=(7, 5))
    for method, points in SERIES.items():
        works, errors = zip(*points)
        ax.loglog(works, errors, 'o-', label=method)
    if ZETA is not None and SERIES:
        works, errors = zip(*next(iter(SERIES.values())))
        guide = [w for w in sorted(set(w for points in SERIES.values() for w, _ in points)) if w > 1]
        if guide and works[0] > 1:
            scale = errors[0] / predicted(works[0])
            ax.loglog(guide, [scale * predicted(w) for w in guide], 'k--',
                      label='W^-%g log(W)^%g' % (ZETA, (ZETA + 1) * (ZFRAK - 1)))
    ax.set_xlabel('Work')
    ax.set_ylabel('Error')
    ax.grid(True, which='both', alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig({image!r}, dpi=150)


if __name__ == '__main__':
    main()
'''


def collect_series(csv_paths: t.Sequence[t.Union[str, os.PathLike]]) -> t.Dict[str, t.List[t.Tuple[float, float]]]:
    """
    读取收敛 CSV，按方法收集 (工作量, 误差) 序列，仅保留成功且误差为正的记录

    :param csv_paths: CSV 文件路径
    """
    series: t.Dict[str, t.List[t.Tuple[float, float]]] = {}
    rows = 0
    for path in csv_paths:
        with open(path, 'r', encoding='utf-8', newline='') as file:
            reader = csv.DictReader(file)
            for column in REQUIRED_COLUMNS:
                if column not in (reader.fieldnames or ()):
                    raise ValueError('%s 缺少列：%s' % (path, column))
            for row in reader:
                rows += 1
                if (row.get('status') or 'ok') != 'ok':
                    continue
                work, error = float(row['work_model']), float(row['abs_error'])
                if error > 0 and work > 0:
                    series.setdefault(row['method'], []).append((work, error))
    if rows == 0:
        raise ValueError('CSV 中没有任何记录')
    return {method: sorted(points) for method, points in sorted(series.items())}


def emit_plots(
        csv_paths: t.Sequence[t.Union[str, os.PathLike]],
        output: t.Union[str, os.PathLike],
        params: t.Optional[ComplexityParams] = None,
) -> str:
    """
    生成自包含的绘图脚本，每个方法一条曲线，并按 ζ、𝔷 绘制锚定在首个点上的预测曲线

    :param csv_paths: 收敛 CSV 文件路径
    :param output: 脚本输出路径，图片与脚本同名
    :param params: 复杂度参数，None 表示不绘制预测曲线
    """
    series = collect_series(csv_paths)
    image = os.path.splitext(os.path.basename(output))[0] + '.png'
    script = _SCRIPT.format(
        series=json.dumps(series, indent=4),
        zeta='None' if params is None else repr(float(params.zeta)),
        zfrak='None' if params is None else int(params.zfrak),
        image=image,
    )
    directory = os.path.dirname(os.path.abspath(output))
    os.makedirs(directory, exist_ok=True)
    with open(output, 'w', encoding='utf-8') as file:
        file.write(script)
    return os.fspath(output)
