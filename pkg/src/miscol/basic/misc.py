# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-02 11:30
@Description : 杂项
@FileName    : misc
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 2.0.0
"""
import fractions
import typing as t
from datetime import datetime, timezone, timedelta

__all__ = [
    'get_count_for_human',
    'get_iso8601_now',
    'list_slicer',
    'parse_real',
]


def get_count_for_human(
        count: t.Union[int, float],
        precision: int = 1,
) -> str:
    """
    将自由度、工作量等计数处理为人类可读的格式

    :param count: 待处理计数
    :param precision: 保留小数点后的位数
    :return: 人类可读的计数，如 1.3 K、2.0 M
    """
    negative = count < 0
    count = -count if negative else count

    for unit, scale in (('E', 1e18), ('P', 1e15), ('T', 1e12), ('G', 1e9), ('M', 1e6), ('K', 1e3)):
        if count >= scale:
            value = '{:.{precision}f} {}'.format(count / scale, unit, precision=precision)
            break
    else:
        value = '{:d}'.format(int(count)) if float(count).is_integer() else '{:.{precision}f}'.format(
            count, precision=precision)

    return '-' + value if negative else value


def get_iso8601_now(
        tz: t.Optional[timezone] = None,
) -> str:
    """
    获取当前时间的符合 ISO 8601 标准的日期字符串

    :param tz: 输出时使用的时区，默认为本地时区
    """
    utc_datetime = datetime.now(timezone(timedelta(hours=0)))
    return utc_datetime.astimezone(tz=tz).isoformat()


DATA = t.TypeVar('DATA')


def list_slicer(
        split_list: t.Union[t.Sequence[DATA], t.Iterator[DATA]],
        split_size: int,
) -> t.Iterator[t.List[DATA]]:
    """
    数组切片器

    :param split_list: 待切片的数组
    :param split_size: 切片大小
    :return 数组切片迭代器
    """
    if split_size < 1:
        raise ValueError('切片大小必须为正整数')
    items = []
    for item in split_list:
        items.append(item)
        if len(items) >= split_size:
            yield items
            items = []
    if items:
        yield items


def parse_real(value: t.Union[int, float, str]) -> float:
    """
    解析实数，支持分数写法，如 '1/3'

    :param value: 待解析的数值或字符串
    """
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    try:
        return float(fractions.Fraction(str(value).strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError('无法解析的数值：%r' % (value,))
