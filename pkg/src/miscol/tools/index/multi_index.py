# -*- coding: utf-8 -*-
"""
@Author      : YongJie-Xie
@Contact     : fsswxyj@qq.com
@DateTime    : 2024-03-06 09:12
@Description : 多指标 [α, β]、向下封闭的多指标集及其文本格式
@FileName    : multi_index
@License     : MIT License
@ProjectName : miscol
@Software    : PyCharm
@Version     : 1.0.0
"""
import os
import typing as t

__all__ = [
    'SPATIAL_MODES',
    'IndexSetError',
    'MultiIndex',
    'IndexSet',
    'spatial_directions',
    'downward_closure',
    'random_downward_closed_set',
]

SPATIAL_MODES = ('full', 'diagonal', 'fixed')

Direction = t.Tuple[int, ...]


class IndexSetError(ValueError):
    """多指标集为空、不向下封闭或格式错误"""


class MultiIndex(t.NamedTuple):
    """多指标 [α, β]，α 为空间层级，β 为随机层级，各分量 ≥ 1"""
    alpha: t.Tuple[int, ...]
    beta: t.Tuple[int, ...]

    @property
    def D(self) -> int:
        return len(self.alpha)

    @property
    def N(self) -> int:
        return len(self.beta)

    @property
    def flat(self) -> t.Tuple[int, ...]:
        return self.alpha + self.beta

    @classmethod
    def of(cls, alpha: t.Iterable[int], beta: t.Iterable[int]) -> 'MultiIndex':
        return cls(tuple(int(a) for a in alpha), tuple(int(b) for b in beta))

    @classmethod
    def from_flat(cls, flat: t.Sequence[int], D: int) -> 'MultiIndex':
        flat = tuple(int(v) for v in flat)
        return cls(flat[:D], flat[D:])

    @classmethod
    def root(cls, D: int, N: int) -> 'MultiIndex':
        return cls((1,) * D, (1,) * N)

    def shift(self, direction: t.Sequence[int], sign: int = 1) -> 'MultiIndex':
        return self.from_flat([v + sign * s for v, s in zip(self.flat, direction)], self.D)

    def is_valid(self) -> bool:
        return min(self.flat) >= 1

    def __str__(self):
        return '(%s; %s)' % (','.join(map(str, self.alpha)), ','.join(map(str, self.beta)))


def spatial_directions(D: int, N: int, spatial: str = 'full') -> t.Tuple[Direction, ...]:
    """
    多指标集的方向族：差分、组合系数与向下封闭性均沿这些方向定义

    ========= ==============================================================
    full      D+N 个单位向量
    diagonal  空间对角方向 (1,…,1; 0,…,0) 与 N 个随机单位向量
    fixed     仅 N 个随机单位向量，空间层级固定
    ========= ==============================================================
    """
    if spatial not in SPATIAL_MODES:
        raise ValueError('空间方向模式无效，可选值：full / diagonal / fixed')
    size = D + N
    units = tuple(tuple(int(k == i) for k in range(size)) for i in range(size))
    if spatial == 'full':
        return units
    stochastic = units[D:]
    if spatial == 'diagonal':
        return (tuple([1] * D + [0] * N),) + stochastic
    return stochastic


class IndexSet:
    """
    向下封闭的有限多指标集

    对每个成员及每个方向 v，若成员减去 v 后各分量仍 ≥ 1，则该后向邻居也必须在集合内。
    """

    def __init__(
            self,
            members: t.Iterable[MultiIndex],
            D: int,
            N: int,
            *,
            spatial: str = 'full',
    ):
        """
        :param members: 成员多指标
        :param D: 空间维数
        :param N: 随机维数
        :param spatial: 方向族，可选 full / diagonal / fixed
        """
        self._D = D
        self._N = N
        self._spatial = spatial
        self._directions = spatial_directions(D, N, spatial)
        self._members = frozenset(MultiIndex.of(m.alpha, m.beta) for m in members)

        if not self._members:
            raise IndexSetError('多指标集不能为空')
        for idx in self._members:
            if idx.D != D or idx.N != N:
                raise IndexSetError('多指标 %s 的维数与 D=%d, N=%d 不一致' % (idx, D, N))
            if not idx.is_valid():
                raise IndexSetError('多指标 %s 的分量必须 ≥ 1' % (idx,))
        if spatial == 'diagonal' and any(len(set(idx.alpha)) > 1 for idx in self._members):
            raise IndexSetError('diagonal 模式下各成员的空间分量必须相等')
        if spatial == 'fixed' and len({idx.alpha for idx in self._members}) > 1:
            raise IndexSetError('fixed 模式下各成员的空间层级必须相同')

        missing = [nb for idx in self._members for nb in self.backward_neighbors(idx) if nb not in self._members]
        if missing:
            raise IndexSetError('多指标集不向下封闭，缺少后向邻居 %s' % (min(missing),))

    @property
    def D(self) -> int:
        return self._D

    @property
    def N(self) -> int:
        return self._N

    @property
    def spatial(self) -> str:
        return self._spatial

    @property
    def directions(self) -> t.Tuple[Direction, ...]:
        return self._directions

    @property
    def members(self) -> t.FrozenSet[MultiIndex]:
        return self._members

    @property
    def root(self) -> MultiIndex:
        return min(self._members, key=lambda idx: (sum(idx.flat), idx))

    def __contains__(self, idx: MultiIndex) -> bool:
        return idx in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> t.Iterator[MultiIndex]:
        return iter(sorted(self._members))

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return (self._D, self._N, self._members) == (other.D, other.N, other.members)

    def __hash__(self):
        return hash((self._D, self._N, self._members))

    def __repr__(self):
        return 'IndexSet(D=%d, N=%d, spatial=%r, size=%d)' % (self._D, self._N, self._spatial, len(self))

    def backward_neighbors(self, idx: MultiIndex) -> t.List[MultiIndex]:
        neighbors = (idx.shift(v, -1) for v in self._directions)
        return [nb for nb in neighbors if nb.is_valid()]

    def forward_neighbors(self, idx: MultiIndex) -> t.List[MultiIndex]:
        return [idx.shift(v) for v in self._directions]

    def frontier(self) -> t.List[MultiIndex]:
        """可加入集合且保持向下封闭的前向邻居，按字典序排列"""
        candidates = {nb for idx in self._members for nb in self.forward_neighbors(idx)} - self._members
        return sorted(nb for nb in candidates if all(b in self._members for b in self.backward_neighbors(nb)))

    def extend(self, indices: t.Iterable[MultiIndex]) -> 'IndexSet':
        return downward_closure(set(self._members).union(indices), self._D, self._N, spatial=self._spatial)

    def union(self, other: 'IndexSet') -> 'IndexSet':
        if (self._D, self._N, self._spatial) != (other.D, other.N, other.spatial):
            raise IndexSetError('只能合并维数与方向族相同的多指标集')
        return IndexSet(self._members | other.members, self._D, self._N, spatial=self._spatial)

    def to_text(self) -> str:
        """每行一个多指标，D+N 个整数；首行记录 D、N 与方向族"""
        lines = ['# D=%d N=%d spatial=%s' % (self._D, self._N, self._spatial)]
        lines.extend(' '.join(map(str, idx.flat)) for idx in self)
        return '\n'.join(lines) + '\n'

    @classmethod
    def from_text(cls, text: str) -> 'IndexSet':
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith('#'):
            raise IndexSetError('多指标集文本缺少首行')
        header = dict(item.split('=', 1) for item in lines[0].lstrip('#').split() if '=' in item)
        try:
            D, N = int(header['D']), int(header['N'])
        except (KeyError, ValueError):
            raise IndexSetError('多指标集首行必须包含 D 与 N：%s' % lines[0])
        members = []
        for line in lines[1:]:
            values = line.split()
            if len(values) != D + N:
                raise IndexSetError('多指标行的长度应为 %d：%s' % (D + N, line))
            members.append(MultiIndex.from_flat([int(v) for v in values], D))
        return cls(members, D, N, spatial=header.get('spatial', 'full'))

    def save(self, path: t.Union[str, os.PathLike]):
        with open(path, 'w', encoding='utf-8') as f:
            f.write(self.to_text())

    @classmethod
    def load(cls, path: t.Union[str, os.PathLike]) -> 'IndexSet':
        with open(path, 'r', encoding='utf-8') as f:
            return cls.from_text(f.read())


def downward_closure(
        candidate: t.Iterable[MultiIndex],
        D: int,
        N: int,
        *,
        spatial: str = 'full',
) -> IndexSet:
    """
    包含候选集的最小向下封闭集

    :param candidate: 候选多指标
    :param D: 空间维数
    :param N: 随机维数
    :param spatial: 方向族
    """
    directions = spatial_directions(D, N, spatial)
    closed = set()
    stack = [MultiIndex.of(idx.alpha, idx.beta) for idx in candidate]
    while stack:
        idx = stack.pop()
        if idx in closed:
            continue
        closed.add(idx)
        for v in directions:
            nb = idx.shift(v, -1)
            if nb.is_valid() and nb not in closed:
                stack.append(nb)
    return IndexSet(closed, D, N, spatial=spatial)


def random_downward_closed_set(
        rng,
        D: int,
        N: int,
        size: int,
        *,
        spatial: str = 'full',
        root: t.Optional[MultiIndex] = None,
) -> IndexSet:
    """
    从根指标出发，每次随机加入一个可加入的前向邻居，生成随机的向下封闭集

    :param rng: numpy.random.Generator
    :param D: 空间维数
    :param N: 随机维数
    :param size: 集合大小
    :param spatial: 方向族
    :param root: 根指标，fixed 模式下用于指定固定的空间层级
    """
    if size < 1:
        raise ValueError('集合大小必须为正整数：%r' % (size,))
    index_set = IndexSet([root or MultiIndex.root(D, N)], D, N, spatial=spatial)
    while len(index_set) < size:
        frontier = index_set.frontier()
        chosen = frontier[int(rng.integers(len(frontier)))]
        index_set = IndexSet(index_set.members | {chosen}, D, N, spatial=spatial)
    return index_set
