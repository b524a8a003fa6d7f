"""
3-good 序列构造器
取定枢轴点 x，建立邻域有向图 G_x 并分解为有向圈，拼出 X∖{x} 的基础序列 D_x，
再按 G_x 的圈型选择插入方式把 x 插回去，得到整个 MTS(v) (v ≥ 7) 的 3-good 序列
"""

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..utils.logger import get_logger
from .batch_processor import batch_processor
from .design_model import CyclicTriple, EdgeTable, TripleSystem, edge_table
from .exceptions import (
    CaseNotApplicableError,
    ClassificationGapError,
    InvalidDesignError,
    InvalidParameterError,
    NoAdmissibleChoiceError,
)
from .sequencing import Sequencing, is_l_good

logger = get_logger(__name__)

MIN_ORDER = 7

CASE_LONG_CYCLE = "long_cycle"
CASE_TWO_LONG = "two_long"
CASE_TWO_2CYCLES = "two_2cycles"
CASE_2_PLUS_REST = "2_plus_rest"
CASE_FREE_ORDER = "free_order"

Cycle = Tuple[int, ...]


@dataclass(frozen=True)
class NeighborDigraph:
    """
    邻域有向图 G_x

    顶点 X∖{x}；(x,y,z) ∈ T 时有边 y -> z。每个顶点入度、出度都为 1，
    因此是若干个点不交的有向圈。cycles 每个圈从最小顶点写起，按最小顶点排序。
    """

    pivot: int
    successor: Dict[int, int] = field(hash=False)
    cycles: Tuple[Cycle, ...]
    system: TripleSystem = field(repr=False, compare=False, hash=False)

    def lengths(self) -> Tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def cycle_index(self, y: int) -> int:
        for i, c in enumerate(self.cycles):
            if y in c:
                return i
        raise KeyError(y)

    def two_cycles(self) -> List[Cycle]:
        return [c for c in self.cycles if len(c) == 2]

    def long_cycles(self, min_length: int = 3) -> List[Cycle]:
        return [c for c in self.cycles if len(c) >= min_length]


def rotate(cycle: Sequence[int], start: int) -> Cycle:
    """把圈从 start 写起"""
    k = list(cycle).index(start)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def neighbor_digraph(ts: TripleSystem, x: int) -> NeighborDigraph:
    """
    建立 G_x 并做圈分解

    Raises:
        InvalidDesignError: ts 不是完整系统，或 G_x 不是圈的不交并
    """
    if not ts.is_complete:
        raise InvalidDesignError(f"{ts.label()} is not a complete MTS; G_x needs every edge covered")
    if not 0 <= x < ts.v:
        raise InvalidParameterError(f"pivot {x} outside [0,{ts.v})")

    graph = nx.DiGraph()
    graph.add_nodes_from(p for p in range(ts.v) if p != x)
    for t in ts.triples:
        rots = [r for r in t.rotations() if r[0] == x]
        if rots:
            _, y, z = rots[0]
            graph.add_edge(y, z)

    bad = [p for p in graph.nodes if graph.in_degree(p) != 1 or graph.out_degree(p) != 1]
    if bad:
        raise InvalidDesignError(f"G_{x} of {ts.label()} is not a union of cycles at vertex {bad[0]}")

    cycles = sorted((rotate(c, min(c)) for c in nx.simple_cycles(graph)), key=lambda c: c[0])
    successor = {y: z for y, z in graph.edges}
    return NeighborDigraph(x, successor, tuple(cycles), ts)


def cycle_type(ts: TripleSystem, x: int) -> Tuple[int, ...]:
    """G_x 的圈长（升序）"""
    return neighbor_digraph(ts, x).lengths()


def cycle_type_profile(ts: TripleSystem) -> Tuple[Tuple[int, ...], ...]:
    """所有点的圈型构成的多重集（同构不变量）"""
    return tuple(sorted(cycle_type(ts, x) for x in range(ts.v)))


def consecutive_windows(order: Sequence[int]) -> Iterator[Tuple[int, int, int]]:
    n = len(order)
    for i in range(n):
        yield (order[i], order[(i + 1) % n], order[(i + 2) % n])


def three_free(order: Sequence[int], table: EdgeTable) -> bool:
    """没有三个循环连续的点构成 T 中的三元组（按该顺序）"""
    return not any(table.has_triple(*w) for w in consecutive_windows(order))


@dataclass(frozen=True)
class BaseSequencing:
    """基础序列 D_x：G_x 的各个圈依次写出"""

    pivot: int
    order: Tuple[int, ...]


def base_sequencing(g: NeighborDigraph, starts: Optional[Mapping[int, int]] = None,
                    cycle_order: Optional[Sequence[int]] = None) -> BaseSequencing:
    """
    把 G_x 的圈依次写出得到 D_x

    Args:
        g: 邻域有向图
        starts: 圈下标 -> 起点，缺省从最小顶点写起
        cycle_order: 圈的书写顺序（圈下标），缺省按规范顺序
    """
    starts = dict(starts or {})
    indices = list(cycle_order) if cycle_order is not None else list(range(len(g.cycles)))
    order: List[int] = []
    for i in indices:
        c = g.cycles[i]
        order.extend(rotate(c, starts.get(i, c[0])))
    base = BaseSequencing(g.pivot, tuple(order))
    if not three_free(base.order, edge_table(g.system)):
        raise ClassificationGapError("base sequencing has three consecutive points forming a triple",
                                     g.system.label(), g.pivot, g.lengths())
    return base


@dataclass(frozen=True)
class LocalCheck:
    """
    检查表的一行：窗口 window 不是 T 的三元组

    reason 是 T 中与 window 共用一条有向边的三元组；None 表示由 y、z 的选取或交换假设保证。
    """

    window: Tuple[int, int, int]
    reason: Optional[Tuple[int, int, int]] = None

    def holds(self, table: EdgeTable) -> bool:
        if table.has_triple(*self.window):
            return False
        if self.reason is None:
            return True
        return (table.has_triple(*self.reason)
                and CyclicTriple.of(self.window).shares_edge(CyclicTriple.of(self.reason)))

    def __str__(self) -> str:
        w = "(" + ",".join(map(str, self.window)) + ")"
        if self.reason is None:
            return f"{w} not in T by choice"
        return f"{w} not in T because ({','.join(map(str, self.reason))}) in T"


@dataclass(frozen=True)
class Insertion:
    """一次插入构造的结果"""

    case: str
    pivot: int
    base: BaseSequencing
    order: Tuple[int, ...]
    checks: Tuple[LocalCheck, ...]

    @property
    def sequencing(self) -> Sequencing:
        return Sequencing(self.order)

    def failed_checks(self, table: EdgeTable) -> List[LocalCheck]:
        return [c for c in self.checks if not c.holds(table)]


def _first_verified(ts: TripleSystem, g: NeighborDigraph, case: str,
                    candidates: Iterator[Insertion]) -> Insertion:
    """
    返回第一个全局 3-good 的候选

    候选都满足该情形的前提，检查表的每一行必须成立；有一行不成立就是情形分析读错了，直接报错。
    """
    table = edge_table(ts)
    tried = 0
    for candidate in candidates:
        tried += 1
        failed = candidate.failed_checks(table)
        if failed:
            raise ClassificationGapError(f"{case}: local check failed: " + "; ".join(map(str, failed)),
                                         ts.label(), g.pivot, g.lengths())
        if is_l_good(candidate.sequencing, ts, 3):
            logger.debug(f"{ts.label()} x={g.pivot} {case}: 第 {tried} 个候选通过")
            return candidate
    raise ClassificationGapError(f"{case}: no candidate passed verification ({tried} tried)",
                                 ts.label(), g.pivot, g.lengths())


def _others(g: NeighborDigraph, *used: Cycle) -> List[int]:
    return [p for c in g.cycles if c not in used for p in c]


def insert_case_long_cycle(ts: TripleSystem, x: int, g: NeighborDigraph) -> Insertion:
    """
    存在长度 ≥ 6 的圈 C = (c1, c2, ..., cτ)

    D_x 以 C 开头，把 c1 c2 c3 c4 换成 c3 c4 c1 x c2。
    """
    longs = g.long_cycles(6)
    if not longs:
        raise CaseNotApplicableError(f"case not applicable: no cycle of length >= 6 in G_{x}")

    def candidates() -> Iterator[Insertion]:
        for cycle in longs:
            for start in cycle:
                c = rotate(cycle, start)
                dx = c + tuple(_others(g, cycle))
                c1, c2, c3, c4, c5, c6 = c[:6]
                last = dx[-1]
                order = (c3, c4, c1, x, c2) + dx[4:]
                checks = (
                    LocalCheck((last, c3, c4), (x, c3, c4)),
                    LocalCheck((c3, c4, c1), (x, c3, c4)),
                    LocalCheck((c4, c1, x), (x, c4, c5)),
                    LocalCheck((c1, x, c2), (x, c2, c3)),
                    LocalCheck((x, c2, c5), (x, c2, c3)),
                    LocalCheck((c2, c5, c6), (x, c5, c6)),
                )
                yield Insertion(CASE_LONG_CYCLE, x, BaseSequencing(x, dx), order, checks)

    return _first_verified(ts, g, CASE_LONG_CYCLE, candidates())


def insert_case_two_long(ts: TripleSystem, x: int, g: NeighborDigraph) -> Insertion:
    """
    两个长度 ≥ 3 的圈 (y, 3, 4, 5, ...) 与 (1, 2, z, ...)

    D_x 中 y 3 4 1 2 z 连续，把 4 1 换成 1 x 4。第一个圈长为 3 时 y 就是 5。
    """
    longs = g.long_cycles(3)
    if len(longs) < 2:
        raise CaseNotApplicableError(f"case not applicable: G_{x} has fewer than two cycles of length >= 3")

    def candidates() -> Iterator[Insertion]:
        for first in longs:
            for second in longs:
                if first is second:
                    continue
                rest = tuple(_others(g, first, second))
                for end in first:
                    a = rotate(first, g.successor[end])  # 以 4 结尾，从 5 写起
                    y, three, four = a[-3], a[-2], a[-1]
                    five = a[0]
                    for start in second:
                        b = rotate(second, start)
                        one, two, z = b[0], b[1], b[2]
                        dx = a + b + rest
                        order = a[:-1] + (one, x, four) + b[1:] + rest
                        checks = (
                            LocalCheck((y, three, one), (x, y, three)),
                            LocalCheck((three, one, x), (x, three, four)),
                            LocalCheck((one, x, four), (x, four, five)),
                            LocalCheck((x, four, two), (x, four, five)),
                            LocalCheck((four, two, z), (x, two, z)),
                        )
                        yield Insertion(CASE_TWO_LONG, x, BaseSequencing(x, dx), order, checks)

    return _first_verified(ts, g, CASE_TWO_LONG, candidates())


def _admissible_yz(ts_table: EdgeTable, g: NeighborDigraph, one: int, two: int, three: int,
                   four: int) -> Iterator[Tuple[int, int]]:
    """
    按点的升序枚举满足条件的 (y, z)

    (4,2,z) ∉ T，(3,1,y) ∉ T，y ≠ z；y、z 在不同的圈里，
    或者 G_x 恰有三个圈且 y 在圈上紧挨在 z 之前。
    """
    excluded = {g.pivot, one, two, three, four}
    points = [p for p in range(g.system.v) if p not in excluded]
    for z in points:
        if ts_table.has_triple(four, two, z):
            continue
        for y in points:
            if y == z or ts_table.has_triple(three, one, y):
                continue
            same = g.cycle_index(y) == g.cycle_index(z)
            if not same or (len(g.cycles) == 3 and g.successor[y] == z):
                yield y, z


def insert_case_two_2cycles(ts: TripleSystem, x: int, g: NeighborDigraph) -> Insertion:
    """
    至少两个长度为 2 的圈 (1, 2) 与 (3, 4)

    D_x 中 y 3 4 1 2 z 连续（y 在 3 之前，z 在 2 之后），把 4 1 换成 1 x 4，
    得到 y 3 1 x 4 2 z。y、z 由 _admissible_yz 选取。
    """
    twos = g.two_cycles()
    if len(twos) < 2:
        raise CaseNotApplicableError(f"case not applicable: G_{x} has fewer than two 2-cycles")
    if ts.v < MIN_ORDER:
        raise CaseNotApplicableError(f"case not applicable: v < {MIN_ORDER}")
    table = edge_table(ts)

    def candidates() -> Iterator[Insertion]:
        for p in twos:
            for q in twos:
                if p is q:
                    continue
                for three, four in (p, p[::-1]):
                    for one, two in (q, q[::-1]):
                        for y, z in _admissible_yz(table, g, one, two, three, four):
                            cy, cz = g.cycles[g.cycle_index(y)], g.cycles[g.cycle_index(z)]
                            if cy == cz:
                                w = rotate(cy, z)  # 从 z 写起，以 y 结尾
                                before, after, rest = w, (), ()
                            else:
                                before = rotate(cy, g.successor[y])
                                after = rotate(cz, z)
                                rest = tuple(_others(g, p, q, cy, cz))
                            dx = before + (three, four, one, two) + after + rest
                            order = before + (three, one, x, four, two) + after + rest
                            checks = (
                                LocalCheck((y, three, one)),
                                LocalCheck((three, one, x), (x, three, four)),
                                LocalCheck((one, x, four), (x, four, three)),
                                LocalCheck((x, four, two), (x, four, three)),
                                LocalCheck((four, two, z)),
                            )
                            yield Insertion(CASE_TWO_2CYCLES, x, BaseSequencing(x, dx), order, checks)

    choices = list(candidates())
    if not choices:
        raise NoAdmissibleChoiceError("no admissible y,z", ts.label(), x, g.lengths())
    return _first_verified(ts, g, CASE_TWO_2CYCLES, iter(choices))


def insert_case_2_plus_rest(ts: TripleSystem, x: int, g: NeighborDigraph) -> Insertion:
    """
    恰有两个圈：2-圈 (1, 2) 和覆盖其余点的长圈 (3, 4, 5, 6, ..., v)

    必要时交换 1 和 2 使 (5,4,2) ∉ T（(5,4,2) ∈ T 时 (5,4,1) ∉ T），
    再把 D_x = (1 2 3 4 ...) 中的 1 2 3 4 换成 3 1 x 4 2。
    长圈只需要四个不同顶点，所以长度 4（v = 7）也适用。
    """
    lengths = sorted(len(c) for c in g.cycles)
    if len(g.cycles) != 2 or lengths[0] != 2 or lengths[1] < 4:
        raise CaseNotApplicableError(
            f"case not applicable: G_{x} is not one 2-cycle plus one cycle of length >= 4")
    pair = next(c for c in g.cycles if len(c) == 2)
    long = next(c for c in g.cycles if c is not pair)
    table = edge_table(ts)

    def candidates() -> Iterator[Insertion]:
        for start in long:
            c = rotate(long, start)
            three, four, five, six = c[:4]
            prev, last = c[-2], c[-1]
            for one, two in (pair, pair[::-1]):
                if table.has_triple(five, four, two):
                    continue
                dx = (one, two) + c
                order = (three, one, x, four, two) + c[2:]
                checks = (
                    LocalCheck((prev, last, three), (x, prev, last)),
                    LocalCheck((last, three, one), (x, last, three)),
                    LocalCheck((three, one, x), (x, three, four)),
                    LocalCheck((one, x, four), (x, four, five)),
                    LocalCheck((x, four, two), (x, four, five)),
                    LocalCheck((four, two, five)),
                    LocalCheck((two, five, six), (x, five, six)),
                )
                yield Insertion(CASE_2_PLUS_REST, x, BaseSequencing(x, dx), order, checks)

    return _first_verified(ts, g, CASE_2_PLUS_REST, candidates())


def insert_case_free_order(ts: TripleSystem, x: int, g: NeighborDigraph) -> Insertion:
    """
    补充情形：至少两个 2-圈，但任何标号都选不出 y, z（例如 Fano 平面双向得到的 MTS(7)）

    D_x 不再按圈拼接，而是 X∖{x} 的一个排列 d1 ... dm，x 放在 dm 与 d1 之间。
    前提：D_x 作为路没有三个连续点构成 T 中的三元组，且 d(m-1)→dm、d1→dm、d1→d2 都不是 G_x 的边。
    候选按字典序深度优先生成。
    """
    if len(g.two_cycles()) < 2:
        raise CaseNotApplicableError(f"case not applicable: G_{x} has fewer than two 2-cycles")
    table = edge_table(ts)
    succ = g.successor
    points = sorted(succ)

    def candidates() -> Iterator[Insertion]:
        path: List[int] = []
        used = set()

        def extend() -> Iterator[Insertion]:
            if len(path) == len(points):
                first, second, before, last = path[0], path[1], path[-2], path[-1]
                if succ[before] == last or succ[first] == last:
                    return
                dx = tuple(path)
                checks = (
                    LocalCheck((before, last, x), (x, before, succ[before])),
                    LocalCheck((last, x, first), (x, first, succ[first])),
                    LocalCheck((x, first, second), (x, first, succ[first])),
                )
                yield Insertion(CASE_FREE_ORDER, x, BaseSequencing(x, dx), (x,) + dx, checks)
                return
            for p in points:
                if p in used:
                    continue
                if len(path) == 1 and succ[path[0]] == p:
                    continue
                if len(path) >= 2 and table.has_triple(path[-2], path[-1], p):
                    continue
                path.append(p)
                used.add(p)
                yield from extend()
                used.discard(p)
                path.pop()

        yield from extend()

    return _first_verified(ts, g, CASE_FREE_ORDER, candidates())


def classify(g: NeighborDigraph) -> str:
    """
    按 2-圈个数选择插入方式

    ≥ 2 个 2-圈 -> two_2cycles；恰 1 个：有两个长度 ≥ 3 的圈 -> two_long，否则 2_plus_rest；
    没有 2-圈：至少两个圈 -> two_long，否则 long_cycle。
    """
    twos = len(g.two_cycles())
    if twos >= 2:
        return CASE_TWO_2CYCLES
    if twos == 1:
        return CASE_TWO_LONG if len(g.long_cycles(3)) >= 2 else CASE_2_PLUS_REST
    return CASE_TWO_LONG if len(g.cycles) >= 2 else CASE_LONG_CYCLE


CASES = {
    CASE_LONG_CYCLE: insert_case_long_cycle,
    CASE_TWO_LONG: insert_case_two_long,
    CASE_TWO_2CYCLES: insert_case_two_2cycles,
    CASE_2_PLUS_REST: insert_case_2_plus_rest,
    CASE_FREE_ORDER: insert_case_free_order,
}

# 主情形选不出标号时改用的补充情形
SUPPLEMENTARY = {CASE_TWO_2CYCLES: CASE_FREE_ORDER}


def construct(ts: TripleSystem, x: Optional[int] = None) -> Insertion:
    """
    构造并校验 3-good 序列，返回完整的插入记录

    Raises:
        InvalidParameterError: v < 7
        ClassificationGapError: 没有适用的情形、局部检查不成立或输出未通过校验
    """
    if ts.v < MIN_ORDER:
        raise InvalidParameterError(f"v < {MIN_ORDER} (got v={ts.v})")
    x = min(ts.points()) if x is None else x
    g = neighbor_digraph(ts, x)
    case = classify(g)
    try:
        insertion = CASES[case](ts, x, g)
    except CaseNotApplicableError as e:
        raise ClassificationGapError(f"classification gap: {e}", ts.label(), x, g.lengths()) from e
    except NoAdmissibleChoiceError as e:
        if case not in SUPPLEMENTARY:
            raise
        case = SUPPLEMENTARY[case]
        logger.info(f"{ts.label()} x={x} 圈型 {list(g.lengths())}: {e}，改用 {case}")
        insertion = CASES[case](ts, x, g)

    # 出口处再做一次全局校验，构造器从不返回未经校验的序列
    if not is_l_good(insertion.sequencing, ts, 3):
        raise ClassificationGapError("output is not 3-good", ts.label(), x, g.lengths())
    logger.debug(f"{ts.label()} x={x} 圈型 {list(g.lengths())} -> {case}: {insertion.sequencing}")
    return insertion


def three_good_sequencing(ts: TripleSystem, x: Optional[int] = None) -> Sequencing:
    """任意 MTS(v)，v ≥ 7，的一个经过校验的 3-good 序列；x 缺省为点 0"""
    return construct(ts, x).sequencing


def _pivot_task(args) -> Insertion:
    ts, x = args
    return construct(ts, x)


def construct_all_pivots(ts: TripleSystem, jobs: int = 1) -> List[Insertion]:
    """对每个枢轴点各构造一次（诊断用），任何失败都会抛出"""
    if ts.v < MIN_ORDER:
        raise InvalidParameterError(f"v < {MIN_ORDER} (got v={ts.v})")
    return batch_processor.run(_pivot_task, [(ts, x) for x in range(ts.v)], jobs=jobs,
                               desc=f"{ts.label()} 全部枢轴")
