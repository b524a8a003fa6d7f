"""
序列回溯搜索
查找 / 字典序最小 / 计数 l-good 序列，计算设计的最优 l
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..utils.config_loader import config_loader
from ..utils.logger import get_logger
from .batch_processor import batch_processor
from .design_model import CyclicTriple, TripleSystem, edge_table, remove_triple
from .exceptions import InvalidParameterError
from .performance_monitor import PerformanceMonitor, performance_monitor
from .sequencing import NO_GOOD_L, Sequencing, bound_l, window_span

logger = get_logger(__name__)

TSV_HEADER = "design\tl\toutcome\tcount\twitness\tnodes\tms"


class SearchMode(str, Enum):
    """命令行 search 的三种模式"""

    FIND = "find"
    LEX = "lex"
    COUNT = "count"


class FindMode(str, Enum):
    ANY = "any"
    LEX_LEAST = "lex_least"


@dataclass(frozen=True)
class SearchReport:
    """单个设计、单个 l 的搜索结果"""

    design: str
    l: int
    outcome: str  # found | exhausted
    count: Optional[int]
    witness: Optional[Sequencing]
    nodes: int
    elapsed_ms: float

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    def to_tsv(self, timing: bool = False) -> str:
        """
        TSV 行：design  l  outcome  count  witness  nodes  ms

        不带 timing 时 ms 列写 '-'，保证同样输入输出逐字节一致。
        """
        fields = [
            self.design,
            str(self.l),
            self.outcome,
            "-" if self.count is None else str(self.count),
            "-" if self.witness is None else self.witness.to_text(),
            str(self.nodes),
            f"{self.elapsed_ms:.1f}" if timing else "-",
        ]
        return "\t".join(fields)


def window_pairs(n: int, l: int) -> List[List[Tuple[int, int]]]:
    """
    每个位置 i 需要检查的更早位置对 (j, k)

    j < k < i 且三个位置在长度 n 的圈上能放进 l 个连续位置。
    位置在最终圈上是固定的，所以跨接缝的窗口也能在三个点都放好时立刻检查。
    """
    return [[(j, k) for j in range(i) for k in range(j + 1, i)
             if window_span((j, k, i), n) <= l]
            for i in range(n)]


class SequencingSearch:
    """
    回溯内核

    第 0 位固定为最小点 0，其余位置从左到右按点的升序尝试，
    因此找到的第一个解就是字典序最小解。count 数的是首位为 0 的解，即旋转类数（反转不合并）。
    """

    def __init__(self, ts: TripleSystem, l: int):
        if l < 3:
            raise InvalidParameterError(f"l < 3 (got {l})")
        self.system = ts
        self.l = l
        self.n = ts.v
        self.third = edge_table(ts).third_lists()
        self.pairs = window_pairs(self.n, l)
        self.nodes = 0

    def _options(self, order: List[int], used: List[bool], i: int,
                 forced: Sequence[int]) -> List[int]:
        third = self.third
        forbidden = {third[order[j]][order[k]] for j, k in self.pairs[i]}
        if i < len(forced):
            c = forced[i]
            if 0 <= c < self.n and not used[c] and c not in forbidden:
                return [c]
            return []
        return [c for c in range(self.n) if not used[c] and c not in forbidden]

    def _start(self, prefix: Sequence[int]):
        order = [0] * self.n
        used = [False] * self.n
        used[0] = True
        return order, used, (0,) + tuple(prefix)

    def first(self, prefix: Sequence[int] = ()) -> Optional[Tuple[int, ...]]:
        """第一个（字典序最小）解，prefix 固定第 1.. 位"""
        order, used, forced = self._start(prefix)
        n = self.n

        def descend(i: int) -> bool:
            self.nodes += 1
            if i == n:
                return True
            for c in self._options(order, used, i, forced):
                order[i] = c
                used[c] = True
                if descend(i + 1):
                    return True
                used[c] = False
            return False

        return tuple(order) if descend(1) else None

    def count(self, prefix: Sequence[int] = ()) -> Tuple[int, Optional[Tuple[int, ...]]]:
        """解的个数以及第一个解"""
        order, used, forced = self._start(prefix)
        n = self.n
        first: List[Tuple[int, ...]] = []

        def descend(i: int) -> int:
            self.nodes += 1
            if i == n:
                if not first:
                    first.append(tuple(order))
                return 1
            total = 0
            for c in self._options(order, used, i, forced):
                order[i] = c
                used[c] = True
                total += descend(i + 1)
                used[c] = False
            return total

        total = descend(1)
        return total, (first[0] if first else None)

    def prefixes(self, depth: int) -> List[Tuple[int, ...]]:
        """深度为 depth 的全部可行前缀（不含第 0 位），按字典序"""
        order, used, forced = self._start(())
        depth = max(0, min(depth, self.n - 1))
        found: List[Tuple[int, ...]] = []

        def descend(i: int):
            if i == depth + 1:
                found.append(tuple(order[1:i]))
                return
            for c in self._options(order, used, i, forced):
                order[i] = c
                used[c] = True
                descend(i + 1)
                used[c] = False

        descend(1)
        return found


def _subtree_task(args) -> Tuple[Optional[Tuple[int, ...]], int, int]:
    """进程池工作函数：在一个前缀子树里查找或计数"""
    ts, l, prefix, counting = args
    kernel = SequencingSearch(ts, l)
    if counting:
        total, first = kernel.count(prefix)
        return first, total, kernel.nodes
    first = kernel.first(prefix)
    return first, int(first is not None), kernel.nodes


def _run(ts: TripleSystem, l: int, counting: bool, jobs: int) -> Tuple[Optional[Tuple[int, ...]], int, int]:
    kernel = SequencingSearch(ts, l)
    if jobs <= 1:
        if counting:
            total, first = kernel.count()
            return first, total, kernel.nodes
        first = kernel.first()
        return first, int(first is not None), kernel.nodes

    # 子树并行：前缀按字典序排列，按顺序归约，结果与顺序执行一致
    depth = int(config_loader.get("search.split_depth", 1) or 1)
    prefixes = kernel.prefixes(depth)
    results = batch_processor.run(_subtree_task, [(ts, l, p, counting) for p in prefixes], jobs=jobs)
    witness = next((first for first, _, _ in results if first is not None), None)
    total = sum(c for _, c, _ in results)
    nodes = sum(nd for _, _, nd in results)
    return witness, total, nodes


def find_l_good(ts: TripleSystem, l: int, mode: str = FindMode.LEX_LEAST,
                jobs: int = 1) -> Optional[Sequencing]:
    """
    查找一个 l-good 序列，不存在时返回 None（搜索是穷尽的）

    mode=lex_least 返回首位固定为最小点后字典序最小的解；
    顺序内核按升序尝试候选点，因此 any 模式返回的也是同一个解。
    """
    FindMode(mode)
    witness, _, nodes = _run(ts, l, counting=False, jobs=jobs)
    logger.debug(f"find {ts.label()} l={l}: nodes={nodes}")
    return Sequencing(witness) if witness is not None else None


def count_l_good(ts: TripleSystem, l: int, jobs: int = 1) -> int:
    """
    l-good 序列个数，按位置计（旋转各算一个，反转分开计）

    内核数旋转类，每个旋转类恰好对应 v 个按位置不同的序列。
    """
    _, total, nodes = _run(ts, l, counting=True, jobs=jobs)
    logger.debug(f"count {ts.label()} l={l}: {total} 个旋转类 (nodes={nodes})")
    return ts.v * total


def search(ts: TripleSystem, l: int, mode: str = SearchMode.LEX, jobs: int = 1) -> SearchReport:
    """按命令行模式搜索并生成 SearchReport"""
    mode = SearchMode(mode)
    counting = mode is SearchMode.COUNT
    monitor = PerformanceMonitor()
    monitor.start_timer("search")
    witness, total, nodes = _run(ts, l, counting=counting, jobs=jobs)
    monitor.end_timer("search")
    elapsed = monitor.elapsed_ms("search")
    logger.info(f"{ts.label()} l={l} {mode.value}: "
                f"{'found' if witness else 'exhausted'}, nodes={nodes}, {elapsed:.1f}ms")
    return SearchReport(
        design=ts.label(),
        l=l,
        outcome="found" if witness is not None else "exhausted",
        count=ts.v * total if counting else None,
        witness=Sequencing(witness) if witness is not None else None,
        nodes=nodes,
        elapsed_ms=elapsed,
    )


def optimal_l(ts: TripleSystem, jobs: int = 1) -> Tuple[int, Optional[Sequencing]]:
    """
    存在 l-good 序列的最大 l 及其证据

    完整系统最多试到 bound_l(v)，部分系统最多试到 v；连 3-good 都没有时返回 (2, None)。
    """
    cap = bound_l(ts.v) if ts.is_complete else ts.v
    best: Tuple[int, Optional[Sequencing]] = (NO_GOOD_L, None)
    for l in range(3, cap + 1):
        witness = find_l_good(ts, l, jobs=jobs)
        if witness is None:
            break
        best = (l, witness)
    logger.info(f"{ts.label()} 最优 l = {best[0]}")
    return best


def verify_bound_exhaustive(ts: TripleSystem) -> bool:
    """
    穷尽验证上界：不存在 (bound_l(v)+1)-good 序列

    v = 3, 4 时 bound_l(v)+1 < 3，按 3-good 检查。
    """
    l = max(3, bound_l(ts.v) + 1)
    return find_l_good(ts, l) is None


@dataclass(frozen=True)
class RemovalResult:
    """删除一个三元组后的搜索结果"""

    triple: CyclicTriple
    found: bool
    witness: Optional[Sequencing]


def _removal_task(args) -> RemovalResult:
    ts, t, l = args
    witness = find_l_good(remove_triple(ts, t), l, mode=FindMode.ANY)
    return RemovalResult(t, witness is not None, witness)


@performance_monitor("partial_removal_sweep")
def partial_removal_sweep(ts: TripleSystem, l: int, jobs: int = 1,
                          progress: bool = False) -> List[RemovalResult]:
    """对每个三元组：删除后的部分系统是否有 l-good 序列"""
    if l < 3:
        raise InvalidParameterError(f"l < 3 (got {l})")
    results = batch_processor.run(_removal_task, [(ts, t, l) for t in ts.triples], jobs=jobs,
                                  desc=f"{ts.label()} 删除扫描", progress=progress)
    found = sum(r.found for r in results)
    logger.info(f"{ts.label()} l={l} 删除扫描: {found}/{len(results)} 找到")
    return results
