"""
MTS(v) 穷举
对小 v 生成在点重标号与整体反向下两两不同构的全部 MTS(v)，并统计 3-good / 4-good 序列的存在性
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from ..formats.design_io import write_design
from ..utils.config_loader import config_loader
from ..utils.logger import get_logger
from .batch_processor import batch_processor
from .constructor import cycle_type
from .design_model import Completeness, CyclicTriple, TripleSystem, admissible_order
from .exceptions import BudgetExceededError, InadmissibleOrderError, OrderTooLargeError
from .isomorphism import converse_canonical_form
from .performance_monitor import performance_monitor
from .search import find_l_good

logger = get_logger(__name__)

LONG_RUNNING_ORDER = 10

Partition = Tuple[int, ...]
CanonicalTriples = Tuple[Tuple[int, int, int], ...]


def admissible(v: int) -> bool:
    """MTS(v) 存在当且仅当 v ≡ 0,1 (mod 3) 且 v ≠ 6"""
    return admissible_order(v)


def cycle_type_partitions(n: int) -> List[Partition]:
    """
    n 拆成不小于 2 的部分的全部方式（升序元组，字典序）

    即 v = n+1 时邻域有向图 G_x 可能的圈型。
    """
    result: List[Partition] = []

    def extend(rest: int, smallest: int, parts: List[int]):
        if rest == 0:
            result.append(tuple(parts))
            return
        for part in range(smallest, rest + 1):
            if rest - part == 0 or rest - part >= part:
                extend(rest - part, part, parts + [part])

    extend(n, 2, [])
    return result


def standard_neighborhood(partition: Partition) -> List[Tuple[int, int, int]]:
    """
    枢轴点 0 的标准邻域：圈 (1..l1), (l1+1..l1+l2), ... 给出三元组 (0, y, succ(y))
    """
    triples = []
    start = 1
    for length in partition:
        cycle = list(range(start, start + length))
        for i, y in enumerate(cycle):
            triples.append((0, y, cycle[(i + 1) % length]))
        start += length
    return triples


class _Completion:
    """
    固定 G_0 后的精确覆盖

    未覆盖的有向边记在位掩码里（边 (p,q) 对应第 p*v+q 位）。每一步覆盖编号最小的
    未覆盖边 (p,q)，第三点 r 需满足 (q,r) 与 (r,p) 也未覆盖。
    """

    def __init__(self, v: int, partition: Partition, budget: Optional[int] = None):
        self.v = v
        self.partition = partition
        self.budget = budget
        self.base = standard_neighborhood(partition)
        self.nodes = 0
        mask = 0
        for p in range(v):
            for q in range(v):
                if p != q:
                    mask |= 1 << (p * v + q)
        for t in self.base:
            mask = self._cover(mask, t)
        self.mask = mask

    def _bit(self, p: int, q: int) -> int:
        return 1 << (p * self.v + q)

    def _cover(self, mask: int, t: Tuple[int, int, int]) -> int:
        x, y, z = t
        return mask & ~(self._bit(x, y) | self._bit(y, z) | self._bit(z, x))

    def _choices(self, mask: int) -> Tuple[Tuple[int, int], List[int]]:
        low = (mask & -mask).bit_length() - 1
        p, q = divmod(low, self.v)
        options = [r for r in range(1, self.v)
                   if r != p and r != q and mask & self._bit(q, r) and mask & self._bit(r, p)]
        return (p, q), options

    def branches(self) -> List[Optional[int]]:
        """第一层分支的第三点；G_0 已覆盖全部边时返回 [None]"""
        if self.mask == 0:
            return [None]
        return self._choices(self.mask)[1]

    def leaves(self, first: Optional[int]) -> Iterator[List[Tuple[int, int, int]]]:
        """第一层取 first 的子树里的全部完成方式"""
        chosen: List[Tuple[int, int, int]] = list(self.base)
        if first is None:
            yield list(chosen)
            return
        (p, q), _ = self._choices(self.mask)
        chosen.append((p, q, first))
        yield from self._descend(self._cover(self.mask, (p, q, first)), chosen)

    def _descend(self, mask: int, chosen: List[Tuple[int, int, int]]):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceededError(f"budget exceeded after {self.nodes} nodes", self.nodes)
        if mask == 0:
            yield list(chosen)
            return
        (p, q), options = self._choices(mask)
        for r in options:
            chosen.append((p, q, r))
            yield from self._descend(self._cover(mask, (p, q, r)), chosen)
            chosen.pop()


def _pivot_is_minimal(ts: TripleSystem, partition: Partition) -> bool:
    """点 0 的圈型在所有点里字典序最小"""
    return all(cycle_type(ts, x) >= partition for x in range(1, ts.v))


def _subtree_task(args) -> Tuple[List[CanonicalTriples], int]:
    """进程池工作函数：一个 (圈型, 第一层分支) 子树，返回去重后的规范形与节点数"""
    v, partition, first, budget = args
    completion = _Completion(v, partition, budget)
    found: Set[CanonicalTriples] = set()
    for triples in completion.leaves(first):
        ts = TripleSystem.create(v, triples, kind=Completeness.COMPLETE)
        if not _pivot_is_minimal(ts, partition):
            continue
        found.add(tuple(t.as_tuple() for t in converse_canonical_form(ts).triples))
    return sorted(found), completion.nodes


@dataclass
class Checkpoint:
    """长时间枚举的断点：已完成的子树与已找到的规范形"""

    v: int
    done: Set[Tuple[Partition, Optional[int]]]
    designs: Set[CanonicalTriples]
    nodes: int = 0

    @classmethod
    def load(cls, path: Path, v: int) -> "Checkpoint":
        if not path.exists():
            return cls(v, set(), set())
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        if data.get("v") != v:
            logger.warning(f"断点文件 {path} 属于 v={data.get('v')}，忽略")
            return cls(v, set(), set())
        done = {(tuple(p), r) for p, r in data.get("done", [])}
        designs = {tuple(tuple(t) for t in d) for d in data.get("designs", [])}
        logger.info(f"从断点恢复: {len(done)} 个子树已完成, {len(designs)} 个设计")
        return cls(v, done, designs, int(data.get("nodes", 0)))

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        data = {
            "v": self.v,
            "nodes": self.nodes,
            "done": sorted([list(p), r] for p, r in self.done),
            "designs": [[list(t) for t in d] for d in sorted(self.designs)],
        }
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, 'w', encoding='utf-8') as f:
            json.dump(data, f)
        tmp.replace(path)


def _guard(v: int, long_running: bool) -> None:
    if v < 3 or not admissible(v):
        raise InadmissibleOrderError(f"inadmissible v={v}")
    limit = int(config_loader.get("enumeration.max_order", LONG_RUNNING_ORDER))
    if v > limit:
        raise OrderTooLargeError(f"v={v} exceeds enumeration.max_order={limit}")
    if v >= LONG_RUNNING_ORDER and not long_running:
        raise BudgetExceededError(
            f"budget exceeded: enumeration of MTS({v}) is long-running, enable it explicitly")


@performance_monitor("enumerate_mts")
def enumerate_mts(v: int, limit: Optional[int] = None, jobs: int = 1, long_running: bool = False,
                  checkpoint: Optional[Path] = None, resume: bool = False,
                  progress: bool = False) -> List[TripleSystem]:
    """
    两两不同构的全部 MTS(v)，按规范形排序，命名 mts<v>_<序号>

    同构指点重标号，且互为反向的两个系统算同一个设计，这样 v = 7, 9 分别得到 3 和 18 个。
    对每个圈型 λ 把 G_0 固定为标准形再做精确覆盖；只保留点 0 圈型最小的完成方式（每个同构类至少有一个这样的标号）。
    每个设计以 converse_canonical_form 的三元组给出。

    Args:
        v: 阶
        limit: 节点预算，None 取配置 enumeration.node_budget
        jobs: 进程数
        long_running: v ≥ 10 时必须显式开启
        checkpoint: 断点文件，None 且 long_running 时取配置 enumeration.checkpoint_file
        resume: 从断点继续

    Raises:
        InadmissibleOrderError: v 不可容许
        BudgetExceededError: 超出节点预算，或 v ≥ 10 未开启 long_running
    """
    _guard(v, long_running)
    budget = limit if limit is not None else config_loader.get("enumeration.node_budget")
    budget = int(budget) if budget is not None else None

    if checkpoint is None and long_running:
        checkpoint = config_loader.resolve_path("enumeration.checkpoint_file", "work/enumerate_v10.json")
    state = Checkpoint.load(Path(checkpoint), v) if (checkpoint and resume) else Checkpoint(v, set(), set())
    every = int(config_loader.get("enumeration.checkpoint_every", 200000) or 0)

    tasks = []
    for partition in cycle_type_partitions(v - 1):
        for first in _Completion(v, partition).branches():
            if (partition, first) not in state.done:
                tasks.append((partition, first))
    logger.info(f"枚举 MTS({v}): {len(tasks)} 个子树待处理")

    chunk = max(1, jobs) * 4
    since_save = 0
    for start in range(0, len(tasks), chunk):
        batch = tasks[start:start + chunk]
        remaining = None if budget is None else budget - state.nodes
        if remaining is not None and remaining <= 0:
            raise BudgetExceededError(f"budget exceeded after {state.nodes} nodes", state.nodes)
        results = batch_processor.run(_subtree_task, [(v, p, r, remaining) for p, r in batch],
                                      jobs=jobs, desc=f"MTS({v})", progress=progress)
        for (partition, first), (found, nodes) in zip(batch, results):
            state.done.add((partition, first))
            state.designs.update(found)
            state.nodes += nodes
            since_save += nodes
        if budget is not None and state.nodes > budget:
            raise BudgetExceededError(f"budget exceeded after {state.nodes} nodes", state.nodes)
        if checkpoint and since_save >= every:
            state.save(Path(checkpoint))
            since_save = 0
        logger.debug(f"MTS({v}): {len(state.done)} 个子树完成, {len(state.designs)} 个设计")

    if checkpoint:
        state.save(Path(checkpoint))

    designs = [
        TripleSystem.create(v, [CyclicTriple.of(t) for t in triples], kind=Completeness.COMPLETE,
                            name=f"mts{v}_{i}")
        for i, triples in enumerate(sorted(state.designs), start=1)
    ]
    logger.info(f"MTS({v}): {len(designs)} 个不同构设计, {state.nodes} 个节点")
    return designs


@dataclass(frozen=True)
class Table1Row:
    """(v, 设计数, 有 3-good 序列的设计数, 有 4-good 序列的设计数)"""

    v: int
    designs: int
    three_good: int
    four_good: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.v, self.designs, self.three_good, self.four_good)


def _goodness_task(ts: TripleSystem) -> Tuple[bool, bool]:
    return find_l_good(ts, 3) is not None, find_l_good(ts, 4) is not None


def classify_all(v: int, jobs: int = 1, long_running: bool = False, resume: bool = False,
                 designs: Optional[Sequence[TripleSystem]] = None,
                 progress: bool = False) -> Table1Row:
    """
    对全部 MTS(v) 统计 3-good / 4-good 序列的存在性

    v 不可容许时该行全为 0。designs 给定时跳过枚举。
    """
    if designs is None:
        if v < 3 or not admissible(v):
            return Table1Row(v, 0, 0, 0)
        designs = enumerate_mts(v, jobs=jobs, long_running=long_running, resume=resume,
                                progress=progress)
    flags = batch_processor.run(_goodness_task, designs, jobs=jobs, desc=f"分类 MTS({v})",
                                progress=progress)
    row = Table1Row(v, len(designs), sum(a for a, _ in flags), sum(b for _, b in flags))
    logger.info(f"v={v}: {row.designs} 个设计, 3-good {row.three_good}, 4-good {row.four_good}")
    return row


def write_designs(designs: Sequence[TripleSystem], outdir: Path) -> List[Path]:
    """每个设计写成 outdir/<name>.txt（即 mts<v>_<序号>.txt）"""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    for ts in designs:
        path = outdir / f"{ts.label()}.txt"
        write_design(ts, path)
        paths.append(path)
    logger.info(f"写出 {len(paths)} 个设计到 {outdir}")
    return paths
