"""
三元系模型
循环三元组、(部分) Mendelsohn 三元系、循环展开与有向边索引
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..utils.logger import get_logger
from .exceptions import InvalidDesignError, TripleNotPresentError

logger = get_logger(__name__)

Edge = Tuple[int, int]
UNCOVERED = -1


@dataclass(frozen=True, order=True)
class CyclicTriple:
    """
    循环三元组 (a, b, c)

    按最小点在前的旋转存储，因此三种旋转相等。包含有向边 (a,b), (b,c), (c,a)。
    """

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if len({a, b, c}) != 3:
            raise ValueError(f"cyclic triple needs distinct points, got ({a},{b},{c})")
        if b < a and b < c:
            a, b, c = b, c, a
        elif c < a and c < b:
            a, b, c = c, a, b
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'c', c)

    @classmethod
    def of(cls, points: Sequence[int]) -> "CyclicTriple":
        x, y, z = points
        return cls(int(x), int(y), int(z))

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def edges(self) -> Tuple[Edge, Edge, Edge]:
        """三条有向边"""
        return ((self.a, self.b), (self.b, self.c), (self.c, self.a))

    def points(self) -> frozenset:
        return frozenset((self.a, self.b, self.c))

    def rotations(self) -> Tuple[Tuple[int, int, int], ...]:
        a, b, c = self.a, self.b, self.c
        return ((a, b, c), (b, c, a), (c, a, b))

    def reversed(self) -> "CyclicTriple":
        """反向三元组，边全部反向"""
        return CyclicTriple(self.a, self.c, self.b)

    def relabel(self, perm: Sequence[int]) -> "CyclicTriple":
        return CyclicTriple(perm[self.a], perm[self.b], perm[self.c])

    def shares_edge(self, other: "CyclicTriple") -> bool:
        return bool(set(self.edges()) & set(other.edges()))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


class Completeness(str, Enum):
    """完整 MTS 或部分系统"""

    COMPLETE = "complete"
    PARTIAL = "partial"


@dataclass(frozen=True)
class TripleSystem:
    """
    三元系 (X, T)，X = {0, ..., v-1}

    triples 按规范旋转排序保存；name 只用于报表，不参与相等比较。
    """

    v: int
    triples: Tuple[CyclicTriple, ...]
    kind: Completeness = Completeness.PARTIAL
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'triples', tuple(sorted(self.triples)))
        object.__setattr__(self, 'kind', Completeness(self.kind))

    @classmethod
    def create(cls, v: int, triples: Iterable, kind: Optional[Completeness] = None,
               name: str = "") -> "TripleSystem":
        """
        由任意三元组序列创建系统

        kind 为 None 时根据校验结果推断：能作为完整系统通过校验则为 complete。
        """
        items = tuple(t if isinstance(t, CyclicTriple) else CyclicTriple.of(t) for t in triples)
        if kind is None:
            kind = infer_kind(v, items)
        return cls(v, items, kind, name)

    @property
    def is_complete(self) -> bool:
        return self.kind is Completeness.COMPLETE

    def points(self) -> range:
        return range(self.v)

    def __contains__(self, t: object) -> bool:
        if not isinstance(t, CyclicTriple):
            return False
        return t in set(self.triples)

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[CyclicTriple]:
        return iter(self.triples)

    def label(self) -> str:
        return self.name or f"mts{self.v}"


@dataclass(frozen=True)
class ValidationReport:
    """校验结果：ok 或违规列表（违规是数据，不是异常）"""

    violations: Tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def admissible_order(v: int) -> bool:
    """MTS(v) 存在当且仅当 v ≡ 0,1 (mod 3) 且 v ≠ 6"""
    return v >= 1 and v % 3 in (0, 1) and v != 6


def _collect_violations(v: int, triples: Sequence[CyclicTriple], kind: Completeness) -> List[str]:
    violations = []
    if v < 3:
        violations.append(f"order v={v} is below 3")

    seen: Dict[Edge, CyclicTriple] = {}
    reported = set()
    for t in triples:
        bad_points = [p for p in t.as_tuple() if not 0 <= p < v]
        if bad_points:
            violations.append(f"triple {t} has point {bad_points[0]} outside [0,{v})")
            continue
        for e in t.edges():
            if e in seen:
                if e not in reported:
                    violations.append(f"edge ({e[0]},{e[1]}) covered twice")
                    reported.add(e)
            else:
                seen[e] = t

    if kind is Completeness.COMPLETE:
        expected = v * (v - 1) // 3
        if v >= 3 and not admissible_order(v):
            violations.append(f"no complete MTS({v}) exists: v must be 0 or 1 mod 3 and not 6")
        if len(triples) != expected:
            violations.append(f"complete system needs {expected} triples, found {len(triples)}")
        for p in range(v):
            for q in range(v):
                if p != q and (p, q) not in seen:
                    violations.append(f"edge ({p},{q}) uncovered")
    return violations


def validate(ts: TripleSystem) -> ValidationReport:
    """
    按声明的完整性校验系统

    部分系统：每条有向边至多被一个三元组覆盖；
    完整系统：恰好一次，且 |T| = v(v-1)/3。
    """
    violations = _collect_violations(ts.v, ts.triples, ts.kind)
    if violations:
        logger.debug(f"{ts.label()} 校验失败: {len(violations)} 条违规")
    return ValidationReport(tuple(violations))


def infer_kind(v: int, triples: Sequence[CyclicTriple]) -> Completeness:
    if not _collect_violations(v, triples, Completeness.COMPLETE):
        return Completeness.COMPLETE
    return Completeness.PARTIAL


def develop_mod_v(base: Iterable, v: int, name: str = "") -> TripleSystem:
    """
    循环展开：{(x+i, y+i, z+i) mod v}

    规范旋转相同的重复三元组直接合并；完整性由校验结果决定。
    """
    developed = set()
    for t in base:
        t = t if isinstance(t, CyclicTriple) else CyclicTriple.of(t)
        for i in range(v):
            developed.add(CyclicTriple((t.a + i) % v, (t.b + i) % v, (t.c + i) % v))
    return TripleSystem.create(v, developed, name=name)


class EdgeTable:
    """
    有向边索引 (p,q) -> 覆盖它的三元组

    内部用 v×v 的 numpy 数组存三元组下标，未覆盖为 -1；对角线不使用。
    third 表给出 (p,q,r) ∈ T 时的第三点 r，供搜索内核直接查表。
    """

    def __init__(self, ts: TripleSystem):
        self.system = ts
        self.v = ts.v
        self.index = np.full((ts.v, ts.v), UNCOVERED, dtype=np.int32)
        self.third = np.full((ts.v, ts.v), UNCOVERED, dtype=np.int32)
        for i, t in enumerate(ts.triples):
            for (p, q), r in zip(t.edges(), (t.c, t.a, t.b)):
                self.index[p, q] = i
                self.third[p, q] = r

    def __getitem__(self, edge: Edge) -> Optional[CyclicTriple]:
        p, q = edge
        if p == q:
            raise KeyError(f"no edge on the diagonal ({p},{q})")
        i = int(self.index[p, q])
        return None if i == UNCOVERED else self.system.triples[i]

    def __len__(self) -> int:
        return self.v * (self.v - 1)

    def has_triple(self, x: int, y: int, z: int) -> bool:
        """循环三元组 (x,y,z) 是否在系统中"""
        return int(self.third[x, y]) == z

    def uncovered(self) -> List[Edge]:
        return [(p, q) for p in range(self.v) for q in range(self.v)
                if p != q and self.index[p, q] == UNCOVERED]

    def third_lists(self) -> List[List[int]]:
        """纯 Python 列表形式的 third 表（内核里逐元素访问更快）"""
        return self.third.tolist()


def edge_table(ts: TripleSystem) -> EdgeTable:
    """
    建立有向边索引

    Raises:
        InvalidDesignError: 系统未通过校验
    """
    report = validate(ts)
    if not report.ok:
        raise InvalidDesignError(
            f"cannot index {ts.label()}: {report.violations[0]}", report.violations)
    return EdgeTable(ts)


def remove_triple(ts: TripleSystem, t: CyclicTriple) -> TripleSystem:
    """删除一个三元组，得到部分系统；原系统不变"""
    if t not in ts:
        raise TripleNotPresentError(f"triple not present: {t} in {ts.label()}")
    remaining = list(ts.triples)
    remaining.remove(t)
    return TripleSystem(ts.v, tuple(remaining), Completeness.PARTIAL, ts.name)


def add_triple(ts: TripleSystem, t: CyclicTriple) -> TripleSystem:
    """加入一个三元组，完整性重新推断"""
    return TripleSystem.create(ts.v, ts.triples + (t,), name=ts.name)


def relabel(ts: TripleSystem, perm: Sequence[int]) -> TripleSystem:
    """按点置换 perm（perm[旧点] = 新点）重标号"""
    if sorted(perm) != list(range(ts.v)):
        raise ValueError(f"not a permutation of range({ts.v}): {list(perm)}")
    return TripleSystem(ts.v, tuple(t.relabel(perm) for t in ts.triples), ts.kind, ts.name)


def translate(ts: TripleSystem, k: int = 1) -> TripleSystem:
    """平移 i -> i+k mod v"""
    return relabel(ts, [(i + k) % ts.v for i in range(ts.v)])


def converse(ts: TripleSystem) -> TripleSystem:
    """每个三元组反向；反向系统与原系统的 l-good 序列一一对应（序列反转）"""
    return TripleSystem(ts.v, tuple(t.reversed() for t in ts.triples), ts.kind, ts.name)


def is_cyclic(ts: TripleSystem) -> bool:
    """系统在平移 i -> i+1 下不变"""
    return translate(ts, 1) == ts

