"""
同构判定
点重标号下的规范形（最小像回溯搜索）与同构测试；可选地把整体反向的系统也视为同构
"""

from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from ..utils.config_loader import config_loader
from ..utils.logger import get_logger
from .constructor import cycle_type_profile
from .design_model import CyclicTriple, TripleSystem, converse
from .exceptions import OrderMismatchError, OrderTooLargeError

logger = get_logger(__name__)

Key = Tuple[int, ...]


def triple_key(x: int, y: int, z: int) -> Key:
    """三元组的排序键 (最大点, 规范旋转)"""
    t = CyclicTriple(x, y, z)
    return (max(x, y, z), t.a, t.b, t.c)


def encode(triples: Sequence[CyclicTriple]) -> Tuple[Key, ...]:
    """
    规范形比较所用的编码

    三元组按 (最大点, 规范旋转) 排序。标号按 0,1,2,... 依次分配时，
    最大点不超过 k 的三元组恰好构成编码前缀，回溯可以逐层比较前缀。
    """
    return tuple(sorted(triple_key(t.a, t.b, t.c) for t in triples))


@dataclass(frozen=True)
class CanonicalForm:
    """
    规范形：所有重标号中编码最小的像

    permutation[旧点] = 新点 是一个证明置换；conversed 为真时它作用在反向系统上。二者都不参与相等比较。
    """

    v: int
    triples: Tuple[CyclicTriple, ...]
    permutation: Tuple[int, ...] = field(compare=False)
    conversed: bool = field(default=False, compare=False)

    def encoding(self) -> Tuple[Key, ...]:
        return encode(self.triples)

    def to_system(self, name: str = "") -> TripleSystem:
        return TripleSystem.create(self.v, self.triples, name=name)


class _MinimalImageSearch:
    """
    最小像搜索

    依次决定哪个原始点获得标号 k。标号 k 加入后新出现的三元组（最大点为 k）
    构成编码的下一段；当前前缀大于已知最优像的同长前缀时剪枝。
    """

    def __init__(self, ts: TripleSystem):
        self.v = ts.v
        self.incident: List[List[Tuple[int, int, int]]] = [[] for _ in range(ts.v)]
        for t in ts.triples:
            for p in t.as_tuple():
                self.incident[p].append(t.as_tuple())
        self.best: Optional[List[Key]] = None
        self.best_cut: List[int] = []
        self.best_perm: Optional[List[int]] = None
        self.nodes = 0

    def run(self) -> Tuple[List[Key], List[int]]:
        v = self.v
        label = [-1] * v
        prefix: List[Key] = []
        cuts: List[int] = []

        def descend(k: int):
            self.nodes += 1
            if k == v:
                if self.best is None or prefix < self.best:
                    self.best = list(prefix)
                    self.best_cut = list(cuts)
                    self.best_perm = list(label)
                return
            sentinel = (k + 1,)
            for p in range(v):
                if label[p] >= 0:
                    continue
                label[p] = k
                block = sorted(
                    triple_key(label[a], label[b], label[c])
                    for a, b, c in self.incident[p]
                    if label[a] >= 0 and label[b] >= 0 and label[c] >= 0
                )
                prefix.extend(block)
                cuts.append(len(prefix))
                if self.best is None or \
                        prefix + [sentinel] <= self.best[:self.best_cut[k]] + [sentinel]:
                    descend(k + 1)
                cuts.pop()
                del prefix[len(prefix) - len(block):]
                label[p] = -1

        descend(0)
        return self.best, self.best_perm


def _guard(ts: TripleSystem) -> None:
    limit = int(config_loader.get("isomorphism.max_order", 12))
    if ts.v > limit:
        raise OrderTooLargeError(f"v too large for exact canonicalization (v={ts.v} > {limit})")


def canonical_form(ts: TripleSystem) -> CanonicalForm:
    """
    规范形

    两个系统规范形相等当且仅当同构；对规范形再求规范形不变。

    Raises:
        OrderTooLargeError: v 超过 isomorphism.max_order
    """
    _guard(ts)
    search = _MinimalImageSearch(ts)
    _, perm = search.run()
    image = tuple(sorted(t.relabel(perm) for t in ts.triples))
    logger.debug(f"{ts.label()} 规范化: {search.nodes} 个节点")
    return CanonicalForm(ts.v, image, tuple(perm))


def converse_canonical_form(ts: TripleSystem) -> CanonicalForm:
    """
    点重标号加整体反向下的规范形：ts 与 converse(ts) 两个规范形中编码较小的一个

    穷举时按它去重，与设计数的统计口径一致。
    """
    forms = (canonical_form(ts), replace(canonical_form(converse(ts)), conversed=True))
    return min(forms, key=CanonicalForm.encoding)


def is_isomorphic(a: TripleSystem, b: TripleSystem, up_to_converse: bool = False) -> bool:
    """
    是否存在点置换把 a 的三元组映到 b 的三元组

    up_to_converse 为真时 b 也可以与 a 的反向系统同构。
    邻域有向图圈型的多重集只用来快速否定，不单独作出肯定判断（反向不改变圈型）。
    """
    if a.v != b.v:
        raise OrderMismatchError(f"order mismatch: {a.v} != {b.v}")
    if len(a) != len(b):
        return False
    if a.is_complete and b.is_complete and cycle_type_profile(a) != cycle_type_profile(b):
        return False
    if up_to_converse:
        return converse_canonical_form(a) == converse_canonical_form(b)
    return canonical_form(a) == canonical_form(b)


def canonical_index(designs: Sequence[TripleSystem],
                    up_to_converse: bool = False) -> Dict[Tuple[CyclicTriple, ...], TripleSystem]:
    """按规范形去重，返回 规范三元组 -> 第一个代表"""
    form = converse_canonical_form if up_to_converse else canonical_form
    index: Dict[Tuple[CyclicTriple, ...], TripleSystem] = {}
    for ts in designs:
        index.setdefault(form(ts).triples, ts)
    return index
