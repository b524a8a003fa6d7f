"""
序列 (sequencing)
点的有向循环排列、诱导的三元循环序 C(D)、三元组包含关系与 l-good 判定
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .design_model import CyclicTriple, TripleSystem
from .exceptions import DesignFormatError, InvalidParameterError, SequencingError

NO_GOOD_L = 2  # max_good_l 的哨兵值：连 3-good 都不是


def window_span(positions: Iterable[int], n: int) -> int:
    """
    包含给定位置的最短循环窗口长度

    位置排序后相邻间隔（含绕回的一段）里最大的那段不必覆盖，窗口长度 = n - 最大间隔 + 1。
    """
    ps = sorted(positions)
    if len(ps) <= 1:
        return len(ps)
    gaps = [b - a for a, b in zip(ps, ps[1:])]
    gaps.append(n - ps[-1] + ps[0])
    return n - max(gaps) + 1


@dataclass(frozen=True)
class Sequencing:
    """
    序列 D：全部点排成有向圈

    旋转到最小点在前保存，因此旋转相等；反转不认为相等。
    """

    order: Tuple[int, ...]
    position: Dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        order = tuple(int(p) for p in self.order)
        if len(set(order)) != len(order):
            raise SequencingError(f"points not distinct in sequencing {list(order)}")
        if order:
            k = order.index(min(order))
            order = order[k:] + order[:k]
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'position', {p: i for i, p in enumerate(order)})

    @classmethod
    def parse(cls, text: str) -> "Sequencing":
        """
        解析序列文本

        含空白时按空白分隔；否则视为逐位数字的紧凑写法（附录风格，如 023471856）。
        """
        text = text.strip()
        if not text:
            raise DesignFormatError("empty sequencing text")
        try:
            if any(ch.isspace() for ch in text) or ',' in text:
                points = [int(tok) for tok in text.replace(',', ' ').split()]
            else:
                points = [int(ch) for ch in text]
        except ValueError as e:
            raise DesignFormatError(f"bad sequencing text {text!r}: {e}") from e
        return cls(tuple(points))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        """通用写法：空格分隔"""
        return " ".join(str(p) for p in self.order)

    def to_compact(self) -> str:
        """紧凑写法，只在所有点都是一位数时可用"""
        if any(p > 9 for p in self.order):
            raise DesignFormatError("compact form needs single-digit points")
        return "".join(str(p) for p in self.order)

    def reversed(self) -> "Sequencing":
        return Sequencing(tuple(reversed(self.order)))

    def covers(self, ts: TripleSystem) -> bool:
        """是否恰好是 ts 点集上的序列"""
        return sorted(self.order) == list(range(ts.v))


@dataclass(frozen=True)
class TernaryQuery:
    """三元查询 [x,y,z]，三点互异"""

    x: int
    y: int
    z: int

    def __post_init__(self):
        if len({self.x, self.y, self.z}) != 3:
            raise SequencingError(f"points not distinct: [{self.x},{self.y},{self.z}]")


def _positions(D: Sequencing, points: Sequence[int]) -> List[int]:
    try:
        return [D.position[p] for p in points]
    except KeyError as e:
        raise SequencingError(f"point {e.args[0]} not in sequencing") from None


def in_cyclic_order(D: Sequencing, q: TernaryQuery) -> bool:
    """从 x 出发沿 D 前进，先遇到 y 再遇到 z"""
    px, py, pz = _positions(D, (q.x, q.y, q.z))
    n = len(D)
    return (py - px) % n < (pz - px) % n


def contains_triple(D: Sequencing, t: CyclicTriple) -> bool:
    """循环三元组 t 被 D 包含：[a,b,c] ∈ C(D)"""
    return in_cyclic_order(D, TernaryQuery(t.a, t.b, t.c))


def _require_over(D: Sequencing, ts: TripleSystem) -> None:
    if not D.covers(ts):
        raise SequencingError(
            f"sequencing {D.to_text()} is not an arrangement of the {ts.v} points of {ts.label()}")


def _contained_spans(D: Sequencing, ts: TripleSystem) -> List[Tuple[CyclicTriple, int]]:
    n = len(D)
    spans = []
    for t in ts.triples:
        if contains_triple(D, t):
            spans.append((t, window_span(_positions(D, t.as_tuple()), n)))
    return spans


def violations(D: Sequencing, ts: TripleSystem, l: int) -> List[CyclicTriple]:
    """被 D 包含且落在某个 l 窗口里的全部三元组"""
    if l < 3:
        raise InvalidParameterError(f"l < 3 (got {l})")
    _require_over(D, ts)
    return [t for t, span in _contained_spans(D, ts) if span <= l]


def is_l_good(D: Sequencing, ts: TripleSystem, l: int) -> bool:
    """
    D 是否 l-good

    没有任何三元组同时满足：被 D 包含，并且三点落在 D 的 l 个循环连续点之内。
    """
    return not violations(D, ts, l)


def max_good_l(D: Sequencing, ts: TripleSystem) -> int:
    """使 D 为 l-good 的最大 l ∈ [3, v]；连 3-good 都不是时返回 2"""
    _require_over(D, ts)
    spans = [span for _, span in _contained_spans(D, ts)]
    best = min(spans) - 1 if spans else ts.v
    best = min(best, ts.v)
    return best if best >= 3 else NO_GOOD_L


def bound_l(v: int) -> int:
    """l-good 序列存在的上界 ⌊(v-1)/2⌋"""
    if v < 3:
        raise InvalidParameterError(f"v < 3 (got {v})")
    return (v - 1) // 2
