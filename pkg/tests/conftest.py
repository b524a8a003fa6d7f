"""
公共夹具：附录设计、循环 MTS(7)、Fano 双向 MTS(7)、按会话缓存的穷举结果，以及测试用的朴素判定
"""

from itertools import permutations
from pathlib import Path

import pytest

from src.core.design_model import CyclicTriple, TripleSystem, develop_mod_v
from src.core.enumeration import enumerate_mts
from src.formats.design_io import read_design

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

APPENDIX_A = ("m9_1_1", "m9_3_1", "m9_7_1")
APPENDIX_B = ("m10_116_1", "m10_116_2", "m10_118_1", "m10_134_1", "m10_134_2")
FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def load(name: str) -> TripleSystem:
    return read_design(FIXTURE_DIR / f"{name}.txt")


def naive_is_l_good(order, ts: TripleSystem, l: int) -> bool:
    """逐个窗口、逐个三元组检查"""
    n = len(order)
    doubled = tuple(order) + tuple(order)
    triples = set(ts.triples)
    for s in range(n):
        window = doubled[s:s + min(l, n)]
        for i in range(len(window)):
            for j in range(i + 1, len(window)):
                for k in range(j + 1, len(window)):
                    if CyclicTriple.of((window[i], window[j], window[k])) in triples:
                        return False
    return True


def naive_count(ts: TripleSystem, l: int) -> int:
    """扫描全部 v! 种排列，按位置计数"""
    return sum(naive_is_l_good(order, ts, l) for order in permutations(range(ts.v)))


@pytest.fixture(scope="session")
def mts7_cyclic() -> TripleSystem:
    return develop_mod_v([(0, 1, 3), (0, 3, 2)], 7, name="mts7_cyclic")


@pytest.fixture(scope="session")
def mts7_fano() -> TripleSystem:
    """Fano 平面每条线取两个方向；每个点的 G_x 都是三个 2-圈"""
    return TripleSystem.create(7, [t for line in FANO_LINES for t in (line, line[::-1])], name="mts7_fano")


@pytest.fixture(scope="session")
def mts4() -> TripleSystem:
    return load("mts4")


@pytest.fixture(scope="session")
def appendix_a():
    return {name: load(name) for name in APPENDIX_A}


@pytest.fixture(scope="session")
def appendix_b():
    return {name: load(name) for name in APPENDIX_B}


@pytest.fixture(scope="session")
def all_mts7():
    return enumerate_mts(7)


@pytest.fixture(scope="session")
def all_mts9():
    return enumerate_mts(9)
