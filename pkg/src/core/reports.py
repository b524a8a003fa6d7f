"""
报表
复现序列统计表（v ≤ 10）与附录中的各项断言，命令行和测试共用
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from ..formats.design_io import read_design
from ..utils.config_loader import config_loader
from ..utils.logger import get_logger
from .design_model import TripleSystem, validate
from .enumeration import LONG_RUNNING_ORDER, Table1Row, classify_all
from .exceptions import DesignFormatError
from .search import count_l_good, find_l_good, partial_removal_sweep

logger = get_logger(__name__)

TABLE1_HEADER = ("v", "designs", "3-good", "4-good")
CLAIMS_HEADER = ("claim", "design", "expected", "actual", "status")


def table1_orders(max_v: int, include_10: bool = False) -> List[int]:
    """统计表的行：3 ≤ v ≤ max_v 且 v ≡ 0,1 (mod 3)，v = 10 需要显式开启"""
    return [v for v in range(3, max_v + 1)
            if v % 3 in (0, 1) and (v < LONG_RUNNING_ORDER or include_10)]


def table1_rows(max_v: int = 9, include_10: bool = False, jobs: int = 1,
                resume: bool = False, progress: bool = False) -> List[Table1Row]:
    rows = []
    for v in table1_orders(max_v, include_10):
        rows.append(classify_all(v, jobs=jobs, long_running=include_10, resume=resume,
                                 progress=progress))
    return rows


def format_table1(rows: Sequence[Table1Row], fmt: str = "tsv") -> str:
    """tsv: 制表符分隔；human: 对齐的表格"""
    body = [tuple(str(x) for x in row.as_tuple()) for row in rows]
    return _format(TABLE1_HEADER, body, fmt)


def _format(header: Sequence[str], body: Sequence[Sequence[str]], fmt: str) -> str:
    if fmt == "tsv":
        return "\n".join("\t".join(r) for r in [header, *body]) + "\n"
    widths = [max(len(r[i]) for r in [header, *body]) for i in range(len(header))]
    lines = [" | ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [header, *body]]
    lines.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ClaimResult:
    """一条附录断言的核验结果"""

    claim: str
    design: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def as_row(self) -> tuple:
        return (self.claim, self.design, self.expected, self.actual, "pass" if self.passed else "FAIL")


def format_claims(results: Sequence[ClaimResult], fmt: str = "tsv") -> str:
    return _format(CLAIMS_HEADER, [r.as_row() for r in results], fmt)


def load_claims(path: Optional[Path] = None) -> Dict:
    path = Path(path) if path else config_loader.resolve_path("fixtures.claims", "config/appendix_claims.json")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise DesignFormatError(f"cannot load claims {path}: {e}") from e


def compare_table1(rows: Sequence[Table1Row], claims: Optional[Dict] = None) -> List[ClaimResult]:
    """把统计表的行与已发表的数值比对，只比对 claims 里出现的 v"""
    claims = claims if claims is not None else load_claims()
    published = claims.get("table1", {})
    results = []
    for row in rows:
        expected = published.get(str(row.v))
        if expected is None:
            continue
        actual = row.as_tuple()[1:]
        results.append(ClaimResult("table1", f"v={row.v}", " ".join(map(str, expected)),
                                   " ".join(map(str, actual))))
    return results


def _claimed_designs(claims: Dict) -> List[str]:
    names = list(claims.get("lex_least_4good", {})) + list(claims.get("count_4good", {}))
    names += claims.get("no_4good", []) + claims.get("three_good", [])
    names += claims.get("removal_sweep", {}).get("designs", [])
    return sorted(set(names), key=names.index)


def verify_appendix(fixture_dir: Optional[Path] = None, claims: Optional[Dict] = None,
                    jobs: int = 1, progress: bool = False) -> List[ClaimResult]:
    """
    核验附录断言

    每个设计先校验，未通过校验的设计只报告 validate 一条，不再做序列检查。
    """
    fixture_dir = Path(fixture_dir) if fixture_dir else config_loader.fixture_dir()
    claims = claims if claims is not None else load_claims()
    results: List[ClaimResult] = []

    designs: Dict[str, TripleSystem] = {}
    for name in _claimed_designs(claims):
        ts = read_design(fixture_dir / f"{name}.txt")
        report = validate(ts)
        results.append(ClaimResult("validate", name, "ok", "ok" if report.ok else report.violations[0]))
        if report.ok:
            designs[name] = ts
        else:
            logger.error(f"{name} 校验失败: {report.violations[0]}")

    for name, expected in claims.get("lex_least_4good", {}).items():
        if name in designs:
            witness = find_l_good(designs[name], 4)
            results.append(ClaimResult("lex_least_4good", name, expected,
                                       witness.to_compact() if witness else "none"))

    for name, expected in claims.get("count_4good", {}).items():
        if name in designs:
            results.append(ClaimResult("count_4good", name, str(expected),
                                       str(count_l_good(designs[name], 4, jobs=jobs))))

    for name in claims.get("no_4good", []):
        if name in designs:
            witness = find_l_good(designs[name], 4, jobs=jobs)
            results.append(ClaimResult("no_4good", name, "none",
                                       "none" if witness is None else witness.to_text()))

    for name in claims.get("three_good", []):
        if name in designs:
            witness = find_l_good(designs[name], 3, jobs=jobs)
            results.append(ClaimResult("three_good", name, "found",
                                       "found" if witness is not None else "none"))

    sweep = claims.get("removal_sweep", {})
    l = int(sweep.get("l", 4))
    for name in sweep.get("designs", []):
        if name in designs:
            ts = designs[name]
            swept = partial_removal_sweep(ts, l, jobs=jobs, progress=progress)
            found = sum(r.found for r in swept)
            results.append(ClaimResult(f"removal_sweep_{l}good", name, f"{len(ts)}/{len(ts)}",
                                       f"{found}/{len(ts)}"))

    failed = [r for r in results if not r.passed]
    logger.info(f"附录核验: {len(results) - len(failed)}/{len(results)} 通过")
    return results
