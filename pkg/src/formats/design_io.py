"""
设计文件读写
第一行 `mts v=<v> kind=<complete|partial>`，之后每行一个三元组 `<a> <b> <c>`，`#` 开头为注释行
"""

import re
from pathlib import Path
from typing import Iterable, Union

from ..core.design_model import Completeness, CyclicTriple, TripleSystem
from ..core.exceptions import DesignFormatError
from ..utils.logger import get_logger

logger = get_logger(__name__)

HEADER_RE = re.compile(r"^mts\s+v=(\d+)\s+kind=(\w+)\s*$")


def parse_design(text: str, name: str = "") -> TripleSystem:
    """
    解析设计文本

    三元组可以写成任意旋转，读入后按规范旋转保存；头部声明的 kind 原样保留，
    是否真的满足由 validate 判断。

    Raises:
        DesignFormatError: 缺少头部、kind 未知或三元组行格式错误
    """
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)]
    lines = [(i, line) for i, line in lines if line and not line.startswith('#')]
    if not lines:
        raise DesignFormatError(f"{name or 'design'}: missing header line")

    lineno, header = lines[0]
    match = HEADER_RE.match(header)
    if not match:
        raise DesignFormatError(f"{name or 'design'}:{lineno}: bad header {header!r}")
    v = int(match.group(1))
    try:
        kind = Completeness(match.group(2))
    except ValueError:
        raise DesignFormatError(f"{name or 'design'}:{lineno}: unknown kind {match.group(2)!r}") from None

    triples = []
    for lineno, line in lines[1:]:
        tokens = line.replace('(', ' ').replace(')', ' ').replace(',', ' ').split()
        try:
            if len(tokens) != 3:
                raise ValueError(f"expected 3 points, got {len(tokens)}")
            triples.append(CyclicTriple.of([int(tok) for tok in tokens]))
        except ValueError as e:
            raise DesignFormatError(f"{name or 'design'}:{lineno}: {e}") from e

    return TripleSystem.create(v, triples, kind=kind, name=name)


def read_design(path: Union[str, Path]) -> TripleSystem:
    """读取设计文件，系统名取文件名（不含扩展名）"""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise DesignFormatError(f"cannot read {path}: {e}") from e
    ts = parse_design(text, name=path.stem)
    logger.debug(f"读取 {path}: v={ts.v}, {len(ts)} 个三元组, {ts.kind.value}")
    return ts


def format_design(ts: TripleSystem, comments: Iterable[str] = ()) -> str:
    """按文件格式输出：头部、注释、按规范旋转排序的三元组，每行以换行结尾"""
    out = [f"mts v={ts.v} kind={ts.kind.value}"]
    out.extend(f"# {c}" for c in comments)
    out.extend(f"{t.a} {t.b} {t.c}" for t in ts.triples)
    return "\n".join(out) + "\n"


def write_design(ts: TripleSystem, path: Union[str, Path], comments: Iterable[str] = ()) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_design(ts, comments), encoding='utf-8')
    logger.debug(f"写出 {path}")
    return path
