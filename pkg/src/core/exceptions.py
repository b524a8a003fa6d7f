"""
异常定义
工具包内所有可预期的失败都从 MTSError 派生，命令行据此返回非零退出码
"""

from typing import Optional, Sequence, Tuple


class MTSError(Exception):
    """工具包异常基类"""


class InvalidDesignError(MTSError):
    """三元系不满足校验（例如对未通过校验的系统建边表）"""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        super().__init__(message)
        self.violations = list(violations)


class TripleNotPresentError(MTSError):
    """要删除的三元组不在系统中"""


class DesignFormatError(MTSError):
    """设计文件或序列文本格式错误"""


class SequencingError(MTSError):
    """序列与查询点不匹配：点不互异或不在序列中"""


class InvalidParameterError(MTSError):
    """参数越界，例如 l < 3"""


class OrderTooLargeError(MTSError):
    """阶数超过精确算法的保护上限"""


class OrderMismatchError(MTSError):
    """比较两个阶数不同的系统"""


class InadmissibleOrderError(MTSError):
    """v 不满足 v ≡ 0,1 (mod 3), v ≠ 6"""


class BudgetExceededError(MTSError):
    """搜索节点数超过预算"""

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class CaseNotApplicableError(MTSError):
    """插入构造的前提条件不成立"""


class ClassificationGapError(MTSError):
    """构造器没有得到通过校验的 3-good 序列"""

    def __init__(self, message: str, design: str = "", pivot: Optional[int] = None,
                 cycle_structure: Tuple[int, ...] = ()):
        detail = f"{message} (design={design or '?'}, pivot={pivot}, cycles={list(cycle_structure)})"
        super().__init__(detail)
        self.design = design
        self.pivot = pivot
        self.cycle_structure = tuple(cycle_structure)


class NoAdmissibleChoiceError(ClassificationGapError):
    """两个 2-圈的情形里任何标号都选不出 y, z"""
