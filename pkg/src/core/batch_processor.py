"""
批量处理器
把按设计（或按子树）独立的工作分发给进程池，结果按输入顺序返回
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

from tqdm import tqdm

from ..utils.logger import get_logger
from ..utils.config_loader import config_loader


class BatchProcessor:
    """批量处理器"""

    def __init__(self):
        self.logger = get_logger(__name__)
        self.default_jobs = int(config_loader.get("search.jobs", 1) or 1)

    def run(self, func: Callable[[Any], Any], items: Iterable[Any],
            jobs: Optional[int] = None, desc: str = "", progress: bool = False) -> List[Any]:
        """
        对每个工作项调用 func

        jobs <= 1 时顺序执行；否则用进程池，func 和工作项必须可 pickle。
        返回列表与 items 顺序一致，保证并行与顺序结果相同。

        Args:
            func: 模块级函数
            items: 工作项
            jobs: 进程数，None 取配置 search.jobs
            desc: 进度条标题
            progress: 是否显示 tqdm 进度条（写到 stderr）
        """
        items = list(items)
        if not items:
            return []

        jobs = self.default_jobs if jobs is None else jobs
        show = progress and len(items) > 1

        if jobs <= 1:
            return [func(item) for item in tqdm(items, desc=desc, disable=not show, leave=False)]

        self.logger.info(f"批量处理 {desc or func.__name__}: {len(items)} 项, {jobs} 个进程")
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(tqdm(pool.map(func, items), total=len(items), desc=desc,
                                disable=not show, leave=False))
        return results


# 全局批量处理器实例
batch_processor = BatchProcessor()
