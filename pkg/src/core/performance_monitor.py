"""
性能监控模块
为搜索、枚举和批量核验计时
"""

import time
from typing import Dict, Any
from functools import wraps
from ..utils.logger import get_logger


class PerformanceMonitor:
    """性能监控器"""

    def __init__(self):
        self.logger = get_logger(__name__)
        self.metrics: Dict[str, Dict[str, Any]] = {}

    def start_timer(self, name: str):
        """开始计时"""
        self.metrics[name] = {"start_time": time.perf_counter()}

    def end_timer(self, name: str) -> float:
        """结束计时并返回耗时（秒）"""
        if name in self.metrics:
            start_time = self.metrics[name]["start_time"]
            duration = time.perf_counter() - start_time
            self.metrics[name]["duration"] = duration
            self.logger.debug(f"性能监控 - {name}: {duration:.3f}秒")
            return duration
        return 0.0

    def elapsed_ms(self, name: str) -> float:
        """已结束计时项的毫秒数"""
        return self.metrics.get(name, {}).get("duration", 0.0) * 1000.0


def performance_monitor(func_name: str = None):
    """性能监控装饰器，耗时写入日志"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            monitor = PerformanceMonitor()
            name = func_name or func.__name__

            monitor.start_timer(name)
            try:
                return func(*args, **kwargs)
            finally:
                duration = monitor.end_timer(name)
                monitor.logger.info(f"{name} 耗时 {duration:.3f}秒")

        return wrapper
    return decorator
