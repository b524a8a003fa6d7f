"""
日志管理模块
负责统一管理项目日志输出
"""

import os
import logging
import logging.handlers
from typing import Optional
from .config_loader import config_loader, PROJECT_ROOT

ROOT_LOGGER_NAME = "mts_toolkit"


def _parse_size(max_size: str) -> int:
    """解析 '10MB' 这类文件大小字符串"""
    size_map = {'KB': 1024, 'MB': 1024**2, 'GB': 1024**3, 'B': 1}
    size_str = str(max_size).upper()
    for unit, multiplier in size_map.items():
        if size_str.endswith(unit):
            try:
                return int(size_str[:-len(unit)]) * multiplier
            except ValueError:
                break
    return 10 * 1024 * 1024  # 默认10MB


def setup_logger(
    name: str = ROOT_LOGGER_NAME,
    level: Optional[str] = None,
    log_file: Optional[str] = None,
    max_size: Optional[str] = None,
    backup_count: Optional[int] = None
) -> logging.Logger:
    """
    设置日志记录器

    控制台处理器写到 stderr，stdout 留给 TSV 报表。

    Args:
        name: 日志记录器名称
        level: 日志级别
        log_file: 日志文件路径，空字符串表示不写文件
        max_size: 日志文件最大大小
        backup_count: 备份文件数量

    Returns:
        配置好的日志记录器
    """
    # 获取配置
    if level is None:
        level = config_loader.get('logging.level', 'INFO')

    if log_file is None:
        log_file = config_loader.get('logging.file', 'logs/mts.log')

    if max_size is None:
        max_size = config_loader.get('logging.max_size', '10MB')

    if backup_count is None:
        backup_count = config_loader.get('logging.backup_count', 5)

    # 创建日志记录器
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper()))
    logger.propagate = name != ROOT_LOGGER_NAME

    # 清除现有的处理器
    logger.handlers.clear()

    # 创建格式化器
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # 控制台处理器
    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, level.upper()))
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # 文件处理器
    if log_file:
        try:
            if not os.path.isabs(log_file):
                log_file = str(PROJECT_ROOT / log_file)

            # 创建日志目录
            log_dir = os.path.dirname(log_file)
            if log_dir:
                os.makedirs(log_dir, exist_ok=True)

            # 创建轮转文件处理器
            file_handler = logging.handlers.RotatingFileHandler(
                log_file,
                maxBytes=_parse_size(max_size),
                backupCount=backup_count,
                encoding='utf-8'
            )
            file_handler.setLevel(getattr(logging, level.upper()))
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)

        except Exception as e:
            logger.warning(f"创建日志文件失败: {e}")

    return logger


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """
    获取日志记录器

    模块日志记录器挂在根记录器 mts_toolkit 之下，共用它的处理器。

    Args:
        name: 日志记录器名称，通常传 __name__

    Returns:
        日志记录器实例
    """
    root = logging.getLogger(ROOT_LOGGER_NAME)

    # 如果根日志记录器还没有配置处理器，则进行配置
    if not root.handlers:
        setup_logger(ROOT_LOGGER_NAME)

    if name == ROOT_LOGGER_NAME:
        return root
    return root.getChild(name)


def set_level(level: str) -> None:
    """调整根日志记录器及其处理器的级别（命令行 --verbose 用）"""
    root = get_logger()
    root.setLevel(getattr(logging, level.upper()))
    for handler in root.handlers:
        handler.setLevel(getattr(logging, level.upper()))


# 创建默认日志记录器
default_logger = get_logger()
