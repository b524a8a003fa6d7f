"""
配置加载器模块
负责读取和管理项目配置文件
"""

import os
import yaml
from pathlib import Path
from typing import Dict, Any
import logging

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
FIXTURE_DIR_ENV = "MTS_FIXTURE_DIR"


class ConfigLoader:
    """配置加载器类"""

    def __init__(self, config_path: str = "config/config.yaml"):
        """
        初始化配置加载器

        Args:
            config_path: 配置文件路径，相对路径以项目根目录为准
        """
        path = Path(config_path)
        if not path.is_absolute():
            path = PROJECT_ROOT / path
        self.config_path = str(path)
        self.config = {}
        self.load_config()

    def load_config(self) -> Dict[str, Any]:
        """
        加载配置文件

        Returns:
            配置字典
        """
        try:
            if not os.path.exists(self.config_path):
                logger.warning(f"配置文件不存在: {self.config_path}")
                self.config = self._get_default_config()
                return self.config

            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}

            # 缺失的键用默认值补齐
            self.config = _merge(self._get_default_config(), loaded)
            logger.info(f"成功加载配置文件: {self.config_path}")
            return self.config

        except Exception as e:
            logger.error(f"加载配置文件失败: {e}")
            self.config = self._get_default_config()
            return self.config

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值

        Args:
            key: 配置键，支持点号分隔的多级键
            default: 默认值

        Returns:
            配置值
        """
        keys = key.split('.')
        value = self.config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def resolve_path(self, key: str, default: str) -> Path:
        """把配置中的相对路径解析到项目根目录下"""
        path = Path(self.get(key, default))
        if not path.is_absolute():
            path = PROJECT_ROOT / path
        return path

    def fixture_dir(self) -> Path:
        """
        获取夹具目录

        环境变量 MTS_FIXTURE_DIR 优先于配置项 fixtures.dir
        """
        override = os.environ.get(FIXTURE_DIR_ENV)
        if override:
            return Path(override)
        return self.resolve_path('fixtures.dir', 'fixtures')

    def _get_default_config(self) -> Dict[str, Any]:
        """
        获取默认配置

        Returns:
            默认配置字典
        """
        return {
            'search': {
                'jobs': 1,
                'split_depth': 1
            },
            'enumeration': {
                'max_order': 10,
                'checkpoint_file': 'work/enumerate_v10.json',
                'checkpoint_every': 200000,
                'node_budget': None
            },
            'isomorphism': {
                'max_order': 12
            },
            'fixtures': {
                'dir': 'fixtures',
                'claims': 'config/appendix_claims.json'
            },
            'output': {
                'format': 'tsv',
                'design_dir': 'designs'
            },
            'logging': {
                'level': 'INFO',
                'file': 'logs/mts.log',
                'max_size': '10MB',
                'backup_count': 5
            }
        }


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并两个配置字典，override 优先"""
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


# 全局配置实例
config_loader = ConfigLoader()
