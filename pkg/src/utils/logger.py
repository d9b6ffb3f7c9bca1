import logging
import os


def setup_logger(level: str = None):
    """初始化全局日志，级别可由环境变量 LOG_LEVEL 覆盖"""
    level = (level or os.getenv('LOG_LEVEL', 'INFO')).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    return logging.getLogger('lcsim')


logger = setup_logger()
