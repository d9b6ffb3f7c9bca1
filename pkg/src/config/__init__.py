"""配置包"""

from .config import RunConfig  # 导出 RunConfig 类
from .constants import *  # 导出所有常量
