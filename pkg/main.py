"""主程序入口"""

import argparse
import asyncio
import sys

from src.commands import (
    CheckCommand,
    ClassifyCommand,
    ConvergenceCommand,
    LifespanCommand,
    SimulateCommand,
    SweepCommand,
)
from src.config import RunConfig
from src.utils import logger


def load_config(args) -> RunConfig:
    """配置文件为基础，命令行参数覆盖"""
    config = RunConfig.from_file(args.config) if args.config else RunConfig.from_env()
    return config.with_overrides(
        output_dir=args.out,
        seed=args.seed,
        preset=args.preset,
        t_end=args.t_end,
    )


def build_command(args, config: RunConfig):
    if args.command == 'simulate':
        return SimulateCommand(config)
    if args.command == 'classify':
        return ClassifyCommand(config)
    if args.command == 'lifespan':
        return LifespanCommand(config, e_in=args.e_in, grad_din_Hs=args.grad_din_hs)
    if args.command == 'check':
        return CheckCommand(config, items=args.items)
    if args.command == 'convergence':
        return ConvergenceCommand(config)
    if args.command == 'sweep':
        return SweepCommand(config, threads=args.threads)
    raise ValueError(f"未知命令: {args.command}")


async def main(args):
    """主程序入口"""
    try:
        config = load_config(args)
        await build_command(args, config).execute()
    except Exception as e:
        logger.error(f"程序执行失败: {e}")
        sys.exit(1)


def parse_args(argv=None):
    # 例如:
    # python main.py simulate --config configs/twist.env --out output/twist
    # python main.py classify --config configs/part3.env
    # python main.py lifespan --config configs/wavemap.env --e-in 1.0
    # python main.py check --out output/check
    # python main.py sweep --config configs/sweep.env --threads 4
    parser = argparse.ArgumentParser(description='液晶 Ericksen-Leslie 方程的拟谱模拟与诊断工具')
    parser.add_argument('command', choices=['simulate', 'classify', 'lifespan', 'check', 'convergence', 'sweep'])
    parser.add_argument('--config', help='KEY=VALUE 格式的配置文件，缺省读取环境变量与 .env')
    parser.add_argument('--out', help='输出目录，覆盖 OUTPUT_DIR')
    parser.add_argument('--seed', type=int, help='随机种子，覆盖 RNG_SEED')
    parser.add_argument('--threads', type=int, default=1, help='sweep 的并发轨道数')
    parser.add_argument('--preset', help='初值预设，覆盖 PRESET_NAME')
    parser.add_argument('--t-end', type=float, help='终止时间，覆盖 STEPPER_T_END')
    parser.add_argument('--e-in', type=float, help='lifespan 使用的初始能量，缺省由初值预设计算')
    parser.add_argument('--grad-din-hs', type=float, default=0.0, help='lifespan 使用的 |grad d_in|_Hs')
    parser.add_argument('--items', nargs='*', choices=CheckCommand.ITEMS, help='check 只运行指定的验收项')
    return parser.parse_args(argv)


if __name__ == "__main__":
    asyncio.run(main(parse_args()))
