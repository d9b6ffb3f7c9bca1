"""输出处理器：快照、监测 CSV、区间报告与扫描汇总的读写"""

import csv
import json
import math
import os
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..config.constants import CSV_DIGITS, SNAPSHOT_MAGIC, SNAPSHOT_VERSION
from ..utils.errors import FormatVersionMismatch, SnapshotIOError
from ..utils.logger import logger

SNAPSHOT_DIR = 'snapshots'
MONITOR_FILE = 'monitors.csv'
SUMMARY_FILE = 'summary.txt'
HEADER_END = 'END'
SAMPLE_DTYPE = np.dtype('<f8')


@dataclass(frozen=True)
class SnapshotRecord:
    """快照中的一个场：物理空间采样及文件头信息"""
    name: str
    time: float
    dim: int
    N: int
    K: float
    values: np.ndarray

    @property
    def components(self) -> int:
        return self.values.shape[0]


def _format(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    return f"{float(value):.{CSV_DIGITS}g}"


def write_records(path: str, records: Iterable[SnapshotRecord]):
    """文件头为文本 key=value 行，以 END 结束，随后是小端 float64 的行主序采样"""
    try:
        with open(path, 'wb') as f:
            for rec in records:
                header = [
                    f"{SNAPSHOT_MAGIC} {SNAPSHOT_VERSION}",
                    f"dim={rec.dim}",
                    f"N={rec.N}",
                    f"K={_format(rec.K)}",
                    f"components={rec.components}",
                    f"name={rec.name}",
                    f"time={_format(rec.time)}",
                    HEADER_END,
                ]
                f.write(('\n'.join(header) + '\n').encode('ascii'))
                f.write(np.ascontiguousarray(rec.values, dtype=SAMPLE_DTYPE).tobytes())
    except OSError as e:
        raise SnapshotIOError(f"写入快照 {path} 失败: {e}") from e


def _read_header(f, path: str) -> Optional[Dict[str, str]]:
    first = f.readline()
    if not first:
        return None
    try:
        magic, version = first.decode('ascii').split()
    except (UnicodeDecodeError, ValueError):
        raise FormatVersionMismatch(f"{path} 不是快照文件")
    if magic != SNAPSHOT_MAGIC or version != str(SNAPSHOT_VERSION):
        raise FormatVersionMismatch(f"{path} 的文件头 {magic} {version} 与 {SNAPSHOT_MAGIC} {SNAPSHOT_VERSION} 不符")

    fields = {}
    while True:
        line = f.readline()
        if not line:
            raise FormatVersionMismatch(f"{path} 文件头被截断")
        text = line.decode('ascii', errors='replace').rstrip('\n')
        if text == HEADER_END:
            return fields
        key, sep, value = text.partition('=')
        if not sep:
            raise FormatVersionMismatch(f"{path} 文件头行无法解析: {text!r}")
        fields[key] = value


def read_records(path: str) -> List[SnapshotRecord]:
    records = []
    try:
        with open(path, 'rb') as f:
            while True:
                header = _read_header(f, path)
                if header is None:
                    break
                try:
                    dim, N = int(header['dim']), int(header['N'])
                    components = int(header['components'])
                    K, time = float(header['K']), float(header['time'])
                except (KeyError, ValueError) as e:
                    raise FormatVersionMismatch(f"{path} 文件头缺少或含非法字段: {e}")
                shape = (components,) + (N,) * dim
                nbytes = SAMPLE_DTYPE.itemsize * int(np.prod(shape))
                payload = f.read(nbytes)
                if len(payload) != nbytes:
                    raise FormatVersionMismatch(f"{path} 中 {header.get('name')} 的数据被截断: "
                                                f"需要 {nbytes} 字节，实际 {len(payload)}")
                values = np.frombuffer(payload, dtype=SAMPLE_DTYPE).reshape(shape).astype(float)
                records.append(SnapshotRecord(header.get('name', ''), time, dim, N, K, values))
    except FormatVersionMismatch:
        raise
    except OSError as e:
        raise SnapshotIOError(f"读取快照 {path} 失败: {e}") from e
    if not records:
        raise FormatVersionMismatch(f"{path} 中没有任何记录")
    return records


def write_csv(path: str, series: Sequence[Dict[str, float]], columns: Optional[List[str]] = None):
    """表头一行，其后每行一个采样，17 位有效数字"""
    columns = columns or (list(series[0].keys()) if series else ['t'])
    try:
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f)
            writer.writerow(columns)
            for row in series:
                writer.writerow([_format(row[name]) for name in columns])
    except OSError as e:
        raise SnapshotIOError(f"写入 {path} 失败: {e}") from e


def read_csv(path: str) -> List[Dict[str, float]]:
    try:
        with open(path, newline='') as f:
            reader = csv.reader(f)
            try:
                columns = next(reader)
            except StopIteration:
                raise FormatVersionMismatch(f"{path} 缺少表头")
            rows = []
            for line in reader:
                if len(line) != len(columns):
                    raise FormatVersionMismatch(f"{path} 第 {reader.line_num} 行列数与表头不符")
                try:
                    rows.append({name: float(value) for name, value in zip(columns, line)})
                except ValueError:
                    raise FormatVersionMismatch(f"{path} 第 {reader.line_num} 行含非数值: {line}")
            return rows
    except FormatVersionMismatch:
        raise
    except OSError as e:
        raise SnapshotIOError(f"读取 {path} 失败: {e}") from e


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return _json_safe(value.item())
    return value


class OutputHandler:
    """一次运行的输出目录"""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir

    def path(self, *parts: str) -> str:
        return os.path.join(self.out_dir, *parts)

    def ensure_dir(self, *parts: str) -> str:
        path = self.path(*parts)
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as e:
            raise SnapshotIOError(f"无法创建目录 {path}: {e}") from e
        return path

    def write_snapshot(self, index: int, state) -> str:
        """snapshots/NNNN.fld，依次保存 u, d, ddot"""
        from ..spectral import to_physical

        self.ensure_dir(SNAPSHOT_DIR)
        path = self.path(SNAPSHOT_DIR, f"{index:04d}.fld")
        grid = state.grid
        records = [
            SnapshotRecord(name, state.t, grid.dim, grid.N, state.cutoff, to_physical(f))
            for name, f in (('u', state.u), ('d', state.d), ('ddot', state.ddot))
        ]
        write_records(path, records)
        logger.debug(f"快照已写入: {path} (t={state.t:.6g})")
        return path

    def read_snapshot(self, path: str) -> Dict[str, SnapshotRecord]:
        return {rec.name: rec for rec in read_records(path)}

    def write_monitors(self, series: Sequence[Dict[str, float]], filename: str = MONITOR_FILE,
                       columns: Optional[List[str]] = None) -> str:
        self.ensure_dir()
        path = self.path(filename)
        write_csv(path, series, columns)
        logger.info(f"监测序列已写入: {path} ({len(series)} 行)")
        return path

    def write_columns(self, columns: Dict[str, np.ndarray], filename: str) -> str:
        """按列给出的数据写成 CSV"""
        names = list(columns)
        length = len(next(iter(columns.values()))) if columns else 0
        rows = [{name: columns[name][i] for name in names} for i in range(length)]
        return self.write_monitors(rows, filename, names)

    def write_report(self, name: str, data: dict) -> str:
        """name.txt（key: value 文本）与 name.json"""
        self.ensure_dir()
        text_path = self.path(f"{name}.txt")
        try:
            with open(text_path, 'w') as f:
                for key, value in data.items():
                    f.write(f"{key}: {value}\n")
            with open(self.path(f"{name}.json"), 'w') as f:
                json.dump(_json_safe(data), f, indent=2, ensure_ascii=False)
        except OSError as e:
            raise SnapshotIOError(f"写入报告 {name} 失败: {e}") from e
        return text_path

    def write_summary(self, rows: Sequence[Dict[str, object]], filename: str = SUMMARY_FILE) -> str:
        """对齐的文本表格"""
        self.ensure_dir()
        path = self.path(filename)
        if not rows:
            lines = ['(empty)']
        else:
            columns = list(rows[0].keys())
            cells = [[str(c) for c in columns]] + [
                [_format(row[c]) if isinstance(row[c], (float, np.floating)) else str(row[c]) for c in columns]
                for row in rows
            ]
            widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
            lines = ['  '.join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in cells]
        try:
            with open(path, 'w') as f:
                f.write('\n'.join(lines) + '\n')
        except OSError as e:
            raise SnapshotIOError(f"写入汇总 {path} 失败: {e}") from e
        logger.info(f"汇总已写入: {path}")
        return path
