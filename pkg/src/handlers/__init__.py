"""处理器包"""

from .output_handler import OutputHandler, SnapshotRecord, read_csv, read_records, write_csv, write_records

__all__ = ['OutputHandler', 'SnapshotRecord', 'read_csv', 'read_records', 'write_csv', 'write_records']
