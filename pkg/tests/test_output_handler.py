import json
import math

import numpy as np
import pytest

from conftest import random_state
from src.handlers import OutputHandler, SnapshotRecord, read_csv, read_records, write_csv, write_records
from src.spectral import TorusGrid, to_physical
from src.utils.errors import FormatVersionMismatch, SnapshotIOError


@pytest.fixture
def handler(tmp_path):
    return OutputHandler(str(tmp_path / 'run'))


def test_snapshot_round_trip(handler, rng):
    s = random_state(TorusGrid(2, 16), 5, rng)
    path = handler.write_snapshot(3, s)
    assert path.endswith('0003.fld')
    records = handler.read_snapshot(path)
    assert list(records) == ['u', 'd', 'ddot']
    assert records['u'].values.shape == (2, 16, 16)
    assert np.array_equal(records['d'].values, to_physical(s.d))
    assert records['ddot'].time == s.t and records['ddot'].K == 5
    assert records['ddot'].dim == 2 and records['ddot'].N == 16


def test_records_keep_exact_time(tmp_path):
    rec = SnapshotRecord('f', 1.0 / 3.0, 3, 8, 2.5, np.arange(512.0).reshape(1, 8, 8, 8))
    path = str(tmp_path / 'x.fld')
    write_records(path, [rec])
    back, = read_records(path)
    assert back.time == 1.0 / 3.0 and back.K == 2.5
    assert np.array_equal(back.values, rec.values)


def test_truncated_snapshot(handler, rng, tmp_path):
    path = handler.write_snapshot(0, random_state(TorusGrid(2, 16), 5, rng))
    with open(path, 'rb') as f:
        data = f.read()
    cut = str(tmp_path / 'cut.fld')
    with open(cut, 'wb') as f:
        f.write(data[:-8])
    with pytest.raises(FormatVersionMismatch):
        read_records(cut)


@pytest.mark.parametrize('content', [b'', b'LCFIELD 2\ndim=2\nEND\n', b'NOTAFIELD 1\n', b'LCFIELD 1\ndim=2\n',
                                     b'LCFIELD 1\ndim=2\nN=8\nK=3\ncomponents=x\nname=u\ntime=0\nEND\n'])
def test_malformed_snapshot(tmp_path, content):
    path = tmp_path / 'bad.fld'
    path.write_bytes(content)
    with pytest.raises(FormatVersionMismatch):
        read_records(str(path))


def test_missing_snapshot(tmp_path):
    with pytest.raises(SnapshotIOError) as e:
        read_records(str(tmp_path / 'none.fld'))
    assert not isinstance(e.value, FormatVersionMismatch)


def test_csv_round_trip(tmp_path):
    series = [{'t': 0.1 * i, 'E_eps': 1.0 / (i + 3), 'tiny': 1e-300 * i} for i in range(5)]
    series.append({'t': 0.5, 'E_eps': math.nan, 'tiny': math.inf})
    path = str(tmp_path / 'm.csv')
    write_csv(path, series)
    back = read_csv(path)
    assert back[:5] == series[:5]
    assert math.isnan(back[5]['E_eps']) and back[5]['tiny'] == math.inf


def test_empty_series_writes_header_only(handler):
    path = handler.write_monitors([])
    with open(path) as f:
        assert f.read().strip() == 't'
    assert read_csv(path) == []


def test_csv_column_mismatch(tmp_path):
    path = tmp_path / 'bad.csv'
    path.write_text('t,E\n0.0\n')
    with pytest.raises(FormatVersionMismatch):
        read_csv(str(path))


def test_csv_non_numeric_cell(tmp_path):
    path = tmp_path / 'bad.csv'
    path.write_text('t,E\n0.0,abc\n')
    with pytest.raises(FormatVersionMismatch, match='abc'):
        read_csv(str(path))


def test_write_columns(handler):
    path = handler.write_columns({'t': np.array([0.0, 1.0]), 'ratio': np.array([0.5, math.inf])}, 'r.csv')
    rows = read_csv(path)
    assert [row['ratio'] for row in rows] == [0.5, math.inf]


def test_write_report(handler):
    handler.write_report('regime', {'alpha': 1.0, 'eps1': math.nan, 'flags': [True, np.float64(2.0)]})
    with open(handler.path('regime.json')) as f:
        data = json.load(f)
    assert data == {'alpha': 1.0, 'eps1': 'nan', 'flags': [True, 2.0]}
    with open(handler.path('regime.txt')) as f:
        assert f.readline() == 'alpha: 1.0\n'


def test_write_summary(handler):
    path = handler.write_summary([{'mu4': 1.0, 'stop_reason': 'completed'},
                                  {'mu4': 10.0, 'stop_reason': 'nan_detected'}])
    with open(path) as f:
        lines = f.read().splitlines()
    assert lines[0].split() == ['mu4', 'stop_reason']
    assert lines[2].split() == ['10', 'nan_detected']
    assert lines[1].index('completed') == lines[0].index('stop_reason')
