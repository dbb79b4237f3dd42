"""LRST binary dense-tensor files and 1-based sparse CSV files.

LRST layout: ``b"LRST"``, one version byte (1), one order byte ``m``, ``m``
little-endian u64 dimensions, then ``d*`` little-endian float64 values in
row-major order.
"""

import csv
import io
import math
import struct
from pathlib import Path

import numpy as np

from ..errors import FormatError
from ..utils import atomic_write_bytes, atomic_write_text, format_float
from .core_conf import LRST_MAGIC, LRST_VERSION
from .models import SparseTensor
from .unfold import as_dense, check_shape

_HEADER = struct.Struct("<4sBB")


def dumps_lrst(t):
    t = as_dense(t)
    header = _HEADER.pack(LRST_MAGIC, LRST_VERSION, t.ndim)
    dims = struct.pack(f"<{t.ndim}Q", *t.shape)
    return header + dims + t.astype("<f8").tobytes(order="C")


def loads_lrst(data):
    if len(data) < _HEADER.size:
        raise FormatError("truncated LRST header")
    magic, version, order = _HEADER.unpack_from(data)
    if magic != LRST_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {LRST_MAGIC!r}")
    if version != LRST_VERSION:
        raise FormatError(f"unsupported LRST version {version}")
    offset = _HEADER.size
    dims_size = 8 * order
    if len(data) < offset + dims_size:
        raise FormatError("truncated LRST dimension block")
    shape = struct.unpack_from(f"<{order}Q", data, offset)
    try:
        shape = check_shape(shape)
    except ValueError as e:
        raise FormatError(str(e)) from e
    offset += dims_size
    expected = 8 * math.prod(shape)
    if len(data) - offset != expected:
        raise FormatError(
            f"LRST payload has {len(data) - offset} bytes, shape {shape} "
            f"needs {expected}"
        )
    values = np.frombuffer(data, dtype="<f8", offset=offset)
    return as_dense(values.reshape(shape))


def save_lrst(path, t):
    atomic_write_bytes(path, dumps_lrst(t))


def load_lrst(path):
    return loads_lrst(Path(path).read_bytes())


def dumps_sparse_csv(s):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for omega, value in s.entries():
        writer.writerow([*(i + 1 for i in omega), format_float(value)])
    return buffer.getvalue()


def loads_sparse_csv(text, shape):
    """
    Parse ``i1,...,im,value`` lines (1-based indices). Blank lines and ``#``
    comments are skipped.
    """
    shape = check_shape(shape)
    indices, values = [], []
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or row[0].strip().startswith("#"):
            continue
        if len(row) != len(shape) + 1:
            raise FormatError(
                f"line {line_no}: expected {len(shape) + 1} fields, got {len(row)}"
            )
        try:
            omega = [int(field) - 1 for field in row[:-1]]
            value = float(row[-1])
        except ValueError as e:
            raise FormatError(f"line {line_no}: {e}") from e
        indices.append(omega)
        values.append(value)
    try:
        return SparseTensor(shape, np.array(indices, dtype=np.int64), values)
    except ValueError as e:
        raise FormatError(str(e)) from e


def save_sparse_csv(path, s):
    atomic_write_text(path, dumps_sparse_csv(s))


def load_sparse_csv(path, shape):
    return loads_sparse_csv(Path(path).read_text(encoding="utf-8"), shape)
