"""IDX file parsing and writing (the MNIST container format).

Layout: 2 zero bytes, a dtype code byte, a dimension-count byte, then
big-endian uint32 dimension sizes, then the raw data. Image files carry
magic 0x00000803 (ubyte, 3 dims), label files 0x00000801 (ubyte, 1 dim).
"""

import struct

import numpy as np

from ..errors import ConsistencyError, ParseError
from .dataset import Dataset

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801

_DTYPES = {
    0x08: np.dtype(">u1"),
    0x09: np.dtype(">i1"),
    0x0B: np.dtype(">i2"),
    0x0C: np.dtype(">i4"),
    0x0D: np.dtype(">f4"),
    0x0E: np.dtype(">f8"),
}


def read_idx(path):
    """Parse one IDX file into an ndarray (native byte order)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 4:
        raise ParseError(f"{path}: truncated header at byte {len(raw)}")
    zeros, dtype_code, ndim = struct.unpack(">HBB", raw[:4])
    if zeros != 0 or dtype_code not in _DTYPES:
        raise ParseError(f"{path}: bad magic {raw[:4].hex()} at byte 0")
    header_end = 4 + 4 * ndim
    if len(raw) < header_end:
        raise ParseError(f"{path}: truncated dimensions at byte {len(raw)}")
    dims = struct.unpack(">" + "I" * ndim, raw[4:header_end])
    dtype = _DTYPES[dtype_code]
    expected = int(np.prod(dims)) * dtype.itemsize
    if len(raw) - header_end != expected:
        raise ParseError(
            f"{path}: expected {expected} data bytes, found {len(raw) - header_end}"
            f" at byte {header_end}"
        )
    data = np.frombuffer(raw, dtype=dtype, offset=header_end)
    return data.reshape(dims).astype(dtype.newbyteorder("=")).copy()


def write_idx(path, array, dtype_code=0x08):
    """Write an ndarray as an IDX file (used for fixtures and round-trips)."""
    array = np.asarray(array)
    dtype = _DTYPES[dtype_code]
    with open(path, "wb") as fh:
        fh.write(struct.pack(">HBB", 0, dtype_code, array.ndim))
        fh.write(struct.pack(">" + "I" * array.ndim, *array.shape))
        fh.write(array.astype(dtype).tobytes())


def load_idx(images_path, labels_path):
    """Load an images/labels IDX pair into a Dataset.

    Pixels are flattened row-major and scaled to [0, 1] by /255.
    """
    with open(images_path, "rb") as fh:
        magic = struct.unpack(">I", fh.read(4))[0]
    if magic != IMAGES_MAGIC:
        raise ParseError(f"{images_path}: expected magic {IMAGES_MAGIC:#010x}, got {magic:#010x} at byte 0")
    with open(labels_path, "rb") as fh:
        magic = struct.unpack(">I", fh.read(4))[0]
    if magic != LABELS_MAGIC:
        raise ParseError(f"{labels_path}: expected magic {LABELS_MAGIC:#010x}, got {magic:#010x} at byte 0")

    images = read_idx(images_path)
    labels = read_idx(labels_path)
    if images.shape[0] != labels.shape[0]:
        raise ConsistencyError(
            f"{images.shape[0]} images but {labels.shape[0]} labels"
        )
    n = images.shape[0]
    X = images.reshape(n, -1).astype(np.float64) / 255.0
    Y = labels.astype(np.int64)
    n_classes = int(Y.max()) + 1 if n else 0
    pixels = X.shape[1]
    return Dataset(
        X=X,
        Y=Y,
        class_names=[str(c) for c in range(n_classes)],
        column_names=[f"px{i}" for i in range(pixels)],
        provenance={"source": "idx", "images": str(images_path), "labels": str(labels_path)},
    )
