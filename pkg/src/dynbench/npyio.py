"""Bit-exact NPY v1.0 / NPZ storage for dense float64 matrices.

All training data, truth data, and submissions travel as 2-D little-endian
float64 arrays.  Supporting exactly one dtype keeps the data contract free of
silent precision loss, and writing the format by hand keeps the bytes
deterministic: identical input always yields identical output, so archives
can be hashed, diffed, and scanned.

File layout produced by ``write_array``:

    bytes 0..5    magic  b"\\x93NUMPY"
    byte  6..7    version 1.0
    bytes 8..9    HEADER_LEN, little-endian uint16
    HEADER_LEN    ASCII dict  "{'descr': '<f8', 'fortran_order': False,
                  'shape': (R, C), }"  padded with 0x20, 0x0A-terminated,
                  sized so the whole prefix is a multiple of 64 bytes
    rest          R*C float64 values, row-major

Archives (``write_archive``) are stored-mode ZIP files whose members are
"<name>.npy"; compression is deliberately off so that archive bytes are a
pure function of their contents.
"""

from __future__ import annotations

import ast
import io
import struct
import zipfile
from typing import Mapping

import numpy as np

MAGIC = b"\x93NUMPY"
_VERSION = b"\x01\x00"
_HEADER_ALIGN = 64
_DESCR = "<f8"


class NpyFormatError(ValueError):
    """Base class for malformed or unsupported NPY data."""


class BadMagic(NpyFormatError):
    pass


class UnsupportedVersion(NpyFormatError):
    pass


class UnsupportedDtype(NpyFormatError):
    pass


class MalformedHeader(NpyFormatError):
    pass


class TruncatedPayload(NpyFormatError):
    pass


class ArchiveError(ValueError):
    """Base class for malformed NPZ archives."""


class NotAZip(ArchiveError):
    pass


class MemberNotNpy(ArchiveError):
    pass


class DuplicateName(ArchiveError):
    pass


def require_matrix(a: np.ndarray) -> np.ndarray:
    """Validate and normalize *a* to a C-contiguous float64 matrix.

    Rejects anything that is not 2-D with at least one row and one column.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"matrix must have at least one row and column, got {a.shape}")
    return np.ascontiguousarray(a, dtype=np.float64)


def write_array(a: np.ndarray) -> bytes:
    """Serialize a float64 matrix to NPY v1.0 bytes.

    Deterministic: the same values always produce the same bytes.
    """
    a = require_matrix(a)
    rows, cols = a.shape
    body = "{'descr': '<f8', 'fortran_order': False, 'shape': (%d, %d), }" % (rows, cols)
    # Pad so magic+version+len+header is a multiple of 64 bytes.
    prefix = len(MAGIC) + len(_VERSION) + 2
    pad = (-(prefix + len(body) + 1)) % _HEADER_ALIGN
    header = (body + " " * pad + "\n").encode("ascii")
    if len(header) > 0xFFFF:
        raise NpyFormatError("header too long for NPY v1.0")
    return MAGIC + _VERSION + struct.pack("<H", len(header)) + header + a.tobytes(order="C")


def read_array(data: bytes) -> np.ndarray:
    """Parse NPY v1.0 bytes into a C-contiguous float64 matrix.

    Both row-major and column-major files are accepted; the result is always
    row-major.  Anything other than little-endian float64 is rejected.
    """
    if data[:6] != MAGIC:
        raise BadMagic("missing NPY magic")
    if len(data) < 10:
        raise MalformedHeader("file shorter than the fixed prefix")
    if data[6:8] != _VERSION:
        raise UnsupportedVersion(f"only NPY 1.0 is supported, got {data[6]}.{data[7]}")
    (hlen,) = struct.unpack("<H", data[8:10])
    header_end = 10 + hlen
    if len(data) < header_end:
        raise MalformedHeader("declared header extends past end of file")
    try:
        header = ast.literal_eval(data[10:header_end].decode("ascii"))
    except (ValueError, SyntaxError, UnicodeDecodeError) as exc:
        raise MalformedHeader(f"header is not a python dict literal: {exc}") from None
    if not isinstance(header, dict) or set(header) != {"descr", "fortran_order", "shape"}:
        raise MalformedHeader(f"unexpected header keys: {header!r}")
    if header["descr"] != _DESCR:
        raise UnsupportedDtype(f"only little-endian float64 ('<f8') is supported, got {header['descr']!r}")
    fortran = header["fortran_order"]
    if not isinstance(fortran, bool):
        raise MalformedHeader(f"fortran_order must be a bool, got {fortran!r}")
    shape = header["shape"]
    if (
        not isinstance(shape, tuple)
        or len(shape) != 2
        or not all(isinstance(d, int) and d >= 1 for d in shape)
    ):
        raise MalformedHeader(f"shape must be a pair of positive ints, got {shape!r}")
    rows, cols = shape
    expected = rows * cols * 8
    payload = data[header_end:]
    if len(payload) != expected:
        raise TruncatedPayload(f"expected {expected} payload bytes, got {len(payload)}")
    flat = np.frombuffer(payload, dtype="<f8")
    order = "F" if fortran else "C"
    return np.ascontiguousarray(flat.reshape((rows, cols), order=order))


def _check_name(name: str) -> None:
    if not name or not name.isascii() or "/" in name or "\\" in name:
        raise ArchiveError(f"invalid archive entry name: {name!r}")


def write_archive(entries: Mapping[str, np.ndarray]) -> bytes:
    """Serialize named matrices to a stored-mode (uncompressed) NPZ archive."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", compression=zipfile.ZIP_STORED) as zf:
        for name, array in entries.items():
            _check_name(name)
            # Fixed timestamp keeps archive bytes deterministic.
            info = zipfile.ZipInfo(name + ".npy", date_time=(1980, 1, 1, 0, 0, 0))
            zf.writestr(info, write_array(array))
    return buf.getvalue()


def read_archive(data: bytes) -> dict[str, np.ndarray]:
    """Parse an NPZ archive, inverting :func:`write_archive`.

    Entry order follows the archive; names are member names minus ".npy".
    """
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as exc:
        raise NotAZip(str(exc)) from None
    entries: dict[str, np.ndarray] = {}
    with zf:
        for info in zf.infolist():
            if not info.filename.endswith(".npy"):
                raise MemberNotNpy(f"archive member {info.filename!r} is not a .npy file")
            name = info.filename[: -len(".npy")]
            if name in entries:
                raise DuplicateName(f"duplicate archive entry {name!r}")
            entries[name] = read_array(zf.read(info))
    return entries
