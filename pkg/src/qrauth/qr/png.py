"""Minimal 8-bit grayscale PNG writer and reader.

Only what the symbol renderer and the scanner need: color type 0,
bit depth 8, no interlacing.  The reader additionally accepts RGB and
RGBA input (converted to luma) so screenshots from other tools scan.
"""

from __future__ import annotations

import struct
import zlib

_SIGNATURE = b"\x89PNG\r\n\x1a\n"

# bytes per pixel by color type (bit depth 8 only)
_CHANNELS = {0: 1, 2: 3, 4: 2, 6: 4}


class PngFormatError(ValueError):
    """Raised when bytes do not parse as a supported PNG."""


def _chunk(tag: bytes, body: bytes) -> bytes:
    return (
        struct.pack(">I", len(body))
        + tag
        + body
        + struct.pack(">I", zlib.crc32(tag + body))
    )


def write_png(rows: list[bytes]) -> bytes:
    """Encode rows of 8-bit gray pixels; all rows must share one width."""
    if not rows:
        raise ValueError("image must have at least one row")
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise ValueError("rows must be non-empty and of equal width")
    header = struct.pack(">IIBBBBB", width, len(rows), 8, 0, 0, 0, 0)
    raw = b"".join(b"\x00" + bytes(r) for r in rows)
    return (
        _SIGNATURE
        + _chunk(b"IHDR", header)
        + _chunk(b"IDAT", zlib.compress(raw, 9))
        + _chunk(b"IEND", b"")
    )


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def _unfilter(data: bytes, width: int, height: int, bpp: int) -> bytearray:
    stride = width * bpp
    if len(data) != (stride + 1) * height:
        raise PngFormatError("pixel data length does not match dimensions")
    out = bytearray(stride * height)
    prev = bytearray(stride)
    pos = 0
    for y in range(height):
        ftype = data[pos]
        line = bytearray(data[pos + 1 : pos + 1 + stride])
        pos += 1 + stride
        if ftype == 0:
            pass
        elif ftype == 1:
            for i in range(bpp, stride):
                line[i] = (line[i] + line[i - bpp]) & 0xFF
        elif ftype == 2:
            for i in range(stride):
                line[i] = (line[i] + prev[i]) & 0xFF
        elif ftype == 3:
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                line[i] = (line[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif ftype == 4:
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                up_left = prev[i - bpp] if i >= bpp else 0
                line[i] = (line[i] + _paeth(left, prev[i], up_left)) & 0xFF
        else:
            raise PngFormatError(f"unknown filter type {ftype}")
        out[y * stride : (y + 1) * stride] = line
        prev = line
    return out


def read_png(blob: bytes) -> list[bytes]:
    """Decode a PNG into rows of 8-bit gray pixels.

    Color and alpha inputs are flattened to gray; palette, sub-byte
    depths, and interlaced images are rejected.
    """
    if not blob.startswith(_SIGNATURE):
        raise PngFormatError("missing PNG signature")
    pos = len(_SIGNATURE)
    header = None
    idat = bytearray()
    while pos + 8 <= len(blob):
        (length,) = struct.unpack_from(">I", blob, pos)
        tag = blob[pos + 4 : pos + 8]
        body = blob[pos + 8 : pos + 8 + length]
        if len(body) != length:
            raise PngFormatError("truncated chunk")
        pos += 12 + length
        if tag == b"IHDR":
            header = struct.unpack(">IIBBBBB", body)
        elif tag == b"IDAT":
            idat.extend(body)
        elif tag == b"IEND":
            break
    if header is None:
        raise PngFormatError("missing IHDR chunk")
    width, height, depth, color, _comp, _filt, interlace = header
    if depth != 8:
        raise PngFormatError(f"unsupported bit depth {depth}")
    if color not in _CHANNELS:
        raise PngFormatError(f"unsupported color type {color}")
    if interlace != 0:
        raise PngFormatError("interlaced images are not supported")
    if width == 0 or height == 0:
        raise PngFormatError("zero-sized image")
    bpp = _CHANNELS[color]
    try:
        data = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise PngFormatError(f"bad IDAT stream: {exc}") from None
    flat = _unfilter(data, width, height, bpp)
    rows: list[bytes] = []
    for y in range(height):
        line = flat[y * width * bpp : (y + 1) * width * bpp]
        if color == 0:
            rows.append(bytes(line))
        elif color == 4:
            rows.append(bytes(line[0::2]))
        else:
            gray = bytearray(width)
            for x in range(width):
                r, g, b = line[x * bpp], line[x * bpp + 1], line[x * bpp + 2]
                gray[x] = (r * 299 + g * 587 + b * 114) // 1000
            rows.append(bytes(gray))
    return rows
