"""Clean-symbol decoder: the encoder's test oracle.

Reads format information, removes the mask, de-interleaves the
codewords, checks that every Reed-Solomon block has all-zero syndromes,
and strips the byte-mode headers.  Damaged symbols are rejected, not
repaired.
"""

from __future__ import annotations

from . import tables
from .gf import rs_syndromes
from .matrix import QrSymbol, data_positions, parse_format_bits, read_format_info


class DecodeError(ValueError):
    """Base class for decoder rejections."""


class CorruptSymbolError(DecodeError):
    """Structure or Reed-Solomon check failed."""


class UnsupportedModeError(DecodeError):
    """Symbol uses a segment mode this decoder does not handle."""


class _BitReader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    @property
    def remaining(self) -> int:
        return len(self.data) * 8 - self.pos

    def take(self, count: int) -> int:
        value = 0
        for _ in range(count):
            byte = self.data[self.pos >> 3]
            value = (value << 1) | (byte >> (7 - (self.pos & 7)) & 1)
            self.pos += 1
        return value


def _read_codewords(symbol: QrSymbol, mask_id: int) -> bytes:
    from .matrix import MASK_PREDICATES

    predicate = MASK_PREDICATES[mask_id]
    total = tables.total_codewords(symbol.version)
    bits_needed = total * 8
    out = bytearray(total)
    for index, (r, c) in enumerate(data_positions(symbol.version)):
        if index >= bits_needed:
            break  # remainder bits
        bit = symbol.matrix[r][c] ^ predicate(r, c)
        if bit:
            out[index // 8] |= 1 << (7 - index % 8)
    return bytes(out)


def _deinterleave(codewords: bytes, version: int, ec_level: str) -> list[bytes]:
    groups = tables.block_groups(version, ec_level)
    data_lengths = [data for count, _t, data in groups for _ in range(count)]
    ec_count = groups[0][1] - groups[0][2]

    blocks = [bytearray() for _ in data_lengths]
    it = iter(codewords)
    for i in range(max(data_lengths)):
        for b, length in enumerate(data_lengths):
            if i < length:
                blocks[b].append(next(it))
    ec_blocks = [bytearray() for _ in data_lengths]
    for _ in range(ec_count):
        for b in range(len(data_lengths)):
            ec_blocks[b].append(next(it))
    return [bytes(d + e) for d, e in zip(blocks, ec_blocks)]


def decode_qr(symbol: QrSymbol) -> bytes:
    """Recover the exact payload bytes of a clean symbol."""
    side = len(symbol.matrix)
    if side != tables.side_length(symbol.version) or any(
        len(row) != side for row in symbol.matrix
    ):
        raise CorruptSymbolError("matrix is not square for its version")
    if not tables.MIN_VERSION <= symbol.version <= tables.MAX_VERSION:
        raise CorruptSymbolError(f"unsupported version {symbol.version}")

    parsed = parse_format_bits(read_format_info(symbol.matrix))
    if parsed is None:
        raise CorruptSymbolError("format information fails its BCH check")
    ec_level, mask_id = parsed

    codewords = _read_codewords(symbol, mask_id)
    groups = tables.block_groups(symbol.version, ec_level)
    ec_count = groups[0][1] - groups[0][2]
    data = bytearray()
    for block in _deinterleave(codewords, symbol.version, ec_level):
        if any(rs_syndromes(block, ec_count)):
            raise CorruptSymbolError("nonzero Reed-Solomon syndrome")
        data.extend(block[:-ec_count])

    return _parse_segments(bytes(data), symbol.version)


def _parse_segments(data: bytes, version: int) -> bytes:
    reader = _BitReader(data)
    payload = bytearray()
    while reader.remaining >= 4:
        mode = reader.take(4)
        if mode == 0b0000:  # terminator
            break
        if mode != 0b0100:
            raise UnsupportedModeError(f"mode indicator {mode:#06b} not supported")
        count = reader.take(tables.char_count_bits(version))
        if reader.remaining < count * 8:
            raise CorruptSymbolError("character count exceeds remaining data")
        for _ in range(count):
            payload.append(reader.take(8))
    return bytes(payload)
