"""Byte-mode symbol encoder, versions 1-10.

Pipeline: bit stream (mode, length, payload, terminator, pad codewords)
-> Reed-Solomon blocks -> interleaved codewords -> module placement ->
mask selection by minimum penalty -> format/version information.
"""

from __future__ import annotations

from . import tables
from .gf import rs_encode_block
from .matrix import (
    QrSymbol,
    apply_mask,
    data_positions,
    format_bits,
    penalty_score,
    place_format_info,
    place_function_patterns,
    place_version_info,
)


class CapacityError(ValueError):
    """Payload does not fit the largest supported symbol."""

    def __init__(self, required: int, limit: int, ec_level: str):
        self.required = required
        self.limit = limit
        self.ec_level = ec_level
        super().__init__(
            f"payload of {required} bytes exceeds the {limit}-byte capacity "
            f"of version {tables.MAX_VERSION} at level {ec_level}"
        )


class _BitWriter:
    def __init__(self):
        self.bits: list[int] = []

    def put(self, value: int, count: int) -> None:
        for shift in range(count - 1, -1, -1):
            self.bits.append((value >> shift) & 1)

    def to_bytes(self) -> bytes:
        out = bytearray()
        for i in range(0, len(self.bits), 8):
            byte = 0
            for bit in self.bits[i:i + 8]:
                byte = (byte << 1) | bit
            out.append(byte)
        return bytes(out)


def _data_codeword_stream(payload: bytes, version: int, ec_level: str) -> bytes:
    writer = _BitWriter()
    writer.put(0b0100, 4)  # byte mode
    writer.put(len(payload), tables.char_count_bits(version))
    for byte in payload:
        writer.put(byte, 8)

    capacity_bits = tables.data_codewords(version, ec_level) * 8
    writer.put(0, min(4, capacity_bits - len(writer.bits)))  # terminator
    if len(writer.bits) % 8:
        writer.put(0, 8 - len(writer.bits) % 8)

    stream = bytearray(writer.to_bytes())
    pad = (0xEC, 0x11)
    for i in range(capacity_bits // 8 - len(stream)):
        stream.append(pad[i % 2])
    return bytes(stream)


def _split_blocks(stream: bytes, version: int, ec_level: str) -> list[bytes]:
    blocks = []
    offset = 0
    for count, _total, data in tables.block_groups(version, ec_level):
        for _ in range(count):
            blocks.append(stream[offset:offset + data])
            offset += data
    return blocks


def interleave(version: int, ec_level: str, data_blocks: list[bytes]) -> bytes:
    """Interleave data codewords then EC codewords, column by column."""
    groups = tables.block_groups(version, ec_level)
    ec_count = groups[0][1] - groups[0][2]
    ec_blocks = [rs_encode_block(block, ec_count) for block in data_blocks]

    out = bytearray()
    for i in range(max(len(b) for b in data_blocks)):
        for block in data_blocks:
            if i < len(block):
                out.append(block[i])
    for i in range(ec_count):
        for block in ec_blocks:
            out.append(block[i])
    return bytes(out)


def encode_qr(
    payload: bytes | str,
    ec_level: str = "M",
    *,
    mask: int | None = None,
) -> QrSymbol:
    """Encode a byte payload into the smallest symbol that fits.

    The mask is chosen by scoring all eight patterns with the standard
    penalty rules (ties go to the lowest id); pass ``mask`` to force one.
    """
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    if ec_level not in tables.EC_LEVELS:
        raise ValueError(f"unknown EC level {ec_level!r}")
    if mask is not None and not 0 <= mask <= 7:
        raise ValueError("mask id must be in 0..7")

    version = tables.minimal_version(len(payload), ec_level)
    if version is None:
        raise CapacityError(
            len(payload), tables.byte_capacity(tables.MAX_VERSION, ec_level), ec_level
        )

    stream = _data_codeword_stream(payload, version, ec_level)
    codewords = interleave(version, ec_level, _split_blocks(stream, version, ec_level))
    return place_codewords(version, ec_level, codewords, mask=mask)


def place_codewords(
    version: int,
    ec_level: str,
    codewords: bytes,
    *,
    mask: int | None = None,
) -> QrSymbol:
    """Placement half of the encoder: codewords -> masked symbol."""
    side = tables.side_length(version)
    base = [[False] * side for _ in range(side)]
    place_function_patterns(base)
    positions = data_positions(version)
    bit_count = len(codewords) * 8
    for index, (r, c) in enumerate(positions):
        if index < bit_count:
            base[r][c] = codewords[index // 8] >> (7 - index % 8) & 1 == 1
        # positions past the codewords are the remainder bits, left light

    candidates = range(8) if mask is None else [mask]
    best: QrSymbol | None = None
    best_score = 0
    for mask_id in candidates:
        matrix = [row[:] for row in base]
        apply_mask(matrix, version, mask_id)
        place_format_info(matrix, format_bits(ec_level, mask_id))
        place_version_info(matrix, version)
        score = penalty_score(matrix)
        if best is None or score < best_score:
            best = QrSymbol(version, ec_level, matrix, mask_id)
            best_score = score
    assert best is not None
    return best
