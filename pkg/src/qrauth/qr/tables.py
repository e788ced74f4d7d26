"""Symbology tables for versions 1-10, error levels L/M/Q/H.

Block structure entries are (block_count, total_codewords, data_codewords)
groups; versions whose blocks are uneven carry two groups.  The number of
error-correction codewords per block (total - data) is identical across
the groups of one version/level.
"""

from __future__ import annotations

EC_LEVELS = ("L", "M", "Q", "H")

# Format-info encoding of the level (two bits, per the symbology).
EC_LEVEL_BITS = {"L": 1, "M": 0, "Q": 3, "H": 2}
EC_BITS_LEVEL = {v: k for k, v in EC_LEVEL_BITS.items()}

MIN_VERSION = 1
MAX_VERSION = 10

# (count, total, data) block groups, indexed [version][level].
RS_BLOCKS: dict[int, dict[str, tuple[tuple[int, int, int], ...]]] = {
    1: {
        "L": ((1, 26, 19),),
        "M": ((1, 26, 16),),
        "Q": ((1, 26, 13),),
        "H": ((1, 26, 9),),
    },
    2: {
        "L": ((1, 44, 34),),
        "M": ((1, 44, 28),),
        "Q": ((1, 44, 22),),
        "H": ((1, 44, 16),),
    },
    3: {
        "L": ((1, 70, 55),),
        "M": ((1, 70, 44),),
        "Q": ((2, 35, 17),),
        "H": ((2, 35, 13),),
    },
    4: {
        "L": ((1, 100, 80),),
        "M": ((2, 50, 32),),
        "Q": ((2, 50, 24),),
        "H": ((4, 25, 9),),
    },
    5: {
        "L": ((1, 134, 108),),
        "M": ((2, 67, 43),),
        "Q": ((2, 33, 15), (2, 34, 16)),
        "H": ((2, 33, 11), (2, 34, 12)),
    },
    6: {
        "L": ((2, 86, 68),),
        "M": ((4, 43, 27),),
        "Q": ((4, 43, 19),),
        "H": ((4, 43, 15),),
    },
    7: {
        "L": ((2, 98, 78),),
        "M": ((4, 49, 31),),
        "Q": ((2, 32, 14), (4, 33, 15)),
        "H": ((4, 39, 13), (1, 40, 14)),
    },
    8: {
        "L": ((2, 121, 97),),
        "M": ((2, 60, 38), (2, 61, 39)),
        "Q": ((4, 40, 18), (2, 41, 19)),
        "H": ((4, 40, 14), (2, 41, 15)),
    },
    9: {
        "L": ((2, 146, 116),),
        "M": ((3, 58, 36), (2, 59, 37)),
        "Q": ((4, 36, 16), (4, 37, 17)),
        "H": ((4, 36, 12), (4, 37, 13)),
    },
    10: {
        "L": ((2, 86, 68), (2, 87, 69)),
        "M": ((4, 69, 43), (1, 70, 44)),
        "Q": ((6, 43, 19), (2, 44, 20)),
        "H": ((6, 43, 15), (2, 44, 16)),
    },
}

# Alignment pattern centre coordinates per version (row and column grids).
ALIGNMENT_POSITIONS: dict[int, tuple[int, ...]] = {
    1: (),
    2: (6, 18),
    3: (6, 22),
    4: (6, 26),
    5: (6, 30),
    6: (6, 34),
    7: (6, 22, 38),
    8: (6, 24, 42),
    9: (6, 26, 46),
    10: (6, 28, 50),
}

# Leftover bits after the last codeword in the module placement.
REMAINDER_BITS = {1: 0, 2: 7, 3: 7, 4: 7, 5: 7, 6: 7, 7: 0, 8: 0, 9: 0, 10: 0}


def side_length(version: int) -> int:
    return 17 + 4 * version


def block_groups(version: int, ec_level: str) -> tuple[tuple[int, int, int], ...]:
    return RS_BLOCKS[version][ec_level]


def data_codewords(version: int, ec_level: str) -> int:
    return sum(count * data for count, _, data in block_groups(version, ec_level))


def total_codewords(version: int) -> int:
    groups = RS_BLOCKS[version]["L"]
    return sum(count * total for count, total, _ in groups)


def char_count_bits(version: int) -> int:
    """Byte-mode character count field width."""
    return 8 if version <= 9 else 16


def byte_capacity(version: int, ec_level: str) -> int:
    """Maximum byte-mode payload length for a version and EC level."""
    bits = data_codewords(version, ec_level) * 8
    header = 4 + char_count_bits(version)
    return (bits - header) // 8


def minimal_version(payload_length: int, ec_level: str) -> int | None:
    """Smallest version whose byte capacity fits, or None past version 10."""
    for version in range(MIN_VERSION, MAX_VERSION + 1):
        if payload_length <= byte_capacity(version, ec_level):
            return version
    return None
