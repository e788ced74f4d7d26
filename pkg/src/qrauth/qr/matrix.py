"""Module-matrix construction: function patterns, masking, format info.

A matrix is a square list of boolean rows, True = dark.  Everything here
is shared between the encoder and the decoder so that both walk the
symbol in exactly the same order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tables import ALIGNMENT_POSITIONS, EC_BITS_LEVEL, EC_LEVEL_BITS, side_length

# BCH generator polynomials for the 15-bit format and 18-bit version info.
_G15 = 0b10100110111
_G18 = 0b1111100100101
_FORMAT_XOR = 0b101010000010010

MASK_PREDICATES = (
    lambda r, c: (r + c) % 2 == 0,
    lambda r, c: r % 2 == 0,
    lambda r, c: c % 3 == 0,
    lambda r, c: (r + c) % 3 == 0,
    lambda r, c: (r // 2 + c // 3) % 2 == 0,
    lambda r, c: (r * c) % 2 + (r * c) % 3 == 0,
    lambda r, c: ((r * c) % 2 + (r * c) % 3) % 2 == 0,
    lambda r, c: ((r + c) % 2 + (r * c) % 3) % 2 == 0,
)


@dataclass
class QrSymbol:
    """An encoded symbol: version, EC level, module matrix, chosen mask."""

    version: int
    ec_level: str
    matrix: list[list[bool]]
    mask_id: int

    @property
    def side(self) -> int:
        return len(self.matrix)

    def copy(self) -> "QrSymbol":
        return QrSymbol(
            self.version, self.ec_level, [row[:] for row in self.matrix], self.mask_id
        )


def _bch_remainder(value: int, generator: int) -> int:
    glen = generator.bit_length()
    while value.bit_length() >= glen:
        value ^= generator << (value.bit_length() - glen)
    return value


def format_bits(ec_level: str, mask_id: int) -> int:
    """The 15 format-information bits (BCH-protected, xor-masked)."""
    data = (EC_LEVEL_BITS[ec_level] << 3) | mask_id
    return ((data << 10) | _bch_remainder(data << 10, _G15)) ^ _FORMAT_XOR


def parse_format_bits(observed: int) -> tuple[str, int] | None:
    """Inverse of format_bits; None when the BCH check fails."""
    value = observed ^ _FORMAT_XOR
    data = value >> 10
    if _bch_remainder(data << 10, _G15) != value & 0x3FF:
        return None
    level_bits = data >> 3
    if level_bits not in EC_BITS_LEVEL:
        return None
    return EC_BITS_LEVEL[level_bits], data & 0b111


def version_bits(version: int) -> int:
    """The 18 version-information bits, present from version 7 up."""
    return (version << 12) | _bch_remainder(version << 12, _G18)


def alignment_centers(version: int) -> list[tuple[int, int]]:
    coords = ALIGNMENT_POSITIONS[version]
    if not coords:
        return []
    lo, hi = coords[0], coords[-1]
    centers = []
    for r in coords:
        for c in coords:
            if (r, c) in ((lo, lo), (lo, hi), (hi, lo)):
                continue  # would overlap a finder
            centers.append((r, c))
    return centers


def function_mask(version: int) -> list[list[bool]]:
    """True for every module that does not carry data codeword bits."""
    side = side_length(version)
    mask = [[False] * side for _ in range(side)]

    def block(r0, c0, h, w):
        for r in range(r0, r0 + h):
            for c in range(c0, c0 + w):
                mask[r][c] = True

    # finders with separators, and the adjoining format-info strips
    block(0, 0, 9, 9)
    block(0, side - 8, 9, 8)
    block(side - 8, 0, 8, 9)
    for i in range(side):  # timing lines
        mask[6][i] = True
        mask[i][6] = True
    for r, c in alignment_centers(version):
        block(r - 2, c - 2, 5, 5)
    if version >= 7:
        block(0, side - 11, 6, 3)
        block(side - 11, 0, 3, 6)
    return mask


def place_function_patterns(matrix: list[list[bool]]) -> None:
    """Draw finders, separators, timing, alignment and the dark module."""
    side = len(matrix)
    version = (side - 17) // 4

    def finder(r0, c0):
        for r in range(-1, 8):
            for c in range(-1, 8):
                rr, cc = r0 + r, c0 + c
                if not (0 <= rr < side and 0 <= cc < side):
                    continue
                dark = 0 <= r <= 6 and 0 <= c <= 6 and (
                    r in (0, 6) or c in (0, 6) or (2 <= r <= 4 and 2 <= c <= 4)
                )
                matrix[rr][cc] = dark

    finder(0, 0)
    finder(0, side - 7)
    finder(side - 7, 0)

    for i in range(8, side - 8):
        matrix[6][i] = i % 2 == 0
        matrix[i][6] = i % 2 == 0

    for r0, c0 in alignment_centers(version):
        for r in range(-2, 3):
            for c in range(-2, 3):
                matrix[r0 + r][c0 + c] = max(abs(r), abs(c)) != 1

    matrix[side - 8][8] = True


def place_format_info(matrix: list[list[bool]], bits: int) -> None:
    """Write both copies of the 15 format bits (bit 0 first)."""
    side = len(matrix)
    for i in range(15):
        dark = (bits >> i) & 1 == 1
        # copy 1, around the top-left finder
        if i < 6:
            matrix[i][8] = dark
        elif i < 8:
            matrix[i + 1][8] = dark
        else:
            matrix[side - 15 + i][8] = dark
        # copy 2, split between top-right and bottom-left
        if i < 8:
            matrix[8][side - 1 - i] = dark
        elif i < 9:
            matrix[8][15 - i] = dark
        else:
            matrix[8][14 - i] = dark


def read_format_info(matrix: list[list[bool]]) -> int:
    """Read the primary format-info copy back as the 15-bit value."""
    side = len(matrix)
    bits = 0
    for i in range(15):
        if i < 6:
            dark = matrix[i][8]
        elif i < 8:
            dark = matrix[i + 1][8]
        else:
            dark = matrix[side - 15 + i][8]
        bits |= int(dark) << i
    return bits


def place_version_info(matrix: list[list[bool]], version: int) -> None:
    if version < 7:
        return
    side = len(matrix)
    bits = version_bits(version)
    for i in range(18):
        dark = (bits >> i) & 1 == 1
        matrix[i // 3][i % 3 + side - 11] = dark
        matrix[i % 3 + side - 11][i // 3] = dark


def data_positions(version: int) -> list[tuple[int, int]]:
    """Data-module coordinates in placement order (the two-column snake)."""
    side = side_length(version)
    reserved = function_mask(version)
    positions = []
    col = side - 1
    upward = True
    while col >= 1:
        if col == 6:
            col -= 1
        rows = range(side - 1, -1, -1) if upward else range(side)
        for row in rows:
            for c in (col, col - 1):
                if not reserved[row][c]:
                    positions.append((row, c))
        upward = not upward
        col -= 2
    return positions


def apply_mask(matrix: list[list[bool]], version: int, mask_id: int) -> None:
    """XOR the mask pattern over data modules, in place."""
    reserved = function_mask(version)
    predicate = MASK_PREDICATES[mask_id]
    for r, row in enumerate(matrix):
        flags = reserved[r]
        for c in range(len(row)):
            if not flags[c] and predicate(r, c):
                row[c] = not row[c]


def penalty_score(matrix: list[list[bool]]) -> int:
    """The four standard mask-evaluation penalties, summed."""
    side = len(matrix)
    score = 0

    # rule 1: runs of five or more same-colour modules
    for line in _rows_and_columns(matrix):
        run = 1
        for i in range(1, side):
            if line[i] == line[i - 1]:
                run += 1
            else:
                if run >= 5:
                    score += run - 2
                run = 1
        if run >= 5:
            score += run - 2

    # rule 2: 2x2 blocks of one colour
    for r in range(side - 1):
        for c in range(side - 1):
            if matrix[r][c] == matrix[r][c + 1] == matrix[r + 1][c] == matrix[r + 1][c + 1]:
                score += 3

    # rule 3: finder-like 1:1:3:1:1 run with a four-module light flank
    for line in _rows_and_columns(matrix):
        score += 40 * _finder_like_hits(line)

    # rule 4: dark-module proportion, 10 points per 5% step away from 50%
    dark = sum(sum(row) for row in matrix)
    percent = dark * 100 // (side * side)
    score += 10 * (abs(percent - 50) // 5)
    return score


_FINDER_LIKE = (True, False, True, True, True, False, True,
                False, False, False, False)
_FINDER_LIKE_REV = _FINDER_LIKE[::-1]


def _finder_like_hits(line) -> int:
    hits = 0
    for i in range(len(line) - 10):
        window = tuple(line[i:i + 11])
        if window == _FINDER_LIKE or window == _FINDER_LIKE_REV:
            hits += 1
    return hits


def _rows_and_columns(matrix):
    yield from matrix
    for c in range(len(matrix)):
        yield [row[c] for row in matrix]
