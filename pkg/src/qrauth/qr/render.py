"""Turning symbols into terminal text or PNG bytes, and back.

ASCII output uses two characters per module so the symbol is roughly
square in a monospace terminal.  PNG output is 8-bit grayscale with a
quiet zone; matrix_from_png recovers candidate module grids for the
scanner side.
"""

from __future__ import annotations

from .matrix import QrSymbol
from .png import read_png, write_png

QUIET_ZONE = 4

DARK_CELL = "██"
LIGHT_CELL = "  "

# gray levels for PNG output; scanner threshold sits between them
DARK_PIXEL = 0x00
LIGHT_PIXEL = 0xFF
_THRESHOLD = 128


def render_ascii(symbol: QrSymbol, quiet_zone: int = QUIET_ZONE) -> str:
    """Full-block art, one line per module row including the quiet zone."""
    side = symbol.side
    total = side + 2 * quiet_zone
    blank = LIGHT_CELL * total + "\n"
    lines = [blank] * quiet_zone
    for row in symbol.matrix:
        cells = [LIGHT_CELL] * quiet_zone
        cells.extend(DARK_CELL if module else LIGHT_CELL for module in row)
        cells.append(LIGHT_CELL * quiet_zone)
        lines.append("".join(cells) + "\n")
    lines.extend([blank] * quiet_zone)
    return "".join(lines)


def render_png(symbol: QrSymbol, scale: int = 1, quiet_zone: int = QUIET_ZONE) -> bytes:
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    side = symbol.side
    total = (side + 2 * quiet_zone) * scale
    margin = bytes([LIGHT_PIXEL]) * total
    rows = [margin] * (quiet_zone * scale)
    for row in symbol.matrix:
        line = bytearray()
        line.extend([LIGHT_PIXEL] * (quiet_zone * scale))
        for module in row:
            line.extend([DARK_PIXEL if module else LIGHT_PIXEL] * scale)
        line.extend([LIGHT_PIXEL] * (quiet_zone * scale))
        packed = bytes(line)
        rows.extend([packed] * scale)
    rows.extend([margin] * (quiet_zone * scale))
    return write_png(rows)


def render(symbol: QrSymbol, fmt: str = "ascii", scale: int = 1,
           quiet_zone: int = QUIET_ZONE) -> str | bytes:
    if fmt == "ascii":
        return render_ascii(symbol, quiet_zone)
    if fmt == "png":
        return render_png(symbol, scale, quiet_zone)
    raise ValueError(f"unknown render format {fmt!r}")


def matrix_from_png(blob: bytes, quiet_zone: int = QUIET_ZONE) -> list[list[list[bool]]]:
    """Candidate module grids from a PNG produced by render_png.

    The module count is not stored in the image, so every symbol side
    whose total (side plus quiet zones) divides the pixel width evenly
    is sampled and returned, smallest scale first.  The caller tries
    each candidate against the decoder.
    """
    rows = read_png(blob)
    height, width = len(rows), len(rows[0])
    if height != width:
        raise ValueError("expected a square image")
    candidates: list[list[list[bool]]] = []
    # side = 17 + 4v for v 1..10, plus quiet zone on both edges
    for version in range(1, 11):
        side = 17 + 4 * version
        total = side + 2 * quiet_zone
        if width % total:
            continue
        scale = width // total
        half = scale // 2
        grid = []
        for r in range(side):
            y = (quiet_zone + r) * scale + half
            grid.append([
                rows[y][(quiet_zone + c) * scale + half] < _THRESHOLD
                for c in range(side)
            ])
        # quiet zone must actually be light or the sampling grid is wrong
        probe = quiet_zone * scale // 2
        if rows[probe][probe] < _THRESHOLD:
            continue
        candidates.append(grid)
    return candidates
