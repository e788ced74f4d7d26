"""QR symbol encoder/decoder for byte-mode payloads, versions 1 to 10."""

from .decode import CorruptSymbolError, DecodeError, UnsupportedModeError, decode_qr
from .encode import CapacityError, encode_qr
from .matrix import QrSymbol
from .payload import PayloadError, QrPayload, build_payload, parse_payload
from .png import PngFormatError, read_png, write_png
from .render import matrix_from_png, render, render_ascii, render_png
from .tables import byte_capacity, minimal_version, side_length

__all__ = [
    "CapacityError",
    "CorruptSymbolError",
    "DecodeError",
    "PayloadError",
    "PngFormatError",
    "QrPayload",
    "QrSymbol",
    "UnsupportedModeError",
    "build_payload",
    "byte_capacity",
    "decode_qr",
    "encode_qr",
    "matrix_from_png",
    "minimal_version",
    "parse_payload",
    "read_png",
    "render",
    "render_ascii",
    "render_png",
    "side_length",
    "write_png",
]
