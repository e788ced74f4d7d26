"""GF(256) arithmetic and Reed-Solomon codeword generation.

Field elements are bytes under the reduction polynomial
x^8 + x^4 + x^3 + x^2 + 1 (0x11D), the field the QR symbology uses.
"""

from __future__ import annotations

# exp table doubled so products of two logs never need an explicit mod 255
_EXP = [0] * 510
_LOG = [0] * 256

_x = 1
for _i in range(255):
    _EXP[_i] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= 0x11D
for _i in range(255, 510):
    _EXP[_i] = _EXP[_i - 255]


def gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def gf_pow(base: int, exponent: int) -> int:
    if base == 0:
        return 0
    return _EXP[(_LOG[base] * exponent) % 255]


def generator_poly(degree: int) -> list[int]:
    """Coefficients of prod (x - alpha^i), i < degree, highest power first."""
    poly = [1]
    for i in range(degree):
        root = _EXP[i]
        nxt = [0] * (len(poly) + 1)
        for j, coef in enumerate(poly):
            nxt[j] ^= gf_mul(coef, 1)
            nxt[j + 1] ^= gf_mul(coef, root)
        poly = nxt
    return poly


def rs_encode_block(data: bytes, ec_count: int) -> bytes:
    """Error-correction codewords for one block (polynomial remainder)."""
    gen = generator_poly(ec_count)
    rem = list(data) + [0] * ec_count
    for i in range(len(data)):
        coef = rem[i]
        if coef:
            for j in range(1, len(gen)):
                rem[i + j] ^= gf_mul(gen[j], coef)
    return bytes(rem[len(data):])


def rs_syndromes(codewords: bytes, ec_count: int) -> list[int]:
    """Syndromes S_i = C(alpha^i); all zero for an undamaged block."""
    out = []
    for i in range(ec_count):
        x = _EXP[i]
        acc = 0
        for byte in codewords:
            acc = gf_mul(acc, x) ^ byte
        out.append(acc)
    return out
