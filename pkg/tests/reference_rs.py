"""Reference GF(256) arithmetic and Reed-Solomon check code.

Deliberately structured unlike the production code: multiplication is
bitwise carry-less with on-the-fly reduction (no lookup tables), the
generator polynomial is built in ascending coefficient order, and
syndromes evaluate each power explicitly instead of using Horner.
"""

_REDUCER = 0x11D


def gf_mult(a: int, b: int) -> int:
    product = 0
    while b:
        if b & 1:
            product ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= _REDUCER
    return product


def gf_power(base: int, exponent: int) -> int:
    result = 1
    for _ in range(exponent):
        result = gf_mult(result, base)
    return result


def generator_ascending(ec_count: int) -> list[int]:
    """Coefficients of prod (x + alpha^i), lowest power first."""
    poly = [1]
    for i in range(ec_count):
        root = gf_power(2, i)
        shifted = [0] + poly  # poly * x
        scaled = [gf_mult(c, root) for c in poly] + [0]
        poly = [s ^ t for s, t in zip(shifted, scaled)]
    return poly


def rs_check_codewords(data: bytes, ec_count: int) -> list[int]:
    """Remainder of data * x^ec divided by the generator polynomial."""
    gen = list(reversed(generator_ascending(ec_count)))  # highest first
    buf = list(data) + [0] * ec_count
    for i in range(len(data)):
        lead = buf[i]
        if lead == 0:
            continue
        for j, coeff in enumerate(gen):
            buf[i + j] ^= gf_mult(coeff, lead)
    return buf[len(data):]


def syndromes(codewords, ec_count: int) -> list[int]:
    """S_i = C(alpha^i) for i in 0..ec_count-1; all zero iff valid."""
    degree = len(codewords) - 1
    values = []
    for i in range(ec_count):
        point = gf_power(2, i)
        total = 0
        for j, c in enumerate(codewords):
            total ^= gf_mult(c, gf_power(point, degree - j))
        values.append(total)
    return values
