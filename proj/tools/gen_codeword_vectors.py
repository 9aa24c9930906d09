#!/usr/bin/env python3
"""Generate the (info, codeword) table for the [23,12,7] Golay code.

Independent of the C++ encoder: plain GF(2) polynomial long division by
g(x) = x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1, systematic layout with the
information word in bits 22..11 and the remainder in bits 10..0.
"""
import sys

GENERATOR = [11, 10, 6, 5, 4, 2, 0]


def poly_mod(dividend_terms, divisor_terms):
    rem = set(dividend_terms)
    top = max(divisor_terms)
    while rem and max(rem) >= top:
        shift = max(rem) - top
        rem ^= {t + shift for t in divisor_terms}
    return rem


def encode(info):
    shifted = {i + 11 for i in range(12) if (info >> i) & 1}
    parity = poly_mod(shifted, GENERATOR)
    word = 0
    for t in shifted | parity:
        word |= 1 << t
    return word


def main():
    out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
    for info in range(4096):
        out.write(f"0x{info:03x},0x{encode(info):06x}\n")


if __name__ == "__main__":
    main()
