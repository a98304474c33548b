#!/usr/bin/env python3
"""Refresh the "<key>.expanded" lines of the families catalog.

Each factored function is parsed with sympy, reduced to lowest terms with a
monic denominator, and written as "num / den" coefficient lists (lowest
degree first). Existing ".expanded" lines are replaced in place.

usage: python3 tools/expand_catalog.py crates/core/data/families.txt
"""

import sys

from sympy import Poly, Rational, cancel, fraction, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

FUNCTION_KEYS = {
    "jmap": "h",
    "jpmap": "h",
    "F": "h",
    "G": "h",
    "hC": "t",
    "hX": "t",
    "thm1": "t",
    "thm2.j": "t",
    "thm2.jp": "t",
}

TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)


def coeff_list(p, var):
    cs = Poly(p, var).all_coeffs()[::-1]
    return "[" + ", ".join(str(Rational(c)) for c in cs) + "]"


def expand(src, var):
    v = symbols(var)
    e = cancel(parse_expr(src, local_dict={var: v}, transformations=TRANSFORMS))
    num, den = fraction(e)
    lc = Poly(den, v).LC()
    num, den = num / lc, den / lc
    return f"{coeff_list(num, v)} / {coeff_list(den, v)}"


def main(path):
    out = []
    with open(path) as f:
        lines = f.read().splitlines()
    for line in lines:
        key = line.split("=", 1)[0].strip() if "=" in line else None
        if key and key.endswith(".expanded"):
            continue
        out.append(line)
        if key in FUNCTION_KEYS:
            src = line.split("=", 1)[1].strip()
            out.append(f"{key}.expanded = {expand(src, FUNCTION_KEYS[key])}")
    with open(path, "w") as f:
        f.write("\n".join(out) + "\n")


if __name__ == "__main__":
    main(sys.argv[1])
