#!/usr/bin/env python3
"""Derive the classical modular polynomials Phi_N(X, Y) for N in {2, 3, 7}.

The coefficients are solved from the q-expansion of the j-function: for prime
N, Phi_N(j(q), j(q^N)) vanishes identically as a Laurent series in q. The
unknown coefficients (symmetric, degree N+1 in each variable, with the known
monic terms X^(N+1) + Y^(N+1) - X^N Y^N) are found by exact Gaussian
elimination over Q, and the solution is re-checked on extra series terms.

Output format: one line per stored coefficient, "N i k c" with i >= k, meaning
c is the coefficient of X^i Y^k (and of X^k Y^i).

Usage: python3 tools/derive_modular_polynomials.py > crates/core/data/modular_polynomials.txt
"""
from fractions import Fraction
import sys


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def mul(a, b, prec):
    out = [0] * prec
    for i, x in enumerate(a):
        if x == 0:
            continue
        for k in range(0, prec - i):
            out[i + k] += x * b[k]
    return out


def j_coefficients(prec):
    """Coefficients c[n] of j(q) = sum_{n >= -1} c[n+1] q^n, n up to prec - 2."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec)]
    e4cubed = mul(mul(e4, e4, prec), e4, prec)
    # Delta / q = prod (1 - q^n)^24
    eta24 = [1] + [0] * (prec - 1)
    for n in range(1, prec):
        factor = [0] * prec
        factor[0] = 1
        factor[n] = -1
        for _ in range(24):
            eta24 = mul(eta24, factor, prec)
    # inverse of eta24 as power series
    inv = [0] * prec
    inv[0] = 1
    for n in range(1, prec):
        inv[n] = -sum(eta24[k] * inv[n - k] for k in range(1, n + 1))
    return mul(e4cubed, inv, prec)  # q * j(q)


class Laurent:
    """Truncated Laurent series: coefficient list starting at q^val, exact up to q^top."""

    def __init__(self, val, coeffs):
        self.val = val
        self.coeffs = coeffs

    def mul(self, other, top):
        val = self.val + other.val
        n = top - val + 1
        out = [0] * max(n, 0)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for k, y in enumerate(other.coeffs):
                if i + k >= n:
                    break
                out[i + k] += x * y
        return Laurent(val, out)

    def coeff(self, e):
        idx = e - self.val
        return self.coeffs[idx] if 0 <= idx < len(self.coeffs) else 0


def derive(n, extra=25):
    low = -n * (n + 1)
    top = extra
    prec = top - low + 2 * n * (n + 1) + 5
    qj = j_coefficients(prec)
    jx = Laurent(-1, qj)
    jy_coeffs = [0] * (len(qj) * n)
    for i, c in enumerate(qj):
        jy_coeffs[i * n] = c
    jy = Laurent(-n, jy_coeffs)
    one = Laurent(0, [1])

    # headroom: a product with a factor of valuation -v needs the other
    # factor exact up to top + v
    slack = top + n * (n + 1) + n + 1

    def powers(s, k):
        out = [one]
        for _ in range(k):
            out.append(out[-1].mul(s, slack))
        return out

    px = powers(jx, n + 1)
    py = powers(jy, n + 1)

    unknowns = [(i, k) for i in range(n + 1) for k in range(i + 1) if (i, k) != (n, n)]
    fixed = {(n + 1, 0): 1, (n, n): -1}

    def monomial(i, k):
        a = px[i].mul(py[k], top)
        if i != k:
            b = px[k].mul(py[i], top)
            return lambda e: a.coeff(e) + b.coeff(e)
        return lambda e: a.coeff(e)

    cols = [monomial(i, k) for (i, k) in unknowns]
    rhs_terms = [(c, monomial(i, k)) for (i, k), c in fixed.items()]
    rows = []
    for e in range(low, top + 1):
        row = [Fraction(f(e)) for f in cols]
        rhs = -sum(c * f(e) for c, f in rhs_terms)
        rows.append(row + [Fraction(rhs)])

    # Gaussian elimination
    m = len(unknowns)
    r = 0
    pivots = []
    for c in range(m):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    assert r == m, f"underdetermined system for N={n}"
    for i in range(r, len(rows)):
        assert rows[i][-1] == 0, f"inconsistent system for N={n}"
    sol = {unknowns[c]: rows[i][-1] for i, c in enumerate(pivots)}
    for v in sol.values():
        assert v.denominator == 1
    coeffs = {key: int(v) for key, v in sol.items() if v != 0}
    coeffs.update(fixed)
    return coeffs


def main():
    out = sys.stdout
    out.write("# Classical modular polynomials Phi_N(X, Y), N in {2, 3, 7}.\n")
    out.write("# Derived from the q-expansion of j by tools/derive_modular_polynomials.py.\n")
    out.write("# Line format: N i k c  (coefficient c of X^i Y^k; symmetric, stored with i >= k)\n")
    for n in (2, 3, 7):
        coeffs = derive(n)
        out.write(f"# N = {n}: {len(coeffs)} stored coefficients\n")
        for (i, k) in sorted(coeffs, key=lambda ik: (-ik[0], -ik[1])):
            out.write(f"{n} {i} {k} {coeffs[(i, k)]}\n")


if __name__ == "__main__":
    main()
