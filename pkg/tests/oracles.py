"""Independent brute-force oracles used to freeze expected values.

Everything here works by direct truncated series expansion with Fraction
arithmetic, never through the residue pipeline under test.
"""

from fractions import Fraction
from math import comb


def series_mul(a, b, order):
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(order + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def series_inv(a, order):
    out = [Fraction(1) / a[0]]
    for t in range(1, order + 1):
        s = sum((a[j] * out[t - j] for j in range(1, t + 1)), Fraction(0))
        out.append(-s / a[0])
    return out


def series_pow(a, n, order):
    r = [Fraction(1)] + [Fraction(0)] * order
    if n < 0:
        a = series_inv(a, order)
        n = -n
    for _ in range(n):
        r = series_mul(r, a, order)
    return r


def chern_euler(n, degrees):
    """Euler number of a smooth complete intersection of the given degrees in
    projective n-space: chi = (prod d_i) [h^(n-m)] (1+h)^(n+1) / prod(1+d_i h)."""
    m = len(degrees)
    order = n - m
    num = [Fraction(comb(n + 1, i)) for i in range(order + 1)]
    s = num
    for d in degrees:
        den = [Fraction(1), Fraction(d)] + [Fraction(0)] * max(0, order - 1)
        s = series_mul(s, series_inv(den[: order + 1], order), order)
    chi = s[order]
    for d in degrees:
        chi *= d
    return chi


def macmahon(order):
    """MacMahon's plane-partition series prod_k (1-q^k)^(-k), truncated."""
    m = [Fraction(1)] + [Fraction(0)] * order
    for k in range(1, order + 1):
        base = [Fraction(1)] + [Fraction(0)] * order
        base[k] = Fraction(-1)
        m = series_mul(m, series_pow(base, -k, order), order)
    return m


def macmahon_power(r, exponent, order):
    """Coefficients of M((-1)^r q)^exponent."""
    m = macmahon(order)
    if r % 2 == 1:
        m = [c if i % 2 == 0 else -c for i, c in enumerate(m)]
    return series_pow(m, exponent, order)


def quiver_a3_exponent(r, charges):
    r1, r2, r3 = charges
    num = r * (r1 + r2) * (r1 + r3) * (r2 + r3)
    assert num % (r1 * r2 * r3) == 0
    return -num // (r1 * r2 * r3)


def chi_y_virtual_laurent(betti, dim, d):
    """Fixed-point oracle for the zero-potential case.

    For a proper space with Hodge numbers concentrated on the diagonal
    (Betti numbers betti[p] in degree 2p), the twisted genus is
    (-y^(d/2))^(-dim) * sum_p betti[p] y^(dp); returned as a map from
    rational y-exponents to integer coefficients.
    """
    sign = (-1) ** dim
    out = {}
    for p, b in enumerate(betti):
        if b:
            out[Fraction(d * p) - Fraction(d * dim, 2)] = sign * b
    return out


def chi_y_laurent_as_y_exponents(laurent, denom_scale):
    """Convert a w-exponent laurent dict (w = y^(1/(2D))) to y-exponent keys."""
    return {Fraction(e, 2 * denom_scale): c for e, c in laurent.items()}
