from fractions import Fraction

from hypothesis import strategies as st


def small_rationals(lo=-3, hi=3):
    """p/q with p in [lo, hi], q in [1, hi]."""
    return st.builds(
        Fraction, st.integers(lo, hi), st.integers(1, max(hi, 1))
    )


def naive_trinomial_coeff(b, c, n):
    """[x^n](x^2 + b x + c)^n by schoolbook multiplication, no shortcuts."""
    poly = [Fraction(1)]
    for _ in range(n):
        nxt = [Fraction(0)] * (len(poly) + 2)
        for i, a in enumerate(poly):
            nxt[i] += a * c
            nxt[i + 1] += a * b
            nxt[i + 2] += a
        poly = nxt
    return poly[n]
