import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from trinomial.algebra import QuadExt, RadicalScalar, numeric_eval
from trinomial.exact import TrinomialParams, tn_recurrence
from trinomial.singularity import Regime, UnsupportedRegimeError, classify_regime
from trinomial.translate import (
    assemble_expansion,
    bernoulli,
    binom_asym_coeffs,
    eval_expansion,
    gamma_half_integer,
    oscillation_factor,
    phase_phi,
    translate_term,
)
from trinomial.verify import tail_bounded

from .helpers import small_rationals

F = Fraction
P = TrinomialParams


def closed_form_e(a):
    """The five displayed closed-form polynomials for e_1..e_5."""
    return [
        a * (a - 1) / 2,
        a * (a - 1) * (a - 2) * (3 * a - 1) / 24,
        a**2 * (a - 1) ** 2 * (a - 2) * (a - 3) / 48,
        a * (a - 1) * (a - 2) * (a - 3) * (a - 4) * (15 * a**3 - 30 * a**2 + 5 * a + 2) / 5760,
        a**2 * (a - 1) ** 2 * (a - 2) * (a - 3) * (a - 4) * (a - 5) * (3 * a**2 - 7 * a - 2) / 11520,
    ]


GOLDEN_ROWS = {
    F(1, 2): [F(-1, 8), F(1, 128), F(5, 1024), F(-21, 32768), F(-399, 262144)],
    F(-1, 2): [F(3, 8), F(25, 128), F(105, 1024), F(1659, 32768)],
    F(-3, 2): [F(15, 8), F(385, 128), F(4725, 1024)],
    F(-5, 2): [F(35, 8), F(1785, 128)],
    F(-7, 2): [F(63, 8)],
}


def test_bernoulli_numbers():
    assert [bernoulli(m) for m in range(7)] == [1, F(-1, 2), F(1, 6), 0, F(-1, 30), 0, F(1, 42)]


@pytest.mark.parametrize("alpha", list(GOLDEN_ROWS))
def test_golden_rows(alpha):
    row = GOLDEN_ROWS[alpha]
    assert list(binom_asym_coeffs(alpha, len(row)).coeffs) == row
    assert closed_form_e(alpha)[: len(row)] == row


def test_alpha_one_vanishes():
    assert binom_asym_coeffs(1, 12).coeffs == (0,) * 12


def test_rejects_gamma_poles():
    for a in (0, -1, -4):
        with pytest.raises(ValueError):
            binom_asym_coeffs(a, 3)


@given(small_rationals(-9, 9).filter(lambda a: not (a.denominator == 1 and a <= 0)))
def test_generated_matches_closed_forms(alpha):
    assert list(binom_asym_coeffs(alpha, 5).coeffs) == closed_form_e(alpha)


@pytest.mark.parametrize("alpha", [F(1, 2), F(-3, 2), F(7, 3), F(-2, 5), F(5)])
def test_truncation_error_order(alpha):
    # Gamma(n + a) / (Gamma(a) Gamma(n + 1)) * Gamma(a) * n^(1 - a) vs the series
    J = 10
    e = binom_asym_coeffs(alpha, J)
    with mpmath.workprec(400):
        a = mpmath.mpf(alpha.numerator) / alpha.denominator
        scaled = []
        for n in (200, 400, 800, 1600):
            n = mpmath.mpf(n)
            exact = mpmath.exp(mpmath.loggamma(n + a) - mpmath.loggamma(n + 1)) * n ** (1 - a)
            approx = 1 + sum(
                mpmath.mpf(x.numerator) / x.denominator * n ** (-j)
                for j, x in enumerate(e.coeffs, 1)
            )
            scaled.append(abs(exact - approx) * n ** (J + 1))
        if alpha == 5:
            # e_j(5) vanish beyond j = 4 exactly
            assert max(scaled) < mpmath.mpf(10) ** -60
        else:
            assert scaled[-1] <= 1.05 * min(scaled)


def test_gamma_half_integer():
    assert gamma_half_integer(F(1, 2)) == 1
    assert gamma_half_integer(F(-1, 2)) == -2
    assert gamma_half_integer(F(-3, 2)) == F(4, 3)
    for k in range(-6, 6):
        a = F(2 * k + 1, 2)
        assert math.isclose(
            float(gamma_half_integer(a)) * math.sqrt(math.pi), math.gamma(float(a)), rel_tol=1e-12
        )
    with pytest.raises(ValueError):
        gamma_half_integer(F(1, 3))


def test_translate_term_leading():
    c = F(1)
    coeff = QuadExt(1, 0, c)
    pref = RadicalScalar(QuadExt(F(3, 2), 0, c), F(1, 2))
    term = translate_term(coeff, F(1, 2), QuadExt(6, 0, c), 5, pref)
    assert term.growth == 6 and term.n_power == F(-1, 2)
    assert term.scalar == 1 and term.pi_power == F(-1, 2)
    assert list(term.corrections) == GOLDEN_ROWS[F(1, 2)]
    assert term.prefactor is pref


def test_translate_term_highest():
    term = translate_term(QuadExt(F(-63, 8192), 0, 1), F(-9, 2), QuadExt(6, 0, 1), 0)
    assert term.n_power == F(-11, 2)
    assert term.scalar == F(-63, 8192) / gamma_half_integer(F(-9, 2))
    assert term.corrections == ()


def test_translate_term_zero():
    term = translate_term(QuadExt(0, 0, 2), F(-1, 2), QuadExt(1, 2, 2), 3)
    assert term.scalar == 0 and term.corrections == (0, 0, 0)


def test_assemble_golden_b_equals_4_root_c():
    exp = assemble_expansion(P(4, 1), 5)
    assert [g.to_rational() for g in exp.corrections] == [
        1, 0, F(1, 8), F(15, 64), F(21, 32), F(315, 128)
    ]
    assert exp.growth == 6
    assert exp.prefactor.base == F(3, 2) and exp.prefactor.exponent == F(1, 2)


def test_assemble_first_part_instance():
    exp = assemble_expansion(P(1, 16), 2)
    assert [g.to_rational() for g in exp.corrections] == [1, F(-15, 64), F(169, 8192)]
    assert exp.growth == 9
    assert numeric_eval(exp.prefactor, 64) == mpmath.mpf(3) / 4


@given(small_rationals(1, 5), small_rationals(1, 5))
def test_assemble_general_first_two_corrections(b, c):
    # (b - 4 sqrt c) / (16 sqrt c) and (3b - 4 sqrt c)^2 / (512 c), with sqrt c symbolic
    p = P(b, c)
    if classify_regime(p) is not Regime.SINGLE_DOMINANT:
        return
    s = QuadExt(0, 1, c)
    g = assemble_expansion(p, 2).corrections
    assert g[1] == (b - 4 * s) / (16 * s)
    assert g[2] == (3 * b - 4 * s) * (3 * b - 4 * s) / (512 * c)


@given(small_rationals(1, 5).map(lambda r: r * r))
def test_b_equals_4_root_c(c):
    b = 4 * math.isqrt(c.numerator) * F(1, math.isqrt(c.denominator))
    g = assemble_expansion(P(b, c), 3).corrections
    assert g[1] == 0 and g[2] == F(1, 8)


def test_assemble_pole():
    exp = assemble_expansion(P(3, 0), 4)
    assert exp.regime is Regime.C_ZERO
    assert [g.to_rational() for g in exp.corrections] == [1]
    assert exp.exact_value(5) == 243


def test_assemble_trivial_rejected():
    with pytest.raises(UnsupportedRegimeError):
        assemble_expansion(P(0, 0), 2)


def test_phase_phi():
    with mpmath.workprec(128):
        assert abs(phase_phi(P(1, -1)).value - mpmath.atan(2)) < mpmath.mpf(2) ** -120
        assert abs(phase_phi(P(0, -1)).value - mpmath.pi / 2) < mpmath.mpf(2) ** -120
    assert math.isclose(float(phase_phi(P(1, -6)).value), math.atan2(2 * math.sqrt(6), 1))
    assert str(phase_phi(P(1, -1)).value).startswith("1.1071487177")
    with pytest.raises(ValueError):
        phase_phi(P(1, 1))


@given(small_rationals(-5, 5), small_rationals(-5, -1))
def test_phase_range(b, c):
    phi = phase_phi(P(abs(b), c)).value
    assert 0 < phi < mpmath.pi


def _rel(params, exp, n, prec=256):
    with mpmath.workprec(prec):
        t = tn_recurrence(params, n)[n]
        v, _ = eval_expansion(exp, n, prec)
        return mpmath.mpf(t.numerator) / t.denominator / v - 1


def test_eval_central_binomial():
    exp = assemble_expansion(P(2, 1), 3)
    with mpmath.workprec(256):
        v, log_abs = eval_expansion(exp, 100)
        exact = mpmath.mpf(math.comb(200, 100))
        assert abs(exact / v - 1) < 1e-7
        assert abs(log_abs - mpmath.log(v)) < mpmath.mpf(10) ** -60


def test_eval_b_equals_4_root_c_high_order():
    assert abs(_rel(P(4, 1), assemble_expansion(P(4, 1), 5), 1000)) < 1e-15


def test_eval_oscillatory_sign():
    p = P(1, -1)
    exp = assemble_expansion(p, 0)
    t = tn_recurrence(p, 200)
    for n in range(1, 201):
        if abs(oscillation_factor(exp, n)) > 0.5:
            v, _ = eval_expansion(exp, n)
            assert (v > 0) == (t[n] > 0)


@given(small_rationals(-4, 4), small_rationals(-4, -1), st.integers(1, 60))
def test_cosine_form_equals_conjugate_sum(b, c, n):
    # the paper's cosine form vs 2 Re(prefactor rho^n) / sqrt(pi n) from the local data
    exp = assemble_expansion(P(b, c), 0)
    term = exp.terms[0]
    with mpmath.workprec(200):
        one_side = numeric_eval(term.prefactor, 200) * numeric_eval(term.growth, 200) ** n
        scale = abs(one_side) / mpmath.sqrt(mpmath.pi * n)
        direct = 2 * mpmath.re(one_side) / mpmath.sqrt(mpmath.pi * n)
        if exp.sign_flip and n % 2:
            direct = -direct
        v, _ = eval_expansion(exp, n, 200)
        assert abs(v - direct) <= mpmath.mpf(2) ** -150 * max(1, scale)


def test_eval_errors():
    exp = assemble_expansion(P(1, 1), 2)
    with pytest.raises(ValueError):
        eval_expansion(exp, 5, 32)
    with pytest.raises(ValueError):
        eval_expansion(exp, 0)


@given(small_rationals(-4, 4).filter(lambda b: b != 0), st.integers(1, 80))
def test_pole_exact(b, n):
    p = P(b, 0)
    exp = assemble_expansion(p, 3)
    assert exp.exact_value(n) == tn_recurrence(p, n)[n]
    assert _rel(p, exp, n) == 0


@given(small_rationals(1, 4), st.integers(0, 40))
def test_parity(c, m):
    p = P(0, c)
    exp = assemble_expansion(p, 3)
    n = 2 * m + 1
    v, _ = eval_expansion(exp, n)
    assert v == 0 and tn_recurrence(p, n)[n] == 0


CONVERGENCE_MATRIX = [
    (P(1, 16), 2),
    (P(1, 16), 4),
    (P(4, 1), 5),
    (P(2, 1), 3),
    (P(-2, 1), 6),
    (P(0, 1), 3),
    (P(1, 1), 4),
    (P(3, 2), 1),
    (P(F(1, 2), F(3, 4)), 3),
]


@pytest.mark.parametrize("params, J", CONVERGENCE_MATRIX)
def test_convergence_order(params, J):
    exp = assemble_expansion(params, J)
    grid = [16 * 2**k for k in range(9)]
    with mpmath.workprec(256):
        scaled = [abs(_rel(params, exp, n)) * mpmath.mpf(n) ** (J + 1) for n in grid]
    assert tail_bounded(scaled)
