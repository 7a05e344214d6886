"""K-side: localized ring normalization, partial fractions, quotient map,
binomial/Cartier series, the q-series, integrality survey, Adams operations.

The Cartier oracle re-derives the identity in Q[beta] via symbolic binomials,
independently of the numerical-polynomial multiplication it certifies.
"""

import random
from fractions import Fraction

import pytest

from tatecalc.basis import NumericalPoly
from tatecalc.errors import DomainError, NotInvertibleError
from tatecalc.laurent import LaurentPoly
from tatecalc.multipoly import MultiPoly, RationalFunction, binom_poly
from tatecalc import tate_k
from tatecalc.tate_k import ONE_MINUS_Q, TateKElem


def q_poly(coeffs):
    return LaurentPoly("q", coeffs)


def rand_tatek(rng, window=(-6, 6), max_pole=6):
    num = q_poly({rng.randint(*window): rng.randint(-9, 9) for _ in range(rng.randint(1, 5))})
    return TateKElem(num, rng.randint(0, max_pole))


# -- ring normalization ------------------------------------------------------------


def test_cancellation():
    x = TateKElem(LaurentPoly.one("q"), 1) * TateKElem(ONE_MINUS_Q)
    assert x == TateKElem.one()
    assert x.denom_pow == 0


def test_bezout_sum():
    # q/(1-q) + 1 = 1/(1-q) since q + (1-q) = 1
    x = TateKElem(q_poly({1: 1}), 1) + TateKElem.one()
    assert x.num == LaurentPoly.one("q")
    assert x.denom_pow == 1


def test_unit_product():
    assert TateKElem(q_poly({-1: 1})) * TateKElem(q_poly({1: 1})) == TateKElem.one()


def test_normalization_invariant_random():
    rng = random.Random(21)
    for _ in range(200):
        x, y = rand_tatek(rng, max_pole=4), rand_tatek(rng, max_pole=4)
        for r in (x + y, x - y, x * y):
            assert r.denom_pow >= 0
            if r.denom_pow > 0:
                assert r.num.evaluate(1) != 0
            assert r.num.is_integral()


def test_inverse_of_units():
    # (1-q) has inverse with denominator power 1
    assert TateKElem(ONE_MINUS_Q).inverse() == TateKElem(LaurentPoly.one("q"), 1)
    # q^2(1-q)^-3 inverts to q^-2 (1-q)^3
    x = TateKElem(q_poly({2: 1}), 3)
    assert x.inverse() * x == TateKElem.one()
    with pytest.raises(NotInvertibleError):
        TateKElem(q_poly({0: 1, 1: 1})).inverse()
    with pytest.raises(NotInvertibleError):
        TateKElem(q_poly({0: 2})).inverse()


# -- partial fractions -----------------------------------------------------------------


def test_partial_fraction_examples():
    pf = tate_k.partial_fractions(TateKElem(LaurentPoly.one("q"), 1))
    assert pf.poly_part.is_zero() and pf.pole_coeffs == (1,)

    # 1/(q(1-q)) = 1/q + 1/(1-q)
    pf = tate_k.partial_fractions(TateKElem(q_poly({-1: 1}), 1))
    assert pf.poly_part == q_poly({-1: 1}) and pf.pole_coeffs == (1,)

    pf = tate_k.partial_fractions(TateKElem(q_poly({3: 1})))
    assert pf.poly_part == q_poly({3: 1}) and pf.pole_coeffs == ()


def test_partial_fraction_reconstruction_random():
    rng = random.Random(22)
    for _ in range(200):
        x = rand_tatek(rng)
        pf = tate_k.partial_fractions(x)
        assert pf.reconstruct() == x
        assert all(isinstance(a, int) for a in pf.pole_coeffs)


# -- quotient map --------------------------------------------------------------------


def test_quotient_values():
    assert tate_k.quotient_to_betas(TateKElem(LaurentPoly.one("q"), 1)) == NumericalPoly.one()
    assert tate_k.quotient_to_betas(TateKElem(LaurentPoly.one("q"), 2)) == NumericalPoly.basis(1)
    rng = random.Random(23)
    for _ in range(50):
        x = TateKElem(rand_tatek(rng).num)  # denominator-free
        assert tate_k.quotient_to_betas(x).is_zero()


def test_quotient_kernel_iff():
    rng = random.Random(24)
    for _ in range(200):
        x = rand_tatek(rng)
        assert tate_k.quotient_to_betas(x).is_zero() == (x.denom_pow == 0)


def test_quotient_additive():
    rng = random.Random(25)
    for _ in range(100):
        x, y = rand_tatek(rng, max_pole=4), rand_tatek(rng, max_pole=4)
        assert tate_k.quotient_to_betas(x + y) == tate_k.quotient_to_betas(x) + tate_k.quotient_to_betas(y)


# -- binomial series -------------------------------------------------------------------


def test_binomial_series_coefficients():
    s = tate_k.binomial_series(6)
    assert s.coeff(0) == NumericalPoly.one()
    assert s.coeff(2) == NumericalPoly.basis(2)
    assert s.coeff(2).evaluate(4) == 6  # binom(4,2)


# -- Cartier relation -------------------------------------------------------------------


def cartier_oracle_qbeta(n0: int, n1: int) -> bool:
    """(1+T0)^beta (1+T1)^beta == ((1+T0)(1+T1))^beta in Q[beta], coefficientwise."""
    beta = MultiPoly.var(("beta",), "beta")
    lhs: dict[tuple[int, int], MultiPoly] = {}
    # expand sum_k binom(beta,k) (T0+T1+T0T1)^k by bivariate truncated powers
    power = {(0, 0): 1}
    for k in range(n0 + n1 + 1):
        bk = binom_poly(beta, k)
        for e, v in power.items():
            lhs[e] = lhs.get(e, MultiPoly.zero(("beta",))) + bk * v
        nxt: dict[tuple[int, int], int] = {}
        for (i, j), v in power.items():
            for (di, dj), w in (((1, 0), 1), ((0, 1), 1), ((1, 1), 1)):
                ii, jj = i + di, j + dj
                if ii <= n0 and jj <= n1:
                    nxt[(ii, jj)] = nxt.get((ii, jj), 0) + v * w
        power = nxt
        if not power:
            break
    for i in range(n0 + 1):
        for j in range(n1 + 1):
            rhs = binom_poly(beta, i) * binom_poly(beta, j)
            if lhs.get((i, j), MultiPoly.zero(("beta",))) != rhs:
                return False
    return True


def test_cartier_frozen_coefficient():
    # coefficient of T0 T1: group-law terms contribute beta_1 + 2 beta_2 on the
    # left, and beta_1 * beta_1 on the right
    from tatecalc.basis import numerical_mul

    assert numerical_mul(NumericalPoly.basis(1), NumericalPoly.basis(1)) == NumericalPoly(
        {1: 1, 2: 2}
    )


def test_cartier_check_full():
    report = tate_k.cartier_check(12, 12)
    assert report.passed, str(report)


def test_cartier_against_qbeta_oracle():
    assert cartier_oracle_qbeta(6, 6)


def test_cartier_rejects_bad_orders():
    with pytest.raises(DomainError):
        tate_k.cartier_check(0, 5)


# -- the q-series ------------------------------------------------------------------------


def test_q_hat_inv_low_coefficients():
    s = tate_k.q_hat_inv_poly(4)
    beta = MultiPoly.var(("beta",), "beta")
    assert s.coeff(0) == beta
    assert s.coeff(1) == -(beta * beta + beta).div_int(2)  # -beta(beta+1)/2


def test_verify_prop2():
    report = tate_k.verify_prop2(16)
    assert report.passed, str(report)


def test_verify_prop2_defect_injection():
    report = tate_k.verify_prop2(8, defect=3)
    assert not report.passed
    assert "T^3" in report.first_defect


def test_q_series_frozen_coefficients():
    qs = tate_k.q_series(8)
    beta = MultiPoly.var(("beta",), "beta")
    one = MultiPoly.const(("beta",), 1)

    def rf(num, den):
        return RationalFunction(num, den)

    assert qs.coeff(0) == rf(one, beta)
    assert qs.coeff(1) == rf(beta + 1, beta * 2)
    assert qs.coeff(2) == rf((beta + 1) * (beta - 1), beta * 12)


def test_q_series_multiply_back_order_32():
    qs = tate_k.q_series(32)
    assert (qs * tate_k.q_hat_inv_ratfun(32)).is_one_series()


def test_integrality_report_contents():
    rep = tate_k.integrality_report(4)
    by_key = {(e.series, e.index): e for e in rep.entries}

    e = by_key[("beta*q", 0)]
    assert e.is_polynomial and e.is_integral and e.binomial_coords == ((0, "1"),)

    e = by_key[("beta*q", 1)]             # (beta+1)/2: polynomial, not integer-valued
    assert e.is_polynomial and e.is_integral is False
    assert ("0", False) not in e.binomial_coords  # coords are (index, value) pairs
    assert dict(e.binomial_coords)[0] == "1/2"

    e = by_key[("q", 1)]                  # (beta+1)/(2 beta): not polynomial
    assert not e.is_polynomial and e.is_integral is None

    # descriptive, never an assertion: the report exists even though several
    # coordinates are fractional
    assert len(rep.entries) == 2 * 5


# -- Adams operations ----------------------------------------------------------------------


def test_adams_examples():
    assert tate_k.adams_on_laurent(2, q_poly({1: 1, -1: 1})) == q_poly({2: 1, -2: 1})
    x = q_poly({5: 1})
    assert tate_k.adams_on_laurent(1, x) == x
    assert tate_k.adams_on_laurent(2, tate_k.adams_on_laurent(3, x)) == q_poly({30: 1})


def test_adams_is_ring_homomorphism():
    rng = random.Random(26)
    for _ in range(100):
        k = rng.randint(1, 5)
        x = q_poly({rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(3)})
        y = q_poly({rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(3)})
        psi = tate_k.adams_on_laurent
        assert psi(k, x * y) == psi(k, x) * psi(k, y)
        assert psi(k, x + y) == psi(k, x) + psi(k, y)


def test_adams_composition_law():
    rng = random.Random(27)
    for k in range(1, 6):
        for l in range(1, 6):
            x = q_poly({rng.randint(-5, 5): rng.randint(-9, 9) for _ in range(3)})
            assert tate_k.adams_on_laurent(k, tate_k.adams_on_laurent(l, x)) == \
                tate_k.adams_on_laurent(k * l, x)


def test_adams_rejects_bad_index():
    with pytest.raises(DomainError):
        tate_k.adams_on_laurent(0, q_poly({1: 1}))
