import random

import pytest

from lambda_forge import (
    FactorProvenance,
    SigmaDatum,
    Verdict,
    bk_rank_bounds,
    classify_prime,
    compute_d_ell,
    compute_s_ell,
    euler_factor_from_frobenius,
    lambda_transfer,
    ramified_euler_factor,
    sigma_ell,
    user_supplied_factor,
)
from lambda_forge.arith import PrimeRange
from lambda_forge.errors import HypothesisViolation, MissingDataError, ResourceLimitError
from lambda_forge.iwasawa import EulerFactor
from lambda_forge.residual import FrobeniusClass


def brute_s_ell(p: int, ell: int, cap: int = 30) -> int:
    """Oracle: scan exponents m and keep the largest with ell^(p-1) = 1 mod p^(m+1)."""
    best = 0
    for m in range(cap + 1):
        if pow(ell, p - 1, p ** (m + 1)) == 1:
            best = m
    return p**best


def brute_d_ell(factor: EulerFactor, ell: int, p: int) -> int:
    """Oracle: repeated long division by (1 - ell*X) over F_p."""
    coeffs = list(factor.coefficients)  # ascending: c0 + c1 X + c2 X^2
    mult = 0
    for _ in range(3):
        # value at X = 1/ell is zero iff (1 - ell X) divides
        inv = pow(ell, -1, p)
        value = sum(c * pow(inv, i, p) for i, c in enumerate(coeffs)) % p
        if value != 0:
            break
        # divide c0 + c1 X + ... by (1 - ell X): synthetic division from the top
        neg_inv = (-pow(ell, -1, p)) % p  # root of divisor is 1/ell; leading coeff -ell
        quotient = [0] * (len(coeffs) - 1)
        rem = list(coeffs)
        for i in range(len(coeffs) - 1, 0, -1):
            q = rem[i] * pow(-ell, -1, p) % p
            quotient[i - 1] = q
            rem[i] = 0
            rem[i - 1] = (rem[i - 1] - q) % p
        assert rem[0] % p == 0
        coeffs = quotient
        mult += 1
    return mult


class TestSEll:
    def test_p5_ell2(self):
        assert compute_s_ell(5, 2) == 1  # 16 = 1 mod 5 but not mod 25

    def test_p5_ell7_named_regression(self):
        # 7^4 = 2401 = 96*25 + 1, and 2401 mod 125 = 26
        assert compute_s_ell(5, 7) == 5

    def test_generic_prime_gives_one(self):
        assert compute_s_ell(7, 2) == 1
        assert compute_s_ell(11, 2) == 1

    def test_wieferich_pair_11_3(self):
        # 3^5 = 243 = 2*121 + 1, so 3^10 = 1 mod 11^2 and s jumps to 11
        assert compute_s_ell(11, 3) == 11
        assert compute_s_ell(11, 3) == brute_s_ell(11, 3)

    def test_ell_equal_p_rejected(self):
        with pytest.raises(ValueError):
            compute_s_ell(5, 5)

    def test_cap_is_an_error_not_truncation(self):
        # 443 = -57 mod 125 and 57^2 = -1 mod 125, so 443^4 = 1 mod 125: m >= 2
        assert compute_s_ell(5, 443) == brute_s_ell(5, 443)
        assert compute_s_ell(5, 443) >= 25
        with pytest.raises(ResourceLimitError):
            compute_s_ell(5, 443, cap=1)

    def test_brute_force_scan(self):
        rng = random.Random(5)
        primes = list(PrimeRange(2, 3000))
        for _ in range(300):
            p = rng.choice([5, 7, 11])
            ell = rng.choice(primes)
            if ell == p:
                continue
            assert compute_s_ell(p, ell) == brute_s_ell(p, ell)


class TestEulerFactors:
    def test_pi_factor_is_split_product(self, ctx_p5):
        fc = classify_prime(ctx_p5, 2)
        factor = euler_factor_from_frobenius(fc, 5)
        # (1 - X)(1 - 2X) = 1 - 3X + 2X^2 = 1 + 2X + 2X^2 mod 5
        assert factor.coefficients == (1, 2, 2)
        assert factor.provenance is FactorProvenance.FROM_FROBENIUS

    def test_omega_factor_is_split_product(self):
        fc = FrobeniusClass(ell=3, trace_mod_p=3, det_mod_p=3,
                            verdict=Verdict.OMEGA, reasons=())
        factor = euler_factor_from_frobenius(fc, 7)
        # (1 + X)(1 + 3X) = 1 + 4X + 3X^2 mod 7
        assert factor.coefficients == (1, 4, 3)

    def test_zero_trace_drops_linear_term(self):
        fc = FrobeniusClass(ell=19, trace_mod_p=0, det_mod_p=4,
                            verdict=Verdict.NEITHER, reasons=())
        assert euler_factor_from_frobenius(fc, 5).coefficients == (1, 0, 4)

    def test_skipped_class_is_missing_data(self):
        fc = FrobeniusClass(ell=11, trace_mod_p=None, det_mod_p=None,
                            verdict=Verdict.SKIPPED, reasons=())
        with pytest.raises(MissingDataError):
            euler_factor_from_frobenius(fc, 5)

    def test_ramified_factors(self):
        assert ramified_euler_factor(Verdict.PI, 5).coefficients == (1, 4, 0)  # 1 - X
        assert ramified_euler_factor(Verdict.OMEGA, 5).coefficients == (1, 1, 0)  # 1 + X
        with pytest.raises(ValueError):
            ramified_euler_factor(Verdict.NEITHER, 5)

    def test_user_supplied_constant_term(self):
        assert user_supplied_factor(5, (1, 3, 2)).provenance is FactorProvenance.USER_SUPPLIED
        with pytest.raises(ValueError):
            user_supplied_factor(5, (2, 3, 2))


class TestDEll:
    def test_simple_root(self):
        factor = user_supplied_factor(5, (1, 2, 2))  # (1 - X)(1 - 2X) mod 5
        assert compute_d_ell(factor, 2, 5) == 1

    def test_no_root(self):
        factor = user_supplied_factor(7, (1, 4, 3))  # (1 + X)(1 + 3X) mod 7
        assert compute_d_ell(factor, 3, 7) == 0

    def test_double_root(self):
        # (1 - 3X)^2 = 1 + X + 2X^2 mod 7
        factor = user_supplied_factor(7, (1, 1, 2))
        assert compute_d_ell(factor, 3, 7) == 2

    def test_against_division_oracle(self):
        rng = random.Random(99)
        for _ in range(500):
            p = rng.choice([5, 7, 11, 13])
            ell = rng.choice([q for q in (2, 3, 7, 13, 19, 23, 29) if q != p])
            factor = user_supplied_factor(p, (1, rng.randrange(p), rng.randrange(p)))
            assert compute_d_ell(factor, ell, p) == brute_d_ell(factor, ell, p)


class TestSigma:
    def test_pi_prime_for_base_form(self, ctx_p5):
        fc = classify_prime(ctx_p5, 2)
        datum = sigma_ell(5, 2, euler_factor_from_frobenius(fc, 5))
        assert (datum.s_ell, datum.d_ell, datum.sigma) == (1, 1, 1)

    def test_pi_prime_for_newly_ramified_form(self):
        datum = sigma_ell(5, 2, ramified_euler_factor(Verdict.PI, 5))
        assert (datum.d_ell, datum.sigma) == (0, 0)

    def test_omega_prime_zero_even_with_large_s(self):
        # ell = 7, p = 5: s = 5 but d = 0, so sigma = 0
        fc = FrobeniusClass(ell=7, trace_mod_p=2, det_mod_p=2,
                            verdict=Verdict.OMEGA, reasons=())
        datum = sigma_ell(5, 7, euler_factor_from_frobenius(fc, 5))
        assert datum.s_ell == 5
        assert datum.sigma == 0

    def test_datum_invariant(self):
        with pytest.raises(ValueError):
            SigmaDatum(ell=2, s_ell=5, d_ell=1, sigma=1)


def pi_datum(ell, sigma_g=True):
    return SigmaDatum(ell=ell, s_ell=1, d_ell=1 if sigma_g else 0,
                      sigma=1 if sigma_g else 0)


def omega_datum(ell, s=1):
    return SigmaDatum(ell=ell, s_ell=s, d_ell=0, sigma=0)


class TestLambdaTransfer:
    def test_three_pi_five_omega(self, ctx_default):
        # lambda_g = 2 via a context clone is overkill; use contributions directly
        pi_ells = [37, 73, 191]
        om_ells = [5, 47, 79, 89, 107]
        sigma_g = [pi_datum(e) for e in pi_ells] + [omega_datum(e) for e in om_ells]
        sigma_f = [pi_datum(e, sigma_g=False) for e in pi_ells] + [
            omega_datum(e) for e in om_ells
        ]
        result = lambda_transfer(ctx_default, sigma_g, sigma_f)
        assert result.lambda_f == ctx_default.lambda_g + 3
        assert result.mu_f == 0

    def test_empty_sum_is_identity(self, ctx_default):
        result = lambda_transfer(ctx_default, [], [])
        assert result.lambda_f == ctx_default.lambda_g

    def test_single_pi_prime(self, ctx_default):
        result = lambda_transfer(ctx_default, [pi_datum(37)], [pi_datum(37, sigma_g=False)])
        assert result.lambda_f == 1

    def test_requires_mu_zero(self, curve_11a1):
        from lambda_forge import FormContext

        ctx = FormContext(level=11, p=7, lambda_g=0, mu_zero=False,
                          surjective_mod_p=True, backend=curve_11a1)
        with pytest.raises(HypothesisViolation):
            lambda_transfer(ctx, [], [])

    def test_mismatched_supports(self, ctx_default):
        with pytest.raises(ValueError, match="support"):
            lambda_transfer(ctx_default, [pi_datum(37)], [pi_datum(73, sigma_g=False)])

    def test_level_primes_contribute_zero(self, ctx_default):
        # entries at ell | N_g are accepted and never change the total
        shared = SigmaDatum(ell=11, s_ell=1, d_ell=2, sigma=2)
        also = SigmaDatum(ell=11, s_ell=1, d_ell=0, sigma=0)
        result = lambda_transfer(ctx_default, [shared], [also])
        assert result.lambda_f == ctx_default.lambda_g
        assert result.contributions == ((11, 0),)

    def test_permutation_invariance(self, ctx_default):
        rng = random.Random(17)
        pi_ells = [37, 73, 191, 233, 277]
        om_ells = [5, 47, 79, 89]
        for _ in range(100):
            n = rng.randrange(0, len(pi_ells) + 1)
            r = rng.randrange(0, len(om_ells) + 1)
            chosen_pi = rng.sample(pi_ells, n)
            chosen_om = rng.sample(om_ells, r)
            sigma_g = [pi_datum(e) for e in chosen_pi] + [omega_datum(e) for e in chosen_om]
            sigma_f = [pi_datum(e, sigma_g=False) for e in chosen_pi] + [
                omega_datum(e) for e in chosen_om
            ]
            rng.shuffle(sigma_g)
            rng.shuffle(sigma_f)
            assert lambda_transfer(ctx_default, sigma_g, sigma_f).lambda_f == n


class TestRankBounds:
    def test_exact_for_small_lambda(self):
        assert bk_rank_bounds(0).exact == 0
        assert bk_rank_bounds(1).exact == 1

    def test_candidate_sets(self):
        assert bk_rank_bounds(4).exact is None
        assert bk_rank_bounds(4).candidates == (0, 2, 4)
        assert bk_rank_bounds(5).candidates == (1, 3, 5)

    def test_parity(self):
        for lam in range(12):
            bound = bk_rank_bounds(lam)
            assert all(c % 2 == lam % 2 for c in bound.candidates)
            assert max(bound.candidates) == lam
