"""Density verification: exact conjugacy-class counts and Chebotarev sampling.

The Pi and Omega families correspond to explicit unions of semisimple
conjugacy classes in GL2(F_p); their proportions are (p-3)/(p-1)^2 of the
group, and the extra first-layer nonsplitting condition on Pi multiplies
that by (p-1)/p.  Both claims are checked two independent ways: exhaustive
enumeration of all p^4 matrices (exact rational identities) and empirical
Frobenius statistics over a sieved prime range (3-sigma band).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .arith import PrimeRange, is_prime
from .errors import HypothesisViolation, ResourceLimitError
from .forms import FormContext
from .residual import Verdict, classify_range

GL2_ENUMERATION_MAX_P = 13
MIN_EXPECTED_HITS = 30
DEFAULT_SIGMA_BAND = 3.0


@dataclass(frozen=True)
class ClassCountReport:
    """Exhaustive count of the two class families inside GL2(F_p)."""

    p: int
    gl2_order: int
    torus_order: int
    count_y: int
    count_y_prime: int
    ratio_y: Fraction
    ratio_y_prime: Fraction

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "gl2_order": self.gl2_order,
            "torus_order": self.torus_order,
            "count_Y": self.count_y,
            "count_Y_prime": self.count_y_prime,
            "ratio_Y": str(self.ratio_y),
            "ratio_Y_prime": str(self.ratio_y_prime),
        }


def enumerate_gl2_classes(p: int) -> ClassCountReport:
    """Brute-force census of GL2(F_p) for small p (5 <= p <= 13).

    Y counts matrices semisimple with eigenvalues {a, 1}, Y' those with
    eigenvalues {a, -1}, both requiring a outside {0, +-1}.  Since the two
    eigenvalues are then distinct, membership is decided by the
    characteristic polynomial: det must avoid {0, +-1} and +1 (resp. -1)
    must be a root.
    """
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if p > GL2_ENUMERATION_MAX_P:
        raise ResourceLimitError(
            f"exhaustive GL2 enumeration is capped at p <= {GL2_ENUMERATION_MAX_P}, got {p}"
        )
    gl2 = 0
    count_y = 0
    count_y_prime = 0
    excluded = (0, 1, p - 1)
    for a in range(p):
        for b in range(p):
            for c in range(p):
                bc = b * c
                for d in range(p):
                    det = (a * d - bc) % p
                    if det == 0:
                        continue
                    gl2 += 1
                    if det in excluded:
                        continue
                    tr = (a + d) % p
                    # char poly X^2 - tr*X + det evaluated at +1 and -1
                    if (1 - tr + det) % p == 0:
                        count_y += 1
                    if (1 + tr + det) % p == 0:
                        count_y_prime += 1
    expected_order = (p * p - 1) * (p * p - p)
    if gl2 != expected_order:
        raise AssertionError(f"enumerated |GL2| = {gl2} != {expected_order}; bug")
    return ClassCountReport(
        p=p,
        gl2_order=gl2,
        torus_order=(p - 1) ** 2,
        count_y=count_y,
        count_y_prime=count_y_prime,
        ratio_y=Fraction(count_y, gl2),
        ratio_y_prime=Fraction(count_y_prime, gl2),
    )


def exact_densities(p: int) -> tuple[Fraction, Fraction]:
    """(Pi density, Omega density) = ((p-3)/(p(p-1)), (p-3)/(p-1)^2)."""
    if not is_prime(p) or p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    return Fraction(p - 3, p * (p - 1)), Fraction(p - 3, (p - 1) ** 2)


@dataclass(frozen=True)
class DensityReport:
    set_name: str
    exact_density: Fraction
    sample_primes: int
    hits: int
    empirical: Fraction
    standard_error: float
    z_score: float
    verdict: str  # "Consistent" | "Inconsistent" | "Underpowered"

    def as_dict(self) -> dict:
        return {
            "set_name": self.set_name,
            "exact_density": str(self.exact_density),
            "sample_primes": self.sample_primes,
            "hits": self.hits,
            "empirical": str(self.empirical),
            "standard_error": self.standard_error,
            "z_score": self.z_score,
            "verdict": self.verdict,
        }


def _make_report(
    name: str, density: Fraction, n: int, hits: int, band: float, min_expected: int
) -> DensityReport:
    if n == 0:
        return DensityReport(name, density, 0, 0, Fraction(0), 0.0, 0.0, "Underpowered")
    delta = float(density)
    se = sqrt(delta * (1.0 - delta) / n)
    z = (hits / n - delta) / se
    if density * n < min_expected:
        verdict = "Underpowered"
    else:
        verdict = "Consistent" if abs(z) <= band else "Inconsistent"
    return DensityReport(
        set_name=name,
        exact_density=density,
        sample_primes=n,
        hits=hits,
        empirical=Fraction(hits, n),
        standard_error=se,
        z_score=z,
        verdict=verdict,
    )


def empirical_density(
    ctx: FormContext,
    prime_range: PrimeRange,
    *,
    band: float = DEFAULT_SIGMA_BAND,
    min_expected: int = MIN_EXPECTED_HITS,
    workers: int | None = None,
) -> tuple[DensityReport, DensityReport]:
    """Observed Pi/Omega frequencies over a prime range, versus the exact densities.

    Ramified primes are excluded from numerator and denominator.  The
    comparison needs the (asserted) surjectivity of the residual image:
    without it the class proportions say nothing about prime frequencies,
    so a false assertion is a hard error.  A sample whose expected hit
    count falls below ``min_expected`` yields an Underpowered verdict
    instead of a Consistent/Inconsistent call.
    """
    if not ctx.surjective_mod_p:
        raise HypothesisViolation(
            "density verification needs the asserted surjectivity of the mod-p image; "
            "config asserts surjective_mod_p = false"
        )
    pi_density, omega_density = exact_densities(ctx.p)
    n = 0
    pi_hits = 0
    omega_hits = 0
    for klass in classify_range(ctx, prime_range, workers=workers):
        if klass.verdict is Verdict.SKIPPED:
            continue
        n += 1
        if klass.verdict is Verdict.PI:
            pi_hits += 1
        elif klass.verdict is Verdict.OMEGA:
            omega_hits += 1
    return (
        _make_report("Pi", pi_density, n, pi_hits, band, min_expected),
        _make_report("Omega", omega_density, n, omega_hits, band, min_expected),
    )
