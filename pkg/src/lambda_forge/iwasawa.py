"""Local transfer invariants (s_ell, d_ell, sigma_ell) and the lambda transfer.

For a prime ell != p the local contribution of ell to the lambda-invariant
is sigma_ell = s_ell * d_ell, where s_ell is the p-power counting primes
above ell in the cyclotomic Z_p-tower and d_ell is the multiplicity of
1/ell as a root of the mod-p local Euler factor.  Congruent forms differ in
lambda exactly by the sum of the sigma differences over primes of the new
level, which is what ``lambda_transfer`` evaluates.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import HypothesisViolation, MissingDataError, ResourceLimitError
from .forms import FormContext
from .residual import FrobeniusClass, Verdict

S_ELL_EXPONENT_CAP = 20


class FactorProvenance(Enum):
    FROM_FROBENIUS = "FromFrobenius"
    RAMIFIED_TRIVIAL_QUOTIENT = "RamifiedTrivialQuotient"
    USER_SUPPLIED = "UserSupplied"


@dataclass(frozen=True)
class EulerFactor:
    """Mod-p local factor 1 + c1*X + c2*X^2 (constant term always 1)."""

    p: int
    c1: int
    c2: int
    provenance: FactorProvenance

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", self.c1 % self.p)
        object.__setattr__(self, "c2", self.c2 % self.p)

    @property
    def coefficients(self) -> tuple[int, int, int]:
        return (1, self.c1, self.c2)

    def evaluate(self, x: int) -> int:
        return (1 + self.c1 * x + self.c2 * x * x) % self.p


@dataclass(frozen=True)
class SigmaDatum:
    """Per-prime transfer datum; sigma = s_ell * d_ell by construction."""

    ell: int
    s_ell: int
    d_ell: int
    sigma: int

    def __post_init__(self) -> None:
        if self.d_ell not in (0, 1, 2):
            raise ValueError(f"d_ell must be in {{0,1,2}}, got {self.d_ell}")
        if self.sigma != self.s_ell * self.d_ell:
            raise ValueError(
                f"sigma = {self.sigma} != s_ell * d_ell = {self.s_ell * self.d_ell}"
            )

    def as_dict(self) -> dict:
        return {"ell": self.ell, "s": self.s_ell, "d": self.d_ell, "sigma": self.sigma}


def compute_s_ell(p: int, ell: int, *, cap: int = S_ELL_EXPONENT_CAP) -> int:
    """p**m for the maximal m >= 0 with ell**(p-1) = 1 mod p**(m+1).

    Fermat guarantees m >= 0.  The exponent is capped (default 20); hitting
    the cap raises rather than silently truncating.
    """
    if ell == p:
        raise ValueError("s_ell is undefined at ell = p")
    m = 0
    while pow(ell, p - 1, p ** (m + 2)) == 1:
        m += 1
        if m > cap:
            raise ResourceLimitError(
                f"s_ell exponent exceeds cap {cap} at ell={ell}, p={p}"
            )
    return p**m


def euler_factor_from_frobenius(klass: FrobeniusClass, p: int) -> EulerFactor:
    """Unramified factor 1 - trace*X + det*X^2 from a classified prime."""
    if klass.trace_mod_p is None or klass.det_mod_p is None:
        raise MissingDataError(
            f"prime {klass.ell} was skipped (ramified); no Frobenius data for its factor"
        )
    return EulerFactor(
        p=p,
        c1=-klass.trace_mod_p,
        c2=klass.det_mod_p,
        provenance=FactorProvenance.FROM_FROBENIUS,
    )


def ramified_euler_factor(verdict: Verdict, p: int) -> EulerFactor:
    """Factor for a form newly ramified at a Pi/Omega prime: 1 -+ X.

    Inertia then acts by nontrivial unipotents, the inertia coinvariants are
    a line on which Frobenius acts by +1 (Pi type) or -1 (Omega type), so the
    quadratic factor degenerates to 1 - X resp. 1 + X.
    """
    if verdict is Verdict.PI:
        return EulerFactor(p=p, c1=-1, c2=0, provenance=FactorProvenance.RAMIFIED_TRIVIAL_QUOTIENT)
    if verdict is Verdict.OMEGA:
        return EulerFactor(p=p, c1=1, c2=0, provenance=FactorProvenance.RAMIFIED_TRIVIAL_QUOTIENT)
    raise ValueError(f"ramified trivial-quotient factor needs a Pi/Omega verdict, got {verdict}")


def user_supplied_factor(p: int, coefficients: tuple[int, int, int]) -> EulerFactor:
    c0, c1, c2 = coefficients
    if c0 % p != 1:
        raise ValueError(f"constant term of a local factor must be 1 mod p, got {c0}")
    return EulerFactor(p=p, c1=c1, c2=c2, provenance=FactorProvenance.USER_SUPPLIED)


def compute_d_ell(factor: EulerFactor, ell: int, p: int) -> int:
    """Multiplicity of 1/ell mod p as a root of the factor (0, 1, or 2)."""
    if ell % p == 0:
        raise ValueError(f"ell = {ell} not invertible mod {p}")
    x0 = pow(ell, -1, p)
    c0, c1, c2 = factor.coefficients
    if (c0 + c1 * x0 + c2 * x0 * x0) % p != 0:
        return 0
    # synthetic division of c2*X^2 + c1*X + c0 by (X - x0): quotient c2*X + (c1 + c2*x0)
    q1, q0 = c2, (c1 + c2 * x0) % p
    return 2 if (q0 + q1 * x0) % p == 0 else 1


def sigma_ell(p: int, ell: int, factor: EulerFactor, *, s_cap: int = S_ELL_EXPONENT_CAP) -> SigmaDatum:
    s = compute_s_ell(p, ell, cap=s_cap)
    d = compute_d_ell(factor, ell, p)
    return SigmaDatum(ell=ell, s_ell=s, d_ell=d, sigma=s * d)


@dataclass(frozen=True)
class TransferResult:
    """Predicted invariants of a congruent form, with per-prime contributions."""

    lambda_f: int
    mu_f: int
    contributions: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {
            "predicted_lambda": self.lambda_f,
            "predicted_mu": self.mu_f,
            "contributions": [{"ell": e, "delta": d} for e, d in self.contributions],
        }


def lambda_transfer(
    ctx: FormContext,
    sigma_g: list[SigmaDatum] | tuple[SigmaDatum, ...],
    sigma_f: list[SigmaDatum] | tuple[SigmaDatum, ...],
) -> TransferResult:
    """lambda_f = lambda_g + sum over ell | N_f of (sigma_ell(g) - sigma_ell(f)).

    Requires the certified mu_zero attestation: the congruence transfer of
    Selmer coranks is only valid when the mu-invariant of g vanishes.  Both
    lists must cover the same primes.  Primes dividing N_g contribute zero
    identically (both forms see the same inertia coinvariants there), so
    such entries are accepted but never evaluated.  Returns mu_f = 0.
    """
    if not ctx.mu_zero:
        raise HypothesisViolation(
            "lambda transfer requires the certified vanishing of mu_p(g); "
            "config asserts mu_zero = false"
        )
    by_ell_g = {d.ell: d for d in sigma_g}
    by_ell_f = {d.ell: d for d in sigma_f}
    if len(by_ell_g) != len(sigma_g) or len(by_ell_f) != len(sigma_f):
        raise ValueError("duplicate primes in a sigma list")
    if set(by_ell_g) != set(by_ell_f):
        raise ValueError(
            f"sigma supports differ: {sorted(set(by_ell_g) ^ set(by_ell_f))}"
        )
    contributions = []
    total = 0
    for ell in sorted(by_ell_g):
        if ctx.level % ell == 0:
            delta = 0
        else:
            delta = by_ell_g[ell].sigma - by_ell_f[ell].sigma
        contributions.append((ell, delta))
        total += delta
    return TransferResult(
        lambda_f=ctx.lambda_g + total, mu_f=0, contributions=tuple(contributions)
    )


@dataclass(frozen=True)
class RankBound:
    """Bloch-Kato Selmer corank information derived from a lambda-invariant.

    The corank is at most lambda with the same parity, and equals lambda
    whenever lambda <= 1; otherwise only the candidate set is known.
    """

    lambda_f: int
    exact: int | None
    candidates: tuple[int, ...]

    def as_dict(self) -> dict:
        if self.exact is not None:
            return {"exact": self.exact}
        return {"candidates": list(self.candidates)}


def bk_rank_bounds(lambda_f: int) -> RankBound:
    if lambda_f < 0:
        raise ValueError(f"lambda must be >= 0, got {lambda_f}")
    candidates = tuple(range(lambda_f % 2, lambda_f + 1, 2))
    if lambda_f <= 1:
        return RankBound(lambda_f=lambda_f, exact=lambda_f, candidates=candidates)
    return RankBound(lambda_f=lambda_f, exact=None, candidates=candidates)
