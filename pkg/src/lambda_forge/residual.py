"""Frobenius conjugacy classification at unramified primes.

For ell coprime to N_g * p, the Frobenius class of the residual
representation has trace a_ell mod p and determinant ell mod p (weight 2,
trivial nebentype).  When the two eigenvalues are distinct the semisimple
class is pinned down by (trace, det), so membership in the two admissible
families is decided by congruences alone:

* ``PiMember``:    eigenvalues {ell, 1},  needs a_ell = 1 + ell,  ell != +-1,
                   and ell**(p-1) != 1 mod p**2 (Wieferich-type exclusion);
* ``OmegaMember``: eigenvalues {-ell, -1}, needs a_ell = -(1 + ell), ell != +-1.

No mod-p**2 test applies to the Omega family: splitting behaviour in the
first cyclotomic layer only matters when the local multiplicity it scales
is nonzero, and for Omega primes that multiplicity is already zero.
"""

from __future__ import annotations

import csv
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Iterator, Sequence

from .arith import PrimeRange, is_prime, sieve_primes
from .curves import CurveModel, trace_of_frobenius
from .forms import FormContext, a_ell


class Verdict(Enum):
    PI = "PiMember"
    OMEGA = "OmegaMember"
    NEITHER = "Neither"
    SKIPPED = "Skipped"


@dataclass(frozen=True)
class FrobeniusClass:
    """Classification outcome for one prime.

    ``trace_mod_p`` and ``det_mod_p`` are None exactly for Skipped primes
    (those dividing N_g * p, where the class is undefined).  ``reasons``
    records each congruence test in a fixed order.
    """

    ell: int
    trace_mod_p: int | None
    det_mod_p: int | None
    verdict: Verdict
    reasons: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "ell": self.ell,
            "trace_mod_p": self.trace_mod_p,
            "det_mod_p": self.det_mod_p,
            "verdict": self.verdict.value,
            "reasons": list(self.reasons),
        }


def classify_prime(ctx: FormContext, ell: int) -> FrobeniusClass:
    """Classify the Frobenius class at one prime ell coprime to N_g * p."""
    if ctx.level % ell == 0 or ell == ctx.p:
        raise ValueError(
            f"ell = {ell} divides N_g * p; classification undefined at ramified primes"
        )
    p = ctx.p
    t = a_ell(ctx, ell) % p
    d = ell % p

    reasons = ["coprime-to-Ngp=pass"]
    res_ok = d not in (1, p - 1)
    if res_ok:
        reasons.append("mod-p-class=pass")
    else:
        reasons.append(f"mod-p-class=fail(ell={'+1' if d == 1 else '-1'} mod p)")

    pi_trace = t == (1 + ell) % p
    omega_trace = t == (-(1 + ell)) % p
    if pi_trace:
        reasons.append("trace=pi")
    elif omega_trace:
        reasons.append("trace=omega")
    else:
        reasons.append("trace=neither")

    verdict = Verdict.NEITHER
    if res_ok and pi_trace:
        if pow(ell, p - 1, p * p) != 1:
            reasons.append("wieferich=pass")
            verdict = Verdict.PI
        else:
            reasons.append("wieferich=fail(ell^(p-1)=1 mod p^2)")
    else:
        reasons.append("wieferich=n/a")
        if res_ok and omega_trace:
            verdict = Verdict.OMEGA

    if verdict is not Verdict.NEITHER:
        _check_split_factorization(verdict, t, d, ell, p)
    return FrobeniusClass(ell, t, d, verdict, tuple(reasons))


def _check_split_factorization(verdict: Verdict, t: int, d: int, ell: int, p: int) -> None:
    """Recheck that X^2 - tX + d splits with the two distinct claimed roots."""
    if verdict is Verdict.PI:
        roots = (1, ell % p)
    else:
        roots = (p - 1, (-ell) % p)
    if roots[0] == roots[1]:
        raise AssertionError(f"repeated eigenvalue at ell={ell}, p={p}; classifier bug")
    for r in roots:
        if (r * r - t * r + d) % p != 0:
            raise AssertionError(
                f"claimed eigenvalue {r} is not a root of X^2-{t}X+{d} mod {p}"
            )


def _skipped(ell: int) -> FrobeniusClass:
    return FrobeniusClass(ell, None, None, Verdict.SKIPPED, ("divides-Ngp",))


def _classify_chunk(args: tuple[FormContext, Sequence[int]]) -> list[FrobeniusClass]:
    ctx, ells = args
    out = []
    for ell in ells:
        if ctx.level % ell == 0 or ell == ctx.p:
            out.append(_skipped(ell))
        else:
            out.append(classify_prime(ctx, ell))
    return out


def classify_range(
    ctx: FormContext,
    prime_range: PrimeRange,
    *,
    workers: int | None = None,
    chunk_size: int = 4096,
) -> Iterator[FrobeniusClass]:
    """Classify every prime in the range, in ascending order.

    Primes dividing N_g * p come through as Skipped markers so that density
    denominators can count classifiable primes only.  With ``workers`` > 1 the
    work is fanned out over a process pool in chunks; chunk results are merged
    in order, so the stream is identical to a serial run.
    """
    if workers is None or workers <= 1:
        for ell in sieve_primes(prime_range):
            if ctx.level % ell == 0 or ell == ctx.p:
                yield _skipped(ell)
            else:
                yield classify_prime(ctx, ell)
        return

    def chunks() -> Iterator[tuple[FormContext, list[int]]]:
        buf: list[int] = []
        for ell in sieve_primes(prime_range):
            buf.append(ell)
            if len(buf) >= chunk_size:
                yield (ctx, buf)
                buf = []
        if buf:
            yield (ctx, buf)

    with ProcessPoolExecutor(max_workers=workers) as pool:
        for block in pool.map(_classify_chunk, chunks()):
            yield from block


def classification_to_csv(stream: Iterable[FrobeniusClass], out: IO[str]) -> None:
    """Write the export format: header ``ell,trace_mod_p,verdict``."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["ell", "trace_mod_p", "verdict"])
    for fc in stream:
        writer.writerow([fc.ell, "" if fc.trace_mod_p is None else fc.trace_mod_p, fc.verdict.value])


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ScreenReport:
    """Mechanizable eligibility checks for a candidate working prime p.

    ``asserted_only`` lists the hypotheses this tool can never check and
    which therefore require config attestation.
    """

    p: int
    checks: tuple[CheckResult, ...]
    asserted_only: tuple[str, ...]

    @property
    def mechanical_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
            "asserted_only": list(self.asserted_only),
            "eligible_mechanically": self.mechanical_pass,
        }


ASSERTED_ONLY_ITEMS = (
    "surjective_mod_p",
    "mu_zero",
    "lambda_g_certified",
    "optimal_level",
)


def screen_p(curve: CurveModel, p: int, *, naive_limit: int | None = None) -> ScreenReport:
    """Screen a candidate prime p for use with a curve-backed form.

    Checks the conditions a machine can decide (p >= 5 prime, p coprime to
    the conductor, ordinariness); everything else is reported as requiring
    attestation.  Always returns a report, never raises on a failing check.
    """
    checks: list[CheckResult] = []
    p_ok = p >= 5 and is_prime(p)
    checks.append(CheckResult("p>=5-and-prime", p_ok, f"p = {p}"))

    good = p_ok and curve.conductor % p != 0
    if p_ok:
        detail = f"conductor {curve.conductor} {'coprime to' if good else 'divisible by'} {p}"
    else:
        detail = "not evaluated"
    checks.append(CheckResult("good-reduction-at-p", good, detail))

    if good and curve.discriminant % p != 0:
        kwargs = {"naive_limit": naive_limit} if naive_limit else {}
        ap = trace_of_frobenius(curve, p, **kwargs)
        checks.append(
            CheckResult("ordinary-at-p", ap % p != 0, f"a_p = {ap} mod {p} = {ap % p}")
        )
    else:
        checks.append(CheckResult("ordinary-at-p", False, "not evaluated (bad reduction)"))

    return ScreenReport(p=p, checks=tuple(checks), asserted_only=ASSERTED_ONLY_ITEMS)


def resolve_workers(configured: int = 0) -> int:
    """Worker count: LAMBDA_FORGE_THREADS env wins, then config, then cores."""
    env = os.environ.get("LAMBDA_FORGE_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"LAMBDA_FORGE_THREADS must be an integer, got {env!r}")
        if n < 1:
            raise ValueError(f"LAMBDA_FORGE_THREADS must be >= 1, got {n}")
        return n
    if configured and configured > 0:
        return configured
    return os.cpu_count() or 1
