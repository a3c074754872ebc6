"""Exact integer and modular arithmetic, plus fast prime generation.

Everything here is pure and deterministic.  Moduli in this project stay
below 2**63 (p <= ~10**3, ell <= ~10**8, p**2 <= ~10**6), so Python ints
never become a bottleneck and no external bignum support is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator

import numpy as np

from .errors import ResourceLimitError

MAX_SIEVE_BOUND = 10**8

# Odd numbers per sieve segment; 2**17 odds cover a 2**18-wide window and the
# working set stays inside L2.
_SEGMENT_ODDS = 1 << 17

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimeRange:
    """Closed interval [lo, hi]; iterating yields its primes in order."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 2:
            raise ValueError(f"PrimeRange.lo must be >= 2, got {self.lo}")
        if self.hi <= self.lo:
            raise ValueError(f"PrimeRange.hi must exceed lo, got [{self.lo}, {self.hi}]")

    def __iter__(self) -> Iterator[int]:
        return sieve_primes(self)


def pow_mod(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus for exp >= 0 and modulus >= 2."""
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be non-negative, got {exp}")
    return pow(base, exp, modulus)


def _simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain sieve, used for base primes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def sieve_primes(prime_range: PrimeRange, *, max_bound: int = MAX_SIEVE_BOUND) -> Iterator[int]:
    """Yield the primes in ``prime_range`` in ascending order.

    Segmented, odd-only sieve: base primes up to sqrt(hi) strike odd
    composites out of fixed-size boolean segments, so memory stays flat
    no matter how wide the range is.
    """
    lo, hi = prime_range.lo, prime_range.hi
    if hi > max_bound:
        raise ResourceLimitError(f"sieve bound {hi} exceeds configured maximum {max_bound}")

    if lo <= 2 <= hi:
        yield 2

    base = _simple_sieve(isqrt(hi))
    odd_base = base[base > 2]

    low = max(lo, 3)
    if low % 2 == 0:
        low += 1
    while low <= hi:
        high = min(low + 2 * _SEGMENT_ODDS - 2, hi)  # inclusive, same parity
        if high % 2 == 0:
            high -= 1
        count = (high - low) // 2 + 1
        mask = np.ones(count, dtype=bool)
        for p in odd_base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start > high:
                continue
            mask[(start - low) // 2 :: p] = False
        for off in np.flatnonzero(mask):
            yield low + 2 * int(off)
        low = high + 2


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10**24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int, *, trial_bound: int | None = None) -> list[tuple[int, int]]:
    """Factor n >= 1 by trial division, as sorted (prime, exponent) pairs.

    If ``trial_bound`` is given and a composite cofactor survives division by
    everything <= trial_bound, raise :class:`ResourceLimitError`; a surviving
    cofactor that is itself prime is accepted.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: list[tuple[int, int]] = []
    rem = n
    d = 2
    limit = trial_bound if trial_bound is not None else n
    while d * d <= rem and d <= limit:
        if rem % d == 0:
            e = 0
            while rem % d == 0:
                rem //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if rem > 1:
        if trial_bound is not None and rem > limit * limit and not is_prime(rem):
            raise ResourceLimitError(
                f"cofactor {rem} of {n} not factorable by trial division below {trial_bound}"
            )
        out.append((rem, 1))
    return out


def _prime_power_base(q: int) -> tuple[int, int]:
    """Return (r, k) with q = r**k for a prime power q, else raise ValueError."""
    if q < 2:
        raise ValueError(f"modulus must be >= 2, got {q}")
    r = q
    for d in range(2, isqrt(q) + 1):
        if q % d == 0:
            r = d
            break
    k = 0
    rem = q
    while rem % r == 0:
        rem //= r
        k += 1
    if rem != 1:
        raise ValueError(f"modulus {q} is not a prime power")
    return r, k


def multiplicative_order(a: int, modulus: int) -> int:
    """Smallest k >= 1 with a**k = 1 mod modulus (modulus a prime power)."""
    r, k = _prime_power_base(modulus)
    if gcd(a, modulus) != 1:
        raise ValueError(f"gcd({a}, {modulus}) != 1; order undefined")
    phi = (r - 1) * r ** (k - 1)
    order = phi
    for q, _ in factorize(phi):
        while order % q == 0 and pow(a, order // q, modulus) == 1:
            order //= q
    return order
