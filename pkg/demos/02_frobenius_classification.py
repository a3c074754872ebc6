#!/usr/bin/env python3
"""Classifying primes by the Frobenius conjugacy class of the residual
representation.

For the fixed form g and working prime p, a prime ell coprime to N_g * p
has Frobenius trace a_ell mod p and determinant ell mod p.  Two families
matter for level raising:

  Pi:    Frobenius ~ diag(ell, 1),  ell not +-1 mod p, and additionally
         ell^(p-1) != 1 mod p^2 (one prime above ell in the cyclotomic tower);
  Omega: Frobenius ~ diag(-ell, -1), ell not +-1 mod p.

Raising the level by a Pi prime bumps the lambda-invariant by one; an
Omega prime leaves it unchanged.
"""

from collections import Counter

from lambda_forge import PrimeRange, Verdict, classify_prime, classify_range
from lambda_forge.config import build_context, load_config

ctx = build_context(load_config("configs/default.cfg"))
print(f"form: level {ctx.level}, p = {ctx.p}, a_p = {ctx.a_p} (ordinary)")
print()

print("the first few primes, with the congruence tests that decided them:")
for ell in [2, 3, 5, 13, 29, 37, 43, 47]:
    fc = classify_prime(ctx, ell)
    print(f"  ell = {ell:>3}: trace = {fc.trace_mod_p}, det = {fc.det_mod_p}  "
          f"-> {fc.verdict.value:<12} [{', '.join(fc.reasons)}]")
print()

bound = 20_000
stream = list(classify_range(ctx, PrimeRange(2, bound)))
counts = Counter(fc.verdict for fc in stream)
classifiable = sum(v for k, v in counts.items() if k is not Verdict.SKIPPED)
print(f"classification of all primes up to {bound}:")
for verdict in (Verdict.PI, Verdict.OMEGA, Verdict.NEITHER, Verdict.SKIPPED):
    print(f"  {verdict.value:<12} {counts[verdict]:>6}")
print()

pi_frac = counts[Verdict.PI] / classifiable
omega_frac = counts[Verdict.OMEGA] / classifiable
p = ctx.p
print("observed fractions vs the exact class densities:")
print(f"  Pi:    {pi_frac:.4f}   vs (p-3)/(p(p-1)) = {(p - 3) / (p * (p - 1)):.4f}")
print(f"  Omega: {omega_frac:.4f}   vs (p-3)/(p-1)^2  = {(p - 3) / (p - 1) ** 2:.4f}")
print()

pi_primes = [fc.ell for fc in stream if fc.verdict is Verdict.PI]
print(f"first ten Pi primes:    {pi_primes[:10]}")
omega_primes = [fc.ell for fc in stream if fc.verdict is Verdict.OMEGA]
print(f"first ten Omega primes: {omega_primes[:10]}")
