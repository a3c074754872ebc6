"""Coefficient backends for the fixed newform g and its certified invariants.

A :class:`FormContext` bundles the level N_g, the working prime p, the
certified Iwasawa inputs (lambda_g, mu-vanishing) and a coefficient
backend, which is either an elliptic curve (a_ell by point counting) or a
table loaded from CSV.  The certified fields are *attestations* carried in
configuration; nothing in this package verifies them.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Mapping

from . import curves
from .arith import is_prime
from .curves import CurveModel, trace_of_frobenius
from .errors import CoverageError, HypothesisViolation, TableFormatError


@dataclass(frozen=True)
class CoefficientTable:
    """Finite map ell -> a_ell with the declared level's ramified primes flagged."""

    coefficients: Mapping[int, int]
    level: int
    max_ell: int = 0
    ramified: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        ramified = frozenset(ell for ell in self.coefficients if self.level % ell == 0)
        object.__setattr__(self, "ramified", ramified)
        top = max(self.coefficients, default=0)
        object.__setattr__(self, "max_ell", max(self.max_ell, top))
        for ell, a in self.coefficients.items():
            if ell not in ramified and a * a > 4 * ell:
                raise TableFormatError(
                    f"a_{ell} = {a} violates the Hasse bound |a| <= 2*sqrt({ell})"
                )

    def __len__(self) -> int:
        return len(self.coefficients)


def load_coefficients(path: str | Path, level: int) -> CoefficientTable:
    """Parse a CSV coefficient file (header ``ell,a_ell``) and validate it.

    Rows must be integer pairs with strictly increasing prime ell.  Rows at
    primes dividing ``level`` are kept but flagged ramified; all other rows
    must satisfy the weight-2 Hasse bound.  Violations raise
    :class:`TableFormatError` naming the offending line.
    """
    path = Path(path)
    coeffs: dict[int, int] = {}
    prev = 0
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TableFormatError(f"{path}: empty file, expected header 'ell,a_ell'")
        if [h.strip() for h in header] != ["ell", "a_ell"]:
            raise TableFormatError(f"{path}: bad header {header!r}, expected 'ell,a_ell'")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise TableFormatError(f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            try:
                ell, a = int(row[0]), int(row[1])
            except ValueError:
                raise TableFormatError(f"{path}:{lineno}: non-integer row {row!r}")
            if not is_prime(ell):
                raise TableFormatError(f"{path}:{lineno}: index {ell} is not prime")
            if ell <= prev:
                raise TableFormatError(
                    f"{path}:{lineno}: ell={ell} not strictly increasing (previous {prev})"
                )
            if level % ell != 0 and a * a > 4 * ell:
                raise TableFormatError(
                    f"{path}:{lineno}: a_{ell} = {a} violates the Hasse bound"
                    f" (|a| <= {isqrt(4 * ell)})"
                )
            coeffs[ell] = a
            prev = ell
    return CoefficientTable(coefficients=coeffs, level=level)


@dataclass(frozen=True)
class FormContext:
    """The fixed p-ordinary weight-2 newform g with its certified invariants.

    ``lambda_g``, ``mu_zero`` and ``surjective_mod_p`` are certified inputs:
    they come from the literature or prior computation, are asserted in the
    configuration, and are echoed (never claimed as verified) in reports.
    """

    level: int
    p: int
    lambda_g: int
    mu_zero: bool
    surjective_mod_p: bool
    backend: CurveModel | CoefficientTable
    optimal_level_asserted: bool = True
    naive_limit: int = curves.NAIVE_COUNT_LIMIT
    a_p: int = field(default=0)

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        if self.p < 5 or not is_prime(self.p):
            raise HypothesisViolation(f"p must be a prime >= 5, got {self.p}")
        if self.level % self.p == 0:
            raise HypothesisViolation(f"p = {self.p} divides the level {self.level}")
        if self.lambda_g < 0:
            raise ValueError(f"lambda_g must be >= 0, got {self.lambda_g}")
        if isinstance(self.backend, CurveModel) and self.backend.conductor != self.level:
            raise ValueError(
                f"curve conductor {self.backend.conductor} != stated level {self.level}"
            )
        a_p = _backend_a_ell(self.backend, self.p, self.naive_limit)
        if a_p % self.p == 0:
            raise HypothesisViolation(
                f"a_p = {a_p} is divisible by p = {self.p}: the form is not p-ordinary"
            )
        object.__setattr__(self, "a_p", a_p)


def _backend_a_ell(backend: CurveModel | CoefficientTable, ell: int, naive_limit: int) -> int:
    if isinstance(backend, CurveModel):
        return trace_of_frobenius(backend, ell, naive_limit=naive_limit)
    try:
        return backend.coefficients[ell]
    except KeyError:
        raise CoverageError(ell)


def a_ell(ctx: FormContext, ell: int) -> int:
    """The ell-th Fourier coefficient of g, for ell coprime to N_g * p.

    Mod p this is the trace of the Frobenius class at ell in the residual
    representation; the reduction itself is done by callers.
    """
    if not is_prime(ell):
        raise ValueError(f"ell = {ell} is not prime")
    if ctx.level % ell == 0 or ell == ctx.p:
        raise ValueError(f"ell = {ell} divides N_g * p; coefficient not exposed here")
    return _backend_a_ell(ctx.backend, ell, ctx.naive_limit)


def a_ell_mod_p(ctx: FormContext, ell: int) -> int:
    return a_ell(ctx, ell) % ctx.p
