"""Factor families and exact coefficient extraction for infinite products.

A family describes ``f = prod_{k>=1} f_k``.  Every factor has constant term 1
and its non-constant part starts at degree ``>= k``.  Consequently only the
factors ``k <= N`` can contribute to the coefficients of ``z**0 .. z**N``:
any monomial using factor ``k > N`` has degree ``> N``.  Truncating the
product at ``N`` factors is therefore exact through degree ``N``.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

BRUTE_FORCE_MAX_N = 60


class FamilyKind(str, enum.Enum):
    DISTINCT = "distinct"
    GEOMETRIC = "geometric"
    CUSTOM = "custom"


@dataclass(frozen=True)
class FactorFamily:
    """Sequence of factors ``f_k`` whose product is the generating function.

    ``DISTINCT``:  f_k(z) = 1 + z**k (partitions into distinct parts).
    ``GEOMETRIC``: f_k(z) = 1 / (1 - z**k) (unrestricted partitions).
    ``CUSTOM``:    finitely many explicit polynomials, ``custom_factors[k-1]``
    holding the coefficients of factor ``k`` by increasing degree.
    """

    kind: FamilyKind
    custom_factors: tuple[tuple[Fraction, ...], ...] = field(default=())

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is not FamilyKind.CUSTOM:
            if self.custom_factors:
                raise ValueError("custom_factors only applies to CUSTOM families")
            return
        factors = tuple(
            tuple(_exact(c) for c in coeffs) for coeffs in self.custom_factors
        )
        for k, coeffs in enumerate(factors, start=1):
            _validate_factor(k, coeffs)
        object.__setattr__(self, "custom_factors", factors)

    @classmethod
    def distinct(cls) -> FactorFamily:
        return cls(FamilyKind.DISTINCT)

    @classmethod
    def geometric(cls) -> FactorFamily:
        return cls(FamilyKind.GEOMETRIC)

    @classmethod
    def custom(cls, factors: Sequence[Sequence]) -> FactorFamily:
        return cls(FamilyKind.CUSTOM, tuple(tuple(f) for f in factors))

    @classmethod
    def from_json(cls, source: str | os.PathLike) -> FactorFamily:
        """Load a CUSTOM family from a JSON file path or a JSON string.

        The document has the form ``{"factors": [["1", "0", "1"], ...]}``;
        coefficients may be integers or decimal strings and are parsed
        exactly.
        """
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text, parse_float=Fraction, parse_int=Fraction)
        if not isinstance(doc, dict) or "factors" not in doc:
            raise ValueError('custom family JSON needs a top-level "factors" list')
        return cls.custom(doc["factors"])

    @property
    def n_factors(self) -> int | None:
        """Number of factors, or ``None`` for the infinite built-in families."""
        if self.kind is FamilyKind.CUSTOM:
            return len(self.custom_factors)
        return None

    def factor_coefficients(self, k: int, degree: int) -> list:
        """Coefficients of ``f_k`` through ``degree`` (exact)."""
        if k < 1:
            raise ValueError("factor index starts at 1")
        out = [0] * (degree + 1)
        out[0] = 1
        if self.kind is FamilyKind.DISTINCT:
            if k <= degree:
                out[k] = 1
        elif self.kind is FamilyKind.GEOMETRIC:
            for j in range(k, degree + 1, k):
                out[j] = 1
        else:
            coeffs = self.custom_factors[k - 1] if k <= len(self.custom_factors) else (1,)
            out = [Fraction(0)] * (degree + 1)
            for j, c in enumerate(coeffs[: degree + 1]):
                out[j] = c
        return out


def _exact(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError(f"coefficient {c!r} must be an integer or a decimal string")
    return Fraction(c)


def _validate_factor(k: int, coeffs: tuple[Fraction, ...]) -> None:
    if not coeffs or coeffs[0] != 1:
        raise ValueError(f"factor {k}: constant term must be 1")
    if any(c < 0 for c in coeffs):
        raise ValueError(f"factor {k}: coefficients must be non-negative")
    nonzero = [j for j, c in enumerate(coeffs) if j > 0 and c != 0]
    if nonzero and nonzero[0] < k:
        raise ValueError(
            f"factor {k}: lowest non-constant degree {nonzero[0]} is below {k}; "
            "the truncated product would not be exact"
        )


@dataclass(frozen=True)
class CoefficientTable:
    n_max: int
    coeffs: tuple

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)


def expand_product(family: FactorFamily, n_max: int) -> CoefficientTable:
    """Exact coefficients ``a_0 .. a_{n_max}`` of ``prod_k f_k``."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if family.kind is FamilyKind.DISTINCT:
        coeffs = _distinct_table(n_max)
    elif family.kind is FamilyKind.GEOMETRIC:
        coeffs = _geometric_table(n_max)
    else:
        coeffs = _custom_table(family.custom_factors, n_max)
    return CoefficientTable(n_max, tuple(coeffs))


def _distinct_table(n_max: int) -> list[int]:
    a = np.zeros(n_max + 1, dtype=object)
    a[:] = 0
    a[0] = 1
    for part in range(1, n_max + 1):
        # right-hand side is built from the old values, so each part is used once
        a[part:] = a[part:] + a[: n_max + 1 - part]
    return [int(v) for v in a]


def _geometric_table(n_max: int) -> list[int]:
    a = [0] * (n_max + 1)
    a[0] = 1
    for part in range(1, n_max + 1):
        for j in range(part, n_max + 1):
            a[j] += a[j - part]
    return a


def _custom_table(factors, n_max: int) -> list[Fraction]:
    a = [Fraction(0)] * (n_max + 1)
    a[0] = Fraction(1)
    for k, coeffs in enumerate(factors[:n_max], start=1):
        support = [(j, c) for j, c in enumerate(coeffs) if j > 0 and c != 0 and j <= n_max]
        if not support:
            continue
        new = list(a)
        for j, c in support:
            for n in range(j, n_max + 1):
                if a[n - j]:
                    new[n] += c * a[n - j]
        a = new
    return a


def distinct_partition_count(n: int) -> int:
    """Number of partitions of ``n`` into pairwise distinct positive parts."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return _distinct_table(n)[n]


def brute_force_distinct(n: int) -> int:
    """Count subsets of ``{1..n}`` summing to ``n`` by explicit backtracking.

    Exponential; only meant as an independent oracle for small ``n``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force enumeration is capped at n={BRUTE_FORCE_MAX_N}")

    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        # parts strictly decreasing; the rest must fit in 1 + ... + (part - 1)
        for part in range(min(remaining, largest), 0, -1):
            if part * (part + 1) // 2 < remaining:
                break
            total += count(remaining - part, part - 1)
        return total

    return count(n, n)
