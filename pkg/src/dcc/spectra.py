"""Dual weight distributions, power moments, and the dimension-12 length window.

All arithmetic is exact (big integers / fractions); nothing here touches
floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .gf2core import BinaryCode, CodeError


def macwilliams_dual(weights: dict[int, int], n: int, k: int) -> dict[int, int]:
    """Dual weight distribution of an [n, k] code from its enumerator.

    Evaluates the binomial convolution of the transform
    ``W*(z) = 2^{-k} (1+z)^n W((1-z)/(1+z))`` exactly; raises
    :class:`CodeError` if any coefficient fails to divide by 2^k, which
    signals an inconsistent (weights, n, k) triple.
    """
    if sum(weights.values()) != 1 << k:
        raise CodeError("weight counts do not sum to 2^k")
    dual: list[int] = []
    for j in range(n + 1):
        # Krawtchouk expansion: K_j(i; n) = sum_s (-1)^s C(i,s) C(n-i, j-s)
        total = 0
        for i, a_i in weights.items():
            kraw = sum(
                (-1) ** s * comb(i, s) * comb(n - i, j - s) for s in range(min(i, j) + 1)
            )
            total += a_i * kraw
        q, r = divmod(total, 1 << k)
        if r:
            raise CodeError(f"inexact dual coefficient at weight {j}")
        dual.append(q)
    return {j: c for j, c in enumerate(dual) if c}


def power_moment_residuals(
    weights: dict[int, int], n: int, k: int, a2s: int, a3s: int
) -> tuple[int, int, int, int]:
    """Left-minus-right of the first four power-moment identities.

    All four residuals are zero exactly when the enumerator, the length, the
    dimension, and the first dual coefficients a₂*, a₃* are mutually
    consistent.
    """
    s0 = sum(c for w, c in weights.items() if w > 0)
    s1 = sum(w * c for w, c in weights.items())
    s2 = sum(w * w * c for w, c in weights.items())
    s3 = sum(w * w * w * c for w, c in weights.items())
    half = Fraction(1, 2)
    r0 = Fraction(s0 - ((1 << k) - 1))
    r1 = s1 - half * (1 << k) * n
    r2 = s2 - half * (1 << k) * (a2s + Fraction(n * (n + 1), 2))
    r3 = s3 - half * half * (1 << k) * (
        3 * (a2s * n - a3s) + Fraction(n * n * (n + 3), 2)
    )

    def as_int(r: Fraction) -> int:
        # a non-integral residual is certainly nonzero; its numerator
        # preserves that while keeping the return type integral
        return int(r) if r.denominator == 1 else r.numerator

    return (as_int(r0), as_int(r1), as_int(r2), as_int(r3))


def a40_bounds(n: int) -> tuple[int, int]:
    """Closed-form lower bounds for a₄₀ and a₄₀+a₄₈ of an 8-divisible
    dimension-12 code with minimum distance 24 and effective length ``n``.

    Both polynomials take integer values on integers; evaluated exactly.
    """
    if not 24 <= n <= 66:
        raise CodeError("a40_bounds requires 24 <= n <= 66")
    f1 = Fraction(205, 2) * n * n - 6808 * n - Fraction(1, 2) * n**3 + 147420
    f2 = 71 * n * n - Fraction(14504, 3) * n - Fraction(1, 3) * n**3 + 106470
    assert f1.denominator == 1 and f2.denominator == 1
    return int(f1), int(f2)


def twelve_dim_length_window() -> set[int]:
    """Feasible effective lengths of 8-divisible [n ≤ 65, 12, d ≥ 24] codes.

    Replays the case split rather than hard-coding the answer: lengths with
    a negative a₄₀+a₄₈ bound are impossible; every remaining length forces
    a₄₀ ≥ 1, and the residual code of a weight-40 word is a doubly-even
    code of dimension 11, whose length n − 40 must be at least 23.
    """
    window: set[int] = set()
    for n in range(24, 66):
        f1, f2 = a40_bounds(n)
        if f2 < 0:
            continue  # a₄₀ + a₄₈ would be negative
        assert f1 >= 1, f"case split expects a40 >= 1 at n={n}"
        if n - 40 < 23:
            continue  # no room for the doubly-even residual
        window.add(n)
    return window
