"""Which effective lengths can a q^r-divisible code have?

The answer is a positional number system: over the base numbers
``σ_q(r, i) = (q^{r+1} − q^i)/(q − 1)`` every integer ``n`` has a unique
expansion with digits a₀..a_{r−1} ∈ [0, q) and a signed leading digit a_r,
and a q^r-divisible code of effective length ``n`` exists iff a_r ≥ 0.
"""
from __future__ import annotations

from dataclasses import dataclass


def base_numbers(q: int, r: int) -> tuple[int, ...]:
    """σ_q(r, i) for i = 0..r; σ_q(r, i) = q^i + q^{i+1} + ... + q^r."""
    if r < 0 or q < 2:
        raise ValueError("need r >= 0 and q >= 2")
    return tuple((q ** (r + 1) - q**i) // (q - 1) for i in range(r + 1))


@dataclass(frozen=True)
class SadicExpansion:
    """Unique expansion of ``n`` over the base numbers of (q, r).

    ``digits[i]`` multiplies σ_q(r, i); digits 0..r−1 lie in [0, q) and the
    leading digit may be any integer (negative exactly when no q^r-divisible
    code of effective length ``n`` exists).
    """

    n: int
    q: int
    r: int
    digits: tuple[int, ...]

    @property
    def leading(self) -> int:
        return self.digits[-1]

    def reconstruct(self) -> int:
        sigma = base_numbers(self.q, self.r)
        return sum(a * s for a, s in zip(self.digits, sigma))


def sadic_expansion(n: int, q: int, r: int) -> SadicExpansion:
    """Expand ``n`` greedily from digit 0 upward.

    σ_q(r, i) is divisible by q^i but not q^{i+1}, so digit i is forced by
    the residue of the remainder modulo q^{i+1}; the leading digit absorbs
    whatever remains and may be negative.
    """
    sigma = base_numbers(q, r)
    digits: list[int] = []
    rem = n
    for i in range(r):
        # choose a_i in [0, q) with rem - a_i * sigma[i] ≡ 0 (mod q^{i+1})
        mod = q ** (i + 1)
        unit = sigma[i] % mod
        a_i = next(a for a in range(q) if (rem - a * unit) % mod == 0)
        digits.append(a_i)
        rem -= a_i * sigma[i]
    assert rem % sigma[r] == 0
    digits.append(rem // sigma[r])
    exp = SadicExpansion(n=n, q=q, r=r, digits=tuple(digits))
    assert exp.reconstruct() == n
    return exp


def feasible_length(n: int, q: int, r: int) -> bool:
    """True iff a q^r-divisible code of effective length ``n`` exists."""
    if n < 0:
        raise ValueError("length must be non-negative")
    return sadic_expansion(n, q, r).leading >= 0
