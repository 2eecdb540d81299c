"""Canonical keys and automorphism orders up to linear column equivalence.

Two codes are equivalent when an invertible linear substitution of GF(2)^k
maps one column multiset onto the other; the canonical key is a total
invariant for that relation, and the automorphism order counts the linear
maps fixing the multiset (identical columns counted once).
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .gf2core import BinaryCode, CodeError, code_from_multiset


@dataclass(frozen=True)
class CanonicalKey:
    """Total-order key for an equivalence class, plus its group order."""

    key: bytes
    aut_order: int

    def hex(self) -> str:
        return self.key.hex()


def canonical_form(code: BinaryCode) -> CanonicalKey:
    """Key invariant under column permutation and row operations.

    The key byte string is the dimension followed by the canonical value
    vector: the lexicographically greatest sequence of point multiplicities
    over all bases of GF(2)^k, indexed by basis combinations.
    """
    mult = [0] * (1 << code.k)
    for u in code.columns():
        mult[u] += 1
    label, aut = kernels.canonical_form(mult, code.k)
    return CanonicalKey(key=bytes([code.k]) + bytes(label), aut_order=aut)


def automorphism_order(code: BinaryCode) -> int:
    """Order of the stabilizer of the column multiset in GL(k, 2)."""
    return canonical_form(code).aut_order


def representative(key: CanonicalKey | bytes) -> BinaryCode:
    """The canonical member of the class: columns read off the key itself.

    The key's value vector is a multiset over basis combinations, which is a
    relabeled copy of the original points; building a code directly from it
    gives a concrete matrix with the same canonical key.
    """
    raw = key.key if isinstance(key, CanonicalKey) else key
    if not raw:
        raise CodeError("empty key")
    k = raw[0]
    if len(raw) != (1 << k):
        raise CodeError("key length does not match its dimension byte")
    mult = {i: raw[i] for i in range(1, 1 << k) if raw[i]}
    return code_from_multiset(mult, k)
