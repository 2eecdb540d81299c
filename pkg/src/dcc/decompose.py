"""Residual codes and subspace restrictions: divisibility-reduction tools.

Restricting a 2^r-divisible code to the coordinates outside a codeword's
support, or to the columns lying in a codimension-l subspace, lowers the
divisibility exponent in a controlled way; these are the workhorses for
length bounds.
"""
from __future__ import annotations

from .gf2core import BinaryCode, CodeError, _rank


def residual(code: BinaryCode, word: int) -> BinaryCode | None:
    """Code on the coordinates outside ``supp(word)``, rank-reduced.

    ``word`` must be a nonzero codeword.  When ``wt(word) < 2d`` the result
    has dimension k−1; in degenerate cases the true (smaller) rank is kept.
    Returns ``None`` for a zero-dimensional residual (word of full support).
    """
    if word == 0:
        raise CodeError("residual of the zero word is undefined")
    if not code.contains_word(word):
        raise CodeError("word is not in the code")
    outside = [j for j in range(code.n) if not (word >> j) & 1]
    basis: list[int] = []
    for r in code.rows:
        cur = sum(((r >> j) & 1) << i for i, j in enumerate(outside))
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
    if not basis:
        return None
    return BinaryCode(tuple(sorted(basis, reverse=True)), len(outside))


def residual_dimensions(code: BinaryCode, word: int) -> tuple[int, int]:
    """Dimensions of the residual and of the shortened code on the support.

    The residual lives on the coordinates outside ``supp(word)``; its
    complement is the code of the words supported entirely inside
    ``supp(word)``, restricted there.  The two dimensions sum to ``k``
    (rank–nullity); both are computed independently here.
    """
    if word == 0 or not code.contains_word(word):
        raise CodeError("need a nonzero codeword")
    outside = [j for j in range(code.n) if not (word >> j) & 1]
    inside = [j for j in range(code.n) if (word >> j) & 1]
    projected = [
        sum(((r >> j) & 1) << i for i, j in enumerate(outside)) for r in code.rows
    ]
    dim_res = _rank(projected)
    # combinations x with word_x vanishing outside: nullspace of the
    # projected rows, as vectors over the row index space
    ns = _nullspace(projected, code.k)
    words = code.words()
    shortened = [
        sum(((words[x] >> j) & 1) << i for i, j in enumerate(inside)) for x in ns
    ]
    dim_short = _rank(shortened)
    assert dim_res + dim_short == code.k
    return dim_res, dim_short


def _nullspace(rows: list[int], k: int) -> list[int]:
    """Vectors x (bit i = row i) with XOR of selected ``rows`` equal to 0."""
    # eliminate on (row-content, tracker) pairs
    pairs = [(rows[i], 1 << i) for i in range(k)]
    basis: list[tuple[int, int]] = []
    null: list[int] = []
    for val, tag in pairs:
        for bval, btag in basis:
            if val == 0:
                break
            nv = val ^ bval
            if nv < val:
                val, tag = nv, tag ^ btag
        if val:
            basis.append((val, tag))
            basis.sort(reverse=True)
        else:
            null.append(tag)
    return null


def subspace_restriction(code: BinaryCode, subspace_rows: list[int], l: int) -> BinaryCode:
    """Code of the columns lying in a codimension-``l`` subspace.

    The subspace of the column space GF(2)^k is given by ``k − l``
    independent spanning vectors.  Keeps exactly the columns whose point
    lies in the span and rank-reduces the parent rows on them.
    """
    k = code.k
    if len(subspace_rows) != k - l:
        raise CodeError(f"need {k - l} spanning vectors, got {len(subspace_rows)}")
    if _rank(subspace_rows) != k - l:
        raise CodeError("spanning vectors are dependent")
    span = {0}
    for v in subspace_rows:
        span |= {s ^ v for s in span}
    kept = [j for j in range(code.n) if code.column(j) in span]
    if not kept:
        raise CodeError("no columns lie in the subspace")
    basis: list[int] = []
    for r in code.rows:
        cur = sum(((r >> j) & 1) << i for i, j in enumerate(kept))
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
    if not basis:
        raise CodeError("restriction is zero-dimensional")
    return BinaryCode(tuple(sorted(basis, reverse=True)), len(kept))
