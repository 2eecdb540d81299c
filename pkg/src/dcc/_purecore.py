"""Pure-Python compute kernels.

Every function here has a compiled twin in ``_fastcore`` (Cython) with the
same signature and bit-identical results; ``dcc.kernels`` picks the fastest
available implementation at import time.  Keep the two in sync.

Conventions
-----------
* A code of dimension ``k`` on ``n`` columns is a list of ``k`` integer row
  masks; bit ``j`` of a mask is column ``j``.
* A column multiset is a list ``mult`` of length ``2**k`` where ``mult[u]``
  counts columns equal to the point ``u`` of GF(2)^k (``mult[0]`` is the
  number of all-zero columns, normally 0).
* Codewords are indexed by the row-combination vector ``g``; the word for
  ``g`` is the XOR of the rows selected by the bits of ``g``.
"""
from __future__ import annotations

__all__ = [
    "weight_distribution",
    "walsh_spectrum",
    "weights_from_multiset",
    "canonical_form",
    "extension_solutions",
]


def weight_distribution(rows: list[int], n: int) -> list[int]:
    """Count codewords by Hamming weight via Gray-code enumeration.

    Returns ``counts`` with ``counts[w]`` = number of codewords of weight
    ``w``, spanning all ``2**len(rows)`` row combinations (the zero word
    included).
    """
    counts = [0] * (n + 1)
    counts[0] = 1
    w = 0
    for i in range(1, 1 << len(rows)):
        w ^= rows[(i & -i).bit_length() - 1]
        counts[w.bit_count()] += 1
    return counts


def walsh_spectrum(vals: list[int]) -> list[int]:
    """Walsh–Hadamard transform of an integer array.

    ``len(vals)`` must be a power of two.  Exact integer arithmetic; the
    result at index ``g`` is ``sum(vals[u] * (-1)**popcount(g & u))``.
    """
    out = list(vals)
    size = len(out)
    h = 1
    while h < size:
        for start in range(0, size, h * 2):
            for j in range(start, start + h):
                a, b = out[j], out[j + h]
                out[j], out[j + h] = a + b, a - b
        h *= 2
    return out


def weights_from_multiset(mult: list[int], k: int) -> list[int]:
    """Weight of every codeword, computed from the column multiset.

    Returns ``wt`` of length ``2**k`` with ``wt[g]`` the weight of the word
    with row-combination ``g``.  Uses the Walsh transform: a column ``u``
    contributes to ``wt[g]`` exactly when ``g·u = 1``.
    """
    spec = walsh_spectrum(mult)
    n = sum(mult)
    return [(n - s) >> 1 for s in spec]


# --------------------------------------------------------------------------
# canonical form of a column multiset under GL(k, 2)
# --------------------------------------------------------------------------
#
# The canonical label of a multiset ``mult`` is the lexicographically largest
# relabelled vector ``val(B)[i] = mult[phi_B(i)]`` over all ordered bases
# ``B = (b_1..b_k)`` of GF(2)^k, where ``phi_B(i)`` is the XOR of the basis
# vectors selected by the bits of ``i``.  Index 0 is dropped (always the zero
# point), so the label has ``2**k - 1`` entries.
#
# Phase 1 finds the maximum by DFS over basis prefixes with prefix pruning:
# a prefix whose next value block falls below the incumbent's corresponding
# block cannot reach the maximum.  Bases that tie reveal automorphisms
# (invertible linear maps preserving the multiset); those are collected and
# used to skip siblings lying in one orbit of the discovered group.
#
# Phase 2 computes the automorphism group order as the number of ordered
# bases whose relabelled vector equals the canonical label: the group acts
# simply transitively on those bases, so the count is the product over
# levels of the number of per-level choices that extend to a full match.


def _close_orbit(seed: int, gens: list[list[int]]) -> set[int]:
    orbit = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g[p]
                if q not in orbit:
                    orbit.add(q)
                    nxt.append(q)
        frontier = nxt
    return orbit


def canonical_form(mult: list[int], k: int) -> tuple[tuple[int, ...], int]:
    """Canonical label and automorphism-group order of a column multiset.

    ``mult`` has length ``2**k`` with ``mult[0] == 0`` and its support must
    span GF(2)^k (the code has full rank).  Returns ``(label, aut_order)``
    where ``label`` is the canonical vector of length ``2**k - 1`` (entry
    ``i-1`` is the multiplicity of relabelled point ``i``).
    """
    if k == 0:
        return (), 1
    size = 1 << k
    support = [u for u in range(1, size) if mult[u]]

    best: list[int] = []
    best_basis: list[int] | None = None
    gens: list[list[int]] = []  # automorphisms as point maps

    def block_of(v: int, phi: list[int]) -> list[int]:
        return [mult[v ^ p] for p in phi]

    def extend_phi(phi: list[int], v: int) -> list[int]:
        return phi + [v ^ p for p in phi]

    def record_leaf(basis: list[int], phi: list[int]) -> None:
        nonlocal best_basis
        if best_basis is None:
            best_basis = list(basis)
            return
        if basis == best_basis:
            return
        # the map sending the reference basis to this one preserves mult
        bphi = [0]
        for b in best_basis:
            bphi = extend_phi(bphi, b)
        pmap = [0] * size
        for i in range(size):
            pmap[bphi[i]] = phi[i]
        gens.append(pmap)

    def dfs(basis: list[int], phi: list[int], span: set[int], pos: int) -> None:
        nonlocal best, best_basis
        t = len(basis)
        if t == k:
            record_leaf(basis, phi)
            return
        width = 1 << t
        scored = sorted(
            ((block_of(v, phi), v) for v in support if v not in span),
            key=lambda bv: bv[0],
            reverse=True,
        )
        skip: set[int] = set()
        for blk, v in scored:
            if v in skip:
                continue
            seg = best[pos: pos + width]
            if blk < seg:
                break  # sorted descending: no later sibling can tie either
            if blk > seg:
                # new incumbent along this path; previously found
                # automorphisms remain valid, the reference basis does not
                best = best[:pos] + blk
                best_basis = None
            stab = [g for g in gens if all(g[b] == b for b in basis)]
            if stab:
                skip |= _close_orbit(v, stab) - {v}
            dfs(basis + [v], extend_phi(phi, v), span | {s ^ v for s in span}, pos + width)

    dfs([], [0], {0}, 0)
    assert len(best) == size - 1, "support does not span GF(2)^k"
    label = tuple(best)

    # phase 2: |Aut| = number of ordered bases matching the canonical label
    def extendable(basis: list[int], phi: list[int], span: set[int], pos: int) -> bool:
        t = len(basis)
        if t == k:
            record_leaf(basis, phi)
            return True
        width = 1 << t
        seg = best[pos: pos + width]
        for v in support:
            if v in span or block_of(v, phi) != seg:
                continue
            if extendable(
                basis + [v], extend_phi(phi, v), span | {s ^ v for s in span}, pos + width
            ):
                return True
        return False

    order = 1
    basis: list[int] = []
    phi = [0]
    span = {0}
    pos = 0
    for t in range(k):
        width = 1 << t
        seg = best[pos: pos + width]
        good: list[int] = []
        bad: set[int] = set()
        for v in support:
            if v in span or block_of(v, phi) != seg or v in bad:
                continue
            stab = [g for g in gens if all(g[b] == b for b in basis)]
            if good and any(v in _close_orbit(w, stab) for w in good):
                good.append(v)
                continue
            if extendable(basis + [v], extend_phi(phi, v), span | {s ^ v for s in span}, pos + width):
                good.append(v)
            else:
                bad.add(v)
        v = good[0]
        order *= len(good)
        basis.append(v)
        phi = extend_phi(phi, v)
        span |= {s ^ v for s in span}
        pos += width
    return label, order


# --------------------------------------------------------------------------
# one-dimension extension enumeration
# --------------------------------------------------------------------------


def extension_solutions(
    parent_wt: list[int],
    mult: list[int],
    k: int,
    delta_len: int,
    wmask: int,
    unit_floor: bool = True,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Enumerate ways to append one generator row (and columns) to a code.

    The parent code has column multiset ``mult`` (length ``2**k``) and word
    weights ``parent_wt`` (length ``2**k``).  A child is obtained by giving
    each parent column a new-row bit and appending ``delta_len`` columns that
    are nonzero only in the new row.  For each support point ``u``, ``t_u``
    of its ``mult[u]`` columns get new-row bit 1.

    ``wmask`` is a bitmask of allowed weights: every word involving the new
    row must have a weight ``w`` with ``wmask >> w & 1``.  Words of the
    parent itself are untouched and are *not* re-checked here.

    With ``unit_floor`` (for systematic parents), at least one column of
    each unit point ``e_i`` keeps new-row bit 0; adding row ``i`` to the new
    row shows this discards only re-encodings of child codes, never a child
    code itself.

    Returns a list of ``(t, new_wt)`` pairs in lexicographic order of the
    child column-count vector, where ``t`` gives ``t_u`` per support point
    (in increasing point order) and ``new_wt[g]`` is the weight of the child
    word combining the new row with parent combination ``g``.
    """
    size = 1 << k
    support = [u for u in range(1, size) if mult[u]]
    m = len(support)
    # sign of t_u in the weight of word (g, new): +1 if g.u = 0 else -1
    signs = [
        [1 if (g & u).bit_count() % 2 == 0 else -1 for g in range(size)] for u in support
    ]
    # suffix slack: how far the remaining choices can still move each weight
    suf_neg = [[0] * size for _ in range(m + 1)]
    suf_pos = [[0] * size for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        u = support[i]
        hi = mult[u] - (1 if unit_floor and u.bit_count() == 1 else 0)
        for g in range(size):
            if signs[i][g] < 0:
                suf_neg[i][g] = suf_neg[i + 1][g] + hi
                suf_pos[i][g] = suf_pos[i + 1][g]
            else:
                suf_neg[i][g] = suf_neg[i + 1][g]
                suf_pos[i][g] = suf_pos[i + 1][g] + hi

    # suffix sums of the per-point upper bounds: cap on the rest of sum(t)
    shi = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        u = support[i]
        shi[i] = shi[i + 1] + mult[u] - (1 if unit_floor and u.bit_count() == 1 else 0)

    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    cur = [parent_wt[g] + delta_len for g in range(size)]
    t = [0] * m

    # next_allowed[w] = smallest allowed weight >= w (sentinel beyond the top)
    top = wmask.bit_length()
    sentinel = top + 1
    next_allowed = [sentinel] * (top + 2)
    run = sentinel
    for w in range(top, -1, -1):
        if (wmask >> w) & 1:
            run = w
        next_allowed[w] = run

    # The weight of the new row alone is delta_len + sum(t), so sum(t) is
    # pinned to one value per allowed weight.  Search each total separately,
    # threading the remaining budget through the DFS: with ``r`` of the sum
    # still to place, word g can only reach weights in
    # ``cur[g] + r - 2 * [max(0, r - suf_pos), min(suf_neg, r)]``.
    def feasible(i: int, r: int) -> bool:
        sn, sp = suf_neg[i], suf_pos[i]
        for g in range(size):
            drop = sn[g] if sn[g] < r else r
            rise = r - sp[g]
            if rise < 0:
                rise = 0
            lo = cur[g] + r - 2 * drop
            hi = cur[g] + r - 2 * rise
            if lo < 0:
                lo = 0
            if hi < lo or lo > top or next_allowed[lo] > hi:
                return False
        return True

    def dfs(i: int, r: int) -> None:
        if i == m:
            out.append((tuple(t), tuple(cur)))
            return
        u = support[i]
        hi_t = mult[u] - (1 if unit_floor and u.bit_count() == 1 else 0)
        sgn = signs[i]
        lo_t = r - shi[i + 1]
        if lo_t < 0:
            lo_t = 0
        if hi_t > r:
            hi_t = r
        for tu in range(hi_t, lo_t - 1, -1):
            t[i] = tu
            for g in range(size):
                cur[g] += sgn[g] * tu
            if feasible(i + 1, r - tu):
                dfs(i + 1, r - tu)
            for g in range(size):
                cur[g] -= sgn[g] * tu
        t[i] = 0

    w0 = next_allowed[min(delta_len, top + 1)] if delta_len <= top else sentinel
    while w0 <= top and w0 - delta_len <= shi[0]:
        if feasible(0, w0 - delta_len):
            dfs(0, w0 - delta_len)
        w0 = next_allowed[w0 + 1] if w0 + 1 <= top else sentinel

    # branches were searched per total; restore lexicographic order of the
    # child column-count vector (mult[u] - t_u, ascending per point)
    msup = [mult[u] for u in support]
    out.sort(key=lambda sol: tuple(msup[j] - sol[0][j] for j in range(m)))
    return out
