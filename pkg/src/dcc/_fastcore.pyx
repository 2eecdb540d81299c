# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels: typed twins of ``_purecore``.

Same signatures, bit-identical results.  Keep the two modules in sync.
"""
from cpython.list cimport PyList_GET_ITEM

from libc.stdlib cimport free, malloc
from libc.string cimport memset

__all__ = [
    "weight_distribution",
    "walsh_spectrum",
    "weights_from_multiset",
    "canonical_form",
    "extension_solutions",
]


def weight_distribution(rows, n):
    """Count codewords by Hamming weight via Gray-code enumeration."""
    cdef int k = len(rows)
    cdef list counts = [0] * (n + 1)
    counts[0] = 1
    if k == 0:
        return counts
    if n <= 64:
        _weight_distribution_64(rows, k, counts)
        return counts
    # wide masks: arbitrary-precision fallback, same traversal
    cdef object w = 0
    cdef unsigned long long i, total = (<unsigned long long> 1) << k
    cdef int bit
    for i in range(1, total):
        bit = _bit_length_u64(i & (0 - i)) - 1
        w = w ^ <object> rows[bit]
        counts[<long> _popcount_obj(w)] += 1
    return counts


cdef long _popcount_obj(object v):
    return v.bit_count()


cdef void _weight_distribution_64(list rows, int k, list counts):
    cdef unsigned long long r[64]
    cdef int i
    for i in range(k):
        r[i] = <unsigned long long> rows[i]
    cdef unsigned long long w = 0
    cdef unsigned long long idx, lowbit
    cdef unsigned long long total = (<unsigned long long> 1) << k
    # accumulate in a C array to avoid boxing in the hot loop
    cdef long* acc = <long*> malloc((65) * sizeof(long))
    memset(acc, 0, 65 * sizeof(long))
    cdef int bit
    for idx in range(1, total):
        lowbit = idx & (0 - idx)
        bit = _bit_length_u64(lowbit) - 1
        w ^= r[bit]
        acc[_popcount_u64(w)] += 1
    for i in range(65):
        if acc[i]:
            counts[i] = <object> (counts[i]) + acc[i]
    free(acc)


cdef inline int _popcount_u64(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _bit_length_u64(unsigned long long x):
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


def walsh_spectrum(vals):
    """In-place-style fast Walsh-Hadamard transform; returns a new list."""
    cdef list out = list(vals)
    cdef Py_ssize_t size = len(out)
    cdef Py_ssize_t h = 1, i, j
    cdef long long a, b
    cdef long long* buf = <long long*> malloc(size * sizeof(long long))
    for i in range(size):
        buf[i] = <long long> out[i]
    while h < size:
        i = 0
        while i < size:
            for j in range(i, i + h):
                a = buf[j]
                b = buf[j + h]
                buf[j] = a + b
                buf[j + h] = a - b
            i += h * 2
        h *= 2
    for i in range(size):
        out[i] = buf[i]
    free(buf)
    return out


def weights_from_multiset(mult, k):
    """Word weights from a column multiset via the Walsh transform."""
    cdef list chars = walsh_spectrum(mult)
    cdef Py_ssize_t size = 1 << k
    cdef long long n = 0
    cdef Py_ssize_t g
    for g in range(size):
        n += <long long> mult[g]
    cdef list out = [0] * size
    for g in range(size):
        out[g] = (n - <long long> chars[g]) >> 1
    return out


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------


def canonical_form(mult, k):
    """Canonical label and automorphism-group order of a column multiset.

    Same two-phase search as the pure twin: phase 1 finds the lexicographically
    greatest value vector over ordered bases of the support, phase 2 counts the
    bases attaining it.
    """
    if k == 0:
        return (), 1
    cdef int size = 1 << k
    cdef list support = [u for u in range(1, size) if mult[u]]

    cdef list best = []
    best_basis_box = [None]
    cdef list gens = []

    mult_l = list(mult)

    def block_of(v, phi):
        return [mult_l[v ^ p] for p in phi]

    def extend_phi(phi, v):
        return phi + [v ^ p for p in phi]

    def close_orbit(seed, gens_):
        orb = {seed}
        frontier = [seed]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens_:
                    q = g[p]
                    if q not in orb:
                        orb.add(q)
                        nxt.append(q)
            frontier = nxt
        return orb

    def record_leaf(basis, phi):
        if best_basis_box[0] is None:
            best_basis_box[0] = list(basis)
            return
        if basis == best_basis_box[0]:
            return
        bphi = [0]
        for b in best_basis_box[0]:
            bphi = extend_phi(bphi, b)
        pmap = [0] * size
        for i in range(size):
            pmap[bphi[i]] = phi[i]
        gens.append(pmap)

    def dfs(basis, phi, span, pos):
        nonlocal best
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
        skip = set()
        for blk, v in scored:
            if v in skip:
                continue
            seg = best[pos: pos + width]
            if blk < seg:
                break
            if blk > seg:
                best = best[:pos] + blk
                best_basis_box[0] = None
            stab = [g for g in gens if all(g[b] == b for b in basis)]
            if stab:
                skip |= close_orbit(v, stab) - {v}
            dfs(basis + [v], extend_phi(phi, v), span | {s ^ v for s in span}, pos + width)

    dfs([], [0], {0}, 0)
    assert len(best) == size - 1, "support does not span GF(2)^k"
    label = tuple(best)

    def extendable(basis, phi, span, pos):
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
    basis = []
    phi = [0]
    span = {0}
    pos = 0
    for t in range(k):
        width = 1 << t
        seg = best[pos: pos + width]
        good = []
        bad = set()
        for v in support:
            if v in span or block_of(v, phi) != seg or v in bad:
                continue
            stab = [g for g in gens if all(g[b] == b for b in basis)]
            if good and any(v in close_orbit(w, stab) for w in good):
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


# ---------------------------------------------------------------------------
# one-dimension extension enumeration
# ---------------------------------------------------------------------------


cdef struct ExtCtx:
    int size
    int m
    int top            # largest allowed weight
    int* support       # [m]
    int* hi_t          # [m] per-point upper branch bound
    signed char* signs # [m * size]
    int* suf_neg       # [(m+1) * size]
    int* suf_pos       # [(m+1) * size]
    int* shi           # [m+1] suffix sums of hi_t: cap on the rest of sum(t)
    short* next_allowed  # [top + 2]
    int* cur           # [size]
    int* t             # [m]


cdef bint _ext_feasible(ExtCtx* ctx, int i, int r):
    # with r of the row total still to place, word g reaches the weights of
    # matching parity in cur[g] + r - 2 * [max(0, r - suf_pos), min(suf_neg, r)]
    cdef int* sn = ctx.suf_neg + i * ctx.size
    cdef int* sp = ctx.suf_pos + i * ctx.size
    cdef int g, lo, hi, drop, rise
    for g in range(ctx.size):
        drop = sn[g] if sn[g] < r else r
        rise = r - sp[g]
        if rise < 0:
            rise = 0
        lo = ctx.cur[g] + r - 2 * drop
        hi = ctx.cur[g] + r - 2 * rise
        if lo < 0:
            lo = 0
        if hi < lo or lo > ctx.top or ctx.next_allowed[lo] > hi:
            return False
    return True


cdef void _ext_dfs(ExtCtx* ctx, int i, int r, list out):
    cdef int g, tu, hi, lo
    cdef signed char* sgn
    if i == ctx.m:
        out.append((
            tuple([ctx.t[g] for g in range(ctx.m)]),
            tuple([ctx.cur[g] for g in range(ctx.size)]),
        ))
        return
    hi = ctx.hi_t[i]
    if hi > r:
        hi = r
    lo = r - ctx.shi[i + 1]
    if lo < 0:
        lo = 0
    if hi < lo:
        return
    sgn = ctx.signs + i * ctx.size
    # branch t_u descending so the child count x_(u,0) ascends
    for g in range(ctx.size):
        ctx.cur[g] += sgn[g] * hi
    for tu in range(hi, lo - 1, -1):
        ctx.t[i] = tu
        if _ext_feasible(ctx, i + 1, r - tu):
            _ext_dfs(ctx, i + 1, r - tu, out)
        if tu > lo:
            for g in range(ctx.size):
                ctx.cur[g] -= sgn[g]
    if lo:
        for g in range(ctx.size):
            ctx.cur[g] -= sgn[g] * lo
    ctx.t[i] = 0


def extension_solutions(parent_wt, mult, k, delta_len, wmask, unit_floor=True):
    """Enumerate ways to append one generator row (and columns) to a code.

    Typed twin of the pure kernel; see that docstring for the contract.
    """
    cdef int size = 1 << k
    cdef list support_l = [u for u in range(1, size) if mult[u]]
    cdef int m = len(support_l)
    cdef int top = int(wmask).bit_length()
    cdef list out = []

    cdef ExtCtx ctx
    ctx.size = size
    ctx.m = m
    ctx.top = top
    ctx.support = <int*> malloc(m * sizeof(int))
    ctx.hi_t = <int*> malloc(m * sizeof(int))
    ctx.signs = <signed char*> malloc(m * size * sizeof(signed char))
    ctx.suf_neg = <int*> malloc((m + 1) * size * sizeof(int))
    ctx.suf_pos = <int*> malloc((m + 1) * size * sizeof(int))
    ctx.shi = <int*> malloc((m + 1) * sizeof(int))
    ctx.next_allowed = <short*> malloc((top + 2) * sizeof(short))
    ctx.cur = <int*> malloc(size * sizeof(int))
    ctx.t = <int*> malloc(m * sizeof(int))

    cdef int i, g, u, hi
    cdef short sentinel = <short> (top + 1)
    cdef short run = sentinel
    cdef object wmask_o = wmask
    for i in range(top, -1, -1):
        if (wmask_o >> i) & 1:
            run = <short> i
        ctx.next_allowed[i] = run
    ctx.next_allowed[top + 1] = sentinel

    cdef bint floor_units = bool(unit_floor)
    for i in range(m):
        u = support_l[i]
        ctx.support[i] = u
        hi = <int> mult[u]
        if floor_units and (u & (u - 1)) == 0:
            hi -= 1
        ctx.hi_t[i] = hi
        for g in range(size):
            if _popcount_u64(<unsigned long long> (g & u)) % 2 == 0:
                ctx.signs[i * size + g] = 1
            else:
                ctx.signs[i * size + g] = -1

    for g in range(size):
        ctx.suf_neg[m * size + g] = 0
        ctx.suf_pos[m * size + g] = 0
    ctx.shi[m] = 0
    for i in range(m - 1, -1, -1):
        hi = ctx.hi_t[i]
        ctx.shi[i] = ctx.shi[i + 1] + hi
        for g in range(size):
            if ctx.signs[i * size + g] < 0:
                ctx.suf_neg[i * size + g] = ctx.suf_neg[(i + 1) * size + g] + hi
                ctx.suf_pos[i * size + g] = ctx.suf_pos[(i + 1) * size + g]
            else:
                ctx.suf_neg[i * size + g] = ctx.suf_neg[(i + 1) * size + g]
                ctx.suf_pos[i * size + g] = ctx.suf_pos[(i + 1) * size + g] + hi

    cdef int dl = <int> delta_len
    for g in range(size):
        ctx.cur[g] = <int> parent_wt[g] + dl
    for i in range(m):
        ctx.t[i] = 0

    # the weight of the new row alone is delta_len + sum(t); search each
    # allowed total separately, threading the budget through the DFS
    cdef int w0
    try:
        w0 = ctx.next_allowed[dl] if dl <= top else top + 1
        while w0 <= top and w0 - dl <= ctx.shi[0]:
            if m == 0:
                if _ext_feasible(&ctx, 0, 0):
                    out.append(((), tuple([ctx.cur[g] for g in range(size)])))
            elif _ext_feasible(&ctx, 0, w0 - dl):
                _ext_dfs(&ctx, 0, w0 - dl, out)
            w0 = ctx.next_allowed[w0 + 1] if w0 + 1 <= top else top + 1
    finally:
        free(ctx.support)
        free(ctx.hi_t)
        free(ctx.signs)
        free(ctx.suf_neg)
        free(ctx.suf_pos)
        free(ctx.shi)
        free(ctx.next_allowed)
        free(ctx.cur)
        free(ctx.t)

    # branches were searched per total; restore lexicographic order of the
    # child column-count vector (mult[u] - t_u, ascending per point)
    msup = [mult[u] for u in support_l]
    out.sort(key=lambda sol: tuple([msup[j] - sol[0][j] for j in range(m)]))
    return out
