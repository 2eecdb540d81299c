"""0/1 integer feasibility models for one-row code completions.

Given a code on ``n`` columns, a prospective extra generator row is modelled
by binary variables ``x_1 .. x_n`` — its entries on the existing columns —
while ``added_length`` appended columns are fixed to one.  Requiring every
word that combines the new row with an old word ``c`` to have a weight that
is either exactly 16 or in ``[28, weight_cap]`` yields a pair of two-sided
linear constraints per word, switched by one auxiliary binary ``y_c``.
Optional extras: parity cuts over 4-column sets whose columns sum to zero
(one auxiliary binary ``z_T`` each), cover cuts excluding known supports,
and raw user rows.

The solver is a bespoke propagating depth-first search over the binary
variables (most-constrained row first, deterministic tie-breaking), so a
returned ``infeasible`` is an exhaustion proof, never a timeout.  Because
the model is a relaxation — it cannot see weight classes modulo 4, for
example — every ``feasible`` assignment should be re-checked against
:func:`verify_extension_row` before being trusted as an actual code.

Column coordinates in this module's public data (variable indices, quads,
support sets) are 1-based, matching the usual reading of a printed
generator matrix; bit ``j`` of an integer row mask is still column ``j + 1``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .gf2core import BinaryCode, CodeError
from . import kernels

__all__ = [
    "IlpInstance",
    "LinearRow",
    "SolveResult",
    "ExtensionVerdict",
    "build_ilp",
    "solve",
    "verify_extension_row",
    "dual_quads",
    "kprime_via_parity",
]


# --------------------------------------------------------------------------
# instance model
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearRow:
    """One linear constraint ``lo <= sum(coef * var) <= hi``.

    ``x`` holds ``(coordinate, coef)`` pairs with 1-based coordinates,
    ``y`` holds ``(word, coef)`` pairs keyed by the word's row-combination
    mask, and ``z`` holds ``(quad, coef)`` pairs keyed by the sorted 4-tuple
    of coordinates.  ``None`` bounds are unbounded sides.
    """

    x: tuple[tuple[int, int], ...] = ()
    y: tuple[tuple[int, int], ...] = ()
    z: tuple[tuple[tuple[int, int, int, int], int], ...] = ()
    lo: int | None = None
    hi: int | None = None


@dataclass(frozen=True)
class IlpInstance:
    """A 0/1 feasibility program for one extra generator row.

    ``n`` counts the ``x`` variables (columns of the base code),
    ``added_weight`` is the weight of the completed row, ``weight_cap``
    bounds the weight of any word involving it, and ``added_length`` is the
    number of appended all-one columns.  ``y_words`` and ``z_quads`` declare
    the auxiliary variables; every row references declared variables only,
    and the cardinality row ``sum(x) == added_weight - added_length``
    appears exactly once.
    """

    n: int
    added_weight: int
    weight_cap: int
    added_length: int
    word_weights: tuple[tuple[int, int], ...]  # (message index, weight)
    y_words: tuple[int, ...]
    z_quads: tuple[tuple[int, int, int, int], ...]
    rows: tuple[LinearRow, ...]
    objective: tuple[tuple[int, int], ...] | None = None

    def cardinality_rows(self) -> list[LinearRow]:
        """The rows fixing the total number of ones among the ``x_i``."""
        want = self.added_weight - self.added_length
        full = tuple((i, 1) for i in range(1, self.n + 1))
        return [
            r
            for r in self.rows
            if r.x == full and not r.y and not r.z and r.lo == want and r.hi == want
        ]


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solver run.

    ``status`` is ``"feasible"``, ``"infeasible"``, or ``"timeout"``;
    assignments are populated only when feasible.  ``x`` maps 1-based
    coordinates, ``y`` maps word masks, ``z`` maps quads.
    """

    status: str
    x: dict[int, int] | None = None
    y: dict[int, int] | None = None
    z: dict[tuple[int, int, int, int], int] | None = None
    nodes: int = 0
    objective: int | None = None

    def support(self) -> tuple[int, ...]:
        """1-based coordinates carrying a one, for a feasible result."""
        if self.x is None:
            raise CodeError("no assignment: result is not feasible")
        return tuple(sorted(i for i, v in self.x.items() if v))


@dataclass(frozen=True)
class ExtensionVerdict:
    """Exact weight data of the 2^k words combining a row with a code.

    ``enumerator`` maps weight to count over the combined words only (the
    base code's own words are excluded); the flags state whether every such
    weight is at least 16, divisible by four, and distinct from 20 and 24.
    """

    enumerator: dict[int, int]
    min16: bool
    divisible4: bool
    gap_free: bool
    max_weight: int

    @property
    def ok(self) -> bool:
        return self.min16 and self.divisible4 and self.gap_free


# --------------------------------------------------------------------------
# instance construction
# --------------------------------------------------------------------------


def _word_weights(code: BinaryCode) -> list[int]:
    mult = [0] * (1 << code.k)
    for u, c in code.column_multiplicities().items():
        mult[u] += c
    # include columns equal to zero, which add nothing to any weight
    return kernels.weights_from_multiset(mult, code.k)


def build_ilp(
    code: BinaryCode,
    added_weight: int,
    weight_cap: int,
    added_length: int,
    forced_y: Mapping[int, int] | None = None,
    quads: Iterable[Iterable[int]] | None = None,
    covers: Iterable[Iterable[int]] | None = None,
    extra: Iterable[tuple[Mapping[int, int], int | None, int | None]] | None = None,
    with_objective: bool = False,
) -> IlpInstance:
    """Build the feasibility program for one extra generator row.

    For every nonzero word ``c`` of weight ``b`` the combined word has
    weight ``added_weight + b - 2 * overlap``, so requiring it to be 16 or
    in ``[28, weight_cap]`` gives, with ``s = (added_weight + b) // 2 - 8``
    and the switch variable ``y_c``::

        sum(x_i : c_i = 1) + 6 * y_c                   <= s
        sum(x_i : c_i = 1) + (weight_cap // 2 - 8) * y_c >= s

    plus the cardinality row ``sum(x) == added_weight - added_length``.
    ``forced_y`` maps a word weight to a forced ``y`` value for all words
    of that weight.  ``quads`` adds ``sum(x_i : i in T) + 2 z_T == 2`` per
    4-set ``T``; ``covers`` adds ``sum(x_i : i in E) <= len(E) - 1`` per
    set ``E``; ``extra`` adds raw ``(coeffs, lo, hi)`` rows over ``x``.
    """
    if added_weight < 16:
        raise CodeError(f"added row weight {added_weight} is below 16")
    if added_weight % 4:
        raise CodeError(f"added row weight {added_weight} is not divisible by 4")
    if added_length < 1:
        raise CodeError(f"added length {added_length} must be positive")
    if added_length >= added_weight:
        raise CodeError(
            f"added length {added_length} must be below the row weight {added_weight}"
        )
    if weight_cap < added_weight:
        raise CodeError(
            f"weight cap {weight_cap} is below the added row weight {added_weight}"
        )
    if weight_cap % 2:
        raise CodeError(f"weight cap {weight_cap} must be even")

    n = code.n
    weights = _word_weights(code)
    if any(w % 2 for w in weights):
        raise CodeError("base code must have even word weights")

    rows: list[LinearRow] = []
    rows.append(
        LinearRow(
            x=tuple((i, 1) for i in range(1, n + 1)),
            lo=added_weight - added_length,
            hi=added_weight - added_length,
        )
    )

    forced = dict(forced_y or {})
    for v in forced.values():
        if v not in (0, 1):
            raise CodeError(f"forced y value {v} is not binary")

    up = weight_cap // 2 - 8
    words = code.words()
    y_words: list[int] = []
    word_weight_pairs: list[tuple[int, int]] = []
    for g in range(1, 1 << code.k):
        b = weights[g]
        word_weight_pairs.append((g, b))
        s = (added_weight + b) // 2 - 8
        supp = tuple(
            (j + 1, 1) for j in range(n) if (words[g] >> j) & 1
        )
        y_words.append(g)
        rows.append(LinearRow(x=supp, y=((g, 6),), hi=s))
        rows.append(LinearRow(x=supp, y=((g, up),), lo=s))
        if b in forced:
            rows.append(LinearRow(y=((g, 1),), lo=forced[b], hi=forced[b]))

    z_quads: list[tuple[int, int, int, int]] = []
    if quads is not None:
        for q in sorted(tuple(sorted(t)) for t in quads):
            if len(q) != 4 or not all(1 <= i <= n for i in q):
                raise CodeError(f"quad {q} is not a 4-set of coordinates")
            q4 = (q[0], q[1], q[2], q[3])
            z_quads.append(q4)
            rows.append(
                LinearRow(x=tuple((i, 1) for i in q4), z=((q4, 2),), lo=2, hi=2)
            )

    if covers is not None:
        for e in sorted(tuple(sorted(s)) for s in covers):
            if not all(1 <= i <= n for i in e):
                raise CodeError(f"cover {e} has coordinates outside 1..{n}")
            rows.append(LinearRow(x=tuple((i, 1) for i in e), hi=len(e) - 1))

    if extra is not None:
        for coeffs, lo, hi in extra:
            xs = tuple(sorted((int(i), int(a)) for i, a in coeffs.items()))
            if not all(1 <= i <= n for i, _ in xs):
                raise CodeError("extra row references coordinates outside 1..n")
            rows.append(LinearRow(x=xs, lo=lo, hi=hi))

    objective = tuple((i, i) for i in range(1, n + 1)) if with_objective else None
    return IlpInstance(
        n=n,
        added_weight=added_weight,
        weight_cap=weight_cap,
        added_length=added_length,
        word_weights=tuple(word_weight_pairs),
        y_words=tuple(y_words),
        z_quads=tuple(z_quads),
        rows=tuple(rows),
        objective=objective,
    )


# --------------------------------------------------------------------------
# solver
# --------------------------------------------------------------------------


class _Timeout(Exception):
    pass


_NA_NONE = 999  # next-allowed sentinel: no allowed value at or above the index


class _CompiledInstance:
    """Instance compiled to unit-coefficient support rows with allowed sets.

    Every row reduces to "the number of selected columns inside a fixed
    support lies in an allowed set of integers":

    * a codeword constraint pair with threshold ``s`` and free ``y`` allows
      overlaps in ``{s} ∪ [s - up, s - 6]`` — the isolated point is the
      ``y = 0`` branch, the interval the ``y = 1`` branch, and an empty
      interval (``up < 6``) leaves only the point;
    * quad parity rows allow ``{0, 2}``;
    * cover and extra rows allow their integer windows.

    Rows sharing a support are merged by intersecting their allowed sets,
    so contradictory equalities over the same columns refute at compile
    time.  The full-support cardinality row becomes the selection budget.
    ``y`` variables disappear entirely: they are determined by the final
    overlap (``y = 0`` exactly on the point), and get re-derived when a
    solution is assembled.
    """

    def __init__(self, inst: IlpInstance):
        n = inst.n
        self.n = n
        value_mask = (1 << (n + 1)) - 1
        up = inst.weight_cap // 2 - 8

        forced: dict[int, int] = {}
        upper: dict[int, tuple[int, int]] = {}  # g -> (support mask, s)
        generic: list[tuple[int, int]] = []  # (support mask, allowed mask)
        for row in inst.rows:
            if row.y and not row.x:
                (g, coef), = row.y
                if coef == 1 and row.lo == row.hi and row.lo in (0, 1):
                    forced[g] = row.lo
                    continue
                raise CodeError("unsupported y-only row shape")
            supp = 0
            for c, a in row.x:
                if a != 1:
                    raise CodeError("rows must use unit x coefficients")
                supp |= 1 << (c - 1)
            if row.y:
                (g, coef), = row.y
                if coef == 6 and row.hi is not None:
                    upper[g] = (supp, row.hi)
                continue  # the paired lower row carries the same data
            if row.z:
                generic.append((supp, 0b101))
                continue
            width = supp.bit_count()
            lo = 0 if row.lo is None else max(0, row.lo)
            hi = width if row.hi is None else min(width, row.hi)
            allowed = ((1 << (hi - lo + 1)) - 1) << lo if lo <= hi else 0
            generic.append((supp, allowed & value_mask))

        supports: list[int] = []
        allowed_sets: list[int] = []
        index_of: dict[int, int] = {}
        self.word_rows: list[tuple[int, int, int]] = []  # (g, row index, s)
        # keep codeword rows grouped by weight so per-class counting
        # identities can run on contiguous slices
        by_weight = sorted(
            inst.y_words, key=lambda g: (upper[g][0].bit_count() if g in upper else -1, g)
        )
        for g in by_weight:
            if g not in upper:
                raise CodeError(f"word {g} lacks its constraint pair")
            supp, s = upper[g]
            point = (1 << s) if 0 <= s <= n else 0
            lo1, hi1 = s - up, s - 6
            ival = 0
            if lo1 <= hi1 and hi1 >= 0:
                lo1 = max(lo1, 0)
                ival = ((1 << (hi1 - lo1 + 1)) - 1) << lo1
            fy = forced.get(g)
            allowed = point if fy == 0 else ival if fy == 1 else (point | ival)
            index_of[supp] = len(supports)
            supports.append(supp)
            allowed_sets.append(allowed & value_mask)
            self.word_rows.append((g, index_of[supp], s))
        self.n_words = len(supports)
        self.forced = forced

        full = (1 << n) - 1
        budget_mask: int | None = None
        for supp, allowed in generic:
            if supp == full:
                budget_mask = (
                    allowed if budget_mask is None else budget_mask & allowed
                )
                continue
            if supp in index_of:
                allowed_sets[index_of[supp]] &= allowed
            else:
                index_of[supp] = len(supports)
                supports.append(supp)
                allowed_sets.append(allowed)
        if budget_mask is None:
            raise CodeError("instance lacks its cardinality row")
        self.budgets = [t for t in range(n + 1) if (budget_mask >> t) & 1]
        self.root_bad = any(a == 0 for a in allowed_sets)
        self.supports = supports

        # next/previous allowed value per (row, partial-sum) for O(1) window
        # membership tests, flattened for fast take()
        tab_w = n + 2
        rows = len(supports)
        self.rows = rows
        na = np.full((rows, tab_w), _NA_NONE, dtype=np.int16)
        pa = np.full((rows, tab_w), -1, dtype=np.int16)
        for r_i, a in enumerate(allowed_sets):
            carry = _NA_NONE
            for v in range(n, -1, -1):
                if (a >> v) & 1:
                    carry = v
                na[r_i, v] = carry
            carry = -1
            for v in range(n + 1):
                if (a >> v) & 1:
                    carry = v
                pa[r_i, v] = carry
            pa[r_i, n + 1] = carry
        self.na_flat = na.ravel()
        self.pa_flat = pa.ravel()
        self.base = np.arange(rows, dtype=np.int32) * tab_w

        # column-major incidence for incremental overlap/slack updates
        Mt = np.zeros((n, rows), dtype=np.int16)
        for r_i, supp in enumerate(supports):
            v = supp
            while v:
                b = v & -v
                Mt[b.bit_length() - 1, r_i] = 1
                v ^= b
        self.Mt = Mt
        self.slack0 = Mt.sum(axis=0, dtype=np.int64).astype(np.int16)

        # counting identities over the codeword rows: whenever every column
        # meets the same number of supports of one weight class, the sum of
        # that class's final overlaps is fixed by the selection size alone;
        # when every column pair meets a constant number of all codeword
        # supports, so is the sum of squared overlaps
        self.m1_groups: list[tuple[int, int, int]] = []  # (start, end, inc)
        self.m2_consts: tuple[int, int] | None = None
        ww = self.n_words
        if ww:
            start = 0
            sizes = [supports[i].bit_count() for i in range(ww)]
            while start < ww:
                end = start
                while end < ww and sizes[end] == sizes[start]:
                    end += 1
                inc = Mt[:, start:end].sum(axis=1, dtype=np.int64)
                if int(inc.min()) == int(inc.max()):
                    self.m1_groups.append((start, end, int(inc[0])))
                start = end
            mw = Mt[:, :ww].astype(np.int64)
            inc_all = mw.sum(axis=1)
            if int(inc_all.min()) == int(inc_all.max()):
                pair = mw @ mw.T
                off = pair[~np.eye(n, dtype=bool)]
                if off.size and int(off.min()) == int(off.max()):
                    self.m2_consts = (int(pair[0, 0]), int(off[0]))


class _SpanCascade:
    """Aggregation-first search for pure codeword-window instances.

    Applicable when the rows are exactly the codeword constraint pairs of a
    full ``k``-dimensional span (supports closed under the message-index
    XOR) plus the cardinality row.  Columns are grouped by their syndrome
    against the first ``l`` generators, and the search decides *how many*
    selected columns fall into each group, refining one generator per
    level.  After level ``l`` the overlap of every word in the span of the
    first ``l`` generators is exact, so whole-subcode windows prune the
    aggregated counts long before single columns are fixed; every other
    word still contributes an interval window computed from its column
    counts inside each group.  A leaf of the last level pins every word's
    overlap exactly, any within-group column choice is then equivalent,
    and the lexicographically smallest is returned.  Exhausting the tree
    is a completeness proof, exactly as for the flat column search.
    """

    @staticmethod
    def build(inst: IlpInstance, comp: _CompiledInstance) -> "_SpanCascade | None":
        ww = comp.n_words
        if comp.rows != ww or ww < 3:
            return None
        k = (ww + 1).bit_length() - 1
        if (1 << k) != ww + 1 or k > 14:
            return None
        supp_of = {g: comp.supports[idx] for g, idx, _ in comp.word_rows}
        if len(supp_of) != ww or any(not 1 <= g <= ww for g in supp_of):
            return None
        for g in range(3, ww + 1):
            low = g & -g
            rest = g ^ low
            if rest and supp_of[g] != supp_of[rest] ^ supp_of[low]:
                return None
        return _SpanCascade(comp, k, supp_of)

    def __init__(self, comp: _CompiledInstance, k: int, supp_of: dict[int, int]):
        self.comp = comp
        self.k = k
        n = comp.n
        points = [0] * n
        for i in range(k):
            s = supp_of[1 << i]
            for j in range(n):
                if (s >> j) & 1:
                    points[j] |= 1 << i
        self.points = np.asarray(points, dtype=np.int64)
        order_g = np.asarray([g for g, _, _ in comp.word_rows], dtype=np.int64)
        # parity of <word, column point> for every (word row, column)
        v = order_g[:, None] & self.points[None, :]
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        self.P = (v & 1).astype(np.int16)
        self.nodes = 0

    def search(self, total: int, deadline: float | None) -> int | None:
        """Selection mask for one cardinality, or None when exhausted."""
        comp = self.comp
        W = comp.n_words
        na_flat, pa_flat, base = comp.na_flat, comp.pa_flat, comp.base
        m1 = [(lo, hi, inc * total) for lo, hi, inc in comp.m1_groups]
        m2 = None
        if comp.m2_consts is not None:
            c1, c2 = comp.m2_consts
            m2 = c1 * total + c2 * total * (total - 1)
        P = self.P
        points = self.points
        k = self.k

        def run(lvl: int, cells: list[np.ndarray], counts: list[int]) -> int | None:
            if lvl == k:
                mask = 0
                for cols, t in zip(cells, counts):
                    for j in cols[:t].tolist():
                        mask |= 1 << j
                return mask
            C = len(cells)
            c0s: list[np.ndarray] = []
            c1s: list[np.ndarray] = []
            alo: list[int] = []
            ahi: list[int] = []
            for cols, t in zip(cells, counts):
                one = (points[cols] >> lvl) & 1
                c0, c1 = cols[one == 0], cols[one == 1]
                c0s.append(c0)
                c1s.append(c1)
                alo.append(max(0, t - len(c0)))
                ahi.append(min(t, len(c1)))
            # per-word column counts inside each half of each group
            O1 = np.empty((C, W), dtype=np.int32)
            O0 = np.empty((C, W), dtype=np.int32)
            for i in range(C):
                O1[i] = P[:, c1s[i]].sum(axis=1, dtype=np.int32) if len(c1s[i]) else 0
                O0[i] = P[:, c0s[i]].sum(axis=1, dtype=np.int32) if len(c0s[i]) else 0
            Z1 = np.asarray([len(c) for c in c1s], dtype=np.int32)[:, None] - O1
            Z0 = np.asarray([len(c) for c in c0s], dtype=np.int32)[:, None] - O0
            # forced splits first, then the largest counts
            order = sorted(range(C), key=lambda i: (ahi[i] - alo[i], -counts[i], i))
            # extreme word contributions of an undecided group over its whole
            # split range (the bounds are convex/concave in the split, so the
            # extremes sit at the clamped breakpoint)
            pre_lo = np.empty((C, W), dtype=np.int32)
            pre_hi = np.empty((C, W), dtype=np.int32)
            for i in range(C):
                t = counts[i]
                am = np.clip(Z1[i], alo[i], ahi[i])
                pre_lo[i] = np.maximum(am - Z1[i], 0) + np.maximum(t - am - Z0[i], 0)
                am = np.clip(O1[i], alo[i], ahi[i])
                pre_hi[i] = np.minimum(am, O1[i]) + np.minimum(t - am, O0[i])
            suf_lo = np.zeros((C + 1, W), dtype=np.int32)
            suf_hi = np.zeros((C + 1, W), dtype=np.int32)
            for d in range(C - 1, -1, -1):
                suf_lo[d] = suf_lo[d + 1] + pre_lo[order[d]]
                suf_hi[d] = suf_hi[d + 1] + pre_hi[order[d]]
            avals = [0] * C

            def inner(d: int, cur_lo: np.ndarray, cur_hi: np.ndarray) -> int | None:
                self.nodes += 1
                if (
                    deadline is not None
                    and not (self.nodes & 63)
                    and time.monotonic() > deadline
                ):
                    raise _Timeout
                wlo = cur_lo + suf_lo[d]
                whi = cur_hi + suf_hi[d]
                na = na_flat.take(base + wlo)
                if np.any(na > whi):
                    return None
                pa = pa_flat.take(base + whi)
                for g_lo, g_hi, tgt in m1:
                    if not (
                        int(na[g_lo:g_hi].sum(dtype=np.int64))
                        <= tgt
                        <= int(pa[g_lo:g_hi].sum(dtype=np.int64))
                    ):
                        return None
                if m2 is not None:
                    naw = na.astype(np.int64)
                    paw = pa.astype(np.int64)
                    if not int(naw.dot(naw)) <= m2 <= int(paw.dot(paw)):
                        return None
                if d == C:
                    nxt_cells: list[np.ndarray] = []
                    nxt_counts: list[int] = []
                    for i in range(C):
                        a = avals[i]
                        if len(c0s[i]):
                            nxt_cells.append(c0s[i])
                            nxt_counts.append(counts[i] - a)
                        if len(c1s[i]):
                            nxt_cells.append(c1s[i])
                            nxt_counts.append(a)
                    return run(lvl + 1, nxt_cells, nxt_counts)
                i = order[d]
                t = counts[i]
                cap1 = len(c1s[i])
                cap = cap1 + len(c0s[i])
                guess = (t * cap1 + cap // 2) // cap
                vals = sorted(range(alo[i], ahi[i] + 1), key=lambda a: (abs(a - guess), a))
                for a in vals:
                    avals[i] = a
                    con_lo = np.maximum(a - Z1[i], 0) + np.maximum((t - a) - Z0[i], 0)
                    con_hi = np.minimum(a, O1[i]) + np.minimum(t - a, O0[i])
                    got = inner(d + 1, cur_lo + con_lo, cur_hi + con_hi)
                    if got is not None:
                        return got
                return None

            zeros = np.zeros(W, dtype=np.int32)
            return inner(0, zeros, zeros.copy())

        return run(0, [np.arange(self.comp.n)], [total])


def solve(
    inst: IlpInstance,
    time_budget: float | None = None,
    minimize: bool = False,
) -> SolveResult:
    """Feasibility (or objective-minimising) search over an instance.

    Depth-first search over the column variables with running per-row
    bounds: at every node each row's final overlap is confined to an exact
    interval coupling the row's remaining support with the remaining
    selection budget, and the node dies unless every such interval meets the
    row's allowed set (a jump-table lookup).  Global counting identities on
    the codeword overlaps (first and second moment, available whenever the
    column/pair incidences are constant) prune across rows.  Branching is
    deterministic: the lowest free column of the tightest still-active row,
    trying the value that moves that row toward its nearest allowed overlap
    first.  ``infeasible`` means the whole tree was exhausted; hitting
    ``time_budget`` yields ``timeout`` instead.  ``minimize`` requires the
    instance to carry an objective and returns a feasible result attaining
    the minimal objective value.

    Instances whose rows are exactly the codeword windows of a full span
    plus the cardinality row are searched by syndrome-group aggregation
    (:class:`_SpanCascade`) instead of column by column; verdicts carry the
    same meaning.
    """
    if minimize and inst.objective is None:
        raise CodeError("instance has no objective to minimize")
    comp = _CompiledInstance(inst)
    n = comp.n
    deadline = None if time_budget is None else time.monotonic() + float(time_budget)
    nodes = 0

    if comp.root_bad or not comp.budgets:
        return SolveResult(status="infeasible", nodes=0)

    coef = [0] * (n + 1)
    if inst.objective:
        for c, a in inst.objective:
            if a < 0:
                raise CodeError("objective coefficients must be nonnegative")
            coef[c] = a

    if not minimize:
        casc = _SpanCascade.build(inst, comp)
        if casc is not None:
            try:
                for t in comp.budgets:
                    got = casc.search(t, deadline)
                    if got is not None:
                        return _audit_and_assemble(inst, got, casc.nodes)
            except _Timeout:
                return SolveResult(status="timeout", nodes=casc.nodes)
            return SolveResult(status="infeasible", nodes=casc.nodes)

    ww = comp.n_words
    na_flat, pa_flat, base = comp.na_flat, comp.pa_flat, comp.base
    mt = comp.Mt
    supports = comp.supports
    nplus1 = np.int16(n + 1)
    zero16 = np.int16(0)
    big_width = np.int16(_NA_NONE)

    best: tuple[int, int] | None = None  # (objective value, selection mask)
    found: int | None = None
    m1_targets: list[tuple[int, int, int]] = []
    m2_target: int | None = None

    def fill_lowest(mask: int, count: int) -> int:
        """The ``count`` lowest free columns, preferring small objective."""
        if count == 0:
            return 0
        idx = []
        v = mask
        while v:
            b = v & -v
            idx.append(b.bit_length() - 1)
            v ^= b
        idx.sort(key=lambda j: (coef[j + 1], j))
        out = 0
        for j in idx[:count]:
            out |= 1 << j
        return out

    def record(mask: int, val: int) -> bool:
        nonlocal best, found
        if minimize:
            if best is None or val < best[0]:
                best = (val, mask)
            return False  # exhaust the tree for optimality
        found = mask
        return True

    def dfs(
        chosen: int,
        free_mask: int,
        free_cnt: int,
        r: int,
        cur: np.ndarray,
        slack: np.ndarray,
        acc: int,
    ) -> bool:
        nonlocal nodes
        nodes += 1
        if (
            deadline is not None
            and not (nodes & 127)
            and time.monotonic() > deadline
        ):
            raise _Timeout
        # reachable final-overlap window per row, budget-coupled:
        # the r remaining ones can avoid a row only through its non-support
        # free columns, and can grow it only on its support columns
        lo = cur + np.maximum(np.int16(r) - (np.int16(free_cnt) - slack), zero16)
        np.minimum(lo, nplus1, out=lo)
        hi = cur + np.minimum(slack, np.int16(r))
        na = na_flat.take(base + lo)
        if np.any(na > hi):
            return False
        if m1_targets or m2_target is not None:
            pa = pa_flat.take(base + hi)
            for g_lo, g_hi, tgt in m1_targets:
                if not (
                    int(na[g_lo:g_hi].sum(dtype=np.int64))
                    <= tgt
                    <= int(pa[g_lo:g_hi].sum(dtype=np.int64))
                ):
                    return False
            if m2_target is not None:
                naw = na[:ww].astype(np.int64)
                paw = pa[:ww].astype(np.int64)
                if not (
                    int(naw.dot(naw)) <= m2_target <= int(paw.dot(paw))
                ):
                    return False
        if minimize and best is not None and acc >= best[0]:
            return False
        if r == 0:
            # the window check above pinned every row to its current overlap
            return record(chosen, acc)
        active = slack > 0
        if not active.any():
            # every row is frozen and satisfied; distribute the remaining
            # ones over the cheapest free columns
            fill = fill_lowest(free_mask, r)
            extra = 0
            v = fill
            while v:
                b = v & -v
                extra += coef[b.bit_length()]
                v ^= b
            return record(chosen | fill, acc + extra)
        width = np.where(active, hi - na, big_width)
        ti = int(np.argmin(width))
        sf = supports[ti] & free_mask
        j = (sf & -sf).bit_length() - 1
        bit = 1 << j
        col = mt[j]
        slack2 = slack - col
        free2 = free_mask & ~bit
        one_first = bool(na[ti] > cur[ti])
        for val in (1, 0) if one_first else (0, 1):
            if val:
                if dfs(
                    chosen | bit,
                    free2,
                    free_cnt - 1,
                    r - 1,
                    cur + col,
                    slack2,
                    acc + coef[j + 1],
                ):
                    return True
            else:
                if free_cnt - 1 >= r and dfs(
                    chosen, free2, free_cnt - 1, r, cur, slack2, acc
                ):
                    return True
        return False

    try:
        for t in comp.budgets:
            m1_targets = [(g_lo, g_hi, inc * t) for g_lo, g_hi, inc in comp.m1_groups]
            m2_target = None
            if comp.m2_consts is not None:
                c1, c2 = comp.m2_consts
                m2_target = c1 * t + c2 * t * (t - 1)
            cur0 = np.zeros(comp.rows, dtype=np.int16)
            if dfs(0, (1 << n) - 1, n, t, cur0, comp.slack0.copy(), 0):
                break
    except _Timeout:
        return SolveResult(status="timeout", nodes=nodes)

    if minimize and best is not None:
        return _audit_and_assemble(inst, best[1], nodes)
    if found is not None:
        return _audit_and_assemble(inst, found, nodes)
    return SolveResult(status="infeasible", nodes=nodes)


def _audit_and_assemble(inst: IlpInstance, chosen: int, nodes: int) -> SolveResult:
    """Re-derive ``y``/``z`` from a selection mask and re-check every row."""
    n = inst.n
    x = {i: (chosen >> (i - 1)) & 1 for i in range(1, n + 1)}
    forced: dict[int, int] = {}
    upper: dict[int, tuple[int, int]] = {}
    for row in inst.rows:
        if row.y and not row.x:
            (g, _), = row.y
            forced[g] = row.lo
        elif row.y:
            (g, coef), = row.y
            if coef == 6 and row.hi is not None:
                supp = 0
                for c, _ in row.x:
                    supp |= 1 << (c - 1)
                upper[g] = (supp, row.hi)
    y = {}
    for g in inst.y_words:
        supp, s = upper[g]
        alpha = (supp & chosen).bit_count()
        y[g] = forced.get(g, 0 if alpha == s else 1)
    z = {}
    for q in inst.z_quads:
        ssum = sum(x[c] for c in q)
        if ssum not in (0, 2):
            raise CodeError("internal: solver output violates a quad parity row")
        z[q] = (2 - ssum) // 2
    for row in inst.rows:
        val = sum(a * x[c] for c, a in row.x)
        val += sum(a * y[g] for g, a in row.y)
        val += sum(a * z[q] for q, a in row.z)
        if (row.lo is not None and val < row.lo) or (
            row.hi is not None and val > row.hi
        ):
            raise CodeError("internal: solver output violates an instance row")
    obj = None
    if inst.objective:
        obj = sum(a * x[c] for c, a in inst.objective)
    return SolveResult(status="feasible", x=x, y=y, z=z, nodes=nodes, objective=obj)


# --------------------------------------------------------------------------
# exact verification and constructions
# --------------------------------------------------------------------------


def verify_extension_row(
    code: BinaryCode, row: str, added_length: int
) -> ExtensionVerdict:
    """Exact weight audit of one candidate extra generator row.

    ``row`` is a bit-string over ``code.n + added_length`` columns (leftmost
    character = column 1) whose last ``added_length`` characters must be
    one.  Enumerates all ``2**k`` words combining the row with the code and
    returns their weight enumerator together with the acceptance flags.
    """
    total = code.n + added_length
    if len(row) != total:
        raise CodeError(f"row has {len(row)} columns, expected {total}")
    if any(ch not in "01" for ch in row):
        raise CodeError("row must consist of 0/1 characters")
    if any(ch != "1" for ch in row[code.n :]):
        raise CodeError(f"the appended {added_length} columns must all be one")
    mask = 0
    for j, ch in enumerate(row):
        if ch == "1":
            mask |= 1 << j
    counts: dict[int, int] = {}
    for w in code.words():
        wt = (w ^ mask).bit_count()
        counts[wt] = counts.get(wt, 0) + 1
    assert sum(counts.values()) == 1 << code.k
    enum = dict(sorted(counts.items()))
    weights = list(enum)
    return ExtensionVerdict(
        enumerator=enum,
        min16=weights[0] >= 16,
        divisible4=all(w % 4 == 0 for w in weights),
        gap_free=20 not in enum and 24 not in enum,
        max_weight=weights[-1],
    )


def search_extension_row(
    code: BinaryCode,
    added_weight: int,
    weight_cap: int,
    added_length: int,
    forced_y: Mapping[int, int] | None = None,
    quads: Iterable[Iterable[int]] | None = None,
    covers: Iterable[Iterable[int]] | None = None,
    time_budget: float | None = None,
    max_rejects: int = 64,
) -> tuple[SolveResult, ExtensionVerdict | None, str | None]:
    """Solve for an extension row and audit it exactly.

    The program only relaxes the exact weight conditions (the mod-4 part in
    particular), so a feasible selection can still fail the audit.  Each
    audited failure is excluded by a row capping its exact support and the
    search continues, up to ``max_rejects`` exclusions.  Returns the last
    solver result plus, when feasible, the audit verdict and the row as a
    bit-string; a non-``ok`` verdict means every budgeted attempt produced
    audit failures.
    """
    deadline = None if time_budget is None else time.monotonic() + float(time_budget)
    extra: list[tuple[Mapping[int, int], int | None, int | None]] = []
    res = SolveResult(status="infeasible")
    total_nodes = 0
    for _ in range(max_rejects + 1):
        inst = build_ilp(
            code,
            added_weight,
            weight_cap,
            added_length,
            forced_y=forced_y,
            quads=quads,
            covers=covers,
            extra=extra,
        )
        remaining = None if deadline is None else deadline - time.monotonic()
        if remaining is not None and remaining <= 0:
            return SolveResult(status="timeout", nodes=total_nodes), None, None
        res = solve(inst, time_budget=remaining)
        total_nodes += res.nodes
        res = SolveResult(
            status=res.status, x=res.x, y=res.y, z=res.z,
            nodes=total_nodes, objective=res.objective,
        )
        if res.status != "feasible":
            return res, None, None
        sup = set(res.support())
        row = "".join("1" if i in sup else "0" for i in range(1, code.n + 1))
        row += "1" * added_length
        verdict = verify_extension_row(code, row, added_length)
        if verdict.ok:
            return res, verdict, row
        extra.append(({i: 1 for i in sup}, None, len(sup) - 1))
    return res, verdict, row


def dual_quads(code: BinaryCode) -> set[frozenset[int]]:
    """All 4-sets of columns that sum to zero (1-based coordinates).

    These are the supports of the weight-4 words of the dual code.  Any
    4-set with zero column sum splits into two pairs of equal pair-sums, so
    grouping column pairs by their sum finds every quad.
    """
    cols = code.columns()
    n = code.n
    by_xor: dict[int, list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            by_xor.setdefault(cols[i] ^ cols[j], []).append((i, j))
    quads: set[frozenset[int]] = set()
    for pairs in by_xor.values():
        for a in range(len(pairs)):
            i, j = pairs[a]
            for b in range(a + 1, len(pairs)):
                k, l = pairs[b]
                if k != i and k != j and l != i and l != j:
                    quads.add(frozenset((i + 1, j + 1, k + 1, l + 1)))
    return quads


def _kernel_basis(rows: Sequence[int], n: int) -> list[int]:
    """Basis of ``{v : parity(v & r) == 0 for all r}`` inside GF(2)^n."""
    mat = [r for r in rows if r]
    # forward eliminate to row echelon form with recorded pivot columns
    echelon: list[tuple[int, int]] = []  # (pivot column, row)
    for r in mat:
        for col, row in echelon:
            if (r >> col) & 1:
                r ^= row
        if r:
            echelon.append((r.bit_length() - 1, r))
    echelon.sort(reverse=True)
    # back-substitution to reduced form
    for idx in range(len(echelon)):
        col, row = echelon[idx]
        for jdx in range(idx):
            cj, rj = echelon[jdx]
            if (rj >> col) & 1:
                echelon[jdx] = (cj, rj ^ row)
    pivot_cols = [col for col, _ in echelon]
    pivot_set = set(pivot_cols)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        v = 1 << j
        for col, row in echelon:
            if (row >> j) & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def kprime_via_parity(code: BinaryCode) -> BinaryCode:
    """Rebuild the unique parity-extended code from the quad structure.

    Spans the weight-4 dual supports, takes the orthogonal space, picks the
    unique intermediate code one dimension above ``code`` whose words all
    have weight 0 or 3 modulo 4, and appends a parity column.  Raises when
    the intermediate selection is not unique (precondition violation).
    """
    quads = dual_quads(code)
    if not quads:
        raise CodeError("code has no weight-4 dual words")
    quad_masks = []
    for q in quads:
        m = 0
        for c in q:
            m |= 1 << (c - 1)
        quad_masks.append(m)
    quad_masks.sort()
    for r in code.rows:
        if any((r & qm).bit_count() & 1 for qm in quad_masks):
            raise CodeError("code is not orthogonal to its weight-4 dual words")
    kernel = _kernel_basis(quad_masks, code.n)
    # extend the code's rows to a basis of the kernel space
    pivots: list[tuple[int, int]] = []
    def _reduce(v: int) -> int:
        for col, row in pivots:
            if (v >> col) & 1:
                v ^= row
        return v
    for r in code.rows:
        red = _reduce(r)
        assert red, "code rows must be independent"
        pivots.append((red.bit_length() - 1, red))
        pivots.sort(reverse=True)
    extras: list[int] = []
    for v in kernel:
        red = _reduce(v)
        if red:
            pivots.append((red.bit_length() - 1, red))
            pivots.sort(reverse=True)
            extras.append(v)
    words = code.words()
    candidates: list[int] = []
    for mask in range(1, 1 << len(extras)):
        rep = 0
        for i in range(len(extras)):
            if (mask >> i) & 1:
                rep ^= extras[i]
        residues = {(rep ^ w).bit_count() % 4 for w in words}
        if residues <= {0, 3}:
            candidates.append(rep)
    if len(candidates) != 1:
        raise CodeError(
            f"intermediate code selection not unique: {len(candidates)} candidates"
        )
    rep = candidates[0]
    out_rows = []
    for r in (*code.rows, rep):
        parity = r.bit_count() & 1
        out_rows.append(r | (parity << code.n))
    return BinaryCode(tuple(out_rows), code.n + 1)
