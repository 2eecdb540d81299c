"""One-step dimension extension under divisibility and weight-window rules.

A child code of dimension k+1 is obtained from a k-dimensional parent by
assigning each parent column a bit in one new generator row and appending
columns supported only on that row.  The enumeration below emits every
feasible assignment exactly once, in a deterministic order, pruning by the
requirement that all child weights be multiples of Δ inside [aΔ, bΔ].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from . import kernels
from .gf2core import BinaryCode, CodeError


@dataclass(frozen=True)
class ExtensionProblem:
    """Parameters of one extension step.

    ``parent`` must be in systematic form with no zero columns (its ambient
    length is the effective length n); ``target_length`` is the child's
    column count n′ ≥ n+1; weights of every nonzero child word must be
    multiples of ``delta`` within [a·delta, b·delta] and, when
    ``allowed_weights`` is given, inside that set as well.
    """

    parent: BinaryCode
    target_length: int
    delta: int
    a: int
    b: int
    allowed_weights: frozenset[int] | None = None

    def __post_init__(self) -> None:
        p = self.parent
        if self.target_length < p.n + 1:
            raise CodeError("child must be strictly longer than the parent")
        if p.effective_length() != p.n:
            raise CodeError("parent has zero columns; pass its effective form")
        if self.delta < 1 or self.a < 1 or self.b < self.a:
            raise CodeError("need delta >= 1 and 1 <= a <= b")
        for w in p.weight_enumerator():
            if w == 0:
                continue
            if w % self.delta or not self.a * self.delta <= w <= self.b * self.delta:
                raise CodeError(f"parent weight {w} outside the window")
            if self.allowed_weights is not None and w not in self.allowed_weights:
                raise CodeError(f"parent weight {w} not in allowed set")

    def window_weights(self) -> list[int]:
        """Admissible nonzero child weights, ascending."""
        ws = [m * self.delta for m in range(self.a, self.b + 1)]
        if self.allowed_weights is not None:
            ws = [w for w in ws if w in self.allowed_weights]
        return ws


@dataclass
class ExtensionSolution:
    """One feasible column-count assignment.

    ``x[v]`` counts child columns equal to ``v`` in GF(2)^{k+1} (bit k is
    the new row); zero entries are omitted.  ``y[h]`` is the weight slack
    ``(wt(word_h) − aΔ)/Δ ∈ [0, b−a]`` of the child word with row
    combination ``h``, for every nonzero ``h``.
    """

    x: dict[int, int] = field(default_factory=dict)
    y: dict[int, int] = field(default_factory=dict)


def enumerate_extensions(problem: ExtensionProblem) -> Iterator[ExtensionSolution]:
    """All children of the parent at the target length, exactly once each.

    Deterministic: solutions come out in ascending lexicographic order of
    the full column-count vector (points ordered by integer value).  Each
    unit point of the child keeps at least one column, which discards only
    alternative generator rows for the same child code, never a child code.
    """
    p = problem.parent
    k = p.k
    for i, r in enumerate(p.rows):
        if r & ((1 << k) - 1) != 1 << i:
            raise CodeError("parent is not in systematic form")
    mult_map = p.column_multiplicities()
    mult = [0] * (1 << k)
    for u, c in mult_map.items():
        mult[u] = c
    words = p.words()
    parent_wt = [w.bit_count() for w in words]
    wmask = 0
    for w in problem.window_weights():
        wmask |= 1 << w
    delta_len = problem.target_length - p.n
    lo, hi = problem.a * problem.delta, problem.b * problem.delta

    newbit = 1 << k
    support = [u for u in range(1, 1 << k) if mult[u]]
    for t, new_wt in kernels.extension_solutions(
        parent_wt, mult, k, delta_len, wmask, True
    ):
        x: dict[int, int] = {}
        for u, tu in zip(support, t):
            if mult[u] - tu:
                x[u] = mult[u] - tu
            if tu:
                x[u | newbit] = tu
        x[newbit] = delta_len
        y: dict[int, int] = {}
        for h in range(1, 1 << (k + 1)):
            w = new_wt[h ^ newbit] if h & newbit else parent_wt[h]
            if h & newbit:
                q, rem = divmod(w - lo, problem.delta)
                if rem or not 0 <= q <= problem.b - problem.a:
                    raise CodeError("enumerated child violates the window")
            else:
                # constraints on words without the new row hold automatically
                assert w % problem.delta == 0 and lo <= w <= hi
                q = (w - lo) // problem.delta
            y[h] = q
        yield ExtensionSolution(x=x, y=y)


def realize(parent: BinaryCode, sol: ExtensionSolution) -> BinaryCode:
    """Build the child generator matrix for one solution.

    The parent's columns keep their positions; within the columns equal to a
    point ``u``, the first ``x[u]`` keep new-row bit 0 and the rest take bit
    1; the appended columns are nonzero only in the new row.
    """
    k, n = parent.k, parent.n
    newbit = 1 << k
    delta_len = sol.x.get(newbit, 0)
    if delta_len < 1:
        raise CodeError("solution lacks appended columns")
    seen: dict[int, int] = {}
    newrow = 0
    for j in range(n):
        u = parent.column(j)
        seen[u] = seen.get(u, 0) + 1
        if seen[u] > sol.x.get(u, 0):
            newrow |= 1 << j
    for j in range(n, n + delta_len):
        newrow |= 1 << j
    child = BinaryCode(parent.rows + (newrow,), n + delta_len)
    if child.column_multiplicities() != {v: c for v, c in sol.x.items() if c}:
        raise CodeError("solution does not match the parent's columns")
    return child


def weight_filter(child: BinaryCode, allowed: set[int]) -> bool:
    """True iff every nonzero weight of the child lies in ``allowed``."""
    return all(w in allowed for w in child.weight_enumerator() if w)
