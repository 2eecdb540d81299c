"""Binary linear codes as bit-packed generator matrices over GF(2).

A :class:`BinaryCode` stores ``k`` independent rows of width ``n`` (ambient
length; zero columns are allowed and tracked).  All operations are pure and
exact; isomorphism questions live in :mod:`dcc.canon`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import kernels

MAX_K = 14
MAX_N = 128

MAGIC = "dcc1"


class CodeError(ValueError):
    """Raised for invalid code constructions or contract violations."""


@dataclass(frozen=True)
class BinaryCode:
    """Immutable k×n generator matrix over GF(2), bit-packed by rows.

    Bit ``j`` of ``rows[i]`` is the entry in row ``i``, column ``j``; column 0
    is the leftmost character in the text format.
    """

    rows: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        k = len(self.rows)
        if not 1 <= k <= MAX_K:
            raise CodeError(f"dimension {k} outside [1, {MAX_K}]")
        if not 1 <= self.n <= MAX_N:
            raise CodeError(f"length {self.n} outside [1, {MAX_N}]")
        mask = (1 << self.n) - 1
        if any(r & ~mask for r in self.rows):
            raise CodeError("row wider than declared length")
        if _rank(self.rows) != k:
            raise CodeError("rows are not linearly independent")

    # ---------------------------------------------------------------- basics

    @property
    def k(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: list[int], n: int) -> "BinaryCode":
        return cls(tuple(rows), n)

    @classmethod
    def from_text(cls, text: str) -> "BinaryCode":
        """Parse the matrix text format.

        An optional header ``dcc1 q=2 k=<k> n=<n>`` is followed by ``k``
        lines of exactly ``n`` characters from {0,1}.  Without a header the
        shape is inferred from the lines.
        """
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise CodeError("empty matrix text")
        k = n = None
        if lines[0].split() and lines[0].split()[0] == MAGIC:
            fields = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
            if fields.get("q", "2") != "2":
                raise CodeError(f"unsupported field size q={fields.get('q')}")
            k, n = int(fields["k"]), int(fields["n"])
            lines = lines[1:]
        if k is None:
            k, n = len(lines), len(lines[0])
        if len(lines) != k:
            raise CodeError(f"expected {k} rows, found {len(lines)}")
        rows = []
        for ln in lines:
            if len(ln) != n or set(ln) - {"0", "1"}:
                raise CodeError(f"bad row {ln!r}")
            rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
        return cls(tuple(rows), n)

    def to_text(self, header: bool = True) -> str:
        body = "\n".join(format(r, f"0{self.n}b")[::-1] for r in self.rows)
        if header:
            return f"{MAGIC} q=2 k={self.k} n={self.n}\n{body}\n"
        return body + "\n"

    def column(self, j: int) -> int:
        """Column ``j`` as a point of GF(2)^k (bit ``i`` = row ``i``)."""
        return sum(((self.rows[i] >> j) & 1) << i for i in range(self.k))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.n)]

    def words(self) -> list[int]:
        """All 2^k codewords as bit masks, indexed by row combination."""
        out = [0] * (1 << self.k)
        for i in range(1, 1 << self.k):
            low = i & -i
            out[i] = out[i ^ low] ^ self.rows[low.bit_length() - 1]
        return out

    def contains_word(self, word: int) -> bool:
        reduced = word
        basis = sorted(self.rows, reverse=True)
        basis = _rref(basis)
        for b in basis:
            reduced = min(reduced, reduced ^ b)
        return reduced == 0

    # ------------------------------------------------------------ invariants

    def weight_enumerator(self) -> dict[int, int]:
        """Exact codeword count per weight (includes the zero word)."""
        counts = kernels.weight_distribution(list(self.rows), self.n)
        return {w: c for w, c in enumerate(counts) if c}

    def effective_length(self) -> int:
        used = 0
        for r in self.rows:
            used |= r
        return used.bit_count()

    def divisibility(self) -> int:
        """Largest power of 2 dividing every nonzero weight (1 if none)."""
        d = 0
        for w, c in self.weight_enumerator().items():
            if w:
                d |= w
        return d & -d if d else 1

    def minimum_distance(self) -> int:
        return min(w for w in self.weight_enumerator() if w)

    def systematic_form(self) -> tuple["BinaryCode", tuple[int, ...]]:
        """Row-equivalent, column-permuted matrix with a leading identity.

        Returns ``(code, perm)`` where ``perm[j]`` is the original index of
        the column now at position ``j``.
        """
        rows = list(self.rows)
        pivots: list[int] = []
        r = 0
        for j in range(self.n):
            pivot = next((i for i in range(r, self.k) if (rows[i] >> j) & 1), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            for i in range(self.k):
                if i != r and (rows[i] >> j) & 1:
                    rows[i] ^= rows[r]
            pivots.append(j)
            r += 1
            if r == self.k:
                break
        if r < self.k:
            raise CodeError("rank-deficient input")
        perm = pivots + [j for j in range(self.n) if j not in set(pivots)]
        permuted = [
            sum(((rows[i] >> perm[j]) & 1) << j for j in range(self.n))
            for i in range(self.k)
        ]
        return BinaryCode(tuple(permuted), self.n), tuple(perm)

    def dual_low_terms(self, t: int) -> list[int]:
        """Dual weight-distribution coefficients a₁*..a_t* for t ≤ 4.

        Counted combinatorially over columns: a₁* = zero columns, a₂* =
        unordered equal-column pairs, a₃*/a₄* = 3-/4-subsets of columns
        summing to zero.
        """
        if not 1 <= t <= 4:
            raise CodeError("dual_low_terms supports 1 <= t <= 4")
        mult: dict[int, int] = {}
        for v in self.columns():
            mult[v] = mult.get(v, 0) + 1
        n0 = mult.get(0, 0)
        out = [n0]
        if t >= 2:
            out.append(sum(comb(c, 2) for c in mult.values()))
        nz = sorted(v for v in mult if v)
        if t >= 3:
            a3 = comb(n0, 3) + n0 * sum(comb(mult[v], 2) for v in nz)
            for i, u in enumerate(nz):
                for v in nz[i + 1:]:
                    w = u ^ v
                    if w > v and w in mult:
                        a3 += mult[u] * mult[v] * mult[w]
            out.append(a3)
        if t >= 4:
            a4 = sum(comb(c, 4) for c in mult.values())
            vals = sorted(mult)
            for i, u in enumerate(vals):
                for v in vals[i + 1:]:
                    a4 += comb(mult[u], 2) * comb(mult[v], 2)
            # 4-subsets of distinct column values XORing to zero; count each
            # once via u < v < w < x with x = u^v^w determined
            for u, v, w in combinations(nz, 3):
                x = u ^ v ^ w
                if x > w and x in mult:
                    a4 += mult[u] * mult[v] * mult[w] * mult[x]
            # subsets containing the zero point pair with a 3-subset XOR 0
            if n0:
                for u, v in combinations(nz, 2):
                    w = u ^ v
                    if w > v and w in mult:
                        a4 += n0 * mult[u] * mult[v] * mult[w]
            out.append(a4)
        return out[:t]

    def column_multiplicities(self, padding: int = 0) -> dict[int, int]:
        """Census of columns as points of GF(2)^k; c(0) includes ``padding``."""
        mult: dict[int, int] = {}
        for v in self.columns():
            mult[v] = mult.get(v, 0) + 1
        mult[0] = mult.get(0, 0) + padding
        if mult[0] == 0:
            del mult[0]
        return mult

    def multiset(self) -> list[int]:
        """Column multiset as a dense array of length 2^k (zero point first)."""
        mult = [0] * (1 << self.k)
        for v in self.columns():
            mult[v] += 1
        return mult


def _rank(rows: tuple[int, ...] | list[int]) -> int:
    basis: list[int] = []
    for m in rows:
        for b in basis:
            m = min(m, m ^ b)
        if m:
            basis.append(m)
            basis.sort(reverse=True)
    return len(basis)


def _rref(rows: list[int]) -> list[int]:
    basis: list[int] = []
    for m in rows:
        cur = m
        for b in basis:
            cur = min(cur, cur ^ b)
        if cur:
            basis.append(cur)
    basis.sort(reverse=True)
    for i in range(len(basis)):
        for j in range(i):
            if basis[j] & (1 << (basis[i].bit_length() - 1)):
                basis[j] ^= basis[i]
    return sorted(basis, reverse=True)


def code_from_multiset(mult: list[int] | dict[int, int], k: int) -> BinaryCode:
    """Generator matrix whose columns realize a column multiset.

    Accepts a dense array (length 2^k) or a sparse mapping; columns are laid
    out in increasing point order.  The multiset's support must span GF(2)^k.
    """
    if isinstance(mult, dict):
        dense = [0] * (1 << k)
        for u, c in mult.items():
            dense[u] = c
    else:
        dense = list(mult)
    cols: list[int] = []
    for u in range(1 << k):
        cols.extend([u] * dense[u])
    n = len(cols)
    rows = tuple(
        sum(((u >> i) & 1) << j for j, u in enumerate(cols)) for i in range(k)
    )
    return BinaryCode(rows, n)
