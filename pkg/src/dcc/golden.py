"""Bundled reference corpus: curated generator matrices with known data.

The package ships a set of generator matrices together with a manifest
recording, for each code, its expected weight enumerator, dimensions, and
(where known) automorphism-group order, plus a companion file of extension
rows with their expected coset enumerators.  Verifying the corpus end to
end exercises parsing, weight enumeration, divisibility, canonical forms,
and the extension audit against independently recorded values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .canon import automorphism_order
from .extcode import verify_extension_row
from .gf2core import BinaryCode, CodeError


@dataclass(frozen=True)
class CorpusEntry:
    """One manifest record and its parsed matrix."""

    id: str
    group: str
    n: int
    k: int
    weights: dict[int, int]
    aut: int | None
    code: BinaryCode


def _data_root():
    return resources.files("dcc") / "data" / "golden"


def load_manifest() -> list[CorpusEntry]:
    """All corpus entries, in manifest order."""
    root = _data_root()
    out = []
    for e in json.loads((root / "manifest.json").read_text()):
        code = BinaryCode.from_text((root / e["file"]).read_text())
        out.append(
            CorpusEntry(
                id=e["id"],
                group=e["group"],
                n=e["n"],
                k=e["k"],
                weights={int(w): c for w, c in e["weights"].items()},
                aut=e["aut"],
                code=code,
            )
        )
    if not out:
        raise CodeError("empty corpus manifest")
    return out


def corpus_code(entry_id: str) -> BinaryCode:
    """The parsed matrix of one corpus entry."""
    for e in load_manifest():
        if e.id == entry_id:
            return e.code
    raise CodeError(f"no corpus entry named {entry_id!r}")


def load_extension_rows() -> list[dict]:
    """Recorded extension rows (support lists may be absent)."""
    root = _data_root()
    rows = json.loads((root / "extension_rows.json").read_text())
    for r in rows:
        r["expected"] = {int(w): c for w, c in r["expected"].items()}
    return rows


def _divisibility(entry: CorpusEntry) -> str | None:
    """Weight-divisibility check; the 13-dimensional parity extension is
    4-divisible with minimum weight 16, everything else is 8-divisible."""
    nz = [w for w in entry.weights if w]
    if entry.group == "kprime":
        if any(w % 4 for w in nz) or min(nz) < 16:
            return "weights not 4-divisible with minimum >= 16"
        return None
    if any(w % 8 for w in nz):
        return "weights not 8-divisible"
    return None


def verify_entry(entry: CorpusEntry, check_aut: bool = False) -> list[str]:
    """Violation messages for one entry (empty = consistent)."""
    bad: list[str] = []
    code = entry.code
    if code.k != entry.k:
        bad.append(f"dimension {code.k} != {entry.k}")
    if code.effective_length() != entry.n:
        bad.append(f"effective length {code.effective_length()} != {entry.n}")
    if code.weight_enumerator() != entry.weights:
        bad.append("weight enumerator mismatch")
    msg = _divisibility(entry)
    if msg:
        bad.append(msg)
    if check_aut and entry.aut is not None:
        got = automorphism_order(code)
        if got != entry.aut:
            bad.append(f"automorphism order {got} != {entry.aut}")
    return [f"{entry.id}: {m}" for m in bad]


def verify_corpus(check_aut: bool = False) -> tuple[list[str], int]:
    """(violations, number of entries checked) over the whole corpus."""
    entries = load_manifest()
    bad: list[str] = []
    for e in entries:
        bad.extend(verify_entry(e, check_aut=check_aut))
    by_id = {e.id: e for e in entries}
    for r in load_extension_rows():
        if r["support"] is None:
            continue
        parent = by_id[r["code"]].code
        row = "".join(
            "1" if i in set(r["support"]) else "0" for i in range(1, r["ambient"] + 1)
        )
        verdict = verify_extension_row(parent, row, r["delta"])
        if verdict.enumerator != r["expected"]:
            bad.append(f"{r['id']}: extension enumerator mismatch")
        if not verdict.ok:
            bad.append(f"{r['id']}: extension flags fail")
    return bad, len(entries)


def group_counts(group: str = "optimal") -> dict[tuple[int, int], int]:
    """Corpus classes per (effective length, dimension) within one group."""
    counts: dict[tuple[int, int], int] = {}
    for e in load_manifest():
        if e.group == group:
            counts[(e.n, e.k)] = counts.get((e.n, e.k), 0) + 1
    return counts
