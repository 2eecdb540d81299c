"""Exhaustive classification of divisible codes by increasing dimension.

Starting from the one-dimensional repetition codes, each round extends every
known class by one generator row (module ``extend``), rejects isomorphic
copies by canonical key (module ``canon``), and records one representative
per class.  Counts are per (effective length, dimension) cell.
"""
from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field
from pathlib import Path

from .canon import canonical_form, representative
from .extend import ExtensionProblem, enumerate_extensions, realize
from .gf2core import MAX_K, MAX_N, BinaryCode, CodeError


@dataclass(frozen=True)
class Campaign:
    """Search space of one classification run."""

    delta: int
    dmin: int
    kmax: int
    nmax: int
    weights: frozenset[int] | None = None
    jobs: int = 1
    out_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.weights is not None and not isinstance(self.weights, frozenset):
            object.__setattr__(self, "weights", frozenset(self.weights))
        if self.dmin % self.delta:
            raise CodeError("minimum distance must be a multiple of delta")
        if not 1 <= self.kmax <= MAX_K or not 1 <= self.nmax <= MAX_N:
            raise CodeError("campaign range outside supported caps")
        if self.jobs < 1:
            raise CodeError("jobs must be >= 1")
        if self.weights is not None:
            bad = [w for w in self.weights if w % self.delta or w < self.dmin]
            if bad:
                raise CodeError(f"allowed weights {bad} violate delta/dmin")

    def allowed_weights(self) -> frozenset[int]:
        """Admissible nonzero weights anywhere in the campaign."""
        ws = {
            m * self.delta
            for m in range(self.dmin // self.delta, self.nmax // self.delta + 1)
        }
        if self.weights is not None:
            ws &= self.weights
        return frozenset(ws)

    def window(self) -> tuple[int, int]:
        """(a, b) with every weight in [a*delta, b*delta]."""
        return self.dmin // self.delta, self.nmax // self.delta


@dataclass(frozen=True)
class CodeRecord:
    """One isomorphism class: canonical key plus a concrete representative."""

    key: bytes
    rows: tuple[int, ...]
    n: int
    k: int
    weights: tuple[tuple[int, int], ...]
    aut: int

    def code(self) -> BinaryCode:
        return BinaryCode(self.rows, self.n)


@dataclass
class CountsTable:
    """Classes per (effective length, dimension)."""

    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    def add(self, n: int, k: int, c: int = 1) -> None:
        self.counts[(n, k)] = self.counts.get((n, k), 0) + c

    def csv_text(self) -> str:
        lines = ["n,k,count"]
        for (n, k) in sorted(self.counts, key=lambda t: (t[1], t[0])):
            lines.append(f"{n},{k},{self.counts[(n, k)]}")
        return "\n".join(lines) + "\n"

    def grid_text(self) -> str:
        """Dimension rows by length columns, mirroring the published tables."""
        if not self.counts:
            return "(empty)\n"
        ns = sorted({n for n, _ in self.counts})
        ks = sorted({k for _, k in self.counts})
        width = max(len(str(c)) for c in self.counts.values())
        width = max(width, max(len(str(n)) for n in ns))
        head = "k\\n " + " ".join(f"{n:>{width}}" for n in ns)
        lines = [head]
        for k in ks:
            cells = []
            for n in ns:
                c = self.counts.get((n, k))
                cells.append(f"{'' if c is None else c:>{width}}")
            lines.append(f"{k:<4}" + " ".join(cells))
        return "\n".join(lines) + "\n"


def _record_from_key(key: bytes, aut: int) -> CodeRecord:
    code = representative(key)
    w = tuple(sorted(code.weight_enumerator().items()))
    return CodeRecord(key=key, rows=code.rows, n=code.n, k=code.k, weights=w, aut=aut)


def seed_records(campaign: Campaign) -> list[CodeRecord]:
    """Dimension-1 classes: one repetition code per admissible weight."""
    out = []
    for w in sorted(campaign.allowed_weights()):
        code = BinaryCode(((1 << w) - 1,), w)
        ck = canonical_form(code)
        out.append(_record_from_key(ck.key, ck.aut_order))
    return out


def _extend_one(task: tuple[CodeRecord, int, int, int, int, frozenset[int]]):
    """Worker: all children of one parent at one target length.

    Returns (child multiset bytes, weights) pairs; canonical keys are
    computed in the merge phase with a shared cache.
    """
    rec, target, delta, a, b, allowed = task
    parent, _perm = rec.code().systematic_form()
    problem = ExtensionProblem(parent, target, delta, a, b, allowed)
    seen: set[bytes] = set()
    out = []
    for sol in enumerate_extensions(problem):
        child = realize(parent, sol)
        mult = [0] * (1 << child.k)
        for u in child.columns():
            mult[u] += 1
        blob = bytes(mult)
        if blob not in seen:
            seen.add(blob)
            out.append(blob)
    return out


def classify_step(
    parents: list[CodeRecord], campaign: Campaign, pool=None
) -> list[CodeRecord]:
    """All classes one dimension up that extend some parent, deduplicated."""
    if not parents:
        return []
    a, b = campaign.window()
    allowed = campaign.allowed_weights()
    tasks = []
    for rec in sorted(parents, key=lambda r: (r.n, r.key)):
        min_mult = min(c for _, c in _mult_items(rec))
        for target in range(rec.n + 1, min(campaign.nmax, rec.n + min_mult) + 1):
            tasks.append((rec, target, campaign.delta, a, b, allowed))

    if pool is not None:
        chunks = pool.map(_extend_one, tasks)
    else:
        chunks = map(_extend_one, tasks)

    # two-phase dedup: exact multiset first, canonical key second
    by_key: dict[bytes, CodeRecord] = {}
    mult_cache: set[bytes] = set()
    kk = parents[0].k + 1
    from . import kernels

    for blobs in chunks:
        for blob in blobs:
            if blob in mult_cache:
                continue
            mult_cache.add(blob)
            label, aut = kernels.canonical_form(list(blob), kk)
            key = bytes([kk]) + bytes(label)
            if key not in by_key:
                by_key[key] = _record_from_key(key, aut)
    return [by_key[k] for k in sorted(by_key)]


def _mult_items(rec: CodeRecord) -> list[tuple[int, int]]:
    mult: dict[int, int] = {}
    code = rec.code()
    for u in code.columns():
        mult[u] = mult.get(u, 0) + 1
    return sorted(mult.items())


def run(campaign: Campaign) -> tuple[CountsTable, dict[int, list[CodeRecord]]]:
    """Classify the whole campaign grid; optionally write the database."""
    by_dim: dict[int, list[CodeRecord]] = {1: seed_records(campaign)}
    pool = None
    if campaign.jobs > 1:
        pool = multiprocessing.get_context("fork").Pool(campaign.jobs)
    try:
        for k in range(1, campaign.kmax):
            by_dim[k + 1] = classify_step(by_dim[k], campaign, pool)
            if not by_dim[k + 1]:
                break
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    table = CountsTable()
    for k, recs in by_dim.items():
        for rec in recs:
            table.add(rec.n, k)
    if campaign.out_dir is not None:
        write_database(by_dim, campaign.out_dir)
        out = Path(campaign.out_dir)
        (out / "counts.csv").write_text(table.csv_text())
        (out / "counts_grid.txt").write_text(table.grid_text())
    return table, by_dim


def _enumerator_line(weights: tuple[tuple[int, int], ...]) -> str:
    return "W(z)=" + " + ".join(f"{c}z^{w}" for w, c in weights)


def write_database(by_dim: dict[int, list[CodeRecord]], out_dir: Path | str) -> list[Path]:
    """One shard per dimension, records sorted by canonical key."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k in sorted(by_dim):
        recs = sorted(by_dim[k], key=lambda r: r.key)
        if not recs:
            continue
        path = out / f"db_k{k:02d}.txt"
        with path.open("w") as f:
            for rec in recs:
                f.write(f"record key={rec.key.hex()} n={rec.n} k={rec.k} aut={rec.aut}\n")
                f.write(_enumerator_line(rec.weights) + "\n")
                f.write(rec.code().to_text(header=True))
                f.write("\n")
        paths.append(path)
    return paths


def read_database(path: Path | str) -> list[CodeRecord]:
    """Parse db shards from a directory or a single shard file."""
    p = Path(path)
    files = sorted(p.glob("db_k*.txt")) if p.is_dir() else [p]
    records = []
    for fp in files:
        text = fp.read_text()
        for section in text.split("record "):
            if not section.strip():
                continue
            lines = section.splitlines()
            head = dict(tok.split("=", 1) for tok in lines[0].split())
            wline = lines[1]
            if not wline.startswith("W(z)="):
                raise CodeError(f"{fp}: missing enumerator line")
            weights = []
            for term in wline[len("W(z)="):].split(" + "):
                c, w = term.split("z^")
                weights.append((int(w), int(c)))
            code = BinaryCode.from_text("\n".join(lines[2:]))
            records.append(
                CodeRecord(
                    key=bytes.fromhex(head["key"]),
                    rows=code.rows,
                    n=int(head["n"]),
                    k=int(head["k"]),
                    weights=tuple(weights),
                    aut=int(head["aut"]),
                )
            )
    return records


def verify_database(path: Path | str) -> list[str]:
    """Re-check every stored record; returns human-readable violations."""
    violations = []
    try:
        records = read_database(path)
    except (OSError, CodeError, ValueError, KeyError, IndexError) as exc:
        return [f"unreadable database: {exc}"]
    seen_keys: set[bytes] = set()
    for rec in records:
        where = f"record {rec.key.hex()[:16]}... (n={rec.n}, k={rec.k})"
        try:
            code = rec.code()
        except CodeError as exc:
            violations.append(f"{where}: bad matrix: {exc}")
            continue
        if code.k != rec.k:
            violations.append(f"{where}: rank {code.k} != header k")
        if code.effective_length() != rec.n:
            violations.append(f"{where}: effective length {code.effective_length()}")
        if tuple(sorted(code.weight_enumerator().items())) != rec.weights:
            violations.append(f"{where}: enumerator mismatch")
        ck = canonical_form(code)
        if ck.key != rec.key:
            violations.append(f"{where}: canonical key mismatch")
        elif ck.aut_order != rec.aut:
            violations.append(f"{where}: aut order {ck.aut_order} != {rec.aut}")
        if rec.key in seen_keys:
            violations.append(f"{where}: duplicate key")
        seen_keys.add(rec.key)
    return violations
