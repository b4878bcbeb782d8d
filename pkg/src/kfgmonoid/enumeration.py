"""Finite topologies up to homeomorphism.

A topology on ``n`` points is a preorder (``p <= q`` iff ``p`` lies in the
closure of ``q``), so a space is determined by its singleton closures.  Classes
are generated from T0 posets up to isomorphism by blowing each poset point up
into a block of equivalent points.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .errors import OracleLimitExceeded, StaleCache
from .monoid import SpaceType, classify_batch
from .topology import Topology

LABELED_LIMIT = 6
CLASS_LIMIT = 11
CACHE_ENV = "KFGMONOID_CACHE"
CACHE_FORMAT = 1


# labeled oracle


def _closed_sets(closures: Sequence[int]) -> list[int]:
    k = len(closures)
    table = [0] * (1 << k)
    for p, c in enumerate(closures):
        half = 1 << p
        for s in range(half):
            table[half + s] = table[s] | c
    return [s for s in range(1 << k) if table[s] == s]


def _labeled_preorders(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for closures in _labeled_preorders(n - 1):
        k = n - 1
        full = (1 << k) - 1
        closed = _closed_sets(closures)
        bit = 1 << k
        for closed_u in closed:
            up = full ^ closed_u  # open, hence up-closed
            meet = full
            for u in range(k):
                if up >> u & 1:
                    meet &= closures[u]
            for down in closed:
                if down & ~meet:
                    continue
                grown = tuple(c | bit if up >> u & 1 else c for u, c in enumerate(closures))
                yield grown + (down | bit,)


def enumerate_labeled(n: int) -> Iterator[Topology]:
    """Every labeled topology on ``n <= 6`` points exactly once (brute-force oracle)."""
    if n > LABELED_LIMIT:
        raise OracleLimitExceeded(f"labeled enumeration is capped at {LABELED_LIMIT} points")
    if n < 1:
        raise ValueError("n must be positive")
    for closures in _labeled_preorders(n):
        yield Topology.from_point_closures(closures)


# canonical form


def _up_sets(closures: Sequence[int]) -> list[int]:
    n = len(closures)
    up = [0] * n
    for q, c in enumerate(closures):
        for p in range(n):
            if c >> p & 1:
                up[p] |= 1 << q
    return up


def _colors(closures: Sequence[int], up: Sequence[int]) -> list[int]:
    n = len(closures)
    members = [[p for p in range(n) if closures[x] >> p & 1] for x in range(n)]
    uppers = [[p for p in range(n) if up[x] >> p & 1] for x in range(n)]
    color = [(len(members[x]), len(uppers[x])) for x in range(n)]
    ranks = {c: i for i, c in enumerate(sorted(set(color)))}
    current = [ranks[c] for c in color]
    while True:
        sig = [
            (current[x], tuple(sorted(current[p] for p in members[x])), tuple(sorted(current[p] for p in uppers[x])))
            for x in range(n)
        ]
        ranks = {c: i for i, c in enumerate(sorted(set(sig)))}
        nxt = [ranks[s] for s in sig]
        if len(ranks) == len(set(current)):
            return nxt
        current = nxt


def _is_twin(closures: Sequence[int], p: int, q: int) -> bool:
    def swap(code: int) -> int:
        bp, bq = code >> p & 1, code >> q & 1
        if bp == bq:
            return code
        return code ^ (1 << p) ^ (1 << q)

    for x, c in enumerate(closures):
        y = q if x == p else p if x == q else x
        if swap(c) != closures[y]:
            return False
    return True


def _cell_orders(points: list[int], closures: Sequence[int]) -> list[tuple[int, ...]]:
    groups: list[list[int]] = []
    for p in points:
        for g in groups:
            if all(_is_twin(closures, p, q) for q in g):
                g.append(p)
                break
        else:
            groups.append([p])
    if len(groups) == 1:
        return [tuple(points)]
    # place group labels in every distinct arrangement; members keep their order
    labels = [i for i, g in enumerate(groups) for _ in g]
    out = []
    for arrangement in sorted(set(itertools.permutations(labels))):
        cursor = [0] * len(groups)
        order = []
        for lab in arrangement:
            order.append(groups[lab][cursor[lab]])
            cursor[lab] += 1
        out.append(tuple(order))
    return out


def _lexmin(orders: np.ndarray, bits: np.ndarray) -> tuple[int, ...]:
    count, n = orders.shape
    pos = np.empty_like(orders)
    np.put_along_axis(pos, orders, np.arange(n)[None, :].repeat(count, axis=0), axis=1)
    weights = (1 << pos).astype(np.int64)
    codes = weights @ bits.T  # codes[r, x]: relabeled closure of old point x
    seq = np.take_along_axis(codes, orders, axis=1)
    best = np.arange(count)
    for j in range(n):
        col = seq[best, j]
        best = best[col == col.min()]
        if len(best) == 1:
            break
    return tuple(int(v) for v in seq[best[0]])


def canonical_closures(closures: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least singleton-closure sequence over invariant-respecting relabelings."""
    n = len(closures)
    if n == 0:
        return ()
    up = _up_sets(closures)
    color = _colors(closures, up)
    cells = [sorted(p for p in range(n) if color[p] == c) for c in sorted(set(color))]
    per_cell = [_cell_orders(cell, closures) for cell in cells]
    bits = np.array([[closures[x] >> p & 1 for p in range(n)] for x in range(n)], dtype=np.int64)
    best: tuple[int, ...] | None = None
    chunk: list[list[int]] = []
    for combo in itertools.product(*per_cell):
        chunk.append([p for part in combo for p in part])
        if len(chunk) == 20000:
            cand = _lexmin(np.array(chunk), bits)
            best = cand if best is None or cand < best else best
            chunk = []
    if chunk:
        cand = _lexmin(np.array(chunk), bits)
        best = cand if best is None or cand < best else best
    assert best is not None
    return best


@dataclass(frozen=True, order=True)
class CanonicalSpace:
    """A homeomorphism class, keyed by its canonical singleton closures."""

    n: int
    closures: tuple[int, ...]
    space_type: SpaceType | None = field(default=None, compare=False)

    @property
    def topology(self) -> Topology:
        return Topology.from_point_closures(self.closures)

    @property
    def closure_table(self) -> np.ndarray:
        return self.topology.closure_table

    @property
    def key(self) -> str:
        return ",".join(str(c) for c in self.closures)


def canonical_form(t: Topology) -> CanonicalSpace:
    closures = canonical_closures(t.point_closures())
    return CanonicalSpace(t.n, closures, classify_batch(np.asarray(Topology.from_point_closures(closures).closure_table), t.n)[0])


# class generation


@lru_cache(maxsize=None)
def t0_posets(k: int) -> tuple[tuple[int, ...], ...]:
    """Canonical T0 posets on ``k`` points, each as its singleton closures."""
    if k == 0:
        return ((),)
    found: set[tuple[int, ...]] = set()
    bit = 1 << (k - 1)
    for poset in t0_posets(k - 1):
        for down in _closed_sets(poset):
            found.add(canonical_closures(poset + (down | bit,)))
    return tuple(sorted(found))


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    for cuts in itertools.combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def _blow_up(poset: Sequence[int], mult: Sequence[int]) -> tuple[int, ...]:
    starts = list(itertools.accumulate((0,) + tuple(mult)))
    block = [((1 << mult[b]) - 1) << starts[b] for b in range(len(mult))]
    out = []
    for b, c in enumerate(poset):
        code = 0
        for q in range(len(poset)):
            if c >> q & 1:
                code |= block[q]
        out.extend([code] * mult[b])
    return tuple(out)


def class_closures(n: int) -> list[tuple[int, ...]]:
    """Canonical singleton closures of every class on ``n`` points, ascending."""
    if not 1 <= n <= CLASS_LIMIT:
        raise ValueError(f"n must lie in 1..{CLASS_LIMIT}")
    found: set[tuple[int, ...]] = set(t0_posets(n))
    for k in range(1, n):
        for poset in t0_posets(k):
            for mult in _compositions(n, k):
                found.add(canonical_closures(_blow_up(poset, mult)))
    return sorted(found)


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "kfgmonoid"


def _digest(lines: Sequence[str]) -> str:
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


def _manifest_path(directory: Path) -> Path:
    return directory / "manifest.json"


def read_manifest(directory: Path) -> dict:
    path = _manifest_path(directory)
    if not path.exists():
        return {}
    return json.loads(path.read_text())


def write_cache(n: int, spaces: Sequence[CanonicalSpace], directory: Path) -> str:
    directory.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps({"closures": list(s.closures), "type": s.space_type.value}, separators=(",", ":")) for s in spaces]
    (directory / f"classes-{n}.jsonl").write_text("".join(line + "\n" for line in lines))
    digest = _digest(lines)
    manifest = read_manifest(directory)
    manifest[str(n)] = {"count": len(lines), "sha256": digest, "format": CACHE_FORMAT}
    _manifest_path(directory).write_text(json.dumps(manifest, indent=1, sort_keys=True))
    return digest


def read_cache(n: int, directory: Path) -> list[CanonicalSpace] | None:
    """Cached classes, ``None`` when absent; raises ``StaleCache`` on a hash mismatch."""
    path = directory / f"classes-{n}.jsonl"
    entry = read_manifest(directory).get(str(n))
    if entry is None or not path.exists():
        return None
    lines = path.read_text().splitlines()
    if entry.get("format") != CACHE_FORMAT or entry["count"] != len(lines) or entry["sha256"] != _digest(lines):
        raise StaleCache(f"cache for n={n} in {directory} does not match its manifest")
    out = []
    for line in lines:
        rec = json.loads(line)
        out.append(CanonicalSpace(n, tuple(rec["closures"]), SpaceType(rec["type"])))
    return out


def enumerate_classes(n: int, cache: str | os.PathLike | None | bool = None) -> list[CanonicalSpace]:
    """One canonical representative per homeomorphism class on ``n`` points.

    ``cache=False`` disables the disk cache; ``None`` uses the default location.
    """
    directory = None if cache is False else cache_dir(cache if cache not in (None, True) else None)
    if directory is not None:
        cached = read_cache(n, directory)
        if cached is not None:
            return cached
    closures = class_closures(n)
    types: list[SpaceType] = []
    for start in range(0, len(closures), 4096):
        part = closures[start : start + 4096]
        tables = np.stack([Topology.from_point_closures(c).closure_table for c in part])
        types.extend(classify_batch(tables, n))
    spaces = [CanonicalSpace(n, c, t) for c, t in zip(closures, types)]
    if directory is not None:
        try:
            write_cache(n, spaces, directory)
        except OSError:
            pass
    return spaces


def stacked_tables(spaces: Sequence[CanonicalSpace]) -> np.ndarray:
    return np.stack([Topology.from_point_closures(s.closures).closure_table for s in spaces])


@dataclass(frozen=True)
class CensusRecord:
    n: int
    counts: dict[str, int]
    total: int
    extra: dict = field(default_factory=dict)

    def row(self) -> tuple[int, ...]:
        return tuple(self.counts[t.value] for t in SpaceType)


def monoid_frequencies(n: int, cache: str | os.PathLike | None | bool = None) -> CensusRecord:
    spaces = enumerate_classes(n, cache)
    counts = {t.value: 0 for t in SpaceType}
    for s in spaces:
        counts[s.space_type.value] += 1
    return CensusRecord(n, counts, len(spaces))
