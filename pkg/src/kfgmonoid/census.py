"""Censuses over all spaces up to a size, and minimal-witness search."""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np

from . import catalog
from .engine import WordEngine, equality_bits, inclusion_bits, unique_rows
from .enumeration import CanonicalSpace, CensusRecord, cache_dir, enumerate_classes, read_manifest, stacked_tables
from .errors import NotFoundWithinBound
from .monoid import SpaceType
from .subsets import analyze

BATCH = 1024

CENSUS_KINDS: dict[str, tuple[str, tuple[str, ...]]] = {
    "kf-collapses": ("eq", catalog.KF),
    "kfg0-collapses": ("eq", catalog.KFG0),
    "kf-orderings": ("inc", catalog.KF),
    "kfg0-orderings": ("inc", catalog.KFG0),
    "k-orderings": ("inc", catalog.K),
    "kf0-orderings": ("inc", catalog.KF0),
    "relation-classes": ("inc", catalog.KF),
}


@dataclass(frozen=True)
class SpaceSummaries:
    """Per-space data for every class on ``n`` points, in canonical order."""

    n: int
    spaces: tuple[CanonicalSpace, ...]
    psi: np.ndarray  # (S, 71) bool, column m: some subset has ψ = m
    phi: np.ndarray  # (S, 31) bool
    k: np.ndarray  # (S,) space k-number
    kf: np.ndarray  # (S,) space k_f-number
    first_psi: np.ndarray  # (S, 71) lowest subset code with ψ = m, or -1
    kf_even: bool
    kf_le_k: bool


def _batches(n: int, cache=None) -> Iterable[tuple[list[CanonicalSpace], np.ndarray]]:
    spaces = enumerate_classes(n, cache)
    for start in range(0, len(spaces), BATCH):
        part = spaces[start : start + BATCH]
        yield part, stacked_tables(part)


@lru_cache(maxsize=None)
def summaries(n: int) -> SpaceSummaries:
    spaces: list[CanonicalSpace] = []
    psi_rows, phi_rows, k_rows, kf_rows, first_rows = [], [], [], [], []
    kf_even = kf_le_k = True
    for part, tables in _batches(n):
        a = analyze(tables, n)
        s, size = a.psi.shape
        psi_mask = np.zeros((s, 71), dtype=bool)
        np.put_along_axis(psi_mask, a.psi.astype(np.int64), True, axis=1)
        phi_mask = np.zeros((s, 31), dtype=bool)
        np.put_along_axis(phi_mask, a.phi.astype(np.int64), True, axis=1)
        first = np.full((s, 71), -1, dtype=np.int64)
        # walk subsets from high to low so the lowest code wins
        rows = np.arange(s)
        for code in range(size - 1, -1, -1):
            first[rows, a.psi[:, code]] = code
        spaces.extend(part)
        psi_rows.append(psi_mask)
        phi_rows.append(phi_mask)
        k_rows.append(a.k.max(axis=1))
        kf_rows.append(a.kf.max(axis=1))
        first_rows.append(first)
        kf_even &= bool((a.kf % 2 == 0).all())
        kf_le_k &= bool((a.k <= a.kf).all())
    return SpaceSummaries(
        n,
        tuple(spaces),
        np.concatenate(psi_rows),
        np.concatenate(phi_rows),
        np.concatenate(k_rows),
        np.concatenate(kf_rows),
        np.concatenate(first_rows),
        kf_even,
        kf_le_k,
    )


def _keys(n: int, relation: str, words: tuple[str, ...]) -> set[bytes]:
    found: set[bytes] = set()
    for _, tables in _batches(n):
        engine = WordEngine(tables, n)
        stack = engine.stack(words)
        bits = equality_bits(stack) if relation == "eq" else inclusion_bits(stack)
        found |= unique_rows(bits)
    return found


@lru_cache(maxsize=None)
def census_keys(kind: str, n: int) -> frozenset[bytes]:
    """Distinct local collapse/ordering keys over subsets of spaces with exactly ``n`` points."""
    relation, words = CENSUS_KINDS[kind]
    return frozenset(_keys(n, relation, words))


def relation_class_count(ordering_keys: Iterable[bytes]) -> int:
    """Classes of relations ``o1 = o2``, ``o1 <= o2`` on KF grouped by truth over the orderings.

    Relations that hold for every ordering or for none are dropped.
    """
    words = catalog.KF
    w = len(words)
    left, right = np.nonzero(~np.eye(w, dtype=bool))
    rows = np.array([np.frombuffer(k, dtype=np.uint8) for k in sorted(ordering_keys)])
    inc = np.unpackbits(rows, axis=1, bitorder="little")[:, : len(left)].astype(bool)
    index = {(int(p), int(q)): k for k, (p, q) in enumerate(zip(left, right))}
    columns = [inc[:, k] for k in range(len(left))]
    for p in range(w):
        for q in range(p + 1, w):
            columns.append(inc[:, index[p, q]] & inc[:, index[q, p]])
    cols = np.array(columns)
    keep = cols.any(axis=1) & ~cols.all(axis=1)
    return len(unique_rows(np.packbits(cols[keep], axis=1)))


def census(kind: str, max_n: int) -> CensusRecord:
    """Cumulative number of distinct local collapses or orderings over ``|X| <= max_n``."""
    if kind not in CENSUS_KINDS:
        raise ValueError(f"unknown census kind {kind!r}")
    source = "kf-orderings" if kind == "relation-classes" else kind
    seen: set[bytes] = set()
    cumulative: dict[int, int] = {}
    for n in range(1, max_n + 1):
        seen |= census_keys(source, n)
        cumulative[n] = relation_class_count(seen) if kind == "relation-classes" else len(seen)
    counts = {t.value: 0 for t in SpaceType}
    total = 0
    for n in range(1, max_n + 1):
        for s in enumerate_classes(n):
            counts[s.space_type.value] += 1
            total += 1
    manifest = read_manifest(cache_dir())
    provenance = {str(n): manifest.get(str(n), {}).get("sha256") for n in range(1, max_n + 1)}
    return CensusRecord(max_n, counts, total, {"kind": kind, "cumulative": cumulative, "count": cumulative[max_n], "provenance": provenance})


# minimal witnesses


@dataclass(frozen=True)
class SearchResult:
    n: int
    space: CanonicalSpace
    subset: int | None = None


@dataclass(frozen=True)
class PsiPredicate:
    """Subset predicate: ψA lies in ``values``."""

    values: frozenset[int]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", frozenset(values))


def minimal_search(
    predicate: Callable[[CanonicalSpace], bool] | PsiPredicate, max_n: int = 8
) -> SearchResult:
    """Smallest ``n`` with a witness; the first witness in canonical order is returned."""
    for n in range(1, max_n + 1):
        if isinstance(predicate, PsiPredicate):
            summ = summaries(n)
            cols = sorted(predicate.values)
            hits = summ.psi[:, cols].any(axis=1)
            if hits.any():
                s = int(np.argmax(hits))
                codes = [int(summ.first_psi[s, m]) for m in cols if summ.first_psi[s, m] >= 0]
                return SearchResult(n, summ.spaces[s], min(codes))
        else:
            for space in enumerate_classes(n):
                if predicate(space):
                    return SearchResult(n, space)
    raise NotFoundWithinBound(f"no witness with at most {max_n} points")


def minimal_psi_sizes(max_n: int = 8) -> dict[int, int]:
    """Smallest ``|X|`` at which each ψ occurs."""
    out: dict[int, int] = {}
    for n in range(1, max_n + 1):
        present = summaries(n).psi.any(axis=0)
        for m in range(1, 71):
            if present[m] and m not in out:
                out[m] = n
    return out


def max_psi_per_space(max_n: int = 8) -> dict[int, int]:
    """Largest number of distinct ψ in a single space on ``n`` points."""
    return {n: int(summaries(n).psi.sum(axis=1).max()) for n in range(1, max_n + 1)}


def witness_library(max_n: int = 8) -> dict[int, tuple[tuple[int, ...], int]]:
    """For each ψ the first ``(singleton closures, subset code)`` witness in enumeration order."""
    out: dict[int, tuple[tuple[int, ...], int]] = {}
    for n in range(1, max_n + 1):
        summ = summaries(n)
        for m in range(1, 71):
            if m in out:
                continue
            rows = np.flatnonzero(summ.psi[:, m])
            if len(rows):
                s = int(rows[0])
                out[m] = (summ.spaces[s].closures, int(summ.first_psi[s, m]))
    return out


def psi_collapse_consistency(max_n: int = 6) -> tuple[int, int]:
    """Subsets checked and violations of ``same ψ iff same KF collapse``."""
    psi_to_key: dict[int, bytes] = {}
    key_to_psi: dict[bytes, int] = {}
    checked = bad = 0
    for n in range(1, max_n + 1):
        for _, tables in _batches(n):
            psi = analyze(tables, n).psi.ravel()
            bits = equality_bits(WordEngine(tables, n).stack(catalog.KF))
            for m, row in zip(psi.tolist(), bits):
                key = row.tobytes()
                checked += 1
                if psi_to_key.setdefault(m, key) != key or key_to_psi.setdefault(key, m) != m:
                    bad += 1
    return checked, bad


# global collapses and orderings


@lru_cache(maxsize=None)
def _global_keys(n: int, view: str) -> tuple[frozenset[bytes], frozenset[bytes]]:
    words = catalog.KF if view == "KF" else catalog.KFG
    collapses: set[bytes] = set()
    orderings: set[bytes] = set()
    for _, tables in _batches(n):
        stack = WordEngine(tables, n).stack(words)
        # a space relation holds when it holds at every subset
        eq = equality_bits(stack).reshape(stack.shape[1], stack.shape[2], -1)
        inc = inclusion_bits(stack).reshape(stack.shape[1], stack.shape[2], -1)
        collapses |= unique_rows(np.bitwise_and.reduce(eq, axis=1))
        orderings |= unique_rows(np.bitwise_and.reduce(inc, axis=1))
    return frozenset(collapses), frozenset(orderings)


def global_structures(max_n: int, view: str = "KF") -> dict[int, tuple[int, int]]:
    """Cumulative ``(collapses, orderings)`` of whole spaces over ``|X| <= n`` for each ``n``."""
    collapses: set[bytes] = set()
    orderings: set[bytes] = set()
    out = {}
    for n in range(1, max_n + 1):
        c, o = _global_keys(n, view)
        collapses |= c
        orderings |= o
        out[n] = (len(collapses), len(orderings))
    return out


# structural theorems

TABLE10: dict[str, tuple[frozenset[int], frozenset[int]]] = {
    "GE": (frozenset({8, 10, 12, 14}), frozenset({10, *range(14, 35, 2)})),
    "KD": (frozenset({10, 12, 14}), frozenset({18, 22, 28})),
    "ED": (frozenset({4, 6, 8, 10}), frozenset({4, 6, 8, 10, 16, 22})),
    "OU": (frozenset({4, 6, 8, 10}), frozenset({8, 10, 14, 16, 20})),
    "EO": (frozenset({4, 6, 8}), frozenset({4, 6, 8, 10, 16})),
    "P": (frozenset({4, 6}), frozenset({4, 6, 10})),
    "D": (frozenset({2}), frozenset({2, 4})),
}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def space_numbers(max_n: int) -> dict[str, tuple[set[int], set[int]]]:
    """Space k- and k_f-numbers observed per type over ``|X| <= max_n``."""
    out: dict[str, tuple[set[int], set[int]]] = {t.value: (set(), set()) for t in SpaceType}
    for n in range(1, max_n + 1):
        summ = summaries(n)
        for i, space in enumerate(summ.spaces):
            ks, kfs = out[space.space_type.value]
            ks.add(int(summ.k[i]))
            kfs.add(int(summ.kf[i]))
    return out


def structural_checks(max_n: int = 7) -> list[Check]:
    """Space-level theorems checked over every class with at most ``max_n`` points."""
    kf12 = cooccur = kd61 = ge44 = 0
    kf_even = True
    for n in range(1, max_n + 1):
        summ = summaries(n)
        types = np.array([s.space_type.value for s in summ.spaces])
        kf12 += int((summ.kf == 12).sum())
        block = summ.psi[:, 49:53]
        cooccur += int((block.any(axis=1) & ~block.all(axis=1)).sum())
        kd61 += int(((types == "KD") & summ.psi[:, 61]).sum())
        ge44 += int(((types == "GE") != summ.psi[:, 44]).sum())
        kf_even &= summ.kf_even
    observed = space_numbers(max_n)
    outside, missing = [], []
    for t, (ks, kfs) in TABLE10.items():
        seen_k, seen_kf = observed[t]
        if seen_k - ks or seen_kf - kfs:
            outside.append(f"{t}: k {sorted(seen_k - ks)} kf {sorted(seen_kf - kfs)}")
        if ks - seen_k or kfs - seen_kf:
            missing.append(f"{t}: k {sorted(ks - seen_k)} kf {sorted(kfs - seen_kf)}")
    return [
        Check("no space k_f-number 12", kf12 == 0, f"{kf12} spaces"),
        Check("psi 49-52 co-occur", cooccur == 0, f"{cooccur} spaces with a partial set"),
        Check("KD spaces are irresolvable", kd61 == 0, f"{kd61} KD spaces with psi 61"),
        Check("GE iff psi 44 occurs", ge44 == 0, f"{ge44} mismatches"),
        Check("every k_f(A) is even", kf_even),
        Check("observed numbers lie in Table 10", not outside, "; ".join(outside)),
        Check("every Table 10 number is realized", not missing, "; ".join(missing)),
    ]


def default_cache_dir() -> str:
    return os.fspath(cache_dir())


__all__ = [
    "CENSUS_KINDS",
    "SpaceSummaries",
    "summaries",
    "census_keys",
    "census",
    "relation_class_count",
    "PsiPredicate",
    "SearchResult",
    "max_psi_per_space",
    "minimal_search",
    "minimal_psi_sizes",
    "witness_library",
    "global_structures",
    "psi_collapse_consistency",
    "TABLE10",
    "Check",
    "space_numbers",
    "structural_checks",
]
