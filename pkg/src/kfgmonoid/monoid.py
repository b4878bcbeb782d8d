"""Operator monoids of a space: generation, global collapses and orderings, types."""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from . import catalog
from .engine import WordEngine
from .errors import NotAPartialOrder, NotContained
from .operators import SetOperator, word_to_operator
from .topology import Topology


class SpaceType(str, enum.Enum):
    GE = "GE"
    KD = "KD"
    ED = "ED"
    OU = "OU"
    EO = "EO"
    P = "P"
    D = "D"


SPACE_TYPES = tuple(SpaceType)


def resolve_catalog(cat: str | Sequence[str]) -> tuple[str, ...]:
    if isinstance(cat, str):
        return catalog.CATALOGS[cat]
    return tuple(cat)


@dataclass(frozen=True)
class Collapse:
    """A partition of catalog names; two names share a class iff their values agree."""

    classes: tuple[tuple[str, ...], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[str]]) -> "Collapse":
        return cls(tuple(sorted(tuple(sorted(c)) for c in classes)))

    @classmethod
    def from_labels(cls, names: Sequence[str], labels: Sequence) -> "Collapse":
        groups: dict = {}
        for name, lab in zip(names, labels):
            groups.setdefault(lab, []).append(name)
        return cls.from_classes(groups.values())

    @property
    def names(self) -> frozenset[str]:
        return frozenset(n for c in self.classes for n in c)

    def __len__(self) -> int:
        return len(self.classes)

    def class_of(self, name: str) -> tuple[str, ...]:
        for c in self.classes:
            if name in c:
                return c
        raise KeyError(name)

    def equal_pairs(self) -> frozenset[tuple[str, str]]:
        return frozenset((x, y) for c in self.classes for x in c for y in c if x < y)

    def refines(self, other: "Collapse") -> bool:
        """True when every class of ``self`` sits inside a class of ``other``."""
        return self.equal_pairs() <= other.equal_pairs()

    def meet(self, other: "Collapse") -> "Collapse":
        """Common refinement: names are equal in the meet iff equal in both."""
        lookup = {n: i for i, c in enumerate(other.classes) for n in c}
        parts: dict = {}
        for i, c in enumerate(self.classes):
            for n in c:
                parts.setdefault((i, lookup[n]), []).append(n)
        return Collapse.from_classes(parts.values())

    def restrict(self, names: Iterable[str]) -> "Collapse":
        keep = set(names)
        return Collapse.from_classes(c for c in ([n for n in c if n in keep] for c in self.classes) if c)

    def to_json(self) -> str:
        return json.dumps([list(c) for c in self.classes], separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "Collapse":
        return cls.from_classes(json.loads(text))


@dataclass(frozen=True)
class Ordering:
    """Reflexive, transitively closed set of pairs ``(o1, o2)`` meaning ``o1 <= o2``."""

    ground: frozenset[str]
    pairs: frozenset[tuple[str, str]]

    @classmethod
    def from_pairs(cls, ground: Iterable[str], pairs: Iterable[tuple[str, str]], close: bool = True) -> "Ordering":
        ground = frozenset(ground)
        pairs = frozenset(pairs) | {(x, x) for x in ground}
        if close:
            pairs = transitive_closure(ground, pairs)
        return cls(ground, frozenset(pairs))

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def is_partial_order(self) -> bool:
        return all(x == y or (y, x) not in self.pairs for x, y in self.pairs)

    def collapse(self) -> Collapse:
        groups = {x: frozenset(y for y in self.ground if (x, y) in self.pairs and (y, x) in self.pairs) for x in self.ground}
        return Collapse.from_classes(set(groups.values()))

    def strict_pairs(self) -> list[tuple[str, str]]:
        return sorted(p for p in self.pairs if p[0] != p[1])

    def to_json(self) -> str:
        return json.dumps([list(p) for p in sorted(self.pairs)], separators=(",", ":"))


def transitive_closure(ground: Iterable[str], pairs: Iterable[tuple[str, str]]) -> set[tuple[str, str]]:
    names = sorted(set(ground) | {x for p in pairs for x in p})
    index = {n: i for i, n in enumerate(names)}
    m = np.eye(len(names), dtype=bool)
    for x, y in pairs:
        m[index[x], index[y]] = True
    for k in range(len(names)):
        m |= m[:, k : k + 1] & m[k : k + 1, :]
    return {(names[i], names[j]) for i, j in zip(*np.nonzero(m))}


# monoid generation


def generate_monoid(t: Topology, generators: Iterable[str]) -> list[SetOperator]:
    """All operators reachable from ``id`` by left multiplication with the generators."""
    gens = [word_to_operator(t, g).table for g in sorted(set(generators))]
    start = np.arange(1 << t.n)
    seen = {start.tobytes(): start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = g[cur]
            key = nxt.tobytes()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    return [SetOperator(t.n, v) for v in seen.values()]


# global collapse and ordering


def _space_tables(t: Topology, words: Sequence[str]) -> np.ndarray:
    engine = WordEngine(t.closure_table, t.n)
    return np.stack([engine.table(w)[0] for w in words])


def space_collapse(t: Topology, cat: str | Sequence[str] = "KF") -> Collapse:
    names = resolve_catalog(cat)
    tables = _space_tables(t, names)
    _, labels = np.unique(tables, axis=0, return_inverse=True)
    return Collapse.from_labels(names, labels.ravel().tolist())


def space_ordering(t: Topology, cat: str | Sequence[str] = "KF") -> Ordering:
    names = resolve_catalog(cat)
    tables = _space_tables(t, names)
    inc = ((tables[:, None, :] & ~tables[None, :, :]) == 0).all(axis=2)
    pairs = [(names[i], names[j]) for i, j in zip(*np.nonzero(inc))]
    return Ordering(frozenset(names), frozenset(pairs))


def batch_relations(closures: np.ndarray, n: int, words: Sequence[str]) -> tuple[np.ndarray, np.ndarray]:
    """Per-space equality and inclusion matrices, each of shape ``(S, W, W)``."""
    engine = WordEngine(closures, n)
    tables = engine.stack(words)
    w = len(words)
    s = tables.shape[1]
    eq = np.empty((s, w, w), dtype=bool)
    inc = np.empty((s, w, w), dtype=bool)
    for i in range(w):
        eq[:, i, :] = (tables[i][None] == tables).all(axis=2).T
        inc[:, i, :] = ((tables[i][None] & ~tables) == 0).all(axis=2).T
    return eq, inc


def collapse_from_matrix(names: Sequence[str], eq: np.ndarray) -> Collapse:
    labels = eq.argmax(axis=1)  # first name in each class
    return Collapse.from_labels(names, labels.tolist())


def ordering_from_matrix(names: Sequence[str], inc: np.ndarray) -> Ordering:
    pairs = [(names[i], names[j]) for i, j in zip(*np.nonzero(inc))]
    return Ordering(frozenset(names), frozenset(pairs))


def classify_batch(closures: np.ndarray, n: int) -> list[SpaceType]:
    """Space types of many spaces of equal size."""
    engine = WordEngine(closures, n)
    bib = engine.table("bib")
    same = {w: (engine.table(w) == bib).all(axis=1) for w in ("ib", "bi", "b")}
    fif_zero = (engine.table("fif") == 0).all(axis=1)
    out = []
    for k in range(np.atleast_2d(closures).shape[0]):
        s = {w for w in same if same[w][k]}
        if not s:
            out.append(SpaceType.KD if fif_zero[k] else SpaceType.GE)
        elif s == {"ib"}:
            out.append(SpaceType.ED)
        elif s == {"bi"}:
            out.append(SpaceType.OU)
        elif s == {"ib", "bi"}:
            out.append(SpaceType.EO)
        elif s == {"ib", "b"}:
            out.append(SpaceType.P)
        elif s == {"ib", "bi", "b"}:
            out.append(SpaceType.D)
        else:
            raise ValueError(f"impossible bib pattern {sorted(s)}")
    return out


def classify_space(t: Topology) -> SpaceType:
    """GE / KD / ED / OU / EO / P / D from the words that coincide with ``bib``."""
    return classify_batch(t.closure_table, t.n)[0]


# extenders and the refinement test


def _matrix(p: Ordering, ground: Sequence[str]) -> np.ndarray:
    index = {n: i for i, n in enumerate(ground)}
    m = np.zeros((len(ground), len(ground)), dtype=bool)
    for x, y in p.pairs:
        m[index[x], index[y]] = True
    return m


def extender(p: Ordering, ground: Iterable[str] | None = None) -> set[tuple[str, str]]:
    """Pairs outside ``p`` whose addition leaves ``p`` a partial order."""
    names = sorted(p.ground if ground is None else set(ground))
    m = _matrix(p, names)
    if not m.diagonal().all() or (m & m.T & ~np.eye(len(names), dtype=bool)).any():
        raise NotAPartialOrder("input is not reflexive and antisymmetric")
    square = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    if (square & ~m).any():
        raise NotAPartialOrder("input is not transitive")
    # (x, y) may be added iff y !<= x, every z <= x has z <= y, and every w >= y has x <= w
    out = set()
    for i, j in zip(*np.nonzero(~m & ~m.T)):
        col_x, col_y = m[:, i].copy(), m[:, j].copy()
        col_y[i] = True
        row_x, row_y = m[i, :].copy(), m[j, :]
        row_x[j] = True
        if (col_y >= col_x).all() and (row_x >= row_y).all():
            out.add((names[i], names[j]))
    return out


@dataclass(frozen=True)
class Refinement:
    equal: bool
    witness: tuple[str, str] | None = None


def poset_refines(p: Ordering, q: Ordering) -> Refinement:
    """Decide ``P = Q`` for ``P`` contained in ``Q`` via the extender of ``P``."""
    if not p.pairs <= q.pairs:
        missing = min(p.pairs - q.pairs)
        raise NotContained(f"pair {missing} of the first order is missing from the second")
    ext = extender(p, p.ground | q.ground)
    hits = sorted(ext & q.pairs)
    if hits:
        return Refinement(False, hits[0])
    extra = sorted(q.pairs - p.pairs)
    return Refinement(not extra, extra[0] if extra else None)


# reference data


@lru_cache(maxsize=None)
def reference_data(name: str) -> dict:
    return json.loads(resources.files("kfgmonoid.data").joinpath(name).read_text())


def _left_dual(pair: tuple[str, str]) -> tuple[str, str]:
    return catalog.complement_name(pair[1]), catalog.complement_name(pair[0])


def order_from_diagram(ground: Sequence[str], solid: Iterable[Sequence[str]], dashed: Iterable[Sequence[str]]) -> Ordering:
    """Close a diagram (solid ``o1 <= o2``, dashed ``o1 <= a o2``) under left duality and transitivity."""
    pairs: set[tuple[str, str]] = set()
    for chain in solid:
        pairs |= {(chain[k], chain[k + 1]) for k in range(len(chain) - 1)}
    for x, y in dashed:
        pairs.add((x, catalog.complement_name(y)))
        pairs.add((y, catalog.complement_name(x)))
    pairs |= {_left_dual(p) for p in pairs}
    return Ordering.from_pairs(ground, pairs)


def reference_order(name: str = "KF") -> Ordering:
    """The universal order on KF or KFG drawn in the reference diagrams."""
    data = reference_data("orders.json")[name]
    return order_from_diagram(catalog.CATALOGS[name], data["solid"], data["dashed"])


def reference_extender(name: str = "KF") -> set[tuple[str, str]]:
    """The drawn extender pairs, expanded by left duality and the dashed convention."""
    data = reference_data("orders.json")[f"Ext {name}"]
    pairs = {tuple(p) for p in data["solid"]}
    pairs |= {(x, catalog.complement_name(y)) for x, y in data["dashed"]}
    pairs |= {(x, catalog.complement_name(x)) for x in data["loops"]}
    return pairs | {_left_dual(p) for p in pairs}


# the homomorphism order on monoid types

KFG_LABELS = ("GE", "KD", "ED1", "ED2", "OU1", "OU2", "EO1", "EO2", "P", "D")


@lru_cache(maxsize=None)
def canonical_collapses(view: str = "KFG") -> dict[str, Collapse]:
    """Collapse of each monoid type (``KF`` view: seven types, ``KFG`` view: ten)."""
    data = reference_data("monoid_types.json")[view]
    return {label: Collapse.from_classes(classes) for label, classes in data.items()}


def projection_order(type1: str | SpaceType, type2: str | SpaceType) -> bool:
    """True when ``type1`` lies below ``type2``: the collapse of ``type2`` refines that of ``type1``."""
    a, b = str(getattr(type1, "value", type1)), str(getattr(type2, "value", type2))
    view = "KFG" if any(ch.isdigit() for ch in a + b) else "KF"
    table = canonical_collapses(view)
    if a not in table or b not in table:
        raise ValueError(f"unknown monoid type in {view} view: {a!r} or {b!r}")
    return table[b].refines(table[a])


def hasse_edges(view: str = "KFG") -> set[tuple[str, str]]:
    """Cover pairs ``(lower, upper)`` of the projection order."""
    labels = list(canonical_collapses(view))
    below = {(x, y) for x in labels for y in labels if x != y and projection_order(x, y)}
    return {(x, y) for x, y in below if not any((x, z) in below and (z, y) in below for z in labels)}
