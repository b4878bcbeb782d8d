"""Per-subset analysis: orbit families, k-numbers, and the φ/ψ classification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

import numpy as np

from . import catalog
from .engine import WordEngine, distinct_counts
from .errors import MultipleMatch, NoMatch, NoWitnessFound
from .expressions import evaluate
from .monoid import Collapse, Ordering, resolve_catalog
from .topology import Subset, Topology, _code

K_WORDS = catalog.K
KF_WORDS = catalog.KF


@lru_cache(maxsize=None)
def _data(name: str) -> dict:
    return json.loads(resources.files("kfgmonoid.data").joinpath(name).read_text())


@lru_cache(maxsize=None)
def predicates(kind: str) -> dict[int, tuple[tuple[str, str, str], ...]]:
    """Table of φ (``kind="phi"``) or ψ predicates: number -> conjunction of word relations."""
    raw = _data("predicates.json")
    out = {}
    for num, rec in raw[kind].items():
        conds = raw["phi"][str(rec["see_phi"])]["conditions"] if "see_phi" in rec else rec["conditions"]
        out[int(num)] = tuple(tuple(c) for c in conds)
    return dict(sorted(out.items()))


def _match(engine: WordEngine, kind: str, values: np.ndarray | None = None) -> np.ndarray:
    """Boolean ``(P, S, M)`` array: which predicates hold at each subset."""
    preds = predicates(kind)
    cache: dict[tuple[str, str], np.ndarray] = {}

    def equal(lhs: str, rhs: str) -> np.ndarray:
        key = (lhs, rhs)
        if key not in cache:
            left = engine.table(lhs) if values is None else engine.apply(lhs, values)
            right = engine.table(rhs) if values is None else engine.apply(rhs, values)
            cache[key] = left == right
        return cache[key]

    rows = []
    for conds in preds.values():
        hit = None
        for lhs, rel, rhs in conds:
            eq = equal(lhs, rhs)
            term = eq if rel == "=" else ~eq
            hit = term.copy() if hit is None else hit & term
        rows.append(hit)
    return np.stack(rows)


def _classify(engine: WordEngine, kind: str, values: np.ndarray | None = None, strict: bool = True) -> np.ndarray:
    matches = _match(engine, kind, values)
    counts = matches.sum(axis=0)
    if strict and (counts != 1).any():
        s, m = np.argwhere(counts != 1)[0]
        err = NoMatch if counts[s, m] == 0 else MultipleMatch
        raise err(f"{kind} predicates matched {counts[s, m]} times (space {s}, subset {m})")
    numbers = np.array(list(predicates(kind)), dtype=np.int16)
    out = numbers[matches.argmax(axis=0)]
    out[counts != 1] = 0
    return out


@dataclass(frozen=True)
class Analysis:
    """Per-subset classification of a batch of spaces; all arrays have shape ``(S, 2**n)``."""

    phi: np.ndarray
    psi: np.ndarray
    k: np.ndarray
    kf: np.ndarray


def analyze(closures: np.ndarray, n: int, strict: bool = True) -> Analysis:
    engine = WordEngine(closures, n)
    phi = _classify(engine, "phi", strict=strict)
    psi = _classify(engine, "psi", strict=strict)
    k = distinct_counts(engine.stack(K_WORDS)).astype(np.int8)
    kf = distinct_counts(engine.stack(KF_WORDS)).astype(np.int8)
    return Analysis(phi, psi, k, kf)


@dataclass(frozen=True)
class OrbitFamily:
    values: dict[str, Subset]

    @property
    def distinct(self) -> int:
        return len({v.bits for v in self.values.values()})


@dataclass(frozen=True)
class PsiProfile:
    phi: int
    psi: int
    k: int
    kf: int


def _single(t: Topology, a: Subset | int) -> tuple[WordEngine, np.ndarray]:
    code = _code(a, t.n)
    return WordEngine(t.closure_table, t.n), np.array([[code]], dtype=np.uint16)


def orbit_family(t: Topology, a: Subset | int, cat: str | Sequence[str] = "KF") -> OrbitFamily:
    engine, value = _single(t, a)
    names = resolve_catalog(cat)
    return OrbitFamily({w: Subset(int(engine.apply(w, value)[0, 0]), t.n) for w in names})


def k_number(t: Topology, a: Subset | int) -> int:
    return orbit_family(t, a, "K").distinct


def kf_number(t: Topology, a: Subset | int) -> int:
    return orbit_family(t, a, "KF").distinct


def classify_phi(t: Topology, a: Subset | int) -> int:
    engine, value = _single(t, a)
    return int(_classify(engine, "phi", value)[0, 0])


def classify_psi(t: Topology, a: Subset | int) -> int:
    engine, value = _single(t, a)
    return int(_classify(engine, "psi", value)[0, 0])


def profile(t: Topology, a: Subset | int) -> PsiProfile:
    return PsiProfile(classify_phi(t, a), classify_psi(t, a), k_number(t, a), kf_number(t, a))


def subset_collapse(t: Topology, a: Subset | int, cat: str | Sequence[str] = "KF") -> Collapse:
    fam = orbit_family(t, a, cat)
    return Collapse.from_labels(list(fam.values), [v.bits for v in fam.values.values()])


def subset_ordering(t: Topology, a: Subset | int, cat: str | Sequence[str] = "KF") -> Ordering:
    fam = orbit_family(t, a, cat)
    names = list(fam.values)
    pairs = [(x, y) for x in names for y in names if fam.values[x].issubset(fam.values[y])]
    return Ordering(frozenset(names), frozenset(pairs))


# witnesses and duality


@lru_cache(maxsize=None)
def psi_witnesses() -> dict[int, tuple[tuple[int, ...], int]]:
    """First witness ``(singleton closures, subset code)`` of each ψ in the enumeration order."""
    raw = _data("psi_witnesses.json")
    return {int(k): (tuple(v["closures"]), int(v["subset"])) for k, v in raw["witnesses"].items()}


def witness_space(m: int) -> tuple[Topology, int]:
    library = psi_witnesses()
    if m not in library:
        raise NoWitnessFound(f"no stored witness for psi {m}")
    closures, code = library[m]
    return Topology.from_point_closures(closures), code


@lru_cache(maxsize=None)
def psi_dual(m: int) -> int:
    """ψ of the complement of any subset with ψ = ``m``."""
    t, code = witness_space(m)
    return classify_psi(t, code ^ t.full)


@lru_cache(maxsize=None)
def phi_dual(m: int) -> int:
    for psi, (closures, code) in psi_witnesses().items():
        t = Topology.from_point_closures(closures)
        if classify_phi(t, code) == m:
            return classify_phi(t, code ^ t.full)
    raise NoWitnessFound(f"no stored witness for phi {m}")


@lru_cache(maxsize=None)
def psi_recipes() -> tuple[tuple[int, int, tuple[str, ...]], ...]:
    """Constructions ``(m, n, recipes)``: from ψA = m some recipe B gives ψB = n."""
    return tuple((r["from"], r["to"], tuple(r["recipes"])) for r in _data("psi_recipes.json")["recipes"])


@dataclass(frozen=True)
class RecipeResult:
    source: int
    target: int
    recipe: str
    value: int
    psi: int

    @property
    def hit(self) -> bool:
        return self.psi == self.target


def psi_witness_constructions(t: Topology, a: Subset | int) -> list[RecipeResult]:
    """Evaluate the listed constructions for ψA and report the ψ of each result."""
    code = _code(a, t.n)
    m = classify_psi(t, code)
    engine = WordEngine(t.closure_table, t.n)
    env = {"A": np.array([[code]], dtype=np.uint16)}
    out = []
    for source, target, recipes in psi_recipes():
        if source != m:
            continue
        for recipe in recipes:
            value = int(evaluate(recipe, engine, env)[0, 0])
            out.append(RecipeResult(source, target, recipe, value, classify_psi(t, value)))
    return out
