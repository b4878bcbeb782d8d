"""Sum spaces, the φ/ψ meet semilattices, topsum reports and ψ implications."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from . import catalog
from .census import summaries
from .engine import WordEngine
from .enumeration import enumerate_classes
from .errors import MeetMismatch, MissingWitness, UniverseTooLarge
from .expressions import evaluate
from .monoid import Collapse, SpaceType, space_collapse
from .subsets import analyze, classify_phi, classify_psi, psi_recipes, psi_witnesses, subset_collapse
from .topology import MAX_POINTS, Topology, from_base


@dataclass(frozen=True)
class SumSpec:
    """Ordered components of a disjoint union; component ``i`` starts at ``offsets[i]``."""

    components: tuple[Topology, ...]

    def __init__(self, components: Iterable[Topology]):
        comps = tuple(components)
        object.__setattr__(self, "components", comps)
        if self.n > MAX_POINTS:
            raise UniverseTooLarge(f"sum has {self.n} points, the cap is {MAX_POINTS}")

    @property
    def n(self) -> int:
        return sum(t.n for t in self.components)

    @property
    def offsets(self) -> tuple[int, ...]:
        out, start = [], 0
        for t in self.components:
            out.append(start)
            start += t.n
        return tuple(out)

    def embed(self, codes: Sequence[int]) -> int:
        """The subset ``A_1 ⊔ ... ⊔ A_k`` from one subset code per component."""
        if len(codes) != len(self.components):
            raise ValueError("one subset per component is required")
        return sum(int(c) << off for c, off in zip(codes, self.offsets))


def sum_space(spec: SumSpec | Iterable[Topology]) -> Topology:
    """Disjoint union: the open sets are the unions of component open sets."""
    if not isinstance(spec, SumSpec):
        spec = SumSpec(spec)
    closures: list[int] = []
    for t, off in zip(spec.components, spec.offsets):
        closures.extend(c << off for c in t.point_closures())
    if not closures:
        raise ValueError("a sum needs at least one component")
    return Topology.from_point_closures(closures)


def copies(t: Topology, count: int) -> Topology:
    return sum_space([t] * count)


# witnesses and canonical collapses


def _witness(m: int) -> tuple[Topology, int]:
    library = psi_witnesses()
    if m not in library:
        raise MissingWitness(f"no witness for psi {m}")
    closures, code = library[m]
    return Topology.from_point_closures(closures), code


@lru_cache(maxsize=None)
def _phi_witnesses() -> dict[int, tuple[Topology, int]]:
    out: dict[int, tuple[Topology, int]] = {}
    for m in sorted(psi_witnesses()):
        t, code = _witness(m)
        out.setdefault(classify_phi(t, code), (t, code))
    return out


def _phi_witness(m: int) -> tuple[Topology, int]:
    found = _phi_witnesses()
    if m not in found:
        raise MissingWitness(f"no witness for phi {m}")
    return found[m]


@lru_cache(maxsize=None)
def psi_collapses() -> dict[int, Collapse]:
    """Local KF collapse of each ψ, read off its witness."""
    return {m: subset_collapse(*_witness(m), "KF") for m in sorted(psi_witnesses())}


@lru_cache(maxsize=None)
def phi_collapses() -> dict[int, Collapse]:
    return {m: subset_collapse(*_phi_witness(m), "K") for m in sorted(_phi_witnesses())}


def _by_collapse(table: dict[int, Collapse], c: Collapse, kind: str) -> int:
    for m, other in table.items():
        if other == c:
            return m
    raise MeetMismatch(f"the intersected collapse is not a {kind} collapse")


def _realize(kind: str, m: int, k: int) -> int:
    (t1, a1), (t2, a2) = (_witness(m), _witness(k)) if kind == "psi" else (_phi_witness(m), _phi_witness(k))
    spec = SumSpec([t1, t2])
    classify = classify_psi if kind == "psi" else classify_phi
    return classify(sum_space(spec), spec.embed([a1, a2]))


def psi_meet(m: int, k: int, realize: bool = True) -> int:
    """ψ of ``A₁ ⊔ A₂`` when ψA₁ = m and ψA₂ = k.

    Computed from the intersection of the two local collapses; with ``realize``
    the witnesses are also summed and classified, and the two routes must agree.
    """
    table = psi_collapses()
    if m not in table or k not in table:
        raise MissingWitness(f"no witness for psi {m if m not in table else k}")
    value = _by_collapse(table, table[m].meet(table[k]), "psi")
    if realize and _realize("psi", m, k) != value:
        raise MeetMismatch(f"psi meet of {m} and {k}: routes disagree")
    return value


def phi_meet(m: int, k: int, realize: bool = True) -> int:
    table = phi_collapses()
    if m not in table or k not in table:
        raise MissingWitness(f"no witness for phi {m if m not in table else k}")
    value = _by_collapse(table, table[m].meet(table[k]), "phi")
    if realize and _realize("phi", m, k) != value:
        raise MeetMismatch(f"phi meet of {m} and {k}: routes disagree")
    return value


@dataclass(frozen=True)
class MeetTable:
    """Square meet table over labels ``1..size``; ``values[m-1, k-1]`` is the meet."""

    kind: str
    values: np.ndarray

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def meet(self, m: int, k: int) -> int:
        return int(self.values[m - 1, k - 1])

    def is_commutative(self) -> bool:
        return bool((self.values == self.values.T).all())

    def is_idempotent(self) -> bool:
        return bool((np.diag(self.values) == np.arange(1, self.size + 1)).all())

    def is_associative(self) -> bool:
        v = self.values - 1
        # (x∧y)∧z against x∧(y∧z) for every triple
        left = v[v, :]  # left[x, y, z] = (x∧y)∧z
        right = v[np.arange(self.size)[:, None, None], v[None, :, :]]
        return bool((left == right).all())

    def is_semilattice(self) -> bool:
        return self.is_commutative() and self.is_idempotent() and self.is_associative()

    def below_min(self) -> bool:
        """Meets never exceed the smaller label."""
        idx = np.arange(1, self.size + 1)
        return bool((self.values <= np.minimum(idx[:, None], idx[None, :])).all())

    def height(self) -> int:
        """Length (in cover steps) of the longest chain of ``x ≤ y iff x∧y = x``."""
        size = self.size
        leq = self.values == np.arange(1, size + 1)[:, None]  # leq[x, y]: x∧y = x
        depth = [0] * size
        # labels below a given label are smaller, so ascending order is a linear extension
        for y in range(size):
            for x in range(y):
                if leq[x, y]:
                    depth[y] = max(depth[y], depth[x] + 1)
        return max(depth)

    def to_csv(self) -> str:
        header = "meet," + ",".join(str(k) for k in range(1, self.size + 1))
        rows = [f"{m}," + ",".join(str(int(v)) for v in self.values[m - 1]) for m in range(1, self.size + 1)]
        return "\n".join([header, *rows]) + "\n"


@lru_cache(maxsize=None)
def meet_table(kind: str = "psi") -> MeetTable:
    """Full meet table from collapse intersections."""
    table = psi_collapses() if kind == "psi" else phi_collapses()
    labels = sorted(table)
    size = len(labels)
    values = np.zeros((size, size), dtype=np.int16)
    for i, m in enumerate(labels):
        for j, k in enumerate(labels):
            if j < i:
                values[i, j] = values[j, i]
            else:
                values[i, j] = _by_collapse(table, table[m].meet(table[k]), kind)
    return MeetTable(kind, values)


@dataclass(frozen=True)
class RealizationReport:
    checked: int
    mismatches: tuple[tuple[int, int, int, int], ...]  # (m, k, by collapse, by sum)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def realize_meets(kind: str = "psi", pairs: Iterable[tuple[int, int]] | None = None) -> RealizationReport:
    """Classify the sum of witnesses for each pair and compare with the table."""
    table = meet_table(kind)
    if pairs is None:
        pairs = [(m, k) for m in range(1, table.size + 1) for k in range(m, table.size + 1)]
    checked, bad = 0, []
    for m, k in pairs:
        got = _realize(kind, m, k)
        checked += 1
        if got != table.meet(m, k):
            bad.append((m, k, table.meet(m, k), got))
    return RealizationReport(checked, tuple(bad))


def collapse_intersection_sample(samples: int = 10_000, max_n: int = 6, seed: int = 0) -> RealizationReport:
    """Random component subsets: the collapse of ``A₁ ⊔ A₂`` against the meet of the two collapses."""
    rng = random.Random(seed)
    pool = [s.topology for n in range(1, max_n + 1) for s in enumerate_classes(n)]
    table = psi_collapses()
    engines: dict[Topology, tuple[WordEngine, np.ndarray]] = {}

    def values(t: Topology) -> tuple[WordEngine, np.ndarray]:
        if t not in engines:
            engine = WordEngine(t.closure_table, t.n)
            engines[t] = (engine, engine.stack(catalog.KF)[:, 0, :])
        return engines[t]

    bad = []
    for _ in range(samples):
        t1, t2 = rng.choice(pool), rng.choice(pool)
        a1, a2 = rng.randrange(1 << t1.n), rng.randrange(1 << t2.n)
        # the sum's word values are the component values side by side
        total = SumSpec([t1, t2])
        joint = values(t1)[1][:, a1].astype(np.int64) | (values(t2)[1][:, a2].astype(np.int64) << t1.n)
        observed = Collapse.from_labels(catalog.KF, joint.tolist())
        expected = subset_collapse(t1, a1).meet(subset_collapse(t2, a2))
        if observed != expected or _by_collapse(table, observed, "psi") != classify_psi(sum_space(total), total.embed([a1, a2])):
            bad.append((classify_psi(t1, a1), classify_psi(t2, a2), 0, 0))
    return RealizationReport(samples, tuple(bad))


# minimal spaces and topsums

MINIMAL_BASES: dict[str, tuple[int, tuple[tuple[int, ...], ...]]] = {
    "GE": (4, ((0,), (1, 2), (0, 1, 2, 3))),
    "KD": (5, ((0,), (1,), (0, 1, 2), (3, 4))),
    "ED": (3, ((0, 1), (0, 1, 2))),
    "OU": (3, ((0,), (1,), (0, 1, 2))),
    "EO": (2, ((0,), (0, 1))),
    "P": (2, ((0, 1),)),
    "D": (1, ((0,),)),
}

TOPSUM_SPACES: dict[str, tuple[int, tuple[tuple[int, ...], ...]]] = {
    "GE": MINIMAL_BASES["GE"],
    "KD": MINIMAL_BASES["KD"],
    "OU": MINIMAL_BASES["OU"],
    "ED": MINIMAL_BASES["ED"],
    "EO": MINIMAL_BASES["EO"],
    "partition-non-indiscrete": (3, ((0,), (1, 2))),
    "partition-indiscrete": MINIMAL_BASES["P"],
    "discrete-multi": (2, ((0,), (1,))),
    "discrete-single": MINIMAL_BASES["D"],
}


def minimal_space(kind: str | SpaceType) -> Topology:
    """Smallest space of a type (or of a topsum column such as ``partition-indiscrete``)."""
    key = str(getattr(kind, "value", kind))
    if key not in TOPSUM_SPACES and key not in MINIMAL_BASES:
        raise ValueError(f"unknown minimal space {key!r}")
    n, base = MINIMAL_BASES.get(key) or TOPSUM_SPACES[key]
    return from_base(base, n)


@dataclass(frozen=True)
class TopsumReport:
    copies: int
    new_psi: frozenset[int]  # ψ ≤ 68 present in X_n but not in X_{n-1}
    k: int
    kf: int
    kf_global: int  # |KF| of the space

    @property
    def completely_full(self) -> bool:
        return self.kf == self.kf_global


def _psi_profile(t: Topology) -> tuple[frozenset[int], int, int]:
    a = analyze(t.closure_table, t.n)
    return frozenset(int(v) for v in np.unique(a.psi)), int(a.k.max()), int(a.kf.max())


def topsum_report(base: str | SpaceType | Topology, count: int) -> TopsumReport:
    """ψ-numbers new to ``X_count`` and its ``(k, k_f)``; ``X_0`` is a single point."""
    t = base if isinstance(base, Topology) else minimal_space(base)
    if count < 1:
        raise ValueError("copies must be positive")
    if t.n * count > MAX_POINTS:
        raise UniverseTooLarge(f"{count} copies of a {t.n}-point space exceed {MAX_POINTS} points")
    previous = _psi_profile(copies(t, count - 1))[0] if count > 1 else frozenset({69, 70})
    present, k, kf = _psi_profile(copies(t, count))
    new = frozenset(m for m in present - previous if m <= 68)
    return TopsumReport(count, new, k, kf, len(space_collapse(t, "KF")))


def increment_profile(t: Topology, max_points: int = MAX_POINTS) -> list[tuple[int, int]]:
    """``(k, k_f)`` of ``X_1, X_2, ...`` while the sum fits under ``max_points``."""
    out = []
    for count in range(1, max_points // t.n + 1):
        _, k, kf = _psi_profile(copies(t, count))
        out.append((k, kf))
    return out


# ψ implications


@lru_cache(maxsize=None)
def psi_implications() -> tuple[tuple[frozenset[int], ...], tuple[tuple[int, int], ...]]:
    raw = json.loads(resources.files("kfgmonoid.data").joinpath("psi_implications.json").read_text())
    groups = tuple(frozenset(g) for g in raw["groups"])
    return groups, tuple((int(a), int(b)) for a, b in raw["edges"])


@dataclass(frozen=True)
class ImplicationReport:
    spaces: int
    edge_failures: tuple[tuple[int, str, int, int], ...]  # (n, space key, m, target)
    recipe_failures: tuple[tuple[int, str, int, int], ...]  # (n, space key, m, target): no recipe hit

    @property
    def ok(self) -> bool:
        return not self.edge_failures and not self.recipe_failures


def verify_psi_implications(max_n: int = 6) -> ImplicationReport:
    """Every subset with ψ = m comes with subsets in each implied ψ class.

    Implications between dual classes are checked per space; listed recipes
    are evaluated at every subset with the source ψ.
    """
    groups, edges = psi_implications()
    group_of = {m: g for g in groups for m in g}
    recipes: dict[int, list[tuple[int, tuple[str, ...]]]] = {}
    for source, target, rs in psi_recipes():
        if rs:
            recipes.setdefault(source, []).append((target, rs))
    edge_bad: list[tuple[int, str, int, int]] = []
    recipe_bad: list[tuple[int, str, int, int]] = []
    count = 0
    for n in range(1, max_n + 1):
        summ = summaries(n)
        count += len(summ.spaces)
        for s, space in enumerate(summ.spaces):
            present = set(np.flatnonzero(summ.psi[s]).tolist())
            for source, target in edges:
                if present & group_of[source] and not present & group_of[target]:
                    edge_bad.append((n, space.key, source, target))
        for start in range(0, len(summ.spaces), 1024):
            part = summ.spaces[start : start + 1024]
            tables = np.stack([sp.closure_table for sp in part])
            engine = WordEngine(tables, n)
            psi = analyze(tables, n).psi
            env = {"A": engine.identity}
            for source, entries in recipes.items():
                mask = psi == source
                if not mask.any():
                    continue
                for target, rs in entries:
                    hit = np.zeros_like(mask)
                    for r in rs:
                        image = evaluate(r, engine, env).astype(np.int64)
                        hit |= np.take_along_axis(psi, image, axis=1) == target
                    for s in np.flatnonzero((mask & ~hit).any(axis=1)):
                        recipe_bad.append((n, part[s].key, source, target))
    return ImplicationReport(count, tuple(edge_bad), tuple(recipe_bad))


# eleven-point witness topologies

_LETTERS = "pqrstuvwxyz"

WITNESS_BASES: dict[str, tuple[str, ...]] = {
    "T1": ("pq", "rs", "tu", "vw", "pqrsx", "vwy", "pqtuvwyz"),
    "T2": ("pq", "rs", "tu", "vw", "rsx", "vwy", "tuvwyz"),
    "T3": ("pq", "rs", "tu", "pqrstuv", "pqrsw", "pqx", "rsy", "tuz"),
    "T4": ("pq", "rs", "tu", "pqrsv", "pqtuw", "pqx", "rstuy", "rsz"),
}


def _span(*parts: Iterable[int]) -> frozenset[int]:
    return frozenset(m for p in parts for m in p)


CLAIMED_PSI: dict[str, frozenset[int]] = {
    "T1": _span(range(5, 20), range(24, 31)) - {6, 13},
    "T2": _span((6, 13), range(20, 23), range(31, 69)) - {57},
    "T3": frozenset({2, 3, 4, 57}),
    "T4": frozenset({1, 23}),
}

# a ten-point space on q..z realizing all thirty φ-numbers
PHI_COMPLETE_BASE = ("q", "r", "s", "tu", "vw", "qx", "rsy", "qvwxz")


def lettered_space(base: Iterable[str], letters: str = _LETTERS) -> Topology:
    return from_base([[letters.index(ch) for ch in element] for element in base], len(letters))


@dataclass(frozen=True)
class WitnessReport:
    generated: dict[str, frozenset[int]]
    claimed: dict[str, frozenset[int]]

    def missing(self, name: str) -> frozenset[int]:
        return self.claimed[name] - self.generated[name]

    @property
    def partition(self) -> bool:
        """The claimed sets are disjoint and cover ``1..68`` apart from the shared 61."""
        sets = list(self.claimed.values())
        union = _span(*sets)
        return sum(len(s) for s in sets) == len(union) and union | {61} == set(range(1, 69))

    @property
    def ok(self) -> bool:
        return self.partition and all(
            not self.missing(k) and 61 in self.generated[k] for k in self.claimed
        )


def witness_topologies() -> WitnessReport:
    """Classify all subsets of the four eleven-point witness spaces."""
    generated = {}
    for name, base in WITNESS_BASES.items():
        t = lettered_space(base)
        generated[name] = frozenset(int(v) for v in np.unique(analyze(t.closure_table, t.n).psi))
    return WitnessReport(generated, dict(CLAIMED_PSI))


def phi_complete_space() -> tuple[Topology, frozenset[int]]:
    t = lettered_space(PHI_COMPLETE_BASE, "qrstuvwxyz")
    return t, frozenset(int(v) for v in np.unique(analyze(t.closure_table, t.n).phi))
