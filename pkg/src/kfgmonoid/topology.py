"""Finite topological spaces stored as closure tables.

A subset of an ``n``-point universe is a bit code: point ``p`` belongs to the
subset exactly when bit ``p`` is set.  A topology is the table of closures of
all ``2**n`` codes.  Everything else (interior, boundary, border, open sets)
is derived from that table.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BaseDoesNotCoverUniverse, InvalidTopology, UniverseMismatch, UniverseTooLarge

MAX_POINTS = 16


def _check_size(n: int) -> None:
    if n > MAX_POINTS:
        raise UniverseTooLarge(f"universe of {n} points exceeds the cap of {MAX_POINTS}")
    if n < 1:
        raise ValueError("a space needs at least one point")


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of ``{0, ..., universe_size - 1}`` as a bit code."""

    bits: int
    universe_size: int

    def __post_init__(self) -> None:
        _check_size(self.universe_size)
        if self.bits < 0 or self.bits >> self.universe_size:
            raise ValueError(f"code {self.bits} does not fit a {self.universe_size}-point universe")

    @classmethod
    def from_points(cls, points: Iterable[int], n: int) -> "Subset":
        bits = 0
        for p in points:
            if not 0 <= p < n:
                raise ValueError(f"point {p} outside a {n}-point universe")
            bits |= 1 << p
        return cls(bits, n)

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls((1 << n) - 1, n)

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(p for p in range(self.universe_size) if self.bits >> p & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, p: int) -> bool:
        return bool(self.bits >> p & 1)

    def _same(self, other: "Subset") -> None:
        if other.universe_size != self.universe_size:
            raise UniverseMismatch("subsets live in different universes")

    def __or__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.bits | other.bits, self.universe_size)

    def __and__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.bits & other.bits, self.universe_size)

    def __sub__(self, other: "Subset") -> "Subset":
        self._same(other)
        return Subset(self.bits & ~other.bits, self.universe_size)

    def issubset(self, other: "Subset") -> bool:
        self._same(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> "Subset":
        return Subset(self.bits ^ ((1 << self.universe_size) - 1), self.universe_size)


def complement(s: Subset) -> Subset:
    """Complement of ``s`` within its universe."""
    return s.complement()


def _table_from_point_closures(point_closures: Sequence[int]) -> np.ndarray:
    # closure is additive, so the table is the OR-closure of the singleton rows
    n = len(point_closures)
    table = np.zeros(1 << n, dtype=np.int32)
    for p, c in enumerate(point_closures):
        half = 1 << p
        table[half : 2 * half] = table[:half] | c
    return table


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms_violated(self) -> set[str]:
        return {v.axiom for v in self.violations}


def validate_table(table: np.ndarray | Sequence[int], n: int) -> ValidationReport:
    """Check the four closure axioms at every entry and report each failure.

    Additivity is checked over all pairs when ``n <= 8``; above that it is checked
    on the decomposition ``S = (S minus its lowest point) + lowest point``, which
    is equivalent in aggregate but reports one witness pair per failing ``S``.
    """
    tab = np.asarray(table, dtype=np.int64)
    size = 1 << n
    if tab.shape != (size,):
        return ValidationReport((Violation("shape", (len(tab),)),))
    full = size - 1
    out: list[Violation] = []
    if (tab < 0).any() or (tab > full).any():
        for s in np.flatnonzero((tab < 0) | (tab > full)):
            out.append(Violation("range", (int(s),)))
        return ValidationReport(tuple(out))
    codes = np.arange(size, dtype=np.int64)
    if tab[0] != 0:
        out.append(Violation("b∅=∅", (0,)))
    for s in np.flatnonzero(codes & ~tab):
        out.append(Violation("A⊆bA", (int(s),)))
    for s in np.flatnonzero(tab[tab] != tab):
        out.append(Violation("bbA=bA", (int(s),)))
    if n <= 8:
        joined = tab[codes[:, None] | codes[None, :]]
        bad = np.argwhere(joined != (tab[:, None] | tab[None, :]))
        for s, t in bad:
            if s < t:
                out.append(Violation("additivity", (int(s), int(t))))
    else:
        low = codes & -codes
        rest = codes ^ low
        bad = np.flatnonzero(tab != (tab[rest] | tab[low]))
        for s in bad:
            out.append(Violation("additivity", (int(rest[s]), int(low[s]))))
    return ValidationReport(tuple(out))


class Topology:
    """A finite topology on ``n`` points given by its closure table."""

    __slots__ = ("n", "closure_table")

    def __init__(self, n: int, closure_table: Sequence[int] | np.ndarray, check: bool = True):
        _check_size(n)
        table = np.array(closure_table, dtype=np.int32)
        if check:
            report = validate_table(table, n)
            if not report.ok:
                first = report.violations[0]
                raise InvalidTopology(f"closure axiom {first.axiom} fails at {first.witness}")
        table.setflags(write=False)
        self.n = n
        self.closure_table = table

    # constructors

    @classmethod
    def from_point_closures(cls, point_closures: Sequence[int]) -> "Topology":
        """Build from the closure of each singleton (the specialization preorder)."""
        n = len(point_closures)
        _check_size(n)
        return cls(n, _table_from_point_closures(point_closures), check=False)

    @classmethod
    def discrete(cls, n: int) -> "Topology":
        return cls.from_point_closures([1 << p for p in range(n)])

    @classmethod
    def indiscrete(cls, n: int) -> "Topology":
        return cls.from_point_closures([(1 << n) - 1] * n)

    # derived data

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def point_closures(self) -> tuple[int, ...]:
        return tuple(int(self.closure_table[1 << p]) for p in range(self.n))

    def opens(self) -> list[int]:
        codes = np.arange(1 << self.n)
        comp = codes ^ self.full
        return [int(c) for c in codes[self.closure_table[comp] == comp]]

    def closed_sets(self) -> list[int]:
        codes = np.arange(1 << self.n)
        return [int(c) for c in codes[self.closure_table == codes]]

    def closure_code(self, s: int) -> int:
        return int(self.closure_table[s])

    def interior_code(self, s: int) -> int:
        return self.full ^ int(self.closure_table[self.full ^ s])

    def boundary_code(self, s: int) -> int:
        return int(self.closure_table[s]) & int(self.closure_table[self.full ^ s])

    def border_code(self, s: int) -> int:
        return s & int(self.closure_table[self.full ^ s])

    def relabel(self, perm: Sequence[int]) -> "Topology":
        """Move point ``p`` to position ``perm[p]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the points")

        def move(code: int) -> int:
            return sum(1 << perm[p] for p in range(self.n) if code >> p & 1)

        closures = [0] * self.n
        for p, c in enumerate(self.point_closures()):
            closures[perm[p]] = move(c)
        return Topology.from_point_closures(closures)

    # serialization

    def to_dict(self) -> dict:
        return {"n": self.n, "closure": [int(x) for x in self.closure_table]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Topology":
        return cls(int(data["n"]), data["closure"])

    @classmethod
    def from_json(cls, text: str) -> "Topology":
        return cls.from_dict(json.loads(text))

    # comparisons

    def key(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.closure_table)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Topology) and self.n == other.n and np.array_equal(
            self.closure_table, other.closure_table
        )

    def __hash__(self) -> int:
        return hash((self.n, self.closure_table.tobytes()))

    def __repr__(self) -> str:
        return f"Topology(n={self.n}, opens={len(self.opens())})"


def _code(s: Subset | int, n: int) -> int:
    if isinstance(s, Subset):
        if s.universe_size != n:
            raise UniverseMismatch("subset and space have different universes")
        return s.bits
    return Subset(int(s), n).bits


def from_base(base: Iterable[Subset | int | Iterable[int]], n: int) -> Topology:
    """The topology whose open sets are the unions of the given base elements.

    Base elements may be ``Subset`` values, integer codes, or iterables of point
    indices.  A family that is not closed under finite intersections is treated
    as a subbase, which yields the same opens whenever it is a genuine base.
    """
    _check_size(n)
    codes: list[int] = []
    for element in base:
        if isinstance(element, (Subset, int)):
            codes.append(_code(element, n))
        else:
            codes.append(Subset.from_points(element, n).bits)
    full = (1 << n) - 1
    covered = 0
    for c in codes:
        covered |= c
    if covered != full:
        raise BaseDoesNotCoverUniverse(f"base covers {covered:#x}, universe is {full:#x}")
    closures = []
    for p in range(n):
        avoiding = 0
        for c in codes:
            if not c >> p & 1:
                avoiding |= c
        closures.append(full ^ avoiding)
    return Topology.from_point_closures(closures)


def validate(t: Topology | tuple[int, Sequence[int]]) -> ValidationReport:
    """Report every violated closure axiom of a topology or a raw ``(n, table)`` pair."""
    if isinstance(t, Topology):
        return validate_table(t.closure_table, t.n)
    n, table = t
    return validate_table(table, n)


def closure(t: Topology, s: Subset) -> Subset:
    return Subset(t.closure_code(_code(s, t.n)), t.n)


def interior(t: Topology, s: Subset) -> Subset:
    return Subset(t.interior_code(_code(s, t.n)), t.n)


def boundary(t: Topology, s: Subset) -> Subset:
    return Subset(t.boundary_code(_code(s, t.n)), t.n)


def border(t: Topology, s: Subset) -> Subset:
    return Subset(t.border_code(_code(s, t.n)), t.n)


def points_subset(t: Topology, points: Iterable[int]) -> Subset:
    return Subset.from_points(points, t.n)
