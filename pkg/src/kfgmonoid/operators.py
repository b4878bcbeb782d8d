"""Extensional set operators, the word catalog, and the identity checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

import numpy as np

from . import catalog
from .engine import WordEngine
from .errors import UnknownWord, UniverseMismatch
from .expressions import evaluate, parse, relation_holds, variables
from .topology import Topology

TWO_VARIABLE_CAP = 7


class SetOperator:
    """A map on the subsets of an ``n``-point universe, stored as its image table."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table: Sequence[int] | np.ndarray):
        arr = np.array(table, dtype=np.int64)
        size = 1 << n
        if arr.shape != (size,):
            raise ValueError(f"an operator on {n} points needs {size} entries")
        if (arr < 0).any() or (arr >= size).any():
            raise ValueError("image outside the universe")
        arr.setflags(write=False)
        self.n = n
        self.table = arr

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __call__(self, code: int) -> int:
        return int(self.table[code])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SetOperator) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        return f"SetOperator(n={self.n}, table={self.table.tolist()})"

    @classmethod
    def identity(cls, n: int) -> "SetOperator":
        return cls(n, np.arange(1 << n))

    @classmethod
    def complement(cls, n: int) -> "SetOperator":
        return cls(n, np.arange(1 << n) ^ ((1 << n) - 1))

    @classmethod
    def constant(cls, n: int, code: int) -> "SetOperator":
        return cls(n, np.full(1 << n, code))


@dataclass(frozen=True)
class OperatorWord:
    """A recognized catalog spelling such as ``bib``, ``fif`` or ``afbg``."""

    name: str

    def __post_init__(self) -> None:
        if self.name not in catalog.RECOGNIZED:
            raise UnknownWord(f"{self.name!r} is not a recognized operator word")

    @property
    def even(self) -> bool:
        return self.name in catalog.KFG0

    def __str__(self) -> str:
        return self.name


def _same(o1: SetOperator, o2: SetOperator) -> None:
    if o1.n != o2.n:
        raise UniverseMismatch(f"operators on {o1.n} and {o2.n} points")


def word_to_operator(t: Topology, w: OperatorWord | str) -> SetOperator:
    """Evaluate a catalog word (right to left) on every subset of ``t``."""
    name = w.name if isinstance(w, OperatorWord) else OperatorWord(w).name
    engine = WordEngine(t.closure_table, t.n)
    return SetOperator(t.n, engine.table(name)[0])


def compose(o1: SetOperator, o2: SetOperator) -> SetOperator:
    """``o1 o2``: apply ``o2`` first."""
    _same(o1, o2)
    return SetOperator(o1.n, o1.table[o2.table])


def dual(o: SetOperator) -> SetOperator:
    """``a o a``."""
    a = SetOperator.complement(o.n)
    return compose(a, compose(o, a))


def lattice(op: str, o1: SetOperator, o2: SetOperator | None = None) -> SetOperator:
    """Pointwise ``join``/``meet``/``difference`` or left ``complement``."""
    if op == "complement":
        return SetOperator(o1.n, o1.table ^ o1.full)
    if o2 is None:
        raise ValueError(f"{op} needs two operators")
    _same(o1, o2)
    if op == "join":
        return SetOperator(o1.n, o1.table | o2.table)
    if op == "meet":
        return SetOperator(o1.n, o1.table & o2.table)
    if op == "difference":
        return SetOperator(o1.n, o1.table & ~o2.table & o1.full)
    raise ValueError(f"unknown lattice operation {op!r}")


def leq(o1: SetOperator, o2: SetOperator) -> bool:
    _same(o1, o2)
    return bool(((o1.table & ~o2.table) == 0).all())


def disjoint(o1: SetOperator, o2: SetOperator) -> bool:
    _same(o1, o2)
    return bool(((o1.table & o2.table) == 0).all())


# identity catalog


@dataclass(frozen=True)
class Statement:
    lhs: str
    relation: str
    rhs: str

    def __str__(self) -> str:
        return f"{self.lhs} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class Identity:
    name: str
    conclusion: Statement
    hypotheses: tuple[Statement, ...] = ()
    scope: str = "subset"
    types: tuple[str, ...] | None = None

    @property
    def arity(self) -> int:
        names: set[str] = set()
        for s in (self.conclusion, *self.hypotheses):
            names |= variables(parse(s.lhs)) | variables(parse(s.rhs))
        return 2 if "B" in names else 1


@lru_cache(maxsize=None)
def identity_catalog() -> tuple[Identity, ...]:
    """The identity and implication catalog shipped with the package."""
    raw = json.loads(resources.files("kfgmonoid.data").joinpath("identities.json").read_text())
    out = []
    for rec in raw["identities"]:
        types = tuple(rec["types"]) if "types" in rec else None
        out.append(
            Identity(
                name=rec["name"],
                conclusion=Statement(*rec["conclusion"]),
                hypotheses=tuple(Statement(*h) for h in rec["hypotheses"]),
                scope=rec["scope"],
                types=types,
            )
        )
    return tuple(out)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    status: str  # "pass", "fail", "skipped" or "not-applicable"
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class IdentityReport:
    results: tuple[IdentityResult, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def failures(self) -> list[IdentityResult]:
        return [r for r in self.results if r.status == "fail"]


def _truth(engine: WordEngine, s: Statement, env: dict[str, np.ndarray]) -> np.ndarray:
    return relation_holds(s.relation, evaluate(s.lhs, engine, env), evaluate(s.rhs, engine, env))


def check_identities(
    closures: np.ndarray,
    n: int,
    types: Sequence[str] | None = None,
    identities: Iterable[Identity] | None = None,
    two_variable_cap: int = TWO_VARIABLE_CAP,
) -> dict[str, np.ndarray]:
    """Batch check over ``S`` spaces of equal size.

    Returns, per identity name, an int array of length ``S``: ``-1`` when the
    identity holds (or does not apply), otherwise the first failing subset code
    (for two variables, ``A * 2**n + B``).  Skipped identities are omitted.
    """
    closures = np.atleast_2d(closures)
    engine = WordEngine(closures, n)
    size = 1 << n
    codes = np.arange(size, dtype=engine.identity.dtype)
    one = {"A": np.broadcast_to(codes, closures.shape)}
    two = None
    out: dict[str, np.ndarray] = {}
    for ident in identity_catalog() if identities is None else identities:
        applies = np.ones(closures.shape[0], dtype=bool)
        if ident.types is not None:
            if types is None:
                raise ValueError("space types are needed for type-conditional identities")
            applies = np.isin(np.asarray(types), ident.types)
        if ident.arity == 2:
            if n > two_variable_cap:
                continue
            if two is None:
                grid_a, grid_b = np.meshgrid(codes, codes, indexing="ij")
                shape = (closures.shape[0], size * size)
                two = {"A": np.broadcast_to(grid_a.ravel(), shape), "B": np.broadcast_to(grid_b.ravel(), shape)}
            env = two
        else:
            env = one
        conclusion = _truth(engine, ident.conclusion, env)
        hyp = np.ones_like(conclusion)
        for h in ident.hypotheses:
            truth = _truth(engine, h, env)
            hyp &= truth.all(axis=1, keepdims=True) if ident.scope == "space" else truth
        bad = hyp & ~conclusion & applies[:, None]
        first = np.where(bad.any(axis=1), bad.argmax(axis=1), -1)
        out[ident.name] = first
    return out


def verify_identities(t: Topology, two_variable_cap: int = TWO_VARIABLE_CAP) -> IdentityReport:
    """Check every catalog identity on every subset (or subset pair) of ``t``."""
    from .monoid import classify_space

    kind = classify_space(t).value
    found = check_identities(t.closure_table, t.n, [kind], two_variable_cap=two_variable_cap)
    size = 1 << t.n
    results = []
    for ident in identity_catalog():
        if ident.name not in found:
            results.append(IdentityResult(ident.name, "skipped"))
        elif ident.types is not None and kind not in ident.types:
            results.append(IdentityResult(ident.name, "not-applicable"))
        else:
            code = int(found[ident.name][0])
            if code < 0:
                results.append(IdentityResult(ident.name, "pass"))
            elif ident.arity == 2:
                results.append(IdentityResult(ident.name, "fail", (code // size, code % size)))
            else:
                results.append(IdentityResult(ident.name, "fail", (code,)))
    return IdentityReport(tuple(results))


# composition table


@lru_cache(maxsize=None)
def multiplication_table() -> dict[tuple[str, str], str]:
    """Reference products ``(row, column) -> row∘column`` of the eighteen even words."""
    raw = json.loads(resources.files("kfgmonoid.data").joinpath("table3.json").read_text())
    return {(row[0], col): entry for row in raw["rows"] for col, entry in zip(raw["columns"], row[1:])}


def verify_multiplication(t: Topology) -> list[tuple[str, str, str]]:
    """Entries whose composed operator differs from the tabulated word on ``t``."""
    engine = WordEngine(t.closure_table, t.n)
    ops = {w: SetOperator(t.n, engine.table(w)[0]) for w in catalog.KFG}
    return [(r, c, e) for (r, c), e in multiplication_table().items() if compose(ops[r], ops[c]) != ops[e]]
