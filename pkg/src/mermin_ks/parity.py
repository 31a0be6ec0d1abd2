"""Contextuality checks over abstract incidence systems.

An incidence system is a list of contexts, each a set of outcome ids.  A
noncontextual {0, 1} assignment must give exactly one outcome the value 1 in
every context.  This module certifies parity proofs (each outcome in an even
number of contexts, odd number of contexts), searches for assignments
exhaustively, and computes the largest number of contexts any single
assignment can satisfy.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from . import _kernels

Outcome = Hashable


@dataclass(frozen=True)
class IncidenceSystem:
    outcomes: tuple[Outcome, ...]
    contexts: tuple[tuple[Outcome, ...], ...]
    rank: int | None = None
    dimension: int | None = None

    def __post_init__(self):
        contexts = tuple(tuple(c) for c in self.contexts)
        object.__setattr__(self, "contexts", contexts)
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if len(set(self.outcomes)) != len(self.outcomes):
            raise ValueError("duplicate outcome ids")
        known = set(self.outcomes)
        used = set()
        for k, c in enumerate(contexts):
            if not c:
                raise ValueError(f"context {k} is empty")
            if len(set(c)) != len(c):
                raise ValueError(f"context {k} repeats an outcome")
            missing = set(c) - known
            if missing:
                raise ValueError(f"context {k} uses unknown outcomes {sorted(map(str, missing))}")
            used.update(c)
        unused = known - used
        if unused:
            raise ValueError(f"outcomes in no context: {sorted(map(str, unused))}")

    @classmethod
    def from_contexts(cls, contexts: Iterable[Iterable[Outcome]], **meta) -> IncidenceSystem:
        contexts = [tuple(c) for c in contexts]
        seen: dict[Outcome, None] = {}
        for c in contexts:
            for o in c:
                seen.setdefault(o, None)
        return cls(tuple(seen), tuple(contexts), **meta)

    def index(self) -> dict[Outcome, int]:
        return {o: i for i, o in enumerate(self.outcomes)}

    def masks(self) -> list[int]:
        idx = self.index()
        return [sum(1 << idx[o] for o in c) for c in self.contexts]

    def relabel(self, mapping: Mapping[Outcome, Outcome]) -> IncidenceSystem:
        return IncidenceSystem(
            tuple(mapping[o] for o in self.outcomes),
            tuple(tuple(mapping[o] for o in c) for c in self.contexts),
            self.rank,
            self.dimension,
        )

    def to_json(self) -> dict:
        out = {
            "outcomes": [_jsonable(o) for o in self.outcomes],
            "contexts": [[_jsonable(o) for o in c] for c in self.contexts],
        }
        if self.rank is not None:
            out["rank"] = self.rank
        if self.dimension is not None:
            out["dimension"] = self.dimension
        return out


def _jsonable(o):
    if isinstance(o, (tuple, frozenset)):
        return list(sorted(o) if isinstance(o, frozenset) else o)
    return o


def _outcome_key(o):
    return tuple(o) if isinstance(o, list) else o


def system_from_json(obj: Mapping) -> IncidenceSystem:
    """Parse ``{"outcomes": [...], "contexts": [[...], ...]}``.

    ``outcomes`` may be omitted, in which case first appearance order is used.
    List-valued ids (e.g. ``[1, 7]`` for a plane) become tuples.
    """
    if "contexts" not in obj:
        raise ValueError("incidence system JSON needs a 'contexts' list")
    contexts = [tuple(_outcome_key(o) for o in c) for c in obj["contexts"]]
    meta = {k: obj[k] for k in ("rank", "dimension") if k in obj}
    if "outcomes" in obj:
        return IncidenceSystem(tuple(_outcome_key(o) for o in obj["outcomes"]), tuple(contexts), **meta)
    return IncidenceSystem.from_contexts(contexts, **meta)


def load_system(path: str | Path) -> IncidenceSystem:
    with open(path, encoding="utf-8") as fh:
        return system_from_json(json.load(fh))


def from_relations(rs) -> IncidenceSystem:
    """Incidence system of a rank-1 relation set or a rank-2 proof.

    Rank-1 outcomes are ray ids; rank-2 outcomes are sorted ray-id pairs.
    """
    from .bases import RelationSet
    from .rank2 import Rank2Proof

    if isinstance(rs, Rank2Proof):
        return IncidenceSystem.from_contexts(
            (tuple(tuple(sorted(p)) for p in m) for m in rs.matchings), rank=2, dimension=8
        )
    if isinstance(rs, RelationSet):
        return IncidenceSystem.from_contexts(rs.relations, rank=1, dimension=8)
    return IncidenceSystem.from_contexts(rs)


# ---------------------------------------------------------------- parity


@dataclass(frozen=True)
class ParityCertificate:
    valid: bool
    multiplicities: Mapping[Outcome, int]
    context_count: int
    odd_outcomes: tuple[Outcome, ...]

    def __bool__(self) -> bool:
        return self.valid


def check_parity_proof(sys_: IncidenceSystem) -> ParityCertificate:
    """Even multiplicity for every outcome plus an odd context count.

    Summing ``sum_{o in c} v(o) = 1`` over all contexts then gives an even
    left side and an odd right side, so no assignment exists.
    """
    mult = Counter(o for c in sys_.contexts for o in c)
    odd = tuple(o for o in sys_.outcomes if mult[o] % 2)
    n = len(sys_.contexts)
    return ParityCertificate(
        valid=not odd and n % 2 == 1,
        multiplicities={o: mult[o] for o in sys_.outcomes},
        context_count=n,
        odd_outcomes=odd,
    )


# ---------------------------------------------------------------- search


@dataclass(frozen=True)
class SearchResult:
    satisfiable: bool
    witness: Mapping[Outcome, int] | None
    nodes: int

    def __bool__(self) -> bool:
        return self.satisfiable


class _Solver:
    """Exactly-one constraint propagation over outcome bitmasks."""

    def __init__(self, sys_: IncidenceSystem):
        self.n = len(sys_.outcomes)
        self.masks = sys_.masks()
        self.contexts_of = [0] * self.n
        for k, m in enumerate(self.masks):
            for v in _iter_bits(m):
                self.contexts_of[v] |= 1 << k
        # everything that must turn 0 once outcome v is 1
        self.neighbours = [0] * self.n
        for v in range(self.n):
            nb = 0
            for k in _iter_bits(self.contexts_of[v]):
                nb |= self.masks[k]
            self.neighbours[v] = nb & ~(1 << v)
        self.nodes = 0

    def set_one(self, ones: int, zeros: int, v: int) -> tuple[int, int] | None:
        """Assign v = 1 and propagate; None on conflict."""
        stack = [v]
        while stack:
            v = stack.pop()
            bit = 1 << v
            if zeros & bit:
                return None
            if ones & bit:
                continue
            ones |= bit
            if ones & self.neighbours[v]:
                return None
            zeros |= self.neighbours[v]
            # unit propagation: a context left with a single candidate
            for k in _iter_bits(_contexts_touching(self, self.neighbours[v])):
                m = self.masks[k]
                if ones & m:
                    continue
                free = m & ~zeros
                if not free:
                    return None
                if free & (free - 1) == 0:
                    stack.append(free.bit_length() - 1)
        return ones, zeros

    def pick_context(self, ones: int, zeros: int) -> tuple[int, int] | None:
        """Unsatisfied context with the fewest free outcomes, as (k, free)."""
        best = None
        for k, m in enumerate(self.masks):
            if ones & m:
                continue
            free = m & ~zeros
            c = free.bit_count()
            if best is None or c < best[0]:
                best = (c, k, free)
                if c <= 1:
                    break
        return None if best is None else (best[1], best[2])

    def solve(self, ones: int = 0, zeros: int = 0) -> int | None:
        self.nodes += 1
        pick = self.pick_context(ones, zeros)
        if pick is None:
            return ones
        _, free = pick
        for v in _iter_bits(free):
            nxt = self.set_one(ones, zeros, v)
            if nxt is not None:
                found = self.solve(*nxt)
                if found is not None:
                    return found
            zeros |= 1 << v
        return None


def _contexts_touching(solver: _Solver, outcomes: int) -> int:
    out = 0
    for v in _iter_bits(outcomes):
        out |= solver.contexts_of[v]
    return out


def _iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def search_assignment(sys_: IncidenceSystem) -> SearchResult:
    """Complete backtracking search for an exactly-one assignment."""
    solver = _Solver(sys_)
    ones = solver.solve()
    if ones is None:
        return SearchResult(False, None, solver.nodes)
    witness = {o: (ones >> i) & 1 for i, o in enumerate(sys_.outcomes)}
    return SearchResult(True, witness, solver.nodes)


def satisfied_contexts(sys_: IncidenceSystem, assignment: Mapping[Outcome, int]) -> list[bool]:
    """Independent exactly-one validator."""
    for o, v in assignment.items():
        if v not in (0, 1):
            raise ValueError(f"value {v!r} for {o!r} is not 0/1")
    return [sum(assignment.get(o, 0) for o in c) == 1 for c in sys_.contexts]


def is_valid_assignment(sys_: IncidenceSystem, assignment: Mapping[Outcome, int]) -> bool:
    return all(satisfied_contexts(sys_, assignment))


# ---------------------------------------------------------------- NCHV bound


@dataclass(frozen=True)
class MaxSatResult:
    value: int
    witness: Mapping[Outcome, int]
    context_count: int
    nodes: int = 0

    @property
    def violated(self) -> int:
        return self.context_count - self.value


def max_satisfiable_contexts(sys_: IncidenceSystem) -> MaxSatResult:
    """Largest number of contexts with exactly one 1 under a single assignment.

    Branch and bound over contexts: each context either receives its unique 1
    (with propagation as in :func:`search_assignment`) or is given up.  The
    bound is satisfied-so-far plus undecided contexts.  Giving up a context
    never forces anything, so leaves are scored on the full assignment with
    unassigned outcomes at 0.  Setting those stray outcomes to 0 can only
    help, so some leaf scores at least as well as any optimal assignment.
    """
    solver = _Solver(sys_)
    n_ctx = len(solver.masks)

    def score(ones: int) -> int:
        return sum((ones & m).bit_count() == 1 for m in solver.masks)

    best_val = -1
    best_ones = 0
    # greedy start to tighten the bound
    ones = zeros = 0
    for k, m in enumerate(solver.masks):
        if ones & m:
            continue
        for v in _iter_bits(m & ~zeros):
            nxt = solver.set_one(ones, zeros, v)
            if nxt is not None:
                ones, zeros = nxt
                break
    best_val, best_ones = score(ones), ones

    def rec(k: int, ones: int, zeros: int, dropped: int) -> None:
        nonlocal best_val, best_ones
        solver.nodes += 1
        if n_ctx - dropped <= best_val:
            return
        if k == n_ctx:
            s = score(ones)
            if s > best_val or (s == best_val and ones < best_ones):
                best_val, best_ones = s, ones
            return
        m = solver.masks[k]
        if ones & m:
            if (ones & m).bit_count() == 1:
                rec(k + 1, ones, zeros, dropped)
            else:
                rec(k + 1, ones, zeros, dropped + 1)
            return
        # picking v as this context's 1 only zeroes the rest of this context;
        # other contexts containing v may still be given up
        for v in _iter_bits(m & ~zeros):
            rec(k + 1, ones | (1 << v), zeros | (m & ~(1 << v)), dropped)
        rec(k + 1, ones, zeros, dropped + 1)

    rec(0, 0, 0, 0)
    witness = {o: (best_ones >> i) & 1 for i, o in enumerate(sys_.outcomes)}
    return MaxSatResult(best_val, witness, n_ctx, solver.nodes)


def max_satisfiable_bruteforce(sys_: IncidenceSystem) -> MaxSatResult:
    """Scan all 2**n assignments with the bitmask kernel (n <= 40)."""
    masks = np.array(sys_.masks(), dtype=np.int64)
    value, x = _kernels.max_exactly_one(masks, len(sys_.outcomes))
    witness = {o: (x >> i) & 1 for i, o in enumerate(sys_.outcomes)}
    return MaxSatResult(value, witness, len(sys_.contexts), 1 << len(sys_.outcomes))


def count_assignments_bruteforce(sys_: IncidenceSystem) -> int:
    masks = np.array(sys_.masks(), dtype=np.int64)
    return _kernels.count_exactly_one(masks, len(sys_.outcomes))
