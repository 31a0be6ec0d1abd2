"""Rank-2 projectors (planes) and rank-2 parity proofs coarse-grained from the
rank-1 relations.

A rank-2 proof picks, independently for every rank-1 relation, a perfect
matching of its rays into planes.  The proof is a parity proof when every
plane turns up an even number of times across the relations.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .bases import RelationSet, paper_relations_rank1
from .data import RANK2_RELATIONS
from .parity import (
    ParityCertificate,
    SearchResult,
    check_parity_proof,
    from_relations,
    search_assignment,
)
from .pauli import ExactMatrix
from .rays import Ray

Pair = tuple[int, int]
Matching = tuple[Pair, ...]


class NotOrthogonalError(ValueError):
    pass


@dataclass(frozen=True)
class Plane:
    pair: Pair
    matrix: ExactMatrix

    @property
    def rays(self) -> frozenset[int]:
        return frozenset(self.pair)


def make_plane(i: int, j: int, rays: Mapping[int, Ray]) -> Plane:
    if i == j:
        raise ValueError("a plane needs two distinct rays")
    ri, rj = rays[i], rays[j]
    d = ri.dot(rj)
    if d:
        raise NotOrthogonalError(f"rays {i} and {j} are not orthogonal (dot = {d})")
    return Plane(_pair(i, j), ri.projector() + rj.projector())


def _pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


def _canonical_matching(m: Sequence[Sequence[int]]) -> Matching:
    return tuple(sorted(_pair(*p) for p in m))


@dataclass(frozen=True)
class Rank2Proof:
    """Per-relation matchings.  Pairs keep the order they were given in, so the
    printed proof still reads ``(14, 10)``; identity uses :meth:`canonical`."""

    relations: tuple[tuple[int, ...], ...]
    matchings: tuple[Matching, ...]

    def __post_init__(self):
        rel = tuple(tuple(r) for r in self.relations)
        mat = tuple(tuple(tuple(p) for p in m) for m in self.matchings)
        object.__setattr__(self, "relations", rel)
        object.__setattr__(self, "matchings", mat)
        if len(rel) != len(mat):
            raise ValueError("one matching per relation required")
        for k, (r, m) in enumerate(zip(rel, mat)):
            flat = [i for p in m for i in p]
            if any(len(p) != 2 for p in m) or sorted(flat) != sorted(r):
                raise ValueError(f"matching {k} is not a perfect matching of relation {r}")

    def canonical(self) -> tuple[tuple[tuple[int, ...], Matching], ...]:
        return tuple((tuple(sorted(r)), _canonical_matching(m)) for r, m in zip(self.relations, self.matchings))

    def plane_counts(self) -> Counter:
        return Counter(_pair(*p) for m in self.matchings for p in m)

    @property
    def distinct_planes(self) -> int:
        return len(self.plane_counts())

    def to_json(self) -> dict:
        counts = self.plane_counts()
        return {
            "relations": [
                {"id": k + 1, "rays": list(r), "pairs": [list(p) for p in m]}
                for k, (r, m) in enumerate(zip(self.relations, self.matchings))
            ],
            "planes": [{"pair": list(p), "multiplicity": counts[p]} for p in sorted(counts)],
        }


def paper_rank2_proof() -> Rank2Proof:
    relations = tuple(tuple(sorted(i for p in m for i in p)) for m in RANK2_RELATIONS)
    return Rank2Proof(relations, RANK2_RELATIONS)


@dataclass(frozen=True)
class Rank2Report:
    planes_valid: bool
    relation_complete: tuple[bool, ...]
    multiplicities: Mapping[Pair, int]
    certificate: ParityCertificate
    search: SearchResult

    @property
    def all_even(self) -> bool:
        return all(v % 2 == 0 for v in self.multiplicities.values())

    @property
    def distinct_planes(self) -> int:
        return len(self.multiplicities)

    @property
    def ok(self) -> bool:
        return (
            self.planes_valid
            and all(self.relation_complete)
            and self.all_even
            and self.certificate.valid
            and not self.search.satisfiable
        )


def verify_rank2_proof(proof: Rank2Proof, rays: Mapping[int, Ray]) -> Rank2Report:
    planes: dict[Pair, Plane] = {}
    planes_valid = True
    for m in proof.matchings:
        for p in m:
            key = _pair(*p)
            if key in planes:
                continue
            try:
                plane = make_plane(*key, rays)
            except NotOrthogonalError:
                planes_valid = False
                continue
            if not (plane.matrix.is_projector() and plane.matrix.projector_rank() == 2):
                planes_valid = False
            planes[key] = plane
    complete = []
    for m in proof.matchings:
        keys = [_pair(*p) for p in m]
        if not all(k in planes for k in keys):
            complete.append(False)
            continue
        total = ExactMatrix.zeros(planes[keys[0]].matrix.dim)
        for k in keys:
            total = total + planes[k].matrix
        complete.append(total.is_identity())
    system = from_relations(proof)
    return Rank2Report(
        planes_valid=planes_valid,
        relation_complete=tuple(complete),
        multiplicities=dict(sorted(proof.plane_counts().items())),
        certificate=check_parity_proof(system),
        search=search_assignment(system),
    )


# ---------------------------------------------------------------- enumeration


def perfect_matchings(items: Sequence[int], allowed=None) -> Iterator[Matching]:
    """Perfect matchings of ``items`` (sorted pairs), optionally restricted to
    pairs accepted by ``allowed``."""
    items = sorted(items)
    if len(items) % 2:
        return
    if not items:
        yield ()
        return
    a = items[0]
    for k in range(1, len(items)):
        b = items[k]
        if allowed is not None and not allowed((a, b)):
            continue
        rest = items[1:k] + items[k + 1:]
        for m in perfect_matchings(rest, allowed):
            yield ((a, b),) + m


@dataclass(frozen=True)
class Rank2Enumeration:
    proofs: tuple[Rank2Proof, ...]
    distinct_plane_distribution: Mapping[int, int]
    max_multiplicity_distribution: Mapping[int, int]
    candidate_matchings: tuple[int, ...]  # per relation, after pair pruning
    nodes: int

    @property
    def count(self) -> int:
        return len(self.proofs)

    def contains(self, proof: Rank2Proof) -> bool:
        key = proof.canonical()
        return any(p.canonical() == key for p in self.proofs)

    def statistics(self) -> dict:
        return {
            "count": self.count,
            "distinct_plane_distribution": {str(k): v for k, v in sorted(self.distinct_plane_distribution.items())},
            "max_multiplicity_distribution": {str(k): v for k, v in sorted(self.max_multiplicity_distribution.items())},
            "candidate_matchings_per_relation": list(self.candidate_matchings),
            "search_nodes": self.nodes,
        }


def _search_order(relations: Sequence[frozenset[int]], pairs_of: Sequence[set[Pair]]) -> list[int]:
    """Greedy order that closes off pairs as early as possible."""
    remaining = set(range(len(relations)))
    owners: dict[Pair, set[int]] = {}
    for k, ps in enumerate(pairs_of):
        for p in ps:
            owners.setdefault(p, set()).add(k)
    order: list[int] = []
    while remaining:
        done = set(order)

        def closes(k):
            return sum(owners[p] <= done | {k} for p in pairs_of[k])

        k = max(sorted(remaining), key=closes)
        order.append(k)
        remaining.remove(k)
    return order


def enumerate_rank2_proofs(rs: RelationSet | None = None) -> Rank2Enumeration:
    """All per-relation matchings whose plane multiset has even multiplicities.

    A pair can only be re-used inside relations that contain both its rays, so
    a pair owned by a single relation is never usable.  Relations are visited
    in an order that closes pairs early; a branch dies as soon as a pair whose
    relations have all been visited has odd parity.
    """
    rs = rs or paper_relations_rank1()
    relations = [frozenset(r) for r in rs.relations]
    n = len(relations)
    all_pairs = [set(itertools.combinations(sorted(r), 2)) for r in relations]
    owners = Counter(p for ps in all_pairs for p in ps)
    usable = [{p for p in ps if owners[p] >= 2} for ps in all_pairs]

    candidates = [
        list(perfect_matchings(sorted(r), allowed=lambda p, u=u: p in u))
        for r, u in zip(relations, usable)
    ]
    order = _search_order(relations, usable)
    pair_bit: dict[Pair, int] = {}
    for ps in usable:
        for p in sorted(ps):
            pair_bit.setdefault(p, len(pair_bit))
    cand_masks = [
        [sum(1 << pair_bit[p] for p in m) for m in candidates[k]] for k in order
    ]
    # pairs all of whose owning relations sit at positions <= t
    last_pos: dict[int, int] = {}
    for t, k in enumerate(order):
        for p in usable[k]:
            last_pos[pair_bit[p]] = t
    closed = [0] * n
    for b, t in last_pos.items():
        for s in range(t, n):
            closed[s] |= 1 << b

    found: list[tuple[int, ...]] = []
    choice = [0] * n
    nodes = 0

    def rec(t: int, parity: int) -> None:
        nonlocal nodes
        nodes += 1
        if t == n:
            found.append(tuple(choice))
            return
        for c, mask in enumerate(cand_masks[t]):
            nxt = parity ^ mask
            if nxt & closed[t]:
                continue
            choice[t] = c
            rec(t + 1, nxt)

    if all(candidates):
        rec(0, 0)

    proofs = []
    for sol in found:
        matchings = [None] * n
        for t, c in enumerate(sol):
            k = order[t]
            matchings[k] = candidates[k][c]
        proofs.append(Rank2Proof(tuple(rs.relations), tuple(matchings)))
    proofs.sort(key=Rank2Proof.canonical)

    distinct = Counter(p.distinct_planes for p in proofs)
    max_mult = Counter(max(p.plane_counts().values()) for p in proofs)
    return Rank2Enumeration(
        tuple(proofs), dict(distinct), dict(max_mult), tuple(len(c) for c in candidates), nodes
    )
