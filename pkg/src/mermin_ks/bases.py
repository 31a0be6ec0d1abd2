"""Rank-1 completeness relations over the forty rays."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .data import RANK1_RELATIONS
from .pauli import ExactMatrix
from .rays import Ray


@dataclass(frozen=True)
class RelationSet:
    relations: tuple[tuple[int, ...], ...]
    source: str = "published"

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))

    def __len__(self) -> int:
        return len(self.relations)

    def __iter__(self):
        return iter(self.relations)

    def to_json(self) -> dict:
        return {"source": self.source, "relations": [list(r) for r in self.relations]}

    @classmethod
    def from_json(cls, obj: Mapping) -> RelationSet:
        return cls(tuple(tuple(int(i) for i in r) for r in obj["relations"]), obj.get("source", "user"))


def paper_relations_rank1() -> RelationSet:
    return RelationSet(RANK1_RELATIONS, "published")


@dataclass(frozen=True)
class CompletenessCheck:
    ok: bool
    residual: ExactMatrix  # sum of projectors minus identity


def _lookup(rays: Mapping[int, Ray], i: int) -> Ray:
    try:
        return rays[i]
    except KeyError:
        raise KeyError(f"unknown ray id {i}") from None


def verify_completeness(relation: Iterable[int], rays: Mapping[int, Ray]) -> CompletenessCheck:
    """Exact check that the projectors of ``relation`` sum to the identity."""
    members = [_lookup(rays, i) for i in relation]
    if not members:
        raise ValueError("empty relation")
    dim = len(members[0].components)
    total = ExactMatrix.zeros(dim)
    for r in members:
        total = total + r.projector()
    residual = total - ExactMatrix.identity(dim)
    return CompletenessCheck(residual.is_zero(), residual)


def occurrence_counts(rs: RelationSet | Iterable[Iterable[int]]) -> Counter:
    return Counter(i for r in rs for i in r)


def orthogonality_adjacency(rays: Mapping[int, Ray]) -> dict[int, int]:
    """Bitset adjacency over positions in ``sorted(rays)``."""
    ids = sorted(rays)
    adj = {}
    for a, i in enumerate(ids):
        bits = 0
        for b, j in enumerate(ids):
            if a != b and rays[i].dot(rays[j]) == 0:
                bits |= 1 << b
        adj[a] = bits
    return adj


def _bron_kerbosch(r: int, p: int, x: int, adj: Mapping[int, int], out: list[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    # Tomita pivot: the vertex of P|X covering most of P
    u = max(_bits(p | x), key=lambda v: (p & adj[v]).bit_count())
    for v in _bits(p & ~adj[u]):
        _bron_kerbosch(r | (1 << v), p & adj[v], x & adj[v], adj, out)
        p &= ~(1 << v)
        x |= 1 << v


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def maximal_orthogonal_sets(rays: Mapping[int, Ray]) -> list[tuple[int, ...]]:
    """All maximal cliques of the orthogonality graph, as sorted id tuples."""
    ids = sorted(rays)
    adj = orthogonality_adjacency(rays)
    found: list[int] = []
    _bron_kerbosch(0, (1 << len(ids)) - 1, 0, adj, found)
    return sorted(tuple(ids[v] for v in _bits(m)) for m in found)


def enumerate_orthogonal_octads(rays: Mapping[int, Ray] | Sequence[Ray]) -> list[tuple[int, ...]]:
    """Every set of ``dim`` pairwise-orthogonal rays, i.e. every orthonormal basis.

    In dimension ``dim`` such a set cannot be extended, so the bases are
    exactly the maximal cliques of size ``dim``; each is re-checked for
    completeness before it is returned.
    """
    if not isinstance(rays, Mapping):
        rays = {r.id: r for r in rays}
    dim = len(next(iter(rays.values())).components)
    bases = [c for c in maximal_orthogonal_sets(rays) if len(c) == dim]
    for c in bases:
        if not verify_completeness(c, rays).ok:
            raise AssertionError(f"orthogonal set {c} does not resolve the identity")
    return bases
