"""Orthogonality hypergraph of the thirty planes, with the figure's labels."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Mapping

from .data import FIGURE_EXTRA_LABELS
from .rank2 import Plane, Rank2Proof, make_plane, paper_rank2_proof
from .rays import Ray

Pair = tuple[int, int]


def _pair(p) -> Pair:
    a, b = p
    return (a, b) if a < b else (b, a)


def relabel_planes(proof: Rank2Proof | None = None) -> dict[int, Pair]:
    """Figure labels: 1..20 by first appearance, 21..30 from the named list.

    Only defined for the published proof; the printed pair order is kept so
    label 3 reads ``(3, 4)`` and label 7 reads ``(14, 10)``.
    """
    published = paper_rank2_proof()
    proof = proof or published
    if proof.canonical() != published.canonical():
        raise ValueError("figure labels are only defined for the published rank-2 proof")
    labels: dict[int, Pair] = {}
    seen: set[Pair] = set()
    for m in proof.matchings:
        for p in m:
            if _pair(p) not in seen:
                seen.add(_pair(p))
                labels[len(labels) + 1] = tuple(p)
            if len(labels) == 20:
                break
        if len(labels) == 20:
            break
    for p in FIGURE_EXTRA_LABELS:
        if _pair(p) in seen:
            raise ValueError(f"plane {p} labelled twice")
        seen.add(_pair(p))
        labels[len(labels) + 1] = p
    if seen != set(proof.plane_counts()):
        raise ValueError("labels do not cover the proof's planes exactly")
    return labels


@dataclass(frozen=True)
class PlaneHypergraph:
    vertices: Mapping[int, Pair]  # label -> ray pair
    edges: tuple[Pair, ...]  # sorted label pairs with orthogonal planes
    hyperedges: tuple[tuple[int, ...], ...]  # one sorted label tuple per relation

    def degree(self, v: int) -> int:
        return sum(v in h for h in self.hyperedges)

    def extra_edges(self) -> tuple[Pair, ...]:
        """Orthogonal pairs that never share a hyperedge."""
        inside = {_pair(e) for h in self.hyperedges for e in itertools.combinations(h, 2)}
        return tuple(e for e in self.edges if e not in inside)

    def to_json(self) -> dict:
        return {
            "vertices": [{"label": v, "pair": list(p)} for v, p in sorted(self.vertices.items())],
            "edges": [list(e) for e in self.edges],
            "hyperedges": [list(h) for h in self.hyperedges],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> PlaneHypergraph:
        return cls(
            {int(v["label"]): tuple(v["pair"]) for v in obj["vertices"]},
            tuple(tuple(e) for e in obj["edges"]),
            tuple(tuple(h) for h in obj["hyperedges"]),
        )


def build_hypergraph(
    proof: Rank2Proof, labels: Mapping[int, Pair], rays: Mapping[int, Ray]
) -> PlaneHypergraph:
    """Edges wherever the plane matrices multiply to exactly zero."""
    label_of = {_pair(p): v for v, p in labels.items()}
    planes: dict[int, Plane] = {v: make_plane(*_pair(p), rays) for v, p in labels.items()}
    edges = []
    for u, v in itertools.combinations(sorted(planes), 2):
        if (planes[u].matrix @ planes[v].matrix).is_zero():
            edges.append((u, v))
    hyperedges = tuple(tuple(sorted(label_of[_pair(p)] for p in m)) for m in proof.matchings)
    return PlaneHypergraph(dict(sorted(labels.items())), tuple(edges), hyperedges)


# colours for the three curves the figure names, the rest cycle
_HYPER_COLOURS = ("red", "green", "blue", "orange", "purple", "brown", "cyan", "magenta")


def to_dot(hg: PlaneHypergraph, name: str = "planes") -> str:
    """Graphviz text: one node statement per vertex, plain orthogonality
    edges, and one subgraph per hyperedge drawing a coloured cycle through
    its four members."""
    named = [frozenset(h) for h in _named_first(hg)]
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for v, (a, b) in sorted(hg.vertices.items()):
        lines.append(f'  {v} [label="{v}", tooltip="P({a},{b})"];')
    lines.append("  edge [color=gray70];")
    for u, v in hg.edges:
        lines.append(f"  {u} -- {v};")
    for k, h in enumerate(hg.hyperedges, start=1):
        colour = _HYPER_COLOURS[named.index(frozenset(h)) % len(_HYPER_COLOURS)]
        cycle = " -- ".join(str(v) for v in h + h[:1])
        lines.append(f"  subgraph hyperedge_{k:02d} {{")
        lines.append(f'    edge [color={colour}, penwidth=2, label="H{k}"];')
        lines.append(f"    {cycle};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _named_first(hg: PlaneHypergraph) -> list[tuple[int, ...]]:
    from .data import FIGURE_NAMED_HYPEREDGES

    named = [h for h in hg.hyperedges if frozenset(h) in FIGURE_NAMED_HYPEREDGES]
    named.sort(key=lambda h: FIGURE_NAMED_HYPEREDGES.index(frozenset(h)))
    return named + [h for h in hg.hyperedges if h not in named]


def to_json_text(hg: PlaneHypergraph) -> str:
    return json.dumps(hg.to_json(), indent=2, sort_keys=True) + "\n"


def export(hg: PlaneHypergraph, fmt: str) -> str:
    fmt = fmt.lower()
    if fmt == "dot":
        return to_dot(hg)
    if fmt == "json":
        return to_json_text(hg)
    raise ValueError(f"unknown export format {fmt!r}; expected 'dot' or 'json'")
