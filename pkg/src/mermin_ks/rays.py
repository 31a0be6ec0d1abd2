"""Joint eigenbases of the pentagram lines and their reconciliation with the
printed ray table."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .data import RANK1_RELATIONS, TABLE_BLOCKS, TABLE_ROWS, parse_table_row
from .pauli import ExactMatrix, PauliObservable, commutes, to_matrix
from .pentagram import Pentagram


class StructuralError(ValueError):
    """A context whose joint eigenspaces are not all one-dimensional."""


@dataclass(frozen=True)
class Ray:
    id: int | None
    components: tuple[int, ...]
    octad: int | None = None

    @property
    def norm2(self) -> int:
        return sum(c * c for c in self.components)

    def dot(self, other: Ray) -> int:
        return sum(a * b for a, b in zip(self.components, other.components))

    def projector(self) -> ExactMatrix:
        return ExactMatrix.projector(self.components)


@dataclass(frozen=True)
class Octad:
    """Joint eigenbasis of one context.

    ``signatures[k]`` holds the eigenvalues (+1/-1) of the context observables
    on ``rays[k]``.
    """

    context_id: int
    rays: tuple[Ray, ...]
    signatures: tuple[tuple[int, ...], ...]

    def vectors(self) -> list[tuple[int, ...]]:
        return [r.components for r in self.rays]


def canonicalize(v: Sequence[int]) -> tuple[int, ...]:
    """Primitive integer vector with a positive first nonzero entry."""
    v = [int(x) for x in v]
    g = reduce(gcd, (abs(x) for x in v), 0)
    if g == 0:
        raise ValueError("zero vector cannot be canonicalized")
    v = [x // g for x in v]
    if next(x for x in v if x) < 0:
        v = [-x for x in v]
    return tuple(v)


def common_eigenbasis(observables: Sequence[PauliObservable], context_id: int = 0) -> Octad:
    """Rays spanning the joint eigenspaces of mutually commuting observables.

    For every sign pattern s the product of ``(I + s_i O_i)`` is ``2**k`` times
    the joint-eigenspace projector; any nonzero column spans its range when the
    rank is one.
    """
    for a, b in itertools.combinations(observables, 2):
        if not commutes(a, b):
            raise ValueError(f"{a.label()} and {b.label()} do not commute")
    mats = [to_matrix(o).numerator for o in observables]
    dim = mats[0].shape[0]
    eye = np.eye(dim, dtype=np.int64)
    scale = 1 << len(mats)
    rays: list[Ray] = []
    sigs: list[tuple[int, ...]] = []
    for signs in itertools.product((1, -1), repeat=len(mats)):
        proj = eye
        for s, m in zip(signs, mats):
            proj = proj @ (eye + s * m)
        if not proj.any():
            continue
        rank, rem = divmod(int(np.trace(proj)), scale)
        if rem or rank != 1:
            raise StructuralError(f"joint eigenspace {signs} has rank {np.trace(proj) / scale}")
        col = proj[:, int(np.flatnonzero(proj.any(axis=0))[0])]
        rays.append(Ray(None, canonicalize(col), context_id or None))
        sigs.append(signs)
    if len(rays) != dim:
        raise StructuralError(f"found {len(rays)} joint eigenvectors in dimension {dim}")
    order = sorted(range(dim), key=lambda k: rays[k].components, reverse=True)
    return Octad(context_id, tuple(rays[k] for k in order), tuple(sigs[k] for k in order))


def projector_sum(rays: Sequence[Ray]) -> ExactMatrix:
    total = ExactMatrix.zeros(len(rays[0].components))
    for r in rays:
        total = total + r.projector()
    return total


# ---------------------------------------------------------------- reconciliation


@dataclass(frozen=True)
class RowReconciliation:
    id: int
    printed: str
    parsed: tuple[int, ...]
    status: str  # matched | bad-length | duplicate | not-an-eigenvector
    derived: tuple[int, ...]

    @property
    def matched(self) -> bool:
        return self.status == "matched"

    @property
    def printed_agrees(self) -> bool:
        """Whether the printed row, read as a ray, equals the assigned derived ray."""
        try:
            return canonicalize(self.parsed) == self.derived and len(self.parsed) == len(self.derived)
        except ValueError:
            return False


@dataclass(frozen=True)
class Reconciliation:
    rows: tuple[RowReconciliation, ...]
    block_context: Mapping[int, int]  # printed block (1..5) -> context id (1..5)
    resolution: str  # how overridden ids were assigned: unique | ambiguous | none

    @property
    def matched_ids(self) -> list[int]:
        return [r.id for r in self.rows if r.matched]

    @property
    def overridden_ids(self) -> list[int]:
        return [r.id for r in self.rows if not r.matched]

    def diagnosis(self) -> list[str]:
        notes = {
            "bad-length": "printed row has {n} symbols",
            "duplicate": "printed row repeats another row of the same block",
            "not-an-eigenvector": "printed row is not a joint eigenvector of its context",
        }
        out = []
        for r in self.rows:
            if r.matched:
                continue
            out.append(
                f"R{r.id}: " + notes[r.status].format(n=len(r.parsed))
                + f"; derived ray {r.derived}"
            )
        return out


def _all_orthogonal(ids: Sequence[int], assign: Mapping[int, tuple[int, ...]]) -> bool:
    vecs = [assign[i] for i in ids]
    return all(
        sum(a * b for a, b in zip(u, v)) == 0 for u, v in itertools.combinations(vecs, 2)
    )


def reconcile_with_table(
    octads: Sequence[Octad],
    table: Sequence[str] = TABLE_ROWS,
    relations: Sequence[Sequence[int]] = RANK1_RELATIONS,
) -> Reconciliation:
    """Match derived rays to printed rows and assign the printed ids.

    A printed row is trusted when it parses to a derived ray of its block's
    octad that no other row of the block also claims.  The remaining ids of a
    block are filled with the block's unclaimed derived rays; among the
    possible bijections the one that makes the most ``relations`` orthogonal
    wins, falling back to lexicographic order on a tie.
    """
    dim = len(octads[0].rays[0].components)
    blocks = [range(b.start, b.stop) for b in TABLE_BLOCKS] if len(table) == 40 else [
        range(1 + dim * b, 1 + dim * (b + 1)) for b in range(len(table) // dim)
    ]
    parsed = {i + 1: parse_table_row(row) for i, row in enumerate(table)}

    def canon_or_none(v):
        if len(v) != dim or not any(v):
            return None
        return canonicalize(v)

    # which octad each printed block came from
    block_context: dict[int, int] = {}
    block_octad: dict[int, Octad] = {}
    for b, ids in enumerate(blocks, start=1):
        scores = []
        for o in octads:
            vecs = set(o.vectors())
            scores.append(sum(canon_or_none(parsed[i]) in vecs for i in ids))
        best = max(scores)
        winners = [k for k, s in enumerate(scores) if s == best]
        if len(winners) != 1 or best == 0:
            raise ValueError(f"printed block {b} does not identify a unique octad")
        block_octad[b] = octads[winners[0]]
        block_context[b] = octads[winners[0]].context_id
    if len(set(block_context.values())) != len(block_context):
        raise ValueError("two printed blocks map to the same octad")

    status: dict[int, str] = {}
    assign: dict[int, tuple[int, ...]] = {}
    leftovers: list[tuple[list[int], list[tuple[int, ...]]]] = []
    for b, ids in enumerate(blocks, start=1):
        vecs = block_octad[b].vectors()
        claims = {i: canon_or_none(parsed[i]) for i in ids}
        hits = {}
        for i, c in claims.items():
            hits.setdefault(c, []).append(i)
        for i in ids:
            c = claims[i]
            if len(parsed[i]) != dim:
                status[i] = "bad-length"
            elif c not in vecs:
                status[i] = "not-an-eigenvector"
            elif len(hits[c]) > 1:
                status[i] = "duplicate"
            else:
                status[i] = "matched"
                assign[i] = c
        free_ids = [i for i in ids if status[i] != "matched"]
        free_vecs = sorted(set(vecs) - set(assign.values()), reverse=True)
        if free_ids:
            leftovers.append((free_ids, free_vecs))

    resolution = "none"
    if leftovers:
        options = [list(itertools.permutations(vs)) for _, vs in leftovers]
        touched = {i for ids, _ in leftovers for i in ids}
        relevant = [r for r in relations if touched & set(r)]
        scored = []
        for combo in itertools.product(*options):
            trial = dict(assign)
            for (ids, _), perm in zip(leftovers, combo):
                trial.update(zip(ids, perm))
            score = sum(_all_orthogonal(r, trial) for r in relevant if set(r) <= trial.keys())
            scored.append((score, combo))
        top = max(s for s, _ in scored)
        best = [c for s, c in scored if s == top]
        resolution = "unique" if len(best) == 1 else "ambiguous"
        # itertools order puts the lexicographic choice first on ties
        for (ids, _), perm in zip(leftovers, best[0]):
            assign.update(zip(ids, perm))

    rows = tuple(
        RowReconciliation(i, table[i - 1], parsed[i], status[i], assign[i])
        for i in sorted(parsed)
    )
    return Reconciliation(rows, block_context, resolution)


@dataclass(frozen=True)
class RayDerivation:
    rays: Mapping[int, Ray]
    octads: tuple[Octad, ...]  # in pentagram context order
    reconciliation: Reconciliation
    context_of_ray: Mapping[int, int] = field(default_factory=dict)

    def octad_ids(self, context_id: int) -> tuple[int, ...]:
        return tuple(sorted(i for i, c in self.context_of_ray.items() if c == context_id))

    def to_json(self) -> list[dict]:
        return [
            {"id": r.id, "components": list(r.components), "octad": r.octad}
            for r in (self.rays[i] for i in sorted(self.rays))
        ]


def derive_all_rays(
    p: Pentagram,
    table: Sequence[str] = TABLE_ROWS,
    relations: Sequence[Sequence[int]] = RANK1_RELATIONS,
) -> RayDerivation:
    """Derive the five octads and number their rays after the printed table.

    ``Ray.octad`` is the printed block (1..5); ``context_of_ray`` maps each
    id to the pentagram line (1..5) whose eigenbasis produced it.
    """
    octads = tuple(
        common_eigenbasis(p.context_observables(k), context_id=k + 1)
        for k in range(len(p.contexts))
    )
    rec = reconcile_with_table(octads, table, relations)
    context_block = {c: b for b, c in rec.block_context.items()}
    by_vector = {
        r.components: o.context_id for o in octads for r in o.rays
    }
    rays = {}
    context_of_ray = {}
    for row in rec.rows:
        ctx = by_vector[row.derived]
        rays[row.id] = Ray(row.id, row.derived, context_block[ctx])
        context_of_ray[row.id] = ctx
    if len({r.components for r in rays.values()}) != len(rays):
        raise StructuralError("derived rays are not pairwise distinct")
    return RayDerivation(rays, octads, rec, context_of_ray)
