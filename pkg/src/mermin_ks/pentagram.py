"""The three-qubit Mermin pentagram: ten observables on five lines of four."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .pauli import PauliObservable, commutes, observable_from_letters, product, to_matrix

# ids 0..9
OBSERVABLE_LETTERS: tuple[str, ...] = (
    "XII", "IXI", "IIX",
    "ZII", "IZI", "IIZ",
    "XXZ", "XZX", "ZXX", "ZZZ",
)

# Line order of the value-function constraints; the horizontal (-I) line is last.
CONTEXT_LETTERS: tuple[tuple[str, str, str, str], ...] = (
    ("XII", "IXI", "IIZ", "XXZ"),
    ("XII", "IZI", "IIX", "XZX"),
    ("ZII", "IXI", "IIX", "ZXX"),
    ("ZII", "IZI", "IIZ", "ZZZ"),
    ("ZZZ", "ZXX", "XZX", "XXZ"),
)


@dataclass(frozen=True)
class Pentagram:
    observables: tuple[PauliObservable, ...]
    contexts: tuple[tuple[int, ...], ...]
    horizontal_context: int

    def context_observables(self, k: int) -> tuple[PauliObservable, ...]:
        return tuple(self.observables[i] for i in self.contexts[k])

    def label(self, i: int) -> str:
        return self.observables[i].letters


def build_pentagram() -> Pentagram:
    observables = tuple(observable_from_letters(s) for s in OBSERVABLE_LETTERS)
    index = {s: i for i, s in enumerate(OBSERVABLE_LETTERS)}
    contexts = tuple(tuple(index[s] for s in line) for line in CONTEXT_LETTERS)
    return Pentagram(observables, contexts, horizontal_context=len(contexts) - 1)


@dataclass(frozen=True)
class PentagramReport:
    commuting: tuple[bool, ...]
    product_signs: tuple[int | None, ...]
    membership: tuple[int, ...]
    involutions: tuple[bool, ...]
    horizontal_context: int

    @property
    def all_commute(self) -> bool:
        return all(self.commuting)

    @property
    def signs_ok(self) -> bool:
        """Exactly the horizontal line multiplies to -I; every other line to +I."""
        return all(
            s == (-1 if k == self.horizontal_context else 1)
            for k, s in enumerate(self.product_signs)
        )

    @property
    def membership_ok(self) -> bool:
        return all(m == 2 for m in self.membership)

    @property
    def ok(self) -> bool:
        return self.all_commute and self.signs_ok and self.membership_ok and all(self.involutions)

    def failures(self) -> list[str]:
        out = []
        for k, c in enumerate(self.commuting):
            if not c:
                out.append(f"context {k + 1}: observables do not mutually commute")
        if not self.signs_ok:
            out.append(f"context products {self.product_signs} are not +I except the horizontal -I")
        for i, m in enumerate(self.membership):
            if m != 2:
                out.append(f"observable {i}: in {m} contexts, expected 2")
        for i, ok in enumerate(self.involutions):
            if not ok:
                out.append(f"observable {i}: not a traceless involution")
        return out


def verify_pentagram(p: Pentagram) -> PentagramReport:
    commuting = []
    signs = []
    for k in range(len(p.contexts)):
        obs = p.context_observables(k)
        commuting.append(
            all(commutes(a, b) for i, a in enumerate(obs) for b in obs[i + 1:])
        )
        signs.append(product(obs).scalar_sign)
    counts = Counter(i for ctx in p.contexts for i in ctx)
    membership = tuple(counts.get(i, 0) for i in range(len(p.observables)))
    involutions = []
    for o in p.observables:
        sq = product([o, o])
        traceless = o.x_mask != 0 or o.z_mask != 0
        involutions.append(sq.is_identity and traceless and o.is_hermitian)
    return PentagramReport(
        tuple(commuting), tuple(signs), membership, tuple(involutions), p.horizontal_context
    )


def product_constraints(p: Pentagram) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Per-line observable ids and the sign (+1/-1) their product must equal."""
    signs = []
    for k in range(len(p.contexts)):
        s = product(p.context_observables(k)).scalar_sign
        if s is None:
            raise ValueError(f"context {k + 1} does not multiply to +-I")
        signs.append(s)
    return p.contexts, tuple(signs)


def count_sign_solutions(
    contexts: Sequence[Sequence[int]], signs: Sequence[int], n_observables: int
) -> int:
    """Count maps v: ids -> {+1, -1} with prod_{i in ctx} v(i) == sign for every ctx.

    Encoded as parities: bit i set means v(i) = -1, so a context's product is
    ``(-1)**popcount(x & mask)``.
    """
    if len(contexts) != len(signs):
        raise ValueError("one sign per context required")
    masks = np.array([sum(1 << i for i in ctx) for ctx in contexts], dtype=np.int64)
    targets = np.array([0 if s == 1 else 1 for s in signs], dtype=np.uint8)
    return _kernels.count_parity(masks, targets, n_observables)


def count_sign_assignments(p: Pentagram, signs: Sequence[int] | None = None) -> int:
    """Exhaustive count over all 2**10 value assignments.

    ``signs`` overrides the per-line targets (e.g. to flip the horizontal line).
    """
    contexts, natural = product_constraints(p)
    return count_sign_solutions(contexts, natural if signs is None else signs, len(p.observables))


def parity_obstruction(p: Pentagram) -> bool:
    """Counting argument: every observable used an even number of times but the
    targets multiply to -1, so no assignment can exist."""
    contexts, signs = product_constraints(p)
    counts = Counter(i for ctx in contexts for i in ctx)
    return all(c % 2 == 0 for c in counts.values()) and int(np.prod(signs)) == -1


def observable_matrices(p: Pentagram):
    return [to_matrix(o) for o in p.observables]
