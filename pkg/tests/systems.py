"""Seeded random incidence systems for property tests."""
import random
from collections import Counter

from mermin_ks.parity import IncidenceSystem


def random_system(rng: random.Random, max_outcomes: int = 10, max_contexts: int = 7) -> IncidenceSystem:
    n = rng.randint(2, max_outcomes)
    k = rng.randint(1, max_contexts)
    contexts = [rng.sample(range(n), rng.randint(1, min(n, 4))) for _ in range(k)]
    return IncidenceSystem.from_contexts(contexts)


def random_even_system(rng: random.Random, max_outcomes: int = 10) -> IncidenceSystem:
    """Odd number of contexts, every outcome used an even number of times."""
    while True:
        n = rng.randint(2, max_outcomes)
        k = rng.choice((3, 5, 7))
        contexts = [set(rng.sample(range(n), rng.randint(1, min(n, 4)))) for _ in range(k)]
        for o, c in Counter(o for ctx in contexts for o in ctx).items():
            if c % 2 == 0:
                continue
            free = [ctx for ctx in contexts if o not in ctx]
            if free:
                rng.choice(free).add(o)
            else:
                rng.choice(contexts).discard(o)
        if all(contexts):
            return IncidenceSystem.from_contexts(sorted(c) for c in contexts)
