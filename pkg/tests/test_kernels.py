import random

import numpy as np
import pytest

from mermin_ks import _kernels as K

from oracles import exactly_one_count, max_exactly_one


def _case(rng, n):
    k = rng.randint(1, 6)
    ctxs = [rng.sample(range(n), rng.randint(1, min(n, 5))) for _ in range(k)]
    masks = np.array([sum(1 << i for i in c) for c in ctxs], dtype=np.int64)
    return ctxs, masks


def _brute_max(ctxs, n):
    best, arg = -1, 0
    for x in range(1 << n):
        s = sum(bin(x & sum(1 << i for i in c)).count("1") == 1 for c in ctxs)
        if s > best:
            best, arg = s, x
    return best, arg


BACKENDS = [("numpy", K.max_exactly_one_numpy, K.count_exactly_one_numpy, K.count_parity_numpy)]
if K.HAVE_NUMBA:
    BACKENDS.append(("numba", K.max_exactly_one_numba, K.count_exactly_one_numba, K.count_parity_numba))


@pytest.mark.parametrize("name,mx,cnt,par", BACKENDS, ids=[b[0] for b in BACKENDS])
def test_backend_against_python(name, mx, cnt, par):
    rng = random.Random(11)
    # n on both sides of the low-table split
    for n in list(range(1, 12)) + [17, 18]:
        for _ in range(3 if n > 12 else 8):
            ctxs, masks = _case(rng, n)
            if n <= 12:
                assert mx(masks, n) == _brute_max(ctxs, n)
                assert cnt(masks, n) == exactly_one_count(ctxs, n)
            else:
                assert mx(masks, n)[0] == max_exactly_one(ctxs, n)
            targets = np.array([rng.randint(0, 1) for _ in ctxs], dtype=np.uint8)
            want = sum(
                all(bin(x & int(m)).count("1") % 2 == t for m, t in zip(masks, targets))
                for x in range(1 << n)
            )
            assert par(masks, targets, n) == want


@pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba unavailable")
def test_backends_agree_medium():
    rng = random.Random(5)
    for _ in range(5):
        ctxs, masks = _case(rng, 22)
        assert K.max_exactly_one_numba(masks, 22) == K.max_exactly_one_numpy(masks, 22)
        assert K.count_exactly_one_numba(masks, 22) == K.count_exactly_one_numpy(masks, 22)


def test_limits():
    masks = np.array([1], dtype=np.int64)
    with pytest.raises(ValueError):
        K.max_exactly_one(masks, K.MAX_BITS + 1)
    with pytest.raises(ValueError):
        K.max_exactly_one(np.zeros(300, dtype=np.int64) + 1, 4)


def test_backend_flag():
    assert K.BACKEND in ("numba", "numpy")
    assert (K.BACKEND == "numba") == K.HAVE_NUMBA


def test_env_flag_selects_numpy():
    import os
    import subprocess
    import sys

    env = dict(os.environ, MERMIN_KS_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mermin_ks import _kernels as K; print(K.BACKEND, K.HAVE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["numpy", "False"]
