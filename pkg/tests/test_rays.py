import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mermin_ks.data import TABLE_ROWS, parse_table_row
from mermin_ks.pauli import observable_from_letters
from mermin_ks.rays import (
    StructuralError,
    canonicalize,
    common_eigenbasis,
    projector_sum,
    reconcile_with_table,
)

from oracles import dense_letters

SUSPECT = {
    12: (1, -1, -1, 1, 0, 0, 0, 0),
    14: (0, 0, 0, 0, 1, 1, -1, -1),
    15: (0, 0, 0, 0, 1, -1, 1, -1),
    16: (0, 0, 0, 0, 1, -1, -1, 1),
    24: (0, 0, 1, -1, 0, 0, -1, 1),
    40: (0, 1, 1, 0, 1, 0, 0, -1),
}


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=8).filter(any), st.integers(-4, 4).filter(bool))
def test_canonicalize_is_scale_invariant(v, k):
    c = canonicalize(v)
    assert canonicalize([k * x for x in v]) == c
    assert next(x for x in c if x) > 0
    assert np.gcd.reduce([abs(x) for x in c]) == 1


def test_canonicalize_zero():
    with pytest.raises(ValueError):
        canonicalize([0, 0])


def test_forty_distinct_rays(rays):
    assert sorted(rays) == list(range(1, 41))
    assert len({r.components for r in rays.values()}) == 40
    for r in rays.values():
        assert canonicalize(r.components) == r.components


def test_octads_resolve_identity(derivation):
    assert len(derivation.octads) == 5
    for o in derivation.octads:
        assert len(o.rays) == 8
        assert projector_sum(o.rays).is_identity()
        for a, b in itertools.combinations(o.rays, 2):
            assert a.dot(b) == 0


def test_rays_are_float_eigenvectors(pentagram, derivation):
    """Floating-point oracle: O v = s v for every context observable."""
    for o in derivation.octads:
        mats = [dense_letters(ob.letters).real for ob in pentagram.context_observables(o.context_id - 1)]
        for r, sig in zip(o.rays, o.signatures):
            v = np.array(r.components, dtype=float)
            for m, s in zip(mats, sig):
                assert np.allclose(m @ v, s * v)


def test_signatures_multiply_to_context_sign(pentagram, derivation):
    for o in derivation.octads:
        want = -1 if o.context_id - 1 == pentagram.horizontal_context else 1
        assert all(int(np.prod(s)) == want for s in o.signatures)
        assert len(set(o.signatures)) == 8


def test_numpy_eigh_rank_one_oracle(pentagram, derivation):
    """Each joint eigenspace from numpy's symmetric eigensolver is one-dimensional
    and spanned by the derived ray."""
    for o in derivation.octads:
        obs = pentagram.context_observables(o.context_id - 1)
        # a generic combination separates all 8 joint eigenspaces
        weights = (1.0, 2.0, 4.0, 0.5)
        h = sum(w * dense_letters(ob.letters).real for w, ob in zip(weights, obs))
        vals, vecs = np.linalg.eigh(h)
        assert len(set(np.round(vals, 9))) == 8
        for k in range(8):
            u = vecs[:, k]
            hits = [r for r in o.rays if abs(abs(np.dot(u, r.components)) ** 2 - r.norm2) < 1e-9]
            assert len(hits) == 1


def test_trusted_rows_match(derivation):
    rec = derivation.reconciliation
    assert len(rec.rows) == 40
    for row in rec.rows:
        if row.matched:
            assert row.printed_agrees
            assert derivation.rays[row.id].components == canonicalize(parse_table_row(TABLE_ROWS[row.id - 1]))


def test_suspect_rows_flagged(derivation):
    rec = derivation.reconciliation
    assert rec.overridden_ids == sorted(SUSPECT)
    assert rec.resolution == "unique"
    status = {r.id: r.status for r in rec.rows}
    assert status[12] == "bad-length"
    assert status[14] == status[15] == "duplicate"
    assert status[16] == "not-an-eigenvector"
    for i, v in SUSPECT.items():
        assert derivation.rays[i].components == v
    assert len(rec.diagnosis()) == 6


def test_block_to_context(derivation):
    assert derivation.reconciliation.block_context == {1: 4, 2: 3, 3: 2, 4: 1, 5: 5}
    for b, c in derivation.reconciliation.block_context.items():
        ids = range(8 * b - 7, 8 * b + 1)
        assert all(derivation.rays[i].octad == b for i in ids)
        assert derivation.octad_ids(c) == tuple(ids)


def test_json_shape(derivation):
    js = derivation.to_json()
    assert [r["id"] for r in js] == list(range(1, 41))
    assert all(len(r["components"]) == 8 for r in js)


def test_eigenbasis_requires_commuting():
    with pytest.raises(ValueError):
        common_eigenbasis([observable_from_letters("XI"), observable_from_letters("ZI")])


def test_eigenbasis_rejects_degenerate():
    with pytest.raises(StructuralError):
        common_eigenbasis([observable_from_letters("ZI")])


def test_eigenbasis_two_qubits():
    o = common_eigenbasis([observable_from_letters("XX"), observable_from_letters("ZZ")])
    assert sorted(r.components for r in o.rays) == sorted(
        [(1, 0, 0, 1), (1, 0, 0, -1), (0, 1, 1, 0), (0, 1, -1, 0)]
    )


def test_reconcile_with_clean_table(derivation):
    """Feeding the derived rays back in as the table matches every row."""
    bar = "̄"
    clean = [
        "".join("1" + bar if c == -1 else str(c) for c in derivation.rays[i].components)
        for i in range(1, 41)
    ]
    rec = reconcile_with_table(derivation.octads, clean)
    assert rec.overridden_ids == []
    assert rec.resolution == "none"
