from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vekua.dual import (
    GroupSpec,
    RepIndex,
    Slot,
    VectorFieldSpec,
    conjugate_slot,
    enumerate_keys,
    enumerate_reps,
    key_array,
    key_weight_squared,
    lam,
    rep_dimension,
    row_index,
    row_labels,
    row_parity,
    slot_from_json,
    slot_to_json,
    slots_of,
    weight_squared,
)
from vekua.exact import ExactReal

GROUPS = [GroupSpec(1, 0), GroupSpec(2, 0), GroupSpec(0, 1), GroupSpec(1, 1), GroupSpec(0, 2)]


def test_group_validation():
    with pytest.raises(ValueError):
        GroupSpec(0, 0)
    with pytest.raises(ValueError):
        GroupSpec(-1, 1)
    assert str(GroupSpec(2, 1)) == "T^2 x SU(2)"


def test_weights():
    assert weight_squared(RepIndex((3,), ())) == 10
    assert weight_squared(RepIndex((), (1,))) == Fraction(7, 4)
    assert weight_squared(RepIndex((1, -2), (2,))) == 8
    assert key_weight_squared((1,), (-3,)) == Fraction(2) + Fraction(15, 4)


@pytest.mark.parametrize(
    "group, reps, keys, slots",
    [
        (GroupSpec(1, 0), 5, 5, 5),
        (GroupSpec(2, 0), 25, 25, 25),
        (GroupSpec(0, 1), 5, 9, 55),
        (GroupSpec(1, 1), 23, 41, 225),
        (GroupSpec(0, 2), 22, 69, 1600),
    ],
)
def test_enumeration_counts(group, reps, keys, slots):
    rs = enumerate_reps(group, 3)
    assert len(rs) == reps
    assert len(enumerate_keys(group, 3)) == keys
    assert sum(rep_dimension(r) ** 2 for r in rs) == slots
    assert all(weight_squared(r) <= 9 for r in rs)
    ws = [weight_squared(r) for r in rs]
    assert ws == sorted(ws)


def test_enumeration_rejects_small_cutoff():
    with pytest.raises(ValueError):
        enumerate_reps(GroupSpec(1, 0), Fraction(1, 2))


@pytest.mark.parametrize("group", GROUPS)
def test_key_array_matches_enumerate_keys(group):
    X, w4 = key_array(group, 4)
    keys = enumerate_keys(group, 4)
    assert [tuple(row) for row in X.tolist()] == [k[0] + k[1] for k in keys]
    assert w4.tolist() == [int(4 * key_weight_squared(*k)) for k in keys]


def test_key_array_order_frozen():
    X, w4 = key_array(GroupSpec(1, 1), 3)
    assert X[:6].tolist() == [[0, 0], [0, -1], [0, 1], [-1, 0], [1, 0], [-1, -1]]
    assert w4[:6].tolist() == [4, 7, 7, 8, 8, 11]


def test_row_labels_and_parity():
    rep = RepIndex((), (3,))
    assert row_labels(rep) == [(-3,), (-1,), (1,), (3,)]
    assert [row_index(rep, ms) for ms in row_labels(rep)] == [0, 1, 2, 3]
    assert row_parity(rep).tolist() == [1, -1, 1, -1]
    assert row_parity(RepIndex((), (2,))).tolist() == [1, -1, 1]


def test_slot_rejects_bad_indices():
    with pytest.raises(ValueError):
        Slot(RepIndex((), (2,)), (1,), (0,))
    with pytest.raises(ValueError):
        Slot(RepIndex((), (1,)), (3,), (1,))


reps = st.builds(
    RepIndex,
    st.tuples(st.integers(-4, 4)),
    st.tuples(st.integers(0, 4)),
)


@settings(max_examples=100, deadline=None)
@given(reps, st.data())
def test_conjugate_slot_involution(rep, data):
    slot = data.draw(st.sampled_from(list(slots_of(rep))))
    c, ph = conjugate_slot(slot)
    cc, ph2 = conjugate_slot(c)
    assert cc == slot and ph == ph2
    assert ph in (1, -1)
    # phase is the product of row and column parities
    sig = row_parity(rep)
    assert ph == sig[slot.row] * sig[slot.col]
    # the conjugate sits at the reversed flat index
    d = rep_dimension(rep)
    assert c.row * d + c.col == d * d - 1 - (slot.row * d + slot.col)
    if slot != c:
        assert slot.orientation == -c.orientation != 0


def test_lam_and_vector_field():
    vf = VectorFieldSpec((1, "√2"), ("1/3",))
    rep = RepIndex((2, -1), (3,))
    s = Slot(rep, (1,), (-3,))
    assert lam(vf, s) == ExactReal(2) - ExactReal.sqrt(2) + Fraction(1, 6)
    with pytest.raises(ValueError):
        VectorFieldSpec((0,), (0,))


def test_slot_json_round_trip():
    s = Slot(RepIndex((1, -2), (2,)), (0,), (-2,))
    assert slot_from_json(slot_to_json(s)) == s


def test_row_parity_dtype():
    assert row_parity(RepIndex((1,), ())).dtype == np.int64
