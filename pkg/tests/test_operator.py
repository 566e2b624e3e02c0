from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import NOTGH, P1, P2, PA, PB, make_op
from vekua.coeffs import FourierData, random_fourier_data
from vekua.dual import (
    GroupSpec,
    RepIndex,
    Slot,
    VectorFieldSpec,
    conjugate_slot,
    enumerate_reps,
    slots_of,
)
from vekua.exact import CFExactnessError, ExactComplex
from vekua.operator import (
    FIXED,
    PAIRED,
    OperatorSpec,
    apply,
    apply_at,
    delta,
    delta_key,
    operator_from_json,
    operator_to_json,
    orbit_of,
    orbit_system,
    slot_orbits,
)
from vekua.oracle import bruteforce_apply, real_system_determinant


def test_operator_validation():
    with pytest.raises(ValueError):
        make_op(torus=(1,), q=1, p=0)
    with pytest.raises(ValueError):
        make_op(torus=("√2",), q="√3", p=1)


def test_K_values():
    assert make_op(**P1).K == -3
    assert make_op(**P2).K == 11
    assert make_op(**PA).K == 9
    assert make_op(**PB).K == 0
    assert make_op(**NOTGH).K == Fraction(1, 4)


@pytest.mark.parametrize(
    "params, taus, ms, expected",
    [
        (P1, (2,), (), ExactComplex(-7, 0)),
        (P2, (1,), (), ExactComplex(10, -12)),
        (P2, (-3,), (), ExactComplex(2, 36)),
        (PA, (), (6,), ExactComplex(0, 0)),
        (PA, (), (2,), ExactComplex(8, 0)),
        (PB, (), (1,), ExactComplex(Fraction(-1, 4), -1)),
        (NOTGH, (0,), (1,), ExactComplex(0, 0)),
    ],
)
def test_delta_frozen(params, taus, ms, expected):
    assert delta_key(make_op(**params), taus, ms).value == expected


@pytest.mark.parametrize("params", [P1, P2, PA, PB, NOTGH])
def test_delta_conjugate_symmetry(params):
    op = make_op(**params)
    for rep in enumerate_reps(op.group, 6):
        for slot in slots_of(rep):
            partner, _ = conjugate_slot(slot)
            assert delta(op, partner).value == delta(op, slot).value.conjugate()


@pytest.mark.parametrize("params", [P1, P2, PA, PB, NOTGH])
def test_orbit_system_determinant(params):
    op = make_op(**params)
    for orbit in slot_orbits(op.group, op.vf, 4):
        sysm = orbit_system(op, orbit)
        if orbit.kind == PAIRED:
            assert sysm.determinant == delta(op, orbit.slot).value
            # the real system of a paired orbit has determinant |Delta|^2
            assert real_system_determinant(op, orbit) == sysm.determinant.abs2()
        else:
            assert sysm.determinant == op.K
            assert real_system_determinant(op, orbit) == op.K
        assert sysm.singular == (not sysm.determinant)


def test_orbits_partition_slots():
    op = make_op(**NOTGH)
    orbits = slot_orbits(op.group, op.vf, 3)
    covered = [s for o in orbits for s in o.slots]
    everything = [s for r in enumerate_reps(op.group, 3) for s in slots_of(r)]
    assert len(covered) == len(set(covered)) == len(everything)
    fixed = [o for o in orbits if o.kind == FIXED]
    assert all(o.slot.orientation == 0 for o in fixed)
    assert all(orbit_of(op.vf, o.partner) == o for o in orbits if o.kind == PAIRED)


@pytest.mark.parametrize("params", [P1, P2, PA, PB, NOTGH])
@pytest.mark.parametrize("seed", [0, 1])
def test_apply_matches_slot_formula_and_oracle(params, seed):
    op = make_op(**params)
    u = random_fourier_data(op.group, 3, 0, seed=seed, exact=True, entry_density=0.6)
    Pu = apply(op, u)
    for orbit in slot_orbits(op.group, op.vf, 3):
        vals = {s: u.value(s) for s in orbit.slots}
        ref = bruteforce_apply(op, orbit, vals)
        for s in orbit.slots:
            assert Pu.value(s) == apply_at(op, u, s) == ref[s]


@pytest.mark.parametrize("params", [P2, PB, NOTGH])
def test_float_apply_matches_exact(params):
    op = make_op(**params)
    u = random_fourier_data(op.group, 4, 0, seed=5, exact=True, entry_density=0.5)
    a = apply(op, u).to_float()
    b = apply(op, u.to_float())
    for rep in enumerate_reps(op.group, 4):
        assert np.allclose(a.matrix(rep), b.matrix(rep), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(-3, 3))
def test_apply_is_real_linear(seed, c):
    op = make_op(**P2)
    u = random_fourier_data(op.group, 4, 0, seed=seed, exact=True)
    v = random_fourier_data(op.group, 4, 0, seed=seed + 1, exact=True)
    lhs = apply(op, u.scale(c) + v)
    rhs = apply(op, u).scale(c) + apply(op, v)
    assert lhs.same_as(rhs)


def test_apply_is_not_complex_linear():
    op = make_op(**P1)
    rep = RepIndex((1,), ())
    u = FourierData.from_slots(op.group, 2, {Slot(rep, (), ()): 1})
    i = ExactComplex(0, 1)
    assert not apply(op, u.scale(i)).same_as(apply(op, u).scale(i))


def test_cf_operator_rejects_exact_apply(liouville):
    u = random_fourier_data(liouville.group, 3, 0, seed=0, exact=True)
    with pytest.raises(CFExactnessError):
        apply(liouville, u)
    assert liouville.realize(0).has_cf is False


@pytest.mark.parametrize("params", [P1, P2, PA, PB, NOTGH])
def test_operator_json_round_trip(params):
    op = make_op(**params)
    assert operator_from_json(json.loads(json.dumps(operator_to_json(op)))) == op


def test_liouville_json_round_trip(liouville):
    again = operator_from_json(json.loads(json.dumps(operator_to_json(liouville))))
    assert again.vf.su2_coeffs[0].convergents == liouville.vf.su2_coeffs[0].convergents
    assert again.q == liouville.q and again.p == liouville.p


def test_group_mismatch():
    with pytest.raises(ValueError):
        OperatorSpec(GroupSpec(2, 0), VectorFieldSpec((1,), ()), ExactComplex(0), ExactComplex(1))
