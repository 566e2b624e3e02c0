from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import NOTGH, P2, PA, PB, T1_WORKED, make_op
from vekua.coeffs import FourierData, random_fourier_data
from vekua.dual import RepIndex, Slot
from vekua.exact import ExactComplex
from vekua.operator import orbit_of, slot_orbits
from vekua.oracle import (
    SINGULAR_CONSISTENT,
    UNIQUE,
    GroupHasSU2Factor,
    SingularInconsistent,
    bruteforce_apply,
    bruteforce_orbit_solve,
    observed_order,
    torus_grid_apply,
)
from vekua.solve import make_admissible, solve

GRID_OP = dict(torus=(1, "1/3√2"), q=[0, 1], p=2)


def test_worked_t1_fixture():
    op = make_op(**T1_WORKED)
    s = Slot(RepIndex((1,), ()), (), ())
    partner = Slot(RepIndex((-1,), ()), (), ())
    sol = bruteforce_orbit_solve(op, orbit_of(op.vf, s), {s: 1})
    assert sol.status == UNIQUE and sol.rank == 2 * 2
    assert sol.values[s] == ExactComplex(0, Fraction(-4, 5))
    assert sol.values[partner] == ExactComplex(Fraction(-2, 5))


def test_paired_zero_orbit_singular():
    op = make_op(**PA)
    s = Slot(RepIndex((), (6,)), (6,), (0,))
    orbit = orbit_of(op.vf, s)
    with pytest.raises(SingularInconsistent):
        bruteforce_orbit_solve(op, orbit, {s: 1})
    f = bruteforce_apply(op, orbit, {s: ExactComplex(1, 2)})
    assert f == {s: ExactComplex(4, -2), orbit.partner: ExactComplex(4, -8)}
    sol = bruteforce_orbit_solve(op, orbit, f)
    assert sol.status == SINGULAR_CONSISTENT
    assert sol.rank == 2 and len(sol.nullspace) == 2
    assert sol.family_contains(op, orbit, {s: ExactComplex(1, 2), orbit.partner: 0})


def test_fixed_zero_orbit_singular():
    op = make_op(**PB)
    s = Slot(RepIndex((), (0,)), (0,), (0,))
    orbit = orbit_of(op.vf, s)
    sol = bruteforce_orbit_solve(op, orbit, bruteforce_apply(op, orbit, {s: 1}))
    assert sol.status == SINGULAR_CONSISTENT
    assert sol.rank == 1 and len(sol.nullspace) == 1


@pytest.mark.parametrize("params", [P2, PA, PB, NOTGH])
def test_solver_agrees_with_oracle(params):
    op = make_op(**params)
    f = make_admissible(op, random_fourier_data(op.group, 3, 0, seed=11, exact=True))
    u = solve(op, f)
    for orbit in slot_orbits(op.group, op.vf, 3):
        fv = {t: f.value(t) for t in orbit.slots}
        sol = bruteforce_orbit_solve(op, orbit, fv)
        cand = {t: u.value(t) for t in orbit.slots}
        if sol.status == UNIQUE:
            assert all(sol.values[t] == cand[t] for t in orbit.slots)
        else:
            assert sol.family_contains(op, orbit, cand)


def test_oracle_rejects_cf(liouville):
    s = Slot(RepIndex((1,), (0,)), (0,), (0,))
    with pytest.raises(ValueError):
        bruteforce_orbit_solve(liouville, orbit_of(liouville.vf, s), {s: 1})


GRID_EXPECTED = {128: 7.317994730677411e-07, 256: 3.0060228661886554e-09, 512: 1.1928167614110481e-11}


def test_torus_grid_check():
    op = make_op(**GRID_OP)
    u = random_fourier_data(op.group, 10, 3, seed=0)
    reps = [torus_grid_apply(op, u, n) for n in (128, 256, 512)]
    for r in reps:
        assert r.max_discrepancy == pytest.approx(GRID_EXPECTED[r.grid_n], rel=1e-3)
    order = observed_order([r.grid_n for r in reps], [r.max_discrepancy for r in reps])
    assert order == pytest.approx(7.952394160423801, abs=1e-2)


def test_grid_check_rejects_su2(notgh):
    u = FourierData.zeros(notgh.group, 2, exact=False)
    with pytest.raises(GroupHasSU2Factor):
        torus_grid_apply(notgh, u, 16)


def test_grid_check_rejects_unknown_order():
    op = make_op(**GRID_OP)
    with pytest.raises(ValueError):
        torus_grid_apply(op, FourierData.zeros(op.group, 2, exact=False), 16, order=3)


def test_observed_order_of_power_law():
    grids = [64, 128, 256]
    errs = [(1.0 / n) ** 4 for n in grids]
    assert observed_order(grids, errs) == pytest.approx(4.0)
