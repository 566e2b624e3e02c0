from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import EX_SU2, LIOUVILLE, NOTGH, P1, P2, PA, PB, T1_WORKED, make_op
from vekua.classify import (
    EMPIRICAL,
    GH,
    GS,
    INCONCLUSIVE,
    LATTICE_GAP,
    NO,
    SURD_GAP,
    YES,
    ZERO_FOUND,
    NoResonantSequence,
    check_condition1,
    check_condition2,
    check_condition3,
    classify_gh,
    classify_gs,
    empirical_exponent,
    find_delta_zeros,
    find_resonant_sequence,
    integer_solvable,
    surd_bound,
)
from vekua.dual import enumerate_keys, key_weight_squared, lam_key

VERDICTS = [
    ("p1", P1, (YES, "1"), (YES, "1")),
    ("p2", P2, (YES, "2"), (YES, "2")),
    ("ex_su2", EX_SU2, (YES, "3"), (YES, "su2")),
    ("notgh", NOTGH, (NO, None), (YES, "3")),
    ("pa", PA, (NO, None), (YES, "su2")),
    ("pb", PB, (NO, None), (YES, "su2")),
    ("liouville", LIOUVILLE, (NO, None), (INCONCLUSIVE, None)),
    ("t1_worked", T1_WORKED, (YES, "1"), (YES, "1")),
]


@pytest.mark.parametrize("name, params, gh, gs", VERDICTS, ids=[v[0] for v in VERDICTS])
def test_verdict_table(name, params, gh, gs):
    op = make_op(**params)
    v_gh, v_gs = classify_gh(op, 50), classify_gs(op, 50)
    assert (v_gh.answer, v_gh.condition_id) == gh
    assert (v_gs.answer, v_gs.condition_id) == gs
    assert v_gh.property == GH and v_gs.property == GS


def test_conditions_1_and_2():
    assert check_condition1(make_op(**P1)) and not check_condition2(make_op(**P1))
    assert check_condition2(make_op(**P2)) and not check_condition1(make_op(**P2))
    # |p| < |q| with Re q = 0 is neither
    op = make_op(torus=(1,), q=[0, 2], p=1)
    assert not check_condition1(op) and not check_condition2(op)


def test_ex_su2_lattice_gap_is_one_third():
    cert = check_condition3(make_op(**EX_SU2), 50, GH)
    assert cert.kind == LATTICE_GAP
    assert cert.gap == Fraction(1, 3)
    assert cert.details["step"] == Fraction(1, 2)


def test_notgh_gaps():
    op = make_op(**NOTGH)
    gs = check_condition3(op, 50, GS)
    assert gs.kind == LATTICE_GAP and gs.gap == Fraction(1, 4)
    gh = check_condition3(op, 50, GH)
    assert gh.kind == ZERO_FOUND and gh.infinite
    assert gh.zero.twice_ms == (-1,)


def test_delta_zero_rows_pa():
    zeros = find_delta_zeros(make_op(**PA), 10)
    assert [z.twice_ms for z in zeros.rows] == [(-6,), (6,)]
    assert zeros.infinite and zeros.decided


def test_no_delta_zeros_p2():
    zeros = find_delta_zeros(make_op(**P2), 10)
    assert zeros.rows == () and not zeros.infinite


@pytest.mark.parametrize(
    "rows, rhs, expected",
    [
        ([[2, 4]], [6], (True, 1)),
        ([[2, 4]], [3], (False, 1)),
        ([[1, 0], [0, 1]], [5, -7], (True, 2)),
        ([[2, 0], [0, 3]], [4, 4], (False, 2)),
        ([[0, 0]], [1], (False, 0)),
        ([[0, 0]], [0], (True, 0)),
    ],
)
def test_integer_solvable(rows, rhs, expected):
    assert integer_solvable(rows, rhs) == expected


def test_surd_certificate_bounds_scan():
    # lam = t1 + sqrt2 t2, K = |2i|^2 - 1 = 3: lam^2 = 3 has no solution
    op = make_op(torus=(1, "√2"), q=[0, 2], p=1)
    cert = check_condition3(op, 10, GH)
    assert cert.kind == SURD_GAP and cert.exponent == 2.0 and cert.constant == 1
    for taus, ms in enumerate_keys(op.group, 10):
        lv = lam_key(op.vf, taus, ms)
        margin = abs(lv * lv - op.K)
        assert margin >= surd_bound(cert, key_weight_squared(taus, ms))


def test_surd_with_finite_zeros_is_still_certified():
    # lam^2 = 1 only at (+-1, 0): finitely many zeros on a torus
    op = make_op(torus=(1, "√2"), q=[0, "√2"], p=1)
    v = classify_gh(op, 10)
    assert (v.answer, v.condition_id) == (YES, "3")
    assert v.certificate.details["zeros_exist"] is True


@pytest.mark.parametrize("xi_max, expected", [(2, 2.0), (3, 2.3979157616563596), (5, 4.123105625617661)])
def test_liouville_empirical_exponent(xi_max, expected):
    cert = check_condition3(make_op(**LIOUVILLE), xi_max, GS)
    assert cert.kind == EMPIRICAL
    assert cert.exponent == pytest.approx(expected, abs=1e-12)


def test_liouville_exponent_plateaus():
    op = make_op(**LIOUVILLE)
    exps = [check_condition3(op, x, GS).exponent for x in (5, 8, 12)]
    assert exps == pytest.approx([4.123105625617661] * 3)


def test_liouville_asserted_input_gives_no():
    params = dict(LIOUVILLE)
    params["su2"] = ({"cf": [0, 1, 2, 6, 24, 120, 720], "liouville": True},)
    v = classify_gs(make_op(**params), 50)
    assert v.answer == NO and len(v.witness) == 3


def test_resonant_terms_frozen():
    terms = find_resonant_sequence(make_op(**LIOUVILLE))
    assert [(t.k, t.convergent, t.weight_sq) for t in terms] == [
        (1, Fraction(0), Fraction(3)),
        (2, Fraction(1), Fraction(4)),
        (3, Fraction(2, 3), Fraction(17)),
    ]
    for t, up in zip(terms, [0.46798720054331594, 0.09979540032944503, 0.0027340036048837963]):
        assert float(t.delta_upper) == pytest.approx(up, rel=1e-9)
        assert 0 < t.delta_lower <= t.delta_upper
        assert t.bound_holds


@pytest.mark.parametrize("params", [P1, P2, NOTGH])
def test_no_resonant_sequence_for_exact_data(params):
    with pytest.raises(NoResonantSequence):
        find_resonant_sequence(make_op(**params))


def test_empirical_exponent_statistic():
    # margin <xi>^-3 at every weight gives exponent 3 once <xi> >= 3
    w2 = [float(w * w) for w in range(2, 20)]
    m = [w ** -3.0 for w in range(2, 20)]
    assert empirical_exponent(w2, m) == pytest.approx(3.0)
    assert empirical_exponent([4.0], [1.0]) == 0.0


def test_condition3_mode_validation():
    with pytest.raises(ValueError):
        check_condition3(make_op(**P1), 5, "XX")


def test_verdict_json_keys():
    js = classify_gh(make_op(**EX_SU2), 50).to_json()
    assert js["certificate"]["gap"] == "1/3"
    assert js["certificate"]["certifying"] is True
