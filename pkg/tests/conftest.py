from __future__ import annotations

import pytest

from vekua.dual import GroupSpec, VectorFieldSpec
from vekua.exact import parse_complex, parse_real
from vekua.operator import OperatorSpec

LIOUVILLE_CF = {"cf": [0, 1, 2, 6, 24, 120, 720]}


def make_op(torus=(), su2=(), q=0, p=1) -> OperatorSpec:
    tc = tuple(parse_real(c) for c in torus)
    sc = tuple(parse_real(a) for a in su2)
    return OperatorSpec(
        GroupSpec(len(tc), len(sc)), VectorFieldSpec(tc, sc), parse_complex(q), parse_complex(p)
    )


# operators from the worked examples
P1 = dict(torus=(1,), q=[0, 1], p=2)
P2 = dict(torus=(1,), q=6, p=[3, 4])
EX_SU2 = dict(su2=(1,), q=[0, 1], p="1/3√3")
NOTGH = dict(torus=(1,), su2=(1,), q=[0, "1/2√5"], p=1)
PA = dict(su2=(1,), q=[0, 5], p=4)
PB = dict(su2=(1,), q=[1, 1], p=[0, "√2"])
LIOUVILLE = dict(torus=(1,), su2=(LIOUVILLE_CF,), q=[0, 1], p=1)
T1_WORKED = dict(torus=(1,), q=0, p="1/2")


@pytest.fixture
def op_factory():
    return make_op


@pytest.fixture(scope="session")
def notgh():
    return make_op(**NOTGH)


@pytest.fixture(scope="session")
def pa():
    return make_op(**PA)


@pytest.fixture(scope="session")
def pb():
    return make_op(**PB)


@pytest.fixture(scope="session")
def liouville():
    return make_op(**LIOUVILLE)


# acceptance lines collected by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
