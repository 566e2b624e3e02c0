"""Input checks shared by the estimator layer."""

from __future__ import annotations

from collections.abc import Iterable

from .coeffs import FourierData
from .dual import GroupSpec, VectorFieldSpec
from .exact import parse_complex, parse_real
from .operator import OperatorSpec


def check_operator_params(torus_coeffs, su2_coeffs, q, p) -> OperatorSpec:
    """Build an OperatorSpec from loosely typed parameters (strings, ints, pairs)."""
    tc = tuple(parse_real(c) for c in (torus_coeffs or ()))
    sc = tuple(parse_real(a) for a in (su2_coeffs or ()))
    group = GroupSpec(len(tc), len(sc))
    return OperatorSpec(group, VectorFieldSpec(tc, sc), parse_complex(q), parse_complex(p))


def check_fourier_batch(X, group: GroupSpec) -> list[FourierData]:
    """Accept one FourierData or an iterable of them; check the group."""
    if isinstance(X, FourierData):
        batch = [X]
    elif isinstance(X, Iterable):
        batch = list(X)
    else:
        raise TypeError(f"expected FourierData or a sequence of them, got {type(X).__name__}")
    for i, f in enumerate(batch):
        if not isinstance(f, FourierData):
            raise TypeError(f"item {i} is {type(f).__name__}, not FourierData")
        if f.group != group:
            raise ValueError(f"item {i} lives on {f.group}, operator on {group}")
    return batch
