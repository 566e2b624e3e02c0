"""Independent checks for apply and solve.

Two routes that do not go through the closed forms of the operator module:

* a pointwise check on tori that synthesizes u on a grid, differentiates
  along the flow of X by central finite differences, and compares with the
  synthesis of apply(op, u);
* a brute-force orbit solver that writes P on one orbit as a real-linear
  system in (Re, Im) of the unknowns and eliminates it generically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coeffs import FourierData
from .dual import Slot, conjugate_slot, lam
from .exact import ExactComplex, ExactReal
from .operator import OperatorSpec, SlotOrbit, apply

_R0 = ExactReal(0)

# central first-derivative stencils on offsets -r..r
_STENCILS = {
    2: [Fraction(-1, 2), 0, Fraction(1, 2)],
    4: [Fraction(1, 12), Fraction(-2, 3), 0, Fraction(2, 3), Fraction(-1, 12)],
    6: [Fraction(-1, 60), Fraction(3, 20), Fraction(-3, 4), 0, Fraction(3, 4), Fraction(-3, 20), Fraction(1, 60)],
    8: [
        Fraction(1, 280), Fraction(-4, 105), Fraction(1, 5), Fraction(-4, 5), 0,
        Fraction(4, 5), Fraction(-1, 5), Fraction(4, 105), Fraction(-1, 280),
    ],
}


class GroupHasSU2Factor(ValueError):
    """Pointwise synthesis is only implemented on tori."""


class SingularInconsistent(ValueError):
    """The orbit system is singular and the right-hand side is outside its range."""


# -- pointwise check on T^d ----------------------------------------------------------


@dataclass(frozen=True)
class GridReport:
    grid_n: int
    order: int
    max_discrepancy: float
    max_abs_pu: float

    def to_json(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "fd_order": self.order,
            "max_discrepancy": self.max_discrepancy,
            "max_abs_Pu": self.max_abs_pu,
        }


def _synthesize(data: FourierData, grid_n: int, shift: float = 0.0, flow=None) -> np.ndarray:
    """u(x + shift * flow) on the uniform grid, by direct summation.

    On T^d the representations are characters e^{i tau.x}; the sum factors
    over axes, so it is done one axis at a time.
    """
    d = data.group.torus_dim
    x = 2 * np.pi * np.arange(grid_n) / grid_n
    entries = [(r.taus, complex(m[0, 0])) for r, m in data.entries.items()]
    out = np.zeros((grid_n,) * d, dtype=complex)
    if not entries:
        return out
    taus = np.array([t for t, _ in entries], dtype=float).reshape(len(entries), d)
    coef = np.array([c for _, c in entries])
    if flow is not None and shift:
        coef = coef * np.exp(1j * shift * (taus @ np.asarray(flow, dtype=float)))
    # out[x1..xd] = sum_r coef_r prod_j exp(i tau_rj x_j)
    letters = "abcdefgh"[:d]
    factors = [np.exp(1j * np.outer(taus[:, j], x)) for j in range(d)]
    subscripts = "r," + ",".join(f"r{c}" for c in letters) + "->" + letters
    return np.einsum(subscripts, coef, *factors, optimize=True)


def torus_grid_apply(op: OperatorSpec, u: FourierData, grid_n: int, order: int = 8) -> GridReport:
    """Max pointwise gap between (X - q - p conj) u computed on a grid and the
    synthesis of apply(op, u)."""
    if op.group.su2_count:
        raise GroupHasSU2Factor("pointwise synthesis needs a torus")
    if order not in _STENCILS:
        raise ValueError(f"no central stencil of order {order}")
    if u.exact:
        u = u.to_float()
    flow = [float(c) for c in op.vf.torus_coeffs]
    h = 2 * np.pi / grid_n
    w = _STENCILS[order]
    r = order // 2
    xu = np.zeros((grid_n,) * op.group.torus_dim, dtype=complex)
    for j, wj in enumerate(w):
        if wj:
            xu += float(wj) * _synthesize(u, grid_n, (j - r) * h, flow)
    xu /= h
    u0 = _synthesize(u, grid_n)
    pu = xu - complex(op.q) * u0 - complex(op.p) * np.conj(u0)
    ref = _synthesize(apply(op, u), grid_n)
    gap = float(np.max(np.abs(pu - ref))) if pu.size else 0.0
    return GridReport(grid_n, order, gap, float(np.max(np.abs(ref))) if ref.size else 0.0)


def observed_order(grids, discrepancies) -> float:
    """Least-squares slope of log(discrepancy) against log(grid spacing)."""
    h = np.log(2 * np.pi / np.asarray(grids, dtype=float))
    e = np.log(np.asarray(discrepancies, dtype=float))
    return float(np.polyfit(h, e, 1)[0])


# -- brute-force orbit solver --------------------------------------------------------


UNIQUE = "unique"
SINGULAR_CONSISTENT = "singular-consistent"


@dataclass(frozen=True)
class OracleSolution:
    status: str
    values: dict
    rank: int
    nullspace: tuple = ()
    rhs: tuple = ()

    def family_contains(self, op: OperatorSpec, orbit: SlotOrbit, candidate: dict) -> bool:
        """Whether ``candidate`` (slot -> value) solves the same orbit system."""
        A, _ = _real_system(op, orbit)
        x = _to_real_vector(orbit, candidate)
        b = self.rhs
        return all(
            sum((A[i][j] * x[j] for j in range(len(x))), _R0) == b[i] for i in range(len(b))
        )


def _real_unknowns(orbit: SlotOrbit) -> tuple[Slot, ...]:
    return orbit.slots


def _to_real_vector(orbit: SlotOrbit, values: dict) -> list:
    out = []
    for s in _real_unknowns(orbit):
        z = ExactComplex._coerce(values.get(s, 0))
        out += [z.re, z.im]
    return out


def _pointwise_P(op: OperatorSpec, orbit: SlotOrbit, values: dict) -> dict:
    """(P u)(s) = (i lam(s) - q) u(s) - p * phase * conj(u(s')) on the orbit."""
    out = {}
    for s in orbit.slots:
        partner, ph = conjugate_slot(s)
        us = values.get(s, ExactComplex(0, 0))
        up = values.get(partner, ExactComplex(0, 0))
        out[s] = (ExactComplex(0, lam(op.vf, s)) - op.q) * us - op.p * ph * up.conjugate()
    return out


def _real_system(op: OperatorSpec, orbit: SlotOrbit):
    """Columns of P on the real basis (unit Re / unit Im of each unknown)."""
    slots = _real_unknowns(orbit)
    n = 2 * len(slots)
    cols = []
    for k in range(n):
        vals = {}
        s = slots[k // 2]
        vals[s] = ExactComplex(1, 0) if k % 2 == 0 else ExactComplex(0, 1)
        image = _pointwise_P(op, orbit, vals)
        col = []
        for t in slots:
            col += [image[t].re, image[t].im]
        cols.append(col)
    A = [[cols[j][i] for j in range(n)] for i in range(n)]
    return A, slots


def _eliminate(A, b):
    """Gauss-Jordan over an exact field. Returns (rank, x, consistent, null)."""
    n, m = len(A), len(A[0])
    M = [list(row) + [b[i]] for i, row in enumerate(A)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inverse()
        M[r] = [v * inv for v in M[r]]
        for i in range(n):
            if i != r and M[i][c]:
                fac = M[i][c]
                M[i] = [a - fac * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    consistent = all(not M[i][m] for i in range(r, n))
    x = [_R0] * m
    for i, c in enumerate(pivots):
        x[c] = M[i][m]
    null = []
    for f in (c for c in range(m) if c not in pivots):
        v = [_R0] * m
        v[f] = ExactReal(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][f]
        null.append(tuple(v))
    return r, x, consistent, null


def _from_real_vector(slots, x) -> dict:
    return {s: ExactComplex(x[2 * i], x[2 * i + 1]) for i, s in enumerate(slots)}


def real_system_determinant(op: OperatorSpec, orbit: SlotOrbit) -> ExactReal:
    """Determinant of the real 4x4 (or 2x2) matrix of P on the orbit."""
    A, _ = _real_system(op, orbit)
    n = len(A)
    M = [list(r) for r in A]
    det = ExactReal(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return ExactReal(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det = det * M[c][c]
        inv = M[c][c].inverse()
        for i in range(c + 1, n):
            if M[i][c]:
                fac = M[i][c] * inv
                M[i] = [a - fac * bb for a, bb in zip(M[i], M[c])]
    return det


def bruteforce_orbit_solve(op: OperatorSpec, orbit: SlotOrbit, f_values: dict) -> OracleSolution:
    """Solve P u = f on one orbit by generic elimination.

    ``f_values`` maps the orbit's slots to exact complex values (missing
    slots count as 0). Raises SingularInconsistent when no solution exists.
    """
    if op.has_cf:
        raise ValueError("the brute-force oracle needs exact coefficients")
    A, slots = _real_system(op, orbit)
    b = _to_real_vector(orbit, f_values)
    rank, x, consistent, null = _eliminate(A, b)
    if not consistent:
        raise SingularInconsistent(f"rank {rank} system with right-hand side outside its range")
    status = UNIQUE if rank == len(b) else SINGULAR_CONSISTENT
    return OracleSolution(status, _from_real_vector(slots, x), rank, tuple(null), tuple(b))


def bruteforce_apply(op: OperatorSpec, orbit: SlotOrbit, u_values: dict) -> dict:
    """P u on one orbit through the real matrix (no closed forms)."""
    A, slots = _real_system(op, orbit)
    x = _to_real_vector(orbit, u_values)
    y = [sum((A[i][j] * x[j] for j in range(len(x))), _R0) for i in range(len(x))]
    return _from_real_vector(slots, y)
