"""The operator P u = X u - q u - p conj(u) acting on Fourier coefficients.

At a slot s with conjugate slot s' and phase ph,

    (P u)(s) = (i lam(s) - q) u(s) - p ph conj(u(s')),

and a paired orbit {s, s'} carries the 2x2 complex system in the unknowns
(u(s), conj(u(s'))) whose determinant is

    Delta = -lam^2 + |q|^2 - |p|^2 - 2i lam Re(q).

A slot equal to its own conjugate (lam = 0) gives a real-linear 2x2 system
with determinant |q|^2 - |p|^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coeffs import FourierData, group_from_json, group_to_json, zero_matrix
from .dual import (
    GroupSpec,
    RepIndex,
    Slot,
    VectorFieldSpec,
    conjugate_rep,
    conjugate_slot,
    enumerate_reps,
    lam,
    lam_key,
    row_lambdas,
    row_parity,
    slots_of,
)
from .exact import (
    ZERO,
    CFExactnessError,
    CFReal,
    ExactComplex,
    ExactReal,
    Interval,
    LinearCF,
    common_radicand,
    complex_to_json,
    parse_complex,
    parse_real,
    real_to_json,
)


@dataclass(frozen=True)
class OperatorSpec:
    group: GroupSpec
    vf: VectorFieldSpec
    q: ExactComplex
    p: ExactComplex

    def __post_init__(self):
        object.__setattr__(self, "q", parse_complex(self.q))
        object.__setattr__(self, "p", parse_complex(self.p))
        if not self.p:
            raise ValueError("p must be nonzero")
        self.vf.check_group(self.group)
        exact_coeffs = [
            c for c in self.vf.torus_coeffs + self.vf.su2_coeffs if isinstance(c, ExactReal)
        ]
        common_radicand(exact_coeffs + [self.q, self.p])

    @property
    def has_cf(self) -> bool:
        return self.vf.has_cf

    @property
    def q_abs2(self) -> ExactReal:
        return self.q.abs2()

    @property
    def p_abs2(self) -> ExactReal:
        return self.p.abs2()

    @property
    def K(self) -> ExactReal:
        """|q|^2 - |p|^2."""
        return self.q.abs2() - self.p.abs2()

    def realize(self, back: int = 0) -> OperatorSpec:
        """Replace continued-fraction coefficients by a convergent."""
        if not self.has_cf:
            return self

        def fix(c):
            return ExactReal(c.realize(back)) if isinstance(c, CFReal) else c

        vf = VectorFieldSpec(
            tuple(fix(c) for c in self.vf.torus_coeffs),
            tuple(fix(a) for a in self.vf.su2_coeffs),
        )
        return OperatorSpec(self.group, vf, self.q, self.p)

    def with_coefficients(self, q=None, p=None, vf=None) -> OperatorSpec:
        return OperatorSpec(
            self.group,
            self.vf if vf is None else vf,
            self.q if q is None else q,
            self.p if p is None else p,
        )


def operator_to_json(op: OperatorSpec) -> dict:
    return {
        "schema_version": 1,
        "group": group_to_json(op.group),
        "vf": {
            "torus": [real_to_json(c) for c in op.vf.torus_coeffs],
            "su2": [real_to_json(a) for a in op.vf.su2_coeffs],
        },
        "q": complex_to_json(op.q),
        "p": complex_to_json(op.p),
    }


def operator_from_json(obj: dict) -> OperatorSpec:
    group = group_from_json(obj["group"])
    vf_obj = obj.get("vf", {})
    vf = VectorFieldSpec(
        tuple(parse_real(c) for c in vf_obj.get("torus", [])),
        tuple(parse_real(a) for a in vf_obj.get("su2", [])),
    )
    return OperatorSpec(group, vf, parse_complex(obj["q"]), parse_complex(obj["p"]))


# -- Delta ---------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaValue:
    """Delta at one row. Exact fields are None when lam involves a
    continued-fraction coefficient; the enclosures are always set."""

    value: ExactComplex | None
    re_part: ExactReal | None
    im_part: ExactReal | None
    re_enclosure: Interval
    im_enclosure: Interval

    @property
    def is_exact(self) -> bool:
        return self.value is not None

    def is_zero(self) -> bool | None:
        """True/False when decided, None when the enclosure cannot decide."""
        if self.value is not None:
            return not self.value
        if not self.re_enclosure.contains_zero() or not self.im_enclosure.contains_zero():
            return False
        return None

    def __complex__(self) -> complex:
        if self.value is not None:
            return complex(self.value)
        return complex(self.re_enclosure.mid, self.im_enclosure.mid)

    def abs_lower(self) -> Fraction:
        """Rational lower bound for |Delta| (max of the part bounds)."""
        return max(self.re_enclosure.mag_lower(), self.im_enclosure.mag_lower())


def _delta_from_lam(op: OperatorSpec, lam_val) -> DeltaValue:
    re_q = op.q.re
    if isinstance(lam_val, LinearCF):
        enc = lam_val.enclosure()
        re_enc = op.K.enclosure() - enc.square()
        im_enc = enc * (re_q.enclosure() * -2)
        return DeltaValue(None, None, None, re_enc, im_enc)
    re_part = op.K - lam_val * lam_val
    im_part = lam_val * re_q * -2
    return DeltaValue(
        ExactComplex(re_part, im_part), re_part, im_part, re_part.enclosure(), im_part.enclosure()
    )


@lru_cache(maxsize=1 << 18)
def delta_key(op: OperatorSpec, taus: tuple, twice_ms: tuple) -> DeltaValue:
    """Delta for the row label (taus, twice_ms); depends on nothing else."""
    return _delta_from_lam(op, lam_key(op.vf, taus, twice_ms))


def delta(op: OperatorSpec, slot: Slot) -> DeltaValue:
    return delta_key(op, slot.rep.taus, slot.twice_ms)


def delta_realized(op: OperatorSpec, slot: Slot, back: int = 0) -> ExactComplex:
    """Exact Delta of the operator with CF coefficients replaced by a convergent."""
    value = delta(op.realize(back), slot).value
    assert value is not None
    return value


# -- apply -----------------------------------------------------------------------


def _phase_matrix(rep: RepIndex) -> np.ndarray:
    sig = row_parity(rep)
    return np.outer(sig, sig)


def _apply_block_exact(op: OperatorSpec, rep: RepIndex, U: np.ndarray, V: np.ndarray, live) -> np.ndarray:
    """V is the conjugate representation's matrix already flipped so that
    V[i, j] sits at the conjugate slot of (i, j); ``live`` lists the flat
    positions where U or V is nonzero."""
    d = U.shape[0]
    out = zero_matrix(d, exact=True)
    sig = row_parity(rep)
    q, p = op.q, op.p
    lams = None
    coefs = {}
    for k in live:
        i, j = divmod(k, d)
        us, w = U[i, j], V[i, j]
        val = ZERO
        if us:
            coef = coefs.get(i)
            if coef is None:
                if lams is None:
                    lams = row_lambdas(op.vf, rep)
                lam_i = lams[i]
                if isinstance(lam_i, LinearCF):
                    raise CFExactnessError(
                        f"exact apply needs lam at {rep} row {i}, which involves a continued fraction"
                    )
                coef = coefs[i] = ExactComplex(-q.re, lam_i - q.im)
            val = coef * us
        if w:
            term = p * w.conjugate()
            val = val - term if sig[i] * sig[j] > 0 else val + term
        out[i, j] = val
    return out


def _float_lams(op: OperatorSpec, rep: RepIndex) -> np.ndarray:
    return np.array([float(x) for x in row_lambdas(op.vf, rep)], dtype=float)


def _apply_block_float(op: OperatorSpec, rep: RepIndex, U: np.ndarray, V: np.ndarray) -> np.ndarray:
    lams = _float_lams(op, rep)
    q, p = complex(op.q), complex(op.p)
    return (1j * lams - q)[:, None] * U - p * _phase_matrix(rep) * np.conj(V)


def apply(op: OperatorSpec, u: FourierData) -> FourierData:
    """Fourier coefficients of P u (same truncation as u)."""
    if u.group != op.group:
        raise ValueError("data and operator live on different groups")
    reps = set(u.entries)
    reps |= {conjugate_rep(r) for r in u.entries}
    out = {}
    for rep in reps:
        crep = conjugate_rep(rep)
        su, sv = u.support(rep), u.support(crep)
        if not su and not sv:
            continue
        U = u.matrix(rep)
        V = u.matrix(crep)[::-1, ::-1]
        if u.exact:
            last = U.shape[0] ** 2 - 1
            live = sorted(set(su) | {last - k for k in sv})
            out[rep] = _apply_block_exact(op, rep, U, V, live)
        else:
            out[rep] = _apply_block_float(op, rep, U, V)
    return FourierData(u.group, u.xi_max, out, u.exact)


def apply_at(op: OperatorSpec, u: FourierData, slot: Slot):
    """(P u)(slot) computed directly from the slot formula."""
    partner, ph = conjugate_slot(slot)
    us, up = u.value(slot), u.value(partner)
    if u.exact:
        lam_s = lam(op.vf, slot)
        out = ZERO
        if us:
            if isinstance(lam_s, LinearCF):
                raise CFExactnessError("exact apply needs an exact lam")
            out = ExactComplex(-op.q.re, lam_s - op.q.im) * us
        return out - op.p * up.conjugate() * ph
    lam_s = float(lam(op.vf, slot))
    return (1j * lam_s - complex(op.q)) * us - complex(op.p) * ph * np.conj(up)


# -- orbits ------------------------------------------------------------------------

PAIRED = "paired"
FIXED = "fixed"


@dataclass(frozen=True)
class SlotOrbit:
    kind: str
    slot: Slot
    partner: Slot
    phase: int
    lam: object

    @property
    def slots(self) -> tuple[Slot, ...]:
        return (self.slot,) if self.kind == FIXED else (self.slot, self.partner)


def orbit_of(vf: VectorFieldSpec, slot: Slot) -> SlotOrbit:
    """The orbit containing ``slot``, keyed by its primary member."""
    partner, ph = conjugate_slot(slot)
    o = slot.orientation
    if o == 0:
        return SlotOrbit(FIXED, slot, slot, 1, lam(vf, slot))
    if o < 0:
        slot, partner = partner, slot
    return SlotOrbit(PAIRED, slot, partner, ph, lam(vf, slot))


def slot_orbits(group: GroupSpec, vf: VectorFieldSpec, xi_max) -> list[SlotOrbit]:
    """Partition of all slots up to xi_max under conjugation, primary first."""
    out = []
    for rep in enumerate_reps(group, xi_max):
        for slot in slots_of(rep):
            if slot.orientation >= 0:
                out.append(orbit_of(vf, slot))
    return out


@dataclass(frozen=True)
class OrbitSystem:
    """Paired: complex matrix acting on (u(s), conj(u(s'))) with rhs
    (f(s), conj(f(s'))). Fixed: real matrix acting on (Re u, Im u) with rhs
    (Re f, Im f)."""

    kind: str
    matrix: tuple
    determinant: object
    inverse: tuple | None

    @property
    def singular(self) -> bool:
        return self.inverse is None

    def rhs(self, f_slot, f_partner=None) -> tuple:
        if self.kind == PAIRED:
            return (f_slot, f_partner.conjugate())
        return (f_slot.re, f_slot.im)


def _inv2(m, det):
    (a, b), (c, d) = m
    return ((d / det, -b / det), (-c / det, a / det))


def orbit_system(op: OperatorSpec, orbit: SlotOrbit) -> OrbitSystem:
    lam_s = orbit.lam
    if isinstance(lam_s, LinearCF):
        raise CFExactnessError("orbit system needs an exact lam")
    q, p = op.q, op.p
    if orbit.kind == PAIRED:
        ph = orbit.phase
        m = (
            (ExactComplex(-q.re, lam_s - q.im), -p * ph),
            (-p.conjugate() * ph, ExactComplex(-q.re, lam_s + q.im)),
        )
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        return OrbitSystem(PAIRED, m, det, _inv2(m, det) if det else None)
    a, b, c, d = q.re, q.im, p.re, p.im
    m = ((-a - c, b - d), (-b - d, c - a))
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return OrbitSystem(FIXED, m, det, _inv2(m, det) if det else None)
