"""Explicit singular solutions and non-solvability obstructions.

Each generator returns Fourier data together with what it takes to check it:
kernel elements u with P u = 0 that do not decay, pairs (f, u) with f smooth
and u not, and right-hand sides f whose solutions are forced to grow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classify import (
    DeltaZeros,
    NoResonantSequence,
    ResonantTerm,
    ZeroRow,
    check_condition1,
    check_condition2,
    find_delta_zeros,
    find_resonant_sequence,
)
from .coeffs import FourierData, WitnessFamily, plancherel_norm_sq
from .dual import (
    GroupSpec,
    Slot,
    conjugate_slot,
    lam_key,
    slot_to_json,
)
from .exact import ExactComplex, ExactReal, LinearCF
from .operator import OperatorSpec, apply, delta_key, orbit_of, orbit_system

I = ExactComplex(0, 1)


class NoZeroFamily(ValueError):
    """The operator has no infinite family of Delta = 0 slots."""


class SelfDualObstruction(ValueError):
    """The construction needs slots in non-self-dual representations."""


def growth_constant(op: OperatorSpec) -> float:
    """C in the distribution growth bound |u| <= C <xi>."""
    return max(1 + abs(complex(op.q)), abs(complex(op.p)))


def _lam_value(op: OperatorSpec, slot: Slot) -> ExactReal:
    return lam_key(op.vf, slot.rep.taus, slot.twice_ms)


# -- kernel ------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelElement:
    u: FourierData
    witness: WitnessFamily
    family: ZeroRow
    floor: float

    def verify(self, op: OperatorSpec) -> bool:
        """P u = 0 on every slot of the truncation (exactly)."""
        return not plancherel_norm_sq(apply(op, self.u))


def _pick_row(zeros: DeltaZeros) -> ZeroRow:
    for row in zeros.rows:
        sgn = 0
        for v in tuple(row.taus) + tuple(row.twice_ms):
            if v:
                sgn = 1 if v > 0 else -1
                break
        if sgn >= 0:
            return row
    return zeros.rows[0]


def singular_kernel(op: OperatorSpec, xi_max) -> KernelElement:
    """A non-smooth element of the kernel of P carried by a Delta = 0 family.

    On each representation of the family the column n = -l is used. The
    primary slot of every orbit gets i lam - conj(q) and its conjugate slot
    gets p times the conjugation phase, so |u| = |p| along the witness slots.
    """
    zeros = find_delta_zeros(op, xi_max)
    if not zeros.infinite or not zeros.rows:
        raise NoZeroFamily("no infinite family of Delta = 0 slots")
    row = _pick_row(zeros)
    qbar = op.q.conjugate()
    values: dict[Slot, ExactComplex] = {}
    witness = []
    seen = set()
    for slot in row.slots(xi_max):
        if any(n != -e for n, e in zip(slot.twice_ns, slot.rep.twice_ells)):
            continue
        orbit = orbit_of(op.vf, slot)
        if orbit.kind != "paired" or orbit.slot in seen:
            continue
        seen.add(orbit.slot)
        lam_s = orbit.lam
        values[orbit.slot] = ExactComplex(-qbar.re, lam_s - qbar.im)
        values[orbit.partner] = op.p * orbit.phase
        witness.append(orbit.partner)
    if len(witness) < 2:
        raise NoZeroFamily("the zero family has too few paired slots below xi_max")
    u = FourierData.from_slots(op.group, xi_max, values, exact=True)
    fam = WitnessFamily(
        tuple(witness),
        f"conjugate slots of the Delta = 0 row {row.to_json()}",
    )
    return KernelElement(u, fam, row, abs(complex(op.p)))


# -- GH counterexample ------------------------------------------------------------

CASE_I = "I"
CASE_II = "II"
CASE_III = "III"
PU_EQ_F = "Pu=f"
PU_EQ_IF = "Pu=i*f"


@dataclass(frozen=True)
class GHCounterexample:
    f: FourierData
    u: FourierData
    relation: str
    case: str
    terms: tuple
    slots: tuple
    flipped: tuple
    witness: WitnessFamily
    verification: tuple = field(default=())

    @property
    def verified(self) -> bool:
        return bool(self.verification) and all(v["ok"] for v in self.verification)


def _pair_values(op, case, lam_s, lam_b, ph):
    """(u(s), u(s'), f(s), f(s')) for exact lam at s and s' = conjugate."""
    q, p = op.q, op.p
    qbar = q.conjugate()

    def d(lv):
        return ExactComplex(-lv * lv + op.K, -2 * lv * q.re)

    if case == CASE_III:
        us = ExactComplex(-lam_s, 0) - I * p * 2
        ub = (ExactComplex(-lam_b, 0) - I * p * 2) * ph
    else:
        us = ExactComplex(-qbar.re, lam_s - qbar.im) + p
        ub = (ExactComplex(-qbar.re, lam_b - qbar.im) + p) * ph
    return us, ub, d(lam_s), d(lam_b) * ph


def _case(op: OperatorSpec) -> str:
    diff = op.p - op.q.conjugate()
    if diff.re:
        return CASE_I
    if diff.im:
        return CASE_II
    return CASE_III


def _check_group(group: GroupSpec) -> None:
    if group.torus_dim == 0:
        raise SelfDualObstruction("every representation of SU(2)^k is self-dual")


def _sequence(op: OperatorSpec, xi_max) -> list[ResonantTerm]:
    if check_condition1(op) or check_condition2(op):
        raise NoResonantSequence("condition 1 or 2 holds, so |Delta| is bounded below")
    _check_group(op.group)
    terms = find_resonant_sequence(op)
    limit = Fraction(xi_max) ** 2
    terms = [t for t in terms if t.weight_sq <= limit]
    if not terms:
        raise NoResonantSequence(f"no resonant slot with <xi> <= {xi_max}")
    used, out = set(), []
    for t in terms:
        if t.slot.orientation == 0:
            raise SelfDualObstruction(f"resonant slot {t.slot} is its own conjugate")
        pair = {t.slot, conjugate_slot(t.slot)[0]}
        if pair & used:
            continue
        used |= pair
        out.append(t)
    return out


def _lam_sign(lv) -> int:
    enc = lv.enclosure() if isinstance(lv, LinearCF) else None
    if enc is not None:
        return 1 if enc.lo > 0 else -1
    return 1 if lv > 0 else -1


def _build_pair(op, case, slots, lam_of, exact):
    u_vals, f_vals = {}, {}
    for s in slots:
        partner, ph = conjugate_slot(s)
        ls = lam_of(s)
        us, ub, fs, fb = _pair_values(op, case, ls, -ls, ph)
        u_vals[s], u_vals[partner] = us, ub
        f_vals[s], f_vals[partner] = fs, fb
    if not exact:
        u_vals = {k: complex(v) for k, v in u_vals.items()}
        f_vals = {k: complex(v) for k, v in f_vals.items()}
    return u_vals, f_vals


def gh_counterexample(op: OperatorSpec, xi_max) -> GHCounterexample:
    """Smooth f and non-smooth u with P u = f (or P u = i f when p = conj(q)).

    The family is the certified near-resonant sequence. f equals Delta there,
    which decays faster than any power of <xi>, while u stays bounded below.
    With continued-fraction data the returned f and u are float; the relation
    is checked exactly at three distinct rational stand-ins for alpha, which
    proves it because both sides are polynomials of degree at most 2 in alpha.
    """
    terms = _sequence(op, xi_max)
    case = _case(op)
    diff = op.p - op.q.conjugate()
    slots, flipped = [], []
    for t in terms:
        s = t.slot
        flip = False
        if case == CASE_II:
            want = 1 if diff.im > 0 else -1
            if _lam_sign(t.lam) != want:
                s = conjugate_slot(s)[0]
                flip = True
        slots.append(s)
        flipped.append(flip)

    def lam_float(s):
        return ExactReal(Fraction(float(_lam_value(op, s))))

    exact = not op.has_cf
    if exact:
        u_vals, f_vals = _build_pair(op, case, slots, lambda s: _lam_value(op, s), True)
    else:
        u_vals, f_vals = _build_pair(op, case, slots, lam_float, False)
    u = FourierData.from_slots(op.group, xi_max, u_vals, exact=exact)
    f = FourierData.from_slots(op.group, xi_max, f_vals, exact=exact)
    relation = PU_EQ_IF if case == CASE_III else PU_EQ_F
    transcript = _verify_pair(op, case, slots, xi_max)
    wit = WitnessFamily(tuple(slots), "resonant slots, |u| >= |Re(p - conj q)| or |p| there")
    return GHCounterexample(
        f, u, relation, case, tuple(terms), tuple(slots), tuple(flipped), wit, tuple(transcript)
    )


def _realizations(op: OperatorSpec) -> list[int]:
    if not op.has_cf:
        return [0]
    return [0, 1, 2]


def _verify_pair(op: OperatorSpec, case: str, slots, xi_max) -> list[dict]:
    out = []
    for back in _realizations(op):
        op_r = op.realize(back)
        u_vals, f_vals = _build_pair(op_r, case, slots, lambda s: _lam_value(op_r, s), True)
        u = FourierData.from_slots(op.group, xi_max, u_vals, exact=True)
        f = FourierData.from_slots(op.group, xi_max, f_vals, exact=True)
        if case == CASE_III:
            f = f.scale(I)
        ok = not plancherel_norm_sq(apply(op_r, u) - f)
        out.append({"realization": back, "alpha": _alpha_str(op_r, op), "ok": ok})
    return out


def _alpha_str(op_r: OperatorSpec, op: OperatorSpec) -> list[str]:
    coeffs = tuple(op.vf.torus_coeffs) + tuple(op.vf.su2_coeffs)
    real = tuple(op_r.vf.torus_coeffs) + tuple(op_r.vf.su2_coeffs)
    return [str(r) for c, r in zip(coeffs, real) if not isinstance(c, ExactReal)]


# -- GS obstruction ---------------------------------------------------------------


@dataclass(frozen=True)
class ForcedGrowth:
    k: int
    slot: Slot
    weight_sq: Fraction
    forced_lower: Fraction
    exceeds: bool
    orbit_checks: tuple

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "slot": slot_to_json(self.slot),
            "weight_sq": str(self.weight_sq),
            "forced_abs_u_lower": float(self.forced_lower),
            "weight_pow_k": float(self.weight_sq) ** (self.k / 2),
            "exceeds": self.exceeds,
            "orbit_checks": list(self.orbit_checks),
        }


@dataclass(frozen=True)
class GSObstruction:
    f: FourierData
    schedule: tuple

    @property
    def verified(self) -> bool:
        return all(all(c["ok"] for c in g.orbit_checks) for g in self.schedule)


def gs_obstruction(op: OperatorSpec, xi_max) -> GSObstruction:
    """Admissible f with f(s_k') = phase / conj(p) on the conjugates of the
    near-resonant slots s_k. Any solution has u(s_k) = 1 / Delta(s_k), so
    |u(s_k)| = 1/|Delta(s_k)| >= <xi_k>^k / C."""
    terms = _sequence(op, xi_max)
    pbar_inv = op.p.conjugate().inverse()
    vals = {}
    schedule = []
    for t in terms:
        partner, ph = conjugate_slot(t.slot)
        vals[partner] = pbar_inv * ph
        forced = 1 / t.delta_upper
        exceeds = forced * forced > t.weight_sq**t.k
        checks = []
        for back in _realizations(op):
            op_r = op.realize(back)
            orbit = orbit_of(op_r.vf, t.slot)
            sysm = orbit_system(op_r, orbit)
            fs = ExactComplex(0, 0)
            fp = pbar_inv * ph
            if orbit.slot == t.slot:
                rhs = (fs, fp.conjugate())
                u_s = sysm.inverse[0][0] * rhs[0] + sysm.inverse[0][1] * rhs[1]
            else:
                rhs = (fp, fs)
                v = sysm.inverse[1][0] * rhs[0] + sysm.inverse[1][1] * rhs[1]
                u_s = v.conjugate()
            d_r = delta_key(op_r, t.slot.rep.taus, t.slot.twice_ms).value
            checks.append({"realization": back, "ok": u_s * d_r == ExactComplex(1, 0)})
        schedule.append(ForcedGrowth(t.k, t.slot, t.weight_sq, forced, exceeds, tuple(checks)))
    f = FourierData.from_slots(op.group, xi_max, vals, exact=True)
    return GSObstruction(f, tuple(schedule))
