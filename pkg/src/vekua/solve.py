"""Admissibility checks and Fourier-side solutions of P u = f.

Where Delta(s) != 0 every slot, paired or fixed, is solved by

    Delta(s) u(s) = (i lam - conj(q)) f(s) + p ph conj(f(s')).

On a paired orbit with Delta = 0 the primary slot gets 0 and its partner
gets -ph conj(f(s)) / conj(p); a fixed slot with Delta = 0 gets -f / (2q).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffs import FourierData, matrix_is_zero, plancherel_norm, plancherel_norm_sq, zero_matrix
from .dual import RepIndex, Slot, conjugate_rep, lam_key, rep_dimension, row_labels, row_parity, slot_to_json
from .exact import ZERO, CFExactnessError, ExactComplex, ExactReal
from .operator import OperatorSpec, apply, delta_key

FLOAT_DELTA_FLOOR = 1e3 * np.finfo(float).eps


class NotAdmissible(ValueError):
    def __init__(self, report: AdmissibilityReport):
        super().__init__(f"right-hand side violates compatibility at {len(report.violations)} slot(s)")
        self.report = report


class IllConditioned(ValueError):
    """Float solve met |Delta| below the refusal threshold."""


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    violations: tuple = ()
    undecided: tuple = ()

    def to_json(self) -> dict:
        out = {"admissible": self.admissible, "violations": []}
        for slot, value in self.violations:
            z = complex(value)
            out["violations"].append({"slot": slot_to_json(slot), "residual": [z.real, z.imag]})
        if self.undecided:
            out["undecided"] = [slot_to_json(s) for s in self.undecided]
        return out


def _orientation_matrix(rep: RepIndex) -> np.ndarray:
    """Orientation (+1/-1/0) of every slot of the representation."""
    for t in rep.taus:
        if t:
            d = rep_dimension(rep)
            return np.full((d, d), 1 if t > 0 else -1, dtype=np.int64)
    labels = row_labels(rep)

    def sgn(ms):
        for m in ms:
            if m:
                return 1 if m > 0 else -1
        return 0

    rs = np.array([sgn(ms) for ms in labels], dtype=np.int64)
    out = np.where(rs[:, None] != 0, rs[:, None], rs[None, :])
    return out


def _row_deltas(op: OperatorSpec, rep: RepIndex) -> list:
    return [delta_key(op, rep.taus, ms) for ms in row_labels(rep)]


def _touched_reps(f: FourierData) -> set[RepIndex]:
    reps = {r for r in f.entries if f.support(r)}
    return reps | {conjugate_rep(r) for r in reps}


def _live(f: FourierData, rep: RepIndex) -> list[int]:
    """Flat positions (i, j) of rep where f or f at the conjugate slot is nonzero."""
    d = len(row_labels(rep))
    last = d * d - 1
    return sorted(set(f.support(rep)) | {last - k for k in f.support(conjugate_rep(rep))})


def _blocks(f: FourierData, rep: RepIndex):
    F = f.matrix(rep)
    G = f.matrix(conjugate_rep(rep))[::-1, ::-1]
    sig = row_parity(rep)
    return F, G, np.outer(sig, sig)


def _compat(op: OperatorSpec, lam_i, fs, fp, ph, exact: bool):
    """(i lam - conj(q)) f(s) + p ph conj(f(s'))."""
    if exact:
        a = ExactComplex(-op.q.re, lam_i + op.q.im) * fs if fs else ZERO
        b = op.p * fp.conjugate() * ph if fp else ZERO
        return a + b
    return (1j * float(lam_i) - np.conj(complex(op.q))) * fs + complex(op.p) * ph * np.conj(fp)


def check_admissible(op: OperatorSpec, f: FourierData, rtol: float = 1e-12) -> AdmissibilityReport:
    """Compatibility at every Delta = 0 slot touched by f."""
    violations, undecided = [], []
    scale = 1.0 if f.exact else max(plancherel_norm(f), 1.0)
    for rep in sorted(_touched_reps(f)):
        labels = row_labels(rep)
        d = len(labels)
        F, G, ph = _blocks(f, rep)
        status = {}
        for k in _live(f, rep):
            i, j = divmod(k, d)
            if i not in status:
                status[i] = delta_key(op, rep.taus, labels[i]).is_zero()
            z = status[i]
            if z is None:
                undecided.append(Slot(rep, labels[i], labels[j]))
            elif z:
                lam_i = lam_key(op.vf, rep.taus, labels[i])
                c = _compat(op, lam_i, F[i, j], G[i, j], int(ph[i, j]), f.exact)
                bad = bool(c) if f.exact else abs(c) > rtol * scale
                if bad:
                    violations.append((Slot(rep, labels[i], labels[j]), c))
    return AdmissibilityReport(not violations, tuple(violations), tuple(undecided))


def _solve_block_exact(op: OperatorSpec, rep: RepIndex, F, G, ph, live) -> np.ndarray:
    d = F.shape[0]
    labels = row_labels(rep)
    orient = _orientation_matrix(rep)
    out = zero_matrix(d, exact=True)
    pbar = op.p.conjugate()
    two_q = op.q * 2
    rows = {}
    for k in live:
        i, j = divmod(k, d)
        if i not in rows:
            dv = delta_key(op, rep.taus, labels[i])
            lam_i = lam_key(op.vf, rep.taus, labels[i])
            rows[i] = (lam_i, dv.value.inverse() if dv.value else None)
        lam_i, inv = rows[i]
        fs, fp = F[i, j], G[i, j]
        if inv is not None:
            out[i, j] = _compat(op, lam_i, fs, fp, int(ph[i, j]), True) * inv
            continue
        o = orient[i, j]
        if o == 0:
            if fs:
                out[i, j] = -(fs / two_q)
        elif o < 0 and fp:
            out[i, j] = -(fp.conjugate() / pbar) * int(ph[i, j])
    return out


def _solve_block_float(op: OperatorSpec, rep: RepIndex, F, G, ph) -> np.ndarray:
    labels = row_labels(rep)
    deltas = _row_deltas(op, rep)
    d = F.shape[0]
    q, p = complex(op.q), complex(op.p)
    lams = np.zeros(d)
    dvals = np.zeros(d, dtype=complex)
    zero = np.zeros(d, dtype=bool)
    for i, dv in enumerate(deltas):
        if not (F[i].any() or G[i].any()):
            continue
        z = dv.is_zero()
        if z is None:
            raise CFExactnessError(f"cannot decide Delta = 0 at {rep} row {labels[i]}")
        zero[i] = z
        if not z:
            dvals[i] = complex(dv)
            if abs(dvals[i]) < FLOAT_DELTA_FLOOR:
                raise IllConditioned(f"|Delta| = {abs(dvals[i]):.3e} at {rep} row {labels[i]}")
        lv = lam_key(op.vf, rep.taus, labels[i])
        lams[i] = float(lv)
    num = (1j * lams - np.conj(q))[:, None] * F + p * ph * np.conj(G)
    safe = np.where(zero, 1.0, dvals)
    safe = np.where(safe == 0, 1.0, safe)
    out = num / safe[:, None]
    if zero.any():
        orient = _orientation_matrix(rep)
        for i in np.flatnonzero(zero):
            out[i] = np.where(
                orient[i] == 0,
                -F[i] / (2 * q),
                np.where(orient[i] < 0, -ph[i] * np.conj(G[i]) / np.conj(p), 0.0),
            )
    return out


def solve(op: OperatorSpec, f: FourierData, mode: str | None = None) -> FourierData:
    """Canonical solution u of P u = f on the truncation of f.

    ``mode`` is "exact" or "float"; by default it follows the data.
    """
    if f.group != op.group:
        raise ValueError("data and operator live on different groups")
    if mode is None:
        mode = "exact" if f.exact else "float"
    if mode == "exact":
        if not f.exact:
            raise ValueError("exact solve needs exact right-hand side data")
        if op.has_cf:
            raise CFExactnessError("exact solve is unavailable with continued-fraction coefficients")
    elif f.exact:
        f = f.to_float()
    report = check_admissible(op, f)
    if report.undecided:
        raise CFExactnessError(f"{len(report.undecided)} slot(s) with undecidable Delta")
    if not report.admissible:
        raise NotAdmissible(report)
    out = {}
    for rep in _touched_reps(f):
        F, G, ph = _blocks(f, rep)
        if f.exact:
            U = _solve_block_exact(op, rep, F, G, ph, _live(f, rep))
        else:
            U = _solve_block_float(op, rep, F, G, ph)
        if not matrix_is_zero(U):
            out[rep] = U
    return FourierData(f.group, f.xi_max, out, f.exact)


def residual(op: OperatorSpec, u: FourierData, f: FourierData) -> float:
    """Plancherel norm of P u - f (exactly 0.0 when they agree in exact mode)."""
    return plancherel_norm(apply(op, u) - f)


def residual_sq_exact(op: OperatorSpec, u: FourierData, f: FourierData) -> ExactReal:
    return plancherel_norm_sq(apply(op, u) - f)


def make_admissible(op: OperatorSpec, f: FourierData) -> FourierData:
    """Replace f on every Delta = 0 orbit by P applied to f's values there.

    The result lies in the range of P on those orbits, hence is admissible,
    and agrees with f wherever Delta != 0.
    """
    zero_slots = {}
    for rep in _touched_reps(f):
        labels = row_labels(rep)
        d = len(labels)
        status = {}
        for k in _live(f, rep):
            i, j = divmod(k, d)
            if i not in status:
                status[i] = delta_key(op, rep.taus, labels[i]).is_zero()
            if status[i]:
                s = Slot(rep, labels[i], labels[j])
                zero_slots[s] = f.value(s)
    if not zero_slots:
        return f
    v = FourierData.from_slots(f.group, f.xi_max, zero_slots, exact=f.exact)
    pv = apply(op, v)
    mats = {r: np.array(m, copy=True) for r, m in f.entries.items()}
    for s in zero_slots:
        m = mats.get(s.rep)
        if m is None:
            m = mats[s.rep] = zero_matrix(len(row_labels(s.rep)), f.exact)
        m[s.row, s.col] = pv.value(s)
    return FourierData(f.group, f.xi_max, mats, f.exact)
