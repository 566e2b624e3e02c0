"""Global hypoellipticity (GH) and global solvability (GS) verdicts.

The three sufficient conditions are

    1. |p| > |q|
    2. |p| < |q| and Re q != 0
    3. |lam^2 - K| >= <xi>^-M for large <xi>, with K = |q|^2 - |p|^2

In GH mode condition 3 may fail on finitely many slots only; in GS mode it is
only required where lam^2 != K. Certificates for condition 3 come from exact
lattice arguments when every coefficient is exact, and from a scan (labelled
Empirical, never certifying) when a coefficient is a continued fraction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .dual import (
    GroupSpec,
    RepIndex,
    Slot,
    key_array,
    key_weight_squared,
    lam_key,
    slot_to_json,
    weight_squared,
)
from .exact import CFReal, ExactReal, LinearCF, MixedRadicandError
from .operator import OperatorSpec

GH = "GH"
GS = "GS"

YES = "Yes"
NO = "No"
INCONCLUSIVE = "Inconclusive"

LATTICE_GAP = "LatticeGap"
SURD_GAP = "SurdGap"
EMPIRICAL = "Empirical"
ZERO_FOUND = "ZeroFound"


class NoResonantSequence(ValueError):
    """No certified near-resonant sequence is available for this operator."""


# -- conditions 1 and 2 --------------------------------------------------------


def check_condition1(op: OperatorSpec) -> bool:
    return op.p_abs2 > op.q_abs2


def check_condition2(op: OperatorSpec) -> bool:
    return op.p_abs2 < op.q_abs2 and bool(op.q.re)


# -- integer linear forms --------------------------------------------------------


def _positions(op: OperatorSpec) -> list[tuple[object, Fraction]]:
    """(coefficient, multiplier) per integer unknown x = (taus, twice_ms)."""
    out = [(c, Fraction(1)) for c in op.vf.torus_coeffs]
    out += [(a, Fraction(1, 2)) for a in op.vf.su2_coeffs]
    return out


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


def integer_solvable(rows: list[list[int]], rhs: list[int]) -> tuple[bool, int]:
    """Whether A x = b has an integer solution, and rank(A).

    Uses the Smith normal form S = U A V: the system becomes S y = U b.
    """
    live = [(r, b) for r, b in zip(rows, rhs) if any(r)]
    if any(b for r, b in zip(rows, rhs) if not any(r)):
        return False, len(live) and Matrix([r for r, _ in live]).rank()
    if not live:
        return True, 0
    A = Matrix([r for r, _ in live])
    b = Matrix([bb for _, bb in live])
    S, U, _ = smith_normal_decomp(A, domain=ZZ)
    c = U * b
    rank = 0
    for i in range(S.rows):
        s = S[i, i] if i < S.cols else 0
        if s:
            rank += 1
            if c[i] % s:
                return False, rank
        elif c[i]:
            return False, rank
    return True, rank


def _linear_form_rows(coeffs: list[ExactReal], target: ExactReal):
    """Integer rows for sum coeffs_i x_i = target over Q(sqrt D); None if the
    target cannot lie in the span (radicand mismatch)."""
    rad = 1
    for c in coeffs:
        if c.surd:
            rad = c.radicand
    if target.surd and rad not in (1, target.radicand):
        return None
    if target.surd and all(not c.surd for c in coeffs):
        return None
    rows, rhs = [], []
    for part in ("rat", "surd"):
        vals = [getattr(c, part) for c in coeffs] + [getattr(target, part)]
        den = _lcm(v.denominator for v in vals)
        ints = [int(v * den) for v in vals]
        rows.append(ints[:-1])
        rhs.append(ints[-1])
    return rows, rhs


def _targets(op: OperatorSpec, with_im: bool) -> list[ExactReal]:
    """lam values where Delta vanishes (with_im) or lam^2 = K (not with_im)."""
    K = op.K
    if with_im and op.q.re:
        return [ExactReal(0)] if not K else []
    if K.sign() < 0:
        return []
    if not K:
        return [ExactReal(0)]
    s = K.sqrt_exact()
    if s is None:
        return []
    return [s, -s]


def _solution_exists(op: OperatorSpec, targets: list[ExactReal]) -> tuple[bool, bool]:
    """(some zero exists, zeros recur infinitely often) using exact positions only."""
    pos = _positions(op)
    exact_idx = [i for i, (c, _) in enumerate(pos) if isinstance(c, ExactReal)]
    coeffs = [pos[i][0] * pos[i][1] for i in exact_idx]
    k = op.group.su2_count
    exists = infinite = False
    for t in targets:
        if not coeffs:
            ok, rank = (not t), 0
        else:
            sys_ = _linear_form_rows(coeffs, t)
            if sys_ is None:
                continue
            ok, rank = integer_solvable(*sys_)
        if ok:
            exists = True
            if k >= 1 or rank < len(coeffs):
                infinite = True
    return exists, infinite


def _cf_split(lin: LinearCF) -> tuple[ExactReal, dict]:
    mults: dict = {}
    for alpha, m in lin.terms:
        mults[alpha] = mults.get(alpha, Fraction(0)) + m
    return lin.exact, {a: m for a, m in mults.items() if m}


def _lam_hits(lam_val, targets: list[ExactReal]) -> bool | None:
    """Whether lam equals a target: True/False, or None if undecidable."""
    if not targets:
        return False
    if isinstance(lam_val, ExactReal):
        return lam_val in targets
    exact, mults = _cf_split(lam_val)
    if not mults:
        return exact in targets
    # a single continued fraction is read as an irrational number
    if len(mults) == 1 and exact.is_rational and all(t.is_rational for t in targets):
        return False
    enc = lam_val.enclosure()
    for t in targets:
        te = t.enclosure()
        if enc.lo <= te.hi and te.lo <= enc.hi:
            return None
    return False


# -- zero sets ---------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroRow:
    taus: tuple
    twice_ms: tuple

    @property
    def weight_sq(self) -> Fraction:
        return key_weight_squared(self.taus, self.twice_ms)

    def slots(self, xi_max) -> Iterator[Slot]:
        """Every slot up to xi_max whose row label is this one."""
        limit = Fraction(xi_max) ** 2
        base = 1 + sum(t * t for t in self.taus)

        def spins(j, budget):
            if j == len(self.twice_ms):
                yield ()
                return
            e = abs(self.twice_ms[j])
            while Fraction(e * (e + 2), 4) <= budget:
                for rest in spins(j + 1, budget - Fraction(e * (e + 2), 4)):
                    yield (e,) + rest
                e += 2

        for ells in spins(0, limit - base):
            rep = RepIndex(self.taus, ells)
            cols = itertools.product(*[range(-e, e + 1, 2) for e in ells])
            for ns in cols:
                yield Slot(rep, self.twice_ms, ns)

    def to_json(self) -> dict:
        return {"taus": list(self.taus), "twice_ms": list(self.twice_ms)}


@dataclass(frozen=True)
class DeltaZeros:
    rows: tuple
    infinite: bool
    decided: bool
    undecided: tuple = ()
    xi_max: object = None

    @property
    def family(self) -> ZeroRow | None:
        return self.rows[0] if self.rows else None

    def slots(self, xi_max=None) -> Iterator[Slot]:
        for row in self.rows:
            yield from row.slots(self.xi_max if xi_max is None else xi_max)


class _KeyScan:
    """Row labels up to xi_max as integer arrays, with the exact part of lam
    split off from continued-fraction contributions."""

    def __init__(self, op: OperatorSpec, xi_max):
        self.op = op
        self.X, self.w4 = key_array(op.group, xi_max)
        pos = _positions(op)
        self.exact_cols = [i for i, (c, _) in enumerate(pos) if isinstance(c, ExactReal)]
        self.coeffs = [pos[i][0] * pos[i][1] for i in self.exact_cols]
        groups: dict = {}
        for i, (c, m) in enumerate(pos):
            if isinstance(c, CFReal):
                groups.setdefault(c, []).append((i, int(2 * m)))
        self.cf_groups = groups
        n = len(self.X)
        self.cf_live = np.zeros(n, dtype=bool)
        for cols in groups.values():
            comb = sum(w * self.X[:, i] for i, w in cols)
            self.cf_live |= comb != 0

    def label(self, i: int) -> ZeroRow:
        row = self.X[i].tolist()
        d = self.op.group.torus_dim
        return ZeroRow(tuple(row[:d]), tuple(row[d:]))

    def exact_hits(self, t: ExactReal) -> np.ndarray:
        """Rows whose exact part of lam equals t."""
        n = len(self.X)
        if not self.coeffs:
            return np.full(n, not t)
        sys_ = _linear_form_rows(self.coeffs, t)
        if sys_ is None:
            return np.zeros(n, dtype=bool)
        sub = self.X[:, self.exact_cols]
        hit = np.ones(n, dtype=bool)
        for row, rhs in zip(*sys_):
            hit &= sub @ np.array(row, dtype=np.int64) == rhs
        return hit

    def lam_float(self) -> tuple[np.ndarray, np.ndarray]:
        """Float lam and a bound on its error from the continued-fraction enclosures."""
        lam_f = np.zeros(len(self.X))
        err = np.zeros(len(self.X))
        for j, c in zip(self.exact_cols, self.coeffs):
            lam_f += float(c) * self.X[:, j]
        for alpha, cols in self.cf_groups.items():
            comb = sum(w * self.X[:, i] for i, w in cols) / 2.0
            lam_f += float(alpha.realize(0)) * comb
            err += float(alpha.enclosure().width) * np.abs(comb)
        return lam_f, err


def _scan_zero_rows(op: OperatorSpec, xi_max, targets, scan: _KeyScan | None = None):
    rows, undecided = [], []
    if not targets:
        return rows, undecided
    scan = scan or _KeyScan(op, xi_max)
    hit = np.zeros(len(scan.X), dtype=bool)
    for t in targets:
        hit |= scan.exact_hits(t)
    hit &= ~scan.cf_live
    for i in np.flatnonzero(hit):
        rows.append(scan.label(i))
    # rows with a live continued-fraction part: decide one by one, unless a
    # single irrational coefficient against rational targets settles them all
    exact_rational = all(c.is_rational for c in scan.coeffs)
    if len(scan.cf_groups) == 1 and exact_rational and all(t.is_rational for t in targets):
        return rows, undecided
    for i in np.flatnonzero(scan.cf_live):
        zr = scan.label(i)
        h = _lam_hits(lam_key(op.vf, zr.taus, zr.twice_ms), targets)
        if h:
            rows.append(zr)
        elif h is None:
            undecided.append(zr)
    return rows, undecided


def find_delta_zeros(op: OperatorSpec, xi_max) -> DeltaZeros:
    """Rows (taus, twice_ms) with Delta = 0 up to xi_max.

    ``infinite`` is set when the zero set is provably infinite: on groups with
    an SU(2) factor any zero row recurs in every representation carrying it,
    and on a torus the integer kernel of the linear form must be nontrivial.
    """
    targets = _targets(op, with_im=True)
    rows, undecided = _scan_zero_rows(op, xi_max, targets)
    _, infinite = _solution_exists(op, targets)
    return DeltaZeros(tuple(rows), infinite, not undecided, tuple(undecided), xi_max)


# -- condition 3 ---------------------------------------------------------------------


@dataclass(frozen=True)
class DiophantineCertificate:
    kind: str
    mode: str
    gap: object = None
    exponent: float | None = None
    constant: Fraction | None = None
    min_margin: float | None = None
    xi_max: object = None
    zero: ZeroRow | None = None
    infinite: bool = False
    details: dict = field(default_factory=dict)

    @property
    def certifying(self) -> bool:
        return self.kind in (LATTICE_GAP, SURD_GAP)

    @property
    def holds(self) -> bool | None:
        if self.certifying:
            return True
        if self.kind == ZERO_FOUND:
            return False
        return None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "mode": self.mode, "certifying": self.certifying}
        if self.gap is not None:
            out["gap"] = str(self.gap)
        if self.exponent is not None:
            out["exponent"] = self.exponent
        if self.constant is not None:
            out["constant"] = str(self.constant)
        if self.min_margin is not None:
            out["min_margin"] = self.min_margin
        if self.xi_max is not None:
            out["xi_max"] = str(self.xi_max)
        if self.zero is not None:
            out["zero"] = self.zero.to_json()
            out["infinite_family"] = self.infinite
        if self.details:
            out["details"] = {k: str(v) for k, v in self.details.items()}
        return out


def _rational_step(values: list[Fraction]) -> Fraction:
    """Generator h of the subgroup of Q spanned by the values."""
    nz = [v for v in values if v]
    if not nz:
        return Fraction(0)
    den = _lcm(v.denominator for v in nz)
    g = 0
    for v in nz:
        g = math.gcd(g, int(v * den))
    return Fraction(g, den)


def _lattice_min(h: Fraction, K: ExactReal):
    """Exact min over n >= 0 of |h^2 n^2 - K| restricted to nonzero values."""
    if K.sign() <= 0:
        cands = [0, 1]
    else:
        n0 = math.isqrt(max((K / (h * h)).floor(), 0))
        cands = sorted({0, max(n0 - 1, 0), n0, n0 + 1, n0 + 2})
    best = None
    for n in cands:
        v = abs(ExactReal(h * h * n * n) - K)
        if v and (best is None or v < best):
            best = v
    return best


def _empirical_margins(op: OperatorSpec, xi_max):
    """Scan |lam^2 - K| over row labels.

    Returns (weights^2, margins) for decided nonzero rows, the number of rows
    whose enclosure cannot separate the margin from 0, and the exact zero rows.
    """
    scan = _KeyScan(op, xi_max)
    targets = _targets(op, with_im=False)
    zero = np.zeros(len(scan.X), dtype=bool)
    for t in targets:
        zero |= scan.exact_hits(t)
    zero &= ~scan.cf_live
    lam_f, err = scan.lam_float()
    K = float(op.K)
    z = np.abs(lam_f * lam_f - K)
    slack = 2 * np.abs(lam_f) * err + err * err + 1e-12 * (1 + lam_f * lam_f + abs(K))
    undecided = scan.cf_live & (z <= slack)
    keep = ~zero & ~undecided
    zero_rows = [scan.label(i) for i in np.flatnonzero(zero)]
    return scan.w4[keep] / 4.0, z[keep], int(undecided.sum()), zero_rows


def empirical_exponent(weights_sq, margins) -> float:
    """Smallest M with margin >= <xi>^-M whenever <xi> >= M, over the scan.

    g(M) = max exponent over rows of weight >= M is non-increasing in M, so
    the answer is the first crossing of g(M) <= M.
    """
    w = np.sqrt(np.asarray(weights_sq, dtype=float))
    m = np.asarray(margins, dtype=float)
    ok = (w > 1) & (m > 0)
    w, m = w[ok], m[ok]
    if not len(w):
        return 0.0
    e = np.maximum(0.0, -np.log(m) / np.log(w))
    order = np.argsort(w, kind="stable")
    w, e = w[order], e[order]
    suffix = np.maximum.accumulate(e[::-1])[::-1]
    prev_w = 0.0
    for i in range(len(w)):
        # for M in (prev_w, w[i]] the rows with weight >= M are w[i:]
        if suffix[i] <= w[i]:
            return float(max(suffix[i], prev_w))
        prev_w = float(w[i])
    return prev_w


def check_condition3(op: OperatorSpec, xi_max, mode: str = GH) -> DiophantineCertificate:
    if mode not in (GH, GS):
        raise ValueError("mode must be GH or GS")
    K = op.K
    targets = _targets(op, with_im=False)
    if op.has_cf:
        w2s, margins, undecided, zero_rows = _empirical_margins(op, xi_max)
        _, infinite = _solution_exists(op, targets)
        if mode == GH and zero_rows and infinite:
            return DiophantineCertificate(
                ZERO_FOUND, mode, xi_max=xi_max, zero=zero_rows[0], infinite=True
            )
        exp = empirical_exponent(w2s, margins)
        mm = float(margins.min()) if len(margins) else None
        return DiophantineCertificate(
            EMPIRICAL,
            mode,
            exponent=exp,
            min_margin=mm,
            xi_max=xi_max,
            details={"scanned": len(margins), "undecided": undecided, "zeros": len(zero_rows)},
        )

    exists, infinite = _solution_exists(op, targets)
    if mode == GH and infinite:
        rows, _ = _scan_zero_rows(op, xi_max, targets)
        return DiophantineCertificate(
            ZERO_FOUND, mode, xi_max=xi_max, zero=rows[0] if rows else None, infinite=True
        )
    pos = _positions(op)
    coeffs = [c * m for c, m in pos]
    if all(c.is_rational for c in coeffs):
        h = _rational_step([c.rat for c in coeffs])
        gap = _lattice_min(h, K)
        kind = LATTICE_GAP if K.is_rational else SURD_GAP
        return DiophantineCertificate(
            kind, mode, gap=gap, exponent=0.0, xi_max=xi_max,
            details={"step": h, "zeros_exist": exists},
        )
    # lam in Q(sqrt D): norm argument
    e = _lcm(v.denominator for c in coeffs for v in (c.rat, c.surd))
    f = _lcm(v.denominator for v in (K.rat, K.surd))
    cprime = sum((abs(c.galois_conjugate()).enclosure().hi for c, _ in pos), Fraction(0))
    kprime = abs(K.galois_conjugate()).enclosure().hi
    constant = Fraction(1, (e * e * f) ** 2)
    exceptions = []
    s = K.galois_conjugate().sqrt_exact()
    if s is not None:
        for sign in (1, -1):
            lam_exc = (s * sign).galois_conjugate()
            try:
                z = lam_exc * lam_exc - K
            except MixedRadicandError:
                continue
            if z:
                exceptions.append(abs(z))
    return DiophantineCertificate(
        SURD_GAP,
        mode,
        gap=min(exceptions) if exceptions else None,
        exponent=2.0,
        constant=constant,
        xi_max=xi_max,
        details={"cprime": cprime, "kprime": kprime, "zeros_exist": exists},
    )


def surd_bound(cert: DiophantineCertificate, weight_sq: Fraction) -> Fraction:
    """Rational lower bound for nonzero |lam^2 - K| at weight^2 from a norm certificate."""
    if cert.kind == LATTICE_GAP or (cert.kind == SURD_GAP and cert.constant is None):
        return Fraction(0) if cert.gap is None else cert.gap.enclosure().lo
    c2 = cert.details["cprime"] ** 2
    base = cert.constant / (c2 * weight_sq + cert.details["kprime"])
    if cert.gap is not None:
        base = min(base, cert.gap.enclosure().lo)
    return base


# -- resonant sequences (continued-fraction data) -------------------------------


@dataclass(frozen=True)
class ResonantTerm:
    k: int
    convergent: Fraction
    slot: Slot
    lam: LinearCF
    weight_sq: Fraction
    delta_upper: Fraction
    delta_lower: Fraction
    bound_holds: bool


def resonance_constant(op: OperatorSpec) -> ExactReal:
    """C = 1 + 2|Re q| in |Delta| <= C <xi>^-k."""
    return 1 + 2 * abs(op.q.re)


def find_resonant_sequence(op: OperatorSpec) -> list[ResonantTerm]:
    """Slots with 0 < |Delta| <= C <xi_k>^-k built from the convergents of the
    single continued-fraction coefficient.

    Only the |p| = |q| regime (Delta close to 0 through lam close to 0) is
    supported; the k-th term uses the (k-1)-th convergent p/q and sets the
    continued-fraction index to u*q and a rational coefficient u/v's index to
    -v*p, so lam = u (alpha q - p).
    """
    if check_condition1(op) or check_condition2(op):
        raise NoResonantSequence("condition 1 or 2 holds, so |Delta| is bounded below")
    if op.K:
        raise NoResonantSequence("only the |p| = |q| regime has a supported resonant sequence")
    pos = _positions(op)
    cf_idx = [i for i, (c, _) in enumerate(pos) if isinstance(c, CFReal)]
    if len(cf_idx) != 1:
        raise NoResonantSequence("need exactly one continued-fraction coefficient")
    rat_idx = [i for i, (c, _) in enumerate(pos) if isinstance(c, ExactReal) and c and c.is_rational]
    if not rat_idx:
        raise NoResonantSequence("need a nonzero rational coefficient to pair with")
    a_i, b_i = cf_idx[0], rat_idx[0]
    alpha: CFReal = pos[a_i][0]
    c = pos[b_i][0].rat
    u, v = int(c.numerator), int(c.denominator)
    d = op.group.torus_dim
    C = resonance_constant(op).enclosure().hi
    re_q = abs(op.q.re).enclosure().hi
    terms = []
    for j, conv in enumerate(alpha.convergents[:-1]):
        k = j + 1
        x = [0] * len(pos)
        x[a_i] = u * conv.denominator
        x[b_i] = -v * conv.numerator
        taus = tuple(x[:d])
        ms = tuple(2 * m for m in x[d:])
        ells = tuple(abs(m) for m in ms)
        slot = Slot(RepIndex(taus, ells), ms, tuple(-e for e in ells))
        lv = lam_key(op.vf, taus, ms)
        if not isinstance(lv, LinearCF):
            break
        enc = lv.enclosure()
        if enc.contains_zero():
            break
        lo, hi = enc.mag_lower(), enc.mag_upper()
        # |Delta| = |lam| sqrt(lam^2 + 4 Re(q)^2) when K = 0
        up_sq = hi * hi * (hi * hi + 4 * re_q * re_q)
        low_sq = lo * lo * (lo * lo)
        w2 = weight_squared(slot.rep)
        holds = up_sq <= C * C / w2**k
        terms.append(
            ResonantTerm(k, conv, slot, lv, w2, _sqrt_up(up_sq), _sqrt_down(low_sq), holds)
        )
    good = []
    for t in terms:
        if not t.bound_holds:
            break
        good.append(t)
    if not good:
        raise NoResonantSequence("no convergent gives a certified near-resonance")
    return good


def _sqrt_up(x: Fraction) -> Fraction:
    scale = 1 << 64
    r = math.isqrt(int(x * scale * scale))
    return Fraction(r + 1, scale)


def _sqrt_down(x: Fraction) -> Fraction:
    scale = 1 << 64
    r = math.isqrt(int(x * scale * scale))
    return Fraction(r, scale)


# -- verdicts -----------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    property: str
    answer: str
    condition_id: str | None = None
    certificate: DiophantineCertificate | None = None
    reason: str = ""
    witness: tuple = ()
    notes: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"property": self.property, "answer": self.answer}
        if self.condition_id is not None:
            out["condition_id"] = self.condition_id
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.reason:
            out["reason"] = self.reason
        if self.witness:
            out["witness"] = list(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        if self.diagnostics:
            out["diagnostics"] = {k: str(v) for k, v in self.diagnostics.items()}
        return out


def _necessity_group(group: GroupSpec) -> bool:
    return group.is_torus or (group.is_pure_su2 and group.su2_count == 1)


def classify_gh(op: OperatorSpec, xi_max) -> Verdict:
    if check_condition1(op):
        return Verdict(GH, YES, "1", reason="|p| > |q|")
    if check_condition2(op):
        return Verdict(GH, YES, "2", reason="|p| < |q| and Re q != 0")
    cert = check_condition3(op, xi_max, GH)
    if cert.certifying:
        notes = ()
        if not op.K and not op.group.is_torus:
            notes = ("|p| = |q| with a Yes verdict off a torus; recorded for information only",)
        return Verdict(GH, YES, "3", cert, reason="condition 3 certified", notes=notes)
    zeros = find_delta_zeros(op, xi_max)
    if zeros.infinite and zeros.rows:
        fam = zeros.family
        return Verdict(
            GH,
            NO,
            certificate=cert,
            reason="Delta vanishes on an infinite family",
            witness=(fam.to_json(),),
            diagnostics={"zero_rows_scanned": len(zeros.rows)},
        )
    if op.has_cf and _necessity_group(op.group):
        try:
            seq = find_resonant_sequence(op)
        except NoResonantSequence as exc:
            return Verdict(GH, INCONCLUSIVE, certificate=cert, reason=str(exc))
        return Verdict(
            GH,
            NO,
            certificate=cert,
            reason="near-resonant sequence from continued-fraction data",
            witness=tuple(slot_to_json(t.slot) for t in seq),
        )
    return Verdict(GH, INCONCLUSIVE, certificate=cert, reason="condition 3 not certified")


def classify_gs(op: OperatorSpec, xi_max) -> Verdict:
    if op.group.is_pure_su2 and op.group.su2_count == 1:
        return Verdict(GS, YES, "su2", reason="every operator of this form on SU(2) is globally solvable")
    if check_condition1(op):
        return Verdict(GS, YES, "1", reason="|p| > |q|")
    if check_condition2(op):
        return Verdict(GS, YES, "2", reason="|p| < |q| and Re q != 0")
    cert = check_condition3(op, xi_max, GS)
    if cert.certifying:
        return Verdict(GS, YES, "3", cert, reason="condition 3 (GS form) certified")
    asserted = any(
        isinstance(c, CFReal) and c.liouville for c in op.vf.torus_coeffs + op.vf.su2_coeffs
    )
    try:
        seq = find_resonant_sequence(op)
    except NoResonantSequence as exc:
        return Verdict(GS, INCONCLUSIVE, certificate=cert, reason=str(exc))
    witness = tuple(slot_to_json(t.slot) for t in seq)
    if asserted:
        return Verdict(
            GS,
            NO,
            certificate=cert,
            reason="near-resonant sequence; Liouville growth is an asserted input",
            witness=witness,
        )
    return Verdict(
        GS,
        INCONCLUSIVE,
        certificate=cert,
        reason=f"{len(seq)} certified near-resonant terms; super-polynomial approach not certified",
        witness=witness,
    )
