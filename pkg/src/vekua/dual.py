"""Unitary dual of G = T^d x SU(2)^k.

Half-integers (spins and matrix indices) are stored doubled so every index is
an int. A representation of G is a torus character tau in Z^d together with
spins l_1..l_k; its matrix rows are indexed by m = (m_1..m_k), -l_j <= m_j <= l_j
in steps of one, flattened row-major with ascending m.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .exact import CFReal, ExactReal, LinearCF, parse_real


@dataclass(frozen=True)
class GroupSpec:
    torus_dim: int
    su2_count: int

    def __post_init__(self):
        if self.torus_dim < 0 or self.su2_count < 0:
            raise ValueError("factor counts must be non-negative")
        if self.torus_dim + self.su2_count < 1:
            raise ValueError("the group needs at least one factor")

    @property
    def is_torus(self) -> bool:
        return self.su2_count == 0

    @property
    def is_pure_su2(self) -> bool:
        return self.torus_dim == 0

    @property
    def non_self_dual(self) -> bool:
        """Every non-trivial representation differs from its conjugate."""
        return self.su2_count == 0

    def __str__(self) -> str:
        parts = []
        if self.torus_dim:
            parts.append(f"T^{self.torus_dim}")
        if self.su2_count:
            parts.append("SU(2)" + (f"^{self.su2_count}" if self.su2_count > 1 else ""))
        return " x ".join(parts)


@dataclass(frozen=True, order=True)
class RepIndex:
    taus: tuple[int, ...]
    twice_ells: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "taus", tuple(int(t) for t in self.taus))
        object.__setattr__(self, "twice_ells", tuple(int(e) for e in self.twice_ells))
        if any(e < 0 for e in self.twice_ells):
            raise ValueError("spins must be non-negative")

    def check_group(self, group: GroupSpec) -> None:
        if len(self.taus) != group.torus_dim or len(self.twice_ells) != group.su2_count:
            raise ValueError(f"representation {self} does not belong to {group}")

    @property
    def is_trivial(self) -> bool:
        return not any(self.taus) and not any(self.twice_ells)


@dataclass(frozen=True, order=True)
class Slot:
    """One matrix-coefficient position (row m, column n) of a representation."""

    rep: RepIndex
    twice_ms: tuple[int, ...]
    twice_ns: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twice_ms", tuple(int(m) for m in self.twice_ms))
        object.__setattr__(self, "twice_ns", tuple(int(n) for n in self.twice_ns))
        ells = self.rep.twice_ells
        if len(self.twice_ms) != len(ells) or len(self.twice_ns) != len(ells):
            raise ValueError("slot indices must match the number of SU(2) factors")
        for e, m, n in zip(ells, self.twice_ms, self.twice_ns):
            if abs(m) > e or abs(n) > e or (e - m) % 2 or (e - n) % 2:
                raise ValueError(f"indices ({m}/2, {n}/2) invalid for spin {e}/2")

    @property
    def key(self) -> tuple:
        return (self.rep.taus, self.twice_ms, self.twice_ns)

    @property
    def row(self) -> int:
        return row_index(self.rep, self.twice_ms)

    @property
    def col(self) -> int:
        return row_index(self.rep, self.twice_ns)

    @property
    def orientation(self) -> int:
        """+1/-1 by the sign of the first nonzero of (taus, ms, ns); 0 if all zero.

        A slot with orientation +1 is the primary member of its conjugate pair.
        """
        for v in itertools.chain(self.rep.taus, self.twice_ms, self.twice_ns):
            if v:
                return 1 if v > 0 else -1
        return 0


@dataclass(frozen=True)
class VectorFieldSpec:
    """X = sum c_i d/dt_i + sum a_j d0_j with real coefficients."""

    torus_coeffs: tuple = ()
    su2_coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torus_coeffs", tuple(parse_real(c) for c in self.torus_coeffs))
        object.__setattr__(self, "su2_coeffs", tuple(parse_real(a) for a in self.su2_coeffs))
        if not any(
            isinstance(c, CFReal) or c for c in self.torus_coeffs + self.su2_coeffs
        ):
            raise ValueError("vector field has all coefficients zero")

    def check_group(self, group: GroupSpec) -> None:
        if len(self.torus_coeffs) != group.torus_dim or len(self.su2_coeffs) != group.su2_count:
            raise ValueError(f"vector field does not match {group}")

    @property
    def has_cf(self) -> bool:
        return any(isinstance(c, CFReal) for c in self.torus_coeffs + self.su2_coeffs)

    def magnitude_bound(self) -> Fraction:
        """Rational upper bound for sum |c_i| + sum |a_j|."""
        total = Fraction(0)
        for c in self.torus_coeffs + self.su2_coeffs:
            total += c.enclosure().mag_upper()
        return total


def _xi_sq(xi_max) -> Fraction:
    return Fraction(xi_max) ** 2


def weight_squared(rep: RepIndex) -> Fraction:
    """1 + sum tau_i^2 + sum l_j(l_j+1), the eigenvalue of I - Laplacian."""
    w = Fraction(1 + sum(t * t for t in rep.taus))
    for e in rep.twice_ells:
        w += Fraction(e * (e + 2), 4)
    return w


def weight(rep: RepIndex) -> float:
    return math.sqrt(weight_squared(rep))


def key_weight_squared(taus: Sequence[int], twice_ms: Sequence[int]) -> Fraction:
    """Smallest weight^2 among representations carrying row index m (l_j = |m_j|)."""
    w = Fraction(1 + sum(t * t for t in taus))
    for m in twice_ms:
        m = abs(m)
        w += Fraction(m * (m + 2), 4)
    return w


def rep_dimension(rep: RepIndex) -> int:
    return math.prod(e + 1 for e in rep.twice_ells)


def _torus_points(d: int, budget: int) -> Iterator[tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    r = math.isqrt(budget)
    for t in range(-r, r + 1):
        for rest in _torus_points(d - 1, budget - t * t):
            yield (t,) + rest


def _spin_points(k: int, budget: Fraction, signed: bool) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    e = 0
    while Fraction(e * (e + 2), 4) <= budget:
        rest_budget = budget - Fraction(e * (e + 2), 4)
        for rest in _spin_points(k - 1, rest_budget, signed):
            if signed and e:
                yield (-e,) + rest
            yield (e,) + rest
        e += 1


def enumerate_reps(group: GroupSpec, xi_max) -> list[RepIndex]:
    """All representations with weight <= xi_max, ordered by (weight^2, taus, spins)."""
    return list(_enumerate_reps(group, _xi_sq(xi_max)))


@lru_cache(maxsize=64)
def _enumerate_reps(group: GroupSpec, limit: Fraction) -> tuple[RepIndex, ...]:
    if limit < 1:
        raise ValueError("xi_max must be at least 1")
    out = []
    torus_budget = math.floor(limit - 1)
    for taus in _torus_points(group.torus_dim, torus_budget):
        rest = limit - 1 - sum(t * t for t in taus)
        for ells in _spin_points(group.su2_count, rest, signed=False):
            out.append(RepIndex(taus, ells))
    out.sort(key=lambda r: (weight_squared(r), r.taus, r.twice_ells))
    return tuple(out)


def enumerate_keys(group: GroupSpec, xi_max) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (taus, twice_ms) row labels whose smallest carrying representation
    has weight <= xi_max, ordered by (weight^2, taus, twice_ms)."""
    limit = _xi_sq(xi_max)
    if limit < 1:
        raise ValueError("xi_max must be at least 1")
    out = []
    for taus in _torus_points(group.torus_dim, math.floor(limit - 1)):
        rest = limit - 1 - sum(t * t for t in taus)
        for ms in _spin_points(group.su2_count, rest, signed=True):
            out.append((taus, ms))
    out.sort(key=lambda k: (key_weight_squared(*k), k[0], k[1]))
    return out


def row_labels(rep: RepIndex) -> list[tuple[int, ...]]:
    """twice_ms for each row, in matrix order."""
    ranges = [range(-e, e + 1, 2) for e in rep.twice_ells]
    return [tuple(ms) for ms in itertools.product(*ranges)]


def row_index(rep: RepIndex, twice_ms: Sequence[int]) -> int:
    idx = 0
    for e, m in zip(rep.twice_ells, twice_ms):
        idx = idx * (e + 1) + (e + m) // 2
    return idx


def slots_of(rep: RepIndex) -> Iterator[Slot]:
    labels = row_labels(rep)
    for ms in labels:
        for ns in labels:
            yield Slot(rep, ms, ns)


def row_parity(rep: RepIndex) -> np.ndarray:
    """(-1)^(sum_j (l_j + m_j)) per row; the phase matrix is its outer product."""
    labels = row_labels(rep)
    return np.array(
        [(-1) ** (sum((e + m) // 2 for e, m in zip(rep.twice_ells, ms)) % 2) for ms in labels],
        dtype=np.int64,
    )


def lam_key(vf: VectorFieldSpec, taus: Sequence[int], twice_ms: Sequence[int]):
    """sum c_i tau_i + sum a_j m_j; ExactReal, or LinearCF when a
    continued-fraction coefficient meets a nonzero index."""
    exact = ExactReal(0)
    terms = []
    for c, t in zip(vf.torus_coeffs, taus):
        if not t:
            continue
        if isinstance(c, CFReal):
            terms.append((c, Fraction(t)))
        else:
            exact = exact + c * t
    for a, m in zip(vf.su2_coeffs, twice_ms):
        if not m:
            continue
        if isinstance(a, CFReal):
            terms.append((a, Fraction(m, 2)))
        else:
            exact = exact + a * Fraction(m, 2)
    if terms:
        return LinearCF(exact, tuple(terms))
    return exact


def lam(vf: VectorFieldSpec, slot: Slot):
    """Eigenvalue lambda_m(xi) of -iX at the slot (depends on the row only)."""
    return lam_key(vf, slot.rep.taus, slot.twice_ms)


@lru_cache(maxsize=65536)
def row_lambdas(vf: VectorFieldSpec, rep: RepIndex) -> tuple:
    return tuple(lam_key(vf, rep.taus, ms) for ms in row_labels(rep))


def conjugate_rep(rep: RepIndex) -> RepIndex:
    return RepIndex(tuple(-t for t in rep.taus), rep.twice_ells)


def conjugate_slot(slot: Slot) -> tuple[Slot, int]:
    """Slot holding the coefficient of the conjugate function, and its phase.

    conj(u)^(xi)_{mn} = phase * conj(u^(conj xi)_{-m,-n}) with
    phase = prod_j (-1)^(m_j - n_j).
    """
    ms = tuple(-m for m in slot.twice_ms)
    ns = tuple(-n for n in slot.twice_ns)
    diff = sum((m - n) // 2 for m, n in zip(slot.twice_ms, slot.twice_ns))
    phase = -1 if diff % 2 else 1
    return Slot(conjugate_rep(slot.rep), ms, ns), phase


def is_self_dual(rep: RepIndex) -> bool:
    return not any(rep.taus)


def slot_to_json(slot: Slot) -> dict:
    return {
        "taus": list(slot.rep.taus),
        "twice_ells": list(slot.rep.twice_ells),
        "twice_ms": list(slot.twice_ms),
        "twice_ns": list(slot.twice_ns),
    }


def slot_from_json(obj: dict) -> Slot:
    return Slot(rep_from_json(obj), tuple(obj["twice_ms"]), tuple(obj["twice_ns"]))


def rep_to_json(rep: RepIndex) -> dict:
    return {"taus": list(rep.taus), "twice_ells": list(rep.twice_ells)}


def rep_from_json(obj: dict) -> RepIndex:
    return RepIndex(tuple(obj["taus"]), tuple(obj["twice_ells"]))


def key_array(group: GroupSpec, xi_max) -> tuple[np.ndarray, np.ndarray]:
    """Row labels as an int array with columns (taus, twice_ms), plus
    4*weight^2 per row; same order as enumerate_keys."""
    limit4 = _xi_sq(xi_max) * 4
    if limit4 < 4:
        raise ValueError("xi_max must be at least 1")
    lim = math.floor(limit4)
    X = np.zeros((1, 0), dtype=np.int64)
    w4 = np.full(1, 4, dtype=np.int64)
    for _ in range(group.torus_dim):
        r = math.isqrt(max((lim - 4) // 4, 0))
        vals = np.arange(-r, r + 1, dtype=np.int64)
        X = np.concatenate([np.repeat(X, len(vals), axis=0), np.tile(vals, len(X))[:, None]], axis=1)
        w4 = np.repeat(w4, len(vals)) + 4 * np.tile(vals, len(w4)) ** 2
        keep = w4 <= lim
        X, w4 = X[keep], w4[keep]
    for _ in range(group.su2_count):
        r = math.isqrt(lim) + 1
        vals = np.arange(-r, r + 1, dtype=np.int64)
        X = np.concatenate([np.repeat(X, len(vals), axis=0), np.tile(vals, len(X))[:, None]], axis=1)
        a = np.abs(np.tile(vals, len(w4)))
        w4 = np.repeat(w4, len(vals)) + a * (a + 2)
        keep = w4 <= lim
        X, w4 = X[keep], w4[keep]
    order = np.lexsort(tuple(X[:, i] for i in range(X.shape[1] - 1, -1, -1)) + (w4,))
    return X[order], w4[order]
