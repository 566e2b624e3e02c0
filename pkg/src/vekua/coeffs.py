"""Truncated Fourier coefficient data on T^d x SU(2)^k.

A FourierData maps representations to d_xi x d_xi coefficient matrices.
Absent representations are zero. Exact data holds ExactComplex entries in
object arrays; float data holds complex128 arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping

import numpy as np

from .dual import (
    GroupSpec,
    RepIndex,
    Slot,
    _xi_sq,
    enumerate_reps,
    rep_dimension,
    rep_from_json,
    rep_to_json,
    row_labels,
    weight,
    weight_squared,
)
from .exact import ZERO, ExactComplex, ExactReal, complex_to_json, parse_complex


class InsufficientData(ValueError):
    """Too few distinct weights to fit a decay rate."""


def _is_exact_array(a: np.ndarray) -> bool:
    return a.dtype == object


def _to_exact(z) -> ExactComplex:
    if isinstance(z, ExactComplex):
        return z
    if isinstance(z, (int, Fraction, ExactReal)):
        return ExactComplex(z)
    raise TypeError(f"exact data needs exact entries, got {type(z).__name__}")


def zero_matrix(dim: int, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((dim, dim), dtype=object)
        out.fill(ZERO)
        return out
    return np.zeros((dim, dim), dtype=complex)


def matrix_is_zero(a: np.ndarray) -> bool:
    if _is_exact_array(a):
        return not any(a.flat)
    return not np.any(a)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class FourierData:
    group: GroupSpec
    xi_max: object
    entries: Mapping[RepIndex, np.ndarray] = field(repr=False)
    exact: bool = False

    def __post_init__(self):
        limit = _xi_sq(self.xi_max)
        clean, support = {}, {}
        for rep, mat in self.entries.items():
            rep.check_group(self.group)
            if weight_squared(rep) > limit:
                raise ValueError(f"representation {rep} lies beyond xi_max={self.xi_max}")
            d = rep_dimension(rep)
            if self.exact:
                src = np.asarray(mat, dtype=object)
                if src.shape != (d, d):
                    raise ValueError(f"matrix at {rep} must be {d}x{d}")
                flat = np.empty(d * d, dtype=object)
                flat.fill(ZERO)
                nz = []
                for k, z in enumerate(src.flat):
                    if z is ZERO:
                        continue
                    z = _to_exact(z)
                    if z:
                        flat[k] = z
                        nz.append(k)
                arr = flat.reshape(d, d)
                support[rep] = tuple(nz)
            else:
                arr = np.array(mat, dtype=complex)
                if arr.shape != (d, d):
                    raise ValueError(f"matrix at {rep} must be {d}x{d}")
                support[rep] = tuple(int(k) for k in np.flatnonzero(arr))
            clean[rep] = _freeze(arr)
        object.__setattr__(self, "entries", MappingProxyType(clean))
        object.__setattr__(self, "_support", MappingProxyType(support))

    # -- access -----------------------------------------------------------
    @property
    def reps(self) -> list[RepIndex]:
        return sorted(self.entries, key=lambda r: (weight_squared(r), r.taus, r.twice_ells))

    def matrix(self, rep: RepIndex) -> np.ndarray:
        got = self.entries.get(rep)
        if got is None:
            return zero_matrix(rep_dimension(rep), self.exact)
        return got

    def value(self, slot: Slot):
        got = self.entries.get(slot.rep)
        if got is None:
            return ZERO if self.exact else 0j
        return got[slot.row, slot.col]

    def support(self, rep: RepIndex) -> tuple[int, ...]:
        """Flat indices (row * d + col) of the nonzero entries at ``rep``."""
        return self._support.get(rep, ())

    def nonzero_reps(self) -> list[RepIndex]:
        return [r for r in self.reps if self._support[r]]

    def nonzero_slots(self) -> Iterator[Slot]:
        for rep in self.reps:
            idx = self._support[rep]
            if not idx:
                continue
            labels = row_labels(rep)
            d = len(labels)
            for k in idx:
                yield Slot(rep, labels[k // d], labels[k % d])

    @property
    def nnz(self) -> int:
        return sum(len(v) for v in self._support.values())

    def __len__(self) -> int:
        return len(self.entries)

    # -- arithmetic --------------------------------------------------------
    def _check_compatible(self, other: FourierData) -> None:
        if self.group != other.group:
            raise ValueError("Fourier data live on different groups")
        if self.exact != other.exact:
            raise ValueError("cannot mix exact and float Fourier data")

    def _combine(self, other: FourierData, op) -> FourierData:
        self._check_compatible(other)
        out = {}
        for rep in set(self.entries) | set(other.entries):
            a, b = self.matrix(rep), other.matrix(rep)
            if not self.exact:
                out[rep] = op(a, b)
                continue
            res = np.array(a, copy=True)
            for k in other.support(rep):
                res.flat[k] = op(a.flat[k], b.flat[k])
            out[rep] = res
        xi = max(self.xi_max, other.xi_max)
        return FourierData(self.group, xi, out, self.exact)

    def __add__(self, other: FourierData) -> FourierData:
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: FourierData) -> FourierData:
        return self._combine(other, lambda a, b: a - b)

    def scale(self, factor) -> FourierData:
        if not self.exact:
            return FourierData(
                self.group, self.xi_max, {r: m * factor for r, m in self.entries.items()}, False
            )
        factor = _to_exact(factor)
        out = {}
        for r, m in self.entries.items():
            res = zero_matrix(m.shape[0], True)
            for k in self._support[r]:
                res.flat[k] = m.flat[k] * factor
            out[r] = res
        return FourierData(self.group, self.xi_max, out, True)

    def pruned(self) -> FourierData:
        """Copy without all-zero matrices."""
        return FourierData(
            self.group,
            self.xi_max,
            {r: m for r, m in self.entries.items() if self._support[r]},
            self.exact,
        )

    def to_float(self) -> FourierData:
        if not self.exact:
            return self
        out = {}
        for r, m in self.entries.items():
            res = np.zeros(m.shape, dtype=complex)
            for k in self._support[r]:
                res.flat[k] = complex(m.flat[k])
            out[r] = res
        return FourierData(self.group, self.xi_max, out, False)

    def same_as(self, other: FourierData) -> bool:
        """Slotwise equality with absent representations read as zero."""
        if self.group != other.group:
            return False
        for rep in set(self.entries) | set(other.entries):
            a, b = self.matrix(rep), other.matrix(rep)
            if self.exact and other.exact:
                idx = set(self.support(rep)) | set(other.support(rep))
                if not all(a.flat[k] == b.flat[k] for k in idx):
                    return False
            elif not np.array_equal(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)):
                return False
        return True

    @classmethod
    def zeros(cls, group: GroupSpec, xi_max, exact: bool = True) -> FourierData:
        return cls(group, xi_max, {}, exact)

    @classmethod
    def from_slots(cls, group: GroupSpec, xi_max, values: Mapping[Slot, object], exact: bool = True):
        """Build sparse data from slot -> value pairs."""
        mats: dict[RepIndex, np.ndarray] = {}
        for slot, v in values.items():
            m = mats.get(slot.rep)
            if m is None:
                m = mats[slot.rep] = zero_matrix(rep_dimension(slot.rep), exact)
            m[slot.row, slot.col] = _to_exact(v) if exact else complex(v)
        return cls(group, xi_max, mats, exact)


# -- norms -------------------------------------------------------------------

def plancherel_norm_sq(data: FourierData):
    """sum_xi d_xi ||f(xi)||_HS^2: ExactReal for exact data, float otherwise."""
    if data.exact:
        total = ExactReal(0)
        for rep, mat in data.entries.items():
            d = rep_dimension(rep)
            s = ExactReal(0)
            for k in data.support(rep):
                s = s + mat.flat[k].abs2()
            total = total + s * d
        return total
    total = 0.0
    for rep, mat in data.entries.items():
        total += rep_dimension(rep) * float(np.sum(np.abs(mat) ** 2))
    return total


def plancherel_norm(data: FourierData) -> float:
    """L^2 norm of the function with these coefficients (exactly 0.0 for zero data)."""
    sq = plancherel_norm_sq(data)
    if data.exact and not sq:
        return 0.0
    return math.sqrt(float(sq))


# -- decay ---------------------------------------------------------------------

CONSISTENT_WITH_SMOOTH = "ConsistentWithSmooth"
POLYNOMIAL_ORDER = "PolynomialOrder"
CERTIFIED_NON_SMOOTH = "CertifiedNonSmooth"
INCONCLUSIVE = "Inconclusive"

SMOOTH_SLOPE = -6.0


@dataclass(frozen=True)
class WitnessFamily:
    """A truncated infinite family of slots, one per representation."""

    slots: tuple[Slot, ...]
    description: str = ""


@dataclass(frozen=True)
class DecayReport:
    slope: float
    floor: float
    verdict: str
    order: int | None = None
    floor_sq_exact: ExactReal | None = None
    n_weights: int = 0

    def __str__(self) -> str:
        if self.verdict == POLYNOMIAL_ORDER:
            return f"{self.verdict}({self.order}) slope={self.slope:.3f}"
        if self.verdict == CERTIFIED_NON_SMOOTH:
            return f"{self.verdict} floor={self.floor:.6g}"
        return f"{self.verdict} slope={self.slope:.3f}"


def _magnitude(z) -> float:
    return abs(complex(z))


def estimate_decay(data: FourierData, witness: WitnessFamily | None = None) -> DecayReport:
    """Fit log(max |entry|) against log<xi> over the top half of the range.

    The fit runs on the per-weight envelope (largest entry among representations
    sharing a weight). A witness family whose entries stay above a positive
    floor certifies non-smoothness; otherwise the verdict only reports what the
    truncated data are consistent with.
    """
    envelope: dict[Fraction, float] = {}
    for rep, mat in data.entries.items():
        if matrix_is_zero(mat):
            continue
        peak = max(_magnitude(z) for z in mat.flat)
        w2 = weight_squared(rep)
        envelope[w2] = max(envelope.get(w2, 0.0), peak)
    if len(envelope) < 4:
        raise InsufficientData(f"need at least 4 distinct weights, got {len(envelope)}")

    w2s = sorted(envelope)
    half = _xi_sq(data.xi_max) / 4
    top = [w for w in w2s if w >= half]
    if len(top) < 3:
        top = w2s[len(w2s) // 2 :]
    x = np.log(np.sqrt(np.array([float(w) for w in top])))
    y = np.log(np.array([envelope[w] for w in top]))
    if len(top) >= 2 and np.ptp(x) > 0:
        slope = float(np.polyfit(x, y, 1)[0])
    else:
        slope = float("nan")

    floor = 0.0
    floor_sq = None
    if witness is not None and witness.slots:
        vals = [data.value(s) for s in witness.slots]
        floor = min(_magnitude(v) for v in vals)
        if data.exact:
            floor_sq = min((v.abs2() for v in vals), key=float)
        if floor > 0:
            return DecayReport(slope, floor, CERTIFIED_NON_SMOOTH, None, floor_sq, len(envelope))
    if math.isnan(slope) or len(top) < 3:
        return DecayReport(slope, floor, INCONCLUSIVE, None, floor_sq, len(envelope))
    if slope <= SMOOTH_SLOPE:
        return DecayReport(slope, floor, CONSISTENT_WITH_SMOOTH, None, floor_sq, len(envelope))
    return DecayReport(slope, floor, POLYNOMIAL_ORDER, round(slope), floor_sq, len(envelope))


# -- fixtures ------------------------------------------------------------------

def random_fourier_data(
    group: GroupSpec,
    xi_max,
    decay_exponent: float,
    seed: int,
    *,
    exact: bool = False,
    density: float = 1.0,
    entry_density: float = 1.0,
) -> FourierData:
    """Seeded pseudo-random coefficients of size about <xi>^(-decay_exponent).

    Float entries have modulus in [0.5, 1] times <xi>^(-decay_exponent). Exact
    entries are small random rationals times (<xi>^2)^(-floor(decay_exponent/2)).
    With density < 1 each representation is kept with that probability, and
    with entry_density < 1 each entry of a kept matrix is.
    """
    rng = np.random.default_rng(seed)
    half = int(decay_exponent // 2)
    out = {}
    for rep in enumerate_reps(group, xi_max):
        d = rep_dimension(rep)
        keep = rng.random() < density
        mask = rng.random(size=(d, d)) < entry_density
        if exact:
            nums = rng.integers(-12, 13, size=(d, d, 2))
            dens = rng.integers(1, 6, size=(d, d, 2))
            if not keep or not mask.any():
                continue
            scale = weight_squared(rep) ** (-half)
            mat = np.empty((d, d), dtype=object)
            mat.fill(ZERO)
            for i, j in zip(*np.nonzero(mask)):
                mat[i, j] = ExactComplex(
                    Fraction(int(nums[i, j, 0]), int(dens[i, j, 0])) * scale,
                    Fraction(int(nums[i, j, 1]), int(dens[i, j, 1])) * scale,
                )
            out[rep] = mat
        else:
            mags = rng.uniform(0.5, 1.0, size=(d, d))
            phases = rng.uniform(0.0, 2 * np.pi, size=(d, d))
            if not keep or not mask.any():
                continue
            out[rep] = np.where(mask, mags * np.exp(1j * phases), 0) * weight(rep) ** (-decay_exponent)
    return FourierData(group, xi_max, out, exact)


# -- JSON ------------------------------------------------------------------------

SCHEMA_VERSION = 1


def group_to_json(group: GroupSpec) -> dict:
    return {"torus_dim": group.torus_dim, "su2_count": group.su2_count}


def group_from_json(obj: dict) -> GroupSpec:
    return GroupSpec(int(obj["torus_dim"]), int(obj["su2_count"]))


def _xi_to_json(xi):
    if isinstance(xi, Fraction):
        return str(xi) if xi.denominator != 1 else xi.numerator
    return xi


def _xi_from_json(xi):
    if isinstance(xi, str):
        return Fraction(xi)
    return xi


def fourier_to_json(data: FourierData) -> dict:
    entries = []
    for rep in data.reps:
        mat = data.entries[rep]
        if data.exact:
            rows = [[[complex_to_json(z)["re"], complex_to_json(z)["im"]] for z in row] for row in mat]
        else:
            rows = [[[float(z.real), float(z.imag)] for z in row] for row in mat]
        entries.append({"rep": rep_to_json(rep), "matrix": rows})
    return {
        "schema_version": SCHEMA_VERSION,
        "group": group_to_json(data.group),
        "xi_max": _xi_to_json(data.xi_max),
        "mode": "exact" if data.exact else "float",
        "entries": entries,
    }


def fourier_from_json(obj: dict) -> FourierData:
    group = group_from_json(obj["group"])
    exact = obj.get("mode", "exact") == "exact"
    mats = {}
    for item in obj.get("entries", []):
        rep = rep_from_json(item["rep"])
        rows = item["matrix"]
        if exact:
            mat = np.empty((len(rows), len(rows)), dtype=object)
            for i, row in enumerate(rows):
                for j, pair in enumerate(row):
                    mat[i, j] = parse_complex(pair)
        else:
            mat = np.array([[complex(a, b) for a, b in row] for row in rows], dtype=complex)
        mats[rep] = mat
    return FourierData(group, _xi_from_json(obj["xi_max"]), mats, exact)
