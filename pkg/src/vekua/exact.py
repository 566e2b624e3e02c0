"""Exact scalars: a + b*sqrt(D) reals, complex pairs of them, and
continued-fraction reals that can only be enclosed, never compared exactly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Union

from gmpy2 import mpq, mpz

Rational = Union[int, Fraction]
_Q = type(mpq(0))
_Q0 = mpq(0)
_Z = type(mpz(0))


def _to_q(x):
    """Coerce an int, Fraction, mpq or rational string to mpq."""
    if type(x) is _Q:
        return x
    if isinstance(x, Fraction):
        return mpq(int(x.numerator), int(x.denominator))
    return mpq(x)


class MixedRadicandError(ValueError):
    """Two quadratic surds with different radicands met in one expression."""


class CFExactnessError(ValueError):
    """An exact answer was requested from continued-fraction data."""


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, r) with n = s**2 * r and r square-free."""
    if n < 0:
        raise ValueError("radicand must be non-negative")
    s, r = 1, 1
    d = 2
    while d * d <= n:
        while n % (d * d) == 0:
            n //= d * d
            s *= d
        if n % d == 0:
            n //= d
            r *= d
        d += 1
    return s, r * n


def _isqrt_fraction(x: Fraction) -> Fraction | None:
    """Exact rational square root of a non-negative rational, or None."""
    if x < 0:
        return None
    rn, rd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class Interval:
    """Closed rational interval [lo, hi]."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Rational, hi: Rational | None = None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if hi < lo:
            lo, hi = hi, lo
        self.lo = lo
        self.hi = hi

    def __repr__(self) -> str:
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"

    @staticmethod
    def _coerce(other) -> Interval:
        if isinstance(other, Interval):
            return other
        if isinstance(other, ExactReal):
            return other.enclosure()
        return Interval(Fraction(other))

    def __add__(self, other) -> Interval:
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> Interval:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Interval:
        return self._coerce(other) - self

    def __mul__(self, other) -> Interval:
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def square(self) -> Interval:
        if self.lo >= 0:
            return Interval(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return Interval(self.hi**2, self.lo**2)
        return Interval(0, max(self.lo**2, self.hi**2))

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def mag_lower(self) -> Fraction:
        """Smallest |x| over the interval."""
        if self.contains_zero():
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def mag_upper(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    def __float__(self) -> float:
        return self.mid

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


_ENCLOSURE_BITS = 96


class ExactReal:
    """The real number rat + surd*sqrt(radicand) with rational rat, surd.

    The radicand is square-free. Rationals carry radicand 1 and surd 0.
    Binary operations between surds of different radicands raise
    MixedRadicandError.
    """

    __slots__ = ("rat", "surd", "radicand", "_hash")

    def __init__(self, rat: Rational = 0, surd: Rational = 0, radicand: int = 1):
        rat = _to_q(rat)
        surd = _to_q(surd)
        if surd and radicand not in (0, 1):
            s, r = _squarefree_split(int(radicand))
            surd *= s
            if r == 1:
                rat += surd
                surd = _Q0
            radicand = r
        else:
            if radicand in (0, 1):
                rat += surd * radicand
            surd = _Q0
        if not surd:
            radicand = 1
        self.rat = rat
        self.surd = surd
        self.radicand = radicand
        self._hash = None

    @classmethod
    def _raw(cls, rat, surd, radicand: int) -> ExactReal:
        """Build without normalising; radicand must already be square-free."""
        obj = object.__new__(cls)
        obj.rat = rat
        obj.surd = surd
        obj.radicand = radicand if surd else 1
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, n: Rational) -> ExactReal:
        """sqrt(n) for a non-negative rational n."""
        n = _to_q(n)
        if n < 0:
            raise ValueError("sqrt of a negative number")
        # sqrt(a/b) = sqrt(a*b)/b
        return cls(0, mpq(1, n.denominator), int(n.numerator * n.denominator))

    @property
    def is_rational(self) -> bool:
        return not self.surd

    def _unify(self, other: ExactReal) -> int:
        if not self.surd:
            return other.radicand
        if not other.surd or other.radicand == self.radicand:
            return self.radicand
        raise MixedRadicandError(
            f"radicands {self.radicand} and {other.radicand} cannot be mixed"
        )

    @staticmethod
    def _coerce(other) -> ExactReal | None:
        if isinstance(other, ExactReal):
            return other
        if isinstance(other, (int, Fraction, _Q, _Z)):
            return ExactReal._raw(_to_q(other), _Q0, 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.surd and not o.surd:
            return ExactReal._raw(self.rat + o.rat, _Q0, 1)
        return ExactReal._raw(self.rat + o.rat, self.surd + o.surd, self._unify(o))

    __radd__ = __add__

    def __neg__(self) -> ExactReal:
        return ExactReal._raw(-self.rat, -self.surd, self.radicand)

    def __pos__(self) -> ExactReal:
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.surd and not o.surd:
            return ExactReal._raw(self.rat * o.rat, _Q0, 1)
        d = self._unify(o)
        return ExactReal._raw(
            self.rat * o.rat + self.surd * o.surd * d,
            self.rat * o.surd + self.surd * o.rat,
            d,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm rat**2 - D*surd**2."""
        return self.rat**2 - self.radicand * self.surd**2

    def galois_conjugate(self) -> ExactReal:
        return ExactReal._raw(self.rat, -self.surd, self.radicand)

    def inverse(self) -> ExactReal:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return ExactReal._raw(self.rat / n, -self.surd / n, self.radicand)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.surd:
            if not o.rat:
                raise ZeroDivisionError("division by zero")
            return ExactReal._raw(self.rat / o.rat, self.surd / o.rat, self.radicand)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> ExactReal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactReal(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        a, b = self.rat, self.surd
        if not b:
            return (a > 0) - (a < 0)
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == sb or sa == 0:
            return sb
        # opposite signs: compare a**2 with D*b**2
        diff = a * a - self.radicand * b * b
        return sa if diff > 0 else sb

    def __bool__(self) -> bool:
        return bool(self.rat) or bool(self.surd)

    def __abs__(self) -> ExactReal:
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.rat == o.rat and self.surd == o.surd and (
            not self.surd or self.radicand == o.radicand
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rat) if not self.surd else hash(
                (self.rat, self.surd, self.radicand)
            )
        return self._hash

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare ExactReal with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __float__(self) -> float:
        if not self.surd:
            return float(self.rat)
        return float(self.rat) + float(self.surd) * math.sqrt(self.radicand)

    def enclosure(self, bits: int = _ENCLOSURE_BITS) -> Interval:
        if not self.surd:
            return Interval(self.rat)
        scale = 1 << bits
        r = math.isqrt(self.radicand * scale * scale)
        root = Interval(Fraction(r, scale), Fraction(r + 1, scale))
        return self.rat + self.surd * root

    def floor(self) -> int:
        if not self.surd:
            return math.floor(self.rat)
        enc = self.enclosure()
        lo, hi = math.floor(enc.lo), math.floor(enc.hi)
        if lo == hi:
            return lo
        # the interval straddles the integer hi
        return hi if self >= hi else lo

    def sqrt_exact(self) -> ExactReal | None:
        """Non-negative square root as an ExactReal, or None.

        Rationals always have one (possibly with a new radicand); a surd has one
        only if the root lies in the same quadratic field.
        """
        if self.sign() < 0:
            return None
        if not self.surd:
            r = _isqrt_fraction(self.rat)
            if r is not None:
                return ExactReal(r)
            return ExactReal.sqrt(self.rat)
        # (x + y*sqrt(D))**2 = a + b*sqrt(D): x**2 + D*y**2 = a, 2xy = b
        a, b, d = self.rat, self.surd, self.radicand
        disc = _isqrt_fraction(a * a - d * b * b)
        if disc is None:
            return None
        for x2 in ((a + disc) / 2, (a - disc) / 2):
            x = _isqrt_fraction(x2)
            if x:
                y = b / (2 * x)
                root = ExactReal(x, y, d)
                if root.sign() < 0:
                    root = -root
                if root * root == self:
                    return root
        return None

    def __repr__(self) -> str:
        return f"ExactReal({self})"

    def __str__(self) -> str:
        if not self.surd:
            return str(self.rat)
        return f"{self.rat}{'+' if self.surd >= 0 else '-'}{abs(self.surd)}√{self.radicand}"


class ExactComplex:
    """re + i*im with ExactReal parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, ExactReal) else ExactReal(re)
        self.im = im if isinstance(im, ExactReal) else ExactReal(im)

    @staticmethod
    def _coerce(other) -> ExactComplex | None:
        if isinstance(other, ExactComplex):
            return other
        if isinstance(other, (ExactReal, int, Fraction, _Q, _Z)):
            return ExactComplex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> ExactComplex:
        return ExactComplex(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, _Q, _Z, ExactReal)):
            return ExactComplex(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ExactComplex(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> ExactComplex:
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> ExactReal:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> ExactComplex:
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        inv = n.inverse()
        return ExactComplex(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, _Q, _Z, ExactReal)):
            return ExactComplex(self.re / other, self.im / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"


I = ExactComplex(0, 1)
ZERO = ExactComplex(0, 0)


class CFReal:
    """A real given by a finite prefix of its continued-fraction expansion.

    The prefix is treated as the start of an infinite expansion, so the value
    is only known to lie between the last two convergents. ``liouville`` records
    a caller's assertion that the expansion continues with Liouville growth.
    """

    def __init__(self, quotients: Iterable[int], liouville: bool = False):
        qs = tuple(int(a) for a in quotients)
        if not qs:
            raise ValueError("continued fraction needs at least one partial quotient")
        if any(a <= 0 for a in qs[1:]):
            raise ValueError("partial quotients after the first must be positive")
        self.quotients = qs
        self.liouville = bool(liouville)

    @cached_property
    def convergents(self) -> tuple[Fraction, ...]:
        out = []
        p0, q0, p1, q1 = 1, 0, self.quotients[0], 1
        out.append(Fraction(p1, q1))
        for a in self.quotients[1:]:
            p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            out.append(Fraction(p1, q1))
        return tuple(out)

    def enclosure(self) -> Interval:
        c = self.convergents
        if len(c) == 1:
            return Interval(c[0], c[0] + 1)
        return Interval(c[-2], c[-1])

    def __float__(self) -> float:
        return float(self.convergents[-1])

    def realize(self, back: int = 0) -> Fraction:
        """A rational stand-in: the convergent ``back`` places from the end."""
        return self.convergents[-1 - back]

    def liouville_witness(self) -> list[dict]:
        """Check |alpha - p_k/q_k| < q_k**(-k) for every certifiable convergent."""
        enc = self.enclosure()
        rows = []
        for k, c in enumerate(self.convergents[:-1]):
            if k == 0:
                continue
            err = max(abs(enc.lo - c), abs(enc.hi - c))
            bound = Fraction(1, c.denominator**k)
            rows.append(
                {"k": k, "p": c.numerator, "q": c.denominator, "holds": err < bound}
            )
        return rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, CFReal):
            return NotImplemented
        return self.quotients == other.quotients and self.liouville == other.liouville

    def __hash__(self) -> int:
        return hash((self.quotients, self.liouville))

    def __repr__(self) -> str:
        return f"CFReal({list(self.quotients)})"


class LinearCF:
    """exact + sum(mult * alpha) with continued-fraction alphas."""

    __slots__ = ("exact", "terms")

    def __init__(self, exact: ExactReal, terms: tuple[tuple[CFReal, Fraction], ...]):
        self.exact = exact
        self.terms = terms

    def enclosure(self) -> Interval:
        out = self.exact.enclosure()
        for alpha, mult in self.terms:
            out = out + alpha.enclosure() * Interval(mult)
        return out

    def realize(self, back: int = 0) -> ExactReal:
        out = self.exact
        for alpha, mult in self.terms:
            out = out + alpha.realize(back) * mult
        return out

    def __neg__(self) -> LinearCF:
        return LinearCF(-self.exact, tuple((a, -m) for a, m in self.terms))

    def __float__(self) -> float:
        return float(self.exact) + sum(float(a) * float(m) for a, m in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCF):
            return NotImplemented
        return self.exact == other.exact and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.exact, self.terms))

    def __repr__(self) -> str:
        return f"LinearCF({self.exact}, {self.terms})"


_SURD_RE = re.compile(
    r"^\s*(?P<rat>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?P<surd>\d+(?:/\d+)?)?\s*(?:√|sqrt)\(?(?P<rad>\d+)\)?)?\s*$"
)


def parse_real(value) -> ExactReal | CFReal:
    """Parse the JSON forms of an exact real.

    Accepts ints, strings "a/b", "a/b+c/d√D", "√D", and the dict forms
    {"rat": "a/b", "surd": "c/d", "radicand": D} or {"cf": [a0, a1, ...]}.
    """
    if isinstance(value, (ExactReal, CFReal)):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, (int, Fraction)):
        return ExactReal(value)
    if isinstance(value, float):
        raise ValueError("floating-point values are not accepted as exact reals")
    if isinstance(value, dict):
        if "cf" in value:
            return CFReal(value["cf"], liouville=value.get("liouville", False))
        rat = Fraction(str(value.get("rat", "0")))
        surd = Fraction(str(value.get("surd", "0")))
        return ExactReal(rat, surd, int(value.get("radicand", 1)))
    if isinstance(value, str):
        m = _SURD_RE.match(value)
        if not m or value.strip() == "":
            raise ValueError(f"cannot parse exact real {value!r}")
        rat = Fraction(m.group("rat") or 0)
        if m.group("rad") is None:
            if m.group("rat") is None:
                raise ValueError(f"cannot parse exact real {value!r}")
            return ExactReal(rat)
        surd = Fraction(m.group("surd") or 1)
        if m.group("sign") == "-":
            surd = -surd
        elif m.group("sign") is None and m.group("rat") is not None:
            if m.group("surd") is not None:
                raise ValueError(f"cannot parse exact real {value!r}")
            # "c/d√D" with no rational part
            rat, surd = Fraction(0), rat
        return ExactReal(rat, surd, int(m.group("rad")))
    raise ValueError(f"cannot parse exact real {value!r}")


def real_to_json(x: ExactReal | CFReal) -> dict | str:
    if isinstance(x, CFReal):
        out = {"cf": list(x.quotients)}
        if x.liouville:
            out["liouville"] = True
        return out
    return real_to_str(x)


def real_to_str(x: ExactReal) -> str:
    """Canonical string form: "a/b" or "a/b+c/d√D" (parsed back by parse_real)."""
    rat = Fraction(int(x.rat.numerator), int(x.rat.denominator))
    if not x.surd or x.radicand == 1:
        return str(rat)
    surd = Fraction(int(x.surd.numerator), int(x.surd.denominator))
    sign = "-" if surd < 0 else "+"
    a = abs(surd)
    return f"{rat}{sign}{a.numerator}/{a.denominator}√{x.radicand}"


def parse_complex(value) -> ExactComplex:
    """Parse {"re": ..., "im": ...}, a bare real, or a [re, im] pair."""
    if isinstance(value, ExactComplex):
        return value
    if isinstance(value, dict) and ("re" in value or "im" in value):
        re_, im_ = parse_real(value.get("re", 0)), parse_real(value.get("im", 0))
    elif isinstance(value, (list, tuple)) and len(value) == 2:
        re_, im_ = parse_real(value[0]), parse_real(value[1])
    else:
        re_, im_ = parse_real(value), ExactReal(0)
    if isinstance(re_, CFReal) or isinstance(im_, CFReal):
        raise ValueError("complex constants must be exact (no continued fractions)")
    return ExactComplex(re_, im_)


def complex_to_json(z: ExactComplex) -> dict:
    return {"re": real_to_json(z.re), "im": real_to_json(z.im)}


def common_radicand(values: Iterable) -> int:
    """The single radicand shared by a collection of exact numbers (1 if none)."""
    d = 1
    for v in values:
        parts = (v.re, v.im) if isinstance(v, ExactComplex) else (v,)
        for x in parts:
            if isinstance(x, ExactReal) and x.surd:
                if d not in (1, x.radicand):
                    raise MixedRadicandError(
                        f"radicands {d} and {x.radicand} cannot be mixed"
                    )
                d = x.radicand
    return d
