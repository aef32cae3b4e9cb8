"""Scalar tower: exact rationals, one quadratic radical layer, and floats.

Exact rationals are plain ``fractions.Fraction`` values (ints are accepted
and promoted).  ``QuadExt`` holds ``a + b*sqrt(r)``; approximate reals and
complexes are Python ``float`` and ``complex``.  Mixing an exact value with
an approximate one yields an approximate result.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import (
    ConstraintViolated,
    DivisionByZero,
    IncompatibleRadicands,
    MalformedInput,
    ModeUnavailable,
)

DEFAULT_TOL = 1e-9

Scalar = Union[int, Fraction, "QuadExt", float, complex]

_SMALL_PRIME_LIMIT = 10_000


def rational_sqrt(q) -> Fraction | None:
    """Return the exact rational square root of ``q`` or None."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _square_split(n: int) -> tuple[int, int]:
    """Write ``n = k**2 * m`` stripping square factors of small primes."""
    k, m = 1, n
    p = 2
    while p <= _SMALL_PRIME_LIMIT and p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            k *= p
        p += 1 if p == 2 else 2
    root = isqrt(m)
    if root * root == m:
        k, m = k * root, 1
    return k, m


class QuadExt:
    """Exact number ``a + b*sqrt(r)`` with rational ``a, b`` and ``r > 0``.

    The constructor normalizes: it returns a plain ``Fraction`` when
    ``b == 0`` or ``r`` is a rational square, and otherwise rewrites the
    radicand as a square-free-ish positive integer.
    """

    __slots__ = ("a", "b", "r")

    def __new__(cls, a, b, r):
        a, b, r = Fraction(a), Fraction(b), Fraction(r)
        if r <= 0:
            raise ConstraintViolated(f"radicand must be positive, got {r}")
        if b == 0:
            return a
        root = rational_sqrt(r)
        if root is not None:
            return a + b * root
        # sqrt(n/d) = sqrt(n*d)/d
        k, m = _square_split(r.numerator * r.denominator)
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b * k / r.denominator)
        object.__setattr__(obj, "r", m)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def __reduce__(self):
        return (QuadExt, (self.a, self.b, self.r))

    # -- coercion -------------------------------------------------------
    def _align(self, other):
        """Return ``(a, b)`` of ``other`` over this radicand, or None."""
        if isinstance(other, QuadExt):
            if other.r == self.r:
                return other.a, other.b
            ratio = rational_sqrt(Fraction(other.r, self.r))
            if ratio is None:
                raise IncompatibleRadicands(
                    f"sqrt({self.r}) and sqrt({other.r}) need two radical layers"
                )
            return other.a, other.b * ratio
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Fraction(other), Fraction(0)
        return None

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return _approx(self, other) + other
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        return QuadExt(self.a + pair[0], self.b + pair[1], self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.r)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (float, complex)):
            return _approx(self, other) - other
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        return QuadExt(self.a - pair[0], self.b - pair[1], self.r)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return _approx(self, other) * other
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        c, d = pair
        return QuadExt(self.a * c + self.b * d * self.r, self.a * d + self.b * c, self.r)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.r
        return QuadExt(self.a / norm, -self.b / norm, self.r)

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return _approx(self, other) / other
        if isinstance(other, QuadExt):
            return self * other.inverse()
        pair = self._align(other)
        if pair is None:
            return NotImplemented
        if pair[0] == 0:
            raise DivisionByZero("division by zero")
        return QuadExt(self.a / pair[0], self.b / pair[0], self.r)

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / _approx(self, other)
        if self._align(other) is None:
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = base * result
            base = base * base
            n >>= 1
        return result

    # -- order and equality --------------------------------------------
    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger square wins; equality impossible
        return sa if self.a * self.a > self.b * self.b * self.r else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return (self.a, self.b, self.r) == (other.a, other.b, other.r)
        if isinstance(other, (int, Fraction)):
            return False
        if isinstance(other, (float, complex)):
            return _approx(self, other) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.r))

    def _cmp(self, other) -> int | None:
        if isinstance(other, float):
            x = float(self)
            return (x > other) - (x < other)
        if isinstance(other, (int, Fraction, QuadExt)):
            diff = self - other
            return diff.sign() if isinstance(diff, QuadExt) else (diff > 0) - (diff < 0)
        return None

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    # -- conversions ----------------------------------------------------
    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.r)

    def __complex__(self):
        return complex(float(self))

    def galois_conjugate(self):
        """The other root: ``a - b*sqrt(r)``."""
        return QuadExt(self.a, -self.b, self.r)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.r})"

    def __str__(self):
        return format_scalar(self)


def _approx(x, like):
    return complex(x) if isinstance(like, complex) else float(x)


# ---------------------------------------------------------------------
# mode predicates

def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadExt))


def to_exact(x):
    """Promote ints to Fraction; leave every other scalar untouched."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    return x


def to_approx(x):
    if isinstance(x, complex):
        return x
    return float(x)


def is_zero(x, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def sign(x, tol: float = DEFAULT_TOL) -> int:
    """Sign of a real scalar; approximate values within ``tol`` count as 0."""
    if isinstance(x, QuadExt):
        return x.sign()
    if isinstance(x, complex):
        if abs(x.imag) > tol:
            raise ValueError(f"sign of non-real value {x}")
        x = x.real
    if not is_exact(x) and abs(x) <= tol:
        return 0
    return (x > 0) - (x < 0)


def sqrt(x, tol: float = DEFAULT_TOL):
    """Square root staying exact when one radical layer suffices."""
    if isinstance(x, complex):
        return cmath.sqrt(x)
    s = sign(x, tol)
    if s < 0:
        raise ConstraintViolated(f"square root of negative value {format_scalar(x)}")
    if not is_exact(x):
        return math.sqrt(x) if s > 0 else 0.0
    if s == 0:
        return Fraction(0)
    if isinstance(x, QuadExt):
        root = _denest(x)
        if root is None:
            raise ModeUnavailable(f"sqrt({format_scalar(x)}) needs a nested radical")
        return root
    return QuadExt(0, 1, x)  # normalizes to Fraction on perfect squares


def _denest(x: QuadExt):
    # (u + v sqrt r)^2 = u^2 + v^2 r + 2uv sqrt r
    disc = rational_sqrt(x.a * x.a - x.b * x.b * x.r)
    if disc is None:
        return None
    for u2 in ((x.a + disc) / 2, (x.a - disc) / 2):
        u = rational_sqrt(u2)
        if u:
            root = QuadExt(u, x.b / (2 * u), x.r)
            return -root if sign(root) < 0 else root
    return None


# ---------------------------------------------------------------------
# explicit arithmetic entry point

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def scalar_arith(a, b, op: str):
    """Apply ``op`` in the smallest mode containing both operands."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}") from None
    a, b = to_exact(a), to_exact(b)
    if op == "div" and is_zero(b, 0.0):
        raise DivisionByZero(f"{format_scalar(a)} / 0")
    try:
        return fn(a, b)
    except ZeroDivisionError as exc:
        raise DivisionByZero(str(exc)) from exc


# ---------------------------------------------------------------------
# text grammar

_RAT = r"[+-]?\d+(?:/\d+)?"
_UDEC = r"(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"
_DEC = rf"[+-]?{_UDEC}"
_RAT_RE = re.compile(rf"^{_RAT}$")
_QUAD_RE = re.compile(rf"^({_RAT})([+-])({_RAT})\*sqrt\(({_RAT})\)$")
_DEC_RE = re.compile(rf"^{_DEC}$")
_COMPLEX_RE = re.compile(rf"^({_DEC})([+-])({_UDEC})j$")


def _parse_rational(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise MalformedInput(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(value, mode: str = "exact"):
    """Parse one scalar from the JSON text grammar.

    Accepts ``"p/q"``, ``"a+b*sqrt(r)"`` (a, b, r rationals), decimal
    literals (approximate) and ``"x+yj"`` complex literals.  JSON integers
    are exact and JSON floats approximate.  With ``mode="approx"`` every
    value is converted to floating point.
    """
    if isinstance(value, bool):
        raise MalformedInput("booleans are not scalars")
    if isinstance(value, int):
        x = Fraction(value)
    elif isinstance(value, float):
        x = value
    elif isinstance(value, str):
        x = _parse_text(value.replace(" ", ""))
    else:
        raise MalformedInput(f"cannot parse scalar from {value!r}")
    if mode == "approx":
        return to_approx(x)
    if mode != "exact":
        raise MalformedInput(f"unknown scalar mode {mode!r}")
    return x


def _parse_text(text: str):
    if _RAT_RE.match(text):
        return _parse_rational(text)
    m = _QUAD_RE.match(text)
    if m:
        a, op, b, r = m.groups()
        b = _parse_rational(b)
        r = _parse_rational(r)
        if r <= 0:
            raise MalformedInput(f"radicand must be positive in {text!r}")
        return QuadExt(_parse_rational(a), b if op == "+" else -b, r)
    if _DEC_RE.match(text):
        return float(text)
    m = _COMPLEX_RE.match(text)
    if m:
        re_part, op, im_part = m.groups()
        im = float(im_part)
        return complex(float(re_part), im if op == "+" else -im)
    raise MalformedInput(f"cannot parse scalar from {text!r}")


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Inverse of :func:`parse_scalar`; exact values round-trip bit-exactly."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return _format_rational(x)
    if isinstance(x, QuadExt):
        op = "-" if x.b < 0 else "+"
        return f"{_format_rational(x.a)}{op}{_format_rational(abs(x.b))}*sqrt({_format_rational(x.r)})"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        im = repr(x.imag)
        return f"{x.real!r}{im if im.startswith('-') else '+' + im}j"
    raise TypeError(f"not a scalar: {x!r}")
