"""Exact arithmetic in the ordered field Q(sqrt 5).

Every weight, load and ratio in the package is a :class:`Scalar`, i.e. a
number ``a + b*sqrt(5)`` with rational ``a`` and ``b``.  Rational numbers are
the special case ``b == 0``; the golden ratio is ``(1 + sqrt 5) / 2``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

__all__ = ["Scalar", "GOLDEN_RATIO", "SQRT5", "as_scalar", "parse_scalar"]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class Scalar:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        if isinstance(a, Scalar):
            if b:
                raise TypeError("cannot combine a Scalar with an extra sqrt5 part")
            a, b = a.a, a.b
        self.a = Fraction(a)
        self.b = Fraction(b)

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> "Scalar":
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Sign of ``a + b*sqrt 5`` decided without floating point."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins; equality is impossible
        return sa if self.a * self.a > 5 * self.b * self.b else sb

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.a, -self.b)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar._raw(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.b and not o.b:
            return Scalar._raw(self.a * o.a, self.b)
        return Scalar._raw(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.b:
            if not o.a:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(self.a / o.a, self.b / o.a)
        norm = o.a * o.a - 5 * o.b * o.b
        num = self * o.conjugate()
        return Scalar._raw(num.a / norm, num.b / norm)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** -n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __lt__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.b and not o.b:
            return self.a < o.a
        return (self - o).sign() < 0

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    # conversion --------------------------------------------------------------
    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(5)

    def __floor__(self) -> int:
        if not self.b:
            return math.floor(self.a)
        n = math.floor(float(self))
        while Scalar(n) > self:
            n -= 1
        while Scalar(n + 1) <= self:
            n += 1
        return n

    def __ceil__(self) -> int:
        return -math.floor(-self)

    def __str__(self):
        if not self.b:
            return str(self.a)
        mag = abs(self.b)
        root = "sqrt5" if mag == 1 else f"{mag}*sqrt5"
        if not self.a:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{root}"

    def __repr__(self):
        return f"Scalar({self})"

    def __reduce__(self):
        return (Scalar, (self.a, self.b))


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_scalar(x) -> Scalar:
    """Convert an int, Fraction, Scalar or scalar string into a :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Scalar(x)


ZERO = Scalar(0)
ONE = Scalar(1)
SQRT5 = Scalar(0, 1)
GOLDEN_RATIO = Scalar(Fraction(1, 2), Fraction(1, 2))

_RATIONAL = r"\(?\s*[+-]?\d+(?:\s*/\s*\d+)?\s*\)?"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<coef>{_RATIONAL})\s*\*\s*)?(?P<sqrt>sqrt5)\s*"
    rf"|\s*(?P<sign2>[+-])?\s*(?P<rat>{_RATIONAL})\s*"
)


def _parse_rational(text: str) -> Fraction:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    return Fraction(text.replace(" ", ""))


def parse_scalar(text: str) -> Scalar:
    """Parse strings such as ``"3"``, ``"5/2"`` or ``"1/2+1/2*sqrt5"``.

    Raises ``ValueError`` with the character offset of the first bad token.
    """
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {type(text).__name__}")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    seen = False
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        sign = m.group("sign") if m.group("sqrt") else m.group("sign2")
        if seen and sign is None:
            raise ValueError(f"malformed scalar {text!r} at position {pos}: missing operator")
        factor = -1 if sign == "-" else 1
        try:
            if m.group("sqrt"):
                coef = _parse_rational(m.group("coef")) if m.group("coef") else Fraction(1)
                b += factor * coef
            else:
                a += factor * _parse_rational(m.group("rat"))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed scalar {text!r} at position {pos}: {exc}") from None
        seen = True
        pos = m.end()
    if not seen:
        raise ValueError(f"malformed scalar {text!r} at position 0: empty")
    return Scalar._raw(a, b)
