"""
Exact scalars shared by every symbolic module.

GaussianRational is a complex number with rational real and imaginary
parts; TruncPoly is a polynomial in the deformation parameter h = 1/κ whose
arithmetic discards every term above a fixed truncation order.
"""
from __future__ import annotations

from fractions import Fraction
from logging import getLogger
from numbers import Rational
from typing import Iterable
from typing import Sequence
from typing import Union

from twists.exceptions import NotInvertibleError
from twists.exceptions import TruncationMismatchError

__all__ = ("GaussianRational", "TruncPoly", "Scalar", "as_scalar", "parse_rational")

logger = getLogger(__name__)

Scalar = Union["GaussianRational", int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (optional sign) or a plain decimal literal into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"Not a rational literal: {text!r}") from exc


def _new(re: Fraction, im: Fraction) -> GaussianRational:
    obj = object.__new__(GaussianRational)
    obj._re = re
    obj._im = im
    return obj


class GaussianRational:
    """
    re + i·im with both parts exact Fractions. Values are never mutated;
    Fraction keeps denominators positive and in lowest terms.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Rational | str = 0, im: Rational | str = 0):
        self._re = Fraction(re)
        self._im = Fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """
        Accepts "p/q", decimals, "p/q+r/si", "r/si", "i" and "-i".
        """
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("Empty complex literal.")
        if not s.endswith("i"):
            return _new(parse_rational(s), Fraction(0))
        body = s[:-1]
        split = 0
        for pos in range(len(body) - 1, 0, -1):
            if body[pos] in "+-" and body[pos - 1] not in "eE":
                split = pos
                break
        re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im = Fraction(1)
        elif im_part == "-":
            im = Fraction(-1)
        else:
            im = parse_rational(im_part)
        re = parse_rational(re_part) if re_part else Fraction(0)
        return _new(re, im)

    def __str__(self) -> str:
        re, im = self._re, self._im
        if not im:
            return str(re)
        if im == 1:
            im_str = "i"
        elif im == -1:
            im_str = "-i"
        else:
            im_str = f"{im}i"
        if not re:
            return im_str
        return f"{re}{'+' if im > 0 else ''}{im_str}"

    def __repr__(self) -> str:
        return f"GaussianRational('{self}')"

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    @property
    def is_real(self) -> bool:
        return not self._im

    def as_fraction(self) -> Fraction:
        if self._im:
            raise ValueError(f"{self} is not real.")
        return self._re

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __neg__(self) -> GaussianRational:
        return _new(-self._re, -self._im)

    def __pos__(self) -> GaussianRational:
        return self

    def __add__(self, other) -> GaussianRational:
        if isinstance(other, GaussianRational):
            return _new(self._re + other._re, self._im + other._im)
        if isinstance(other, (int, Fraction)):
            return _new(self._re + other, self._im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> GaussianRational:
        if isinstance(other, GaussianRational):
            return _new(self._re - other._re, self._im - other._im)
        if isinstance(other, (int, Fraction)):
            return _new(self._re - other, self._im)
        return NotImplemented

    def __rsub__(self, other) -> GaussianRational:
        return (-self).__add__(other)

    def __mul__(self, other) -> GaussianRational:
        if isinstance(other, GaussianRational):
            a, b, c, d = self._re, self._im, other._re, other._im
            if not b and not d:
                return _new(a * c, Fraction(0))
            return _new(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return _new(self._re * other, self._im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return _new(self._re, -self._im)

    conj = conjugate

    def norm(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    def inverse(self) -> GaussianRational:
        n = self.norm()
        if not n:
            raise NotInvertibleError("Cannot invert the zero scalar.")
        return _new(self._re / n, -self._im / n)

    inv = inverse

    def __truediv__(self, other) -> GaussianRational:
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise NotInvertibleError("Cannot divide by the zero scalar.")
            return _new(self._re / other, self._im / other)
        return NotImplemented

    def __rtruediv__(self, other) -> GaussianRational:
        return as_scalar(other) * self.inverse()

    def __pow__(self, exponent: int) -> GaussianRational:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** -exponent
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result


ZERO = _new(Fraction(0), Fraction(0))
ONE = _new(Fraction(1), Fraction(0))
I = _new(Fraction(0), Fraction(1))


def as_scalar(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, str):
        return GaussianRational.parse(value)
    if isinstance(value, complex):
        raise TypeError("Floating point complex values are not exact scalars.")
    if isinstance(value, (int, Fraction)):
        return _new(Fraction(value), Fraction(0))
    raise TypeError(f"Cannot use {value!r} as an exact scalar.")


class TruncPoly:
    """
    c_0 + c_1 h + ... + c_N h^N. Terms of degree above ``order`` are
    dropped by every operation.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("Truncation order must be non-negative.")
        values = [as_scalar(c) for c in coeffs][: order + 1]
        values.extend([ZERO] * (order + 1 - len(values)))
        self.coeffs: tuple[GaussianRational, ...] = tuple(values)
        self.order = order

    @classmethod
    def _raw(cls, coeffs: Sequence[GaussianRational], order: int) -> TruncPoly:
        obj = object.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.order = order
        return obj

    @classmethod
    def constant(cls, value, order: int) -> TruncPoly:
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> TruncPoly:
        return cls._raw([ZERO] * (order + 1), order)

    @classmethod
    def one(cls, order: int) -> TruncPoly:
        return cls.constant(1, order)

    @classmethod
    def h(cls, order: int) -> TruncPoly:
        """The deformation parameter itself (zero when order is 0)."""
        return cls([0, 1], order)

    def _check(self, other: TruncPoly):
        if self.order != other.order:
            raise TruncationMismatchError(
                f"Truncation orders differ: {self.order} != {other.order}."
            )

    @property
    def degree(self) -> int:
        for k in range(self.order, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def truncate(self, order: int) -> TruncPoly:
        return TruncPoly(self.coeffs, order)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncPoly):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __neg__(self) -> TruncPoly:
        return TruncPoly._raw([-c for c in self.coeffs], self.order)

    def __add__(self, other) -> TruncPoly:
        if isinstance(other, TruncPoly):
            self._check(other)
            return TruncPoly._raw(
                [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order
            )
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self + TruncPoly.constant(other, self.order)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> TruncPoly:
        if isinstance(other, (TruncPoly, GaussianRational, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other) -> TruncPoly:
        return (-self) + other

    def scale(self, value) -> TruncPoly:
        c = as_scalar(value)
        return TruncPoly._raw([c * a for a in self.coeffs], self.order)

    def __mul__(self, other) -> TruncPoly:
        if isinstance(other, TruncPoly):
            self._check(other)
            n = self.order
            out = [ZERO] * (n + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] = out[i + j] + a * b
            return TruncPoly._raw(out, n)
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def evaluate(self, h) -> GaussianRational:
        h = as_scalar(h)
        value = ZERO
        for c in reversed(self.coeffs):
            value = value * h + c
        return value

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            elif c.is_real:
                parts.append(f"{c} {mono}")
            else:
                parts.append(f"({c}) {mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"TruncPoly({self}, order={self.order})"
