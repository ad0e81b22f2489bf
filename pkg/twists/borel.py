"""
PBW ordered enveloping algebra of {A, E, D | [A,D]=A, [E,D]=E, [A,E]=0}
and its tensor powers.

A monomial A^m E^s D^n is the triple (m, s, n). A carries deformation grade
1 (it absorbs 1/κ), E and D carry grade 0, and every element is truncated
at a fixed order N in A-degree (total A-degree across legs for tensors).
All reorderings follow from D^b A^c E^f = A^c E^f (D - c - f)^b.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from math import comb
from typing import Callable
from typing import ClassVar
from typing import Iterable
from typing import Iterator
from typing import Mapping

from twists.exceptions import LegMismatchError
from twists.exceptions import NotInvertibleError
from twists.exceptions import SeriesDomainError
from twists.exceptions import TruncationMismatchError
from twists.scalars import GaussianRational
from twists.scalars import ONE
from twists.scalars import as_scalar

__all__ = (
    "Monomial",
    "UNIT",
    "BorelElement",
    "TensorElement",
    "monomial_product",
    "coproduct0",
    "coproduct0_on_leg",
    "counit0",
    "counit_on_leg",
    "antipode0",
    "antipode0_terms",
    "exp_series",
    "log_series",
    "inverse_series",
    "flip",
    "tensor",
    "embed",
    "multiply_legs",
)

logger = getLogger(__name__)

Monomial = tuple[int, int, int]
UNIT: Monomial = (0, 0, 0)
GENERATORS: dict[str, Monomial] = {"A": (1, 0, 0), "E": (0, 1, 0), "D": (0, 0, 1)}


@lru_cache(maxsize=None)
def monomial_product(left: Monomial, right: Monomial) -> tuple[tuple[Monomial, int], ...]:
    """
    (A^m E^s D^n)(A^c E^f D^b) = A^(m+c) E^(s+f) (D - c - f)^n D^b,
    with the binomial expanded. Coefficients are integers.
    """
    m, s, n = left
    c, f, b = right
    w = c + f
    if not n or not w:
        return (((m + c, s + f, n + b), 1),)
    return tuple(
        ((m + c, s + f, j + b), comb(n, j) * (-w) ** (n - j)) for j in range(n + 1)
    )


@lru_cache(maxsize=1 << 18)
def _tensor_monomial_product(left: tuple, right: tuple) -> tuple:
    results = [((), 1)]
    for a, b in zip(left, right):
        leg = monomial_product(a, b)
        results = [(key + (mono,), n * k) for key, n in results for mono, k in leg]
    return tuple(results)


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for symbol, power in zip("AED", mono):
        if power == 1:
            parts.append(symbol)
        elif power:
            parts.append(f"{symbol}^{power}")
    return " ".join(parts) or "1"


def _render_terms(items: Iterable[tuple[str, GaussianRational]]) -> str:
    rendered = []
    for mono, coeff in items:
        if mono == "1":
            rendered.append(str(coeff) if coeff.is_real else f"({coeff})")
        elif coeff == 1:
            rendered.append(mono)
        elif coeff == -1:
            rendered.append(f"-{mono}")
        elif coeff.is_real:
            rendered.append(f"{coeff} {mono}")
        else:
            rendered.append(f"({coeff}) {mono}")
    if not rendered:
        return "0"
    return " + ".join(rendered).replace("+ -", "- ")


class _GradedElement:
    """
    Sparse map from keys to nonzero exact scalars, truncated at ``order``.
    Never mutated after construction.
    """

    __slots__ = ("terms", "order")
    kind: ClassVar[str] = "element"

    terms: dict
    order: int

    # Subclass hooks
    def _grade(self, key) -> int:
        raise NotImplementedError

    def _multiply_keys(self, left, right):
        raise NotImplementedError

    def _render_key(self, key) -> str:
        raise NotImplementedError

    def _sort_key(self, key):
        raise NotImplementedError

    def _unit_key(self):
        raise NotImplementedError

    def _new(self, terms: dict):
        """Same shape as self, terms already exact; zero and over-order terms are dropped."""
        obj = object.__new__(type(self))
        self._copy_shape(obj)
        grade = self._grade
        obj.terms = {k: v for k, v in terms.items() if v and grade(k) <= self.order}
        return obj

    def _copy_shape(self, obj):
        obj.order = self.order

    def _check(self, other):
        if type(self) is not type(other):
            raise TypeError(f"Cannot combine {self.kind} with {other.kind}.")
        if self.order != other.order:
            raise TruncationMismatchError(
                f"Truncation orders differ: {self.order} != {other.order}."
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == self.unit_like() * other
        if type(self) is not type(other):
            return NotImplemented
        try:
            self._check(other)
        except TruncationMismatchError:
            return False
        return self.terms == other.terms

    __hash__ = None

    def coefficient(self, key) -> GaussianRational:
        return self.terms.get(key, as_scalar(0))

    def unit_like(self):
        return self._new({self._unit_key(): ONE})

    def zero_like(self):
        return self._new({})

    def grade_part(self, grade: int):
        return self._new({k: v for k, v in self.terms.items() if self._grade(k) == grade})

    def grades(self) -> list[int]:
        return sorted({self._grade(k) for k in self.terms})

    def drop_term(self, key):
        if key not in self.terms:
            raise KeyError(f"No term {self._render_key(key)} in element.")
        return self._new({k: v for k, v in self.terms.items() if k != key})

    def truncate(self, order: int):
        obj = object.__new__(type(self))
        self._copy_shape(obj)
        obj.order = order
        obj.terms = {k: v for k, v in self.terms.items() if self._grade(k) <= order}
        return obj

    def sorted_items(self) -> Iterator[tuple]:
        for key in sorted(self.terms, key=self._sort_key):
            yield key, self.terms[key]

    def __str__(self) -> str:
        return _render_terms(
            (self._render_key(k), v) for k, v in self.sorted_items()
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self}, order={self.order})"

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.unit_like().scale(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, _GradedElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if not isinstance(other, _GradedElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        c = as_scalar(value)
        if not c:
            return self.zero_like()
        return self._new({k: v * c for k, v in self.terms.items()})

    def _by_grade(self) -> list[list[tuple]]:
        buckets: list[list[tuple]] = [[] for _ in range(self.order + 1)]
        for k, v in self.terms.items():
            buckets[self._grade(k)].append((k, v))
        return buckets

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        if not isinstance(other, _GradedElement):
            return NotImplemented
        self._check(other)
        order = self.order
        buckets = other._by_grade()
        grade = self._grade
        mul = self._multiply_keys
        out: dict = {}
        for k1, c1 in self.terms.items():
            for g2 in range(order - grade(k1) + 1):
                for k2, c2 in buckets[g2]:
                    c = c1 * c2
                    for key, n in mul(k1, k2):
                        val = c if n == 1 else c * n
                        prev = out.get(key)
                        out[key] = val if prev is None else prev + val
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.scale(as_scalar(other).inverse())
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = self.unit_like()
        for _ in range(exponent):
            result = result * self
        return result


class BorelElement(_GradedElement):
    """Element of U({A, E, D}) in PBW order A^m E^s D^n, truncated at A-degree N."""

    __slots__ = ()
    kind = "BorelElement"

    def __init__(self, terms: Mapping[Monomial, object] | None = None, order: int = 0):
        if order < 0:
            raise ValueError("Truncation order must be non-negative.")
        self.order = order
        self.terms = {}
        for key, value in (terms or {}).items():
            key = tuple(key)
            if len(key) != 3 or any(not isinstance(p, int) or p < 0 for p in key):
                raise ValueError(f"Not a PBW monomial: {key!r}.")
            c = as_scalar(value)
            if c and key[0] <= order:
                prev = self.terms.get(key)
                self.terms[key] = c if prev is None else prev + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def one(cls, order: int) -> BorelElement:
        return cls({UNIT: 1}, order)

    @classmethod
    def zero(cls, order: int) -> BorelElement:
        return cls({}, order)

    @classmethod
    def monomial(cls, mono: Monomial, order: int, coeff=1) -> BorelElement:
        return cls({mono: coeff}, order)

    @classmethod
    def generator(cls, name: str, order: int) -> BorelElement:
        try:
            return cls.monomial(GENERATORS[name], order)
        except KeyError:
            raise ValueError(f"Unknown generator {name!r}; expected one of A, E, D.") from None

    def _grade(self, key: Monomial) -> int:
        return key[0]

    def _multiply_keys(self, left: Monomial, right: Monomial):
        return monomial_product(left, right)

    def _render_key(self, key: Monomial) -> str:
        return _render_monomial(key)

    def _sort_key(self, key: Monomial):
        return key[0], sum(key), key

    def _unit_key(self) -> Monomial:
        return UNIT


class TensorElement(_GradedElement):
    """
    Element of U⊗U (legs=2) or U⊗U⊗U (legs=3). Keys are tuples of PBW
    monomials, one per leg; truncation is on the total A-degree.
    """

    __slots__ = ("legs",)
    kind = "TensorElement"

    def __init__(self, legs: int, terms: Mapping[tuple, object] | None = None, order: int = 0):
        if legs < 1:
            raise LegMismatchError("A tensor element needs at least one leg.")
        if order < 0:
            raise ValueError("Truncation order must be non-negative.")
        self.legs = legs
        self.order = order
        self.terms = {}
        for key, value in (terms or {}).items():
            key = tuple(tuple(m) for m in key)
            if len(key) != legs or any(len(m) != 3 for m in key):
                raise LegMismatchError(f"Key {key!r} does not have {legs} legs.")
            c = as_scalar(value)
            if c and self._grade(key) <= order:
                prev = self.terms.get(key)
                self.terms[key] = c if prev is None else prev + c
        self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def one(cls, legs: int, order: int) -> TensorElement:
        return cls(legs, {(UNIT,) * legs: 1}, order)

    @classmethod
    def zero(cls, legs: int, order: int) -> TensorElement:
        return cls(legs, {}, order)

    def _copy_shape(self, obj):
        obj.order = self.order
        obj.legs = self.legs

    def _check(self, other):
        super()._check(other)
        if self.legs != other.legs:
            raise LegMismatchError(f"Leg counts differ: {self.legs} != {other.legs}.")

    def _grade(self, key: tuple) -> int:
        return sum(m[0] for m in key)

    def _multiply_keys(self, left: tuple, right: tuple):
        return _tensor_monomial_product(left, right)

    def _render_key(self, key: tuple) -> str:
        return "⊗".join(_render_monomial(m) for m in key)

    def _sort_key(self, key: tuple):
        return self._grade(key), sum(sum(m) for m in key), key

    def _unit_key(self) -> tuple:
        return (UNIT,) * self.legs

    def extend_right(self) -> TensorElement:
        """x ↦ x⊗1."""
        return embed(self, tuple(range(self.legs)), self.legs + 1)

    def extend_left(self) -> TensorElement:
        """x ↦ 1⊗x."""
        return embed(self, tuple(range(1, self.legs + 1)), self.legs + 1)

    def map_leg(self, leg: int, fn: Callable[[Monomial], Iterable[tuple[Monomial, object]]]) -> TensorElement:
        """Apply a linear map, given on monomials, to one leg."""
        out: dict = {}
        for key, c in self.terms.items():
            for mono, k in fn(key[leg]):
                new_key = key[:leg] + (mono,) + key[leg + 1:]
                val = c * k
                prev = out.get(new_key)
                out[new_key] = val if prev is None else prev + val
        return self._new(out)


def tensor(*factors: BorelElement) -> TensorElement:
    """x⊗y(⊗z), truncated at the shared order in total A-degree."""
    if len(factors) < 2:
        raise LegMismatchError("tensor() needs at least two factors.")
    order = factors[0].order
    for f in factors[1:]:
        factors[0]._check(f)
    terms: dict = {(): ONE}
    for f in factors:
        terms = {
            key + (mono,): c * v
            for key, c in terms.items()
            for mono, v in f.terms.items()
            if sum(m[0] for m in key) + mono[0] <= order
        }
    return TensorElement(len(factors), terms, order)


def embed(t: TensorElement | BorelElement, positions: tuple[int, ...], legs: int) -> TensorElement:
    """
    Place leg i of ``t`` at position ``positions[i]`` of a ``legs``-fold
    tensor, with the unit on every other leg (x⊗1, 1⊗x, x_13, ...).
    """
    if isinstance(t, BorelElement):
        items = (((k,), v) for k, v in t.terms.items())
        source_legs = 1
    else:
        items = t.terms.items()
        source_legs = t.legs
    if len(positions) != source_legs or len(set(positions)) != source_legs:
        raise LegMismatchError(f"Cannot embed {source_legs} legs at positions {positions}.")
    out = {}
    for key, c in items:
        new_key = [UNIT] * legs
        for mono, pos in zip(key, positions):
            new_key[pos] = mono
        out[tuple(new_key)] = c
    return TensorElement(legs, out, t.order)


def flip(x: TensorElement) -> TensorElement:
    """τ(c⊗d) = d⊗c."""
    if not isinstance(x, TensorElement) or x.legs != 2:
        raise LegMismatchError("flip is defined on two-leg tensors only.")
    return x._new({(k[1], k[0]): v for k, v in x.terms.items()})


@lru_cache(maxsize=None)
def _coproduct0_monomial(mono: Monomial) -> tuple[tuple[tuple[Monomial, Monomial], int], ...]:
    # Δ0(A)^m Δ0(E)^s Δ0(D)^n is already leg-wise PBW ordered.
    m, s, n = mono
    return tuple(
        (((i, j, k), (m - i, s - j, n - k)), comb(m, i) * comb(s, j) * comb(n, k))
        for i in range(m + 1)
        for j in range(s + 1)
        for k in range(n + 1)
    )


def coproduct0(x: BorelElement) -> TensorElement:
    """Undeformed coproduct: the homomorphism with Δ0(g) = g⊗1 + 1⊗g."""
    out: dict = {}
    for mono, c in x.terms.items():
        for key, n in _coproduct0_monomial(mono):
            val = c * n
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return TensorElement(2, out, x.order)


def coproduct0_on_leg(t: TensorElement, leg: int) -> TensorElement:
    """(id⊗..⊗Δ0⊗..⊗id) on leg ``leg``; the result has one more leg."""
    out: dict = {}
    for key, c in t.terms.items():
        for (left, right), n in _coproduct0_monomial(key[leg]):
            new_key = key[:leg] + (left, right) + key[leg + 1:]
            val = c * n
            prev = out.get(new_key)
            out[new_key] = val if prev is None else prev + val
    return TensorElement(t.legs + 1, out, t.order)


def counit0(x: BorelElement) -> GaussianRational:
    return x.coefficient(UNIT)


def counit_on_leg(t: TensorElement, leg: int) -> BorelElement | TensorElement:
    """(..⊗ε⊗..) on leg ``leg``; a two-leg tensor becomes a BorelElement."""
    terms = {
        key[:leg] + key[leg + 1:]: c for key, c in t.terms.items() if key[leg] == UNIT
    }
    if t.legs == 2:
        return BorelElement({k[0]: v for k, v in terms.items()}, t.order)
    return TensorElement(t.legs - 1, terms, t.order)


@lru_cache(maxsize=None)
def antipode0_terms(mono: Monomial) -> tuple[tuple[Monomial, int], ...]:
    # S0(A^m E^s D^n) = (-1)^(m+s+n) D^n E^s A^m
    m, s, n = mono
    sign = -1 if (m + s + n) % 2 else 1
    return tuple((k, sign * v) for k, v in monomial_product((0, 0, n), (m, s, 0)))


def antipode0(x: BorelElement) -> BorelElement:
    out: dict = {}
    for mono, c in x.terms.items():
        for key, n in antipode0_terms(mono):
            val = c * n
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return x._new(out)


def multiply_legs(t: TensorElement) -> BorelElement:
    """μ(x⊗y) = xy."""
    if t.legs != 2:
        raise LegMismatchError("μ is defined on two-leg tensors only.")
    out: dict = {}
    for (left, right), c in t.terms.items():
        for key, n in monomial_product(left, right):
            val = c * n
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return BorelElement({}, t.order)._new(out)


def _grade_zero_offender(x: _GradedElement, allowed: _GradedElement) -> _GradedElement:
    return x.grade_part(0) - allowed.grade_part(0)


def exp_series(x: _GradedElement):
    """exp(x) = Σ x^k/k!, exact up to the truncation order of x."""
    offender = x.grade_part(0)
    if offender:
        raise SeriesDomainError(f"exp argument has grade-0 component {offender}.")
    result = x.unit_like()
    power = result
    for k in range(1, x.order + 1):
        power = (power * x).scale(Fraction(1, k))
        if power.is_zero():
            break
        result = result + power
    logger.debug("exp_series: %s terms at order %s", len(result.terms), x.order)
    return result


def log_series(x: _GradedElement):
    """log(1 + y) = Σ (-1)^(k+1) y^k/k for y of grade >= 1."""
    unit = x.unit_like()
    offender = _grade_zero_offender(x, unit)
    if offender:
        raise SeriesDomainError(
            f"log argument must be 1 + (grade >= 1); offending grade-0 component {offender}."
        )
    y = x - unit
    result = x.zero_like()
    power = unit
    for k in range(1, x.order + 1):
        power = power * y
        if power.is_zero():
            break
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
    return result


def inverse_series(x: _GradedElement):
    """Neumann inverse of c(1 + y), y of grade >= 1, c a nonzero scalar."""
    unit = x.unit_like()
    c = x.coefficient(x._unit_key())
    offender = _grade_zero_offender(x, unit.scale(c))
    if offender:
        raise NotInvertibleError(
            f"Grade-0 part is not a scalar; offending component {offender}."
        )
    if not c:
        raise NotInvertibleError("Grade-0 part is zero; element is not invertible.")
    c_inv = c.inverse()
    minus_y = unit - x.scale(c_inv)
    result = unit
    power = unit
    for _ in range(x.order):
        power = power * minus_y
        if power.is_zero():
            break
        result = result + power
    return result.scale(c_inv)
