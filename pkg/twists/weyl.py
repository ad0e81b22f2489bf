"""
Exact n-dimensional Heisenberg algebra [p_μ, x^ν] = -i δ_μ^ν.

Elements are stored normal ordered (every x to the left of every p) as a
map from (x multi-index, p multi-index) to a TruncPoly in h = 1/κ.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from logging import getLogger
from math import comb
from math import factorial
from typing import Iterator
from typing import Mapping

from twists.exceptions import DimensionMismatchError
from twists.exceptions import TruncationMismatchError
from twists.scalars import GaussianRational
from twists.scalars import I
from twists.scalars import ONE
from twists.scalars import TruncPoly
from twists.scalars import as_scalar

__all__ = ("WeylElement", "weyl_product", "commutator", "act")

logger = getLogger(__name__)

MultiIndex = tuple[int, ...]
WeylKey = tuple[MultiIndex, MultiIndex]

MINUS_I = -I
_SCALARS = (int, Fraction, GaussianRational, TruncPoly)


@lru_cache(maxsize=None)
def _reorder(beta: MultiIndex, gamma: MultiIndex) -> tuple[tuple[WeylKey, GaussianRational], ...]:
    # p^b x^c = Σ_k C(b,k) C(c,k) k! (-i)^k x^(c-k) p^(b-k), component by component
    ranges = [range(min(b, c) + 1) for b, c in zip(beta, gamma)]
    out = []
    for ks in product(*ranges):
        coeff = ONE
        for b, c, k in zip(beta, gamma, ks):
            if k:
                coeff = coeff * (comb(b, k) * comb(c, k) * factorial(k))
        total = sum(ks)
        if total:
            coeff = coeff * MINUS_I ** total
        x = tuple(c - k for c, k in zip(gamma, ks))
        p = tuple(b - k for b, k in zip(beta, ks))
        out.append(((x, p), coeff))
    return tuple(out)


def _add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(i + j for i, j in zip(a, b))


@lru_cache(maxsize=None)
def _monomial_product(left: WeylKey, right: WeylKey) -> tuple[tuple[WeylKey, GaussianRational], ...]:
    (alpha, beta), (gamma, delta) = left, right
    if not any(beta) or not any(gamma):
        return (((_add(alpha, gamma), _add(beta, delta)), ONE),)
    return tuple(
        ((_add(alpha, x), _add(p, delta)), c) for (x, p), c in _reorder(beta, gamma)
    )


def _render_monomial(key: WeylKey) -> str:
    alpha, beta = key
    parts = []
    for name, index in (("x", alpha), ("p", beta)):
        for mu, e in enumerate(index):
            if e == 1:
                parts.append(f"{name}{mu}")
            elif e:
                parts.append(f"{name}{mu}^{e}")
    return " ".join(parts) or "1"


class WeylElement:
    """Normal ordered Σ c_{αβ}(h) x^α p^β, truncated at h^order."""

    __slots__ = ("dim", "order", "terms")

    def __init__(self, dim: int, terms: Mapping[WeylKey, TruncPoly] | None = None, order: int = 0):
        if dim < 1:
            raise DimensionMismatchError("Weyl algebra needs dimension >= 1.")
        self.dim = dim
        self.order = order
        clean = {}
        for (alpha, beta), c in (terms or {}).items():
            if len(alpha) != dim or len(beta) != dim:
                raise DimensionMismatchError(
                    f"Multi-index {alpha}, {beta} does not fit dimension {dim}."
                )
            if not isinstance(c, TruncPoly):
                c = TruncPoly.constant(c, order)
            elif c.order != order:
                raise TruncationMismatchError(
                    f"Coefficient order {c.order} differs from element order {order}."
                )
            if c:
                clean[(tuple(alpha), tuple(beta))] = c
        self.terms: dict[WeylKey, TruncPoly] = clean

    def _new(self, terms: dict) -> WeylElement:
        obj = object.__new__(WeylElement)
        obj.dim = self.dim
        obj.order = self.order
        obj.terms = {k: v for k, v in terms.items() if v}
        return obj

    # Constructors

    @classmethod
    def zero(cls, dim: int, order: int) -> WeylElement:
        return cls(dim, {}, order)

    @classmethod
    def constant(cls, value, dim: int, order: int) -> WeylElement:
        zero = (0,) * dim
        if not isinstance(value, TruncPoly):
            value = TruncPoly.constant(value, order)
        return cls(dim, {(zero, zero): value}, order)

    @classmethod
    def one(cls, dim: int, order: int) -> WeylElement:
        return cls.constant(1, dim, order)

    @classmethod
    def _unit_vector(cls, dim: int, mu: int) -> MultiIndex:
        if not 0 <= mu < dim:
            raise DimensionMismatchError(f"Component {mu} outside dimension {dim}.")
        return tuple(1 if i == mu else 0 for i in range(dim))

    @classmethod
    def x(cls, mu: int, dim: int, order: int) -> WeylElement:
        return cls(dim, {(cls._unit_vector(dim, mu), (0,) * dim): TruncPoly.one(order)}, order)

    @classmethod
    def p(cls, mu: int, dim: int, order: int) -> WeylElement:
        return cls(dim, {((0,) * dim, cls._unit_vector(dim, mu)): TruncPoly.one(order)}, order)

    # Structure

    def _check(self, other: WeylElement):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"Weyl dimensions differ: {self.dim} != {other.dim}.")
        if self.order != other.order:
            raise TruncationMismatchError(
                f"Truncation orders differ: {self.order} != {other.order}."
            )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.dim == other.dim and self.order == other.order and self.terms == other.terms

    __hash__ = None

    @property
    def x_degree(self) -> int:
        return max((sum(alpha) for alpha, _ in self.terms), default=0)

    def is_momentum_polynomial(self) -> bool:
        return all(not any(alpha) for alpha, _ in self.terms)

    def is_position_polynomial(self) -> bool:
        return all(not any(beta) for _, beta in self.terms)

    def coefficient(self, alpha: MultiIndex, beta: MultiIndex) -> TruncPoly:
        return self.terms.get((tuple(alpha), tuple(beta)), TruncPoly.zero(self.order))

    def embed(self, dim: int, offset: int) -> WeylElement:
        """Copy into a ``dim``-dimensional algebra, component μ going to μ + offset."""
        if offset < 0 or offset + self.dim > dim:
            raise DimensionMismatchError(
                f"Cannot place dimension {self.dim} at offset {offset} in dimension {dim}."
            )
        pad_left = (0,) * offset
        pad_right = (0,) * (dim - offset - self.dim)
        obj = object.__new__(WeylElement)
        obj.dim = dim
        obj.order = self.order
        obj.terms = {
            (pad_left + a + pad_right, pad_left + b + pad_right): c
            for (a, b), c in self.terms.items()
        }
        return obj

    def sorted_items(self) -> Iterator[tuple[WeylKey, TruncPoly]]:
        def key(k):
            alpha, beta = k
            return (sum(alpha) + sum(beta), sum(alpha), tuple(-e for e in alpha + beta))

        for k in sorted(self.terms, key=key):
            yield k, self.terms[k]

    def __str__(self) -> str:
        parts = []
        for key, c in self.sorted_items():
            mono = _render_monomial(key)
            poly = str(c)
            if mono == "1":
                parts.append(f"({poly})" if " " in poly else poly)
            elif poly == "1":
                parts.append(mono)
            elif poly == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({poly}) {mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self) -> str:
        return f"WeylElement({self}, dim={self.dim}, order={self.order})"

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, _SCALARS):
            return WeylElement.constant(other, self.dim, self.order)
        return other

    def __neg__(self) -> WeylElement:
        return self._new({k: -v for k, v in self.terms.items()})

    def __add__(self, other) -> WeylElement:
        other = self._coerce(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other) -> WeylElement:
        other = self._coerce(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> WeylElement:
        return (-self) + other

    def scale(self, value) -> WeylElement:
        if isinstance(value, TruncPoly):
            return self._new({k: v * value for k, v in self.terms.items()})
        c = as_scalar(value)
        return self._new({k: v.scale(c) for k, v in self.terms.items()})

    def __mul__(self, other) -> WeylElement:
        if not isinstance(other, WeylElement):
            if isinstance(other, _SCALARS):
                return self.scale(other)
            return NotImplemented
        return weyl_product(self, other)

    def __rmul__(self, other) -> WeylElement:
        if isinstance(other, WeylElement):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, exponent: int) -> WeylElement:
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = WeylElement.one(self.dim, self.order)
        for _ in range(exponent):
            result = result * self
        return result


def weyl_product(x: WeylElement, y: WeylElement) -> WeylElement:
    """Normal ordered product, pushing each p of ``x`` past each x of ``y``."""
    x._check(y)
    out: dict = {}
    for k1, c1 in x.terms.items():
        for k2, c2 in y.terms.items():
            c = c1 * c2
            if not c:
                continue
            for key, n in _monomial_product(k1, k2):
                val = c if n == ONE else c.scale(n)
                prev = out.get(key)
                out[key] = val if prev is None else prev + val
    return x._new(out)


def commutator(x: WeylElement, y: WeylElement) -> WeylElement:
    return x * y - y * x


def act(operator: WeylElement, f: WeylElement) -> WeylElement:
    """
    operator ▷ f for a polynomial f(x): p_μ acts as -i∂_μ, x^μ by
    multiplication.
    """
    operator._check(f)
    if not f.is_position_polynomial():
        raise ValueError("The action is defined on position polynomials only.")
    out: dict = {}
    zero = (0,) * f.dim
    for (alpha, beta), c1 in operator.terms.items():
        order_beta = sum(beta)
        for (gamma, _), c2 in f.terms.items():
            if any(b > g for b, g in zip(beta, gamma)):
                continue
            n = 1
            for b, g in zip(beta, gamma):
                n *= factorial(g) // factorial(g - b)
            key = (_add(alpha, tuple(g - b for b, g in zip(beta, gamma))), zero)
            val = (c1 * c2).scale(MINUS_I ** order_beta * n)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return operator._new(out)
