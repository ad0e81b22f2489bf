"""
Noncommutative coordinates as elements of the Heisenberg algebra.

A = -a.p, D = i x.p and E = p_μ (for a chosen μ) carry the abstract
{A, E, D} algebra into the Weyl algebra, with a^μ = h v^μ. Through that
map the twist, its coproducts and the exponential coproduct formula are
all compared against the closed-form realizations

    x̂^μ = (x^μ + i a^μ (1-u) D)(1 - uA),
    ŷ^μ = (x^μ - i a^μ u D)(1 + (1-u)A).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from time import perf_counter
from typing import Optional

from pydantic import BaseModel
from pydantic import validator

from twists.borel import BorelElement
from twists.borel import Monomial
from twists.borel import TensorElement
from twists.borel import coproduct0
from twists.borel import flip
from twists.exceptions import DimensionMismatchError
from twists.exceptions import UnsupportedMethodError
from twists.momentum import DeformationContext
from twists.momentum import MomentumVector
from twists.momentum import k_inverse_series
from twists.reports import VerificationReport
from twists.reports import symbolic_report
from twists.scalars import GaussianRational
from twists.scalars import I
from twists.scalars import TruncPoly
from twists.scalars import parse_rational
from twists.twist import TwistFamily
from twists.twist import build_twist
from twists.twist import closed_form_coproduct
from twists.twist import deformed_coproduct
from twists.weyl import WeylElement
from twists.weyl import act
from twists.weyl import commutator

__all__ = (
    "RealizationSpec",
    "borel_to_weyl",
    "tensor_to_weyl",
    "realize_xhat",
    "realize_yhat",
    "phi_matrix",
    "verify_kappa_minkowski",
    "extract_xhat_from_twist",
    "extract_yhat_from_twist",
    "extract_xhat_from_coproduct",
    "extract_yhat_from_coproduct",
    "verify_realization",
    "k_inverse_operator",
    "coproduct_from_adx",
    "verify_adx_coproduct",
    "normal_ordered_inverse_twist_legs",
    "normal_ordered_inverse_twist_action",
    "twist_momentum_shift",
    "normal_ordered_twist_exponent",
    "verify_normal_ordered_twist",
)

logger = getLogger(__name__)


class RealizationSpec(BaseModel):
    u: Fraction
    v: tuple[Fraction, ...]
    order: int = 4

    class Config:
        arbitrary_types_allowed = True
        frozen = True

    @validator("u", pre=True)
    def parse_u(cls, value):
        if isinstance(value, str):
            return parse_rational(value)
        return Fraction(value)

    @validator("v", pre=True)
    def parse_v(cls, value):
        if isinstance(value, str):
            value = [p for p in value.replace(" ", "").split(",") if p]
        items = tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in value)
        if len(items) < 2:
            raise ValueError("Realizations need dimension >= 2.")
        if not any(items):
            raise ValueError("The deformation vector must be nonzero.")
        return items

    @validator("order")
    def positive_order(cls, value):
        if value < 1:
            raise ValueError("Truncation order must be at least 1.")
        return value

    @property
    def dim(self) -> int:
        return len(self.v)

    def a(self, mu: int) -> TruncPoly:
        """a^μ = h v^μ."""
        return TruncPoly([0, self.v[mu]], self.order)

    def x(self, mu: int) -> WeylElement:
        return WeylElement.x(mu, self.dim, self.order)

    def p(self, mu: int) -> WeylElement:
        return WeylElement.p(mu, self.dim, self.order)

    def one(self) -> WeylElement:
        return WeylElement.one(self.dim, self.order)

    def zero(self) -> WeylElement:
        return WeylElement.zero(self.dim, self.order)

    def a_dot_p(self) -> WeylElement:
        out = self.zero()
        for mu in range(self.dim):
            out = out + self.p(mu).scale(self.a(mu))
        return out

    def A(self) -> WeylElement:
        return -self.a_dot_p()

    def D(self) -> WeylElement:
        out = self.zero()
        for mu in range(self.dim):
            out = out + self.x(mu) * self.p(mu)
        return out.scale(I)


@lru_cache(maxsize=32)
def _images(spec: RealizationSpec, component: int) -> tuple[WeylElement, WeylElement, WeylElement]:
    if not 0 <= component < spec.dim:
        raise DimensionMismatchError(f"Component {component} outside dimension {spec.dim}.")
    return spec.A(), spec.p(component), spec.D()


def _monomial_image(mono: Monomial, spec: RealizationSpec, component: int) -> WeylElement:
    A, E, D = _images(spec, component)
    m, s, n = mono
    return (A**m) * (E**s) * (D**n)


def borel_to_weyl(x: BorelElement, spec: RealizationSpec, component: int = 0) -> WeylElement:
    """A ↦ -a.p, E ↦ p_component, D ↦ i x.p."""
    if x.order != spec.order:
        raise DimensionMismatchError(
            f"Element order {x.order} differs from realization order {spec.order}."
        )
    out = spec.zero()
    for mono, c in x.terms.items():
        out = out + _monomial_image(mono, spec, component).scale(c)
    return out


def tensor_to_weyl(t: TensorElement, spec: RealizationSpec, component: int = 0) -> WeylElement:
    """Leg j goes to the j-th copy of the Weyl algebra inside dimension legs·dim."""
    total = t.legs * spec.dim
    cache: dict = {}

    def leg(mono, j):
        if (mono, j) not in cache:
            cache[(mono, j)] = _monomial_image(mono, spec, component).embed(total, j * spec.dim)
        return cache[(mono, j)]

    out = WeylElement.zero(total, spec.order)
    for key, c in t.terms.items():
        term = WeylElement.one(total, spec.order)
        for j, mono in enumerate(key):
            term = term * leg(mono, j)
        out = out + term.scale(c)
    return out


def realize_xhat(spec: RealizationSpec) -> tuple[WeylElement, ...]:
    u = spec.u
    one, A, D = spec.one(), spec.A(), spec.D()
    right = one - A.scale(u)
    return tuple(
        (spec.x(mu) + D.scale(spec.a(mu)).scale(I * (1 - u))) * right
        for mu in range(spec.dim)
    )


def realize_yhat(spec: RealizationSpec) -> tuple[WeylElement, ...]:
    u = spec.u
    one, A, D = spec.one(), spec.A(), spec.D()
    right = one + A.scale(1 - u)
    return tuple(
        (spec.x(mu) - D.scale(spec.a(mu)).scale(I * u)) * right
        for mu in range(spec.dim)
    )


def phi_matrix(spec: RealizationSpec) -> tuple[tuple[WeylElement, ...], ...]:
    """φ[α][μ] = (δ_α^μ - (1-u) a^μ p_α)(1 + u a.p), so that x̂^μ = x^α φ_α^μ."""
    u = spec.u
    factor = spec.one() + spec.a_dot_p().scale(u)
    rows = []
    for alpha in range(spec.dim):
        row = []
        for mu in range(spec.dim):
            entry = spec.p(alpha).scale(spec.a(mu)).scale(-(1 - u))
            if alpha == mu:
                entry = entry + spec.one()
            row.append(entry * factor)
        rows.append(tuple(row))
    return tuple(rows)


def verify_kappa_minkowski(spec: RealizationSpec) -> VerificationReport:
    """
    [x̂^μ, x̂^ν] = i(a^μ x̂^ν - a^ν x̂^μ), the dual relations for ŷ with the
    opposite sign, [x̂^μ, ŷ^ν] = 0, [p_μ, x̂^ν] = (-iδ + i a^ν (1-u) p_μ)(1-uA)
    and x̂^μ = x^α φ_α^μ.
    """
    started = perf_counter()
    u, n = spec.u, spec.dim
    xh, yh, phi = realize_xhat(spec), realize_yhat(spec), phi_matrix(spec)
    one, A = spec.one(), spec.A()
    residuals = {}
    for mu in range(n):
        for nu in range(n):
            a_mu, a_nu = spec.a(mu), spec.a(nu)
            if mu < nu:
                residuals[f"[x̂{mu},x̂{nu}]"] = commutator(xh[mu], xh[nu]) - (
                    xh[nu].scale(a_mu) - xh[mu].scale(a_nu)
                ).scale(I)
                residuals[f"[ŷ{mu},ŷ{nu}]"] = commutator(yh[mu], yh[nu]) + (
                    yh[nu].scale(a_mu) - yh[mu].scale(a_nu)
                ).scale(I)
            residuals[f"[x̂{mu},ŷ{nu}]"] = commutator(xh[mu], yh[nu])
            expected = spec.p(mu).scale(a_nu).scale(I * (1 - u))
            if mu == nu:
                expected = expected - one.scale(I)
            residuals[f"[p{mu},x̂{nu}]"] = commutator(spec.p(mu), xh[nu]) - expected * (
                one - A.scale(u)
            )
        rebuilt = spec.zero()
        for alpha in range(n):
            rebuilt = rebuilt + spec.x(alpha) * phi[alpha][mu]
        residuals[f"x̂{mu} - x.φ"] = xh[mu] - rebuilt
    return symbolic_report("kappa-minkowski", u, spec.order, residuals, started, dim=n)


def _coordinate_action(t: TensorElement, spec: RealizationSpec, mu: int, component: int = 0) -> WeylElement:
    """m[t (▷⊗1)(x^μ⊗1)] = Σ (l ▷ x^μ)·r for t = Σ l⊗r."""
    x_mu = spec.x(mu)
    grouped: dict[Monomial, BorelElement] = {}
    for (left, right), c in t.terms.items():
        piece = BorelElement.monomial(right, t.order, c)
        grouped[left] = grouped[left] + piece if left in grouped else piece
    out = spec.zero()
    for left, right in grouped.items():
        acted = act(_monomial_image(left, spec, component), x_mu)
        if acted:
            out = out + acted * borel_to_weyl(right, spec, component)
    return out


def _family(spec: RealizationSpec, family: Optional[TwistFamily]) -> TwistFamily:
    if family is None:
        return build_twist(spec.u, spec.order)
    if family.order != spec.order:
        raise DimensionMismatchError("Twist and realization orders differ.")
    return family


def extract_xhat_from_twist(spec: RealizationSpec, family: Optional[TwistFamily] = None) -> tuple[WeylElement, ...]:
    """x̂^μ = m[F⁻¹(▷⊗1)(x^μ⊗1)]."""
    F_inv = _family(spec, family).F_inv
    return tuple(_coordinate_action(F_inv, spec, mu) for mu in range(spec.dim))


def extract_yhat_from_twist(spec: RealizationSpec, family: Optional[TwistFamily] = None) -> tuple[WeylElement, ...]:
    """ŷ^μ = m[F̃⁻¹(▷⊗1)(x^μ⊗1)] with F̃ = τ(F)."""
    F_inv = flip(_family(spec, family).F_inv)
    return tuple(_coordinate_action(F_inv, spec, mu) for mu in range(spec.dim))


def _from_coproduct(spec: RealizationSpec, flipped: bool) -> tuple[WeylElement, ...]:
    E = BorelElement.generator("E", spec.order)
    delta = closed_form_coproduct("E", spec.u, spec.order) - coproduct0(E)
    if flipped:
        delta = flip(delta)
    out = []
    for mu in range(spec.dim):
        total = spec.x(mu)
        for alpha in range(spec.dim):
            total = total + (spec.x(alpha) * _coordinate_action(delta, spec, mu, alpha)).scale(I)
        out.append(total)
    return tuple(out)


def extract_xhat_from_coproduct(spec: RealizationSpec) -> tuple[WeylElement, ...]:
    """x̂^μ = x^μ + i x^α m[(Δ-Δ0)p_α (▷⊗1)(x^μ⊗1)]."""
    return _from_coproduct(spec, flipped=False)


def extract_yhat_from_coproduct(spec: RealizationSpec) -> tuple[WeylElement, ...]:
    """Same route with the flipped coproduct τ∘Δ."""
    return _from_coproduct(spec, flipped=True)


def verify_realization(spec: RealizationSpec, family: Optional[TwistFamily] = None) -> VerificationReport:
    started = perf_counter()
    xh, yh = realize_xhat(spec), realize_yhat(spec)
    routes = {
        "twist x̂": (extract_xhat_from_twist(spec, family), xh),
        "coproduct x̂": (extract_xhat_from_coproduct(spec), xh),
        "twist ŷ": (extract_yhat_from_twist(spec, family), yh),
        "coproduct ŷ": (extract_yhat_from_coproduct(spec), yh),
    }
    residuals = {
        f"{label}{mu} - closed form": got[mu] - expected[mu]
        for label, (got, expected) in routes.items()
        for mu in range(spec.dim)
    }
    return symbolic_report("realization", spec.u, spec.order, residuals, started, dim=spec.dim)


def k_inverse_operator(spec: RealizationSpec) -> tuple[WeylElement, ...]:
    """K⁻¹_α(p) = p_α Σ_j g_j (a.p)^j to order h^N."""
    ap = spec.a_dot_p()
    series = spec.zero()
    power = spec.one()
    for g in k_inverse_series(spec.u, spec.order):
        series = series + power.scale(g)
        power = power * ap
    return tuple(spec.p(alpha) * series for alpha in range(spec.dim))


def coproduct_from_adx(spec: RealizationSpec, mu: int) -> WeylElement:
    """
    Δp_μ = exp(i K⁻¹_α(p) ⊗ ad_{x̂^α})(1⊗p_μ) with ad_{x̂}(f) = [f, x̂],
    as a momentum polynomial on two copies of the Weyl algebra.
    """
    n, order = spec.dim, spec.order
    total = 2 * n
    xhat = [x.embed(total, n) for x in realize_xhat(spec)]
    kinv = [k.embed(total, 0) for k in k_inverse_operator(spec)]
    term = spec.p(mu).embed(total, n)
    result = term
    for level in range(1, order + 2):
        nxt = WeylElement.zero(total, order)
        for alpha in range(n):
            nxt = nxt + kinv[alpha] * commutator(term, xhat[alpha])
        term = nxt.scale(GaussianRational(0, Fraction(1, level)))
        if not term:
            break
        result = result + term
    if not result.is_momentum_polynomial():
        raise ValueError("Nested commutators left position dependence behind.")
    return result


def verify_adx_coproduct(spec: RealizationSpec) -> VerificationReport:
    """The exponential ad formula reproduces Δp_μ to order h^N."""
    if spec.order < 2:
        raise ValueError("The ad coproduct check needs order >= 2.")
    started = perf_counter()
    delta = closed_form_coproduct("E", spec.u, spec.order)
    residuals = {
        f"Δp{mu} ad - closed form": coproduct_from_adx(spec, mu) - tensor_to_weyl(delta, spec, mu)
        for mu in range(spec.dim)
    }
    return symbolic_report("adx", spec.u, spec.order, residuals, started, dim=spec.dim)


def _dilate(k: MomentumVector, lam) -> MomentumVector:
    # :exp(λ D): ▷ e^{ik.x} = e^{i(1+λ)k.x}
    return k.scale(1 + lam)


def normal_ordered_inverse_twist_legs(
    u, k: MomentumVector, q: MomentumVector, ctx: DeformationContext
) -> tuple[MomentumVector, MomentumVector]:
    """
    Exponents of the two plane waves after :e^{A⊗D}: (u=0) or
    :e^{-D⊗A}: (u=1); A acts by its eigenvalue -a.k.
    """
    if u == 0:
        return k, _dilate(q, -ctx.az(k))
    if u == 1:
        return _dilate(k, ctx.az(q)), q
    raise UnsupportedMethodError(
        f"A closed normal-ordered inverse twist is known only for u in {{0, 1}}, not u={u}."
    )


def normal_ordered_inverse_twist_action(
    u, k: MomentumVector, q: MomentumVector, ctx: DeformationContext
) -> MomentumVector:
    left, right = normal_ordered_inverse_twist_legs(u, k, q, ctx)
    return left + right


def _plane_wave_eigenvalue(mono: Monomial, k: MomentumVector, mu: int, spec: RealizationSpec) -> TruncPoly:
    """A^m p_μ^s on e^{ik.x}: (-h v.k)^m k_μ^s."""
    m, s, n = mono
    if n:
        raise ValueError(f"D does not act diagonally on plane waves ({mono}).")
    A = TruncPoly([0, -sum((vi * ki for vi, ki in zip(spec.v, k)), Fraction(0))], spec.order)
    value = TruncPoly.constant(k[mu] ** s, spec.order)
    for _ in range(m):
        value = value * A
    return value


def _series_momentum(k: MomentumVector, spec: RealizationSpec) -> tuple[TruncPoly, ...]:
    return tuple(TruncPoly.constant(c, spec.order) for c in k)


def twist_momentum_shift(
    spec: RealizationSpec,
    k: MomentumVector,
    q: MomentumVector,
    family: Optional[TwistFamily] = None,
) -> tuple[TruncPoly, ...]:
    """
    Eigenvalue of (Δ-Δ0)p_μ on e^{ik.x}⊗e^{iq.x} as a series in h, with
    Δp_μ = FΔ0(p_μ)F⁻¹ conjugated from the twist.
    """
    if k.dim != spec.dim or q.dim != spec.dim:
        raise DimensionMismatchError(
            f"Momenta of dimension {k.dim}, {q.dim} for a realization of dimension {spec.dim}."
        )
    if not (k.is_exact and q.is_exact):
        raise ValueError("The series exponent needs rational momenta.")
    family = _family(spec, family)
    delta = deformed_coproduct("E", spec.u, spec.order, family)
    shift = []
    for mu in range(spec.dim):
        total = TruncPoly.constant(-(k[mu] + q[mu]), spec.order)
        for (left, right), c in delta.terms.items():
            total = total + (
                _plane_wave_eigenvalue(left, k, mu, spec) * _plane_wave_eigenvalue(right, q, mu, spec)
            ).scale(c)
        shift.append(total)
    return tuple(shift)


def normal_ordered_twist_exponent(
    spec: RealizationSpec,
    k: MomentumVector,
    q: MomentumVector,
    t=0,
    family: Optional[TwistFamily] = None,
) -> tuple[tuple[TruncPoly, ...], tuple[TruncPoly, ...]]:
    """
    Leg exponents after :exp(i((1-t) 1⊗x^α + t x^α⊗1)(Δ-Δ0)p_α): acts on
    e^{ik.x}⊗e^{iq.x}: the momenta act first and give the shift, the
    positions then multiply the legs by e^{it shift.x} and e^{i(1-t)shift.x}.
    """
    t = Fraction(t)
    shift = twist_momentum_shift(spec, k, q, family)
    left = tuple(c + s.scale(t) for c, s in zip(_series_momentum(k, spec), shift))
    right = tuple(c + s.scale(1 - t) for c, s in zip(_series_momentum(q, spec), shift))
    return left, right


def verify_normal_ordered_twist(
    spec: RealizationSpec,
    k: MomentumVector,
    q: MomentumVector,
    family: Optional[TwistFamily] = None,
) -> VerificationReport:
    """
    The twist-derived exponent times 1+u(1-u)(a.k)(a.q) equals
    k(1+u a.q) + (1-(1-u)a.k)q to order h^N, and for u = 0 (t = 0) and
    u = 1 (t = 1) each leg equals the one left by :e^{A⊗D}: or :e^{-D⊗A}:.
    """
    started = perf_counter()
    u, order = spec.u, spec.order
    h = TruncPoly.h(order)
    ak = h.scale(sum((vi * ki for vi, ki in zip(spec.v, k)), Fraction(0)))
    aq = h.scale(sum((vi * qi for vi, qi in zip(spec.v, q)), Fraction(0)))
    den = 1 + ak * aq * (u * (1 - u))
    left, right = normal_ordered_twist_exponent(spec, k, q, t=u if u in (0, 1) else 0, family=family)
    residuals = {}
    for mu in range(spec.dim):
        numerator = (1 + aq * u).scale(k[mu]) + (1 - ak * (1 - u)).scale(q[mu])
        residuals[f"exponent{mu} - D"] = (left[mu] + right[mu]) * den - numerator
    if u == 0:
        expected = (_series_momentum(k, spec), tuple((1 - ak).scale(c) for c in q))
    elif u == 1:
        expected = (tuple((1 + aq).scale(c) for c in k), _series_momentum(q, spec))
    else:
        expected = None
    if expected is not None:
        for name, got, want in (("left", left, expected[0]), ("right", right, expected[1])):
            for mu in range(spec.dim):
                residuals[f"{name}{mu} - closed normal form"] = got[mu] - want[mu]
    return symbolic_report("normal-twist", u, order, residuals, started, dim=spec.dim)
