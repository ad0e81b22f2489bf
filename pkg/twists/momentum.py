"""
Momentum-space calculus of the twisted star product of plane waves:
the deformed addition D(k, q), the antipode S(k), the maps K and K⁻¹,
the P function and its differential equation.

Rational formulas (D, S) stay exact on Fraction input. K, K⁻¹, P and
everything built on them are evaluated in floating point with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from logging import getLogger
from time import perf_counter
from typing import Callable
from typing import Iterator
from typing import NamedTuple
from typing import Sequence
from typing import Union

import numpy as np

from twists.exceptions import DimensionMismatchError
from twists.exceptions import SingularInputError
from twists.exceptions import UnsupportedMethodError
from twists.reports import VerificationReport
from twists.reports import numeric_report
from twists.scalars import parse_rational

__all__ = (
    "MomentumVector",
    "DeformationContext",
    "SampleScan",
    "OdeConvergence",
    "STAR_METHODS",
    "deformed_sum",
    "momentum_antipode",
    "rapidity",
    "k_inverse_series",
    "k_map",
    "k_inverse",
    "p_map",
    "realization_matrix",
    "verify_ode",
    "ode_convergence",
    "x_hat_flow",
    "algebroid_twist_action",
    "star_plane_waves",
    "verify_algebroid_twist",
    "verify_associativity",
    "relative_deviation",
    "random_momenta",
    "scan_samples",
)

logger = getLogger(__name__)

Number = Union[Fraction, float]

SERIES_THRESHOLD = 1e-8
FLOW_MIN_STEPS = 32
FLOW_MAX_STEPS = 1 << 14
FLOW_RTOL = 1e-13
MAX_DRAW_FACTOR = 20
STAR_METHODS = ("closed-form", "via-P", "via-twist", "via-algebroid")


def _number(value) -> Number:
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise TypeError(f"Cannot use {value!r} as a momentum component.")


@dataclass(frozen=True)
class MomentumVector:
    components: tuple

    def __post_init__(self):
        values = tuple(_number(c) for c in self.components)
        if not values:
            raise DimensionMismatchError("A momentum needs at least one component.")
        object.__setattr__(self, "components", values)

    @classmethod
    def parse(cls, text: str) -> MomentumVector:
        """Comma separated rational ("p/q") or decimal components."""
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if not parts:
            raise ValueError(f"Not a momentum vector: {text!r}")
        return cls(tuple(parse_rational(p) for p in parts))

    @classmethod
    def zero(cls, dim: int) -> MomentumVector:
        return cls((Fraction(0),) * dim)

    @classmethod
    def from_array(cls, values: Sequence[float]) -> MomentumVector:
        return cls(tuple(float(v) for v in values))

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.components)

    def _check(self, other: MomentumVector):
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"Momentum dimensions differ: {self.dim} != {other.dim}."
            )

    def dot(self, other: MomentumVector) -> Number:
        self._check(other)
        return sum((a * b for a, b in zip(self.components, other.components)), Fraction(0))

    def __add__(self, other: MomentumVector) -> MomentumVector:
        self._check(other)
        return MomentumVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: MomentumVector) -> MomentumVector:
        self._check(other)
        return MomentumVector(tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> MomentumVector:
        return MomentumVector(tuple(-a for a in self.components))

    def scale(self, value) -> MomentumVector:
        value = _number(value)
        return MomentumVector(tuple(value * a for a in self.components))

    def __iter__(self) -> Iterator[Number]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, item: int) -> Number:
        return self.components[item]

    def is_zero(self) -> bool:
        return not any(self.components)

    def as_array(self) -> np.ndarray:
        return np.array([float(c) for c in self.components], dtype=float)

    def __str__(self) -> str:
        return ", ".join(str(c) if isinstance(c, Fraction) else repr(c) for c in self.components)


@dataclass(frozen=True)
class DeformationContext:
    """Deformation vector a = v/κ and the family parameter u."""

    u: Number
    a: MomentumVector

    def __post_init__(self):
        object.__setattr__(self, "u", _number(self.u))

    @classmethod
    def build(cls, u, a) -> DeformationContext:
        if isinstance(a, str):
            a = MomentumVector.parse(a)
        elif not isinstance(a, MomentumVector):
            a = MomentumVector(tuple(a))
        return cls(u, a)

    @property
    def dim(self) -> int:
        return self.a.dim

    def az(self, k: MomentumVector) -> Number:
        return self.a.dot(k)

    def constraints(self, *momenta: MomentumVector) -> Iterator[tuple[str, Number]]:
        """Every quantity that must stay strictly positive for these momenta."""
        u = self.u
        zs = [self.az(k) for k in momenta]
        for z in zs:
            yield "1+u(a.k)", 1 + u * z
            yield "1-(1-u)(a.k)", 1 - (1 - u) * z
            yield "1-(1-2u)(a.k)", 1 - (1 - 2 * u) * z
            yield "1+(1-u)(exp(a.k)-1)", 1 + float(1 - u) * float(np.expm1(float(z)))
        for i, zk in enumerate(zs):
            for zq in zs[i + 1:]:
                yield "1+u(1-u)(a.k)(a.q)", 1 + u * (1 - u) * zk * zq

    def is_admissible(self, *momenta: MomentumVector) -> bool:
        return all(value > 0 for _, value in self.constraints(*momenta))

    def require_admissible(self, *momenta: MomentumVector):
        for expression, value in self.constraints(*momenta):
            if not value > 0:
                raise SingularInputError(expression, value)


def _reciprocal(value: Number, expression: str) -> Number:
    if value == 0:
        raise SingularInputError(expression, value)
    if isinstance(value, Fraction):
        return 1 / value
    return 1.0 / value


def deformed_sum(k: MomentumVector, q: MomentumVector, ctx: DeformationContext) -> MomentumVector:
    """D(k,q) = [k(1+u a.q) + (1-(1-u)a.k) q] / [1+u(1-u)(a.k)(a.q)]."""
    u = ctx.u
    zk, zq = ctx.az(k), ctx.az(q)
    inv = _reciprocal(1 + u * (1 - u) * zk * zq, "1+u(1-u)(a.k)(a.q)")
    return (k.scale(1 + u * zq) + q.scale(1 - (1 - u) * zk)).scale(inv)


def momentum_antipode(k: MomentumVector, ctx: DeformationContext) -> MomentumVector:
    """S(k) = -k / (1-(1-2u)a.k)."""
    inv = _reciprocal(1 - (1 - 2 * ctx.u) * ctx.az(k), "1-(1-2u)(a.k)")
    return k.scale(-inv)


def rapidity(k: MomentumVector, ctx: DeformationContext) -> float:
    """
    w(k) = ln((1+u a.k)/(1-(1-u)a.k)) = a.K⁻¹(k). Additive under the
    deformed sum: w(D(k,q)) = w(k) + w(q).
    """
    u, z = float(ctx.u), float(ctx.az(k))
    if not 1 + u * z > 0:
        raise SingularInputError("1+u(a.k)", 1 + u * z)
    if not 1 - (1 - u) * z > 0:
        raise SingularInputError("1-(1-u)(a.k)", 1 - (1 - u) * z)
    return float(np.log1p(u * z) - np.log1p(-(1 - u) * z))


def _g(u: Number, j: int) -> Number:
    return ((1 - u) ** (j + 1) - (-u) ** (j + 1)) / (j + 1)


def k_inverse_series(u, order: int) -> tuple[Fraction, ...]:
    """Exact g_j with K⁻¹(k) = k Σ_j g_j (a.k)^j, j = 0..order."""
    u = Fraction(u)
    return tuple(_g(u, j) for j in range(order + 1))


def k_map(k: MomentumVector, ctx: DeformationContext) -> MomentumVector:
    """K(k) = k (e^{a.k}-1)/(a.k) / ((1-u)e^{a.k}+u)."""
    u, z = float(ctx.u), float(ctx.az(k))
    if abs(z) < SERIES_THRESHOLD:
        ratio = 1 + z / 2 + z * z / 6
    else:
        ratio = float(np.expm1(z)) / z
    den = 1 + (1 - u) * float(np.expm1(z))
    if not den > 0:
        raise SingularInputError("1+(1-u)(exp(a.k)-1)", den)
    return MomentumVector.from_array(k.as_array() * (ratio / den))


def k_inverse(k: MomentumVector, ctx: DeformationContext) -> MomentumVector:
    """K⁻¹(k) = k ln[(1+u a.k)/(1-(1-u)a.k)] / (a.k)."""
    u, z = float(ctx.u), float(ctx.az(k))
    if abs(z) < SERIES_THRESHOLD:
        factor = sum(_g(u, j) * z**j for j in range(4))
    else:
        factor = rapidity(k, ctx) / z
    return MomentumVector.from_array(k.as_array() * factor)


def p_map(k: MomentumVector, q: MomentumVector, ctx: DeformationContext) -> MomentumVector:
    """P(k,q) with P(0,q) = q and P(k,0) = K(k)."""
    return deformed_sum(k_map(k, ctx), q, ctx)


def realization_matrix(p: np.ndarray, ctx: DeformationContext) -> np.ndarray:
    """φ[α, μ] = (δ_α^μ - (1-u) a^μ p_α)(1 + u a.p) at a numeric momentum."""
    u = float(ctx.u)
    a = ctx.a.as_array()
    p = np.asarray(p, dtype=float)
    return (np.eye(len(a)) - (1 - u) * np.outer(p, a)) * (1 + u * float(a @ p))


def _ode_rhs(P: np.ndarray, k: np.ndarray, ctx: DeformationContext) -> np.ndarray:
    return realization_matrix(P, ctx) @ k


def _require_admissible_path(
    k: MomentumVector, q: MomentumVector, ctx: DeformationContext, lams: Sequence[float]
):
    """P(λk,q) = D(K(λk),q) stays regular at every λ used."""
    ctx.require_admissible(k, q)
    u, zq = float(ctx.u), float(ctx.az(q))
    for lam in lams:
        kk = k_map(k.scale(lam), ctx)
        value = 1 + u * (1 - u) * float(ctx.az(kk)) * zq
        if not value > 0:
            raise SingularInputError("1+u(1-u)(a.K(λk))(a.q)", value)


def verify_ode(
    k: MomentumVector,
    q: MomentumVector,
    ctx: DeformationContext,
    steps: int = 10,
    step: float = 1e-4,
) -> float:
    """
    Max |dP(λk,q)/dλ - φ(P)k| over λ in [0, 1], the derivative taken by
    central differences of width ``step``.
    """
    nodes = [float(lam) for lam in np.linspace(0.0, 1.0, steps + 1)]
    _require_admissible_path(k, q, ctx, [x + d for x in nodes for d in (-step, 0.0, step)])
    k_arr = k.as_array()
    residual = 0.0
    for lam in nodes:
        forward = p_map(k.scale(lam + step), q, ctx).as_array()
        backward = p_map(k.scale(lam - step), q, ctx).as_array()
        slope = (forward - backward) / (2 * step)
        expected = _ode_rhs(p_map(k.scale(lam), q, ctx).as_array(), k_arr, ctx)
        residual = max(residual, float(np.max(np.abs(slope - expected))))
    logger.debug("ODE residual %.3e at step %s", residual, step)
    return residual


class OdeConvergence(NamedTuple):
    coarse: float
    fine: float
    order: float | None


def ode_convergence(
    k: MomentumVector,
    q: MomentumVector,
    ctx: DeformationContext,
    steps: int = 10,
    step: float = 1e-3,
) -> OdeConvergence:
    """Residuals at ``step`` and ``step/2`` and the observed convergence order."""
    coarse = verify_ode(k, q, ctx, steps, step)
    fine = verify_ode(k, q, ctx, steps, step / 2)
    if coarse < 1e-14 or fine < 1e-14:
        return OdeConvergence(coarse, fine, None)
    return OdeConvergence(coarse, fine, float(np.log2(coarse / fine)))


def _x_hat_velocity(P: np.ndarray, t: np.ndarray, ctx: DeformationContext) -> np.ndarray:
    return realization_matrix(P, ctx) @ t


def _rk4_flow(t: np.ndarray, q: np.ndarray, ctx: DeformationContext, steps: int) -> np.ndarray:
    h = 1.0 / steps
    P = q.copy()
    for _ in range(steps):
        s1 = _x_hat_velocity(P, t, ctx)
        s2 = _x_hat_velocity(P + 0.5 * h * s1, t, ctx)
        s3 = _x_hat_velocity(P + 0.5 * h * s2, t, ctx)
        s4 = _x_hat_velocity(P + h * s3, t, ctx)
        P = P + (h / 6) * (s1 + 2 * s2 + 2 * s3 + s4)
    return P


def x_hat_flow(
    t: MomentumVector,
    q: MomentumVector,
    ctx: DeformationContext,
    rtol: float = FLOW_RTOL,
) -> MomentumVector:
    """
    Exponent of e^{it.x̂} ▷ e^{iq.x}. Since x̂_μ ▷ e^{iP.x} = x_α φ_αμ(P) e^{iP.x},
    the exponent follows dP/dλ = φ(P)t from P(0) = q. Integrated with RK4,
    doubling the step count until two successive results agree to ``rtol``,
    then Richardson extrapolated.
    """
    t_arr, q_arr = t.as_array(), q.as_array()
    steps = FLOW_MIN_STEPS
    coarse = _rk4_flow(t_arr, q_arr, ctx, steps)
    while True:
        steps *= 2
        fine = _rk4_flow(t_arr, q_arr, ctx, steps)
        gap = float(np.max(np.abs(fine - coarse)))
        converged = gap <= rtol * max(1.0, float(np.max(np.abs(fine))))
        if converged or steps >= FLOW_MAX_STEPS:
            break
        coarse = fine
    if not converged:
        logger.warning("x̂ flow not converged after %s steps (gap %.3e)", steps, gap)
    return MomentumVector.from_array(fine + (fine - coarse) / 15)


def algebroid_twist_action(
    k: MomentumVector, q: MomentumVector, ctx: DeformationContext
) -> tuple[MomentumVector, MomentumVector]:
    """
    Plane-wave exponents left by F⁻¹ = e^{-ip⊗x} e^{iK⁻¹(p)⊗x̂} on
    e^{ik.x}⊗e^{iq.x}. The left wave is untouched and p on it gives k,
    the right wave is moved by the flow of K⁻¹(k).x̂ and then multiplied
    by e^{-ik.x}.
    """
    ctx.require_admissible(k, q)
    moved = x_hat_flow(k_inverse(k, ctx), q, ctx)
    return k, moved - k


def star_plane_waves(
    k: MomentumVector,
    q: MomentumVector,
    ctx: DeformationContext,
    method: str = "closed-form",
) -> MomentumVector:
    """Exponent of e^{ik.x} ⋆ e^{iq.x}."""
    if method == "closed-form":
        return deformed_sum(k, q, ctx)
    if method == "via-P":
        return p_map(k_inverse(k, ctx), q, ctx)
    if method == "via-twist":
        from twists.realizations import normal_ordered_inverse_twist_action

        return normal_ordered_inverse_twist_action(ctx.u, k, q, ctx)
    if method == "via-algebroid":
        left, right = algebroid_twist_action(k, q, ctx)
        return left + right
    raise UnsupportedMethodError(
        f"Unknown star product method {method!r}; expected one of {', '.join(STAR_METHODS)}."
    )


def relative_deviation(x: MomentumVector, y: MomentumVector) -> float:
    """max|x - y| / max(1, max|y|); exactly 0.0 for equal exact vectors."""
    x._check(y)
    if x.is_exact and y.is_exact:
        diff = max(abs(a - b) for a, b in zip(x, y))
        scale = max(Fraction(1), max(abs(b) for b in y))
        return float(diff / scale)
    xa, ya = x.as_array(), y.as_array()
    return float(np.max(np.abs(xa - ya)) / max(1.0, float(np.max(np.abs(ya)))))


def verify_algebroid_twist(
    k: MomentumVector,
    q: MomentumVector,
    ctx: DeformationContext,
    tol: float = 1e-12,
    order: int = 0,
) -> VerificationReport:
    started = perf_counter()
    ctx.require_admissible(k, q)
    left, right = algebroid_twist_action(k, q, ctx)
    deviation = relative_deviation(left + right, deformed_sum(k, q, ctx))
    return numeric_report("algebroid", ctx.u, order, deviation, tol, started, dim=ctx.dim)


def random_momenta(rng: np.random.Generator, dim: int, exact: bool = True) -> MomentumVector:
    """A random momentum with small rational (or float) components."""
    if exact:
        nums = rng.integers(-9, 10, size=dim)
        dens = rng.integers(1, 6, size=dim)
        return MomentumVector(tuple(Fraction(int(n), int(d)) for n, d in zip(nums, dens)))
    return MomentumVector.from_array(rng.uniform(-5.0, 5.0, size=dim))


class SampleScan(NamedTuple):
    max_deviation: float
    checked: int
    skipped: int


def scan_samples(
    ctx: DeformationContext,
    check: Callable[..., float],
    samples: int,
    seed: int,
    arity: int = 2,
    exact: bool = True,
    max_draws: int | None = None,
) -> SampleScan:
    """
    Run ``check(*momenta)`` on seeded random tuples until ``samples`` of
    them have been checked. Tuples that are inadmissible, or for which the
    check hits a singular input, are skipped and counted. Drawing stops
    after ``max_draws`` tuples (default MAX_DRAW_FACTOR * samples).
    """
    if max_draws is None:
        max_draws = MAX_DRAW_FACTOR * samples
    rng = np.random.default_rng(seed)
    worst, checked, skipped = 0.0, 0, 0
    while checked < samples and checked + skipped < max_draws:
        momenta = [random_momenta(rng, ctx.dim, exact) for _ in range(arity)]
        if not ctx.is_admissible(*momenta):
            skipped += 1
            continue
        try:
            deviation = check(*momenta)
        except SingularInputError:
            skipped += 1
            continue
        worst = max(worst, deviation)
        checked += 1
    if skipped:
        logger.warning("Skipped %s inadmissible samples at u=%s", skipped, ctx.u)
    if checked < samples:
        logger.warning("Only %s of %s samples admissible at u=%s", checked, samples, ctx.u)
    return SampleScan(worst, checked, skipped)


def verify_associativity(ctx: DeformationContext, samples: int, seed: int = 0, exact: bool = True) -> SampleScan:
    """D(D(k,q),r) = D(k,D(q,r)) on random triples."""

    def check(k, q, r):
        kq, qr = deformed_sum(k, q, ctx), deformed_sum(q, r, ctx)
        if not ctx.is_admissible(kq, r) or not ctx.is_admissible(k, qr):
            raise SingularInputError("intermediate sum")
        return relative_deviation(deformed_sum(kq, r, ctx), deformed_sum(k, qr, ctx))

    return scan_samples(ctx, check, samples, seed, arity=3, exact=exact)
