"""
The one-parameter family of Jordanian twists

    F_u = exp(-u(DA⊗1 + 1⊗DA)) exp(-ln(1+A)⊗D) exp(Δ0(uDA))

and every Hopf-algebraic identity it is claimed to satisfy, checked grade
by grade in the truncated PBW algebra. Each ``verify_*`` function accepts an
optional ready-made ``family`` so that deliberately corrupted twists can be
fed through the same checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from logging import getLogger
from time import perf_counter

from twists.borel import BorelElement
from twists.borel import TensorElement
from twists.borel import antipode0
from twists.borel import antipode0_terms
from twists.borel import coproduct0
from twists.borel import coproduct0_on_leg
from twists.borel import counit_on_leg
from twists.borel import embed
from twists.borel import exp_series
from twists.borel import flip
from twists.borel import inverse_series
from twists.borel import log_series
from twists.borel import multiply_legs
from twists.borel import tensor
from twists.exceptions import NotInvertibleError
from twists.exceptions import TwistError
from twists.exceptions import UnsupportedMethodError
from twists.reports import VerificationReport
from twists.reports import symbolic_report

__all__ = (
    "TwistFamily",
    "assemble_twist",
    "build_twist",
    "exponential_twist",
    "deformed_coproduct",
    "closed_form_coproduct",
    "deformed_antipode",
    "deformed_antipode_map",
    "closed_form_antipode",
    "r_matrix",
    "classical_r_matrix",
    "log_twist_closed_form",
    "verify_cocycle",
    "verify_normalization",
    "verify_inverse",
    "verify_coproduct",
    "verify_counit",
    "verify_antipode",
    "verify_r_matrix",
    "verify_quasitriangular",
    "verify_yang_baxter",
    "verify_coboundary",
    "verify_log_expansion",
)

logger = getLogger(__name__)

GENERATOR_NAMES = ("E", "D")


@dataclass(frozen=True)
class TwistFamily:
    u: Fraction
    order: int
    F: TensorElement
    F_inv: TensorElement

    def with_twist(self, F: TensorElement) -> TwistFamily:
        """Same u and order, another F; the inverse is recomputed by series."""
        return TwistFamily(self.u, self.order, F, inverse_series(F))


class _Generators:
    def __init__(self, order: int):
        self.one = BorelElement.one(order)
        self.A = BorelElement.generator("A", order)
        self.E = BorelElement.generator("E", order)
        self.D = BorelElement.generator("D", order)

    def __getitem__(self, name: str) -> BorelElement:
        if name not in GENERATOR_NAMES + ("A",):
            raise ValueError(f"Unknown generator {name!r}; expected E or D.")
        return getattr(self, name)


def assemble_twist(u, order: int, signs: tuple[int, int, int] = (1, 1, 1)) -> TwistFamily:
    """
    Multiply out the three exponentials. ``signs`` multiplies each exponent
    (and its inverse) and is only ever changed to build corrupted twists.
    """
    if order < 1:
        raise ValueError("Twist order must be at least 1.")
    u = Fraction(u)
    g = _Generators(order)
    DA = g.D * g.A
    sym = tensor(DA, g.one) + tensor(g.one, DA)
    jordan = tensor(log_series(g.one + g.A), g.D)
    cobound = coproduct0(DA).scale(u)
    s1, s2, s3 = signs
    F = (
        exp_series(sym.scale(-u * s1))
        * exp_series(jordan.scale(-s2))
        * exp_series(cobound.scale(s3))
    )
    F_inv = (
        exp_series(cobound.scale(-s3))
        * exp_series(jordan.scale(s2))
        * exp_series(sym.scale(u * s1))
    )
    return TwistFamily(u, order, F, F_inv)


@lru_cache(maxsize=64)
def _build_twist(u: Fraction, order: int) -> TwistFamily:
    family = assemble_twist(u, order)
    unit = TensorElement.one(2, order)
    if family.F * family.F_inv != unit or family.F_inv * family.F != unit:
        raise TwistError(f"F_u and its printed inverse disagree at u={u}, N={order}.")
    logger.debug("Built F_u for u=%s N=%s with %s terms", u, order, len(family.F.terms))
    return family


def build_twist(u, order: int) -> TwistFamily:
    return _build_twist(Fraction(u), order)


def exponential_twist(u, order: int) -> TensorElement:
    """F_0 = exp(-ln(1+A)⊗D) and F_1 = exp(-D⊗ln(1-A)) as single exponentials."""
    u = Fraction(u)
    g = _Generators(order)
    if u == 0:
        return exp_series(-tensor(log_series(g.one + g.A), g.D))
    if u == 1:
        return exp_series(-tensor(g.D, log_series(g.one - g.A)))
    raise UnsupportedMethodError("Single-exponential twists exist only for u in {0, 1}.")


def _resolve(u, order: int, family: TwistFamily | None) -> TwistFamily:
    return family if family is not None else build_twist(u, order)


def _element(g, order: int) -> BorelElement:
    if isinstance(g, BorelElement):
        return g
    return _Generators(order)[g]


def deformed_coproduct(g, u, order: int, family: TwistFamily | None = None) -> TensorElement:
    """Δ(g) = F Δ0(g) F⁻¹."""
    family = _resolve(u, order, family)
    return family.F * coproduct0(_element(g, family.order)) * family.F_inv


def _deformed_coproduct_on_leg(t: TensorElement, leg: int, family: TwistFamily) -> TensorElement:
    legs = t.legs + 1
    F = embed(family.F, (leg, leg + 1), legs)
    F_inv = embed(family.F_inv, (leg, leg + 1), legs)
    return F * coproduct0_on_leg(t, leg) * F_inv


def closed_form_coproduct(g: str, u, order: int) -> TensorElement:
    u = Fraction(u)
    v = 1 - u
    gens = _Generators(order)
    one, A, E, D = gens.one, gens.A, gens.E, gens.D
    cross = tensor(one, one) + tensor(A, A).scale(u * v)
    if g == "E":
        numerator = tensor(E, one - A.scale(u)) + tensor(one + A.scale(v), E)
        return numerator * inverse_series(cross)
    if g == "D":
        left = tensor(D, inverse_series(one - A.scale(u)))
        right = tensor(inverse_series(one + A.scale(v)), D)
        return (left + right) * cross
    raise ValueError(f"No closed form coproduct for {g!r}.")


def _chi(family: TwistFamily) -> BorelElement:
    """χ = μ((1⊗S0)F)."""
    return multiply_legs(family.F.map_leg(1, antipode0_terms))


def deformed_antipode_map(family: TwistFamily):
    """
    S(x) = χ S0(x) χ⁻¹ as a linear map on monomials, suitable for map_leg.
    Raises NotInvertibleError when χ has a grade-0 part other than 1.
    """
    chi = _chi(family)
    if chi.grade_part(0) != chi.unit_like():
        raise NotInvertibleError(f"χ has grade-0 part {chi.grade_part(0)}, expected 1.")
    chi_inv = inverse_series(chi)
    cache: dict = {}

    def apply(mono):
        if mono not in cache:
            x = BorelElement.monomial(mono, family.order)
            cache[mono] = tuple((chi * antipode0(x) * chi_inv).terms.items())
        return cache[mono]

    return apply


def deformed_antipode(g, u, order: int, family: TwistFamily | None = None) -> BorelElement:
    family = _resolve(u, order, family)
    apply = deformed_antipode_map(family)
    x = _element(g, family.order)
    out = BorelElement.zero(family.order)
    for mono, c in x.terms.items():
        out = out + BorelElement(dict(apply(mono)), family.order).scale(c)
    return out


def closed_form_antipode(g: str, u, order: int) -> BorelElement:
    u = Fraction(u)
    v = 1 - u
    gens = _Generators(order)
    one, A, E, D = gens.one, gens.A, gens.E, gens.D
    if g == "E":
        return -E * inverse_series(one + A.scale(1 - 2 * u))
    if g == "D":
        tail = (A * A).scale(u * v) * inverse_series(one - A.scale(u))
        return -D - (A * D).scale(v) + (D * A).scale(u) - tail
    raise ValueError(f"No closed form antipode for {g!r}.")


def r_matrix(u, order: int, family: TwistFamily | None = None) -> TensorElement:
    """R = F̃ F⁻¹ with F̃ = τ(F)."""
    family = _resolve(u, order, family)
    return flip(family.F) * family.F_inv


def classical_r_matrix(order: int) -> TensorElement:
    g = _Generators(order)
    return tensor(g.A, g.D) - tensor(g.D, g.A)


def log_twist_closed_form(u, order: int) -> dict[int, TensorElement]:
    """Closed forms of the grade 1, 2 and 3 terms of ln F_u."""
    u = Fraction(u)
    v = 1 - u
    g = _Generators(order)
    one, A, D = g.one, g.A, g.D
    A2 = A * A
    DuA = tensor(D, A).scale(u)
    vAD = tensor(A, D).scale(v)
    right_u = tensor(one, A).scale(u)
    left_v = tensor(A, one).scale(v)
    mixed = tensor(A, A).scale(v * u)
    terms = {
        1: DuA - vAD,
        2: ((DuA + vAD) * (right_u + left_v)).scale(Fraction(1, 2)),
        3: DuA
        * (
            tensor(one, A2).scale(u * u / 3)
            + mixed.scale(Fraction(1, 6))
            - tensor(A2, one).scale(v * v / 6)
        )
        - vAD
        * (
            tensor(A2, one).scale(v * v / 3)
            + mixed.scale(Fraction(1, 6))
            - tensor(one, A2).scale(u * u / 6)
        ),
    }
    return {k: t for k, t in terms.items() if k <= order}


# Verifications


def verify_cocycle(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """(F⊗1)(Δ0⊗id)F = (1⊗F)(id⊗Δ0)F in U⊗U⊗U."""
    if order < 2:
        raise ValueError("The cocycle check needs order >= 2.")
    started = perf_counter()
    family = _resolve(u, order, family)
    F = family.F
    lhs = F.extend_right() * coproduct0_on_leg(F, 0)
    rhs = F.extend_left() * coproduct0_on_leg(F, 1)
    return symbolic_report("cocycle", family.u, order, {"cocycle": lhs - rhs}, started)


def verify_normalization(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    started = perf_counter()
    family = _resolve(u, order, family)
    one = BorelElement.one(order)
    residuals = {
        "(ε⊗id)F - 1": counit_on_leg(family.F, 0) - one,
        "(id⊗ε)F - 1": counit_on_leg(family.F, 1) - one,
        "grade-0 F - 1⊗1": family.F.grade_part(0) - TensorElement.one(2, order),
    }
    return symbolic_report("normalization", family.u, order, residuals, started)


def verify_inverse(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    started = perf_counter()
    family = _resolve(u, order, family)
    unit = TensorElement.one(2, order)
    residuals = {
        "F F⁻¹ - 1⊗1": family.F * family.F_inv - unit,
        "F⁻¹ F - 1⊗1": family.F_inv * family.F - unit,
        "F⁻¹ - series inverse": family.F_inv - inverse_series(family.F),
    }
    return symbolic_report("inverse", family.u, order, residuals, started)


def verify_coproduct(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """Conjugated coproducts equal the closed forms and are coassociative."""
    started = perf_counter()
    family = _resolve(u, order, family)
    residuals = {}
    for g in GENERATOR_NAMES:
        delta = deformed_coproduct(g, u, order, family)
        residuals[f"Δ{g} - closed form"] = delta - closed_form_coproduct(g, family.u, order)
        left = _deformed_coproduct_on_leg(delta, 0, family)
        right = _deformed_coproduct_on_leg(delta, 1, family)
        residuals[f"coassociativity {g}"] = left - right
    return symbolic_report("coproduct", family.u, order, residuals, started)


def verify_counit(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """ε stays undeformed: (ε⊗id)Δ(g) = g = (id⊗ε)Δ(g)."""
    started = perf_counter()
    family = _resolve(u, order, family)
    residuals = {}
    for g in GENERATOR_NAMES:
        x = _element(g, order)
        delta = deformed_coproduct(g, u, order, family)
        residuals[f"(ε⊗id)Δ{g} - {g}"] = counit_on_leg(delta, 0) - x
        residuals[f"(id⊗ε)Δ{g} - {g}"] = counit_on_leg(delta, 1) - x
    return symbolic_report("counit", family.u, order, residuals, started)


def verify_antipode(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """
    χ S0(g) χ⁻¹ equals the closed forms, χ⁻¹ = μ((S0⊗1)F⁻¹), and the
    antipode axiom μ(S⊗id)Δ(g) = μ(id⊗S)Δ(g) = ε(g) holds.
    """
    started = perf_counter()
    family = _resolve(u, order, family)
    residuals = {}
    chi = _chi(family)
    residuals["χ μ((S0⊗1)F⁻¹) - 1"] = (
        chi * multiply_legs(family.F_inv.map_leg(0, antipode0_terms)) - chi.unit_like()
    )
    apply = deformed_antipode_map(family)
    for g in GENERATOR_NAMES:
        residuals[f"S({g}) - closed form"] = deformed_antipode(
            g, u, order, family
        ) - closed_form_antipode(g, family.u, order)
        delta = deformed_coproduct(g, u, order, family)
        residuals[f"μ(S⊗id)Δ{g}"] = multiply_legs(delta.map_leg(0, apply))
        residuals[f"μ(id⊗S)Δ{g}"] = multiply_legs(delta.map_leg(1, apply))
    return symbolic_report("antipode", family.u, order, residuals, started)


def verify_r_matrix(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """
    grade-1 part of R is r = A⊗D - D⊗A, τ(R)R = 1⊗1, and for u = 1/2 the
    twist is locally r-symmetric: (ln F)_1 = -r/2, antisymmetric under τ.
    """
    if order < 2:
        raise ValueError("The R-matrix check needs order >= 2.")
    started = perf_counter()
    family = _resolve(u, order, family)
    R = r_matrix(u, order, family)
    r = classical_r_matrix(order)
    residuals = {
        "R_1 - r": R.grade_part(1) - r,
        "τ(R)R - 1⊗1": flip(R) * R - TensorElement.one(2, order),
    }
    if family.u == Fraction(1, 2):
        residuals["(ln F)_1 + r/2"] = log_series(family.F).grade_part(1) + r.scale(Fraction(1, 2))
    return symbolic_report("rmatrix", family.u, order, residuals, started)


def verify_quasitriangular(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """R Δ(g) = τ(Δ(g)) R."""
    started = perf_counter()
    family = _resolve(u, order, family)
    R = r_matrix(u, order, family)
    residuals = {}
    for g in GENERATOR_NAMES:
        delta = deformed_coproduct(g, u, order, family)
        residuals[f"RΔ{g} - τ(Δ{g})R"] = R * delta - flip(delta) * R
    return symbolic_report("quasitriangular", family.u, order, residuals, started)


def verify_yang_baxter(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """R12 R13 R23 = R23 R13 R12 for the truncated R."""
    started = perf_counter()
    family = _resolve(u, order, family)
    R = r_matrix(u, order, family)
    R12 = embed(R, (0, 1), 3)
    R13 = embed(R, (0, 2), 3)
    R23 = embed(R, (1, 2), 3)
    residual = R12 * R13 * R23 - R23 * R13 * R12
    return symbolic_report("yang-baxter", family.u, order, {"R12R13R23 - R23R13R12": residual}, started)


def verify_coboundary(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """F_u = (ω⁻¹⊗ω⁻¹) F_0 Δ0(ω) with ω = exp(uDA)."""
    started = perf_counter()
    family = _resolve(u, order, family)
    g = _Generators(order)
    DA = g.D * g.A
    omega = exp_series(DA.scale(family.u))
    omega_inv = exp_series(DA.scale(-family.u))
    F0 = exponential_twist(0, order)
    rebuilt = tensor(omega_inv, omega_inv) * F0 * coproduct0(omega)
    residuals = {
        "F_u - (ω⁻¹⊗ω⁻¹)F_0Δ0(ω)": family.F - rebuilt,
        "ωω⁻¹ - 1": omega * omega_inv - g.one,
    }
    return symbolic_report("coboundary", family.u, order, residuals, started)


def verify_log_expansion(u, order: int, family: TwistFamily | None = None) -> VerificationReport:
    """
    Grades 1-3 of ln F_u match the closed forms; at u=0 and u=1 the
    whole logarithm collapses to -ln(1+A)⊗D and -D⊗ln(1-A).
    """
    if order < 3:
        raise ValueError("The log expansion check needs order >= 3.")
    started = perf_counter()
    family = _resolve(u, order, family)
    L = log_series(family.F)
    residuals = {
        f"(ln F)_{k} - closed form": L.grade_part(k) - expected.grade_part(k)
        for k, expected in log_twist_closed_form(family.u, order).items()
    }
    residuals["exp(ln F) - F"] = exp_series(L) - family.F
    if family.u in (0, 1):
        residuals["ln F - ln F_exp"] = L - log_series(exponential_twist(family.u, order))
    return symbolic_report("logexp", family.u, order, residuals, started)
