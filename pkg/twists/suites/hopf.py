from __future__ import annotations

from logging import getLogger
from typing import Callable

from twists.reports import VerificationReport
from twists.suites import VerificationSuite
from twists.suites import verification_suite
from twists.twist import verify_antipode
from twists.twist import verify_coboundary
from twists.twist import verify_cocycle
from twists.twist import verify_coproduct
from twists.twist import verify_counit
from twists.twist import verify_inverse
from twists.twist import verify_log_expansion
from twists.twist import verify_normalization
from twists.twist import verify_quasitriangular
from twists.twist import verify_r_matrix
from twists.twist import verify_yang_baxter

__all__ = (
    "CocycleSuite",
    "NormalizationSuite",
    "CoproductSuite",
    "AntipodeSuite",
    "RMatrixSuite",
    "CoboundarySuite",
    "LogExpansionSuite",
    "YangBaxterSuite",
)

logger = getLogger(__name__)


class TwistSuite(VerificationSuite):
    """Runs each check in ``checks`` for every configured u."""

    checks: tuple[Callable[..., VerificationReport], ...] = ()

    def run(self) -> list[VerificationReport]:
        return [
            check(u, self.config.order)
            for check in self.checks
            for u in self.config.u_values
        ]


@verification_suite
class CocycleSuite(TwistSuite):
    name = "cocycle"
    title = "Cocycle condition"
    description = "(F⊗1)(Δ0⊗id)F = (1⊗F)(id⊗Δ0)F in the three-fold tensor power."
    logger = logger
    min_order = 2
    checks = (verify_cocycle,)


@verification_suite
class NormalizationSuite(TwistSuite):
    name = "normalization"
    title = "Normalization and inverse"
    description = "(ε⊗id)F = (id⊗ε)F = 1 and F·F⁻¹ = 1⊗1 for the printed inverse."
    logger = logger
    checks = (verify_normalization, verify_inverse)


@verification_suite
class CoproductSuite(TwistSuite):
    name = "coproduct"
    title = "Deformed coproducts"
    description = "FΔ0(g)F⁻¹ against the closed forms, coassociativity and the undeformed counit."
    logger = logger
    checks = (verify_coproduct, verify_counit)


@verification_suite
class AntipodeSuite(TwistSuite):
    name = "antipode"
    title = "Deformed antipodes"
    description = "χS0(g)χ⁻¹ against the closed forms and the antipode axiom."
    logger = logger
    checks = (verify_antipode,)


@verification_suite
class RMatrixSuite(TwistSuite):
    name = "rmatrix"
    title = "R-matrix"
    description = "R = τ(F)F⁻¹: classical limit, triangularity and RΔ = τ(Δ)R."
    logger = logger
    min_order = 2
    checks = (verify_r_matrix, verify_quasitriangular)


@verification_suite
class CoboundarySuite(TwistSuite):
    name = "coboundary"
    title = "Coboundary equivalence"
    description = "F_u = (ω⁻¹⊗ω⁻¹)F_0Δ0(ω) with ω = exp(uDA)."
    logger = logger
    checks = (verify_coboundary,)


@verification_suite
class LogExpansionSuite(TwistSuite):
    name = "logexp"
    title = "One exponent formula"
    description = "Grades 1 to 3 of ln F_u and the single exponentials at u = 0 and 1."
    logger = logger
    min_order = 3
    checks = (verify_log_expansion,)


@verification_suite
class YangBaxterSuite(TwistSuite):
    name = "yang-baxter"
    title = "Yang-Baxter equation"
    description = "R12 R13 R23 = R23 R13 R12 for the truncated R-matrix."
    logger = logger
    min_order = 2
    checks = (verify_yang_baxter,)
