from __future__ import annotations

from logging import getLogger

from twists.realizations import verify_adx_coproduct
from twists.realizations import verify_kappa_minkowski
from twists.realizations import verify_normal_ordered_twist
from twists.realizations import verify_realization
from twists.reports import VerificationReport
from twists.suites import VerificationSuite
from twists.suites import verification_suite

__all__ = ("KappaMinkowskiSuite", "RealizationSuite", "AdxSuite", "NormalTwistSuite")

logger = getLogger(__name__)


class RealizationSuiteBase(VerificationSuite):
    def check(self, spec) -> VerificationReport:
        raise NotImplementedError

    def run(self) -> list[VerificationReport]:
        return [
            self.check(spec)
            for u in self.config.u_values
            for spec in self.config.realization_specs(u)
        ]


@verification_suite
class KappaMinkowskiSuite(RealizationSuiteBase):
    name = "kappa-minkowski"
    title = "κ-Minkowski relations"
    description = "Commutators of x̂, ŷ and p in the Heisenberg realization."
    logger = logger

    def check(self, spec) -> VerificationReport:
        return verify_kappa_minkowski(spec)


@verification_suite
class RealizationSuite(RealizationSuiteBase):
    name = "realization"
    title = "Coordinates from twist and coproduct"
    description = "x̂ and ŷ extracted from F⁻¹ and from Δp equal the closed forms."
    logger = logger
    min_order = 2

    def check(self, spec) -> VerificationReport:
        return verify_realization(spec)


@verification_suite
class AdxSuite(VerificationSuite):
    name = "adx"
    title = "Coproduct from the adjoint action"
    description = "exp(iK⁻¹(p)⊗ad_x̂)(1⊗p) reproduces Δp."
    logger = logger
    min_order = 2

    def run(self) -> list[VerificationReport]:
        return [
            verify_adx_coproduct(self.config.realization_specs(u)[0])
            for u in self.config.u_values
        ]


@verification_suite
class NormalTwistSuite(RealizationSuiteBase):
    name = "normal-twist"
    title = "Normal ordered inverse twist"
    description = (
        "Plane-wave exponent of the normal ordered inverse twist, built from the "
        "conjugated coproduct, against D(k,q) to order h^N; for u = 0 and u = 1 "
        "leg by leg against :exp(A⊗D): and :exp(-D⊗A):."
    )
    logger = logger

    def check(self, spec) -> VerificationReport:
        k, q = self.config.momenta()
        return verify_normal_ordered_twist(spec, k, q)
