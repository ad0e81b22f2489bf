from __future__ import annotations

from logging import getLogger
from time import perf_counter

from twists.momentum import MomentumVector
from twists.momentum import SampleScan
from twists.momentum import deformed_sum
from twists.momentum import k_inverse
from twists.momentum import k_map
from twists.momentum import momentum_antipode
from twists.momentum import ode_convergence
from twists.momentum import rapidity
from twists.momentum import relative_deviation
from twists.momentum import scan_samples
from twists.momentum import star_plane_waves
from twists.momentum import verify_associativity
from twists.momentum import verify_ode
from twists.reports import VerificationReport
from twists.reports import numeric_report
from twists.suites import VerificationSuite
from twists.suites import verification_suite

__all__ = ("StarAssociativitySuite", "OdeSuite", "KInverseSuite", "AlgebroidSuite")

logger = getLogger(__name__)

ODE_STEP = 1e-4
CONVERGENCE_STEP = 1e-2


class MomentumSuite(VerificationSuite):
    def scans(self, ctx) -> list[SampleScan]:
        raise NotImplementedError

    def run(self) -> list[VerificationReport]:
        reports = []
        for u in self.config.u_values:
            started = perf_counter()
            ctx = self.config.context(u)
            scans = self.scans(ctx)
            short = [scan for scan in scans if scan.checked < self.config.samples]
            for scan in short:
                self.logger.warning(
                    "%s: %s of %s samples checked at u=%s", self.name, scan.checked, self.config.samples, u
                )
            deviation = max(scan.max_deviation for scan in scans)
            if short:
                deviation = float("inf")
            reports.append(
                numeric_report(self.name, u, self.config.order, deviation, self.config.tol, started, dim=ctx.dim)
            )
        return reports


@verification_suite
class StarAssociativitySuite(MomentumSuite):
    name = "star-assoc"
    title = "Deformed addition of momenta"
    description = "Unit, antipode and associativity of D(k,q) on exact rationals; additivity of the rapidity."
    logger = logger

    def scans(self, ctx) -> list[SampleScan]:
        config = self.config
        zero = MomentumVector.zero(ctx.dim)

        def unit(k):
            return max(
                relative_deviation(deformed_sum(k, zero, ctx), k),
                relative_deviation(deformed_sum(zero, k, ctx), k),
            )

        def antipode(k):
            s = momentum_antipode(k, ctx)
            return max(
                relative_deviation(deformed_sum(k, s, ctx), zero),
                relative_deviation(deformed_sum(s, k, ctx), zero),
            )

        def additive(k, q):
            total = deformed_sum(k, q, ctx)
            return abs(rapidity(total, ctx) - rapidity(k, ctx) - rapidity(q, ctx))

        return [
            scan_samples(ctx, unit, config.samples, config.seed, arity=1),
            scan_samples(ctx, antipode, config.samples, config.seed, arity=1),
            verify_associativity(ctx, config.samples, config.seed),
            scan_samples(ctx, additive, config.samples, config.seed, arity=2),
        ]


@verification_suite
class OdeSuite(VerificationSuite):
    name = "ode"
    title = "Differential equation for P"
    description = "dP(λk,q)/dλ = φ(P)k by central differences, with second order convergence."
    logger = logger

    def run(self) -> list[VerificationReport]:
        reports = []
        k, q = self.config.momenta()
        for u in self.config.u_values:
            ctx = self.config.context(u)
            started = perf_counter()
            residual = verify_ode(k, q, ctx, step=ODE_STEP)
            reports.append(
                numeric_report("ode", u, self.config.order, residual, self.config.ode_tol, started, dim=ctx.dim)
            )
            started = perf_counter()
            convergence = ode_convergence(k, q, ctx, step=CONVERGENCE_STEP)
            off = 0.0 if convergence.order is None else abs(convergence.order - 2)
            self.logger.debug("ODE convergence at u=%s: %s", u, convergence)
            reports.append(
                numeric_report("ode-convergence", u, self.config.order, off, 0.5, started, dim=ctx.dim)
            )
        return reports


@verification_suite
class KInverseSuite(MomentumSuite):
    name = "kinverse"
    title = "K and its inverse"
    description = "K(K⁻¹(k)) = K⁻¹(K(k)) = k and D(k,q) = P(K⁻¹(k),q) on random admissible momenta."
    logger = logger

    def scans(self, ctx) -> list[SampleScan]:
        config = self.config

        def inverse_pair(k):
            return max(
                relative_deviation(k_map(k_inverse(k, ctx), ctx), k),
                relative_deviation(k_inverse(k_map(k, ctx), ctx), k),
            )

        def composition(k, q):
            return relative_deviation(
                star_plane_waves(k, q, ctx, "via-P"), deformed_sum(k, q, ctx)
            )

        return [
            scan_samples(ctx, inverse_pair, config.samples, config.seed, arity=1, exact=False),
            scan_samples(ctx, composition, config.samples, config.seed, arity=2, exact=False),
        ]


@verification_suite
class AlgebroidSuite(MomentumSuite):
    name = "algebroid"
    title = "Hopf algebroid twist"
    description = "exp(-ip⊗x)exp(iK⁻¹(p)⊗x̂) maps two plane waves to exp(iD(k,q).x)."
    logger = logger

    def scans(self, ctx) -> list[SampleScan]:
        def algebroid(k, q):
            return relative_deviation(
                star_plane_waves(k, q, ctx, "via-algebroid"), deformed_sum(k, q, ctx)
            )

        return [scan_samples(ctx, algebroid, self.config.samples, self.config.seed, exact=False)]
