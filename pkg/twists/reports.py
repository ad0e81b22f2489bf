from __future__ import annotations

import json
from fractions import Fraction
from logging import getLogger
from time import perf_counter
from typing import Iterable
from typing import Mapping
from typing import Optional

from pydantic import BaseModel
from pydantic import Field
from pydantic import parse_obj_as
from pydantic import validator

__all__ = (
    "VerificationReport",
    "symbolic_report",
    "numeric_report",
    "dump_reports",
    "load_reports",
)

logger = getLogger(__name__)


class VerificationReport(BaseModel):
    identity: str
    u: str
    order: int
    passed: bool = Field(alias="pass")
    residual: str
    ms: float
    dim: Optional[int] = None

    class Config:
        allow_population_by_field_name = True
        allow_mutation = False

    @validator("u", pre=True)
    def format_u(cls, v):
        if isinstance(v, (int, Fraction)):
            return str(Fraction(v))
        if isinstance(v, float):
            return repr(v)
        return v

    def as_json_dict(self) -> dict:
        return self.dict(by_alias=True, exclude_none=True)

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        dim = f" dim={self.dim}" if self.dim is not None else ""
        return (
            f"{status} {self.identity} u={self.u} N={self.order}{dim} "
            f"residual={self.residual} ({self.ms:.1f} ms)"
        )


def _log(report: VerificationReport) -> VerificationReport:
    if report.passed:
        logger.info("%s", report)
    else:
        logger.warning("%s", report)
    return report


def symbolic_report(
    identity: str,
    u,
    order: int,
    residuals: Mapping[str, object],
    started: float,
    dim: int | None = None,
) -> VerificationReport:
    """
    Pass iff every residual element is exactly zero. Nonzero residuals are
    rendered canonically and labelled.
    """
    nonzero = [(label, r) for label, r in residuals.items() if r]
    if nonzero:
        residual = "; ".join(f"{label}: {r}" for label, r in nonzero)
    else:
        residual = "0"
    return _log(
        VerificationReport(
            identity=identity,
            u=u,
            order=order,
            passed=not nonzero,
            residual=residual,
            ms=(perf_counter() - started) * 1000,
            dim=dim,
        )
    )


def numeric_report(
    identity: str,
    u,
    order: int,
    deviation: float,
    tol: float,
    started: float,
    dim: int | None = None,
) -> VerificationReport:
    return _log(
        VerificationReport(
            identity=identity,
            u=u,
            order=order,
            passed=bool(deviation <= tol),
            residual=f"{deviation:.3e}",
            ms=(perf_counter() - started) * 1000,
            dim=dim,
        )
    )


def dump_reports(reports: Iterable[VerificationReport]) -> str:
    return json.dumps([r.as_json_dict() for r in reports], indent=2, ensure_ascii=False)


def load_reports(text: str) -> list[VerificationReport]:
    return parse_obj_as(list[VerificationReport], json.loads(text))
