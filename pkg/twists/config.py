from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path
from typing import Literal
from typing import Optional

from pydantic import BaseModel
from pydantic import root_validator
from pydantic import validator

from twists.momentum import DeformationContext
from twists.momentum import MomentumVector
from twists.realizations import RealizationSpec
from twists.scalars import parse_rational

__all__ = (
    "RunConfig",
    "DEFAULT_U_VALUES",
    "DEFAULT_ORDER",
    "DEFAULT_DIM",
    "DEFAULT_SEED",
    "DEFAULT_SAMPLES",
    "DEFAULT_TOL",
    "DEFAULT_KAPPA",
    "OUTPUT_DIR_ENV",
    "companion_vector",
)

DEFAULT_U_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(-1, 3))
DEFAULT_ORDER = 4
DEFAULT_DIM = 2
DEFAULT_SEED = 20180101
DEFAULT_SAMPLES = 1000
DEFAULT_TOL = 1e-12
DEFAULT_ODE_TOL = 1e-6
DEFAULT_KAPPA = Fraction(10)
OUTPUT_DIR_ENV = "JORDANIAN_TWISTS_OUTPUT_DIR"


def _rationals(value) -> list[Fraction]:
    if isinstance(value, str):
        value = [p for p in value.replace(" ", "").split(",") if p]
    return [parse_rational(x) if isinstance(x, str) else Fraction(x) for x in value]


def companion_vector(v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    """A rational vector of the same length that is not parallel to ``v``."""
    candidate = tuple(Fraction(1, i + 1) for i in range(len(v)))
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] * candidate[j] != v[j] * candidate[i]:
                return candidate
    return (Fraction(0), Fraction(1)) + (Fraction(0),) * (len(v) - 2)


class RunConfig(BaseModel):
    command: str = "verify"
    suite: str = "all"
    u_values: tuple[Fraction, ...] = DEFAULT_U_VALUES
    order: int = DEFAULT_ORDER
    dim: Optional[int] = None
    v: Optional[tuple[Fraction, ...]] = None
    kappa: Fraction = DEFAULT_KAPPA
    a: Optional[tuple[Fraction, ...]] = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    tol: float = DEFAULT_TOL
    ode_tol: float = DEFAULT_ODE_TOL
    output_format: Literal["text", "json"] = "text"
    output: Optional[Path] = None
    k: Optional[tuple[Fraction, ...]] = None
    q: Optional[tuple[Fraction, ...]] = None
    method: str = "closed-form"
    cross_check: bool = False

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("u_values", pre=True)
    def parse_u_values(cls, value):
        if isinstance(value, (int, Fraction)):
            value = [value]
        values = tuple(_rationals(value))
        if not values:
            raise ValueError("At least one u value is required.")
        return values

    @validator("v", "a", "k", "q", pre=True)
    def parse_vector(cls, value):
        if value is None:
            return None
        return tuple(_rationals(value))

    @validator("kappa", pre=True)
    def parse_kappa(cls, value):
        kappa = parse_rational(value) if isinstance(value, str) else Fraction(value)
        if not kappa:
            raise ValueError("κ must be nonzero.")
        return kappa

    @validator("order")
    def non_negative_order(cls, value):
        if value < 0:
            raise ValueError("Order must be non-negative.")
        return value

    @validator("dim")
    def dimension_at_least_two(cls, value):
        if value is not None and value < 2:
            raise ValueError("Dimension must be at least 2.")
        return value

    @validator("samples")
    def positive_samples(cls, value):
        if value < 1:
            raise ValueError("At least one sample is required.")
        return value

    @validator("output")
    def resolve_output(cls, value):
        if value is None or value.is_absolute():
            return value
        base = os.environ.get(OUTPUT_DIR_ENV)
        return Path(base) / value if base else value

    @root_validator(skip_on_failure=True)
    def vectors_match_dimension(cls, values):
        v, a, kappa = values.get("v"), values.get("a"), values["kappa"]
        k, q = values.get("k"), values.get("q")
        dim = values.get("dim") or len(v or a or k or q or ()) or DEFAULT_DIM
        if v is None and a is not None:
            v = tuple(c * kappa for c in a)
        if v is None:
            v = (Fraction(1),) + (Fraction(0),) * (dim - 1)
        if a is None:
            a = tuple(c / kappa for c in v)
        for name, vec in (("v", v), ("a", a), ("k", k), ("q", q)):
            if vec is not None and len(vec) != dim:
                raise ValueError(f"{name} has {len(vec)} components, expected {dim}.")
        if dim < 2:
            raise ValueError("Dimension must be at least 2.")
        if not any(v):
            raise ValueError("The deformation vector must be nonzero.")
        values.update(dim=dim, v=v, a=a)
        return values

    def realization_specs(self, u) -> list[RealizationSpec]:
        """The configured v and a companion vector not parallel to it."""
        return [
            RealizationSpec(u=u, v=self.v, order=self.order),
            RealizationSpec(u=u, v=companion_vector(self.v), order=self.order),
        ]

    def context(self, u) -> DeformationContext:
        return DeformationContext(u, MomentumVector(self.a))

    def momenta(self) -> tuple[MomentumVector, MomentumVector]:
        """--k/--q, falling back to a fixed admissible pair."""
        k = self.k or (Fraction(1), Fraction(2)) + (Fraction(0),) * (self.dim - 2)
        q = self.q or (Fraction(3), Fraction(-1)) + (Fraction(0),) * (self.dim - 2)
        return MomentumVector(k), MomentumVector(q)
