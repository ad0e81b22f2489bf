from __future__ import annotations

from abc import ABC
from abc import abstractmethod
from logging import getLogger
from typing import TYPE_CHECKING
from typing import TypeVar

from twists.exceptions import ConfigurationError
from twists.exceptions import TwistError

if TYPE_CHECKING:
    from twists.config import RunConfig
    from twists.reports import VerificationReport

__all__ = (
    "VerificationSuite",
    "verification_suite",
    "get_suite",
    "suite_names",
    "load_suites",
    "run_suites",
)

logger = getLogger(__name__)

ALL = "all"

_registry: dict[str, type[VerificationSuite]] = {}


class VerificationSuite(ABC):
    name: str = ""
    title: str = ""
    description: str = ""
    logger = logger
    min_order: int = 1

    def __init__(self, config: RunConfig):
        self.config = config

    def check_order(self):
        if self.config.order < self.min_order:
            raise ConfigurationError(
                f"Suite {self.name} needs --order >= {self.min_order}, got {self.config.order}."
            )

    @abstractmethod
    def run(self) -> list[VerificationReport]:
        """One report per identity and u value."""


S = TypeVar("S", bound=type[VerificationSuite])


def verification_suite(cls: S) -> S:
    if not cls.name:
        raise TwistError(f"{cls.__name__} has no name.")
    if cls.name in _registry or cls.name == ALL:
        raise TwistError(f"A verification suite named {cls.name!r} is already registered.")
    _registry[cls.name] = cls
    return cls


def load_suites():
    from . import hopf
    from . import coordinates
    from . import star


def suite_names() -> list[str]:
    load_suites()
    return [*_registry, ALL]


def get_suite(name: str) -> type[VerificationSuite]:
    load_suites()
    try:
        return _registry[name]
    except KeyError:
        raise ConfigurationError(
            f"Unknown suite {name!r}; choose one of {', '.join(suite_names())}."
        ) from None


def run_suites(config: RunConfig) -> list[VerificationReport]:
    """
    Run ``config.suite`` (or every registered suite for "all"). Under "all",
    suites whose minimum order exceeds ``config.order`` are skipped.
    """
    load_suites()
    if config.suite == ALL:
        classes = []
        for cls in _registry.values():
            if config.order < cls.min_order:
                logger.warning("Skipping %s: needs order >= %s", cls.name, cls.min_order)
                continue
            classes.append(cls)
        if not classes:
            raise ConfigurationError(f"No suite runs at order {config.order}.")
    else:
        classes = [get_suite(config.suite)]
    reports = []
    for cls in classes:
        suite = cls(config)
        suite.check_order()
        suite.logger.debug("Running %s", suite.name)
        reports.extend(suite.run())
    return reports
