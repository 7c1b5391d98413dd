"""A collection of utility methods used throughout the codebase."""

import argparse
import logging
import os
from typing import Optional

from map import EnumerationConstants

logger = logging.getLogger(__name__)


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (e.g. a tip count of zero)"""


def require_positive(value: int, name: str = "n") -> int:
    """Reject anything that is not an integer >= 1

    :param value: The value to check
    :param name: Name used in the error message
    :return: The value, unchanged
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value}")
    return value


def require_non_negative(value: int, name: str) -> int:
    """Reject anything that is not an integer >= 0"""
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be non-negative, got {value}")
    return value


def enumeration_limit(override: Optional[int] = None) -> int:
    """The largest tip count that explicit tree generation will accept.

    An explicit `override` wins, then the environment variable, then the built-in default.

    :param override: A per-call limit, or None
    """
    if override is not None:
        return require_positive(override, "limit")

    raw = os.environ.get(EnumerationConstants.LIMIT_ENV_VAR)
    if raw is None or raw.strip() == "":
        return EnumerationConstants.MAX_TIPS

    try:
        limit = int(raw)
    except ValueError:
        raise DomainError(
            f"{EnumerationConstants.LIMIT_ENV_VAR} must be a positive integer, got {raw!r}"
        )
    logger.debug("Enumeration limit %d taken from the environment", limit)
    return require_positive(limit, EnumerationConstants.LIMIT_ENV_VAR)


def positive_int(text: str) -> int:
    """argparse `type=` callable for positive integers"""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def component_list(text: str) -> list:
    """argparse `type=` callable for one singular point's branches, written as `0,0,1`"""
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated component indices, got {text!r}"
        )
