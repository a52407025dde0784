"""Orbifold specification files.

Format (JSON):

    {"k": 2, "c": [1, 1, -2], "m": [2, 2, 2]}

Validation happens here so the CLI can report a usage error (exit 2) before
any mathematics runs.
"""

import json
import logging
from pathlib import Path
from typing import Any, Mapping, Union

from .errors import DomainError, SpecFileError
from .orbifold import CampanaOrbifold

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("k", "c", "m")


def _int_list(data: Mapping[str, Any], key: str) -> list:
    value = data[key]
    if not isinstance(value, list) or not value:
        raise SpecFileError(f"'{key}' must be a non-empty list of integers")
    for item in value:
        if isinstance(item, bool) or not isinstance(item, int):
            raise SpecFileError(f"'{key}' contains non-integer entry {item!r}")
    return value


def parse_orbifold(data: Mapping[str, Any]) -> CampanaOrbifold:
    """Validate a decoded spec document and build the orbifold."""
    if not isinstance(data, Mapping):
        raise SpecFileError("orbifold spec must be a JSON object")
    missing = [key for key in REQUIRED_KEYS if key not in data]
    if missing:
        raise SpecFileError(f"orbifold spec is missing keys: {missing}")
    unknown = sorted(set(data) - set(REQUIRED_KEYS))
    if unknown:
        logger.warning(f"Ignoring unknown keys in orbifold spec: {unknown}")

    k = data["k"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise SpecFileError(f"'k' must be an integer, got {k!r}")
    c = _int_list(data, "c")
    m = _int_list(data, "m")
    if len(c) != len(m):
        raise SpecFileError(f"'c' has {len(c)} entries but 'm' has {len(m)}")

    try:
        return CampanaOrbifold.from_lists(k, c, m)
    except DomainError as e:
        raise SpecFileError(f"invalid orbifold: {e}") from e


def load_orbifold(path: Union[str, Path]) -> CampanaOrbifold:
    """Read and validate an orbifold spec file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise SpecFileError(f"cannot read {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFileError(f"{path} is not valid JSON: {e}") from e
    orbifold = parse_orbifold(data)
    logger.debug(f"Loaded orbifold from {path}: {orbifold.to_dict()}")
    return orbifold
