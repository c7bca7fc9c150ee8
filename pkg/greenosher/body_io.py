# Copyright 2024 The planar-greenosher developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

""" Conversion between support bodies and their JSON representation
"""

import json
import logging
import math
from os import PathLike
from typing import Any, Dict, List, Optional, Union

from .exceptions import BodyParseError
from .support_body import SupportBody, require_valid

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

PathType = Union[str, "PathLike[str]"]


def body_to_dict(body: SupportBody) -> Dict[str, Any]:
    """
    Convert a body to the JSON-ready form
    ``{"version": 1, "a0": ..., "cos": [...], "sin": [...]}``, lists indexed
    from harmonic k = 1.
    """
    return {
        "version": SCHEMA_VERSION,
        "a0": body.a0,
        "cos": list(body.cos_coeffs),
        "sin": list(body.sin_coeffs),
    }


def _real(value: Any, field: str) -> float:
    # bool is an int subclass but never a coefficient
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BodyParseError(f"expected a real number, got {value!r}", field=field)
    if not math.isfinite(value):
        raise BodyParseError(f"coefficient {value!r} is not finite", field=field)
    return float(value)


def _coefficients(d: Dict[str, Any], key: str) -> List[float]:
    raw = d.get(key, [])
    if not isinstance(raw, list):
        raise BodyParseError("expected a list of reals", field=key)
    return [_real(x, f"{key}[{i}]") for i, x in enumerate(raw)]


def body_from_dict(
    d: Dict[str, Any], eps_convex: Optional[float] = 1e-8
) -> SupportBody:
    """
    Convert the JSON form back to a body. Absent or short coefficient lists are
    padded with zeros, and an absent version is read as the current one.

    :param d: decoded JSON object
    :param eps_convex: strict convexity threshold to validate against, or None
        to skip validation
    :raises BodyParseError: if `d` does not match the schema
    :raises BodyValidationError: if the body is not strictly convex
    """
    if not isinstance(d, dict):
        raise BodyParseError("body must be a JSON object")
    version = d.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise BodyParseError(
            f"unsupported schema version {version!r}", field="version"
        )
    if "a0" not in d:
        raise BodyParseError("missing constant coefficient", field="a0")
    body = SupportBody.from_coefficients(
        _real(d["a0"], "a0"), _coefficients(d, "cos"), _coefficients(d, "sin")
    )
    if eps_convex is not None:
        require_valid(body, eps_convex=eps_convex)
    return body


def load_body(path: PathType, eps_convex: Optional[float] = 1e-8) -> SupportBody:
    """Read a body file; see :py:func:`body_from_dict` for errors."""
    with open(path) as fp:
        text = fp.read()
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise BodyParseError(f"invalid JSON: {e.msg}", line=e.lineno) from e
    return body_from_dict(d, eps_convex)


def save_body(body: SupportBody, path: PathType) -> None:
    """Write a body file. Floats are written with full round-trip precision."""
    write_json(body_to_dict(body), path)


def write_json(d: Dict[str, Any], path: PathType) -> None:
    with open(path, "w") as fp:
        json.dump(d, fp, indent=2)
        fp.write("\n")
    logger.info("Wrote %s", path)
