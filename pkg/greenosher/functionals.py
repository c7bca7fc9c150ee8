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

"""Strictly convex functions on (0, +inf) used as F in the inequality
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import DomainError

DEFAULT_POWER = 1.5


@dataclass(frozen=True)
class ConvexFunctional:
    """A function F evaluated elementwise on positive reals.

    :param name: identifier used in reports and on the command line
    :param function: vectorised implementation of F
    :param convexity_checked: False for user-supplied functions whose strict
        convexity has not been established
    """

    name: str
    function: Callable[[NDArray[np.float64]], NDArray[np.float64]]
    convexity_checked: bool = True

    def __call__(self, x: ArrayLike) -> Union[float, NDArray[np.float64]]:
        a = np.asarray(x, dtype=float)
        if np.any(~(a > 0)):
            raise DomainError(
                f"{self.name} evaluated at {float(np.min(a)):.6g}, outside (0, +inf)"
            )
        values = self.function(a)
        return float(values) if a.ndim == 0 else np.asarray(values)


# F'' = 2
SQUARE = ConvexFunctional("square", np.square)
# F'' = 2 / x^3
RECIPROCAL = ConvexFunctional("reciprocal", np.reciprocal)
# F'' = exp(-x)
EXP_NEG = ConvexFunctional("exp_neg", lambda x: np.exp(-x))
# F'' = 1 / x
X_LOG_X = ConvexFunctional("x_log_x", lambda x: x * np.log(x))


def power(p: float = DEFAULT_POWER) -> ConvexFunctional:
    """x^p, with F'' = p (p - 1) x^(p - 2) > 0 for p > 1."""
    if not p > 1:
        raise ValueError(f"power_p needs p > 1, got {p}")
    return ConvexFunctional(f"power_{p:g}", lambda x: np.power(x, p))


def registry(p: float = DEFAULT_POWER) -> Dict[str, ConvexFunctional]:
    """All built-in functionals keyed by name."""
    entries = [SQUARE, RECIPROCAL, EXP_NEG, X_LOG_X, power(p)]
    return {f.name: f for f in entries}


def select(
    names: Optional[List[str]] = None, p: Optional[float] = None
) -> List[ConvexFunctional]:
    """Resolve functional names.

    :param names: names from :py:func:`registry`, ``"power_p"`` for the power
        functional, or ``"all"``; defaults to all
    :param p: exponent for the power functional
    :raises ValueError: for an unknown name
    """
    p = DEFAULT_POWER if p is None else p
    table = registry(p)
    if not names or "all" in names:
        return list(table.values())
    chosen = []
    for name in names:
        if name == "power_p" or name.startswith("power_"):
            chosen.append(power(p) if name == "power_p" else _parse_power(name))
        elif name in table:
            chosen.append(table[name])
        else:
            raise ValueError(
                f"Unknown functional '{name}'; choose from {sorted(table)} or 'all'"
            )
    return chosen


def _parse_power(name: str) -> ConvexFunctional:
    try:
        p = float(name[len("power_") :])
    except ValueError:
        raise ValueError(f"Cannot read exponent from functional name '{name}'")
    return power(p)


def custom(
    name: str, function: Callable[[NDArray[np.float64]], NDArray[np.float64]]
) -> ConvexFunctional:
    """Wrap a user function; reports mark it as not convexity-checked."""
    return ConvexFunctional(name, function, convexity_checked=False)
