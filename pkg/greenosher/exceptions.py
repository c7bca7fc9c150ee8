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

from typing import Optional


class GreenOsherError(Exception):
    """Base class for all errors raised by planar-greenosher."""


class BodyValidationError(GreenOsherError, ValueError):
    """Raised when a support function fails the strict convexity check."""

    def __init__(self, min_value: float, node: int, theta: float, eps: float):
        super().__init__(
            f"h + h'' = {min_value:.6g} < {eps:g} at node {node} "
            f"(theta = {theta:.6f}): body is not strictly convex"
        )
        self.min_value = min_value
        self.node = node
        self.theta = theta


class BodyParseError(GreenOsherError, ValueError):
    """Raised when a body file does not match the JSON schema."""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class NegativeDiscriminantError(GreenOsherError, ArithmeticError):
    """Raised when V(K,L)^2 - V(K)V(L) is negative beyond roundoff."""

    def __init__(self, radicand: float):
        super().__init__(
            f"Minkowski discriminant {radicand:.3e} is negative beyond roundoff"
        )
        self.radicand = radicand


class SolverFailureError(GreenOsherError, RuntimeError):
    """Raised when a linear program does not terminate at an optimum."""

    def __init__(self, status: int, message: str):
        super().__init__(f"LP solver failed with status {status}: {message}")
        self.status = status
        self.message = message


class InfeasibleError(SolverFailureError):
    """Raised when the dilation-position feasibility problem has no solution."""


class NotAtDilationPositionError(GreenOsherError, ValueError):
    """Raised when an operation requiring a dilation position gets another pair."""


class DomainError(GreenOsherError, ValueError):
    """Raised when a functional is evaluated outside (0, +inf)."""
