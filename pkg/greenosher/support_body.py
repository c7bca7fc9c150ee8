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

"""Planar convex bodies given by truncated trigonometric support functions

A body is stored as

    h(theta) = a0 + sum_k (cos_coeffs[k] cos(k theta) + sin_coeffs[k] sin(k theta))

for k = 1..degree. Differentiation acts coefficient-wise, so h' and h + h'' are
exact, and sampling on a uniform grid with more than 4 * degree nodes makes
every integral of products of two bodies exact under the trapezoidal rule.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .exceptions import BodyValidationError

logger = logging.getLogger(__name__)

#: Minimum of h + h'' guaranteed for generated bodies.
GENERATED_MIN_RADIUS = 0.1


def _frozen(a: NDArray[np.float64]) -> NDArray[np.float64]:
    a.setflags(write=False)
    return a


def grid_angles(n: int) -> NDArray[np.float64]:
    """Nodes theta_j = 2 pi j / n, j = 0..n-1."""
    return _frozen(2 * np.pi * np.arange(n) / n)


def check_node_count(n: int, degree: int, strict: bool = True) -> None:
    """Ensure `n` is a power of two oversampling `degree` by more than 4x.

    :param strict: require n > 4 * degree; otherwise n >= 4 * degree
    :raises ValueError: if the grid cannot resolve the body
    """
    if n < 1 or n & (n - 1):
        raise ValueError(f"Node count must be a power of two, got {n}")
    if (strict and n <= 4 * degree) or n < 4 * degree:
        raise ValueError(f"Node count {n} too small for degree {degree}")


@dataclass(frozen=True)
class SupportBody:
    """Smooth planar convex body encoded by its support function.

    :param a0: constant Fourier coefficient (mean width / 2)
    :param cos_coeffs: coefficients of cos(k theta), k = 1..degree
    :param sin_coeffs: coefficients of sin(k theta), k = 1..degree
    """

    a0: float
    cos_coeffs: Tuple[float, ...]
    sin_coeffs: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.cos_coeffs) != len(self.sin_coeffs):
            raise ValueError(
                f"Coefficient lists differ in length: {len(self.cos_coeffs)} "
                f"cosine vs {len(self.sin_coeffs)} sine"
            )
        if len(self.cos_coeffs) < 1:
            raise ValueError("A support body needs degree >= 1")
        coeffs = (self.a0,) + self.cos_coeffs + self.sin_coeffs
        if not all(np.isfinite(c) for c in coeffs):
            raise ValueError("Support function coefficients must be finite")

    @classmethod
    def from_coefficients(
        cls,
        a0: float,
        cos_coeffs: Sequence[float] = (),
        sin_coeffs: Sequence[float] = (),
        degree: Optional[int] = None,
    ) -> "SupportBody":
        """Build a body, padding the shorter list (and both up to `degree`) with
        zeros."""
        d = max(len(cos_coeffs), len(sin_coeffs), degree or 1)
        c = [float(x) for x in cos_coeffs] + [0.0] * (d - len(cos_coeffs))
        s = [float(x) for x in sin_coeffs] + [0.0] * (d - len(sin_coeffs))
        return cls(float(a0), tuple(c), tuple(s))

    @classmethod
    def disk(
        cls, radius: float = 1.0, center: Tuple[float, float] = (0.0, 0.0)
    ) -> "SupportBody":
        """Euclidean disk with the given radius and center."""
        return cls(float(radius), (float(center[0]),), (float(center[1]),))

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    @property
    def harmonics(self) -> NDArray[np.float64]:
        return np.arange(1, self.degree + 1, dtype=float)

    def coefficient_arrays(self) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
        return np.array(self.cos_coeffs), np.array(self.sin_coeffs)

    def padded(self, degree: int) -> "SupportBody":
        if degree < self.degree:
            raise ValueError(f"Cannot pad degree {self.degree} down to {degree}")
        return SupportBody.from_coefficients(
            self.a0, self.cos_coeffs, self.sin_coeffs, degree
        )

    def __call__(self, theta: ArrayLike) -> Union[float, NDArray[np.float64]]:
        return evaluate(self, theta)


@dataclass(frozen=True)
class GridProfile:
    """Samples of a periodic function at theta_j = 2 pi j / N."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.values.ndim != 1 or self.values.size == 0:
            raise ValueError("A grid profile needs a nonempty 1-d sample array")
        if self.values.flags.writeable:
            object.__setattr__(self, "values", _frozen(self.values.copy()))

    @property
    def node_count(self) -> int:
        return int(self.values.size)

    @property
    def thetas(self) -> NDArray[np.float64]:
        return grid_angles(self.node_count)

    def min(self) -> Tuple[float, int]:
        """Minimum sample and the index of its first occurrence."""
        j = int(np.argmin(self.values))
        return float(self.values[j]), j

    def max(self) -> Tuple[float, int]:
        j = int(np.argmax(self.values))
        return float(self.values[j]), j


@lru_cache(maxsize=8)
def _grid_basis(
    n: int, degree: int
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """cos(k theta_j) and sin(k theta_j), shape (n, degree), shared read-only."""
    kt = np.multiply.outer(grid_angles(n), np.arange(1, degree + 1, dtype=float))
    return _frozen(np.cos(kt)), _frozen(np.sin(kt))


def _trig_series(
    body: SupportBody,
    theta: NDArray[np.float64],
    order: int,
    basis: Optional[Tuple[NDArray[np.float64], NDArray[np.float64]]] = None,
) -> NDArray[np.float64]:
    # order 0: h, 1: h', 2: h + h''
    k = body.harmonics
    c, s = body.coefficient_arrays()
    if basis is None:
        kt = np.multiply.outer(theta, k)
        cos_kt, sin_kt = np.cos(kt), np.sin(kt)
    else:
        cos_kt, sin_kt = basis
    if order == 0:
        return body.a0 + cos_kt @ c + sin_kt @ s
    if order == 1:
        return cos_kt @ (k * s) - sin_kt @ (k * c)
    radius = 1.0 - k * k
    return body.a0 + cos_kt @ (radius * c) + sin_kt @ (radius * s)


def evaluate(body: SupportBody, theta: ArrayLike) -> Union[float, NDArray[np.float64]]:
    """Evaluate the support function at one angle or an array of angles.

    :param body: body to evaluate
    :param theta: angle(s) in radians, any real value
    :returns: h(theta), a float for scalar input
    """
    t = np.mod(np.asarray(theta, dtype=float), 2 * np.pi)
    values = _trig_series(body, np.atleast_1d(t), 0)
    return float(values[0]) if t.ndim == 0 else values.reshape(t.shape)


def _grid_series(body: SupportBody, n: int, order: int) -> NDArray[np.float64]:
    return _trig_series(body, grid_angles(n), order, _grid_basis(n, body.degree))


def sample(body: SupportBody, n: int) -> GridProfile:
    """Samples of h on the n-node grid."""
    check_node_count(n, body.degree, strict=False)
    return GridProfile(_grid_series(body, n, 0))


def derivative_profile(body: SupportBody, n: int) -> GridProfile:
    """Samples of h' on the n-node grid, differentiated coefficient-wise."""
    check_node_count(n, body.degree, strict=False)
    return GridProfile(_grid_series(body, n, 1))


def curvature_profile(body: SupportBody, n: int) -> GridProfile:
    """Samples of the curvature radius h + h'' on the n-node grid.

    The k-th harmonic is scaled by 1 - k^2, so translations (first harmonics)
    leave the profile unchanged.
    """
    check_node_count(n, body.degree, strict=False)
    return GridProfile(_grid_series(body, n, 2))


def boundary_points(body: SupportBody, n: int) -> NDArray[np.float64]:
    """Boundary points x(theta) = h u(theta) + h' u'(theta) at the n grid nodes.

    :returns: array of shape (n, 2)
    """
    theta = grid_angles(n)
    h = _grid_series(body, n, 0)
    dh = _grid_series(body, n, 1)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    return np.column_stack((h * cos_t - dh * sin_t, h * sin_t + dh * cos_t))


def translate(body: SupportBody, v: Sequence[float]) -> SupportBody:
    """Shift the body by the vector `v`."""
    c = list(body.cos_coeffs)
    s = list(body.sin_coeffs)
    c[0] += float(v[0])
    s[0] += float(v[1])
    return SupportBody(body.a0, tuple(c), tuple(s))


def _min_radius(body: SupportBody) -> float:
    n = _validation_nodes(body.degree)
    return curvature_profile(body, n).min()[0]


def _radius_magnitude(body: SupportBody) -> float:
    # bound on |h + h''| from the coefficients, sets the rounding scale
    radius = np.abs(1.0 - body.harmonics**2)
    c, s = body.coefficient_arrays()
    return abs(body.a0) + float(radius @ (np.abs(c) + np.abs(s)))


def scale(body: SupportBody, t: float) -> SupportBody:
    """Dilate the body by the factor t > 0 about the origin."""
    if t <= 0:
        raise ValueError(f"Scale factor must be positive, got {t}")
    return SupportBody(
        t * body.a0,
        tuple(t * c for c in body.cos_coeffs),
        tuple(t * s for s in body.sin_coeffs),
    )


def minkowski_sum(a: SupportBody, b: SupportBody) -> SupportBody:
    """Minkowski sum a + b; support functions add."""
    d = max(a.degree, b.degree)
    a, b = a.padded(d), b.padded(d)
    out = SupportBody(
        a.a0 + b.a0,
        tuple(x + y for x, y in zip(a.cos_coeffs, b.cos_coeffs)),
        tuple(x + y for x, y in zip(a.sin_coeffs, b.sin_coeffs)),
    )
    # min(f + g) >= min f + min g, up to rounding at the scale of the coefficients
    slack = 1e-12 * max(1.0, _radius_magnitude(a) + _radius_magnitude(b))
    assert _min_radius(out) >= _min_radius(a) + _min_radius(b) - slack
    return out


def _validation_nodes(degree: int, n: Optional[int] = None) -> int:
    if n is not None:
        return n
    return max(1024, 1 << int(np.ceil(np.log2(4 * degree + 1))))


@dataclass(frozen=True)
class ConvexityVerdict:
    """Outcome of :py:func:`validate`.

    :param accepted: whether min(h + h'') >= eps_convex on the grid
    :param min_value: minimum of h + h'' over the grid
    :param node: grid index of the minimum
    :param theta: angle of the minimum
    :param eps_convex: threshold used
    """

    accepted: bool
    min_value: float
    node: int
    theta: float
    eps_convex: float

    def raise_for_rejection(self) -> None:
        if not self.accepted:
            raise BodyValidationError(
                self.min_value, self.node, self.theta, self.eps_convex
            )


def validate(
    body: SupportBody, n: Optional[int] = None, eps_convex: float = 1e-8
) -> ConvexityVerdict:
    """Check strict convexity, h + h'' >= eps_convex, on a grid.

    Nonnegativity of h itself is not required here.

    :param body: body to check
    :param n: grid node count, at least 4 * degree; defaults to the larger of
        1024 and the next power of two above 4 * degree
    :param eps_convex: smallest admissible curvature radius
    """
    n = _validation_nodes(body.degree, n)
    check_node_count(n, body.degree, strict=False)
    profile = curvature_profile(body, n)
    m, j = profile.min()
    return ConvexityVerdict(m >= eps_convex, m, j, float(profile.thetas[j]), eps_convex)


def require_valid(
    body: SupportBody, n: Optional[int] = None, eps_convex: float = 1e-8
) -> SupportBody:
    """Return `body` unchanged if it passes :py:func:`validate`.

    :raises BodyValidationError: carrying the violating node otherwise
    """
    validate(body, n, eps_convex).raise_for_rejection()
    return body


def random_body(
    seed: Union[int, np.random.Generator],
    degree: int = 6,
    decay: float = 3.0,
    amplitude: float = 1.0,
) -> SupportBody:
    """Draw a strictly convex body with zero first harmonics.

    Harmonics k = 2..degree get coefficients amplitude * k^(-decay) * U(-1, 1),
    a0 = 1, and all harmonics are then scaled by one common factor until
    min(h + h'') >= 0.1.

    :param seed: integer seed, or a generator to draw from
    :param degree: highest harmonic, at least 2
    :param decay: amplitude decay exponent p >= 2
    :param amplitude: overall amplitude before rescaling; 0 gives the unit disk
    """
    if degree < 2:
        raise ValueError(f"degree must be at least 2, got {degree}")
    if decay < 2:
        raise ValueError(f"decay must be at least 2, got {decay}")
    rng = np.random.default_rng(seed)
    k = np.arange(2, degree + 1, dtype=float)
    envelope = amplitude * k ** (-decay)
    c = envelope * rng.uniform(-1.0, 1.0, k.size)
    s = envelope * rng.uniform(-1.0, 1.0, k.size)
    cos_coeffs = np.concatenate(([0.0], c))
    sin_coeffs = np.concatenate(([0.0], s))

    # oversample so the grid minimum is within roundoff of the true minimum
    n = max(4096, 1 << int(np.ceil(np.log2(64 * degree))))
    target = GENERATED_MIN_RADIUS * (1 + 1e-3)
    harmonic_part = SupportBody(0.0, tuple(cos_coeffs), tuple(sin_coeffs))
    m = curvature_profile(harmonic_part, n).min()[0]
    factor = 1.0
    if 1.0 + m < target:
        factor = (1.0 - target) / -m
        while 1.0 + factor * m < target:
            factor *= 0.99
        logger.debug("random_body: harmonics rescaled by %.6g", factor)
    body = SupportBody(
        1.0,
        tuple(float(x) for x in factor * cos_coeffs),
        tuple(float(x) for x in factor * sin_coeffs),
    )
    return body
