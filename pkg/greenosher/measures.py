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

"""Areas, mixed areas and the relative Steiner polynomial
"""

import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np
from numpy.typing import NDArray

from .exceptions import NegativeDiscriminantError
from .support_body import (
    GridProfile,
    SupportBody,
    boundary_points,
    check_node_count,
    curvature_profile,
    derivative_profile,
    sample,
)

logger = logging.getLogger(__name__)

#: Radicands of V(K,L)^2 - V(K)V(L) above -DISCRIMINANT_WINDOW (relative to
#: V(K,L)^2 when that exceeds 1) are roundoff and clamp to zero.
DISCRIMINANT_WINDOW = 1e-12


def quadrature_nodes(*bodies: SupportBody, n: Optional[int] = None) -> int:
    """Node count that integrates products of the given bodies exactly.

    :param n: explicit node count; checked rather than computed if given
    :returns: the smallest power of two >= max(1024, 8 * total degree)
    """
    total = sum(b.degree for b in bodies)
    if n is not None:
        check_node_count(n, total // 2 + total % 2)
        return n
    need = max(1024, 8 * total)
    return 1 << int(np.ceil(np.log2(need)))


def integrate_periodic(profile: GridProfile) -> float:
    """Trapezoidal rule on [0, 2 pi]; exact for trigonometric polynomials of
    degree below N/2."""
    return float(2 * np.pi * np.sum(profile.values) / profile.node_count)


def _integral(values: NDArray[np.float64]) -> float:
    return float(2 * np.pi * np.sum(values) / values.size)


def area(body: SupportBody, n: Optional[int] = None) -> float:
    """V(K) = 1/2 int h (h + h'') dtheta."""
    n = quadrature_nodes(body, body, n=n)
    h = sample(body, n).values
    return 0.5 * _integral(h * curvature_profile(body, n).values)


def mixed_area(k: SupportBody, l: SupportBody, n: Optional[int] = None) -> float:
    """Mixed area V(K, L) = 1/2 int h_K (h_L + h_L'') dtheta.

    The first-derivative form 1/2 int (h_K h_L - h_K' h_L') dtheta is computed
    alongside and must agree to 1e-10.
    """
    n = quadrature_nodes(k, l, n=n)
    hk = sample(k, n).values
    hl = sample(l, n).values
    v = 0.5 * _integral(hk * curvature_profile(l, n).values)
    dk = derivative_profile(k, n).values
    dl = derivative_profile(l, n).values
    v_first = 0.5 * _integral(hk * hl - dk * dl)
    assert abs(v - v_first) <= 1e-10 * max(1.0, abs(v)), (v, v_first)
    return v


@dataclass(frozen=True)
class SteinerData:
    """Coefficients and roots of V(K + tL) = V(K) + 2 V(K,L) t + V(L) t^2.

    :param v_k: area of K
    :param v_l: area of L
    :param v_kl: mixed area V(K, L)
    :param delta: sqrt(V(K,L)^2 - V(K) V(L)), stored once so every downstream
        comparison uses the same value
    :param t1: larger root, -V(K,L)/V(L) + delta/V(L)
    :param t2: smaller root, -V(K,L)/V(L) - delta/V(L)
    """

    v_k: float
    v_l: float
    v_kl: float
    delta: float
    t1: float
    t2: float

    def evaluate(self, t: float) -> float:
        return self.v_k + 2 * self.v_kl * t + self.v_l * t * t

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _deviation(k: SupportBody, l: SupportBody, c: float) -> SupportBody:
    """Coefficients of h_K - c h_L, not necessarily a convex body."""
    d = max(k.degree, l.degree)
    k, l = k.padded(d), l.padded(d)
    return SupportBody(
        k.a0 - c * l.a0,
        tuple(x - c * y for x, y in zip(k.cos_coeffs, l.cos_coeffs)),
        tuple(x - c * y for x, y in zip(k.sin_coeffs, l.sin_coeffs)),
    )


def steiner_data(k: SupportBody, l: SupportBody, n: Optional[int] = None) -> SteinerData:
    """Areas, mixed area, discriminant and roots of the relative Steiner
    polynomial of K with respect to L.

    :raises NegativeDiscriminantError: if V(K,L)^2 - V(K)V(L) is negative beyond
        roundoff, which the Minkowski inequality forbids
    """
    v_k = area(k, n)
    v_l = area(l, n)
    v_kl = mixed_area(k, l, n)
    # V(K,L)^2 - V(K)V(L) = -V(L) V(g) for g = h_K - (V(K,L)/V(L)) h_L, which
    # vanishes coefficient-wise for homothetic pairs instead of cancelling
    radicand = -v_l * area(_deviation(k, l, v_kl / v_l), n)
    if radicand < 0:
        if radicand < -DISCRIMINANT_WINDOW * max(1.0, v_kl * v_kl):
            raise NegativeDiscriminantError(radicand)
        logger.debug("Clamping discriminant %.3e to zero", radicand)
        radicand = 0.0
    delta = float(np.sqrt(radicand))
    t1 = (-v_kl + delta) / v_l
    t2 = (-v_kl - delta) / v_l
    return SteinerData(v_k, v_l, v_kl, delta, t1, t2)


def steiner_eval(
    k: SupportBody, l: SupportBody, t: float, n: Optional[int] = None
) -> float:
    """V(K) + 2 V(K,L) t + V(L) t^2 for any real t."""
    return area(k, n) + 2 * mixed_area(k, l, n) * t + area(l, n) * t * t


def polygon_area(points: NDArray[np.float64]) -> float:
    """Shoelace area of a counter-clockwise polygon given as an (n, 2) array."""
    x, y = points[:, 0], points[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def polygon_mixed_area(k: SupportBody, l: SupportBody, n: int = 100_000) -> float:
    """Mixed area of the n-gons inscribed through boundary points at common
    normal angles.

    Boundary points of K + L are the sums of those of K and L at equal normal
    angles, so 1/2 [V(P_{K+L}) - V(P_K) - V(P_L)] needs three shoelaces. The
    error against :py:func:`mixed_area` is O(n^-2).
    """
    pk = boundary_points(k, n)
    pl = boundary_points(l, n)
    return 0.5 * (polygon_area(pk + pl) - polygon_area(pk) - polygon_area(pl))
