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

"""Relative inradius and outradius, and translation to a dilation position

Containment x + tL inside K is the pointwise inequality
t h_L(theta) + <x, u(theta)> <= h_K(theta), imposed at grid nodes. The
resulting small dense LPs are solved with the HiGHS dual simplex through
:py:func:`scipy.optimize.linprog`.
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import linprog, nnls  # type: ignore

from .config import Settings, resolve_settings
from .exceptions import InfeasibleError, SolverFailureError
from .support_body import SupportBody, grid_angles, sample, translate

logger = logging.getLogger(__name__)

_HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}

#: Slack added to dilation-position constraints, and the fallback if that fails.
POSITION_SLACK = 1e-9
RELAXED_POSITION_SLACK = 1e-6


class OriginClass(str, Enum):
    INTERIOR = "Interior"
    TANGENT = "Tangent"
    INVALID = "Invalid"


class ScaledTranslate(NamedTuple):
    """Scale t and translation x with x + tL inside (or covering) K."""

    scale: float
    translation: NDArray[np.float64]


@dataclass(frozen=True)
class DilationCertificate:
    """Inradius, outradius and the dilation-position verdict for a pair.

    :param r: relative inradius r(K, L)
    :param R: relative outradius R(K, L), the minimal covering scale
    :param x_in: x with x + rL inside K, for the bodies as certified
    :param x_out: x with x + RL covering K, for the bodies as certified
    :param origin_class: where the origin lies relative to both boundaries
    :param at_dilation_position: whether rL <= K <= RL holds at every grid node
        and the origin lies in both bodies
    :param node_count: grid the containment was checked on
    """

    r: float
    R: float
    x_in: Tuple[float, float]
    x_out: Tuple[float, float]
    origin_class: OriginClass
    at_dilation_position: bool
    node_count: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "R": self.R,
            "x_in": list(self.x_in),
            "x_out": list(self.x_out),
            "origin_class": self.origin_class.value,
            "at_dilation_position": self.at_dilation_position,
            "node_count": self.node_count,
        }


def _base_grid(settings: Settings, n: Optional[int], *bodies: SupportBody) -> int:
    n = settings.grid_size if n is None else n
    degree = max(b.degree for b in bodies)
    while n <= 4 * degree:
        n *= 2
    return n


def _solve_lp(
    c: NDArray[np.float64],
    a_ub: NDArray[np.float64],
    b_ub: NDArray[np.float64],
    bounds: Sequence[Tuple[Optional[float], Optional[float]]],
) -> NDArray[np.float64]:
    res = linprog(
        c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs", options=_HIGHS_OPTIONS
    )
    if res.status == 2:
        raise InfeasibleError(res.status, res.message)
    if res.status != 0:
        raise SolverFailureError(res.status, res.message)
    return np.asarray(res.x, dtype=float)


def _directions(n: int) -> NDArray[np.float64]:
    theta = grid_angles(n)
    return np.column_stack((np.cos(theta), np.sin(theta)))


def _containment_gap(
    k: SupportBody, l: SupportBody, t: float, x: NDArray[np.float64], n: int
) -> NDArray[np.float64]:
    """h_K - t h_L - <x, u> on the n-node grid."""
    return sample(k, n).values - t * sample(l, n).values - _directions(n) @ x


def _fit_scale(
    k: SupportBody, l: SupportBody, n: int, settings: Settings, covering: bool
) -> Tuple[ScaledTranslate, int]:
    """Largest inscribed (or smallest covering) translate of tL, refining the
    grid 4x while the constraint fails between nodes by more than
    tol_containment."""
    sign = -1.0 if covering else 1.0
    for attempt in range(settings.max_refinements + 1):
        u = _directions(n)
        a_ub = sign * np.column_stack((sample(l, n).values, u))
        b_ub = sign * sample(k, n).values
        z = _solve_lp(
            np.array([-sign, 0.0, 0.0]),
            a_ub,
            b_ub,
            [(0.0, None), (None, None), (None, None)],
        )
        t, x = float(z[0]), z[1:]
        gap = _containment_gap(k, l, t, x, 4 * n)
        violation = float(np.max(gap if covering else -gap))
        if violation <= settings.tol_containment:
            return ScaledTranslate(t, x), n
        logger.debug(
            "%s LP on %d nodes violated by %.3e between nodes",
            "covering" if covering else "inscribed",
            n,
            violation,
        )
        if attempt == settings.max_refinements:
            warnings.warn(
                f"Containment still violated by {violation:.3e} after "
                f"{settings.max_refinements} grid refinements"
            )
            return ScaledTranslate(t, x), n
        n *= 4
    raise AssertionError("unreachable")


def inradius(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> ScaledTranslate:
    """Relative inradius r(K, L) = max{t > 0 | x + tL inside K for some x}.

    Solves max t subject to t h_L(theta_j) + <x, u(theta_j)> <= h_K(theta_j).

    :param n: base grid node count, defaults to the configured grid size
    :returns: r and a witness translation x
    :raises SolverFailureError: if the LP is not solved to optimality
    """
    settings = settings or resolve_settings()
    n = _base_grid(settings, n, k, l)
    return _fit_scale(k, l, n, settings, covering=False)[0]


def outradius(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> ScaledTranslate:
    """Relative outradius R(K, L), the smallest t with K inside x + tL.

    Solves min t subject to h_K(theta_j) <= t h_L(theta_j) + <x, u(theta_j)>.

    :param n: base grid node count, defaults to the configured grid size
    :returns: R and a witness translation x
    :raises SolverFailureError: if the LP is not solved to optimality
    """
    settings = settings or resolve_settings()
    n = _base_grid(settings, n, k, l)
    return _fit_scale(k, l, n, settings, covering=True)[0]


def classify_origin(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> OriginClass:
    """Locate the origin for a pair at a dilation position.

    Interior if both support functions stay above tol_boundary; Tangent if both
    minima are within tol_boundary of zero at the same or adjacent nodes;
    Invalid otherwise.
    """
    settings = settings or resolve_settings()
    n = _base_grid(settings, n, k, l)
    min_k, j_k = sample(k, n).min()
    min_l, j_l = sample(l, n).min()
    tol = settings.tol_boundary
    if min_k > tol and min_l > tol:
        return OriginClass.INTERIOR
    if abs(min_k) <= tol and abs(min_l) <= tol:
        distance = abs(j_k - j_l)
        if min(distance, n - distance) <= 1:
            return OriginClass.TANGENT
    return OriginClass.INVALID


def _at_dilation_position(
    k: SupportBody, l: SupportBody, r: float, big_r: float, n: int, tol: float
) -> bool:
    hk = sample(k, n).values
    hl = sample(l, n).values
    return bool(
        np.all(r * hl <= hk + tol)
        and np.all(hk <= big_r * hl + tol)
        and np.all(hk >= -tol)
        and np.all(hl >= -tol)
    )


def _radii(
    k: SupportBody, l: SupportBody, n: int, settings: Settings
) -> Tuple[ScaledTranslate, ScaledTranslate]:
    inner = _fit_scale(k, l, n, settings, covering=False)[0]
    outer = _fit_scale(k, l, n, settings, covering=True)[0]
    if inner.scale > outer.scale:
        if inner.scale - outer.scale > settings.tol_containment:
            raise SolverFailureError(
                -1, f"inradius {inner.scale} exceeds outradius {outer.scale}"
            )
        # homothetic up to roundoff
        mid = 0.5 * (inner.scale + outer.scale)
        inner, outer = ScaledTranslate(mid, inner.translation), ScaledTranslate(
            mid, outer.translation
        )
    return inner, outer


def certify(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> DilationCertificate:
    """Compute r, R and decide whether the pair, as placed, is at a dilation
    position."""
    settings = settings or resolve_settings()
    n = _base_grid(settings, n, k, l)
    inner, outer = _radii(k, l, n, settings)
    return DilationCertificate(
        inner.scale,
        outer.scale,
        (float(inner.translation[0]), float(inner.translation[1])),
        (float(outer.translation[0]), float(outer.translation[1])),
        classify_origin(k, l, n, settings),
        _at_dilation_position(
            k, l, inner.scale, outer.scale, n, settings.tol_containment
        ),
        n,
    )


def _position_constraints(
    k: SupportBody, l: SupportBody, r: float, big_r: float, n: int, slack: float
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Rows a z <= b over z = (u_K, v_L): r (L + v_L) in K + u_K, K + u_K in
    R (L + v_L), and the origin in both translated bodies."""
    u = _directions(n)
    hk = sample(k, n).values
    hl = sample(l, n).values
    zero = np.zeros_like(u)
    blocks: List[NDArray[np.float64]] = [
        np.hstack((-u, r * u)),
        np.hstack((u, -big_r * u)),
        np.hstack((-u, zero)),
        np.hstack((zero, -u)),
    ]
    rhs = [hk - r * hl, big_r * hl - hk, hk, hl]
    return np.vstack(blocks), np.concatenate(rhs) + slack


def _position_lp(a: NDArray[np.float64], b: NDArray[np.float64]) -> NDArray[np.float64]:
    # variables: z (4), then s (4) with |z_i| <= s_i; a feasible start of small l1 norm
    eye = np.eye(4)
    a_abs = np.vstack((np.hstack((eye, -eye)), np.hstack((-eye, -eye))))
    a_ub = np.vstack((np.hstack((a, np.zeros((a.shape[0], 4)))), a_abs))
    b_ub = np.concatenate((b, np.zeros(8)))
    c = np.concatenate((np.zeros(4), np.ones(4)))
    bounds = [(None, None)] * 4 + [(0.0, None)] * 4
    return _solve_lp(c, a_ub, b_ub, bounds)[:4]


def _least_norm(
    a: NDArray[np.float64], b: NDArray[np.float64], start: NDArray[np.float64]
) -> NDArray[np.float64]:
    """Point of least Euclidean norm in {z | a z <= b}.

    Least distance programming: with E = [-a^T; -b^T] and f = e_last, the NNLS
    residual E y - f of min ||E y - f||, y >= 0, gives z = -res[:-1] / res[-1].
    Falls back to `start` when the residual degenerates or the point found
    leaves the polytope by more than rounding.
    """
    e = np.vstack((-a.T, -b[np.newaxis, :]))
    f = np.zeros(e.shape[0])
    f[-1] = 1.0
    y, _ = nnls(e, f, maxiter=10 * e.shape[1])
    res = e @ y - f
    if abs(res[-1]) < 1e-12:
        return start
    z = -res[:-1] / res[-1]
    if np.max(a @ z - b) > 1e-12 * max(1.0, float(np.max(np.abs(b)))):
        logger.debug("least-norm translation infeasible, keeping the LP point")
        return start
    return z


def _position(
    k: SupportBody, l: SupportBody, r: float, big_r: float, n: int, slack: float
) -> NDArray[np.float64]:
    a, b = _position_constraints(k, l, r, big_r, n, slack)
    return _least_norm(a, b, _position_lp(a, b))


def to_dilation_position(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Tuple[SupportBody, SupportBody, DilationCertificate]:
    """Translate K and L to a dilation position.

    With r = r(K, L) and R = R(K, L) fixed, finds translations u_K, v_L such
    that r (L + v_L) lies in K + u_K, which lies in R (L + v_L), and the origin
    lies in both translated bodies. Among feasible translations the one
    minimizing |u_K|^2 + |v_L|^2 is returned.

    :returns: translated K, translated L and their certificate
    :raises InfeasibleError: if no translation exists even with constraints
        relaxed by 1e-6
    """
    settings = settings or resolve_settings()
    n = _base_grid(settings, n, k, l)
    inner, outer = _radii(k, l, n, settings)
    r, big_r = inner.scale, outer.scale
    slack = POSITION_SLACK
    try:
        z = _position(k, l, r, big_r, n, slack)
    except InfeasibleError:
        warnings.warn(
            f"Dilation position infeasible with slack {POSITION_SLACK:g}; "
            f"retrying with {RELAXED_POSITION_SLACK:g}"
        )
        slack = RELAXED_POSITION_SLACK
        z = _position(k, l, r, big_r, n, slack)
    u_k, v_l = z[:2], z[2:]
    logger.debug("dilation translations u_K = %s, v_L = %s", u_k, v_l)
    k_moved = translate(k, u_k)
    l_moved = translate(l, v_l)
    x_in = inner.translation + u_k - r * v_l
    x_out = outer.translation + u_k - big_r * v_l
    certificate = DilationCertificate(
        r,
        big_r,
        (float(x_in[0]), float(x_in[1])),
        (float(x_out[0]), float(x_out[1])),
        classify_origin(k_moved, l_moved, n, settings),
        _at_dilation_position(
            k_moved, l_moved, r, big_r, n, max(settings.tol_containment, 2 * slack)
        ),
        n,
    )
    if not certificate.at_dilation_position:
        raise InfeasibleError(-1, "translated pair fails the containment check")
    return k_moved, l_moved, certificate
