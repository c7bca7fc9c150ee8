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

"""Relative curvature radius, the level-set partition and the inequality check

For a pair (K, L) at a dilation position and F strictly convex on (0, +inf),

    1/V(L) int F(rho) h_L (h_L + h_L'') dtheta >= F(-t1) + F(-t2),

with equality exactly for homothetic pairs. :py:func:`verify` evaluates both
sides together with the intermediate quantities the inequality is derived from.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from .config import Settings, resolve_settings
from .dilation import DilationCertificate, certify
from .exceptions import DomainError, NotAtDilationPositionError
from .functionals import ConvexFunctional, select
from .measures import SteinerData, steiner_data
from .support_body import (
    GridProfile,
    SupportBody,
    check_node_count,
    curvature_profile,
    grid_angles,
    require_valid,
    sample,
)

logger = logging.getLogger(__name__)

#: Tolerance of the ordering -t1 <= r <= R <= -t2.
CHAIN_TOL = 1e-7
#: Homothety residual above which the slack must be strictly positive.
STRICT_RESIDUAL = 1e-3
#: Margin the slack must exceed for such pairs.
STRICT_MARGIN = 1e-6
#: Bound on |slack| for homothetic pairs.
EQUALITY_TOL = 1e-8

POSITIONS = ("dilation", "given")


def _fine_grid(settings: Settings, n: Optional[int], *bodies: SupportBody) -> int:
    n = settings.partition_grid if n is None else n
    degree = max(b.degree for b in bodies)
    while n <= 4 * degree:
        n *= 2
    check_node_count(n, degree)
    return n


class _FineSamples(NamedTuple):
    h_k: NDArray[np.float64]
    h_l: NDArray[np.float64]
    radius_k: NDArray[np.float64]
    radius_l: NDArray[np.float64]


def _fine_samples(k: SupportBody, l: SupportBody, n: int) -> _FineSamples:
    return _FineSamples(
        sample(k, n).values,
        sample(l, n).values,
        curvature_profile(k, n).values,
        curvature_profile(l, n).values,
    )


def _rho_and_weights(
    samples: _FineSamples,
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """rho on the grid, and node weights w_j = (2 pi / n) h_L (h_L + h_L'')."""
    radius_l = samples.radius_l
    if np.min(radius_l) <= 0:
        raise DomainError("h_L + h_L'' must be positive for rho to be defined")
    rho = samples.radius_k / radius_l
    w = (2 * np.pi / radius_l.size) * samples.h_l * radius_l
    return rho, w


def relative_curvature_radius(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> GridProfile:
    """rho = (h_K + h_K'') / (h_L + h_L'') on the grid.

    This is the ratio whose L-weighted mean reproduces 2 V(K,L) / V(L), since
    int h_L (h_K + h_K'') dtheta = 2 V(K,L).

    :param n: node count, defaults to the configured partition grid
    """
    settings = settings or resolve_settings()
    n = _fine_grid(settings, n, k, l)
    return GridProfile(_rho_and_weights(_fine_samples(k, l, n))[0])


@dataclass(frozen=True)
class PartitionResult:
    """The superlevel set I_1 of rho with L-measure V(L), and its averages.

    :param a: threshold; rho >= a on I_1 and rho <= a on its complement
    :param weights: membership of each node in I_1, in [0, 1]; only the node
        straddling the threshold is fractional
    :param rho1: mean of rho over I_1 w.r.t. h_L (h_L + h_L'') dtheta / V(L)
    :param rho2: the same over the complement
    :param b: rho1 - V(K,L)/V(L)
    :param measure: L-measure of I_1, equal to v_l up to roundoff
    :param v_l: V(L) on the partition grid
    :param v_kl: V(K,L) on the partition grid
    """

    a: float
    weights: NDArray[np.float64] = field(repr=False)
    rho1: float
    rho2: float
    b: float
    measure: float
    v_l: float
    v_kl: float

    @property
    def node_count(self) -> int:
        return int(self.weights.size)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "b": self.b,
            "measure": self.measure,
            "node_count": self.node_count,
        }


def _partition(rho: NDArray[np.float64], w: NDArray[np.float64]) -> PartitionResult:
    n = rho.size
    v_l = 0.5 * float(np.sum(w))
    v_kl = 0.5 * float(np.dot(rho, w))
    # descending rho, ties by ascending node index
    order = np.lexsort((np.arange(n), -rho))
    cumulative = np.cumsum(w[order])
    reached = cumulative >= v_l
    p = int(np.argmax(reached)) if reached.any() else n - 1
    weights = np.zeros(n)
    weights[order[:p]] = 1.0
    before = float(cumulative[p - 1]) if p > 0 else 0.0
    straddling = order[p]
    if w[straddling] > 0:
        weights[straddling] = min(1.0, max(0.0, (v_l - before) / w[straddling]))
    weights.setflags(write=False)
    measure = float(np.dot(weights, w))
    rho1 = float(np.dot(weights * rho, w)) / v_l
    rho2 = float(np.dot((1.0 - weights) * rho, w)) / v_l
    assert abs(rho1 + rho2 - 2 * v_kl / v_l) <= 1e-10 * max(1.0, rho1), (
        rho1 + rho2,
        2 * v_kl / v_l,
    )
    return PartitionResult(
        float(rho[straddling]),
        weights,
        rho1,
        rho2,
        rho1 - v_kl / v_l,
        measure,
        v_l,
        v_kl,
    )


def partition(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> PartitionResult:
    """Split the circle into I_1, the largest-rho nodes carrying L-measure
    V(L), and its complement I_2.

    Nodes are taken in order of decreasing rho until their weights reach V(L);
    the node where the running total crosses V(L) joins with the fraction that
    makes the total exact.

    :param n: node count, defaults to the configured partition grid
    """
    settings = settings or resolve_settings()
    n = _fine_grid(settings, n, k, l)
    return _partition(*_rho_and_weights(_fine_samples(k, l, n)))


def _lhs(
    rho: NDArray[np.float64], w: NDArray[np.float64], f: ConvexFunctional
) -> float:
    v_l = 0.5 * float(np.sum(w))
    return float(np.dot(f(rho), w)) / v_l


def lhs_functional(
    k: SupportBody,
    l: SupportBody,
    f: ConvexFunctional,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """1/V(L) int F(rho) h_L (h_L + h_L'') dtheta.

    :raises DomainError: if rho is not positive on the grid
    """
    settings = settings or resolve_settings()
    n = _fine_grid(settings, n, k, l)
    return _lhs(*_rho_and_weights(_fine_samples(k, l, n)), f)


def rhs_bound(steiner: SteinerData, f: ConvexFunctional) -> float:
    """F(-t1) + F(-t2).

    :raises DomainError: if -t1 is not positive
    """
    if -steiner.t1 <= 0:
        raise DomainError(f"-t1 = {-steiner.t1} is not positive")
    return float(f(-steiner.t1)) + float(f(-steiner.t2))


@dataclass(frozen=True)
class HomothetyFit:
    """Least-squares fit h_K ~ scale * h_L + <center, u>.

    :param homothetic: residual < 1e-8 (1 + max h_K) and scale > 0
    :param residual: largest absolute deviation at a grid node
    """

    homothetic: bool
    residual: float
    scale: float
    center: Tuple[float, float]


def homothety_test(
    k: SupportBody,
    l: SupportBody,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> HomothetyFit:
    """Decide whether K is a positive dilate of a translate of L."""
    settings = settings or resolve_settings()
    n = n or settings.grid_size
    degree = max(k.degree, l.degree)
    while n <= 4 * degree:
        n *= 2
    theta = grid_angles(n)
    hk = sample(k, n).values
    design = np.column_stack((sample(l, n).values, np.cos(theta), np.sin(theta)))
    coeffs, *_ = np.linalg.lstsq(design, hk, rcond=None)
    residual = float(np.max(np.abs(hk - design @ coeffs)))
    threshold = 1e-8 * (1.0 + float(np.max(hk)))
    return HomothetyFit(
        bool(residual < threshold and coeffs[0] > 0),
        residual,
        float(coeffs[0]),
        (float(coeffs[1]), float(coeffs[2])),
    )


def proof_identity(
    k: SupportBody,
    l: SupportBody,
    part: PartitionResult,
    steiner: SteinerData,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> Tuple[float, float, float]:
    """The integral -1/V(L) int (h_K - c h_L)(rho - a)(h_L + h_L'') dtheta,
    c = V(K,L)/V(L).

    It equals 2 delta^2 / V(L)^2 whatever a is, and at a dilation position it
    is at most 2 b delta / V(L), which gives b >= delta / V(L).

    :returns: (integral, 2 delta^2 / V(L)^2, 2 b delta / V(L))
    """
    settings = settings or resolve_settings()
    n = _fine_grid(settings, n, k, l)
    return _identity(_fine_samples(k, l, n), part, steiner)


def _identity(
    samples: _FineSamples, part: PartitionResult, steiner: SteinerData
) -> Tuple[float, float, float]:
    n = samples.h_k.size
    c = steiner.v_kl / steiner.v_l
    deviation = samples.h_k - c * samples.h_l
    excess = samples.radius_k - part.a * samples.radius_l
    integral = -2 * np.pi * float(np.sum(deviation * excess)) / n / steiner.v_l
    expected = 2 * steiner.delta**2 / steiner.v_l**2
    bound = 2 * part.b * steiner.delta / steiner.v_l
    return integral, expected, bound


def ratio_band(
    k: SupportBody,
    l: SupportBody,
    steiner: SteinerData,
    n: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> float:
    """delta/V(L) - max |h_K / h_L - V(K,L)/V(L)| over nodes with h_L > 0.

    Nonnegative at a dilation position with the origin inside both bodies.
    """
    settings = settings or resolve_settings()
    n = n or settings.grid_size
    degree = max(k.degree, l.degree)
    while n <= 4 * degree:
        n *= 2
    hk = sample(k, n).values
    hl = sample(l, n).values
    inside = hl > settings.tol_boundary
    c = steiner.v_kl / steiner.v_l
    spread = float(np.max(np.abs(hk[inside] / hl[inside] - c)))
    return steiner.delta / steiner.v_l - spread


@dataclass(frozen=True)
class FunctionalCheck:
    """Both sides of the inequality for one F, and the Jensen midpoint
    F(rho1) + F(rho2) between them."""

    name: str
    lhs: float
    mid: float
    rhs: float
    convexity_checked: bool
    strict: bool

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "mid": self.mid,
            "rhs": self.rhs,
            "slack": self.slack,
            "convexity_checked": self.convexity_checked,
            "strict": self.strict,
        }


@dataclass(frozen=True)
class ChainCheck:
    """The ordering -t1 <= r <= R <= -t2."""

    neg_t1: float
    r: float
    R: float
    neg_t2: float

    @property
    def ok(self) -> bool:
        return (
            self.neg_t1 <= self.r + CHAIN_TOL
            and self.r <= self.R + CHAIN_TOL
            and self.R <= self.neg_t2 + CHAIN_TOL
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "neg_t1": self.neg_t1,
            "r": self.r,
            "R": self.R,
            "neg_t2": self.neg_t2,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class GreenOsherReport:
    """Everything :py:func:`verify` computes for one pair.

    :param rho1_bound: rho1 - (-t2), nonnegative at a dilation position
    :param b_bound: b - delta/V(L), nonnegative at a dilation position
    :param identity: the integral of :py:func:`proof_identity`
    :param identity_bound: 2 b delta / V(L)
    :param band_slack: result of :py:func:`ratio_band`
    """

    steiner: SteinerData
    certificate: DilationCertificate
    partition: PartitionResult
    functionals: List[FunctionalCheck]
    rho1_bound: float
    b_bound: float
    homothety: HomothetyFit
    chain: ChainCheck
    identity: float
    identity_bound: float
    band_slack: float
    position: str
    tol: float

    @property
    def homothetic(self) -> bool:
        return self.homothety.homothetic

    @property
    def residual(self) -> float:
        return self.homothety.residual

    @property
    def passed(self) -> bool:
        """Every slack is at least -tol."""
        return all(c.slack >= -self.tol for c in self.functionals)

    @property
    def jensen_ok(self) -> bool:
        """lhs >= F(rho1) + F(rho2) >= rhs within tol for every F."""
        return all(
            c.lhs >= c.mid - self.tol and c.mid >= c.rhs - self.tol
            for c in self.functionals
        )

    @property
    def bounds_ok(self) -> bool:
        return self.rho1_bound >= -self.tol and self.b_bound >= -self.tol

    @property
    def strict_ok(self) -> bool:
        """Slack exceeds STRICT_MARGIN where strictness is required, and
        |slack| < EQUALITY_TOL for homothetic pairs."""
        for c in self.functionals:
            if c.strict and not c.slack > STRICT_MARGIN:
                return False
            if self.homothetic and abs(c.slack) >= EQUALITY_TOL:
                return False
        return True

    @property
    def consistent(self) -> bool:
        """All checks that must hold for a pair at a dilation position."""
        return (
            self.passed
            and self.jensen_ok
            and self.bounds_ok
            and self.strict_ok
            and self.chain.ok
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steiner": self.steiner.to_dict(),
            "certificate": self.certificate.to_dict(),
            "partition": self.partition.to_dict(),
            "functionals": [c.to_dict() for c in self.functionals],
            "rho1_bound": self.rho1_bound,
            "b_bound": self.b_bound,
            "homothetic": self.homothetic,
            "residual": self.residual,
            "position": self.position,
            "chain": self.chain.to_dict(),
            "identity": self.identity,
            "identity_bound": self.identity_bound,
            "band_slack": self.band_slack,
            "passed": self.passed,
        }


def verify(
    k: SupportBody,
    l: SupportBody,
    functionals: Optional[Sequence[ConvexFunctional]] = None,
    n: Optional[int] = None,
    tol: Optional[float] = None,
    position: str = "dilation",
    settings: Optional[Settings] = None,
    certificate: Optional[DilationCertificate] = None,
) -> GreenOsherReport:
    """Evaluate the inequality, its intermediate bounds and the equality case.

    :param functionals: functionals to check, defaults to the whole registry
    :param n: base grid for containment and homothety; the partition and the
        functional integrals use the larger of this and the partition grid
    :param tol: absolute tolerance of the checks
    :param position: ``"dilation"`` requires the pair to be at a dilation
        position; ``"given"`` checks the pair where it stands, as in the
        classical setting of an origin-symmetric L
    :param certificate: certificate of this very pair, such as the one returned
        by :py:func:`to_dilation_position`; computed when omitted
    :raises NotAtDilationPositionError: if a dilation position is required but
        the pair is not at one
    """
    if position not in POSITIONS:
        raise ValueError(f"position must be one of {POSITIONS}, got '{position}'")
    settings = settings or resolve_settings()
    if tol is not None:
        settings = replace(settings, tol=tol)
    if functionals is None:
        functionals = select()
    require_valid(k, eps_convex=settings.eps_convex)
    require_valid(l, eps_convex=settings.eps_convex)

    if certificate is None:
        certificate = certify(k, l, n, settings)
    if position == "dilation" and not certificate.at_dilation_position:
        raise NotAtDilationPositionError(
            "Pair is not at a dilation position; translate it with "
            "to_dilation_position first"
        )
    steiner = steiner_data(k, l)
    fine = _fine_grid(settings, max(n or 0, settings.partition_grid), k, l)
    samples = _fine_samples(k, l, fine)
    rho, w = _rho_and_weights(samples)
    part = _partition(rho, w)
    homothety = homothety_test(k, l, n, settings)
    strict = homothety.residual > STRICT_RESIDUAL

    checks = []
    for f in functionals:
        checks.append(
            FunctionalCheck(
                f.name,
                _lhs(rho, w, f),
                float(f(part.rho1)) + float(f(part.rho2)),
                rhs_bound(steiner, f),
                f.convexity_checked,
                strict,
            )
        )
    identity, _, identity_bound = _identity(samples, part, steiner)
    report = GreenOsherReport(
        steiner,
        certificate,
        part,
        checks,
        part.rho1 + steiner.t2,
        part.b - steiner.delta / steiner.v_l,
        homothety,
        ChainCheck(-steiner.t1, certificate.r, certificate.R, -steiner.t2),
        identity,
        identity_bound,
        ratio_band(k, l, steiner, n, settings),
        position,
        settings.tol,
    )
    logger.debug(
        "verify: rho1 = %.12g, b = %.12g, min slack = %.3e",
        part.rho1,
        part.b,
        min((c.slack for c in checks), default=float("nan")),
    )
    return report
