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

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies

from greenosher.config import Settings
from greenosher.dilation import to_dilation_position
from greenosher.exceptions import (
    BodyValidationError,
    DomainError,
    NotAtDilationPositionError,
)
from greenosher.functionals import RECIPROCAL, SQUARE, custom, select
from greenosher.green_osher import (
    EQUALITY_TOL,
    homothety_test,
    lhs_functional,
    partition,
    proof_identity,
    ratio_band,
    relative_curvature_radius,
    rhs_bound,
    verify,
)
from greenosher.measures import SteinerData, steiner_data
from greenosher.support_body import SupportBody, random_body, scale, translate
from greenosher.sweep import random_pair

B = 1.2 / math.pi


def test_oval_rho(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    rho = relative_curvature_radius(oval, unit_disk, n=1024, settings=defaults)
    assert np.allclose(rho.values, 1 - 0.6 * np.cos(2 * rho.thetas), atol=1e-14)
    assert relative_curvature_radius(oval, unit_disk, settings=defaults).node_count == (
        defaults.partition_grid
    )


def test_rho_needs_positive_radius(oval: SupportBody, defaults: Settings) -> None:
    flat = SupportBody.from_coefficients(1.0, [0.0, 0.5])
    with pytest.raises(DomainError):
        relative_curvature_radius(oval, flat, settings=defaults)


def test_oval_partition(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    part = partition(oval, unit_disk, settings=defaults)
    assert part.a == pytest.approx(1.0, abs=1e-8)
    assert part.rho1 == pytest.approx(1 + B, abs=1e-8)
    assert part.rho2 == pytest.approx(1 - B, abs=1e-8)
    assert part.b == pytest.approx(B, abs=1e-8)
    assert part.measure == pytest.approx(np.pi, abs=1e-12)
    assert part.v_l == pytest.approx(np.pi, abs=1e-12)
    assert part.rho1 + part.rho2 == pytest.approx(2.0, abs=1e-10)
    fractional = (part.weights > 0) & (part.weights < 1)
    assert np.count_nonzero(fractional) <= 1
    assert set(part.to_dict()) == {"a", "rho1", "rho2", "b", "measure", "node_count"}


def test_disk_partition(unit_disk: SupportBody, defaults: Settings) -> None:
    part = partition(SupportBody.disk(2.0), unit_disk, settings=defaults)
    assert part.rho1 == pytest.approx(2.0, abs=1e-12)
    assert part.rho2 == pytest.approx(2.0, abs=1e-12)
    assert part.b == pytest.approx(0.0, abs=1e-12)
    # ties are broken by node index, so I_1 is the first half of the circle, up
    # to roundoff at the node where the running total crosses V(L)
    n = part.node_count
    assert np.all(part.weights[: n // 2 - 1] == 1.0)
    assert np.all(part.weights[n // 2 + 1 :] == 0.0)
    assert float(np.sum(part.weights)) == pytest.approx(n / 2, abs=1e-6)


def test_oval_sides(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    assert lhs_functional(oval, unit_disk, SQUARE, settings=defaults) == pytest.approx(
        2.36, abs=1e-10
    )
    data = steiner_data(oval, unit_disk)
    assert rhs_bound(data, SQUARE) == pytest.approx(2.12, abs=1e-10)
    assert rhs_bound(data, RECIPROCAL) == pytest.approx(2 / 0.94, abs=1e-10)


def test_rhs_domain() -> None:
    data = SteinerData(1.0, 1.0, -0.5, 0.5, 1.0, 0.0)
    with pytest.raises(DomainError):
        rhs_bound(data, SQUARE)


def test_oval_report(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    report = verify(oval, unit_disk, [SQUARE], settings=defaults)
    (check,) = report.functionals
    assert check.lhs == pytest.approx(2.36, abs=1e-8)
    assert check.mid == pytest.approx(2 + 2 * B * B, abs=1e-8)
    assert check.rhs == pytest.approx(2.12, abs=1e-8)
    assert check.slack == pytest.approx(0.24, abs=1e-8)
    assert check.strict
    assert report.passed and report.jensen_ok and report.bounds_ok
    assert report.strict_ok and report.chain.ok and report.consistent
    assert not report.homothetic
    assert report.residual >= 0.2 - 1e-8
    assert report.certificate.r == pytest.approx(0.8, abs=1e-8)
    assert report.certificate.R == pytest.approx(1.2, abs=1e-8)
    assert report.steiner.delta == pytest.approx(np.pi * math.sqrt(0.06), abs=1e-10)
    # rho1 - (-t2) and b - delta / V(L)
    assert report.rho1_bound == pytest.approx(B - math.sqrt(0.06), abs=1e-8)
    assert report.b_bound == pytest.approx(B - math.sqrt(0.06), abs=1e-8)
    assert report.identity == pytest.approx(0.12, abs=1e-10)
    assert report.identity <= report.identity_bound
    assert report.band_slack >= -1e-12


def test_report_dict(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    d = verify(oval, unit_disk, settings=defaults).to_dict()
    for key in (
        "steiner",
        "certificate",
        "partition",
        "functionals",
        "rho1_bound",
        "b_bound",
        "homothetic",
        "residual",
        "position",
        "chain",
        "identity",
        "identity_bound",
        "band_slack",
        "passed",
    ):
        assert key in d
    assert [c["name"] for c in d["functionals"]] == [f.name for f in select()]
    assert d["position"] == "dilation"
    assert d["passed"] is True


def test_disks_are_equality_case(unit_disk: SupportBody, defaults: Settings) -> None:
    report = verify(SupportBody.disk(2.0), unit_disk, settings=defaults)
    assert report.homothetic
    for check in report.functionals:
        assert abs(check.slack) < EQUALITY_TOL
        assert not check.strict
    assert report.steiner.t1 == pytest.approx(-2.0, abs=1e-10)
    assert report.consistent


def test_not_at_dilation_position(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    far = translate(oval, (5.0, 0.0))
    with pytest.raises(NotAtDilationPositionError):
        verify(far, unit_disk, settings=defaults)


def test_given_position(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    report = verify(oval, unit_disk, [SQUARE], position="given", settings=defaults)
    assert report.position == "given"
    assert report.passed
    with pytest.raises(ValueError):
        verify(oval, unit_disk, position="somewhere", settings=defaults)


def test_invalid_body_rejected(unit_disk: SupportBody, defaults: Settings) -> None:
    flat = SupportBody.from_coefficients(1.0, [0.0, 0.5])
    with pytest.raises(BodyValidationError):
        verify(flat, unit_disk, settings=defaults)


def test_custom_functional_flagged(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    report = verify(
        oval, unit_disk, [custom("quartic", lambda x: x**4)], settings=defaults
    )
    assert not report.functionals[0].convexity_checked
    assert report.passed


def test_homothety_test(oval: SupportBody, defaults: Settings) -> None:
    fit = homothety_test(translate(scale(oval, 3.0), (1.0, -2.0)), oval, settings=defaults)
    assert fit.homothetic
    assert fit.scale == pytest.approx(3.0)
    assert fit.center == pytest.approx((1.0, -2.0))
    assert not homothety_test(oval, SupportBody.disk(), settings=defaults).homothetic


def test_proof_identity(
    oval: SupportBody, unit_disk: SupportBody, defaults: Settings
) -> None:
    data = steiner_data(oval, unit_disk)
    part = partition(oval, unit_disk, settings=defaults)
    integral, expected, bound = proof_identity(
        oval, unit_disk, part, data, settings=defaults
    )
    assert expected == pytest.approx(0.12, abs=1e-12)
    assert integral == pytest.approx(expected, abs=1e-10)
    assert bound == pytest.approx(2 * B * math.sqrt(0.06), abs=1e-8)
    assert ratio_band(oval, unit_disk, data, settings=defaults) == pytest.approx(
        math.sqrt(0.06) - 0.2, abs=1e-12
    )


@given(seed=strategies.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=10, deadline=None)
def test_random_pairs(seed: int) -> None:
    k, l = random_pair(seed)
    k, l, _ = to_dilation_position(k, l)
    report = verify(k, l)
    assert report.consistent, report.to_dict()
    part = report.partition
    assert part.rho1 >= part.rho2
    assert part.b >= 0
    assert part.rho1 + part.rho2 == pytest.approx(
        2 * part.v_kl / part.v_l, abs=1e-10 * max(1.0, part.rho1)
    )
    assert part.measure == pytest.approx(part.v_l, rel=1e-12)
    assert report.identity == pytest.approx(
        2 * report.steiner.delta**2 / report.steiner.v_l**2, abs=1e-9
    )
    assert report.identity <= report.identity_bound + 1e-9


@given(
    seed=strategies.integers(min_value=0, max_value=2**32 - 1),
    t=strategies.floats(min_value=0.2, max_value=5.0),
    shift=strategies.tuples(
        strategies.floats(min_value=-2, max_value=2),
        strategies.floats(min_value=-2, max_value=2),
    ),
)
@settings(max_examples=50, deadline=None)
def test_homothetic_pairs(seed: int, t: float, shift: tuple) -> None:
    l = random_body(seed)
    k = translate(scale(l, t), shift)
    k, l, _ = to_dilation_position(k, l)
    report = verify(k, l)
    assert report.homothetic
    assert report.consistent
    for check in report.functionals:
        assert abs(check.slack) < EQUALITY_TOL


@given(
    seed=strategies.integers(min_value=0, max_value=2**32 - 1),
    s=strategies.floats(min_value=0.25, max_value=4.0),
)
@settings(max_examples=10, deadline=None)
def test_scale_covariance(seed: int, s: float) -> None:
    k, l = random_pair(seed)
    k, l, _ = to_dilation_position(k, l)
    base = verify(k, l, [SQUARE])
    # scaling about the origin keeps the pair at a dilation position
    scaled = verify(scale(k, s), l, [SQUARE])
    assert scaled.steiner.t1 == pytest.approx(s * base.steiner.t1, rel=1e-9)
    assert scaled.steiner.t2 == pytest.approx(s * base.steiner.t2, rel=1e-9)
    n = 4096
    assert np.allclose(
        relative_curvature_radius(scale(k, s), l, n).values,
        s * relative_curvature_radius(k, l, n).values,
        rtol=1e-12,
    )
    (before,) = base.functionals
    (after,) = scaled.functionals
    assert before.slack > 0
    assert after.slack > 0
    assert after.slack == pytest.approx(s**2 * before.slack, rel=1e-6, abs=1e-9)


def test_certificate_is_reused(
    oval: SupportBody,
    unit_disk: SupportBody,
    defaults: Settings,
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    k, l, cert = to_dilation_position(
        translate(oval, (0.3, 0.1)), unit_disk, settings=defaults
    )
    expected = verify(k, l, [SQUARE], settings=defaults)

    def recomputed(*args: object, **kwargs: object) -> None:
        raise AssertionError("certificate recomputed")

    monkeypatch.setattr("greenosher.green_osher.certify", recomputed)
    report = verify(k, l, [SQUARE], settings=defaults, certificate=cert)
    assert report.certificate is cert
    assert report.functionals[0].slack == expected.functionals[0].slack
    assert report.certificate.r == pytest.approx(expected.certificate.r, abs=1e-8)
    assert report.certificate.R == pytest.approx(expected.certificate.R, abs=1e-8)
    assert report.identity == pytest.approx(
        proof_identity(k, l, report.partition, report.steiner, settings=defaults)[0],
        abs=1e-15,
    )
