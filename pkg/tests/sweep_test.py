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

import os

import numpy as np
import pytest

from greenosher.config import Settings
from greenosher.functionals import registry
from greenosher.sweep import (
    SweepSummary,
    TrialOutcome,
    random_pair,
    run_sweep,
    run_trial,
)

# The 1000-pair corpus is slow on a single core; set GREENOSHER_RUN_SLOW_TESTS to run it.
skip_slow_tests: bool = os.getenv("GREENOSHER_RUN_SLOW_TESTS") is None
REASON = "GREENOSHER_RUN_SLOW_TESTS not set (long randomized corpus)"


def test_random_pair_deterministic() -> None:
    assert random_pair(3) == random_pair(3)
    assert random_pair(3) != random_pair(4)


def test_empty_sweep(defaults: Settings) -> None:
    summary = run_sweep(0, settings=defaults)
    assert summary.to_dict() == {
        "trials": 0,
        "failures": 0,
        "min_slack": {},
        "min_rho1_bound": None,
        "min_b_bound": None,
        "failed_seeds": [],
    }
    assert summary.passed
    with pytest.raises(ValueError):
        run_sweep(-1, settings=defaults)
    with pytest.raises(ValueError):
        run_sweep(1, jobs=0, settings=defaults)


def test_summary_reduction() -> None:
    summary = SweepSummary()
    summary.add(TrialOutcome(10, True, {"square": 0.5}, 0.2, 0.1))
    summary.add(TrialOutcome(11, False, {}, error="SolverFailureError: x"))
    summary.add(TrialOutcome(12, True, {"square": 0.25}, 0.3, 0.05))
    assert summary.trials == 3
    assert summary.failures == 1
    assert summary.failed_seeds == [11]
    assert summary.min_slack == {"square": 0.25}
    assert summary.min_rho1_bound == 0.2
    assert summary.min_b_bound == 0.05
    assert not summary.passed


@pytest.mark.timeout(600)
def test_sweep_60(defaults: Settings) -> None:
    summary = run_sweep(60, seed=1, settings=defaults)
    assert summary.trials == 60
    assert summary.failures == 0, summary.failed_seeds
    assert set(summary.min_slack) == set(registry())
    assert all(s > 0 for s in summary.min_slack.values())
    assert summary.min_rho1_bound is not None and summary.min_rho1_bound >= -1e-9
    assert summary.min_b_bound is not None and summary.min_b_bound >= -1e-9


@pytest.mark.timeout(600)
def test_parallel_sweep_matches_serial(defaults: Settings) -> None:
    serial = run_sweep(6, seed=100, functional_names=["square"], settings=defaults)
    parallel = run_sweep(
        6, seed=100, functional_names=["square"], jobs=2, settings=defaults
    )
    assert parallel.to_dict() == serial.to_dict()


def test_power_functional(defaults: Settings) -> None:
    summary = run_sweep(
        2, seed=5, functional_names=["power_p"], power=3.0, settings=defaults
    )
    assert list(summary.min_slack) == ["power_3"]
    assert summary.passed


@pytest.mark.slow
@pytest.mark.skipif(skip_slow_tests, reason=REASON)
@pytest.mark.timeout(3600)
def test_sweep_1000(defaults: Settings) -> None:
    summary = run_sweep(1000, seed=0, jobs=os.cpu_count() or 1, settings=defaults)
    assert summary.failures == 0, summary.failed_seeds


@pytest.mark.parametrize(
    "error", [ValueError("bad grid"), np.linalg.LinAlgError("singular")]
)
def test_trial_errors_are_recorded(
    error: Exception, defaults: Settings, monkeypatch: pytest.MonkeyPatch
) -> None:
    def broken(*args: object, **kwargs: object) -> None:
        raise error

    monkeypatch.setattr("greenosher.sweep.verify", broken)
    outcome = run_trial(3, 6, 3.0, ["square"], None, defaults)
    assert not outcome.ok
    assert outcome.error == f"{type(error).__name__}: {error}"
    assert outcome.slacks == {}
