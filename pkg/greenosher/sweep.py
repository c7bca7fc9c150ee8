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

"""Randomized corpus checks of the inequality

Trial i draws both bodies and their offsets from seed + i, moves the pair to a
dilation position and verifies it. Trials run in worker processes and are
merged in trial order, so the summary does not depend on scheduling.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from .config import Settings, resolve_settings
from .dilation import to_dilation_position
from .exceptions import GreenOsherError
from .functionals import select
from .green_osher import verify
from .support_body import SupportBody, random_body, translate

logger = logging.getLogger(__name__)

#: Offsets applied to generated bodies before repositioning are U(-0.5, 0.5)^2.
OFFSET_RANGE = 0.5


def random_pair(
    seed: int, degree: int = 6, decay: float = 3.0
) -> Tuple[SupportBody, SupportBody]:
    """Two generated bodies, each shifted by an independent random offset."""
    rng = np.random.default_rng(seed)
    k = random_body(rng, degree, decay)
    l = random_body(rng, degree, decay)
    k = translate(k, rng.uniform(-OFFSET_RANGE, OFFSET_RANGE, 2))
    l = translate(l, rng.uniform(-OFFSET_RANGE, OFFSET_RANGE, 2))
    return k, l


@dataclass(frozen=True)
class TrialOutcome:
    """Per-trial values the summary reduces over."""

    seed: int
    ok: bool
    slacks: Dict[str, float]
    rho1_bound: Optional[float] = None
    b_bound: Optional[float] = None
    error: Optional[str] = None


def run_trial(
    seed: int,
    degree: int,
    decay: float,
    functional_names: Optional[List[str]],
    power: Optional[float],
    settings: Settings,
) -> TrialOutcome:
    """Generate, reposition and verify one pair; errors become failed
    outcomes."""
    try:
        k, l = random_pair(seed, degree, decay)
        k, l, certificate = to_dilation_position(k, l, settings=settings)
        report = verify(
            k,
            l,
            select(functional_names, power),
            settings=settings,
            certificate=certificate,
        )
    except (GreenOsherError, AssertionError, ValueError, np.linalg.LinAlgError) as e:
        logger.warning("Trial with seed %d failed: %s", seed, e)
        return TrialOutcome(seed, False, {}, error=f"{type(e).__name__}: {e}")
    return TrialOutcome(
        seed,
        report.consistent,
        {c.name: c.slack for c in report.functionals},
        report.rho1_bound,
        report.b_bound,
    )


def _run_trial_args(args: Tuple[Any, ...]) -> TrialOutcome:
    return run_trial(*args)


@dataclass
class SweepSummary:
    """Minima over a sweep, and the seeds of failed trials."""

    trials: int = 0
    failures: int = 0
    min_slack: Dict[str, float] = field(default_factory=dict)
    min_rho1_bound: Optional[float] = None
    min_b_bound: Optional[float] = None
    failed_seeds: List[int] = field(default_factory=list)

    def add(self, outcome: TrialOutcome) -> None:
        self.trials += 1
        if not outcome.ok:
            self.failures += 1
            self.failed_seeds.append(outcome.seed)
        for name, slack in outcome.slacks.items():
            self.min_slack[name] = min(self.min_slack.get(name, slack), slack)
        if outcome.rho1_bound is not None:
            self.min_rho1_bound = _min(self.min_rho1_bound, outcome.rho1_bound)
        if outcome.b_bound is not None:
            self.min_b_bound = _min(self.min_b_bound, outcome.b_bound)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "trials": self.trials,
            "failures": self.failures,
            "min_slack": dict(self.min_slack),
            "min_rho1_bound": self.min_rho1_bound,
            "min_b_bound": self.min_b_bound,
            "failed_seeds": list(self.failed_seeds),
        }


def _min(current: Optional[float], value: float) -> float:
    return value if current is None else min(current, value)


def _outcomes(
    trials: int,
    seed: int,
    degree: int,
    decay: float,
    functional_names: Optional[List[str]],
    power: Optional[float],
    settings: Settings,
) -> Iterator[TrialOutcome]:
    args = [
        (seed + i, degree, decay, functional_names, power, settings)
        for i in range(trials)
    ]
    if settings.jobs == 1 or trials <= 1:
        yield from map(_run_trial_args, args)
        return
    chunksize = max(1, trials // (8 * settings.jobs))
    with ProcessPoolExecutor(max_workers=settings.jobs) as executor:
        yield from executor.map(_run_trial_args, args, chunksize=chunksize)


def run_sweep(
    trials: int,
    seed: int = 0,
    degree: int = 6,
    decay: float = 3.0,
    functional_names: Optional[List[str]] = None,
    power: Optional[float] = None,
    jobs: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> SweepSummary:
    """Verify `trials` generated pairs.

    :param trials: number of pairs; 0 gives an empty summary
    :param seed: trial i uses seed + i
    :param degree: harmonic degree of generated bodies
    :param decay: amplitude decay exponent of generated bodies
    :param functional_names: functionals to check, default all
    :param power: exponent of the power functional
    :param jobs: worker processes, defaults to the configured value
    """
    if trials < 0:
        raise ValueError(f"trials must be nonnegative, got {trials}")
    settings = settings or resolve_settings()
    if jobs is not None:
        if jobs < 1:
            raise ValueError(f"jobs must be positive, got {jobs}")
        settings = replace(settings, jobs=jobs)
    summary = SweepSummary()
    step = max(1, trials // 10)
    for outcome in _outcomes(
        trials, seed, degree, decay, functional_names, power, settings
    ):
        summary.add(outcome)
        if summary.trials % step == 0:
            logger.info(
                "%d/%d trials, %d failures", summary.trials, trials, summary.failures
            )
    return summary
