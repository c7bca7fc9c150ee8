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

"""Persistent defaults for grid sizes and tolerances.

Values are stored under the ``"greenosher"`` key of the pytket config file, so
they survive between sessions and can be overridden per call.
"""

import logging
import os
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, ClassVar, Dict, Optional, Type

from pytket.config import PytketExtConfig

logger = logging.getLogger(__name__)


@dataclass
class GreenOsherConfig(PytketExtConfig):
    """Holds config parameters for planar-greenosher."""

    ext_dict_key: ClassVar[str] = "greenosher"

    grid_size: Optional[int]
    partition_grid: Optional[int]
    eps_convex: Optional[float]
    tol: Optional[float]
    tol_boundary: Optional[float]
    tol_containment: Optional[float]
    max_refinements: Optional[int]
    jobs: Optional[int]

    @classmethod
    def from_extension_dict(
        cls: Type["GreenOsherConfig"], ext_dict: Dict[str, Any]
    ) -> "GreenOsherConfig":
        return cls(
            ext_dict.get("grid_size", None),
            ext_dict.get("partition_grid", None),
            ext_dict.get("eps_convex", None),
            ext_dict.get("tol", None),
            ext_dict.get("tol_boundary", None),
            ext_dict.get("tol_containment", None),
            ext_dict.get("max_refinements", None),
            ext_dict.get("jobs", None),
        )


@dataclass(frozen=True)
class Settings:
    """Fully resolved numerical settings.

    :param grid_size: base node count N for quadrature and containment LPs
    :param partition_grid: node count used for the level-set partition and the
        functional integrals
    :param eps_convex: lower bound for h + h'' accepted by validation
    :param tol: absolute tolerance for inequality and bound checks
    :param tol_boundary: distance from zero below which a support function
        minimum counts as touching the origin
    :param tol_containment: allowed inter-node violation of a containment
        constraint before the grid is refined
    :param max_refinements: how many 4x grid refinements a containment LP may use
    :param jobs: worker processes for corpus sweeps
    """

    grid_size: int = 1024
    partition_grid: int = 65536
    eps_convex: float = 1e-8
    tol: float = 1e-9
    tol_boundary: float = 1e-7
    tol_containment: float = 1e-6
    max_refinements: int = 2
    jobs: int = 1


def _default_jobs() -> int:
    return os.cpu_count() or 1


@lru_cache(maxsize=1)
def _stored_config() -> GreenOsherConfig:
    try:
        return GreenOsherConfig.from_default_config_file()
    except OSError as e:
        logger.debug("pytket config file unavailable (%s); using defaults", e)
        return GreenOsherConfig.from_extension_dict({})


def resolve_settings(
    config: Optional[GreenOsherConfig] = None, **overrides: Any
) -> Settings:
    """Merge keyword overrides over the stored config over built-in defaults.

    Overrides equal to ``None`` are ignored, so callers can forward optional
    arguments unchanged.

    :param config: config to use instead of the one in the default config file
    :returns: resolved settings
    """
    if config is None:
        config = _stored_config()
    settings = Settings(jobs=_default_jobs())
    stored = {
        k: v
        for k, v in vars(config).items()
        if v is not None and k in Settings.__dataclass_fields__
    }
    settings = replace(settings, **stored)
    unknown = set(overrides) - set(Settings.__dataclass_fields__)
    if unknown:
        raise ValueError(f"Unknown settings: {sorted(unknown)}")
    settings = replace(
        settings, **{k: v for k, v in overrides.items() if v is not None}
    )
    if settings.jobs < 1:
        raise ValueError(f"jobs must be positive, got {settings.jobs}")
    return settings


def set_greenosher_config(
    grid_size: Optional[int] = None,
    partition_grid: Optional[int] = None,
    eps_convex: Optional[float] = None,
    tol: Optional[float] = None,
    tol_boundary: Optional[float] = None,
    tol_containment: Optional[float] = None,
    max_refinements: Optional[int] = None,
    jobs: Optional[int] = None,
) -> None:
    """Set default values for any of the numerical settings. Can be overridden in
    every call that accepts the corresponding keyword."""
    config = GreenOsherConfig.from_default_config_file()
    if grid_size is not None:
        config.grid_size = grid_size
    if partition_grid is not None:
        config.partition_grid = partition_grid
    if eps_convex is not None:
        config.eps_convex = eps_convex
    if tol is not None:
        config.tol = tol
    if tol_boundary is not None:
        config.tol_boundary = tol_boundary
    if tol_containment is not None:
        config.tol_containment = tol_containment
    if max_refinements is not None:
        config.max_refinements = max_refinements
    if jobs is not None:
        config.jobs = jobs
    config.update_default_config_file()
    _stored_config.cache_clear()
