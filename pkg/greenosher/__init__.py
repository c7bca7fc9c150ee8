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

"""Numerical verifier for the extended Green-Osher inequality of planar convex
bodies
"""

# _metadata.py is copied to the folder after installation.
from ._metadata import __extension_version__, __extension_name__
from .support_body import (
    SupportBody,
    GridProfile,
    evaluate,
    sample,
    curvature_profile,
    derivative_profile,
    boundary_points,
    translate,
    scale,
    minkowski_sum,
    validate,
    require_valid,
    random_body,
)
from .measures import SteinerData, area, mixed_area, steiner_data, steiner_eval
from .dilation import (
    DilationCertificate,
    OriginClass,
    inradius,
    outradius,
    classify_origin,
    certify,
    to_dilation_position,
)
from .functionals import ConvexFunctional, registry, select, power, custom
from .green_osher import (
    GreenOsherReport,
    PartitionResult,
    relative_curvature_radius,
    partition,
    lhs_functional,
    rhs_bound,
    homothety_test,
    verify,
)
from .body_io import load_body, save_body, body_from_dict, body_to_dict
from .sweep import run_sweep, SweepSummary
from .config import GreenOsherConfig, Settings, resolve_settings, set_greenosher_config
from .exceptions import (
    GreenOsherError,
    BodyValidationError,
    BodyParseError,
    NegativeDiscriminantError,
    SolverFailureError,
    InfeasibleError,
    NotAtDilationPositionError,
    DomainError,
)
