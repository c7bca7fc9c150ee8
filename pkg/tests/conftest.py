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

import pytest
from greenosher.config import GreenOsherConfig, Settings, resolve_settings
from greenosher.support_body import SupportBody


@pytest.fixture(name="defaults")
def fixture_defaults() -> Settings:
    # Built-in defaults, independent of any local pytket config file
    return resolve_settings(GreenOsherConfig.from_extension_dict({}), jobs=1)


@pytest.fixture(name="unit_disk")
def fixture_unit_disk() -> SupportBody:
    return SupportBody.disk(1.0)


@pytest.fixture(name="oval")
def fixture_oval() -> SupportBody:
    # h = 1 + 0.2 cos 2 theta; h + h'' = 1 - 0.6 cos 2 theta ranges over [0.4, 1.6]
    return SupportBody.from_coefficients(1.0, [0.0, 0.2], [0.0, 0.0])
