#!/usr/bin/env python
# Copyright bottchern Developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Custom pytest configuration for bottchern."""

import pytest
from hypothesis import HealthCheck, settings

from bottchern.lie import builtin, compile_model
from bottchern.report import analyze

# exact arithmetic is slow enough to trip hypothesis' default deadline
settings.register_profile(
    "bottchern",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("bottchern")


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def iwasawa_model():
    return compile_model(builtin("iwasawa"))


@pytest.fixture(scope="session")
def torus3_model():
    return compile_model(builtin("torus3"))


@pytest.fixture(scope="session")
def iwasawa_report(iwasawa_model):
    return analyze(iwasawa_model, "all")


@pytest.fixture(scope="session")
def torus3_report(torus3_model):
    return analyze(torus3_model, "all")
