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
"""Bottchern convenience imports."""

try:
    from .version import version as __version__  # noqa
except ImportError:
    # package is not installed
    pass

# load the xarray accessor so it is added to xarray objects
from . import accessor  # noqa
from .report import analyze  # noqa
