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
"""Tests for the report coordinate helpers."""

import numpy as np

from bottchern.coords import bidegree_array, report_coords, shifted, total_degrees

from ._bicomplex_cases import long_zigzag, vertical_arrow


def test_report_coords():
    coords = report_coords(long_zigzag(), r_max=3)
    assert list(coords["k"]) == [0, 1, 2]
    assert list(coords["r"]) == [1, 2, 3]
    assert list(coords["laplacian"]) == ["bc", "aeppli"]
    assert "r" not in report_coords(vertical_arrow())


def test_bidegree_array_drops_out_of_grid():
    grid = bidegree_array({(0, 1): 2, (1, 1): 3, (4, 0): 9}, 1)
    np.testing.assert_array_equal(grid, [[0, 2], [0, 3]])


def test_shifted():
    grid = np.arange(9).reshape(3, 3)
    np.testing.assert_array_equal(shifted(grid, 0, 1), [[1, 2, 0], [4, 5, 0], [7, 8, 0]])
    np.testing.assert_array_equal(shifted(grid, 1, 0), [[3, 4, 5], [6, 7, 8], [0, 0, 0]])
    np.testing.assert_array_equal(shifted(grid, -1, 0), [[0, 0, 0], [0, 1, 2], [3, 4, 5]])


def test_total_degrees():
    grid = np.array([[1, 2], [3, 4]])
    np.testing.assert_array_equal(total_degrees(grid), [1, 5, 4])
