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
"""Helper functions for generating coordinate arrays for cohomology reports.

The functions in this module are public, but typically don't need to be
directly imported by users. Reports produced by
:func:`bottchern.report.analyze` already carry these coordinates and the
``.coho`` accessor works on top of them.

"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np
import numpy.typing as npt

from .bicomplex import Bicomplex
from .cohomology import FLAVORS, NATURAL_MAPS, VAROUCHAS_SPACES

LAPLACIANS = ("bc", "aeppli")


def grid_size(x: Bicomplex) -> int:
    """Largest bidegree index of the square report grid."""
    return max(x.p_max, x.q_max)


def report_coords(x: Bicomplex, r_max: int | None = None) -> dict[str, npt.ArrayLike]:
    """Generate the 1-dimensional coordinate arrays of a report for ``x``.

    Parameters
    ----------
    x
        Bicomplex the report describes.
    r_max
        Last spectral sequence page. No ``r`` coordinate is produced when
        this is None.

    Returns
    -------
        Dictionary mapping dimension names (``p``, ``q``, ``k``,
        ``flavor``, ``space``, ``map``, ``laplacian`` and optionally
        ``r``) to numpy arrays.

    """
    size = grid_size(x)
    coords: dict[str, npt.ArrayLike] = {
        "p": np.arange(size + 1),
        "q": np.arange(size + 1),
        "k": np.arange(2 * size + 1),
        "flavor": np.array(FLAVORS),
        "space": np.array(VAROUCHAS_SPACES),
        "map": np.array(NATURAL_MAPS),
        "laplacian": np.array(LAPLACIANS),
    }
    if r_max is not None:
        coords["r"] = np.arange(1, r_max + 1)
    return coords


def bidegree_array(values: Mapping[tuple[int, int], int], size: int) -> np.ndarray:
    """Place per-bidegree counts on a ``(size + 1, size + 1)`` integer grid."""
    grid = np.zeros((size + 1, size + 1), dtype=np.int64)
    for (p, q), value in values.items():
        if p <= size and q <= size:
            grid[p, q] = value
    return grid


def shifted(grid: np.ndarray, dp: int, dq: int) -> np.ndarray:
    """Return ``out`` with ``out[p, q] = grid[p + dp, q + dq]`` and zeros off the grid."""
    out = np.zeros_like(grid)
    rows, cols = grid.shape
    src_p = slice(max(dp, 0), rows + min(dp, 0))
    dst_p = slice(max(-dp, 0), rows + min(-dp, 0))
    src_q = slice(max(dq, 0), cols + min(dq, 0))
    dst_q = slice(max(-dq, 0), cols + min(-dq, 0))
    out[dst_p, dst_q] = grid[src_p, src_q]
    return out


def total_degrees(grid: np.ndarray) -> np.ndarray:
    """Sum a bidegree grid along anti-diagonals ``p + q = k``."""
    size = grid.shape[0] - 1
    return np.array([np.trace(np.fliplr(grid), offset=size - k) for k in range(2 * size + 1)], dtype=np.int64)
