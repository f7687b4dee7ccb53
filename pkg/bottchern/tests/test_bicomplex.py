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
"""Tests for the double complex type and its axiom checks."""

import pytest

from bottchern import linalg
from bottchern.bicomplex import Bicomplex, direct_sum, validate
from bottchern.exceptions import NoConjugationError

from ._bicomplex_cases import (
    bad_conjugation,
    empty_complex,
    long_zigzag,
    mirror_arrows,
    one,
    single_dot,
    single_square,
    unsigned_square,
    vertical_arrow,
)


@pytest.mark.parametrize(
    "get_complex",
    [single_dot, single_square, vertical_arrow, mirror_arrows, long_zigzag, empty_complex],
)
def test_valid_complexes(get_complex):
    assert validate(get_complex()) == []


def test_unsigned_square_fails_anticommutation():
    assert validate(unsigned_square()) == ["∂∂̄+∂̄∂ ≠ 0 at (0,0)"]


def test_bad_conjugation_fails_intertwining():
    violations = validate(bad_conjugation())
    assert "σ∂ ≠ ∂̄σ at (0,0)" in violations
    assert not any(v.startswith("σ²") for v in violations)


def test_del_squared_violation():
    x = Bicomplex(
        p_max=2,
        q_max=0,
        dims={(0, 0): 1, (1, 0): 1, (2, 0): 1},
        del_blocks={(0, 0): one(), (1, 0): one()},
    )
    assert validate(x) == ["∂∂ ≠ 0 at (0,0)"]


def test_shape_violation_stops_early():
    x = Bicomplex(p_max=1, q_max=0, dims={(0, 0): 1, (1, 0): 2}, del_blocks={(0, 0): one()})
    violations = validate(x)
    assert violations == ["∂ at (0,0) has shape (1, 1), expected (2, 1)"]


def test_asymmetric_dims_with_conjugation():
    x = Bicomplex(p_max=1, q_max=1, dims={(1, 0): 1}, conj_blocks={})
    assert validate(x) == ["conjugation needs dim V^{0,1} = dim V^{1,0}", "conjugation needs dim V^{1,0} = dim V^{0,1}"]


def test_dimension_beyond_n():
    x = Bicomplex(p_max=2, q_max=0, dims={(2, 0): 1}, n=1)
    assert validate(x) == ["dimension at (2,0) must vanish for n = 1"]


@pytest.mark.parametrize(
    ("rows", "exp_violation"),
    [
        ([[1, 0], [0, -1]], "gram at (0,0): leading principal minor of order 2 is not positive"),
        ([[1, 2], [0, 1]], "gram at (0,0): Gram matrix is not Hermitian"),
    ],
)
def test_gram_must_be_a_metric(rows, exp_violation):
    x = Bicomplex(
        p_max=1,
        q_max=0,
        dims={(0, 0): 2, (1, 0): 1},
        del_blocks={(0, 0): linalg.from_rows([[1, 1]])},
        gram={(0, 0): linalg.from_rows(rows)},
    )
    assert exp_violation in validate(x)


def test_missing_blocks_are_zero():
    x = vertical_arrow()
    assert x.partial(0, 0).shape == (0, 1)
    assert linalg.is_zero(x.partial(0, 1))
    assert x.dim(5, 5) == 0
    assert x.ddbar(0, 0).shape == (0, 1)
    with pytest.raises(NoConjugationError):
        x.conj(0, 0)


def test_total_differential():
    x = single_square()
    assert x.total_bidegrees(1) == [(0, 1), (1, 0)]
    assert x.total_offsets(1) == {(0, 1): 0, (1, 0): 1}
    d0 = x.total_differential(0)
    d1 = x.total_differential(1)
    assert d0.shape == (2, 1)
    assert d1.shape == (1, 2)
    assert linalg.is_zero(linalg.matmul(d1, d0))


def test_direct_sum():
    x = direct_sum(single_dot(), mirror_arrows())
    assert validate(x) == []
    assert x.dim(0, 0) == 3
    assert x.has_conjugation
    assert linalg.rref_rank(x.partial_bar(0, 0))[0] == 1

    without = direct_sum(single_dot(), vertical_arrow())
    assert not without.has_conjugation
    assert without.p_max == 1
