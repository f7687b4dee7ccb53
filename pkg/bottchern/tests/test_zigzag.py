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
"""Tests for dots, squares, zigzags and their assembly."""

import pytest

from bottchern import linalg
from bottchern.bicomplex import validate
from bottchern.exceptions import AssemblyError
from bottchern.zigzag import dot, is_mirror_symmetric, parse_word, square, zigzag, zigzag_assemble


def test_square_shape():
    piece = square(1, 2)
    assert piece.vertices == ((1, 2), (2, 2), (1, 3), (2, 3))
    assert piece.is_self_mirror is False
    assert square(0, 0).is_self_mirror


@pytest.mark.parametrize("word", ["up up", "up down", "left right", "sideways", ["up", "up"]])
def test_parse_word_rejects_non_zigzags(word):
    with pytest.raises(AssemblyError):
        parse_word(word)


def test_zigzag_walk():
    piece = zigzag((0, 0), "up left")
    assert piece.kind == "zigzag"
    assert piece.vertices == ((0, 0), (0, 1), (-1, 1))
    kinds = [(e.src, e.tgt, e.kind) for e in piece.edges]
    assert kinds == [(0, 1, "partial_bar"), (2, 1, "partial")]


def test_empty_word_is_a_dot():
    assert zigzag((2, 1), "").key() == dot(2, 1).key()


def test_transpose_conjugates_coefficients():
    piece = zigzag((0, 0), ["right"])
    edge = piece.edges[0]
    mirrored = piece.transpose()
    assert mirrored.vertices == ((0, 0), (0, 1))
    assert mirrored.edges[0].kind == "partial_bar"
    assert mirrored.edges[0].coeff == linalg.conj_scalar(edge.coeff)
    assert mirrored.key() == zigzag((0, 0), "up").key()


def test_mirror_symmetry():
    up, right = zigzag((0, 0), "up"), zigzag((0, 0), "right")
    assert not is_mirror_symmetric([up])
    assert is_mirror_symmetric([up, right])
    assert is_mirror_symmetric([dot(1, 1), square(0, 0)])
    with pytest.raises(AssemblyError, match="no mirror partner"):
        zigzag_assemble([up], conjugation=True)


def test_assembly_bounds():
    with pytest.raises(AssemblyError, match="beyond the bounds"):
        zigzag_assemble([square(0, 0)], p_max=0, q_max=1)
    with pytest.raises(AssemblyError, match="nonnegative"):
        zigzag_assemble([zigzag((0, 0), "up left")])
    x = zigzag_assemble([dot(0, 0)], p_max=2, q_max=3)
    assert (x.p_max, x.q_max) == (2, 3)


def test_conjugation_bounds_are_square():
    x = zigzag_assemble([dot(0, 2), dot(2, 0)], conjugation=True)
    assert (x.p_max, x.q_max) == (2, 2)
    assert validate(x) == []


def test_overlapping_pieces_add_up():
    x = zigzag_assemble([dot(0, 0), zigzag((0, 0), "up"), zigzag((0, 0), "right")], conjugation=True)
    assert x.dim(0, 0) == 3
    assert x.dim(1, 0) == x.dim(0, 1) == 1
    assert validate(x) == []


def test_square_conjugation_signs():
    x = zigzag_assemble([square(0, 0)], conjugation=True)
    assert linalg.entries(x.conj(1, 1)) == [[-linalg.QQ_I.one]]
    assert linalg.entries(x.conj(0, 0)) == [[linalg.QQ_I.one]]
    assert validate(x) == []


@pytest.mark.parametrize(
    "pieces",
    [
        [zigzag((1, 0), "up left")],
        [zigzag((1, 0), "left up")],
        [zigzag((0, 2), "right down right down")],
        [zigzag((1, 0), "up"), zigzag((0, 1), "right")],
    ],
)
def test_assemblies_are_valid(pieces):
    assert validate(zigzag_assemble(pieces, conjugation=True)) == []
