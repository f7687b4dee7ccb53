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
"""Tests for the random invariant suite and the assembly search."""

import io
import random

import numpy as np
import pytest

from bottchern import fileio
from bottchern.bicomplex import validate
from bottchern.report import analyze
from bottchern.search import (
    SEARCH_CONSTRAINTS,
    Failure,
    RandomSummary,
    change_basis,
    invariant_failures,
    piece_catalog,
    random_assembly,
    random_piece,
    run_random,
    run_search,
    satisfies,
)
from bottchern.zigzag import dot, square, zigzag, zigzag_assemble

from ._bicomplex_cases import long_zigzag, mirror_arrows, single_square, unsigned_square


@pytest.mark.parametrize("seed", range(5))
def test_random_piece_fits(seed):
    rng = random.Random(seed)
    for _ in range(20):
        piece = random_piece(rng, 2)
        assert all(0 <= p <= 2 and 0 <= q <= 2 for p, q in piece.vertices)


def test_random_assembly_is_mirror_closed():
    pieces = random_assembly(random.Random(3), 2, 3, conjugation=True)
    x = zigzag_assemble(pieces, conjugation=True, p_max=2, q_max=2)
    assert validate(x) == []


@pytest.mark.parametrize("get_complex", [long_zigzag, mirror_arrows, single_square])
def test_change_basis_keeps_cohomology(get_complex):
    x = get_complex()
    y = change_basis(x, random.Random(7))
    assert validate(y) == []
    before, after = analyze(x, "sequences"), analyze(y, "sequences")
    np.testing.assert_array_equal(before["hpq"].values, after["hpq"].values)
    np.testing.assert_array_equal(before["betti"].values, after["betti"].values)


def test_invariant_failures():
    pieces = [zigzag((1, 0), "up left"), dot(0, 0), square(0, 0)]
    assert invariant_failures(zigzag_assemble(pieces, conjugation=True), pieces) == []
    assert invariant_failures(unsigned_square())[0][0] == "validate"


def test_run_random_passes():
    summary = run_random(seed=1, cases=12, max_degree=2, max_pieces=3)
    assert summary.ok, summary.summary()
    assert summary.passed == 12
    assert summary.summary() == "seed 1: 12/12 cases passed"


def test_run_random_is_deterministic():
    first = run_random(seed=5, cases=4, max_degree=1, max_pieces=2, conjugation=False)
    second = run_random(seed=5, cases=4, max_degree=1, max_pieces=2, conjugation=False)
    assert first == second
    assert first.ok


def test_run_random_empty_complexes():
    summary = run_random(seed=0, cases=3, max_degree=0, max_pieces=0)
    assert summary.ok


def test_random_summary_reports_first_failure():
    summary = RandomSummary(seed=2, cases=3, passed=2, failures=[Failure(1, 99, "euler_ok")])
    assert not summary.ok
    assert summary.summary() == "seed 2: 2/3 cases passed; first failure in case 1 (case seed 99): euler_ok"


def test_piece_catalog():
    catalog = piece_catalog(1)
    assert len(catalog) == 11
    assert len({piece.key() for piece in catalog}) == 11
    assert [piece.kind for piece in piece_catalog(0)] == ["dot"]


def test_search_without_constraints():
    result = run_search([], budget=5)
    assert result.found
    assert result.tried == 1


def test_search_lemma_failure():
    result = run_search(["lemma_fails"])
    assert result.found
    assert result.tried < 10
    assert not analyze(result.bicomplex, "lemma").coho.verdicts["lemma_direct"]


def test_search_hidden_lemma_failure():
    result = run_search(list(SEARCH_CONSTRAINTS), budget=1000)
    assert result.found, result.summary()
    assert result.summary().startswith("found after")
    reloaded = fileio.load_bicomplex(io.StringIO(fileio.dump_document(result.document)))
    assert satisfies(reloaded, SEARCH_CONSTRAINTS)
    report = analyze(reloaded, "all")
    assert report.identical(analyze(result.bicomplex, "all"))
    verdicts = report.coho.verdicts
    assert verdicts["e1_equals_einf"]
    assert not verdicts["lemma_direct"]


def test_search_budget():
    result = run_search(["lemma_fails", "degenerate_e1", "hodge_symmetric"], budget=1)
    assert not result.found
    assert result.summary() == "none within budget (1 assemblies tried)"
    assert result.document is None
    with pytest.raises(ValueError, match="budget"):
        run_search([], budget=0)


def test_unknown_constraint():
    with pytest.raises(ValueError, match="unknown search constraint"):
        satisfies(long_zigzag(), ["kahler"])


@pytest.mark.slow
@pytest.mark.parametrize(("seed", "cases", "conjugation"), [(5, 500, False), (9, 1000, True)])
def test_run_random_at_scale(seed, cases, conjugation):
    summary = run_random(seed, cases=cases, conjugation=conjugation)
    assert summary.failures == [], summary.summary()
    assert summary.passed == cases
