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
"""Property-based tests over random bicomplexes and random structure equations."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bottchern import cohomology, linalg
from bottchern.lie import StructureEquations, Term, compile_model
from bottchern.report import analyze
from bottchern.search import change_basis, invariant_failures, random_assembly
from bottchern.zigzag import zigzag_assemble

seeds = st.integers(0, 2**32 - 1)
gaussian_integers = st.builds(linalg.gaussian, st.integers(-2, 2), st.integers(-1, 1))

# dφ3 may use every integrable term in φ1, φ2 and their conjugates
_DPHI3_TERMS = (("20", 1, 2), ("11", 1, 1), ("11", 1, 2), ("11", 2, 1), ("11", 2, 2))


@st.composite
def two_step_models(draw):
    """Structure equations with ``dφ1 = dφ2 = 0``, so ``d² = 0`` holds for any ``dφ3``."""
    coeffs = draw(st.lists(gaussian_integers, min_size=len(_DPHI3_TERMS), max_size=len(_DPHI3_TERMS)))
    terms = tuple(Term(kind, j, k, c) for (kind, j, k), c in zip(_DPHI3_TERMS, coeffs) if c != linalg.QQ_I.zero)
    return StructureEquations("random", 3, ((), (), terms))


@settings(max_examples=15)
@given(seeds, st.booleans())
def test_invariant_suite(seed, conjugation):
    rng = random.Random(seed)
    pieces = random_assembly(rng, 1, 3, conjugation)
    x = zigzag_assemble(pieces, conjugation=conjugation, p_max=1, q_max=1)
    assert invariant_failures(change_basis(x, rng), pieces) == []


@given(seeds)
def test_assembly_order_does_not_matter(seed):
    pieces = random_assembly(random.Random(seed), 2, 3, conjugation=False)
    forward = zigzag_assemble(pieces, p_max=2, q_max=2)
    backward = zigzag_assemble(pieces[::-1], p_max=2, q_max=2)
    for flavor in cohomology.FLAVORS:
        for p, q in forward.bidegrees():
            assert cohomology.h_pq(forward, flavor, p, q) == cohomology.h_pq(backward, flavor, p, q)
    assert [cohomology.betti(forward, k) for k in range(5)] == [cohomology.betti(backward, k) for k in range(5)]


@given(seeds)
def test_frolicher_inequality(seed):
    rng = random.Random(seed)
    x = change_basis(zigzag_assemble(random_assembly(rng, 2, 3, True), conjugation=True, p_max=2, q_max=2), rng)
    report = analyze(x, "inequalities")
    assert (report.coho.hk("dolbeault") >= report.coho.betti).all()
    assert report.coho.verdicts["bc_inequality_pointwise"]


@settings(max_examples=5)
@given(two_step_models())
def test_lemma_agrees_with_equality_on_models(s):
    model = compile_model(s)
    verdicts = analyze(model, "lemma").coho.verdicts
    assert verdicts["lemma_direct"] == verdicts["bc_equality_all_k"]
    # the torus is the only two-step model satisfying the ∂∂̄-Lemma
    assert verdicts["lemma_direct"] == (not s.d_phi[2])


@pytest.mark.slow
@settings(max_examples=200)
@given(two_step_models())
def test_lemma_agrees_with_equality_on_many_models(s):
    verdicts = analyze(compile_model(s), "lemma").coho.verdicts
    assert verdicts["lemma_direct"] == verdicts["bc_equality_all_k"]
