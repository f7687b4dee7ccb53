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
"""Tests for cohomology reports and the ``.coho`` Dataset accessor."""

import json

import numpy as np
import pytest
import xarray as xr

from bottchern.exceptions import NoConjugationError, NotExteriorModelError, ValidationError
from bottchern.report import analyze
from bottchern.zigzag import dot, zigzag_assemble

from .._bicomplex_cases import long_zigzag, unsigned_square
from .._shared import (
    IWASAWA_AEPPLI,
    IWASAWA_AEPPLI_PQ,
    IWASAWA_BC,
    IWASAWA_BC_PQ,
    IWASAWA_BETTI,
    IWASAWA_DOLBEAULT,
    IWASAWA_DOLBEAULT_PQ,
    TORUS3_ALL,
    as_grid,
)
from ._report_cases import (
    hidden_lemma_failure_report,
    long_zigzag_report,
    mirror_arrows_report,
    sequences_only_report,
    square_report,
    vertical_arrow_report,
)
from ._shared import CONJUGATION_ONLY, IWASAWA_VERDICTS, MODEL_ONLY, TORUS3_VERDICTS


def test_report_layout(iwasawa_report):
    assert isinstance(iwasawa_report, xr.Dataset)
    assert iwasawa_report["hpq"].dims == ("flavor", "p", "q")
    assert iwasawa_report.sizes["k"] == 7
    assert iwasawa_report.sizes["r"] == 8
    assert list(iwasawa_report["flavor"].values) == ["dolbeault", "del", "bc", "aeppli"]
    assert iwasawa_report.attrs["name"] == "iwasawa"
    assert iwasawa_report.attrs["n"] == 3
    assert iwasawa_report.attrs["is_model"] == 1
    assert int(iwasawa_report["dims"].sum()) == 64


def test_iwasawa_numbers(iwasawa_report):
    coho = iwasawa_report.coho
    assert tuple(coho.hk("dolbeault")) == IWASAWA_DOLBEAULT
    assert tuple(coho.hk("bc")) == IWASAWA_BC
    assert tuple(coho.hk("aeppli")) == IWASAWA_AEPPLI
    assert tuple(coho.betti) == IWASAWA_BETTI
    np.testing.assert_array_equal(coho.hpq("dolbeault"), as_grid(IWASAWA_DOLBEAULT_PQ))
    np.testing.assert_array_equal(coho.hpq("del"), as_grid(IWASAWA_DOLBEAULT_PQ).T)
    np.testing.assert_array_equal(coho.hpq("bc"), as_grid(IWASAWA_BC_PQ))
    np.testing.assert_array_equal(coho.hpq("aeppli"), as_grid(IWASAWA_AEPPLI_PQ))


def test_iwasawa_harmonic_dims(iwasawa_report):
    harmonic = iwasawa_report["harmonic"]
    np.testing.assert_array_equal(harmonic.sel(laplacian="bc").values, as_grid(IWASAWA_BC_PQ))
    np.testing.assert_array_equal(harmonic.sel(laplacian="aeppli").values, as_grid(IWASAWA_AEPPLI_PQ))


def test_iwasawa_verdicts(iwasawa_report):
    assert iwasawa_report.coho.verdicts == IWASAWA_VERDICTS


def test_torus_verdicts(torus3_report):
    assert torus3_report.coho.verdicts == TORUS3_VERDICTS
    assert tuple(torus3_report.coho.betti) == TORUS3_ALL


def test_iwasawa_inequalities(iwasawa_report):
    ineq = iwasawa_report.coho.inequality_verdicts()
    assert ineq.frolicher_strict == [1, 2, 3, 4, 5]
    assert ineq.total_strict == [1, 2, 3, 4, 5]
    assert ineq.pointwise_strict == []
    assert ineq.pointwise_asserted
    excess = iwasawa_report.coho.hk("bc") + iwasawa_report.coho.hk("aeppli") - 2 * iwasawa_report.coho.betti
    assert list(excess) == [0, 2, 6, 8, 6, 2, 0]


def test_iwasawa_spectral_pages(iwasawa_report):
    spectral = iwasawa_report["spectral"]
    np.testing.assert_array_equal(spectral.sel(r=1).values, as_grid(IWASAWA_DOLBEAULT_PQ))
    last = spectral.sel(r=8).values
    assert [int(np.fliplr(last).trace(offset=3 - k)) for k in range(7)] == list(IWASAWA_BETTI)
    assert (spectral.sel(r=2).values == last).all()


def test_iwasawa_natural_maps(iwasawa_report):
    ranks = iwasawa_report["map_rank"].sel(map="bc->de_rham")
    sources = iwasawa_report["map_source_dim"].sel(map="bc->de_rham")
    assert list(sources.values) == list(IWASAWA_BC)
    assert int(ranks.sel(k=1)) == 4
    assert int(ranks.sel(k=2)) < int(sources.sel(k=2))


def test_to_table(iwasawa_report):
    lines = iwasawa_report.coho.to_table().splitlines()
    assert lines[0] == "iwasawa (h_dbar h_BC h_A for k = 1..5)"
    assert lines[1] == "5 4 6 | 11 10 12 | 14 14 14 | 11 12 10 | 5 6 4"
    assert lines[2] == "b: 4 8 10 8 4"
    assert "lemma_direct: false" in lines
    assert "harmonic_ok: true" in lines
    assert len(lines) == 3 + len(IWASAWA_VERDICTS)


def test_to_table_of_bicomplex_keeps_every_degree():
    report = long_zigzag_report()
    lines = report.coho.to_table().splitlines()
    assert lines[0].endswith(f"for k = 0..{report.coho.max_degree})")
    assert len(lines[2].split()) == report.coho.max_degree + 2


def test_structured_matches_table(iwasawa_report):
    document = json.loads(json.dumps(iwasawa_report.coho.to_structured()))
    assert document["verdicts"] == IWASAWA_VERDICTS
    hk = document["data_vars"]["hk"]["data"]
    assert hk[2] == list(IWASAWA_BC)
    assert document["data_vars"]["betti"]["data"] == list(IWASAWA_BETTI)
    assert document["attrs"]["name"] == "iwasawa"
    assert document["attrs"]["basis"].startswith("0,0: 1; 0,1: φ̄1 φ̄2 φ̄3; ")
    assert "3,3: φ1∧φ2∧φ3∧φ̄1∧φ̄2∧φ̄3" in document["attrs"]["basis"]


def test_verdicts_recompute_from_stored_report(iwasawa_report):
    stored = iwasawa_report.drop_vars(["verdict", "check"])
    checks = iwasawa_report.attrs["checks"].split(",")
    recomputed = stored.coho.compute_verdicts(checks)
    extras = {"lemma_direct", "claim2_surjectivity", "harmonic_ok", "star_kernel_swap"}
    assert recomputed == {k: v for k, v in IWASAWA_VERDICTS.items() if k not in extras}
    assert stored.coho.verdicts == {}


def test_long_zigzag_report():
    report = long_zigzag_report()
    verdicts = report.coho.verdicts
    assert report.attrs["name"] == "long zigzag"
    assert "n" not in report.attrs
    assert "basis" not in report.attrs
    assert not verdicts["lemma_direct"]
    assert not verdicts["bc_equality_all_k"]
    assert verdicts["e1_equals_einf"]
    assert verdicts["bc_inequality_pointwise_strict_somewhere"]
    assert verdicts["claim2_surjectivity"]
    assert not MODEL_ONLY & set(verdicts)
    assert list(report.coho.varouchas_total("a")) == [0, 0, 1]
    with pytest.raises(NotExteriorModelError):
        report.coho.duality_check()


@pytest.mark.parametrize("get_report", [long_zigzag_report, mirror_arrows_report, square_report])
def test_conjugation_identities(get_report):
    coho = get_report().coho
    assert coho.check_sequences()
    assert coho.check_structural_equalities()
    assert coho.check_conjugation_symmetries()
    assert coho.remark_identity_check()
    assert coho.ek_recursion_check()
    assert coho.euler_check()
    assert coho.spectral_contract_check()


def test_square_report_is_empty():
    report = square_report()
    assert not report["hpq"].values.any()
    assert not report["betti"].values.any()
    assert report.coho.verdicts["lemma_direct"]
    assert report.coho.verdicts["bc_equality_all_k"]


def test_report_without_conjugation():
    report = vertical_arrow_report()
    verdicts = report.coho.verdicts
    assert not CONJUGATION_ONLY & set(verdicts)
    assert verdicts["sequences_ok"]
    assert verdicts["frolicher_inequality"]
    assert not report.coho.inequality_verdicts().pointwise_asserted
    with pytest.raises(NoConjugationError):
        report.coho.check_conjugation_symmetries()
    with pytest.raises(NoConjugationError):
        report.coho.remark_identity_check()


def test_hidden_lemma_failure():
    report = hidden_lemma_failure_report()
    coho = report.coho
    assert coho.verdicts["e1_equals_einf"]
    np.testing.assert_array_equal(coho.hpq("dolbeault"), coho.hpq("del"))
    assert not coho.verdicts["lemma_direct"]
    assert not coho.verdicts["bc_to_de_rham_injective"]


def test_sequences_only():
    report = sequences_only_report()
    assert "spectral" not in report
    assert "harmonic" not in report
    assert "map_rank" not in report
    assert "r" not in report.coords
    assert set(report.coho.verdicts) == {"sequences_ok", "structural_ok", "ek_recursion", "symmetry_ok", "remark_identity"}


def test_lemma_only(torus3_model):
    report = analyze(torus3_model, "lemma")
    assert report.coho.verdicts["lemma_direct"]
    assert report.coho.verdicts["bc_equality_all_k"]
    assert "spectral" not in report


@pytest.mark.parametrize("checks", ["", "lemma,everything", ["sequences", "plots"]])
def test_invalid_checks(checks):
    with pytest.raises(ValueError, match="checks must be"):
        analyze(long_zigzag(), checks)


def test_invalid_bicomplex():
    with pytest.raises(ValidationError, match="∂∂̄\\+∂̄∂ ≠ 0") as excinfo:
        analyze(unsigned_square())
    assert excinfo.value.violations == ["∂∂̄+∂̄∂ ≠ 0 at (0,0)"]


def test_duality_on_grid_smaller_than_n():
    # bounds below n leave the upper degrees empty
    report = analyze(zigzag_assemble([dot(0, 0)], conjugation=True, n=1), "all")
    assert report.sizes["k"] == 1
    verdicts = report.coho.verdicts
    assert not verdicts["claim3_squeeze"]
    assert not verdicts["duality_ok"]


def test_duality_of_empty_complex_with_dimension():
    report = analyze(zigzag_assemble([], conjugation=True, p_max=0, q_max=0, n=2), "all")
    verdicts = report.coho.verdicts
    assert verdicts["duality_ok"]
    assert verdicts["claim3_squeeze"]


def test_spectral_contract_with_first_page_only(iwasawa_model, iwasawa_report):
    report = analyze(iwasawa_model, "spectral", r_max=1)
    assert report.sizes["r"] == 1
    np.testing.assert_array_equal(report["spectral_limit"].values, iwasawa_report["spectral"].sel(r=8).values)
    assert not report.coho.verdicts["e1_equals_einf"]
    assert report.coho.verdicts["spectral_contract"]
