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
"""Tests for the command-line interface."""

import io
import json

import pytest
from click.testing import CliRunner

from bottchern import fileio
from bottchern.cli import EXIT_PARSE, EXIT_VALIDATION, cli
from bottchern.lie import builtin
from bottchern.search import satisfies

from ._bicomplex_cases import BROKEN_MODEL_DOCUMENT, MODEL_DOCUMENT, unsigned_square, vertical_arrow


@pytest.fixture
def runner():
    return CliRunner()


def test_analyze_iwasawa_table(runner):
    result = runner.invoke(cli, ["analyze", "--builtin", "iwasawa"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[1] == "5 4 6 | 11 10 12 | 14 14 14 | 11 12 10 | 5 6 4"
    assert lines[2] == "b: 4 8 10 8 4"
    assert "lemma_direct: false" in lines


def test_analyze_torus_lemma(runner):
    result = runner.invoke(cli, ["analyze", "--builtin", "torus3", "--checks", "lemma"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert "lemma_direct: true" in lines
    assert "bc_equality_all_k: true" in lines


def test_analyze_model_file_json(runner, tmp_path):
    path = tmp_path / "iwasawa.model"
    path.write_text(MODEL_DOCUMENT, encoding="utf-8")
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["analyze", str(path), "--checks", "inequalities", "--json", "--out", str(out)])
    assert result.exit_code == 0, result.output
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["verdicts"]["bc_inequality_all_k"] is True
    assert document["verdicts"]["frolicher_equality_all_k"] is False
    assert document["data_vars"]["betti"]["data"] == [1, 4, 8, 10, 8, 4, 1]


def test_analyze_broken_model(runner, tmp_path):
    path = tmp_path / "broken.model"
    path.write_text(BROKEN_MODEL_DOCUMENT, encoding="utf-8")
    result = runner.invoke(cli, ["analyze", str(path)])
    assert result.exit_code == EXIT_VALIDATION
    assert "integrability: dφ2 has a (0,2) component" in result.stderr


def test_analyze_invalid_bicomplex(runner, tmp_path):
    path = tmp_path / "square.yaml"
    path.write_text(fileio.dump_bicomplex(unsigned_square()), encoding="utf-8")
    result = runner.invoke(cli, ["analyze", str(path)])
    assert result.exit_code == EXIT_VALIDATION
    assert "∂∂̄+∂̄∂ ≠ 0 at (0,0)" in result.stderr


def test_analyze_bicomplex_smaller_than_n(runner, tmp_path):
    path = tmp_path / "dot.yaml"
    path.write_text("p_max: 0\nq_max: 0\nn: 1\ndims:\n  - {p: 0, q: 0, dim: 1}\n", encoding="utf-8")
    result = runner.invoke(cli, ["analyze", str(path), "--json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["verdicts"]["claim3_squeeze"] is False


def test_analyze_rejects_indefinite_gram(runner, tmp_path):
    document = fileio.format_bicomplex(vertical_arrow())
    document["gram"] = [{"p": 0, "q": 1, "matrix": [[-1]]}]
    path = tmp_path / "arrow.yaml"
    path.write_text(fileio.dump_document(document), encoding="utf-8")
    result = runner.invoke(cli, ["analyze", str(path), "--checks", "hodge"])
    assert result.exit_code == EXIT_VALIDATION
    assert "gram at (0,1): leading principal minor of order 1 is not positive" in result.stderr


@pytest.mark.parametrize(
    ("args", "exp_message"),
    [
        (["analyze"], "exactly one"),
        (["analyze", "x.model", "--builtin", "iwasawa"], "exactly one"),
        (["analyze", "--builtin", "nakamura"], "unknown builtin model"),
        (["analyze", "does-not-exist.model"], "cannot read"),
        (["analyze", "--builtin", "torus2", "--checks", "plots"], "checks must be"),
        (["search", "--constraints", "kahler"], "unknown constraints"),
    ],
)
def test_parse_errors(runner, args, exp_message):
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_PARSE
    assert exp_message in result.stderr


def test_analyze_reports_parse_line(runner, tmp_path):
    path = tmp_path / "bad.model"
    path.write_text(MODEL_DOCUMENT.replace("coeff: -1", "coeff: 0.5"), encoding="utf-8")
    result = runner.invoke(cli, ["analyze", str(path)])
    assert result.exit_code == EXIT_PARSE
    assert "line 6, field 'dphi[2][0].coeff'" in result.stderr


def test_random(runner):
    result = runner.invoke(cli, ["random", "--seed", "1", "--cases", "3", "--max-degree", "1"])
    assert result.exit_code == 0, result.output
    assert result.stdout.strip() == "seed 1: 3/3 cases passed"


def test_random_empty(runner):
    result = runner.invoke(cli, ["random", "--cases", "2", "--max-degree", "0", "--max-pieces", "0"])
    assert result.exit_code == 0, result.output


def test_search_to_file(runner, tmp_path):
    out = tmp_path / "found.yaml"
    result = runner.invoke(cli, ["search", "--constraints", "lemma_fails", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert satisfies(fileio.load_bicomplex(out), ["lemma_fails"])


def test_search_to_stdout(runner):
    constraints = "degenerate_e1,hodge_symmetric,lemma_fails"
    result = runner.invoke(cli, ["search", "--constraints", constraints])
    assert result.exit_code == 0, result.output
    assert result.stderr.startswith("found after")
    x = fileio.load_bicomplex(io.StringIO(result.stdout))
    assert satisfies(x, constraints.split(","))


def test_search_none_within_budget(runner):
    result = runner.invoke(cli, ["search", "--constraints", "lemma_fails,hodge_symmetric", "--budget", "1"])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert "none within budget" in result.stderr


def test_builtin(runner):
    result = runner.invoke(cli, ["builtin", "--list"])
    assert result.stdout.splitlines() == ["iwasawa", "torus<N>"]
    result = runner.invoke(cli, ["builtin", "iwasawa"])
    assert fileio.load_model(io.StringIO(result.stdout)) == builtin("iwasawa")
    result = runner.invoke(cli, ["builtin", "klein"])
    assert result.exit_code == EXIT_PARSE
