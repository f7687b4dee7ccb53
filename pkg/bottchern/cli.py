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
"""Command-line interface for bottchern.

Usage:
    bottchern analyze --builtin iwasawa         # cohomology table of the Iwasawa manifold
    bottchern analyze my.model --json           # structured report of a model file
    bottchern analyze complex.yaml --checks lemma
    bottchern random --seed 1 --cases 100       # invariant suite on random bicomplexes
    bottchern search --constraints degenerate_e1,hodge_symmetric,lemma_fails --out found.yaml
    bottchern builtin --list

Exit codes are 0 on success (whatever the verdicts), 1 when the input
violates the double complex or structure equation axioms and 2 on parse
or I/O errors.

"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from . import fileio, lie
from .bicomplex import Bicomplex, validate
from .exceptions import ModelParseError, UnknownModelError, ValidationError
from .report import CHECKS, analyze
from .search import DEFAULT_SEARCH_DEGREE, SEARCH_CONSTRAINTS, run_random, run_search

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 1
EXIT_PARSE = 2


def _fail(message: str, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text)
        return
    try:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as err:
        _fail(f"cannot write {out}: {err}", EXIT_PARSE)
    click.echo(f"Wrote {out}", err=True)


def _split(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


@click.group()
@click.option("-v", "--verbose", count=True, help="Log progress (-v) or debug details (-vv) to stderr")
def cli(verbose: int) -> None:
    """Bott-Chern, Aeppli, Dolbeault and de Rham cohomology of double complexes."""
    level = logging.WARNING if not verbose else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s:%(name)s:%(message)s")


@cli.command(name="analyze")
@click.argument("path", required=False, type=click.Path(dir_okay=False))
@click.option("--builtin", "builtin_name", default=None, help="Analyze a shipped model instead of a file")
@click.option("--checks", default="all", show_default=True, help=f"Comma separated subset of {', '.join(CHECKS)}")
@click.option("--r-max", type=int, default=None, help="Last spectral sequence page")
@click.option("--json", "output_json", is_flag=True, help="Output the full report as JSON")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the output to a file")
def analyze_command(
    path: str | None, builtin_name: str | None, checks: str, r_max: int | None, output_json: bool, out: str | None
) -> None:
    """Compute the cohomology report of a model or bicomplex file."""
    if (path is None) == (builtin_name is None):
        _fail("give exactly one of PATH or --builtin", EXIT_PARSE)
    try:
        source = lie.builtin(builtin_name) if builtin_name is not None else fileio.load_input(path)
    except (ModelParseError, UnknownModelError) as err:
        _fail(str(err), EXIT_PARSE)
    except OSError as err:
        _fail(f"cannot read {path}: {err}", EXIT_PARSE)

    if isinstance(source, Bicomplex):
        violations = validate(source)
    else:
        violations = lie.validate_model(source)
    if violations:
        click.echo("Validation failed:", err=True)
        for violation in violations:
            click.echo(f"  {violation}", err=True)
        sys.exit(EXIT_VALIDATION)

    try:
        report = analyze(source, _split(checks), r_max=r_max)
    except ValidationError as err:
        _fail(str(err), EXIT_VALIDATION)
    except ValueError as err:
        _fail(str(err), EXIT_PARSE)

    if output_json:
        _emit(json.dumps(report.coho.to_structured(), indent=2, ensure_ascii=False), out)
    else:
        _emit(report.coho.to_table(), out)


@cli.command(name="random")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--cases", type=click.IntRange(min=0), default=100, show_default=True)
@click.option("--max-degree", type=click.IntRange(min=0), default=2, show_default=True)
@click.option("--max-pieces", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--conjugation/--no-conjugation", default=True, show_default=True)
def random_command(seed: int, cases: int, max_degree: int, max_pieces: int, conjugation: bool) -> None:
    """Run the invariant suite on seeded random bicomplexes."""
    summary = run_random(seed, cases, max_degree=max_degree, max_pieces=max_pieces, conjugation=conjugation)
    click.echo(summary.summary())
    if not summary.ok:
        sys.exit(EXIT_VALIDATION)


@cli.command(name="search")
@click.option("--constraints", default="", help=f"Comma separated subset of {', '.join(SEARCH_CONSTRAINTS)}")
@click.option("--budget", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-degree", type=click.IntRange(min=0), default=DEFAULT_SEARCH_DEGREE, show_default=True)
@click.option("--max-pieces", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the found bicomplex to a file")
def search_command(constraints: str, budget: int, seed: int, max_degree: int, max_pieces: int, out: str | None) -> None:
    """Search assemblies of dots, squares and zigzags with the requested properties."""
    wanted = _split(constraints)
    unknown = set(wanted) - set(SEARCH_CONSTRAINTS)
    if unknown:
        _fail(f"unknown constraints {sorted(unknown)}, expected a subset of {', '.join(SEARCH_CONSTRAINTS)}", EXIT_PARSE)
    result = run_search(wanted, budget=budget, seed=seed, max_degree=max_degree, max_pieces=max_pieces)
    click.echo(result.summary(), err=True)
    if result.found:
        _emit(fileio.dump_document(result.document), out)


@cli.command(name="builtin")
@click.argument("name", required=False)
@click.option("--list", "list_models", is_flag=True, help="List the shipped models")
def builtin_command(name: str | None, list_models: bool) -> None:
    """Print the structure equations of a shipped model."""
    if list_models or name is None:
        for model in lie.BUILTIN_MODELS:
            click.echo(model)
        return
    try:
        click.echo(fileio.dump_model(lie.builtin(name)), nl=False)
    except UnknownModelError as err:
        _fail(str(err), EXIT_PARSE)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
