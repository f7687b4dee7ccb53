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
"""Exterior-algebra models of nilmanifolds with invariant complex structures.

A model is given by complex structure equations ``dφ^i`` for a coframe
``φ^1, ..., φ^n`` of left-invariant ``(1,0)``-forms. The differential is
extended to the whole bigraded exterior algebra by the Leibniz rule and
by ``dφ̄^i = conj(dφ^i)``, then split by bidegree into ``∂`` and ``∂̄``.

Internally the generators are numbered ``0 .. n-1`` for ``φ^1 .. φ^n`` and
``n .. 2n-1`` for ``φ̄^1 .. φ̄^n``. A monomial is a strictly increasing
tuple of generator numbers, so ``φ^I ∧ φ̄^J`` lists ``I`` before ``J``.

The cohomology computed from a model is the cohomology of invariant
forms. For nilmanifolds with the complex structures shipped here it
agrees with the cohomology of the manifold; this is a known result and is
not re-derived.

"""

from __future__ import annotations

import logging
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, NamedTuple

from . import linalg
from .bicomplex import Bicomplex, Bidegree, validate
from .exceptions import ModelParseError, UnknownModelError, ValidationError
from .linalg import GaussianRational, Matrix

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]
Form = dict[Monomial, GaussianRational]

TERM_KINDS = ("20", "11", "02")
BUILTIN_MODELS = ("iwasawa", "torus<N>")
_TORUS = re.compile(r"^torus_?(\d+)$")
_MODEL_FIELDS = {"name", "n", "dphi", "gram"}
_TERM_FIELDS = {"type", "j", "k", "coeff"}


class Term(NamedTuple):
    """One summand ``coeff * x^j ∧ y^k`` of a structure equation, 1-based indices.

    ``kind`` is ``"20"`` for ``φ^j ∧ φ^k``, ``"11"`` for ``φ^j ∧ φ̄^k`` and
    ``"02"`` for ``φ̄^j ∧ φ̄^k``.
    """

    kind: str
    j: int
    k: int
    coeff: GaussianRational


@dataclass(frozen=True)
class StructureEquations:
    """Complex structure equations ``dφ^i`` of a Lie algebra of complex dimension ``n``."""

    name: str
    n: int
    d_phi: tuple[tuple[Term, ...], ...]
    gram: Mapping[Bidegree, Matrix] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class ExteriorModel:
    """Bicomplex of invariant forms together with its monomial basis."""

    name: str
    n: int
    bicomplex: Bicomplex
    monomials: Mapping[Bidegree, list[Monomial]]
    equations: StructureEquations


# -- exterior algebra ---------------------------------------------------------


def sort_monomial(indices: Sequence[int]) -> tuple[int, Monomial] | None:
    """Sort generator indices, returning the permutation sign, or None on a repeated generator."""
    items = list(indices)
    if len(set(items)) != len(items):
        return None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def wedge(a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
    return sort_monomial(a + b)


def volume_monomial(n: int) -> Monomial:
    """``φ^1 ∧ ... ∧ φ^n ∧ φ̄^1 ∧ ... ∧ φ̄^n``."""
    return tuple(range(2 * n))


def bidegree(monomial: Monomial, n: int) -> Bidegree:
    p = sum(1 for g in monomial if g < n)
    return p, len(monomial) - p


def monomial_label(monomial: Monomial, n: int) -> str:
    if not monomial:
        return "1"
    return "∧".join(f"φ{g + 1}" if g < n else f"φ̄{g - n + 1}" for g in monomial)


def monomials_by_bidegree(n: int) -> dict[Bidegree, list[Monomial]]:
    """Basis monomials of every ``V^{p,q}``, ordered lexicographically by ``(I, J)``."""
    basis = {}
    for p in range(n + 1):
        for q in range(n + 1):
            basis[(p, q)] = [
                tuple(i) + tuple(n + j for j in jj) for i in combinations(range(n), p) for jj in combinations(range(n), q)
            ]
    return basis


def _add_term(form: Form, monomial: Monomial, coeff: GaussianRational) -> None:
    value = form.get(monomial, linalg.QQ_I.zero) + coeff
    if value == linalg.QQ_I.zero:
        form.pop(monomial, None)
    else:
        form[monomial] = value


def _term_monomial(term: Term, n: int) -> tuple[int, Monomial] | None:
    first = term.j - 1 if term.kind in ("20", "11") else n + term.j - 1
    second = term.k - 1 if term.kind == "20" else n + term.k - 1
    return sort_monomial((first, second))


def generator_differentials(s: StructureEquations) -> list[Form]:
    """``d`` of every generator: ``dφ^i`` as given and ``dφ̄^i = conj(dφ^i)``."""
    n = s.n
    forms: list[Form] = []
    for terms in s.d_phi:
        form: Form = {}
        for term in terms:
            placed = _term_monomial(term, n)
            if placed is not None:
                _add_term(form, placed[1], placed[0] * term.coeff)
        forms.append(form)
    for i in range(n):
        form = {}
        for monomial, coeff in forms[i].items():
            sign, conj_monomial = sort_monomial([g + n if g < n else g - n for g in monomial])
            _add_term(form, conj_monomial, sign * linalg.conj_scalar(coeff))
        forms.append(form)
    return forms


def d_monomial(monomial: Monomial, generator_d: Sequence[Form]) -> Form:
    """Leibniz extension ``d(g_1 ∧ ... ∧ g_k) = Σ (-1)^i g_1 ∧ ... ∧ dg_i ∧ ... ∧ g_k``."""
    result: Form = {}
    for i, g in enumerate(monomial):
        sign = -1 if i % 2 else 1
        for dg, coeff in generator_d[g].items():
            placed = sort_monomial(monomial[:i] + dg + monomial[i + 1 :])
            if placed is not None:
                _add_term(result, placed[1], sign * placed[0] * coeff)
    return result


def d_form(form: Form, generator_d: Sequence[Form]) -> Form:
    result: Form = {}
    for monomial, coeff in form.items():
        for image, value in d_monomial(monomial, generator_d).items():
            _add_term(result, image, coeff * value)
    return result


# -- structure equations ------------------------------------------------------


def validate_model(s: StructureEquations) -> list[str]:
    """Check integrability and ``d² = 0`` on the generators.

    Returns
    -------
    list of str
        One message per violation; empty for a valid model.

    """
    violations = []
    if len(s.d_phi) != s.n:
        return [f"{len(s.d_phi)} structure equations given for n = {s.n}"]
    for i, terms in enumerate(s.d_phi, start=1):
        for term in terms:
            if not (1 <= term.j <= s.n and 1 <= term.k <= s.n):
                violations.append(f"dφ{i} term ({term.j},{term.k}) is out of range")
            elif term.kind == "02":
                violations.append(f"integrability: dφ{i} has a (0,2) component")
    for (p, q), block in sorted(s.gram.items()):
        size = comb(s.n, p) * comb(s.n, q)
        if block.shape != (size, size):
            violations.append(f"gram at ({p},{q}) has shape {block.shape}, expected {(size, size)}")
        else:
            violations.extend(f"gram at ({p},{q}): {msg}" for msg in linalg.check_metric(block))
    if violations:
        return violations
    generator_d = generator_differentials(s)
    for i in range(s.n):
        if d_form(generator_d[i], generator_d):
            violations.append(f"d²φ{i + 1} ≠ 0")
    return violations


def compile_model(s: StructureEquations) -> ExteriorModel:
    """Compile structure equations into a bicomplex on the full exterior algebra.

    The result carries the conjugation ``σ(φ^I ∧ φ̄^J) = (-1)^{pq} φ^J ∧ φ̄^I``
    and the Gram blocks of ``s`` (identity where absent).

    Raises
    ------
    ValidationError
        If the structure equations or the compiled bicomplex are invalid.

    """
    violations = validate_model(s)
    if violations:
        raise ValidationError(violations)
    n = s.n
    generator_d = generator_differentials(s)
    basis = monomials_by_bidegree(n)
    position = {pq: {m: i for i, m in enumerate(monos)} for pq, monos in basis.items()}
    dims = {pq: len(monos) for pq, monos in basis.items()}

    def empty(target: Bidegree, source: Bidegree) -> list[list[GaussianRational]]:
        return [[linalg.QQ_I.zero] * dims[source] for _ in range(dims.get(target, 0))]

    del_rows: dict[Bidegree, list[list[GaussianRational]]] = {}
    delbar_rows: dict[Bidegree, list[list[GaussianRational]]] = {}
    conj_rows: dict[Bidegree, list[list[GaussianRational]]] = {}
    for (p, q), monos in basis.items():
        del_rows[(p, q)] = empty((p + 1, q), (p, q))
        delbar_rows[(p, q)] = empty((p, q + 1), (p, q))
        conj_rows[(p, q)] = empty((q, p), (p, q))
        for col, monomial in enumerate(monos):
            for image, coeff in d_monomial(monomial, generator_d).items():
                target = bidegree(image, n)
                rows = del_rows if target == (p + 1, q) else delbar_rows
                rows[(p, q)][position[target][image]][col] = coeff
            sign, mirrored = sort_monomial([g + n if g < n else g - n for g in monomial])
            conj_rows[(p, q)][position[(q, p)][mirrored]][col] = linalg.gaussian(sign)

    def blocks(rows: dict, target) -> dict[Bidegree, Matrix]:
        return {pq: linalg.from_rows(r, dims.get(target(*pq), 0), dims[pq]) for pq, r in rows.items()}

    x = Bicomplex(
        p_max=n,
        q_max=n,
        dims=dims,
        del_blocks=blocks(del_rows, lambda p, q: (p + 1, q)),
        delbar_blocks=blocks(delbar_rows, lambda p, q: (p, q + 1)),
        conj_blocks=blocks(conj_rows, lambda p, q: (q, p)),
        n=n,
        gram=dict(s.gram),
        labels={pq: [monomial_label(m, n) for m in monos] for pq, monos in basis.items()},
    )
    violations = validate(x)
    if violations:
        raise ValidationError(violations)
    logger.debug("Compiled model %r with %d basis monomials", s.name, sum(dims.values()))
    return ExteriorModel(s.name, n, x, basis, s)


def builtin(name: str) -> StructureEquations:
    """Structure equations of a shipped model.

    ``"iwasawa"`` is the complex Heisenberg group of dimension 3 with
    ``dφ^3 = -φ^1 ∧ φ^2``. ``"torus<N>"`` (or ``"torus_<N>"``) is the
    abelian model of complex dimension ``N``.

    Raises
    ------
    UnknownModelError
        For any other name.

    """
    if name == "iwasawa":
        minus_one = linalg.gaussian(-1)
        return StructureEquations("iwasawa", 3, ((), (), (Term("20", 1, 2, minus_one),)))
    match = _TORUS.match(name)
    if match:
        n = int(match.group(1))
        return StructureEquations(f"torus{n}", n, tuple(() for _ in range(n)))
    raise UnknownModelError(f"unknown builtin model {name!r}, expected one of {', '.join(BUILTIN_MODELS)}")


def _parse_int(value: Any, field: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ModelParseError(f"expected an integer >= {minimum}, got {value!r}", field=field)
    return value


def _parse_term(value: Any, field: str, n: int) -> Term:
    if not isinstance(value, dict):
        raise ModelParseError("term must be a mapping with type, j, k and coeff", field=field)
    unknown = set(value) - _TERM_FIELDS
    if unknown:
        raise ModelParseError(f"unknown term fields {sorted(unknown)}", field=field)
    missing = {"type", "j", "k"} - set(value)
    if missing:
        raise ModelParseError(f"missing term fields {sorted(missing)}", field=field)
    kind = value["type"]
    if isinstance(kind, int) and not isinstance(kind, bool):
        # unquoted YAML reads 20 as an integer and 02 as 2
        kind = str(kind).zfill(2)
    if kind not in TERM_KINDS:
        raise ModelParseError(f"term type must be one of {TERM_KINDS}, got {kind!r}", field=f"{field}.type")
    j = _parse_int(value["j"], f"{field}.j", minimum=1)
    k = _parse_int(value["k"], f"{field}.k", minimum=1)
    if j > n or k > n:
        raise ModelParseError(f"generator index exceeds n = {n}", field=field)
    return Term(kind, j, k, linalg.parse_scalar(value.get("coeff", 1), field=f"{field}.coeff"))


def parse_gram(value: Any, field: str, shape_of) -> dict[Bidegree, Matrix]:
    """Parse a list of ``{p, q, matrix}`` Gram blocks."""
    if value is None:
        return {}
    if not isinstance(value, list):
        raise ModelParseError("gram must be a list of {p, q, matrix} blocks", field=field)
    gram = {}
    for i, block in enumerate(value):
        where = f"{field}[{i}]"
        if not isinstance(block, dict) or set(block) != {"p", "q", "matrix"}:
            raise ModelParseError("gram block needs exactly the fields p, q and matrix", field=where)
        p, q = _parse_int(block["p"], f"{where}.p"), _parse_int(block["q"], f"{where}.q")
        size = shape_of(p, q)
        gram[(p, q)] = linalg.parse_matrix(block["matrix"], f"{where}.matrix", (size, size))
    return gram


def parse_model(document: Any) -> StructureEquations:
    """Parse a model document into structure equations.

    Parameters
    ----------
    document
        Mapping with fields ``name`` (optional), ``n``, ``dphi`` and
        ``gram`` (optional). ``dphi`` has one list of terms per generator,
        each term a mapping ``{type, j, k, coeff}``.

    Raises
    ------
    ModelParseError
        On unknown or malformed fields. The error names the offending
        field path.
    ScalarLiteralError
        On a coefficient that is not an exact element of Q(i).

    """
    if not isinstance(document, dict):
        raise ModelParseError("model document must be a mapping")
    unknown = set(document) - _MODEL_FIELDS
    if unknown:
        raise ModelParseError(f"unknown fields {sorted(unknown)}", field=sorted(unknown)[0])
    if "n" not in document or "dphi" not in document:
        raise ModelParseError("model needs the fields n and dphi")
    n = _parse_int(document["n"], "n")
    dphi = document["dphi"]
    if not isinstance(dphi, list) or len(dphi) != n:
        raise ModelParseError(f"dphi must list one equation per generator ({n})", field="dphi")
    d_phi = []
    for i, terms in enumerate(dphi):
        terms = [] if terms is None else terms
        if not isinstance(terms, list):
            raise ModelParseError("equation must be a list of terms", field=f"dphi[{i}]")
        d_phi.append(tuple(_parse_term(t, f"dphi[{i}][{a}]", n) for a, t in enumerate(terms)))
    gram = parse_gram(document.get("gram"), "gram", lambda p, q: comb(n, p) * comb(n, q))
    return StructureEquations(str(document.get("name", "model")), n, tuple(d_phi), gram)


def format_model(s: StructureEquations) -> dict[str, Any]:
    """Inverse of :func:`parse_model`."""
    document: dict[str, Any] = {
        "name": s.name,
        "n": s.n,
        "dphi": [
            [{"type": t.kind, "j": t.j, "k": t.k, "coeff": linalg.format_scalar(t.coeff)} for t in terms]
            for terms in s.d_phi
        ],
    }
    if s.gram:
        document["gram"] = [
            {"p": p, "q": q, "matrix": linalg.format_matrix(m)} for (p, q), m in sorted(s.gram.items())
        ]
    return document
