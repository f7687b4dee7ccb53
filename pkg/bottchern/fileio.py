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
"""Reading and writing model and bicomplex documents.

Documents are YAML (and therefore also JSON). Scalars use the exact
serialization of :func:`bottchern.linalg.parse_scalar`. Parse errors are
reported with the dotted path of the offending field and, when the text
is available, its line number.

"""

from __future__ import annotations

import logging
import os
import re
from pathlib import Path
from typing import IO, Any

import yaml

from . import linalg
from .bicomplex import Bicomplex, Bidegree
from .exceptions import ModelParseError
from .lie import StructureEquations, format_model, parse_gram, parse_model

logger = logging.getLogger(__name__)

_BICOMPLEX_FIELDS = {"p_max", "q_max", "n", "dims", "del", "delbar", "conj", "gram"}
_PATH_TOKEN = re.compile(r"([^.\[\]]+)|\[(\d+)\]")


def _field_line(node: yaml.Node | None, field: str) -> int | None:
    """1-based line of a dotted field path inside a composed YAML node tree."""
    for name, index in _PATH_TOKEN.findall(field):
        if isinstance(node, yaml.MappingNode) and name:
            node = next((value for key, value in node.value if key.value == name), None)
        elif isinstance(node, yaml.SequenceNode) and index:
            i = int(index)
            node = node.value[i] if i < len(node.value) else None
        else:
            node = None
        if node is None:
            return None
    return node.start_mark.line + 1 if node is not None else None


def _parse_text(text: str, parser):
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as err:
        mark = getattr(err, "problem_mark", None)
        raise ModelParseError(f"invalid YAML: {err}", line=mark.line + 1 if mark else None) from err
    try:
        return parser(document)
    except ModelParseError as err:
        if err.field is None or err.line is not None:
            raise
        line = _field_line(yaml.compose(text), err.field)
        message = str(err).split(": ", 1)[-1]
        raise type(err)(message, field=err.field, line=line) from err


def read_text(source: str | os.PathLike | IO[str]) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


# -- bicomplex documents ------------------------------------------------------


def _parse_blocks(value: Any, field: str, dims: dict[Bidegree, int], target) -> dict[Bidegree, linalg.Matrix]:
    if value is None:
        return {}
    if not isinstance(value, list):
        raise ModelParseError("expected a list of {p, q, matrix} blocks", field=field)
    blocks = {}
    for i, block in enumerate(value):
        where = f"{field}[{i}]"
        if not isinstance(block, dict) or set(block) != {"p", "q", "matrix"}:
            raise ModelParseError("block needs exactly the fields p, q and matrix", field=where)
        p, q = block["p"], block["q"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (p, q)):
            raise ModelParseError("p and q must be integers", field=where)
        shape = (dims.get(target(p, q), 0), dims.get((p, q), 0))
        blocks[(p, q)] = linalg.parse_matrix(block["matrix"], f"{where}.matrix", shape)
    return blocks


def parse_bicomplex(document: Any) -> Bicomplex:
    """Build a :class:`Bicomplex` from a parsed document.

    Unspecified blocks are zero maps. Axioms are not checked here; use
    :func:`bottchern.bicomplex.validate`.

    Raises
    ------
    ModelParseError
        On unknown, missing or malformed fields.

    """
    if not isinstance(document, dict):
        raise ModelParseError("bicomplex document must be a mapping")
    unknown = set(document) - _BICOMPLEX_FIELDS
    if unknown:
        raise ModelParseError(f"unknown fields {sorted(unknown)}", field=sorted(unknown)[0])
    for name in ("p_max", "q_max", "dims"):
        if name not in document:
            raise ModelParseError(f"missing field {name}")
    p_max, q_max = document["p_max"], document["q_max"]
    for name, value in (("p_max", p_max), ("q_max", q_max)):
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ModelParseError(f"expected a nonnegative integer, got {value!r}", field=name)
    n = document.get("n")
    if n is not None and (isinstance(n, bool) or not isinstance(n, int) or n < 0):
        raise ModelParseError(f"expected a nonnegative integer, got {n!r}", field="n")

    dims: dict[Bidegree, int] = {}
    if not isinstance(document["dims"], list):
        raise ModelParseError("expected a list of {p, q, dim} entries", field="dims")
    for i, entry in enumerate(document["dims"]):
        if not isinstance(entry, dict) or set(entry) != {"p", "q", "dim"}:
            raise ModelParseError("entry needs exactly the fields p, q and dim", field=f"dims[{i}]")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in entry.values()) or entry["dim"] < 0:
            raise ModelParseError("p, q and dim must be integers, dim nonnegative", field=f"dims[{i}]")
        if not (0 <= entry["p"] <= p_max and 0 <= entry["q"] <= q_max):
            raise ModelParseError("bidegree lies outside the bounds", field=f"dims[{i}]")
        dims[(entry["p"], entry["q"])] = entry["dim"]

    conj = document.get("conj")
    return Bicomplex(
        p_max=p_max,
        q_max=q_max,
        dims=dims,
        del_blocks=_parse_blocks(document.get("del"), "del", dims, lambda p, q: (p + 1, q)),
        delbar_blocks=_parse_blocks(document.get("delbar"), "delbar", dims, lambda p, q: (p, q + 1)),
        conj_blocks=None if conj is None else _parse_blocks(conj, "conj", dims, lambda p, q: (q, p)),
        n=n,
        gram=parse_gram(document.get("gram"), "gram", lambda p, q: dims.get((p, q), 0)),
    )


def format_bicomplex(x: Bicomplex) -> dict[str, Any]:
    """Document for ``x`` in the form read by :func:`parse_bicomplex`; zero blocks are omitted."""

    def blocks(getter) -> list[dict[str, Any]]:
        out = []
        for p, q in x.bidegrees():
            block = getter(p, q)
            if 0 not in block.shape and not linalg.is_zero(block):
                out.append({"p": p, "q": q, "matrix": linalg.format_matrix(block)})
        return out

    document: dict[str, Any] = {"p_max": x.p_max, "q_max": x.q_max}
    if x.n is not None:
        document["n"] = x.n
    document["dims"] = [{"p": p, "q": q, "dim": x.dim(p, q)} for p, q in x.bidegrees() if x.dim(p, q)]
    document["del"] = blocks(x.partial)
    document["delbar"] = blocks(x.partial_bar)
    if x.has_conjugation:
        document["conj"] = blocks(x.conj)
    if x.gram:
        document["gram"] = [
            {"p": p, "q": q, "matrix": linalg.format_matrix(m)} for (p, q), m in sorted(x.gram.items())
        ]
    return document


# -- entry points -------------------------------------------------------------


def load_bicomplex(source: str | os.PathLike | IO[str]) -> Bicomplex:
    return _parse_text(read_text(source), parse_bicomplex)


def load_model(source: str | os.PathLike | IO[str]) -> StructureEquations:
    return _parse_text(read_text(source), parse_model)


def load_input(source: str | os.PathLike | IO[str]) -> Bicomplex | StructureEquations:
    """Load either kind of document, telling them apart by their fields."""
    text = read_text(source)

    def parse_any(document: Any) -> Bicomplex | StructureEquations:
        if isinstance(document, dict) and "dphi" in document:
            return parse_model(document)
        if isinstance(document, dict) and "dims" in document:
            return parse_bicomplex(document)
        raise ModelParseError("document is neither a model (dphi) nor a bicomplex (dims)")

    return _parse_text(text, parse_any)


def dump_document(document: dict[str, Any], stream: IO[str] | None = None) -> str | None:
    return yaml.safe_dump(document, stream, sort_keys=False, allow_unicode=True)


def dump_bicomplex(x: Bicomplex, stream: IO[str] | None = None) -> str | None:
    return dump_document(format_bicomplex(x), stream)


def dump_model(s: StructureEquations, stream: IO[str] | None = None) -> str | None:
    return dump_document(format_model(s), stream)
