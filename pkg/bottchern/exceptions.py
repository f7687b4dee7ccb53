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
"""Exceptions raised by bottchern.

Every exception derives from :class:`BottChernError` and from the builtin
exception a caller would naturally expect, so ``except ValueError`` keeps
working for code that does not know about this package.

"""

from __future__ import annotations


class BottChernError(Exception):
    """Base class for all bottchern errors."""


class DimensionMismatchError(BottChernError, ValueError):
    """Two operands live in spaces of different dimension."""


class ContainmentError(BottChernError, ValueError):
    """A quotient was requested of spaces that are not nested.

    This always indicates a broken complex upstream (for example
    differentials that do not square to zero).
    """


class NoConjugationError(BottChernError, RuntimeError):
    """The operation needs a conjugation structure that the input lacks."""


class NotExteriorModelError(BottChernError, TypeError):
    """The operation needs a bicomplex compiled from structure equations."""


class MetricError(BottChernError, ValueError):
    """A Gram matrix is not Hermitian positive definite or has the wrong shape."""


class AssemblyError(BottChernError, ValueError):
    """A zigzag assembly has an invalid placement or cannot carry a conjugation."""


class ModelParseError(BottChernError, ValueError):
    """An input document could not be parsed.

    Parameters
    ----------
    message:
        Human readable description of the problem.
    field:
        Dotted path of the offending field, if known.
    line:
        1-based line number in the source document, if known.

    """

    def __init__(self, message: str, field: str | None = None, line: int | None = None) -> None:
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class ScalarLiteralError(ModelParseError):
    """A scalar literal is not an exact element of Q(i)."""


class UnknownModelError(BottChernError, KeyError):
    """A builtin model name is not known."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class ValidationError(BottChernError, ValueError):
    """A bicomplex or structure equations violate their axioms.

    The individual violations are available as ``violations``.
    """

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
