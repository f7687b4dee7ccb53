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
"""Exact linear algebra over the Gaussian rationals.

All matrices are :class:`sympy.polys.matrices.DomainMatrix` objects over the
:data:`QQ_I` domain, whose elements are sympy's
:class:`~sympy.polys.domains.gaussiandomains.GaussianRational`. Subspaces
of a coordinate space are stored by their reduced row-echelon basis so two
equal subspaces always have identical representations.

Degenerate shapes (0 x n and n x 0 matrices) occur at every bidegree
outside the support of a bicomplex and are handled without special cases
by the callers: the helpers here short-circuit them before reaching sympy.

"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.matrices import DomainMatrix

from .exceptions import ContainmentError, DimensionMismatchError, ScalarLiteralError

Matrix = DomainMatrix


# -- scalars ------------------------------------------------------------------


def gaussian(re: Any = 0, im: Any = 0) -> GaussianRational:
    """Build an exact scalar ``re + im*i`` from ints, Fractions or QQ elements."""
    return QQ_I(_to_qq(re), _to_qq(im))


def _to_qq(value: Any):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int) and not isinstance(value, bool):
        return QQ(value)
    return QQ.convert(value)


def _parse_rational(value: Any, field: str | None):
    if isinstance(value, bool) or isinstance(value, float):
        raise ScalarLiteralError(f"{value!r} is not an exact rational literal", field=field)
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ScalarLiteralError(f"{value!r} is not a rational literal of the form 'a' or 'a/b'", field=field)
        return QQ(frac.numerator, frac.denominator)
    raise ScalarLiteralError(f"{value!r} is not a rational literal", field=field)


def parse_scalar(value: Any, field: str | None = None) -> GaussianRational:
    """Parse the serialized form of a Gaussian rational.

    Accepted forms are an integer, a rational string ``"a"`` or ``"a/b"``,
    or a mapping ``{"re": ..., "im": ...}`` where a missing ``"im"`` means 0.

    Raises
    ------
    ScalarLiteralError
        If the literal is not an exact element of Q(i) (floats, symbolic
        expressions, unknown mapping keys).

    """
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown or "re" not in value:
            raise ScalarLiteralError(f"scalar mapping needs 're' and optional 'im', got keys {sorted(value)}", field=field)
        return QQ_I(_parse_rational(value["re"], field), _parse_rational(value.get("im", 0), field))
    return QQ_I(_parse_rational(value, field), QQ(0))


def _format_rational(x) -> int | str:
    if x.denominator == 1:
        return int(x.numerator)
    return f"{int(x.numerator)}/{int(x.denominator)}"


def format_scalar(z: GaussianRational) -> int | str | dict:
    """Serialize a scalar in the form accepted by :func:`parse_scalar`."""
    if z.y == 0:
        return _format_rational(z.x)
    return {"re": str(_format_rational(z.x)), "im": str(_format_rational(z.y))}


def conj_scalar(z: GaussianRational) -> GaussianRational:
    return QQ_I(z.x, -z.y)


# -- matrices -----------------------------------------------------------------


def zeros(rows: int, cols: int) -> Matrix:
    return DomainMatrix([[QQ_I.zero] * cols for _ in range(rows)], (rows, cols), QQ_I)


def identity(n: int) -> Matrix:
    return from_rows([[QQ_I.one if i == j else QQ_I.zero for j in range(n)] for i in range(n)], n, n)


def from_rows(rows: Sequence[Sequence[Any]], nrows: int | None = None, ncols: int | None = None) -> Matrix:
    """Build a matrix from row-major entries.

    Entries may be scalars already in ``QQ_I`` or anything
    :func:`gaussian` understands. ``nrows``/``ncols`` are needed when a
    dimension is zero and cannot be read from the data.
    """
    rows = [list(row) for row in rows]
    nrows = len(rows) if nrows is None else nrows
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if len(rows) != nrows or any(len(row) != ncols for row in rows):
        raise DimensionMismatchError(f"expected a {nrows}x{ncols} matrix")
    converted = [[e if isinstance(e, GaussianRational) else gaussian(e) for e in row] for row in rows]
    if nrows == 0:
        return DomainMatrix([], (0, ncols), QQ_I)
    return DomainMatrix(converted, (nrows, ncols), QQ_I)


def entries(m: Matrix) -> list[list[GaussianRational]]:
    rows, cols = m.shape
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return m.to_list()


def conjugate(m: Matrix) -> Matrix:
    """Entrywise complex conjugate."""
    rows, cols = m.shape
    return from_rows([[conj_scalar(e) for e in row] for row in entries(m)], rows, cols)


def transpose(m: Matrix) -> Matrix:
    rows, cols = m.shape
    ents = entries(m)
    return from_rows([[ents[i][j] for i in range(rows)] for j in range(cols)], cols, rows)


def conj_transpose(m: Matrix) -> Matrix:
    return conjugate(transpose(m))


def matmul(*ms: Matrix) -> Matrix:
    """Multiply matrices left to right, checking inner dimensions."""
    result = ms[0]
    for m in ms[1:]:
        if result.shape[1] != m.shape[0]:
            raise DimensionMismatchError(f"cannot multiply {result.shape} by {m.shape}")
        rows, cols = result.shape[0], m.shape[1]
        if 0 in (rows, cols, m.shape[0]):
            result = zeros(rows, cols)
        else:
            result = result * m
    return result


def matadd(*ms: Matrix) -> Matrix:
    result = ms[0]
    for m in ms[1:]:
        if result.shape != m.shape:
            raise DimensionMismatchError(f"cannot add {result.shape} and {m.shape}")
        if 0 not in result.shape:
            result = result + m
    return result


def is_zero(m: Matrix) -> bool:
    return all(e == QQ_I.zero for row in entries(m) for e in row)


def matrices_equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and entries(a) == entries(b)


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    ents = entries(m)
    return from_rows([[ents[i][j] for j in cols] for i in rows], len(rows), len(cols))


def inverse(m: Matrix) -> Matrix:
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatchError(f"cannot invert a non-square {m.shape} matrix")
    if rows == 0:
        return m
    return m.inv()


def check_metric(gram: Matrix) -> list[str]:
    """Check that a Gram matrix is Hermitian and positive definite.

    Positive definiteness is decided by the leading principal minors,
    each of which must be real and positive.
    """
    rows, cols = gram.shape
    if rows != cols:
        return [f"Gram matrix has non-square shape {gram.shape}"]
    violations = []
    if not matrices_equal(gram, conj_transpose(gram)):
        violations.append("Gram matrix is not Hermitian")
    for size in range(1, rows + 1):
        minor = submatrix(gram, range(size), range(size)).det()
        if minor.y != 0 or minor.x <= 0:
            violations.append(f"leading principal minor of order {size} is not positive")
            break
    return violations


def rref_rank(m: Matrix) -> tuple[int, Matrix]:
    """Return the rank and the unique reduced row-echelon form of ``m``.

    Pivots are chosen as the first nonzero entry in column order. The
    arithmetic is exact so no numerical pivoting is involved.

    Examples
    --------
    >>> rref_rank(from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))[0]
    2

    """
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return 0, m
    reduced, pivots = m.rref()
    return len(pivots), reduced


def _rref_with_pivots(m: Matrix) -> tuple[list[list[GaussianRational]], tuple[int, ...]]:
    rows, cols = m.shape
    if rows == 0 or cols == 0:
        return [], ()
    reduced, pivots = m.rref()
    return entries(reduced)[: len(pivots)], tuple(pivots)


# -- subspaces ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of ``QQ_I**ambient_dim`` stored by its reduced row-echelon basis.

    Build instances with :meth:`span`, :meth:`zero` or :meth:`full` so the
    basis is always canonical; two equal subspaces then compare equal by
    representation.
    """

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence[GaussianRational]], ambient_dim: int) -> Subspace:
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise DimensionMismatchError(f"vectors do not live in a space of dimension {ambient_dim}")
        if not vectors or ambient_dim == 0:
            return cls.zero(ambient_dim)
        rows, _ = _rref_with_pivots(from_rows(vectors, len(vectors), ambient_dim))
        return cls(ambient_dim, from_rows(rows, len(rows), ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, zeros(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> list[list[GaussianRational]]:
        return entries(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and matrices_equal(self.basis, other.basis)

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def __le__(self, other: Subspace) -> bool:
        """Containment test ``self ⊆ other``."""
        _check_ambient(self, other)
        return subspace_sum(self, other).dim == other.dim

    def embed(self, offset: int, ambient_dim: int) -> Subspace:
        """Place this subspace in a block of a bigger coordinate space."""
        pad_left = [QQ_I.zero] * offset
        pad_right = [QQ_I.zero] * (ambient_dim - offset - self.ambient_dim)
        return Subspace(ambient_dim, from_rows([pad_left + v + pad_right for v in self.vectors()], self.dim, ambient_dim))

    def restrict(self, offset: int, block_dim: int) -> Subspace:
        """Project onto the coordinates ``offset .. offset+block_dim``."""
        return Subspace.span((v[offset : offset + block_dim] for v in self.vectors()), block_dim)


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatchError(f"ambient dimensions differ: {u.ambient_dim} != {v.ambient_dim}")


def kernel_basis(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}`` as a subspace of the domain of ``m``.

    Examples
    --------
    >>> kernel_basis(from_rows([[1, 1, 0], [0, 0, 1]])).dim
    1

    """
    rows, cols = m.shape
    reduced, pivots = _rref_with_pivots(m)
    free = [j for j in range(cols) if j not in pivots]
    vectors = []
    for f in free:
        v = [QQ_I.zero] * cols
        v[f] = QQ_I.one
        for i, pc in enumerate(pivots):
            v[pc] = -reduced[i][f]
        vectors.append(v)
    return Subspace.span(vectors, cols)


def image_basis(m: Matrix) -> Subspace:
    """Column space of ``m`` as a subspace of its codomain."""
    rows, cols = m.shape
    return Subspace.span(entries(transpose(m)), rows)


def apply(m: Matrix, u: Subspace) -> Subspace:
    """Image ``m(u)`` of a subspace of the domain of ``m``."""
    if m.shape[1] != u.ambient_dim:
        raise DimensionMismatchError(f"cannot apply a {m.shape} matrix to a subspace of dimension {u.ambient_dim}")
    return image_basis(matmul(m, transpose(u.basis)))


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    """Smallest subspace containing ``u`` and ``v``."""
    _check_ambient(u, v)
    return Subspace.span(u.vectors() + v.vectors(), u.ambient_dim)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Exact intersection of two subspaces.

    Coefficient vectors ``(a, b)`` with ``a U + b V = 0`` are solved for,
    and the common vectors ``a U`` span the intersection.
    """
    _check_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    stacked = from_rows(u.vectors() + v.vectors(), u.dim + v.dim, u.ambient_dim)
    relations = kernel_basis(transpose(stacked))
    common = [matmul(from_rows([c[: u.dim]], 1, u.dim), u.basis) for c in relations.vectors()]
    return Subspace.span((entries(row)[0] for row in common), u.ambient_dim)


def sum_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    total = Subspace.zero(ambient_dim)
    for space in spaces:
        total = subspace_sum(total, space)
    return total


def quotient_dim(u: Subspace, w: Subspace) -> int:
    """Dimension of ``u / w``.

    Raises
    ------
    ContainmentError
        If ``w`` is not contained in ``u``.

    """
    _check_ambient(u, w)
    if not w <= u:
        raise ContainmentError(f"quotient of non-nested spaces: dim {w.dim} subspace not contained in dim {u.dim}")
    return u.dim - w.dim


def parse_matrix(value: Any, field: str, shape: tuple[int, int] | None = None) -> Matrix:
    """Parse a row-major array of scalar literals, optionally checking its shape."""
    if not isinstance(value, list) or any(not isinstance(row, list) for row in value):
        raise ScalarLiteralError("matrix must be a list of rows", field=field)
    ncols = len(value[0]) if value else (shape[1] if shape else 0)
    if any(len(row) != ncols for row in value):
        raise ScalarLiteralError("matrix rows have different lengths", field=field)
    if shape is not None and (len(value), ncols) != tuple(shape):
        raise ScalarLiteralError(f"matrix has shape {(len(value), ncols)}, expected {tuple(shape)}", field=field)
    rows = [[parse_scalar(e, field=f"{field}[{i}][{j}]") for j, e in enumerate(row)] for i, row in enumerate(value)]
    return from_rows(rows, len(rows), ncols)


def format_matrix(m: Matrix) -> list[list[int | str | dict]]:
    return [[format_scalar(e) for e in row] for row in entries(m)]
