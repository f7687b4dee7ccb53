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
"""Finite-dimensional Hodge theory for Bott-Chern and Aeppli cohomology.

Adjoints are taken with respect to Hermitian Gram matrices
``<u, v> = u^H G v`` on every ``V^{p,q}``, so the fourth-order Laplacians
are explicit matrices over ``QQ_I`` whose kernels can be compared exactly
with the cohomology computed in :mod:`bottchern.cohomology`.

"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Literal

from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from . import cohomology, linalg
from .bicomplex import Bicomplex, Bidegree
from .exceptions import DimensionMismatchError, MetricError, NotExteriorModelError
from .linalg import Matrix, Subspace, check_metric

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricData:
    """Hermitian metric given by one Gram matrix per bidegree.

    Missing blocks are the identity, i.e. the stored basis is orthonormal.
    """

    gram: Mapping[Bidegree, Matrix] = field(default_factory=dict)

    @classmethod
    def from_bicomplex(cls, x: Bicomplex) -> MetricData:
        return cls(dict(x.gram))

    def block(self, x: Bicomplex, p: int, q: int) -> Matrix:
        block = self.gram.get((p, q)) if x.dim(p, q) else None
        return block if block is not None else linalg.identity(x.dim(p, q))

    def validate(self, x: Bicomplex) -> list[str]:
        violations = []
        for (p, q), block in self.gram.items():
            if block.shape != (x.dim(p, q), x.dim(p, q)):
                violations.append(f"gram at ({p},{q}) has shape {block.shape}")
                continue
            violations.extend(f"gram at ({p},{q}): {msg}" for msg in check_metric(block))
        return violations


def adjoint(m: Matrix, gram_src: Matrix, gram_tgt: Matrix) -> Matrix:
    """Adjoint ``G_src^{-1} m^H G_tgt`` of ``m`` with respect to the two inner products.

    Raises
    ------
    DimensionMismatchError
        If a Gram matrix does not fit the domain or codomain of ``m``.
    MetricError
        If a Gram matrix is not invertible.

    """
    rows, cols = m.shape
    if gram_src.shape != (cols, cols) or gram_tgt.shape != (rows, rows):
        raise DimensionMismatchError(f"Gram matrices {gram_src.shape}, {gram_tgt.shape} do not fit a {m.shape} map")
    if rows == 0 or cols == 0:
        return linalg.zeros(cols, rows)
    try:
        src_inv = linalg.inverse(gram_src)
    except DMNonInvertibleMatrixError as err:
        raise MetricError("Gram matrix is singular") from err
    return linalg.matmul(src_inv, linalg.conj_transpose(m), gram_tgt)


class _Operators:
    """Differentials of ``x`` and their adjoints with bidegree bookkeeping."""

    def __init__(self, x: Bicomplex, metric: MetricData) -> None:
        self.x = x
        self.metric = metric

    def gram(self, p: int, q: int) -> Matrix:
        return self.metric.block(self.x, p, q)

    def adj(self, m: Matrix, src: Bidegree, tgt: Bidegree) -> Matrix:
        return adjoint(m, self.gram(*src), self.gram(*tgt))

    def partial_adj(self, p: int, q: int) -> Matrix:
        """``∂*: V^{p+1,q} -> V^{p,q}``."""
        return self.adj(self.x.partial(p, q), (p, q), (p + 1, q))

    def partial_bar_adj(self, p: int, q: int) -> Matrix:
        """``∂̄*: V^{p,q+1} -> V^{p,q}``."""
        return self.adj(self.x.partial_bar(p, q), (p, q), (p, q + 1))

    def ddbar_adj(self, p: int, q: int) -> Matrix:
        """``(∂∂̄)*: V^{p+1,q+1} -> V^{p,q}``."""
        return self.adj(self.x.ddbar(p, q), (p, q), (p + 1, q + 1))

    def delbar_star_del(self, s: int, t: int) -> Matrix:
        """``∂̄*∂: V^{s,t} -> V^{s+1,t-1}``."""
        return linalg.matmul(self.partial_bar_adj(s + 1, t - 1), self.x.partial(s, t))

    def delbar_del_star(self, s: int, t: int) -> Matrix:
        """``∂̄∂*: V^{s,t} -> V^{s-1,t+1}``."""
        return linalg.matmul(self.x.partial_bar(s - 1, t), self.partial_adj(s - 1, t))


def laplacian(x: Bicomplex, flavor: Literal["bc", "aeppli"], p: int, q: int, metric: MetricData | None = None) -> Matrix:
    """Matrix of the fourth-order Bott-Chern or Aeppli Laplacian on ``V^{p,q}``.

    The Bott-Chern Laplacian is
    ``(∂∂̄)(∂∂̄)* + (∂∂̄)*(∂∂̄) + (∂̄*∂)(∂̄*∂)* + (∂̄*∂)*(∂̄*∂) + ∂̄*∂̄ + ∂*∂``
    and the Aeppli Laplacian is
    ``∂∂* + ∂̄∂̄* + (∂∂̄)*(∂∂̄) + (∂∂̄)(∂∂̄)* + (∂̄∂*)*(∂̄∂*) + (∂̄∂*)(∂̄∂*)*``.

    """
    ops = _Operators(x, metric or MetricData.from_bicomplex(x))
    mul = linalg.matmul
    ddbar_in = x.ddbar(p - 1, q - 1)
    ddbar_out = x.ddbar(p, q)
    terms = [
        mul(ddbar_in, ops.ddbar_adj(p - 1, q - 1)),
        mul(ops.ddbar_adj(p, q), ddbar_out),
    ]
    if flavor == "bc":
        into = ops.delbar_star_del(p - 1, q + 1)
        out = ops.delbar_star_del(p, q)
        terms += [
            mul(into, ops.adj(into, (p - 1, q + 1), (p, q))),
            mul(ops.adj(out, (p, q), (p + 1, q - 1)), out),
            mul(ops.partial_bar_adj(p, q), x.partial_bar(p, q)),
            mul(ops.partial_adj(p, q), x.partial(p, q)),
        ]
    elif flavor == "aeppli":
        out = ops.delbar_del_star(p, q)
        into = ops.delbar_del_star(p + 1, q - 1)
        terms += [
            mul(x.partial(p - 1, q), ops.partial_adj(p - 1, q)),
            mul(x.partial_bar(p, q - 1), ops.partial_bar_adj(p, q - 1)),
            mul(ops.adj(out, (p, q), (p - 1, q + 1)), out),
            mul(into, ops.adj(into, (p + 1, q - 1), (p, q))),
        ]
    else:
        raise ValueError(f"Unknown Laplacian flavor {flavor!r}")
    return linalg.matadd(*terms)


def laplacian_kernel_dim(
    x: Bicomplex, flavor: Literal["bc", "aeppli"], p: int, q: int, metric: MetricData | None = None
) -> int:
    """Dimension of the space of harmonic vectors of the given Laplacian at ``(p, q)``.

    Raises
    ------
    MetricError
        If the assembled Laplacian is not self-adjoint, which happens
        only for an invalid metric.

    """
    metric = metric or MetricData.from_bicomplex(x)
    lap = laplacian(x, flavor, p, q, metric)
    gram = metric.block(x, p, q)
    if not linalg.matrices_equal(adjoint(lap, gram, gram), lap):
        raise MetricError(f"{flavor} Laplacian at ({p},{q}) is not self-adjoint")
    return linalg.kernel_basis(lap).dim


def harmonic_characterization_check(x: Bicomplex, p: int, q: int, metric: MetricData | None = None) -> bool:
    """Compare Laplacian kernels with their first-order descriptions and with cohomology.

    Bott-Chern harmonic vectors are those killed by ``∂``, ``∂̄`` and
    ``(∂∂̄)*``; Aeppli harmonic vectors are those killed by ``∂*``, ``∂̄*``
    and ``∂∂̄``. Their dimensions must be the Bott-Chern and Aeppli numbers.
    """
    metric = metric or MetricData.from_bicomplex(x)
    ops = _Operators(x, metric)
    kernel = linalg.kernel_basis
    intersect = linalg.subspace_intersect

    harmonic_bc = kernel(laplacian(x, "bc", p, q, metric))
    expected_bc = intersect(cohomology.closed(x, p, q), kernel(ops.ddbar_adj(p - 1, q - 1)))
    harmonic_a = kernel(laplacian(x, "aeppli", p, q, metric))
    expected_a = intersect(
        intersect(kernel(ops.partial_adj(p - 1, q)), kernel(ops.partial_bar_adj(p, q - 1))),
        cohomology.ker_ddbar(x, p, q),
    )
    ok = (
        harmonic_bc == expected_bc
        and harmonic_a == expected_a
        and harmonic_bc.dim == cohomology.h_bc(x, p, q)
        and harmonic_a.dim == cohomology.h_aeppli(x, p, q)
    )
    if not ok:
        logger.debug("Harmonic characterization fails at (%d,%d)", p, q)
    return ok


# -- Hodge star on exterior-algebra models ------------------------------------


@dataclass(frozen=True)
class StarOperator:
    """Complex-linear Hodge star ``V^{p,q} -> V^{n-q,n-p}``, one matrix per source bidegree."""

    n: int
    blocks: Mapping[Bidegree, Matrix]

    def block(self, p: int, q: int) -> Matrix:
        return self.blocks[(p, q)]

    def apply(self, p: int, q: int, u: Subspace) -> Subspace:
        return linalg.apply(self.blocks[(p, q)], u)


def _pairing(model, left: Bidegree, right: Bidegree) -> Matrix:
    """``W[S, T]``: coefficient of the volume monomial in ``e_S ∧ e_T``."""
    from .lie import volume_monomial, wedge

    vol = volume_monomial(model.n)
    rows = []
    for s in model.monomials[left]:
        row = []
        for t in model.monomials[right]:
            product = wedge(s, t)
            row.append(product[0] if product is not None and product[1] == vol else 0)
        rows.append(row)
    return linalg.from_rows(rows, len(model.monomials[left]), len(model.monomials[right]))


def build_star(model, metric: MetricData | None = None) -> StarOperator:
    """Build the Hodge star of an exterior-algebra model.

    For ``γ`` in ``V^{a,b}``, ``⋆γ`` in ``V^{n-b,n-a}`` is determined by
    ``α ∧ ⋆γ = <α, σγ> vol`` for every ``α`` in ``V^{b,a}``, where ``σ`` is
    the conjugation and ``vol`` the top monomial. The pairing is linear in
    ``α``, which makes ``⋆`` complex-linear.

    Raises
    ------
    NotExteriorModelError
        If ``model`` is a plain :class:`~bottchern.bicomplex.Bicomplex`
        without a monomial basis.

    """
    from .lie import ExteriorModel

    if not isinstance(model, ExteriorModel):
        raise NotExteriorModelError("not an exterior-algebra model")
    x = model.bicomplex
    metric = metric or MetricData.from_bicomplex(x)
    n = model.n
    blocks = {}
    for a, b in x.bidegrees():
        pairing = _pairing(model, (b, a), (n - b, n - a))
        blocks[(a, b)] = linalg.matmul(
            linalg.inverse(pairing),
            linalg.conjugate(metric.block(x, b, a)),
            linalg.conjugate(x.conj(a, b)),
        )
    return StarOperator(n, blocks)


def star_kernel_swap_check(model, metric: MetricData | None = None) -> bool:
    """Check that ``⋆`` carries Bott-Chern harmonic vectors onto Aeppli harmonic vectors."""
    star = build_star(model, metric)
    x = model.bicomplex
    n = model.n
    for p, q in x.bidegrees():
        harmonic_bc = linalg.kernel_basis(laplacian(x, "bc", p, q, metric))
        harmonic_a = linalg.kernel_basis(laplacian(x, "aeppli", n - q, n - p, metric))
        if star.apply(p, q, harmonic_bc) != harmonic_a:
            logger.debug("Hodge star does not swap harmonic spaces at (%d,%d)", p, q)
            return False
    return True
