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
"""Bounded double complexes with anticommuting differentials.

A :class:`Bicomplex` stores the dimensions of the spaces ``V^{p,q}`` and
the coordinate matrices of ``∂_{p,q}: V^{p,q} -> V^{p+1,q}`` and
``∂̄_{p,q}: V^{p,q} -> V^{p,q+1}``. Blocks that are not stored are zero
maps of the implied shape, so sparse complexes stay sparse.

The anticommutation ``∂∂̄ + ∂̄∂ = 0`` is stored in the matrices themselves;
no Koszul sign is applied when the total differential ``d = ∂ + ∂̄`` is
assembled.

"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field

from . import linalg
from .exceptions import NoConjugationError
from .linalg import Matrix

logger = logging.getLogger(__name__)

Bidegree = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Bicomplex:
    """Finite-dimensional double complex supported on ``0 <= p <= p_max, 0 <= q <= q_max``.

    Parameters
    ----------
    p_max, q_max
        Bidegree bounds.
    dims
        Dimension of ``V^{p,q}``. Missing bidegrees have dimension 0.
    del_blocks
        Matrices of ``∂_{p,q}`` keyed by source bidegree.
    delbar_blocks
        Matrices of ``∂̄_{p,q}`` keyed by source bidegree.
    conj_blocks
        Optional matrices ``C_{p,q}`` of the real structure. The
        conjugation is ``σ(v) = C_{p,q} · conj(v)`` and maps ``V^{p,q}``
        to ``V^{q,p}``.
    n
        Optional complex dimension. Total degrees of a complex carrying
        ``n`` run up to ``2n``.
    gram
        Optional Gram matrices of a Hermitian inner product on each
        ``V^{p,q}``. Missing blocks are the identity.
    labels
        Optional basis labels (monomial names for exterior-algebra models).

    """

    p_max: int
    q_max: int
    dims: Mapping[Bidegree, int]
    del_blocks: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    delbar_blocks: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    conj_blocks: Mapping[Bidegree, Matrix] | None = None
    n: int | None = None
    gram: Mapping[Bidegree, Matrix] = field(default_factory=dict)
    labels: Mapping[Bidegree, list[str]] | None = None

    @property
    def max_degree(self) -> int:
        """Largest total degree with a possibly nonzero space."""
        return self.p_max + self.q_max

    @property
    def has_conjugation(self) -> bool:
        return self.conj_blocks is not None

    def bidegrees(self) -> Iterator[Bidegree]:
        """All bidegrees of the bounding box, ``p`` major."""
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                yield p, q

    def dim(self, p: int, q: int) -> int:
        if not (0 <= p <= self.p_max and 0 <= q <= self.q_max):
            return 0
        return int(self.dims.get((p, q), 0))

    def partial(self, p: int, q: int) -> Matrix:
        """Matrix of ``∂_{p,q}: V^{p,q} -> V^{p+1,q}``."""
        block = self.del_blocks.get((p, q)) if self.dim(p, q) and self.dim(p + 1, q) else None
        return block if block is not None else linalg.zeros(self.dim(p + 1, q), self.dim(p, q))

    def partial_bar(self, p: int, q: int) -> Matrix:
        """Matrix of ``∂̄_{p,q}: V^{p,q} -> V^{p,q+1}``."""
        block = self.delbar_blocks.get((p, q)) if self.dim(p, q) and self.dim(p, q + 1) else None
        return block if block is not None else linalg.zeros(self.dim(p, q + 1), self.dim(p, q))

    def ddbar(self, p: int, q: int) -> Matrix:
        """Matrix of ``∂∂̄: V^{p,q} -> V^{p+1,q+1}``."""
        return linalg.matmul(self.partial(p, q + 1), self.partial_bar(p, q))

    def conj(self, p: int, q: int) -> Matrix:
        """Matrix ``C_{p,q}`` of the conjugation ``V^{p,q} -> V^{q,p}``.

        Raises
        ------
        NoConjugationError
            If the complex carries no real structure.

        """
        if self.conj_blocks is None:
            raise NoConjugationError("no conjugation structure")
        block = self.conj_blocks.get((p, q)) if self.dim(p, q) else None
        return block if block is not None else linalg.zeros(self.dim(q, p), self.dim(p, q))

    def metric(self, p: int, q: int) -> Matrix:
        block = self.gram.get((p, q)) if self.dim(p, q) else None
        return block if block is not None else linalg.identity(self.dim(p, q))

    def total_bidegrees(self, k: int) -> list[Bidegree]:
        """Bidegrees making up ``Tot^k``, ordered by ``p`` ascending."""
        return [(p, k - p) for p in range(self.p_max + 1) if 0 <= k - p <= self.q_max]

    def total_offsets(self, k: int) -> dict[Bidegree, int]:
        """Offset of each ``V^{p,q}`` block inside ``Tot^k``."""
        offsets = {}
        position = 0
        for pq in self.total_bidegrees(k):
            offsets[pq] = position
            position += self.dim(*pq)
        return offsets

    def total_dim(self, k: int) -> int:
        return sum(self.dim(*pq) for pq in self.total_bidegrees(k))

    def total_differential(self, k: int) -> Matrix:
        """Matrix of ``d = ∂ + ∂̄: Tot^k -> Tot^{k+1}``."""
        src = self.total_offsets(k)
        tgt = self.total_offsets(k + 1)
        rows = [[linalg.QQ_I.zero] * self.total_dim(k) for _ in range(self.total_dim(k + 1))]
        for (p, q), col0 in src.items():
            for target, block in (((p + 1, q), self.partial(p, q)), ((p, q + 1), self.partial_bar(p, q))):
                if target not in tgt:
                    continue
                row0 = tgt[target]
                for i, row in enumerate(linalg.entries(block)):
                    for j, value in enumerate(row):
                        rows[row0 + i][col0 + j] = value
        return linalg.from_rows(rows, self.total_dim(k + 1), self.total_dim(k))


def direct_sum(*parts: Bicomplex) -> Bicomplex:
    """Blockwise direct sum of bicomplexes.

    The bounds of the result cover every part. Conjugation survives only
    when every part carries one. ``n`` is kept when all parts agree on it.
    """
    p_max = max((x.p_max for x in parts), default=0)
    q_max = max((x.q_max for x in parts), default=0)
    grid = [(p, q) for p in range(p_max + 1) for q in range(q_max + 1)]
    dims = {pq: sum(x.dim(*pq) for x in parts) for pq in grid}
    dims = {pq: d for pq, d in dims.items() if d}

    def block_diag(blocks: list[Matrix], nrows: int, ncols: int) -> Matrix:
        rows = [[linalg.QQ_I.zero] * ncols for _ in range(nrows)]
        r0 = c0 = 0
        for block in blocks:
            for i, row in enumerate(linalg.entries(block)):
                for j, value in enumerate(row):
                    rows[r0 + i][c0 + j] = value
            r0 += block.shape[0]
            c0 += block.shape[1]
        return linalg.from_rows(rows, nrows, ncols)

    def collect(getter, target) -> dict[Bidegree, Matrix]:
        out = {}
        for p, q in grid:
            tp, tq = target(p, q)
            if not dims.get((p, q)) or not dims.get((tp, tq)):
                continue
            block = block_diag([getter(x, p, q) for x in parts], dims[(tp, tq)], dims[(p, q)])
            if not linalg.is_zero(block):
                out[(p, q)] = block
        return out

    conj_blocks = None
    if parts and all(x.has_conjugation for x in parts):
        conj_blocks = collect(lambda x, p, q: x.conj(p, q), lambda p, q: (q, p))
    ns = {x.n for x in parts}
    return Bicomplex(
        p_max=p_max,
        q_max=q_max,
        dims=dims,
        del_blocks=collect(lambda x, p, q: x.partial(p, q), lambda p, q: (p + 1, q)),
        delbar_blocks=collect(lambda x, p, q: x.partial_bar(p, q), lambda p, q: (p, q + 1)),
        conj_blocks=conj_blocks,
        n=ns.pop() if len(ns) == 1 else None,
    )


def _check_shapes(x: Bicomplex, name: str, blocks: Mapping[Bidegree, Matrix] | None, target) -> list[str]:
    violations = []
    for (p, q), block in (blocks or {}).items():
        if not (0 <= p <= x.p_max and 0 <= q <= x.q_max):
            violations.append(f"{name} block at ({p},{q}) lies outside the bounds")
            continue
        expected = (x.dim(*target(p, q)), x.dim(p, q))
        if block.shape != expected:
            violations.append(f"{name} at ({p},{q}) has shape {block.shape}, expected {expected}")
    return violations


def validate(x: Bicomplex) -> list[str]:
    """Check the double complex axioms.

    Returns
    -------
    list of str
        One message per failed identity, naming the bidegree. The list
        is empty exactly when ``x`` is a valid (conjugation-equipped)
        double complex.

    """
    violations = []
    for (p, q), d in x.dims.items():
        if d < 0:
            violations.append(f"negative dimension at ({p},{q})")
        elif d and not (0 <= p <= x.p_max and 0 <= q <= x.q_max):
            violations.append(f"nonzero dimension at ({p},{q}) outside the bounds")
    violations += _check_shapes(x, "∂", x.del_blocks, lambda p, q: (p + 1, q))
    violations += _check_shapes(x, "∂̄", x.delbar_blocks, lambda p, q: (p, q + 1))
    violations += _check_shapes(x, "conj", x.conj_blocks, lambda p, q: (q, p))
    violations += _check_shapes(x, "gram", x.gram, lambda p, q: (p, q))
    if violations:
        # the identities below assume consistent shapes
        return violations

    for (p, q), block in sorted(x.gram.items()):
        violations.extend(f"gram at ({p},{q}): {msg}" for msg in linalg.check_metric(block))

    for p, q in x.bidegrees():
        if not linalg.is_zero(linalg.matmul(x.partial(p + 1, q), x.partial(p, q))):
            violations.append(f"∂∂ ≠ 0 at ({p},{q})")
        if not linalg.is_zero(linalg.matmul(x.partial_bar(p, q + 1), x.partial_bar(p, q))):
            violations.append(f"∂̄∂̄ ≠ 0 at ({p},{q})")
        anticommutator = linalg.matadd(
            linalg.matmul(x.partial(p, q + 1), x.partial_bar(p, q)),
            linalg.matmul(x.partial_bar(p + 1, q), x.partial(p, q)),
        )
        if not linalg.is_zero(anticommutator):
            violations.append(f"∂∂̄+∂̄∂ ≠ 0 at ({p},{q})")

    if x.has_conjugation:
        violations += _validate_conjugation(x)
    if x.n is not None:
        for p, q in x.bidegrees():
            if (p > x.n or q > x.n) and x.dim(p, q):
                violations.append(f"dimension at ({p},{q}) must vanish for n = {x.n}")
    if violations:
        logger.debug("Bicomplex failed validation with %d violations", len(violations))
    return violations


def _validate_conjugation(x: Bicomplex) -> list[str]:
    violations = []
    for p, q in x.bidegrees():
        if x.dim(p, q) != x.dim(q, p):
            violations.append(f"conjugation needs dim V^{{{p},{q}}} = dim V^{{{q},{p}}}")
    if violations:
        return violations
    for p, q in x.bidegrees():
        involution = linalg.matmul(x.conj(q, p), linalg.conjugate(x.conj(p, q)))
        if not linalg.matrices_equal(involution, linalg.identity(x.dim(p, q))):
            violations.append(f"σ² ≠ id at ({p},{q})")
        lhs = linalg.matmul(x.conj(p + 1, q), linalg.conjugate(x.partial(p, q)))
        rhs = linalg.matmul(x.partial_bar(q, p), x.conj(p, q))
        if not linalg.matrices_equal(lhs, rhs):
            violations.append(f"σ∂ ≠ ∂̄σ at ({p},{q})")
    return violations
