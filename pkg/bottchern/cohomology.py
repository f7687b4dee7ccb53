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
"""Cohomology dimensions of a double complex.

Every quantity here is an exact integer obtained from the subspace calculus
in :mod:`bottchern.linalg`: Dolbeault and conjugate Dolbeault, Bott-Chern,
Aeppli and de Rham cohomology, the six auxiliary Varouchas spaces, the
natural maps between the cohomologies, the ∂∂̄-Lemma and the pages of the
column-filtration spectral sequence.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

from . import linalg
from .bicomplex import Bicomplex, Bidegree
from .linalg import Subspace

logger = logging.getLogger(__name__)

FLAVORS = ("dolbeault", "del", "bc", "aeppli")
VAROUCHAS_SPACES = ("a", "b", "c", "d", "e", "f")
NATURAL_MAPS = (
    "bc->dolbeault",
    "bc->del",
    "bc->de_rham",
    "dolbeault->aeppli",
    "del->aeppli",
    "de_rham->aeppli",
)

# -- the basic subspaces of V^{p,q} -------------------------------------------


@lru_cache(maxsize=4096)
def ker_del(x: Bicomplex, p: int, q: int) -> Subspace:
    return linalg.kernel_basis(x.partial(p, q))


@lru_cache(maxsize=4096)
def ker_delbar(x: Bicomplex, p: int, q: int) -> Subspace:
    return linalg.kernel_basis(x.partial_bar(p, q))


@lru_cache(maxsize=4096)
def ker_ddbar(x: Bicomplex, p: int, q: int) -> Subspace:
    return linalg.kernel_basis(x.ddbar(p, q))


@lru_cache(maxsize=4096)
def im_del(x: Bicomplex, p: int, q: int) -> Subspace:
    """Image of ``∂_{p-1,q}`` inside ``V^{p,q}``."""
    return linalg.image_basis(x.partial(p - 1, q))


@lru_cache(maxsize=4096)
def im_delbar(x: Bicomplex, p: int, q: int) -> Subspace:
    """Image of ``∂̄_{p,q-1}`` inside ``V^{p,q}``."""
    return linalg.image_basis(x.partial_bar(p, q - 1))


@lru_cache(maxsize=4096)
def im_ddbar(x: Bicomplex, p: int, q: int) -> Subspace:
    """Image of ``∂∂̄`` from ``V^{p-1,q-1}`` inside ``V^{p,q}``."""
    return linalg.image_basis(x.ddbar(p - 1, q - 1))


@lru_cache(maxsize=4096)
def closed(x: Bicomplex, p: int, q: int) -> Subspace:
    """``ker ∂ ∩ ker ∂̄`` at ``(p, q)``."""
    return linalg.subspace_intersect(ker_del(x, p, q), ker_delbar(x, p, q))


# -- dimensions ---------------------------------------------------------------


def h_line(x: Bicomplex, flavor: Literal["dolbeault", "del"], p: int, q: int) -> int:
    """Dimension of Dolbeault (``∂̄``) or conjugate Dolbeault (``∂``) cohomology at ``(p, q)``.

    Raises
    ------
    ValueError
        For a flavor other than ``"dolbeault"`` or ``"del"``.
    ContainmentError
        If ``x`` is not a complex.

    """
    if flavor == "dolbeault":
        return linalg.quotient_dim(ker_delbar(x, p, q), im_delbar(x, p, q))
    if flavor == "del":
        return linalg.quotient_dim(ker_del(x, p, q), im_del(x, p, q))
    raise ValueError(f"Unknown line cohomology flavor {flavor!r}")


def h_bc(x: Bicomplex, p: int, q: int) -> int:
    """Dimension of Bott-Chern cohomology ``(ker ∂ ∩ ker ∂̄) / im ∂∂̄``."""
    return linalg.quotient_dim(closed(x, p, q), im_ddbar(x, p, q))


def h_aeppli(x: Bicomplex, p: int, q: int) -> int:
    """Dimension of Aeppli cohomology ``ker ∂∂̄ / (im ∂ + im ∂̄)``."""
    return linalg.quotient_dim(ker_ddbar(x, p, q), linalg.subspace_sum(im_del(x, p, q), im_delbar(x, p, q)))


def h_pq(x: Bicomplex, flavor: str, p: int, q: int) -> int:
    """Dispatch on any of the four bigraded :data:`FLAVORS`."""
    if flavor == "bc":
        return h_bc(x, p, q)
    if flavor == "aeppli":
        return h_aeppli(x, p, q)
    return h_line(x, flavor, p, q)


@lru_cache(maxsize=1024)
def _total_rank(x: Bicomplex, k: int) -> int:
    if k < 0:
        return 0
    return linalg.rref_rank(x.total_differential(k))[0]


def betti(x: Bicomplex, k: int) -> int:
    """Dimension of the de Rham cohomology of ``d = ∂ + ∂̄`` in total degree ``k``."""
    return x.total_dim(k) - _total_rank(x, k) - _total_rank(x, k - 1)


# -- Varouchas spaces ---------------------------------------------------------


@dataclass(frozen=True)
class VarouchasDims:
    """Dimensions of the six auxiliary spaces ``A`` to ``F`` per bidegree."""

    a: dict[Bidegree, int] = field(default_factory=dict)
    b: dict[Bidegree, int] = field(default_factory=dict)
    c: dict[Bidegree, int] = field(default_factory=dict)
    d: dict[Bidegree, int] = field(default_factory=dict)
    e: dict[Bidegree, int] = field(default_factory=dict)
    f: dict[Bidegree, int] = field(default_factory=dict)

    def at(self, space: str, p: int, q: int) -> int:
        return getattr(self, space).get((p, q), 0)

    def total(self, space: str, k: int) -> int:
        """Sum over the bidegrees of total degree ``k``; 0 for negative ``k``."""
        return sum(v for (p, q), v in getattr(self, space).items() if p + q == k)


def varouchas_dims(x: Bicomplex) -> VarouchasDims:
    """Compute the six Varouchas dimension tables.

    Quotients by a sum that is not a subspace of the numerator are read as
    quotients by its intersection with the numerator.
    """
    tables: dict[str, dict[Bidegree, int]] = {space: {} for space in VAROUCHAS_SPACES}
    intersect, plus, quotient = linalg.subspace_intersect, linalg.subspace_sum, linalg.quotient_dim
    for p, q in x.bidegrees():
        ddb = im_ddbar(x, p, q)
        kdd = ker_ddbar(x, p, q)
        tables["a"][(p, q)] = quotient(intersect(im_delbar(x, p, q), im_del(x, p, q)), ddb)
        tables["b"][(p, q)] = quotient(intersect(ker_delbar(x, p, q), im_del(x, p, q)), ddb)
        tables["c"][(p, q)] = quotient(kdd, intersect(plus(ker_delbar(x, p, q), im_del(x, p, q)), kdd))
        tables["d"][(p, q)] = quotient(intersect(im_delbar(x, p, q), ker_del(x, p, q)), ddb)
        tables["e"][(p, q)] = quotient(kdd, intersect(plus(ker_del(x, p, q), im_delbar(x, p, q)), kdd))
        tables["f"][(p, q)] = quotient(kdd, intersect(plus(ker_delbar(x, p, q), ker_del(x, p, q)), kdd))
    return VarouchasDims(**tables)


# -- ∂∂̄-Lemma -----------------------------------------------------------------


def lemma_failures(x: Bicomplex) -> list[int]:
    """Total degrees ``k`` where a ``∂``- and ``∂̄``-closed, ``d``-exact element of ``Tot^k`` is not ``∂∂̄``-exact.

    Elements of mixed type are included, so an empty result is the
    injectivity of ``⊕ H^{p,q}_BC -> H^k_dR`` in every degree.
    """
    failures = []
    for k in range(1, x.max_degree + 1):
        exact = linalg.image_basis(x.total_differential(k - 1))
        closed_exact = linalg.subspace_intersect(_graded(x, k, closed), exact)
        if not closed_exact <= _graded(x, k, im_ddbar):
            failures.append(k)
    return failures


def lemma_direct(x: Bicomplex) -> bool:
    """Whether ``x`` satisfies the ∂∂̄-Lemma, tested degree by degree in the total complex."""
    failures = lemma_failures(x)
    if failures:
        logger.debug("∂∂̄-Lemma fails in total degrees %s", failures)
    return not failures


# -- natural maps -------------------------------------------------------------


@dataclass(frozen=True)
class NaturalMapRank:
    """Rank of a map between cohomologies induced by the identity in total degree ``k``."""

    name: str
    k: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def _graded(x: Bicomplex, k: int, builder) -> Subspace:
    """Direct sum over ``p + q = k`` of per-bidegree subspaces, inside ``Tot^k``."""
    total = x.total_dim(k)
    return linalg.sum_all(
        (builder(x, p, q).embed(offset, total) for (p, q), offset in x.total_offsets(k).items()), total
    )


def _cohomology_pair(x: Bicomplex, flavor: str, k: int) -> tuple[Subspace, Subspace]:
    """Numerator and denominator of a cohomology in total degree ``k``, inside ``Tot^k``."""
    if flavor == "de_rham":
        numerator = linalg.kernel_basis(x.total_differential(k))
        if k == 0:
            return numerator, linalg.Subspace.zero(x.total_dim(k))
        return numerator, linalg.image_basis(x.total_differential(k - 1))
    builders = {
        "bc": (closed, im_ddbar),
        "dolbeault": (ker_delbar, im_delbar),
        "del": (ker_del, im_del),
        "aeppli": (ker_ddbar, lambda y, p, q: linalg.subspace_sum(im_del(y, p, q), im_delbar(y, p, q))),
    }
    num, den = builders[flavor]
    return _graded(x, k, num), _graded(x, k, den)


def natural_map_ranks(x: Bicomplex) -> list[NaturalMapRank]:
    """Ranks of the six identity-induced maps of the cohomology diagram, per total degree.

    The map between ``N_s / D_s`` and ``N_t / D_t`` induced by the inclusion
    ``N_s ⊆ N_t`` has rank ``dim(N_s + D_t) - dim D_t``.
    """
    results = []
    for k in range(x.max_degree + 1):
        pairs = {flavor: _cohomology_pair(x, flavor, k) for flavor in ("bc", "dolbeault", "del", "de_rham", "aeppli")}
        for name in NATURAL_MAPS:
            src, tgt = name.split("->")
            n_s, d_s = pairs[src]
            n_t, d_t = pairs[tgt]
            rank = linalg.subspace_sum(n_s, d_t).dim - d_t.dim
            results.append(NaturalMapRank(name, k, rank, n_s.dim - d_s.dim, n_t.dim - d_t.dim))
    return results


def claim2_surjectivity_check(x: Bicomplex, v: VarouchasDims | None = None) -> bool:
    """Check that Bott-Chern classes of pure type span de Rham cohomology wherever ``a^{k+1} = 0``."""
    v = varouchas_dims(x) if v is None else v
    for result in natural_map_ranks(x):
        if result.name == "bc->de_rham" and v.total("a", result.k + 1) == 0 and not result.surjective:
            logger.debug("Bott-Chern to de Rham is not surjective in degree %d", result.k)
            return False
    return True


# -- spectral sequence --------------------------------------------------------


def _filtration_columns(x: Bicomplex, k: int, p: int) -> list[int]:
    """Coordinates of ``F^p Tot^k``, the blocks with first degree at least ``p``."""
    cols = []
    for (pp, qq), offset in x.total_offsets(k).items():
        if pp >= p:
            cols.extend(range(offset, offset + x.dim(pp, qq)))
    return cols


def _cycles(x: Bicomplex, k: int, p: int, r: int) -> Subspace:
    """``Z_r^p`` in ``Tot^k``: vectors of ``F^p`` whose differential lies in ``F^{p+r}``."""
    total = x.total_dim(k)
    if k < 0:
        return linalg.Subspace.zero(0)
    cols = _filtration_columns(x, k, max(p, 0))
    above = set(_filtration_columns(x, k + 1, max(p + r, 0)))
    rows = [i for i in range(x.total_dim(k + 1)) if i not in above]
    restricted = linalg.submatrix(x.total_differential(k), rows, cols)
    vectors = []
    for w in linalg.kernel_basis(restricted).vectors():
        v = [linalg.QQ_I.zero] * total
        for c, value in zip(cols, w):
            v[c] = value
        vectors.append(v)
    return linalg.Subspace.span(vectors, total)


def _page_dim(x: Bicomplex, r: int, p: int, q: int) -> int:
    k = p + q
    numerator = _cycles(x, k, p, r)
    boundaries = _cycles(x, k - 1, p - r + 1, r - 1)
    if k > 0:
        exact = linalg.apply(x.total_differential(k - 1), boundaries)
    else:
        exact = linalg.Subspace.zero(x.total_dim(k))
    denominator = linalg.subspace_sum(_cycles(x, k, p + 1, r - 1), exact)
    return linalg.quotient_dim(numerator, denominator)


def spectral_page_dims(x: Bicomplex, r_max: int | None = None) -> dict[tuple[int, int, int], int]:
    """Dimensions ``E_r^{p,q}`` of the spectral sequence of the column filtration.

    The first page is Dolbeault cohomology. Pages are computed by the
    ``Z_r / (Z_{r-1} + d Z_{r-1})`` formula until they stabilize, which
    happens once ``r`` exceeds ``p_max``; later pages are copies.

    Parameters
    ----------
    x
        Valid bicomplex.
    r_max
        Last page to report. Defaults to ``p_max + q_max + 2``.

    """
    r_max = x.p_max + x.q_max + 2 if r_max is None else r_max
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    pages: dict[tuple[int, int, int], int] = {}
    last_computed = min(r_max, x.p_max + 1)
    for r in range(1, last_computed + 1):
        logger.debug("Computing page E_%d", r)
        for p, q in x.bidegrees():
            pages[(r, p, q)] = _page_dim(x, r, p, q)
    for r in range(last_computed + 1, r_max + 1):
        for p, q in x.bidegrees():
            pages[(r, p, q)] = pages[(last_computed, p, q)]
    return pages
