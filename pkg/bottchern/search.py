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
"""Randomized invariant checks and the search for special double complexes.

:func:`run_random` builds random valid bicomplexes (sums of dots, squares
and zigzags hidden behind a random change of basis) and runs the invariant
suite on each. :func:`run_search` enumerates assemblies of small pieces
until one satisfies the requested properties.

Both are deterministic for a given seed.

"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Any

import numpy as np

from . import cohomology, linalg
from .bicomplex import Bicomplex, Bidegree, validate
from .exceptions import BottChernError
from .fileio import format_bicomplex
from .report import analyze
from .zigzag import STEPS, Piece, dot, is_mirror_symmetric, square, zigzag, zigzag_assemble

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_DEGREE = 1
SEARCH_CONSTRAINTS = ("degenerate_e1", "hodge_symmetric", "lemma_fails")
_NEXT_STEP = {"up": "left", "left": "up", "down": "right", "right": "down"}


@dataclass(frozen=True)
class Failure:
    case: int
    seed: int
    check: str
    message: str = ""


@dataclass
class RandomSummary:
    """Outcome of :func:`run_random`."""

    seed: int
    cases: int
    passed: int = 0
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None

    def summary(self) -> str:
        if self.ok:
            return f"seed {self.seed}: {self.passed}/{self.cases} cases passed"
        first = self.first_failure
        return (
            f"seed {self.seed}: {self.passed}/{self.cases} cases passed; first failure in case {first.case} "
            f"(case seed {first.seed}): {first.check} {first.message}".rstrip()
        )


# -- random pieces ------------------------------------------------------------


def random_gaussian(rng: random.Random, bound: int = 2) -> linalg.GaussianRational:
    return linalg.gaussian(rng.randint(-bound, bound), rng.randint(-1, 1))


def random_piece(rng: random.Random, max_degree: int) -> Piece:
    """Random dot, square or zigzag inside ``[0, max_degree]^2``."""
    kind = rng.choice(("dot", "square", "zigzag")) if max_degree > 0 else "dot"
    if kind == "dot":
        return dot(rng.randint(0, max_degree), rng.randint(0, max_degree))
    if kind == "square":
        return square(rng.randint(0, max_degree - 1), rng.randint(0, max_degree - 1))
    start = (rng.randint(0, max_degree), rng.randint(0, max_degree))
    step = rng.choice(sorted(STEPS))
    word: list[str] = []
    p, q = start
    for _ in range(rng.randint(1, 2 * max_degree)):
        dp, dq, _, _ = STEPS[step]
        if not (0 <= p + dp <= max_degree and 0 <= q + dq <= max_degree):
            break
        word.append(step)
        p, q = p + dp, q + dq
        step = _NEXT_STEP[step]
    return zigzag(start, word)


def random_unit_triangular_product(rng: random.Random, size: int) -> linalg.Matrix:
    """Invertible ``L U`` with unit-triangular factors and small Gaussian integer entries."""
    lower = [[linalg.QQ_I.one if i == j else (random_gaussian(rng) if i > j else 0) for j in range(size)] for i in range(size)]
    upper = [[linalg.QQ_I.one if i == j else (random_gaussian(rng) if i < j else 0) for j in range(size)] for i in range(size)]
    return linalg.matmul(linalg.from_rows(lower, size, size), linalg.from_rows(upper, size, size))


def change_basis(x: Bicomplex, rng: random.Random) -> Bicomplex:
    """Conjugate every block by a random invertible matrix per bidegree.

    Differentials become ``P ∂ P^{-1}`` and the conjugation becomes
    ``P_{q,p} C conj(P_{p,q}^{-1})``, so the result is isomorphic to ``x``.
    """
    change = {pq: random_unit_triangular_product(rng, x.dim(*pq)) for pq in x.bidegrees()}
    inverse = {pq: linalg.inverse(m) for pq, m in change.items()}

    def moved(p: int, q: int, block: linalg.Matrix, target: Bidegree) -> linalg.Matrix:
        return linalg.matmul(change[target], block, inverse[(p, q)])

    conj_blocks = None
    if x.has_conjugation:
        conj_blocks = {
            (p, q): linalg.matmul(change[(q, p)], x.conj(p, q), linalg.conjugate(inverse[(p, q)]))
            for p, q in x.bidegrees()
            if x.dim(p, q)
        }
    return Bicomplex(
        p_max=x.p_max,
        q_max=x.q_max,
        dims=dict(x.dims),
        del_blocks={(p, q): moved(p, q, x.partial(p, q), (p + 1, q)) for p, q in x.bidegrees() if p < x.p_max},
        delbar_blocks={(p, q): moved(p, q, x.partial_bar(p, q), (p, q + 1)) for p, q in x.bidegrees() if q < x.q_max},
        conj_blocks=conj_blocks,
        n=x.n,
    )


def random_assembly(rng: random.Random, max_degree: int, max_pieces: int, conjugation: bool) -> list[Piece]:
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        piece = random_piece(rng, max_degree)
        pieces.append(piece)
        if conjugation and not piece.is_self_mirror:
            pieces.append(piece.transpose())
    return pieces


# -- invariant suite ----------------------------------------------------------


def _linear_algebra_failures(x: Bicomplex) -> list[tuple[str, str]]:
    failures = []
    for k in range(x.max_degree + 1):
        d = x.total_differential(k)
        if linalg.kernel_basis(d).dim + linalg.rref_rank(d)[0] != d.shape[1]:
            failures.append(("rank_nullity", f"degree {k}"))
    for p, q in x.bidegrees():
        u, v = cohomology.ker_delbar(x, p, q), cohomology.im_del(x, p, q)
        total = linalg.subspace_sum(u, v).dim + linalg.subspace_intersect(u, v).dim
        if total != u.dim + v.dim:
            failures.append(("dimension_formula", f"at ({p},{q})"))
    return failures


def invariant_failures(x: Bicomplex, pieces: Iterable[Piece] = ()) -> list[tuple[str, str]]:
    """Run the invariant suite on one bicomplex.

    Parameters
    ----------
    x
        Valid bicomplex to check.
    pieces
        The pieces ``x`` was assembled from, if known. Enables the direct
        sum additivity checks.

    Returns
    -------
    list of (check, message)
        Empty when every invariant holds.

    """
    violations = validate(x)
    if violations:
        return [("validate", violations[0])]
    failures = _linear_algebra_failures(x)
    report = analyze(x, "all")
    verdicts = report.coho.verdicts
    required = [
        "sequences_ok",
        "structural_ok",
        "ek_recursion",
        "frolicher_inequality",
        "euler_ok",
        "spectral_contract",
        "harmonic_ok",
    ]
    if x.has_conjugation:
        required += [
            "symmetry_ok",
            "remark_identity",
            "bc_inequality_pointwise",
            "bc_inequality_all_k",
            "claim2_surjectivity",
        ]
    failures += [(name, "") for name in required if not verdicts.get(name, False)]
    if verdicts["lemma_direct"] and not verdicts["bc_equality_all_k"]:
        failures.append(("lemma_implies_equality", ""))

    pieces = list(pieces)
    if pieces:
        expected_hpq = np.zeros_like(report["hpq"].values)
        expected_betti = np.zeros_like(report["betti"].values)
        for piece in pieces:
            alone = analyze(zigzag_assemble([piece], p_max=x.p_max, q_max=x.q_max), "sequences")
            if piece.kind == "square" and (alone["hpq"].values.any() or alone["betti"].values.any()):
                failures.append(("squares_invisible", piece.label))
            expected_hpq += alone["hpq"].values
            expected_betti += alone["betti"].values
        if not (np.array_equal(expected_hpq, report["hpq"].values) and np.array_equal(expected_betti, report["betti"].values)):
            failures.append(("direct_sum_additivity", ""))
    return failures


def run_random(
    seed: int,
    cases: int = 100,
    max_degree: int = 2,
    max_pieces: int = 3,
    conjugation: bool = True,
) -> RandomSummary:
    """Check the invariant suite on seeded random bicomplexes.

    Parameters
    ----------
    seed
        Master seed. Case ``i`` gets its own seed drawn from it, which is
        reported with any failure.
    cases
        Number of random bicomplexes.
    max_degree
        Pieces are placed inside ``[0, max_degree]^2``.
    max_pieces
        Upper bound on the number of random pieces (mirror partners added
        for conjugation do not count). 0 gives empty complexes.
    conjugation
        Pair every piece with its mirror image and attach a conjugation.

    """
    master = random.Random(seed)
    summary = RandomSummary(seed=seed, cases=cases)
    for case in range(cases):
        case_seed = master.randrange(2**32)
        rng = random.Random(case_seed)
        pieces = random_assembly(rng, max_degree, max_pieces, conjugation)
        try:
            x = zigzag_assemble(pieces, conjugation=conjugation, p_max=max_degree, q_max=max_degree)
            failures = invariant_failures(change_basis(x, rng), pieces)
        except BottChernError as err:
            failures = [(type(err).__name__, str(err))]
        if failures:
            logger.info("Case %d (seed %d) failed: %s", case, case_seed, failures)
            summary.failures.extend(Failure(case, case_seed, check, message) for check, message in failures)
        else:
            summary.passed += 1
    return summary


# -- search -------------------------------------------------------------------


def piece_catalog(max_degree: int) -> list[Piece]:
    """Every dot, square and zigzag that fits inside ``[0, max_degree]^2``, without duplicates."""
    candidates = []
    grid = [(p, q) for p in range(max_degree + 1) for q in range(max_degree + 1)]
    candidates += [dot(p, q) for p, q in grid]
    candidates += [square(p, q) for p, q in grid if p < max_degree and q < max_degree]
    for start in grid:
        for first in sorted(STEPS):
            word: list[str] = []
            p, q = start
            step = first
            while True:
                dp, dq, _, _ = STEPS[step]
                if not (0 <= p + dp <= max_degree and 0 <= q + dq <= max_degree):
                    break
                word.append(step)
                p, q = p + dp, q + dq
                candidates.append(zigzag(start, list(word)))
                step = _NEXT_STEP[step]
    catalog = []
    seen = set()
    for piece in candidates:
        if piece.key() not in seen:
            seen.add(piece.key())
            catalog.append(piece)
    return catalog


@dataclass
class SearchResult:
    """Outcome of :func:`run_search`."""

    found: bool
    tried: int
    pieces: list[Piece] = field(default_factory=list)
    bicomplex: Bicomplex | None = None

    @property
    def document(self) -> dict[str, Any] | None:
        return None if self.bicomplex is None else format_bicomplex(self.bicomplex)

    def summary(self) -> str:
        if not self.found:
            return f"none within budget ({self.tried} assemblies tried)"
        return f"found after {self.tried} assemblies: " + " + ".join(p.label for p in self.pieces)


def satisfies(x: Bicomplex, constraints: Iterable[str]) -> bool:
    """Whether ``x`` has every property named in ``constraints``."""
    for constraint in constraints:
        if constraint == "degenerate_e1":
            ok = all(
                sum(cohomology.h_line(x, "dolbeault", *pq) for pq in x.total_bidegrees(k)) == cohomology.betti(x, k)
                for k in range(x.max_degree + 1)
            )
        elif constraint == "hodge_symmetric":
            ok = all(
                cohomology.h_line(x, "dolbeault", *pq) == cohomology.h_line(x, "del", *pq) for pq in x.bidegrees()
            )
        elif constraint == "lemma_fails":
            ok = not cohomology.lemma_direct(x)
        else:
            raise ValueError(f"unknown search constraint {constraint!r}, expected one of {SEARCH_CONSTRAINTS}")
        if not ok:
            return False
    return True


def run_search(
    constraints: Iterable[str],
    budget: int = 1000,
    seed: int = 0,
    max_degree: int = DEFAULT_SEARCH_DEGREE,
    max_pieces: int = 3,
) -> SearchResult:
    """Look for an assembly of pieces with the requested properties.

    Assemblies are enumerated by increasing number of pieces, over a piece
    catalog shuffled by ``seed``. Mirror-symmetric assemblies carry a
    conjugation.

    Parameters
    ----------
    constraints
        Subset of ``degenerate_e1`` (Frölicher degeneration at the first
        page), ``hodge_symmetric`` (``h^{p,q}_∂̄ = h^{p,q}_∂``) and
        ``lemma_fails`` (the ∂∂̄-Lemma does not hold).
    budget
        Maximum number of assemblies to try.

    """
    constraints = list(constraints)
    if budget <= 0:
        raise ValueError("budget must be positive")
    catalog = piece_catalog(max_degree)
    random.Random(seed).shuffle(catalog)
    tried = 0
    for size in range(1, max_pieces + 1):
        for combo in combinations_with_replacement(catalog, size):
            if tried >= budget:
                return SearchResult(False, tried)
            tried += 1
            pieces = list(combo)
            conjugation = is_mirror_symmetric(pieces)
            x = zigzag_assemble(pieces, conjugation=conjugation, p_max=max_degree, q_max=max_degree)
            logger.debug("Trying %s", [p.label for p in pieces])
            if satisfies(x, constraints):
                return SearchResult(True, tried, pieces, x)
    return SearchResult(False, tried)
