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
"""XArray extensions via accessor objects.

The functionality in this module can be accessed via the ``.coho`` accessor
on any cohomology report produced by :func:`bottchern.report.analyze`.

A report stores dimensions only. Every verdict below is recomputed from
those dimensions, so a report loaded from disk can be checked again
without the bicomplex it came from. The exception is the ∂∂̄-Lemma itself,
which needs the complex and is stored in the ``verdict`` variable.

"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import xarray as xr

from .coords import shifted, total_degrees
from .exceptions import NoConjugationError, NotExteriorModelError

logger = logging.getLogger(__name__)


def _flip(grid: np.ndarray, n: int) -> np.ndarray:
    """``out[p, q] = grid[n - q, n - p]`` on the ``(n + 1, n + 1)`` corner."""
    return grid[: n + 1, : n + 1][::-1, ::-1].T


def _padded(values: np.ndarray, size: int) -> np.ndarray:
    """Zero-extend every axis of ``values`` to at least ``size`` entries."""
    return np.pad(values, [(0, max(0, size - length)) for length in values.shape])


@dataclass(frozen=True)
class InequalityVerdicts:
    """Outcome of the cohomology inequalities, with the degrees where they are strict.

    ``pointwise`` is only asserted (``pointwise_asserted``) for reports
    of complexes with a conjugation. Without one it is reported as found.
    """

    frolicher: bool
    frolicher_strict: list[int] = field(default_factory=list)
    total: bool = True
    total_strict: list[int] = field(default_factory=list)
    pointwise: bool = True
    pointwise_strict: list[tuple[int, int]] = field(default_factory=list)
    pointwise_asserted: bool = False


@xr.register_dataset_accessor("coho")
class CohomologyReportAccessor:
    """Verdicts and renderings of a cohomology report."""

    def __init__(self, xarray_obj: xr.Dataset) -> None:
        """Set handle for xarray object."""
        self._obj = xarray_obj

    # -- raw data --------------------------------------------------------------

    def hpq(self, flavor: str) -> np.ndarray:
        """Bidegree grid of one cohomology flavor."""
        return self._obj["hpq"].sel(flavor=flavor).values

    def hk(self, flavor: str) -> np.ndarray:
        return self._obj["hk"].sel(flavor=flavor).values

    def varouchas(self, space: str) -> np.ndarray:
        return self._obj["varouchas"].sel(space=space).values

    def varouchas_total(self, space: str) -> np.ndarray:
        return total_degrees(self.varouchas(space))

    @property
    def betti(self) -> np.ndarray:
        return self._obj["betti"].values

    @property
    def has_conjugation(self) -> bool:
        return bool(self._obj.attrs.get("has_conjugation", 0))

    @property
    def n(self) -> int | None:
        return self._obj.attrs.get("n")

    @property
    def max_degree(self) -> int:
        return int(self._obj.attrs["p_max"]) + int(self._obj.attrs["q_max"])

    @property
    def verdicts(self) -> dict[str, bool]:
        """Stored verdicts by name."""
        if "verdict" not in self._obj:
            return {}
        return {str(name): bool(value) for name, value in zip(self._obj["check"].values, self._obj["verdict"].values)}

    def _require_conjugation(self) -> None:
        if not self.has_conjugation:
            raise NoConjugationError("no conjugation structure")

    def _require_n(self) -> int:
        if self.n is None:
            raise NotExteriorModelError("duality checks need the complex dimension n")
        return int(self.n)

    # -- exact sequences -------------------------------------------------------

    def check_sequences(self) -> bool:
        """Alternating sums of both Varouchas exact sequences vanish at every bidegree."""
        a, b, c, d, e, f = (self.varouchas(s) for s in "abcdef")
        dbar, bc, aeppli = self.hpq("dolbeault"), self.hpq("bc"), self.hpq("aeppli")
        first = a - b + dbar - aeppli + c
        second = d - bc + dbar - e + f
        return bool((first == 0).all() and (second == 0).all())

    def check_structural_equalities(self) -> bool:
        """``c^{p,q} = d^{p,q+1}`` and ``e^{p,q} = b^{p+1,q}``."""
        c_ok = (self.varouchas("c") == shifted(self.varouchas("d"), 0, 1)).all()
        e_ok = (self.varouchas("e") == shifted(self.varouchas("b"), 1, 0)).all()
        return bool(c_ok and e_ok)

    def check_conjugation_symmetries(self) -> bool:
        """Symmetries forced by a conjugation.

        Raises
        ------
        NoConjugationError
            If the report is of a complex without conjugation.

        """
        self._require_conjugation()
        v = self.varouchas
        pairs = [
            (v("a"), v("a").T),
            (v("f"), v("f").T),
            (v("d"), v("b").T),
            (v("e"), v("c").T),
            (self.hpq("bc"), self.hpq("bc").T),
            (self.hpq("aeppli"), self.hpq("aeppli").T),
            (self.hpq("dolbeault"), self.hpq("del").T),
        ]
        return all(bool((lhs == rhs).all()) for lhs, rhs in pairs)

    def ek_recursion_check(self) -> bool:
        """Express ``e^k`` through cohomology numbers and lower Varouchas numbers."""
        size = len(self.betti)

        def at(values: np.ndarray, k: int) -> int:
            return int(values[k]) if 0 <= k < size else 0

        dbar, bc, aeppli = self.hk("dolbeault"), self.hk("bc"), self.hk("aeppli")
        a, c, e, f = (self.varouchas_total(s) for s in "acef")
        for k in range(size):
            first = at(dbar, k) - at(bc, k) + at(f, k) + at(c, k - 1)
            second = (
                at(dbar, k)
                - at(bc, k)
                - (at(dbar, k - 1) - at(aeppli, k - 1))
                + at(f, k)
                - at(a, k - 1)
                + at(e, k - 2)
            )
            if not at(e, k) == first == second:
                return False
        return True

    def remark_identity_check(self) -> bool:
        """``h^k_BC + h^k_A = 2 h^k_∂̄ + a^k + f^k`` and its per-bidegree form.

        Raises
        ------
        NoConjugationError
            If the report is of a complex without conjugation.

        """
        self._require_conjugation()
        totals = self.hk("bc") + self.hk("aeppli") == 2 * self.hk("dolbeault") + self.varouchas_total(
            "a"
        ) + self.varouchas_total("f")
        pointwise = self.hpq("bc") + self.hpq("aeppli").T == (
            self.hpq("dolbeault") + self.hpq("del") + self.varouchas("f") + self.varouchas("a")
        )
        return bool(totals.all() and pointwise.all())

    # -- inequalities ----------------------------------------------------------

    def inequality_verdicts(self) -> InequalityVerdicts:
        """Frölicher inequality, the Bott-Chern plus Aeppli inequality and its pointwise form."""
        dbar = self.hk("dolbeault")
        total = self.hk("bc") + self.hk("aeppli")
        pointwise_lhs = self.hpq("bc") + self.hpq("aeppli")
        pointwise_rhs = self.hpq("dolbeault") + self.hpq("del")
        return InequalityVerdicts(
            frolicher=bool((dbar >= self.betti).all()),
            frolicher_strict=[int(k) for k in np.flatnonzero(dbar > self.betti)],
            total=bool((total >= 2 * self.betti).all()),
            total_strict=[int(k) for k in np.flatnonzero(total > 2 * self.betti)],
            pointwise=bool((pointwise_lhs >= pointwise_rhs).all()),
            pointwise_strict=[(int(p), int(q)) for p, q in zip(*np.nonzero(pointwise_lhs > pointwise_rhs))],
            pointwise_asserted=self.has_conjugation,
        )

    def equality_characterization(self) -> bool:
        """``h^k_BC + h^k_A = 2 b_k`` in every degree."""
        return bool((self.hk("bc") + self.hk("aeppli") == 2 * self.betti).all())

    def claim3_squeeze_check(self) -> bool:
        """Equality plus ``h^k_BC >= b_k`` squeezes Bott-Chern and Aeppli numbers to the Betti numbers."""
        n = self._require_n()
        bc, aeppli, betti = self.hk("bc"), self.hk("aeppli"), self.betti
        if not (self.equality_characterization() and (bc >= betti).all()):
            return True
        bc, aeppli, betti = (_padded(values, 2 * n + 1) for values in (bc, aeppli, betti))
        k = np.arange(2 * n + 1)
        dual = bool((bc[k] == aeppli[2 * n - k]).all())
        return dual and bool((bc == betti).all() and (aeppli == betti).all())

    def euler_check(self) -> bool:
        """Euler characteristics of de Rham, Dolbeault and the complex itself agree."""
        signs = (-1) ** np.arange(len(self.betti))
        dims = self._obj["dims"].values
        p, q = np.indices(dims.shape)
        chi = int(((-1) ** (p + q) * dims).sum())
        return int((signs * self.betti).sum()) == int((signs * self.hk("dolbeault")).sum()) == chi

    # -- spectral sequence -----------------------------------------------------

    def e1_equals_einf(self) -> bool:
        """Degeneration at the first page, decided by ``h^k_∂̄ = b_k``."""
        return bool((self.hk("dolbeault") == self.betti).all())

    def spectral_contract_check(self) -> bool:
        """First page equals Dolbeault cohomology and the limit page adds up to the Betti numbers."""
        spectral = self._obj["spectral"]
        first = spectral.sel(r=spectral["r"].values[0]).values
        if "spectral_limit" in self._obj:
            limit = self._obj["spectral_limit"].values
        else:
            limit = spectral.sel(r=spectral["r"].values[-1]).values
        return bool((first == self.hpq("dolbeault")).all() and (total_degrees(limit) == self.betti).all())

    # -- duality ---------------------------------------------------------------

    def duality_check(self) -> bool:
        """Serre and Hodge-star dualities of an ``n``-dimensional model.

        Raises
        ------
        NotExteriorModelError
            If the report carries no complex dimension ``n``.

        """
        n = self._require_n()
        k = np.arange(2 * n + 1)
        corner = slice(0, n + 1)

        def grid(values: np.ndarray) -> np.ndarray:
            return _padded(values, n + 1)

        def degrees(values: np.ndarray) -> np.ndarray:
            return _padded(values, 2 * n + 1)

        v = self.varouchas
        betti, dbar_k = degrees(self.betti), degrees(self.hk("dolbeault"))
        dbar = grid(self.hpq("dolbeault"))
        pairs = [
            (grid(self.hpq("bc"))[corner, corner], _flip(grid(self.hpq("aeppli")), n)),
            (betti[k], betti[2 * n - k]),
            (dbar_k[k], dbar_k[2 * n - k]),
            (degrees(self.hk("bc"))[k], degrees(self.hk("aeppli"))[2 * n - k]),
            (dbar[corner, corner], dbar[corner, corner][::-1, ::-1]),
            (grid(v("a"))[corner, corner], _flip(grid(v("f")), n)),
            (grid(v("b"))[corner, corner], _flip(grid(v("c")), n)),
            (grid(v("d"))[corner, corner], _flip(grid(v("e")), n)),
        ]
        return all(bool((lhs == rhs).all()) for lhs, rhs in pairs)

    # -- all verdicts ----------------------------------------------------------

    def compute_verdicts(self, checks: Iterable[str], **extra: bool) -> dict[str, bool]:
        """Evaluate every verdict belonging to the requested check groups.

        ``extra`` holds verdicts that need the bicomplex itself (for
        example ``lemma_direct``); they are merged in as given.
        """
        checks = set(checks)
        verdicts: dict[str, bool] = {}
        conj = self.has_conjugation
        if "sequences" in checks:
            verdicts["sequences_ok"] = self.check_sequences()
            verdicts["structural_ok"] = self.check_structural_equalities()
            verdicts["ek_recursion"] = self.ek_recursion_check()
            if conj:
                verdicts["symmetry_ok"] = self.check_conjugation_symmetries()
                verdicts["remark_identity"] = self.remark_identity_check()
        if "inequalities" in checks:
            ineq = self.inequality_verdicts()
            verdicts["frolicher_inequality"] = ineq.frolicher
            verdicts["frolicher_equality_all_k"] = not ineq.frolicher_strict and ineq.frolicher
            verdicts["bc_inequality_all_k"] = ineq.total
            if conj:
                verdicts["bc_inequality_pointwise"] = ineq.pointwise
            elif not ineq.pointwise:
                logger.info("Pointwise inequality fails; not asserted without a conjugation")
            verdicts["bc_inequality_pointwise_strict_somewhere"] = bool(ineq.pointwise_strict)
            verdicts["euler_ok"] = self.euler_check()
            if self.n is not None:
                verdicts["claim3_squeeze"] = self.claim3_squeeze_check()
        if "inequalities" in checks or "lemma" in checks:
            verdicts["bc_equality_all_k"] = self.equality_characterization()
        if "lemma" in checks and "map_rank" in self._obj:
            ranks = self._obj["map_rank"].sel(map="bc->de_rham")
            sources = self._obj["map_source_dim"].sel(map="bc->de_rham")
            verdicts["bc_to_de_rham_injective"] = bool((ranks == sources).all())
        if "spectral" in checks:
            verdicts["e1_equals_einf"] = self.e1_equals_einf()
            if "spectral" in self._obj:
                verdicts["spectral_contract"] = self.spectral_contract_check()
        if "hodge" in checks and self.n is not None and conj:
            verdicts["duality_ok"] = self.duality_check()
        verdicts.update({name: bool(value) for name, value in extra.items()})
        logger.debug("Verdicts: %s", verdicts)
        return verdicts

    # -- rendering -------------------------------------------------------------

    def to_table(self) -> str:
        """Render the report as per-degree ``∂̄ BC A`` groups with a Betti footer.

        Exterior model reports leave out the degrees ``0`` and ``2n``, where
        every cohomology is one dimensional.
        """
        first, last = (1, self.max_degree - 1) if self._obj.attrs.get("is_model") else (0, self.max_degree)
        degrees = range(first, last + 1)
        dbar, bc, aeppli = self.hk("dolbeault"), self.hk("bc"), self.hk("aeppli")
        lines = [
            f"{self._obj.attrs.get('name', 'bicomplex')} (h_dbar h_BC h_A for k = {first}..{last})",
            " | ".join(f"{dbar[k]} {bc[k]} {aeppli[k]}" for k in degrees),
            "b: " + " ".join(str(self.betti[k]) for k in degrees),
        ]
        for name, value in self.verdicts.items():
            lines.append(f"{name}: {'true' if value else 'false'}")
        return "\n".join(lines)

    def to_structured(self) -> dict[str, Any]:
        """Plain python dictionary with every variable, coordinate and verdict of the report."""
        document = self._obj.to_dict()
        document["verdicts"] = self.verdicts
        return document
