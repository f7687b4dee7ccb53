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
"""Assemble cohomology reports.

:func:`analyze` runs the requested computations on a bicomplex or an
exterior-algebra model and returns an :class:`xarray.Dataset`. Everything
that can be derived from the stored dimensions is derived by the ``.coho``
accessor (see :mod:`bottchern.accessor`), so a report read back from disk
gives the same verdicts as a fresh one.

"""

from __future__ import annotations

import logging
import warnings
from collections.abc import Iterable, Mapping

import numpy as np
import xarray as xr

from . import cohomology, hodge
from .bicomplex import Bicomplex, Bidegree, validate
from .coords import LAPLACIANS, bidegree_array, grid_size, report_coords, total_degrees
from .exceptions import ValidationError
from .lie import ExteriorModel, StructureEquations, compile_model

logger = logging.getLogger(__name__)

CHECKS = ("all", "lemma", "inequalities", "hodge", "spectral", "sequences")


def _expand_checks(checks: Iterable[str] | str) -> set[str]:
    if isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]
    checks = set(checks)
    unknown = checks - set(CHECKS)
    if unknown or not checks:
        raise ValueError(f"checks must be a nonempty subset of {CHECKS}, got {sorted(unknown) or 'nothing'}")
    if "all" in checks:
        return set(CHECKS) - {"all"}
    return checks


def _basis_attr(labels: Mapping[Bidegree, list[str]]) -> str:
    """``"p,q: name name; ..."`` listing the basis of every nonzero bidegree."""
    return "; ".join(f"{p},{q}: {' '.join(names)}" for (p, q), names in sorted(labels.items()) if names)


def _resolve(source: Bicomplex | ExteriorModel | StructureEquations) -> tuple[Bicomplex, ExteriorModel | None]:
    if isinstance(source, StructureEquations):
        source = compile_model(source)
    if isinstance(source, ExteriorModel):
        return source.bicomplex, source
    return source, None


def analyze(
    source: Bicomplex | ExteriorModel | StructureEquations,
    checks: Iterable[str] | str = ("all",),
    r_max: int | None = None,
    name: str | None = None,
) -> xr.Dataset:
    """Compute a cohomology report.

    Parameters
    ----------
    source
        Bicomplex, compiled model or structure equations (compiled on the
        fly).
    checks
        Any of ``"lemma"``, ``"inequalities"``, ``"hodge"``,
        ``"spectral"``, ``"sequences"`` or ``"all"``, as an iterable or a
        comma separated string. Dimensions and Varouchas spaces are always
        computed.
    r_max
        Last spectral sequence page, by default ``p_max + q_max + 2``.
    name
        Name stored in the report attributes. Defaults to the model name.

    Returns
    -------
    xarray.Dataset
        Report with per-bidegree and per-degree counts, natural map ranks
        (``lemma``), harmonic dimensions (``hodge``), spectral pages
        (``spectral``) and a boolean ``verdict`` variable.

    Raises
    ------
    ValidationError
        If the bicomplex violates the double complex axioms.

    """
    wanted = _expand_checks(checks)
    x, model = _resolve(source)
    violations = validate(x)
    if violations:
        raise ValidationError(violations)
    size = grid_size(x)
    if "spectral" in wanted and r_max is None:
        r_max = x.p_max + x.q_max + 2
    coords = report_coords(x, r_max if "spectral" in wanted else None)
    pq_dims = ("p", "q")
    logger.info("Analyzing %s with checks %s", name or (model.name if model else "bicomplex"), sorted(wanted))

    hpq = np.stack(
        [
            bidegree_array({pq: cohomology.h_pq(x, flavor, *pq) for pq in x.bidegrees()}, size)
            for flavor in coords["flavor"]
        ]
    )
    v = cohomology.varouchas_dims(x)
    data_vars = {
        "dims": (pq_dims, bidegree_array({pq: x.dim(*pq) for pq in x.bidegrees()}, size)),
        "hpq": (("flavor", *pq_dims), hpq),
        "hk": (("flavor", "k"), np.stack([total_degrees(grid) for grid in hpq])),
        "betti": (("k",), np.array([cohomology.betti(x, k) for k in coords["k"]], dtype=np.int64)),
        "varouchas": (
            ("space", *pq_dims),
            np.stack([bidegree_array(getattr(v, space), size) for space in coords["space"]]),
        ),
    }

    lemma = None
    if "lemma" in wanted:
        ranks = cohomology.natural_map_ranks(x)
        shape = (len(coords["map"]), len(coords["k"]))
        tables = {key: np.zeros(shape, dtype=np.int64) for key in ("rank", "source_dim", "target_dim")}
        map_index = {name: i for i, name in enumerate(coords["map"])}
        for result in ranks:
            for key, table in tables.items():
                table[map_index[result.name], result.k] = getattr(result, key)
        for key, table in tables.items():
            data_vars[f"map_{key}"] = (("map", "k"), table)
        lemma = cohomology.lemma_direct(x)
    if "spectral" in wanted:
        # no differential leaves or enters a column from page p_max + 1 on
        stable = x.p_max + 1
        pages = cohomology.spectral_page_dims(x, max(r_max, stable))
        spectral = np.zeros((r_max, size + 1, size + 1), dtype=np.int64)
        limit = np.zeros((size + 1, size + 1), dtype=np.int64)
        for (r, p, q), value in pages.items():
            if r <= r_max:
                spectral[r - 1, p, q] = value
            if r == stable:
                limit[p, q] = value
        data_vars["spectral"] = (("r", *pq_dims), spectral)
        data_vars["spectral_limit"] = (pq_dims, limit)
    if "hodge" in wanted:
        metric = hodge.MetricData.from_bicomplex(x)
        data_vars["harmonic"] = (
            ("laplacian", *pq_dims),
            np.stack(
                [
                    bidegree_array(
                        {pq: hodge.laplacian_kernel_dim(x, flavor, *pq, metric=metric) for pq in x.bidegrees()}, size
                    )
                    for flavor in LAPLACIANS
                ]
            ),
        )

    attrs = {
        "name": name or (model.name if model else "bicomplex"),
        "p_max": x.p_max,
        "q_max": x.q_max,
        "has_conjugation": int(x.has_conjugation),
        "is_model": int(model is not None),
        "checks": ",".join(sorted(wanted)),
    }
    if x.n is not None:
        attrs["n"] = x.n
    if x.labels:
        attrs["basis"] = _basis_attr(x.labels)
    report = xr.Dataset(data_vars, coords=coords, attrs=attrs)

    extra = {}
    if lemma is not None:
        extra["lemma_direct"] = lemma
        extra["claim2_surjectivity"] = cohomology.claim2_surjectivity_check(x, v)
    if "hodge" in wanted:
        extra["harmonic_ok"] = all(hodge.harmonic_characterization_check(x, *pq) for pq in x.bidegrees())
        if model is not None:
            extra["star_kernel_swap"] = hodge.star_kernel_swap_check(model)
    verdicts = report.coho.compute_verdicts(wanted, **extra)
    report = report.assign_coords(check=np.array(list(verdicts)))
    report["verdict"] = (("check",), np.array(list(verdicts.values()), dtype=bool))

    if model is not None and lemma is not None and lemma != verdicts.get("bc_equality_all_k", lemma):
        warnings.warn(
            f"∂∂̄-Lemma verdict ({lemma}) disagrees with the Bott-Chern equality verdict on model {attrs['name']!r}",
            stacklevel=2,
        )
    return report
