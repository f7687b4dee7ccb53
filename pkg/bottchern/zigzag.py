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
"""Assemble double complexes from indecomposable pieces.

Every bounded double complex is a direct sum of dots, squares and zigzags.
The helpers here build those pieces on one-dimensional vertex spaces and
glue a list of them into a :class:`~bottchern.bicomplex.Bicomplex`.

A zigzag is described by its start bidegree and a word of steps:

* ``up``: ``∂̄`` from the current vertex to a new vertex one row up
* ``down``: ``∂̄`` into the current vertex from a new vertex one row down
* ``right``: ``∂`` from the current vertex to a new vertex one column right
* ``left``: ``∂`` into the current vertex from a new vertex one column left

Consecutive steps must change axis and alternate between raising and
lowering the total degree, otherwise the shape is not a zigzag.

"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Literal, NamedTuple

from . import linalg
from .bicomplex import Bicomplex, Bidegree
from .exceptions import AssemblyError
from .linalg import GaussianRational

logger = logging.getLogger(__name__)

EdgeKind = Literal["partial", "partial_bar"]

STEPS: dict[str, tuple[int, int, EdgeKind, bool]] = {
    # name: (dp, dq, differential, forward)
    "up": (0, 1, "partial_bar", True),
    "down": (0, -1, "partial_bar", False),
    "right": (1, 0, "partial", True),
    "left": (-1, 0, "partial", False),
}


class Edge(NamedTuple):
    src: int
    tgt: int
    kind: EdgeKind
    coeff: GaussianRational


@dataclass(frozen=True)
class Piece:
    """Indecomposable building block with one-dimensional vertex spaces."""

    kind: str
    vertices: tuple[Bidegree, ...]
    edges: tuple[Edge, ...] = ()
    label: str = ""

    def key(self) -> tuple:
        """Shape of the piece, ignoring edge coefficients."""
        return (
            tuple(sorted(self.vertices)),
            tuple(sorted((self.vertices[e.src], self.vertices[e.tgt], e.kind) for e in self.edges)),
        )

    def mirror_key(self) -> tuple:
        return self.transpose().key()

    def transpose(self) -> Piece:
        """Mirror image across the diagonal with conjugated coefficients."""
        swap = {"partial": "partial_bar", "partial_bar": "partial"}
        return Piece(
            kind=self.kind,
            vertices=tuple((q, p) for p, q in self.vertices),
            edges=tuple(Edge(e.src, e.tgt, swap[e.kind], linalg.conj_scalar(e.coeff)) for e in self.edges),
            label=f"transpose({self.label})",
        )

    @property
    def is_self_mirror(self) -> bool:
        return self.key() == self.mirror_key()


def dot(p: int, q: int) -> Piece:
    """One-dimensional space at ``(p, q)`` with vanishing differentials."""
    return Piece("dot", ((p, q),), label=f"dot({p},{q})")


def square(p: int, q: int) -> Piece:
    """Square with corners ``(p, q)`` and ``(p+1, q+1)``.

    ``∂`` leaving ``V^{p,q+1}`` carries the sign ``-1`` so the square
    anticommutes.
    """
    one = linalg.QQ_I.one
    vertices = ((p, q), (p + 1, q), (p, q + 1), (p + 1, q + 1))
    edges = (
        Edge(0, 1, "partial", one),
        Edge(0, 2, "partial_bar", one),
        Edge(1, 3, "partial_bar", one),
        Edge(2, 3, "partial", -one),
    )
    return Piece("square", vertices, edges, label=f"square({p},{q})")


def parse_word(word: str | Sequence[str]) -> list[str]:
    steps = word.split() if isinstance(word, str) else list(word)
    for step in steps:
        if step not in STEPS:
            raise AssemblyError(f"unknown zigzag step {step!r}, expected one of {sorted(STEPS)}")
    for prev, step in zip(steps, steps[1:]):
        prev_dp, _, _, prev_forward = STEPS[prev]
        dp, _, _, forward = STEPS[step]
        if (prev_dp == 0) == (dp == 0) or prev_forward == forward:
            raise AssemblyError(f"steps {prev!r} then {step!r} do not form a zigzag")
    return steps


def zigzag(start: Bidegree, word: str | Sequence[str]) -> Piece:
    """Zigzag starting at ``start`` and following the steps of ``word``.

    Examples
    --------
    >>> zigzag((0, 0), "up").vertices
    ((0, 0), (0, 1))

    """
    steps = parse_word(word)
    if not steps:
        return Piece("dot", (tuple(start),), label=f"dot({start[0]},{start[1]})")
    one = linalg.QQ_I.one
    vertices = [tuple(start)]
    edges = []
    for step in steps:
        dp, dq, kind, forward = STEPS[step]
        p, q = vertices[-1]
        vertices.append((p + dp, q + dq))
        cur, new = len(vertices) - 2, len(vertices) - 1
        edges.append(Edge(cur, new, kind, one) if forward else Edge(new, cur, kind, one))
    label = f"zigzag(({start[0]},{start[1]}),'{' '.join(steps)}')"
    return Piece("zigzag", tuple(vertices), tuple(edges), label=label)


def is_mirror_symmetric(pieces: Iterable[Piece]) -> bool:
    """Whether the pieces can be paired with their mirror images."""
    try:
        _pair_mirrors(list(pieces))
    except AssemblyError:
        return False
    return True


def _pair_mirrors(pieces: list[Piece]) -> list[tuple[int, int]]:
    pairs = []
    unmatched = list(range(len(pieces)))
    while unmatched:
        i = unmatched.pop(0)
        if pieces[i].is_self_mirror:
            pairs.append((i, i))
            continue
        target = pieces[i].mirror_key()
        partner = next((j for j in unmatched if pieces[j].key() == target), None)
        if partner is None:
            raise AssemblyError(f"{pieces[i].label} has no mirror partner")
        unmatched.remove(partner)
        pairs.append((i, partner))
    return pairs


def _self_mirror_signs(piece: Piece) -> list[GaussianRational]:
    """Solve for the conjugation coefficients of a self-mirror piece.

    ``σ`` sends vertex ``v`` to ``ε_v`` times its mirror ``m(v)``. The
    involution requires ``ε_{m(v)} = 1 / conj(ε_v)`` and intertwining
    requires ``conj(s) ε_w = ε_v s'`` for every ``∂`` edge ``v -> w`` of
    coefficient ``s`` whose mirror ``∂̄`` edge has coefficient ``s'``.
    """
    index = {v: i for i, v in enumerate(piece.vertices)}
    mirror = [index[(q, p)] for p, q in piece.vertices]
    bar_edges = {(e.src, e.tgt): e.coeff for e in piece.edges if e.kind == "partial_bar"}
    links: dict[int, list[tuple[int, object]]] = {i: [] for i in range(len(piece.vertices))}
    for e in piece.edges:
        if e.kind != "partial":
            continue
        s_bar = bar_edges[(mirror[e.src], mirror[e.tgt])]
        ratio = s_bar / linalg.conj_scalar(e.coeff)
        links[e.src].append((e.tgt, lambda eps, r=ratio: eps * r))
        links[e.tgt].append((e.src, lambda eps, r=ratio: eps / r))
    for i, m in enumerate(mirror):
        links[i].append((m, lambda eps: linalg.QQ_I.one / linalg.conj_scalar(eps)))

    signs: list[GaussianRational | None] = [None] * len(piece.vertices)
    for root in range(len(piece.vertices)):
        if signs[root] is not None:
            continue
        signs[root] = linalg.QQ_I.one
        queue = [root]
        while queue:
            v = queue.pop()
            for w, rule in links[v]:
                value = rule(signs[v])
                if signs[w] is None:
                    signs[w] = value
                    queue.append(w)
                elif signs[w] != value:
                    raise AssemblyError(f"{piece.label} admits no real structure with these signs")
    return signs


def zigzag_assemble(
    pieces: Sequence[Piece],
    conjugation: bool = False,
    p_max: int | None = None,
    q_max: int | None = None,
    n: int | None = None,
) -> Bicomplex:
    """Direct sum of the given pieces as a :class:`Bicomplex`.

    Parameters
    ----------
    pieces
        Placed dots, squares and zigzags. Overlapping placements add up.
    conjugation
        Attach a real structure. Every piece must then be paired with a
        piece of the mirrored shape; the partner is replaced by the exact
        mirror image so the conjugation intertwines ``∂`` and ``∂̄``.
    p_max, q_max
        Bounds of the result. Default to the smallest bounds covering
        every vertex (a square grid when ``conjugation`` is set).
    n
        Optional complex dimension tag.

    Raises
    ------
    AssemblyError
        A vertex lies outside the bounds, or conjugation was requested
        for an assembly that is not mirror-symmetric.

    """
    pieces = list(pieces)
    pairs = _pair_mirrors(pieces) if conjugation else []
    for i, j in pairs:
        if i != j:
            pieces[j] = pieces[i].transpose()

    coords = [v for piece in pieces for v in piece.vertices]
    if any(p < 0 or q < 0 for p, q in coords):
        raise AssemblyError("pieces must be placed at nonnegative bidegrees")
    need_p = max((p for p, _ in coords), default=0)
    need_q = max((q for _, q in coords), default=0)
    if conjugation:
        need_p = need_q = max(need_p, need_q)
    p_max = need_p if p_max is None else p_max
    q_max = need_q if q_max is None else q_max
    if need_p > p_max or need_q > q_max:
        raise AssemblyError(f"pieces reach ({need_p},{need_q}) beyond the bounds ({p_max},{q_max})")

    # basis position of every vertex inside its V^{p,q}
    dims: dict[Bidegree, int] = {}
    position: list[list[int]] = []
    for piece in pieces:
        slots = []
        for v in piece.vertices:
            slots.append(dims.get(v, 0))
            dims[v] = dims.get(v, 0) + 1
        position.append(slots)

    entries: dict[str, dict[Bidegree, dict[tuple[int, int], GaussianRational]]] = {
        "partial": {},
        "partial_bar": {},
        "conj": {},
    }
    for piece, slots in zip(pieces, position):
        for e in piece.edges:
            block = entries[e.kind].setdefault(piece.vertices[e.src], {})
            block[(slots[e.tgt], slots[e.src])] = e.coeff
    for i, j in pairs:
        signs = _self_mirror_signs(pieces[i]) if i == j else [linalg.QQ_I.one] * len(pieces[i].vertices)
        partner = pieces[j]
        for a, v in enumerate(pieces[i].vertices):
            b = a if i != j else partner.vertices.index((v[1], v[0]))
            entries["conj"].setdefault(v, {})[(position[j][b], position[i][a])] = signs[a]
            if i != j:
                entries["conj"].setdefault(partner.vertices[a], {})[(position[i][a], position[j][a])] = linalg.QQ_I.one

    def to_blocks(name: str, target) -> dict[Bidegree, linalg.Matrix]:
        blocks = {}
        for pq, values in entries[name].items():
            nrows, ncols = dims[target(*pq)], dims[pq]
            rows = [[linalg.QQ_I.zero] * ncols for _ in range(nrows)]
            for (r, c), value in values.items():
                rows[r][c] = value
            blocks[pq] = linalg.from_rows(rows, nrows, ncols)
        return blocks

    logger.debug("Assembled %d pieces into a bicomplex with dims %s", len(pieces), dims)
    return Bicomplex(
        p_max=p_max,
        q_max=q_max,
        dims=dims,
        del_blocks=to_blocks("partial", lambda p, q: (p + 1, q)),
        delbar_blocks=to_blocks("partial_bar", lambda p, q: (p, q + 1)),
        conj_blocks=to_blocks("conj", lambda p, q: (q, p)) if conjugation else None,
        n=n,
    )
