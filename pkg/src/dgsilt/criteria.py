"""Combinatorial homological criteria read off a dg quiver.

For a valid dg quiver whose differentials have length >= 2 terms, extension
spaces between vertex simples are counted by arrows: an arrow j -> i of
degree -(n-1) contributes one dimension to Ext^n(S_i, S_j). Everything in
this module is pure arrow counting; the derived-category engine computes
the same numbers independently and is cross-checked against it.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field

from .errors import GlobalDimensionExceededError, InvalidQuiverError
from .quiver import Arrow, DgQuiver, Vertex, find_cycle, subquiver_by_degree, validate

NO_OFFENDING_ARROW = "no-offending-arrow"
OFFENDING_ARROW = "offending-arrow"
LOOP_PRESENT = "loop-present-criterion-inapplicable"

_validated: "weakref.WeakKeyDictionary[DgQuiver, bool]" = weakref.WeakKeyDictionary()


def require_valid(q: DgQuiver) -> None:
    ok = _validated.get(q)
    if ok is None:
        ok = validate(q).ok
        _validated[q] = ok
    if not ok:
        raise InvalidQuiverError(validate(q))


@dataclass(frozen=True)
class ExtTable:
    """Per-vertex-pair dimensions of Ext^n between simples, 0 <= n <= window."""

    window: int
    vertices: tuple[str, ...]
    entries: dict[tuple[str, str, int], int] = field(default_factory=dict)

    def entry(self, i: str, j: str, n: int) -> int:
        if n == 0:
            return 1 if i == j else 0
        return self.entries.get((i, j, n), 0)

    def nonzero(self) -> list[tuple[str, str, int, int]]:
        return [(i, j, n, d) for (i, j, n), d in sorted(self.entries.items()) if d]

    def arrow_counts(self) -> dict[tuple[str, str, int], int]:
        """Arrow multiset of the minimal-model quiver.

        Key (source, target, degree): Ext^n(S_i, S_j) arrows run j -> i with
        degree -(n-1).
        """
        out: dict[tuple[str, str, int], int] = {}
        for (i, j, n), d in self.entries.items():
            if n >= 1 and d:
                out[(j, i, -(n - 1))] = d
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class MutationVerdict:
    vertex: str
    d: int
    admissible: bool
    reason: str
    offending: tuple[str, ...] = ()

    def __post_init__(self):
        if self.admissible and self.reason != NO_OFFENDING_ARROW:
            raise ValueError("admissible verdicts must carry no offending arrows")


def ext_simples(q: DgQuiver, i: Vertex, j: Vertex, n: int) -> int:
    """dim Ext^n(S_i, S_j): Kronecker delta at n = 0, else arrows j -> i of degree -(n-1)."""
    require_valid(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1 if i == j else 0
    return sum(
        1 for a in q.arrows
        if a.source == j and a.target == i and a.degree == -(n - 1)
    )


def projdim_simple(q: DgQuiver, i: Vertex) -> int:
    """Projective dimension of the vertex simple: 1 + max incoming -degree, 0 at sources."""
    require_valid(q)
    incoming = q.arrows_into(i)
    if not incoming:
        return 0
    return 1 + max(-a.degree for a in incoming)


def global_dimension(q: DgQuiver) -> int:
    """0 without arrows, else 1 + max(-degree) over all arrows."""
    require_valid(q)
    if not q.arrows:
        return 0
    return 1 + max(-a.degree for a in q.arrows)


def _check_gldim(q: DgQuiver, d: int) -> None:
    witness = [a for a in sorted(q.arrows) if a.degree <= -d]
    if witness:
        raise GlobalDimensionExceededError(d, witness[0])


def mutation_check(q: DgQuiver, i: Vertex, d: int) -> MutationVerdict:
    """Is mutation at the vertex projective d-silting-admissible?

    Admissible iff no arrow of degree -d+1 has sink i, valid whenever no
    loop of that degree sits at i; with such a loop the arrow criterion is
    inapplicable and the verdict says so instead of guessing.
    """
    require_valid(q)
    if d < 1:
        raise ValueError("d must be >= 1")
    _check_gldim(q, d)
    loops = [a for a in sorted(q.arrows)
             if a.source == a.target == i and a.degree == -d + 1]
    if loops:
        return MutationVerdict(i.id, d, False, LOOP_PRESENT,
                               tuple(a.id for a in loops))
    offending = [a for a in sorted(q.arrows)
                 if a.target == i and a.degree == -d + 1]
    if offending:
        return MutationVerdict(i.id, d, False, OFFENDING_ARROW,
                               tuple(a.id for a in offending))
    return MutationVerdict(i.id, d, True, NO_OFFENDING_ARROW)


def nu_obstruction_cycle(q: DgQuiver, d: int) -> list[Arrow] | None:
    """A directed cycle of degree -d+1 arrows if one exists, else None.

    A found cycle certifies the obstruction; None proves nothing beyond
    "no obstruction found".
    """
    require_valid(q)
    layer = subquiver_by_degree(q, -d + 1)
    return find_cycle(layer.arrows)


def ext_table(q: DgQuiver, n_max: int) -> ExtTable:
    require_valid(q)
    entries: dict[tuple[str, str, int], int] = {}
    for i in q.vertices:
        entries[(i.id, i.id, 0)] = 1
    for n in range(1, n_max + 1):
        for a in q.arrows:
            if a.degree == -(n - 1):
                key = (a.target.id, a.source.id, n)
                entries[key] = entries.get(key, 0) + 1
    return ExtTable(n_max, tuple(v.id for v in q.vertices), entries)
