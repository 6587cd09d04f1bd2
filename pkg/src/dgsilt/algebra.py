"""Finite-dimensional dg algebras over Q and their dg modules.

A :class:`FinDimDgAlgebra` is stored by a homogeneous basis with per-element
source/target idempotents (an element x with source s and target t satisfies
x = e_t x e_s), structure constants, and a degree +1 differential. All basis
degrees are <= 0, so the algebra is connective at chain level. Two
constructions feed this carrier: path algebras of acyclic dg quivers, and
(in the engine) truncated endomorphism algebras of silting presentations.

Right modules appear in two shapes: semifree ones (engine) and plain
values. A :class:`DgModuleValue` is a finite graded vector space with a
differential and a right action of the algebra basis, materialized lazily.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    CyclicQuiverError,
    InvalidQuiverError,
    NonElementaryAlgebraError,
)
from .linalg import ONE, ZERO, Echelon, Matrix, Vec, algebra_radical, rank, vec, vec_axpy
from .quiver import (
    DgQuiver,
    Path,
    Vertex,
    find_cycle,
    lazy_path,
    leibniz,
    validate,
)


@dataclass(frozen=True)
class BasisElement:
    label: object
    degree: int
    source: str
    target: str


class FinDimDgAlgebra:
    """Associative unital dg algebra with a fixed homogeneous basis."""

    def __init__(
        self,
        vertices: Sequence[str],
        basis: Sequence[BasisElement],
        idempotents: Mapping[str, Vec],
        mult_table: Mapping[tuple[int, int], Vec] | None = None,
        mult_fn: Callable[[int, int], Vec] | None = None,
        diff: Mapping[int, Vec] | None = None,
        *,
        check: bool = True,
    ):
        self.vertices = tuple(vertices)
        self.basis = tuple(basis)
        self.idempotents = {v: vec(w) for v, w in idempotents.items()}
        self._table: dict[tuple[int, int], Vec] = {
            k: vec(w) for k, w in (mult_table or {}).items() if w
        }
        self._mult_fn = mult_fn
        self._diff = {k: vec(w) for k, w in (diff or {}).items() if w}
        self._component: dict[tuple[str, str, int], tuple[int, ...]] = {}
        self._by_degree: dict[int, tuple[int, ...]] = {}
        self._h0: H0Structure | None = None
        self._dual_tables = None
        self.caches: dict = {}
        if check:
            self._check()

    # -- basic structure ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def min_degree(self) -> int:
        return min((b.degree for b in self.basis), default=0)

    def mult(self, i: int, j: int) -> Vec:
        got = self._table.get((i, j))
        if got is not None:
            return got
        if self._mult_fn is not None:
            out = vec(self._mult_fn(i, j))
            self._table[(i, j)] = out
            return out
        return {}

    def diff(self, i: int) -> Vec:
        return self._diff.get(i, {})

    def unit(self) -> Vec:
        out: Vec = {}
        for w in self.idempotents.values():
            vec_axpy(out, ONE, w)
        return out

    def elem_mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            bi = self.basis[i]
            for j, b in v.items():
                if bi.source == self.basis[j].target:
                    vec_axpy(out, a * b, self.mult(i, j))
        return out

    def elem_diff(self, u: Vec) -> Vec:
        out: Vec = {}
        for i, a in u.items():
            vec_axpy(out, a, self.diff(i))
        return out

    def component(self, source: str, target: str, degree: int) -> tuple[int, ...]:
        key = (source, target, degree)
        got = self._component.get(key)
        if got is None:
            got = tuple(
                i for i, b in enumerate(self.basis)
                if b.source == source and b.target == target and b.degree == degree
            )
            self._component[key] = got
        return got

    def by_degree(self, degree: int) -> tuple[int, ...]:
        got = self._by_degree.get(degree)
        if got is None:
            got = tuple(i for i, b in enumerate(self.basis) if b.degree == degree)
            self._by_degree[degree] = got
        return got

    def _check(self) -> None:
        for b in self.basis:
            if b.degree > 0:
                raise ValueError(f"basis element {b.label!r} has positive degree")
            if b.source not in self.vertices or b.target not in self.vertices:
                raise ValueError(f"basis element {b.label!r} has unknown endpoints")
        for v, w in self.idempotents.items():
            if self.elem_diff(w):
                raise ValueError(f"idempotent at {v!r} is not a cycle")
        for i, b in enumerate(self.basis):
            x = {i: ONE}
            if self.elem_mul(self.idempotents[b.target], x) != x:
                raise ValueError(f"left unit law fails at {b.label!r}")
            if self.elem_mul(x, self.idempotents[b.source]) != x:
                raise ValueError(f"right unit law fails at {b.label!r}")
            dd = self.elem_diff(self.diff(i))
            if dd:
                raise ValueError(f"differential does not square to zero at {b.label!r}")

    def check_associative_full(self) -> None:
        """O(dim^3) exact associativity check; used by tests and small algebras."""
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mult(i, j) if self.basis[i].source == self.basis[j].target else {}
                for k in range(self.dim):
                    left = self.elem_mul(ij, {k: ONE})
                    right = self.elem_mul({i: ONE}, self.mult(j, k)
                                          if self.basis[j].source == self.basis[k].target
                                          else {})
                    if left != right:
                        raise ValueError(f"non-associative at ({i}, {j}, {k})")

    def h0(self) -> "H0Structure":
        if self._h0 is None:
            self._h0 = H0Structure(self)
        return self._h0

    # -- dual bimodule tables (for Serre twists) ----------------------------

    def dual_tables(self):
        """Right/left action and differential of the dual bimodule D(A).

        The dual basis element b* pairs against b; degrees flip sign. The
        right action is (b* . a)(x) = b*(a x); the left action carries the
        Koszul sign (a . b*)(x) = (-1)^{|a|(|b*|+|x|)} b*(x a), which on
        nonvanishing pairings is (-1)^{|a|} b*(x a); d(b*) = -(-1)^{|b*|} b* d.
        """
        if self._dual_tables is None:
            right: dict[int, dict[int, Vec]] = {}   # a -> b -> expansion over c*
            left: dict[int, dict[int, Vec]] = {}
            for i in range(self.dim):
                bi = self.basis[i]
                for j in range(self.dim):
                    bj = self.basis[j]
                    if bi.source != bj.target:
                        continue
                    prod = self.mult(i, j)
                    lsign = ONE if bj.degree % 2 == 0 else -ONE
                    for m, coeff in prod.items():
                        # <b_i b_j, b_m>: contributes to (b_m* . b_i) at b_j*
                        # and to (b_j . b_m*) at b_i*.
                        right.setdefault(i, {}).setdefault(m, {})[j] = (
                            right.get(i, {}).get(m, {}).get(j, ZERO) + coeff)
                        left.setdefault(j, {}).setdefault(m, {})[i] = (
                            left.get(j, {}).get(m, {}).get(i, ZERO) + lsign * coeff)
            dual_diff: dict[int, Vec] = {}
            for c in range(self.dim):
                dc = self.diff(c)
                for b, coeff in dc.items():
                    sign = -ONE if (-self.basis[b].degree) % 2 == 0 else ONE
                    dual_diff.setdefault(b, {})[c] = (
                        dual_diff.get(b, {}).get(c, ZERO) + sign * coeff)
            self._dual_tables = (right, left, dual_diff)
        return self._dual_tables

    def __repr__(self) -> str:
        return f"FinDimDgAlgebra(dim={self.dim}, vertices={list(self.vertices)})"


class H0Structure:
    """Degree-zero cohomology of a connective algebra, with radical data.

    Since the algebra is connective, every degree-0 element is a cycle and
    H^0 = A^0 / d(A^{-1}). Representatives are chosen among basis elements.
    """

    def __init__(self, a: FinDimDgAlgebra):
        self.algebra = a
        self.solver = Echelon(track=True)
        for i in a.by_degree(-1):
            d = a.diff(i)
            if d:
                self.solver.insert(d)
        self.reps: list[int] = []
        self.rep_ids: list[int] = []
        for i in a.by_degree(0):
            rid = self.solver.insert({i: ONE})
            if rid is not None:
                self.reps.append(i)
                self.rep_ids.append(rid)
        self._pos = {rid: p for p, rid in enumerate(self.rep_ids)}
        self.dim = len(self.reps)

        self.mult0: dict[tuple[int, int], Vec] = {}
        for p, i in enumerate(self.reps):
            for q, j in enumerate(self.reps):
                if a.basis[i].source != a.basis[j].target:
                    continue
                prod = self.coords(a.mult(i, j))
                if prod:
                    self.mult0[(p, q)] = prod
        self.unit_coords = self.coords(a.unit())

        rad = algebra_radical(self.dim, self.mult0, self.unit_coords,
                              check_associative=False)
        self.radical: list[Vec] = [vec(dict(enumerate(r))) for r in rad]

        # radical representatives in algebra coordinates, split by (source, target)
        self.rad_pairs: dict[tuple[str, str], list[Vec]] = {}
        for r in self.radical:
            lifted: Vec = {}
            for p, c in r.items():
                lifted[self.reps[p]] = lifted.get(self.reps[p], ZERO) + c
            by_pair: dict[tuple[str, str], Vec] = {}
            for i, c in lifted.items():
                b = a.basis[i]
                by_pair.setdefault((b.source, b.target), {})[i] = c
            for pair, component in by_pair.items():
                self.rad_pairs.setdefault(pair, []).append(vec(component))

        # elementary test: idempotent classes must base H^0 / rad
        quot = Echelon(track=True)
        for r in self.radical:
            quot.insert(r)
        self._idem_ids: dict[str, int] = {}
        elementary = True
        for v in a.vertices:
            rid = quot.insert(self.coords(a.idempotents[v]))
            if rid is None:
                elementary = False
                break
            self._idem_ids[v] = rid
        self.is_elementary = elementary and quot.dim == self.dim
        self._quot = quot
        self._functionals: dict[str, dict[int, Fraction]] | None = None

    def coords(self, v: Vec) -> Vec:
        """H^0 coordinates of a degree-0 element (boundary part discarded)."""
        sol = self.solver.solve(v)
        if sol is None:
            raise ValueError("vector is not supported in the degree-0 component")
        return {self._pos[k]: c for k, c in sol.items() if k in self._pos}

    def functionals(self) -> dict[str, dict[int, Fraction]]:
        """Scalar action of each degree-0 basis element on the vertex simples."""
        if not self.is_elementary:
            raise NonElementaryAlgebraError(
                "H^0 modulo its radical is not a product of copies of Q")
        if self._functionals is None:
            lam: dict[str, dict[int, Fraction]] = {v: {} for v in self.algebra.vertices}
            for m in self.algebra.by_degree(0):
                sol = self._quot.solve(self.coords({m: ONE}))
                if sol is None:
                    raise ValueError("degree-0 element escaped H^0")
                for v, rid in self._idem_ids.items():
                    c = sol.get(rid)
                    if c:
                        lam[v][m] = c
            self._functionals = lam
        return self._functionals


class DgModuleValue:
    """Graded vector space with differential and lazy right algebra action."""

    def __init__(
        self,
        algebra: FinDimDgAlgebra,
        basis: Sequence[tuple[object, int, str]],
        diff: Mapping[int, Vec],
        act_fn: Callable[[int, int], Vec],
    ):
        self.algebra = algebra
        self.basis = tuple(basis)
        self._diff = {k: vec(w) for k, w in diff.items() if w}
        self._act_fn = act_fn
        self._act_cache: dict[tuple[int, int], Vec] = {}
        self._by_degree: dict[int, tuple[int, ...]] | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, idx: int) -> int:
        return self.basis[idx][1]

    def vertex(self, idx: int) -> str:
        return self.basis[idx][2]

    def degrees(self) -> list[int]:
        return sorted({b[1] for b in self.basis})

    def by_degree(self) -> dict[int, tuple[int, ...]]:
        if self._by_degree is None:
            acc: dict[int, list[int]] = {}
            for i, (_, d, _) in enumerate(self.basis):
                acc.setdefault(d, []).append(i)
            self._by_degree = {d: tuple(ix) for d, ix in acc.items()}
        return self._by_degree

    def diff(self, idx: int) -> Vec:
        return self._diff.get(idx, {})

    def diff_vec(self, v: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            vec_axpy(out, c, self.diff(i))
        return out

    def act(self, idx: int, a_idx: int) -> Vec:
        key = (idx, a_idx)
        got = self._act_cache.get(key)
        if got is None:
            got = vec(self._act_fn(idx, a_idx))
            self._act_cache[key] = got
        return got

    def act_elem(self, v: Vec, elem: Vec) -> Vec:
        out: Vec = {}
        for i, c in v.items():
            for a, ca in elem.items():
                vec_axpy(out, c * ca, self.act(i, a))
        return out


def simple_module(a: FinDimDgAlgebra, i) -> DgModuleValue:
    """One-dimensional module in degree 0 at a vertex of an elementary algebra."""
    label = i.id if isinstance(i, Vertex) else i
    if label not in a.vertices:
        raise KeyError(f"unknown vertex {label!r}")
    lam = a.h0().functionals()[label]

    def act(idx: int, a_idx: int) -> Vec:
        c = lam.get(a_idx)
        return {0: c} if c else {}

    key = ("simple", label)
    if key not in a.caches:
        a.caches[key] = DgModuleValue(a, [(f"S_{label}", 0, label)], {}, act)
    return a.caches[key]


def algebra_from_quiver(q: DgQuiver) -> FinDimDgAlgebra:
    """Path algebra of an acyclic valid dg quiver; basis = all paths."""
    report = validate(q)
    if not report.ok:
        raise InvalidQuiverError(report)
    cycle = find_cycle(q.arrows)
    if cycle is not None:
        raise CyclicQuiverError(cycle)

    paths: list[Path] = [lazy_path(v) for v in sorted(q.vertices)]
    frontier = list(paths)
    outgoing: dict[Vertex, list] = {}
    for a in sorted(q.arrows):
        outgoing.setdefault(a.source, []).append(a)
    while frontier:
        nxt = []
        for p in sorted(frontier, key=Path.key):
            for a in outgoing.get(p.target, ()):
                nxt.append(Path(p.start, p.arrows + (a,)))
        nxt.sort(key=Path.key)
        paths.extend(nxt)
        frontier = nxt

    index = {p.key(): i for i, p in enumerate(paths)}
    basis = [BasisElement(p, p.degree, p.source.id, p.target.id) for p in paths]

    table: dict[tuple[int, int], Vec] = {}
    for i, p in enumerate(paths):
        for j, r in enumerate(paths):
            if p.source == r.target:
                table[(i, j)] = {index[p.compose(r).key()]: ONE}

    def to_vec(ps) -> Vec:
        return vec((index[pp.key()], c) for c, pp in ps.terms)

    diff = {}
    for i, p in enumerate(paths):
        if len(p) >= 1:
            d = leibniz(q, p)
            if not d.is_zero():
                diff[i] = to_vec(d)

    idempotents = {v.id: {index[lazy_path(v).key()]: ONE} for v in q.vertices}
    a = FinDimDgAlgebra([v.id for v in q.vertices], basis, idempotents,
                        mult_table=table, diff=diff)
    a.caches["source_quiver"] = q
    return a


def h0_dimension(a: FinDimDgAlgebra, i, j) -> int:
    """dim H^0 of the component with source i and target j."""
    src = i.id if isinstance(i, Vertex) else i
    tgt = j.id if isinstance(j, Vertex) else j
    comp0 = a.component(src, tgt, 0)
    pos = {idx: p for p, idx in enumerate(comp0)}
    rows = []
    for k in a.component(src, tgt, -1):
        d = a.diff(k)
        if d:
            rows.append({pos[m]: c for m, c in d.items()})
    boundary_rank = rank(Matrix(len(rows), len(comp0), rows)) if rows else 0
    return len(comp0) - boundary_rank
