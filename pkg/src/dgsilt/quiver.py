"""Finite graded quivers with differentials.

A dg quiver is a finite quiver whose arrows carry degrees <= 0 together
with a differential assigning to some arrows a rational combination of
parallel paths of length >= 2, one degree higher. Paths compose right to
left: in ``compose(p, q)`` the path q acts first, so a stored arrow
sequence ``(a_1, ..., a_n)`` is in application order and prints as
``a_n * ... * a_1``.

Values here are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import fr


@dataclass(frozen=True, order=True)
class Vertex:
    id: str


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    source: Vertex
    target: Vertex
    degree: int = 0


@dataclass(frozen=True)
class Path:
    """Composable arrow sequence; ``arrows[0]`` acts first. Length 0 is a lazy path."""

    start: Vertex
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        prev = self.start
        for a in self.arrows:
            if a.source != prev:
                raise ValueError(f"arrow {a.id} does not compose at {prev.id}")
            prev = a.target

    @property
    def source(self) -> Vertex:
        return self.start

    @property
    def target(self) -> Vertex:
        return self.arrows[-1].target if self.arrows else self.start

    @property
    def degree(self) -> int:
        return sum(a.degree for a in self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)

    def key(self) -> tuple:
        return (len(self.arrows), tuple(a.id for a in self.arrows), self.start.id)

    def compose(self, other: "Path") -> "Path":
        """self after other (other acts first)."""
        if other.target != self.start:
            raise ValueError("paths do not compose")
        return Path(other.start, other.arrows + self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.start.id}"
        return "*".join(a.id for a in reversed(self.arrows))

    __repr__ = __str__


def lazy_path(v: Vertex) -> Path:
    return Path(v)


def arrow_path(a: Arrow) -> Path:
    return Path(a.source, (a,))


@dataclass(frozen=True)
class PathSum:
    """Formal rational combination of paths, normalized and sorted.

    Duplicate paths are merged and zero coefficients dropped on
    construction. Parallelism and homogeneity are quiver-level invariants
    reported by :func:`validate`, not enforced here.
    """

    terms: tuple[tuple[Fraction, Path], ...] = ()

    @staticmethod
    def make(terms: Iterable[tuple[object, Path]]) -> "PathSum":
        acc: dict[tuple, tuple[Fraction, Path]] = {}
        for coeff, path in terms:
            c = fr(coeff)
            k = path.key()
            if k in acc:
                c = acc[k][0] + c
            if c:
                acc[k] = (c, path)
            else:
                acc.pop(k, None)
        return PathSum(tuple(acc[k] for k in sorted(acc)))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PathSum") -> "PathSum":
        return PathSum.make(self.terms + other.terms)

    def scaled(self, coeff) -> "PathSum":
        return PathSum.make((fr(coeff) * c, p) for c, p in self.terms)

    def compose_left(self, p: Path) -> "PathSum":
        """p * self (self acts first)."""
        return PathSum.make((c, p.compose(q)) for c, q in self.terms)

    def compose_right(self, p: Path) -> "PathSum":
        """self * p (p acts first)."""
        return PathSum.make((c, q.compose(p)) for c, q in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{p}" for c, p in self.terms)

    __repr__ = __str__


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    subject: str = ""


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


@dataclass(frozen=True)
class DSquaredResult:
    ok: bool
    witness: str | None = None
    defect: PathSum | None = None


class DgQuiver:
    """Immutable dg quiver: vertices, graded arrows, per-arrow differential."""

    def __init__(
        self,
        vertices: Sequence[Vertex],
        arrows: Sequence[Arrow],
        differential: Mapping[str, PathSum] | None = None,
    ):
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        diff = dict(differential or {})
        # zero differential is represented by absence
        self.differential = {k: v for k, v in diff.items() if not v.is_zero()}
        self._vertex_by_id = {v.id: v for v in self.vertices}
        self._arrow_by_id = {a.id: a for a in self.arrows}

    def vertex(self, vid: str) -> Vertex:
        return self._vertex_by_id[vid]

    def arrow(self, aid: str) -> Arrow:
        return self._arrow_by_id[aid]

    def arrows_into(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def arrows_from(self, v: Vertex) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def diff_of(self, a: Arrow) -> PathSum:
        return self.differential.get(a.id, PathSum())

    def __repr__(self) -> str:
        return (f"DgQuiver({len(self.vertices)} vertices, {len(self.arrows)} arrows, "
                f"{len(self.differential)} differentials)")


def validate(q: DgQuiver) -> ValidationReport:
    """Report every violated dg-quiver invariant (never raises)."""
    out: list[Violation] = []
    seen_v: set[str] = set()
    for v in q.vertices:
        if v.id in seen_v:
            out.append(Violation("duplicate-vertex", f"duplicate vertex id {v.id!r}", v.id))
        seen_v.add(v.id)
    vset = set(q.vertices)
    seen_a: set[str] = set()
    for a in q.arrows:
        if a.id in seen_a:
            out.append(Violation("duplicate-arrow", f"duplicate arrow id {a.id!r}", a.id))
        seen_a.add(a.id)
        if a.source not in vset or a.target not in vset:
            out.append(Violation(
                "dangling-endpoint",
                f"arrow {a.id!r} has an endpoint outside the vertex set", a.id))
        if a.degree > 0:
            out.append(Violation(
                "positive-degree",
                f"arrow {a.id!r} has positive degree {a.degree}", a.id))
    for aid, ds in q.differential.items():
        if aid not in seen_a:
            out.append(Violation("unknown-arrow",
                                 f"differential declared for unknown arrow {aid!r}", aid))
            continue
        a = q.arrow(aid)
        for coeff, p in ds.terms:
            for b in p.arrows:
                if b.id not in seen_a or q.arrow(b.id) != b:
                    out.append(Violation(
                        "unknown-arrow",
                        f"differential of {aid!r} uses unknown arrow {b.id!r}", aid))
            if len(p) < 2:
                out.append(Violation(
                    "short-term",
                    f"differential of {aid!r} has a term of length {len(p)} < 2", aid))
            if p.source != a.source or p.target != a.target:
                out.append(Violation(
                    "not-parallel",
                    f"differential of {aid!r} has a term not parallel to it", aid))
            if p.degree != a.degree + 1:
                out.append(Violation(
                    "degree-mismatch",
                    f"differential of {aid!r} has a term of degree {p.degree}, "
                    f"expected {a.degree + 1}", aid))
    if not out:
        dsq = check_d_squared(q)
        if not dsq.ok:
            out.append(Violation(
                "d-squared",
                f"d*d is nonzero on arrow {dsq.witness!r}: {dsq.defect}", dsq.witness))
    return ValidationReport(tuple(out))


def leibniz(q: DgQuiver, p: Path) -> PathSum:
    """Differential of a path via d(uv) = (du)v + (-1)^{|u|} u (dv)."""
    out = PathSum()
    arrows = p.arrows
    for k in range(len(arrows)):
        da = q.diff_of(arrows[k])
        if da.is_zero():
            continue
        sign_exp = sum(a.degree for a in arrows[k + 1:])
        sign = fr(1) if sign_exp % 2 == 0 else fr(-1)
        # splice d(arrows[k]) between the tail (acts first) and the head
        tail = Path(p.start, arrows[:k])
        head = Path(arrows[k].target, arrows[k + 1:])
        spliced = PathSum.make(
            (sign * c, head.compose(t.compose(tail))) for c, t in da.terms
        )
        out = out + spliced
    return out


def leibniz_sum(q: DgQuiver, s: PathSum) -> PathSum:
    out = PathSum()
    for c, p in s.terms:
        out = out + leibniz(q, p).scaled(c)
    return out


def check_d_squared(q: DgQuiver) -> DSquaredResult:
    """Pass iff the Leibniz extension of d squares to zero on every arrow."""
    for a in sorted(q.arrows):
        defect = leibniz_sum(q, q.diff_of(a))
        if not defect.is_zero():
            return DSquaredResult(False, a.id, defect)
    return DSquaredResult(True)


def enumerate_paths(
    q: DgQuiver, source: Vertex, target: Vertex, degree: int, max_len: int
) -> list[Path]:
    """All paths source -> target of the given degree with length <= max_len."""
    out: list[Path] = []
    outgoing: dict[Vertex, list[Arrow]] = {}
    for a in sorted(q.arrows):
        outgoing.setdefault(a.source, []).append(a)

    def walk(prefix: tuple[Arrow, ...], at: Vertex, deg: int):
        if at == target and deg == degree:
            out.append(Path(source, prefix))
        if len(prefix) >= max_len:
            return
        for a in outgoing.get(at, ()):
            walk(prefix + (a,), a.target, deg + a.degree)

    walk((), source, 0)
    out.sort(key=Path.key)
    return out


def find_cycle(arrows: Sequence[Arrow]) -> list[Arrow] | None:
    """A directed cycle as an arrow list (loops included), or None. DFS, lex order."""
    outgoing: dict[Vertex, list[Arrow]] = {}
    for a in sorted(arrows):
        outgoing.setdefault(a.source, []).append(a)
    state: dict[Vertex, int] = {}  # 1 = on stack, 2 = done
    stack_arrows: list[Arrow] = []

    def visit(v: Vertex) -> list[Arrow] | None:
        state[v] = 1
        for a in outgoing.get(v, ()):
            w = a.target
            s = state.get(w, 0)
            if s == 1:
                if a.source == w:
                    return [a]
                # w is on the stack: walk back to where it was entered
                cyc: list[Arrow] = []
                for b in reversed(stack_arrows):
                    cyc.append(b)
                    if b.source == w:
                        break
                cyc.reverse()
                cyc.append(a)
                return cyc
            if s == 0:
                stack_arrows.append(a)
                found = visit(w)
                if found is not None:
                    return found
                stack_arrows.pop()
        state[v] = 2
        return None

    vertices = sorted({a.source for a in arrows} | {a.target for a in arrows})
    for v in vertices:
        if state.get(v, 0) == 0:
            found = visit(v)
            if found is not None:
                return found
    return None


def is_graph_acyclic(q: DgQuiver) -> bool:
    """True iff the underlying directed graph (all degrees) has no directed cycle."""
    return find_cycle(q.arrows) is None


def subquiver_by_degree(q: DgQuiver, degree: int) -> DgQuiver:
    """Same vertices, only the arrows of exactly this degree, differentials dropped."""
    return DgQuiver(q.vertices, [a for a in q.arrows if a.degree == degree])
