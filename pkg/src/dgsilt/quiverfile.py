"""Line-oriented text format for dg quivers.

Grammar (one declaration per line, ``#`` starts a comment)::

    dgquiver 1
    vertex <id>
    arrow <id> <source> <target> <degree>
    diff <arrow-id> = <coeff> <arrow-id>+ [; <coeff> <arrow-id>+ ...]

Every arrow carries an explicit id, so multiplicities are ids, never edge
weights, and differentials reference arrows unambiguously. In a ``diff``
term the arrow ids are listed in application order (the first id acts
first); coefficients are rationals like ``1``, ``-1`` or ``2/3`` and are
always written explicitly. The serializer emits a canonical form: sorted
declarations, normalized coefficients; parse -> serialize -> parse is the
identity on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import QuiverParseError
from .quiver import Arrow, DgQuiver, Path, PathSum, Vertex

FORMAT_NAME = "dgquiver"
FORMAT_VERSION = 1


@dataclass
class QuiverDocument:
    version: int = FORMAT_VERSION
    vertices: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str, int]] = field(default_factory=list)
    diffs: dict[str, list[tuple[Fraction, tuple[str, ...]]]] = field(default_factory=dict)

    def to_quiver(self) -> DgQuiver:
        vmap = {vid: Vertex(vid) for vid in self.vertices}
        amap: dict[str, Arrow] = {}
        arrows = []
        for aid, s, t, deg in self.arrows:
            if s not in vmap:
                raise QuiverParseError(0, f"arrow {aid!r} references unknown vertex {s!r}")
            if t not in vmap:
                raise QuiverParseError(0, f"arrow {aid!r} references unknown vertex {t!r}")
            a = Arrow(aid, vmap[s], vmap[t], deg)
            amap[aid] = a
            arrows.append(a)
        diff = {}
        for aid, terms in self.diffs.items():
            if aid not in amap:
                raise QuiverParseError(0, f"differential declared for unknown arrow {aid!r}")
            built = []
            for coeff, ids in terms:
                seq = []
                for x in ids:
                    if x not in amap:
                        raise QuiverParseError(
                            0, f"differential of {aid!r} uses unknown arrow {x!r}")
                    seq.append(amap[x])
                try:
                    p = Path(seq[0].source, tuple(seq))
                except ValueError as e:
                    raise QuiverParseError(0, f"differential of {aid!r}: {e}") from None
                built.append((coeff, p))
            diff[aid] = PathSum.make(built)
        return DgQuiver(list(vmap.values()), arrows, diff)


def _parse_coeff(tok: str, line: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise QuiverParseError(line, f"bad coefficient {tok!r}") from None


def parse(text: str) -> QuiverDocument:
    doc = QuiverDocument()
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kind = toks[0]
        if kind == FORMAT_NAME:
            if len(toks) != 2 or not toks[1].isdigit():
                raise QuiverParseError(lineno, "header must be 'dgquiver <version>'")
            if int(toks[1]) != FORMAT_VERSION:
                raise QuiverParseError(lineno, f"unsupported format version {toks[1]}")
            saw_header = True
        elif kind == "vertex":
            if not saw_header:
                raise QuiverParseError(lineno, "missing 'dgquiver 1' header")
            if len(toks) != 2:
                raise QuiverParseError(lineno, "vertex takes exactly one id")
            if toks[1] in doc.vertices:
                raise QuiverParseError(lineno, f"duplicate vertex id {toks[1]!r}")
            doc.vertices.append(toks[1])
        elif kind == "arrow":
            if not saw_header:
                raise QuiverParseError(lineno, "missing 'dgquiver 1' header")
            if len(toks) != 5:
                raise QuiverParseError(lineno, "arrow takes: id source target degree")
            aid, s, t, deg = toks[1:]
            try:
                degree = int(deg)
            except ValueError:
                raise QuiverParseError(lineno, f"bad degree {deg!r}") from None
            if any(a[0] == aid for a in doc.arrows):
                raise QuiverParseError(lineno, f"duplicate arrow id {aid!r}")
            doc.arrows.append((aid, s, t, degree))
        elif kind == "diff":
            if not saw_header:
                raise QuiverParseError(lineno, "missing 'dgquiver 1' header")
            if len(toks) < 4 or toks[2] != "=":
                raise QuiverParseError(lineno, "diff takes: diff <arrow> = <terms>")
            aid = toks[1]
            if aid in doc.diffs:
                raise QuiverParseError(lineno, f"duplicate differential for {aid!r}")
            terms = []
            for chunk in " ".join(toks[3:]).split(";"):
                parts = chunk.split()
                if len(parts) < 2:
                    raise QuiverParseError(
                        lineno, "each term needs a coefficient and at least one arrow id")
                coeff = _parse_coeff(parts[0], lineno)
                terms.append((coeff, tuple(parts[1:])))
            doc.diffs[aid] = terms
        else:
            raise QuiverParseError(lineno, f"unknown declaration {kind!r}")
    if not saw_header:
        raise QuiverParseError(1, "missing 'dgquiver 1' header")
    return doc


def parse_file(path) -> QuiverDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def load_quiver(path) -> DgQuiver:
    return parse_file(path).to_quiver()


def serialize(q: DgQuiver) -> str:
    """Canonical text form: sorted vertices, arrows and differentials."""
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION}"]
    for v in sorted(q.vertices):
        lines.append(f"vertex {v.id}")
    for a in sorted(q.arrows):
        lines.append(f"arrow {a.id} {a.source.id} {a.target.id} {a.degree}")
    for aid in sorted(q.differential):
        terms = []
        for coeff, p in q.differential[aid].terms:
            ids = " ".join(b.id for b in p.arrows)
            terms.append(f"{coeff} {ids}")
        lines.append(f"diff {aid} = " + " ; ".join(terms))
    return "\n".join(lines) + "\n"
