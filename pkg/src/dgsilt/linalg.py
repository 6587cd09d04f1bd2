"""Exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` (always in lowest terms, positive
denominator), so every result in this module is exact; there are no
tolerances anywhere. Vectors are sparse dicts ``column -> Fraction`` with
zero entries absent. Matrix sizes stay at desk scale (hundreds of rows),
so plain sparse Gaussian elimination is all we need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Vec = dict  # sparse vector: dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Mapping[int, object] | Iterable[tuple[int, object]] = ()) -> Vec:
    """Normalized sparse vector: Fractions only, zeros dropped."""
    items = entries.items() if isinstance(entries, Mapping) else entries
    out: Vec = {}
    for k, v in items:
        c = fr(v)
        if c:
            out[k] = out.get(k, ZERO) + c
            if not out[k]:
                del out[k]
    return out


def vec_axpy(acc: Vec, coeff: Fraction, v: Vec) -> Vec:
    """acc += coeff * v in place; returns acc with zeros dropped."""
    if not coeff:
        return acc
    for k, c in v.items():
        s = acc.get(k, ZERO) + coeff * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vec_scaled(v: Vec, coeff: Fraction) -> Vec:
    if not coeff:
        return {}
    return {k: coeff * c for k, c in v.items()}


class Matrix:
    """Rational matrix with sparse row storage.

    Shape is explicit (``nrows`` x ``ncols``); entry access is total within
    bounds and returns 0 for absent entries.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Vec] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix shape must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            self.rows = [dict() for _ in range(nrows)]
        else:
            if len(rows) != nrows:
                raise ValueError("row count mismatch")
            self.rows = [vec(r) for r in rows]
        for r in self.rows:
            if any(c < 0 or c >= ncols for c in r):
                raise ValueError("column index out of range")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[object]]) -> "Matrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = []
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            rows.append({j: fr(x) for j, x in enumerate(row) if fr(x)})
        return cls(nrows, ncols, rows)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def entry(self, r: int, c: int) -> Fraction:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError((r, c))
        return self.rows[r].get(c, ZERO)

    def set_entry(self, r: int, c: int, value) -> None:
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError((r, c))
        v = fr(value)
        if v:
            self.rows[r][c] = v
        else:
            self.rows[r].pop(c, None)

    def transpose(self) -> "Matrix":
        out = Matrix.zero(self.ncols, self.nrows)
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out.rows[c][r] = v
        return out

    def columns(self) -> list[Vec]:
        out: list[Vec] = [dict() for _ in range(self.ncols)]
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out[c][r] = v
        return out

    def apply(self, v: Vec) -> Vec:
        """Matrix times column vector."""
        out: Vec = {}
        for r, row in enumerate(self.rows):
            s = ZERO
            if len(row) <= len(v):
                for c, a in row.items():
                    b = v.get(c)
                    if b is not None:
                        s += a * b
            else:
                for c, b in v.items():
                    a = row.get(c)
                    if a is not None:
                        s += a * b
            if s:
                out[r] = s
        return out

    def compose(self, other: "Matrix") -> "Matrix":
        """self @ other."""
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in compose")
        out = Matrix.zero(self.nrows, other.ncols)
        for r, row in enumerate(self.rows):
            acc: Vec = {}
            for k, a in row.items():
                vec_axpy(acc, a, other.rows[k])
            out.rows[r] = acc
        return out

    def is_zero(self) -> bool:
        return all(not row for row in self.rows)

    def to_lists(self) -> list[list[Fraction]]:
        return [[self.rows[r].get(c, ZERO) for c in range(self.ncols)] for r in range(self.nrows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"


class Echelon:
    """Incremental reduced row echelon with optional combination tracking.

    Stored rows have pivot entry 1 and are fully reduced against each other.
    With ``track=True`` every stored row also remembers how it was formed
    from the inserted vectors, so membership queries can be turned into
    explicit coefficients via :meth:`solve`.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.rows: list[Vec] = []
        self.combos: list[Vec] = []
        self.row_by_pivot: dict[int, int] = {}
        self.n_inserted = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: Vec) -> tuple[Vec, Vec]:
        r = dict(v)
        combo: Vec = {}
        while True:
            hit = None
            for c in r:
                i = self.row_by_pivot.get(c)
                if i is not None:
                    hit = (c, i)
                    break
            if hit is None:
                return r, combo
            c, i = hit
            coeff = r[c]
            vec_axpy(r, -coeff, self.rows[i])
            if self.track:
                vec_axpy(combo, coeff, self.combos[i])

    def reduce(self, v: Vec) -> Vec:
        return self._reduce(v)[0]

    def contains(self, v: Vec) -> bool:
        return not self._reduce(v)[0]

    def insert(self, v: Vec) -> int | None:
        """Insert a vector; returns its insertion index if it enlarged the span."""
        idx = self.n_inserted
        self.n_inserted += 1
        residual, combo = self._reduce(v)
        if not residual:
            return None
        pivot = min(residual)
        lead = residual[pivot]
        row = {k: c / lead for k, c in residual.items()}
        if self.track:
            newcombo = vec_scaled(combo, -ONE / lead)
            newcombo[idx] = newcombo.get(idx, ZERO) + ONE / lead
            if not newcombo[idx]:
                del newcombo[idx]
        else:
            newcombo = {}
        # keep full reduction: clear the new pivot from every stored row
        for j, stored in enumerate(self.rows):
            coeff = stored.get(pivot)
            if coeff:
                vec_axpy(stored, -coeff, row)
                if self.track:
                    vec_axpy(self.combos[j], -coeff, newcombo)
        self.rows.append(row)
        self.combos.append(newcombo)
        self.row_by_pivot[pivot] = len(self.rows) - 1
        return idx

    def solve(self, v: Vec) -> Vec | None:
        """Coefficients over inserted vectors reproducing v, or None."""
        if not self.track:
            raise ValueError("Echelon(track=True) required for solve")
        residual, combo = self._reduce(v)
        if residual:
            return None
        return combo


def rank(m: Matrix) -> int:
    """Rank over the rationals, exact."""
    ech = Echelon()
    for row in m.rows:
        ech.insert(row)
    return ech.dim


def nullspace_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : m x = 0}, one dense vector per free column."""
    ech = Echelon()
    for row in m.rows:
        ech.insert(row)
    pivots = set(ech.row_by_pivot)
    basis = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        x = {f: ONE}
        for p, i in ech.row_by_pivot.items():
            c = ech.rows[i].get(f)
            if c:
                x[p] = -c
        basis.append(tuple(x.get(c, ZERO) for c in range(m.ncols)))
    return basis


@dataclass(frozen=True)
class ChainSpaces:
    """A bounded cochain complex of rational vector spaces.

    Component k lives in degree ``start + k``; ``maps[k]`` is the degree +1
    differential from component k to component k+1 (shape dims[k+1] x dims[k]).
    """

    start: int
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise ValueError("need exactly one map between consecutive components")
        for k, m in enumerate(self.maps):
            if m.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(f"map {k} has shape {m.shape}, expected "
                                 f"({self.dims[k + 1]}, {self.dims[k]})")

    def degrees(self) -> list[int]:
        return [self.start + k for k in range(len(self.dims))]

    def dim_at(self, degree: int) -> int:
        k = degree - self.start
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def map_at(self, degree: int) -> Matrix:
        k = degree - self.start
        if 0 <= k < len(self.maps):
            return self.maps[k]
        return Matrix.zero(self.dim_at(degree + 1), self.dim_at(degree))

    def is_complex(self) -> bool:
        return all(
            self.maps[k + 1].compose(self.maps[k]).is_zero()
            for k in range(len(self.maps) - 1)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** (self.start + k) * d for k, d in enumerate(self.dims))


def cohomology_dims(c: ChainSpaces) -> dict[int, int]:
    """dim H^n for every degree in range; degrees outside the range are zero.

    Rejects the input if consecutive maps do not compose to zero.
    """
    if not c.is_complex():
        raise ValueError("not a complex: consecutive maps do not compose to zero")
    ranks = [rank(m) for m in c.maps]
    out = {}
    for k, d in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out[c.start + k] = d - r_out - r_in
    return out


def _as_mult_table(dim: int, mult) -> dict[tuple[int, int], Vec]:
    table: dict[tuple[int, int], Vec] = {}
    for i in range(dim):
        for j in range(dim):
            entry = mult.get((i, j)) if isinstance(mult, Mapping) else mult(i, j)
            if entry:
                table[(i, j)] = vec(entry)
    return table


def _mul_vec_vec(table, u: Vec, v: Vec) -> Vec:
    out: Vec = {}
    for i, a in u.items():
        for j, b in v.items():
            t = table.get((i, j))
            if t:
                vec_axpy(out, a * b, t)
    return out


def algebra_radical(dim: int, mult, unit, *, check_associative: bool = True
                    ) -> list[tuple[Fraction, ...]]:
    """Basis of the Jacobson radical of a finite-dimensional unital algebra over Q.

    ``mult`` maps a basis-index pair (i, j) to the sparse expansion of
    basis_i * basis_j; ``unit`` is the unit as a sparse or dense vector. The
    radical is the kernel of the trace form of the left regular
    representation (valid in characteristic zero), re-run on the quotient
    until the quotient's radical is zero.

    Raises ValueError on non-associative structure constants.
    """
    table = _as_mult_table(dim, mult)
    unit_vec = vec(unit if isinstance(unit, Mapping) else dict(enumerate(unit)))

    if check_associative:
        for i in range(dim):
            for j in range(dim):
                ij = table.get((i, j), {})
                for k in range(dim):
                    left = _mul_vec_vec(table, ij, {k: ONE})
                    right = _mul_vec_vec(table, {i: ONE}, table.get((j, k), {}))
                    if left != right:
                        raise ValueError(
                            f"non-associative structure constants at ({i}, {j}, {k})"
                        )
        for i in range(dim):
            b = {i: ONE}
            if _mul_vec_vec(table, unit_vec, b) != b or _mul_vec_vec(table, b, unit_vec) != b:
                raise ValueError(f"unit law fails at basis element {i}")

    def trace_form_kernel(d: int, tbl) -> list[Vec]:
        # tr(L_{b_m}) from the regular representation
        tr = [sum((tbl.get((m, i), {}).get(i, ZERO) for i in range(d)), ZERO)
              for m in range(d)]
        gram = Matrix.zero(d, d)
        for i in range(d):
            for j in range(d):
                prod = tbl.get((i, j))
                if not prod:
                    continue
                s = sum((c * tr[m] for m, c in prod.items()), ZERO)
                if s:
                    gram.rows[i][j] = s
        return [vec(dict(enumerate(x))) for x in nullspace_basis(gram)]

    radical = trace_form_kernel(dim, table)

    # Safety loop: quotient out and re-run until the quotient radical is zero.
    while True:
        span = Echelon()
        for r in radical:
            span.insert(r)
        reps = [i for i in range(dim) if span.insert({i: ONE}) is not None]
        if not reps:
            break
        solver = Echelon(track=True)
        for r in radical:
            solver.insert(r)
        offset = len(radical)
        for i in reps:
            solver.insert({i: ONE})
        qd = len(reps)
        qtable: dict[tuple[int, int], Vec] = {}
        for a in range(qd):
            for b in range(qd):
                prod = table.get((reps[a], reps[b]))
                if not prod:
                    continue
                coeffs = solver.solve(prod)
                if coeffs is None:
                    raise ValueError("radical candidate is not an ideal")
                q = {k - offset: c for k, c in coeffs.items() if k >= offset}
                if q:
                    qtable[(a, b)] = q
        extra = trace_form_kernel(qd, qtable)
        if not extra:
            break
        for x in extra:
            lifted: Vec = {}
            for k, c in x.items():
                lifted[reps[k]] = lifted.get(reps[k], ZERO) + c
            radical.append(vec(lifted))

    # normalize the output basis deterministically
    ech = Echelon()
    out = []
    for r in radical:
        if ech.insert(r) is not None:
            out.append(ech.rows[-1])
    return [tuple(r.get(c, ZERO) for c in range(dim)) for r in out]
