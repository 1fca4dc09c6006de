"""Sparse exact-rational linear algebra.

Everything downstream (chain complexes, homology dimensions, exactness
defects) reduces to rank / kernel / image / solve over the rationals, so
this module is the only place elimination happens.  All arithmetic is
exact; there are no tolerances anywhere.

Determinism contract: elimination always pivots on the leftmost nonzero
column, choosing the smallest-magnitude candidate entry (lowest row index
on ties).  Kernel, image and cokernel bases are read off the reduced
echelon form, so identical inputs give bit-identical bases.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)


class CompositionNotZero(Exception):
    """The candidate pair of maps does not even form a complex."""


def format_q(x) -> str:
    """Render a rational as 'p' or 'p/q' (never a float)."""
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%s/%s" % (x.numerator, x.denominator)


def parse_q(s):
    """Parse 'p' or 'p/q' into an exact rational."""
    s = str(s).strip()
    if "/" in s:
        num, den = s.split("/")
        return Q(int(num), int(den))
    return Q(int(s))


class Matrix:
    """Immutable sparse matrix over the exact rationals.

    Entries are stored in a dict {(row, col): value} holding only nonzero
    values.  Instances are treated as immutable after construction and are
    safe to share between threads.
    """

    __slots__ = ("rows", "cols", "entries", "_cache")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        ents = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError("entry index (%d,%d) out of bounds" % (r, c))
                v = Q(v)
                if v:
                    ents[(r, c)] = v
        self.entries = ents
        self._cache = {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, {(i, i): ONE for i in range(n)})

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols)

    @staticmethod
    def from_dense(data, rows=None, cols=None) -> "Matrix":
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        ents = {}
        for r, row in enumerate(data):
            for c, v in enumerate(row):
                v = Q(v)
                if v:
                    ents[(r, c)] = v
        return Matrix(rows, cols, ents)

    @staticmethod
    def from_columns(rows: int, columns) -> "Matrix":
        """Build from a list of sparse columns, each a dict {row: value}."""
        ents = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    ents[(r, c)] = v
        return Matrix(rows, len(columns), ents)

    # -- views --------------------------------------------------------

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def column_dicts(self):
        cols = self._cache.get("cols")
        if cols is None:
            cols = [dict() for _ in range(self.cols)]
            for (r, c), v in self.entries.items():
                cols[c][r] = v
            self._cache["cols"] = cols
        return cols

    def column(self, c: int) -> dict:
        return dict(self.column_dicts()[c])

    def to_dense(self):
        data = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            data[r][c] = v
        return data

    # -- arithmetic ---------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        left_cols = self.column_dicts()
        out = {}
        for (j, k), w in other.entries.items():
            for i, v in left_cols[j].items():
                key = (i, k)
                s = out.get(key, ZERO) + v * w
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return Matrix(self.rows, other.cols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        out = dict(self.entries)
        for key, v in other.entries.items():
            s = out.get(key, ZERO) + v
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return Matrix(self.rows, self.cols, out)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(Q(-1))

    def scale(self, a) -> "Matrix":
        a = Q(a)
        if not a:
            return Matrix.zero(self.rows, self.cols)
        return Matrix(self.rows, self.cols,
                      {k: a * v for k, v in self.entries.items()})

    def apply(self, vec) -> list:
        """Matrix times a dense vector (list)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [ZERO] * self.rows
        for (r, c), v in self.entries.items():
            if vec[c]:
                out[r] += v * vec[c]
        return out

    def apply_dict(self, vec: dict) -> dict:
        """Matrix times a sparse vector {index: value}."""
        out = {}
        cols = self.column_dicts()
        for c, x in vec.items():
            if not x:
                continue
            for r, v in cols[c].items():
                s = out.get(r, ZERO) + v * x
                if s:
                    out[r] = s
                elif r in out:
                    del out[r]
        return out

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix)
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return "Matrix(%dx%d, %d nonzero)" % (self.rows, self.cols, len(self.entries))


def hstack(mats) -> Matrix:
    mats = list(mats)
    rows = mats[0].rows if mats else 0
    ents = {}
    off = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("row count mismatch in hstack")
        for (r, c), v in m.entries.items():
            ents[(r, c + off)] = v
        off += m.cols
    return Matrix(rows, off, ents)


# -- elimination core ------------------------------------------------


def _echelon(row_dicts, ncols, *, reduce=True, pivot_limit=None):
    """Sparse Gaussian elimination with the deterministic pivot rule.

    Pivots on the leftmost nonzero column; within a column picks the
    smallest-magnitude entry (lowest row index on ties).  With
    reduce=True the result is the reduced row echelon form (pivots 1,
    zeros above and below).  Columns >= pivot_limit are never pivoted on
    (used for augmented solves).

    Returns (pivots, leftover) where pivots is a list of (col, row_dict)
    in increasing column order and leftover are the surviving non-pivot
    rows (nonzero only in columns >= pivot_limit when the input rows are
    consistent).
    """
    rows = [dict(r) for r in row_dicts]
    if pivot_limit is None:
        pivot_limit = ncols
    colmap = {}
    for i, r in enumerate(rows):
        for c in r:
            colmap.setdefault(c, set()).add(i)

    pivot_of = {}
    for c in range(pivot_limit):
        live = colmap.get(c)
        if not live:
            continue
        cand = [i for i in live if i not in pivot_of]
        if not cand:
            continue
        p = min(cand, key=lambda i: (abs(rows[i][c]), i))
        prow = rows[p]
        pv = prow[c]
        if reduce and pv != ONE:
            inv = ONE / pv
            for cc in prow:
                prow[cc] *= inv
            pv = ONE
        if reduce:
            targets = [i for i in live if i != p]
        else:
            targets = [i for i in live if i != p and i not in pivot_of]
        for i in sorted(targets):
            trow = rows[i]
            f = trow[c] / pv
            for cc, w in prow.items():
                s = trow.get(cc, ZERO) - f * w
                if s:
                    if cc not in trow:
                        colmap.setdefault(cc, set()).add(i)
                    trow[cc] = s
                else:
                    if cc in trow:
                        del trow[cc]
                        colmap[cc].discard(i)
        pivot_of[p] = c

    pivots = sorted(((c, rows[p]) for p, c in pivot_of.items()), key=lambda t: t[0])
    leftover = [rows[i] for i in range(len(rows))
                if i not in pivot_of and rows[i]]
    return pivots, leftover


def _rref_of_transpose(M: Matrix):
    """Cached RREF of the transpose (rows = columns of M)."""
    got = M._cache.get("rref_t")
    if got is None:
        got = _echelon(M.transpose().row_dicts(), M.rows, reduce=True)
        M._cache["rref_t"] = got
    return got


def _rref(M: Matrix):
    got = M._cache.get("rref")
    if got is None:
        got = _echelon(M.row_dicts(), M.cols, reduce=True)
        M._cache["rref"] = got
    return got


# -- subspaces -------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim given by a full-column-rank basis.

    When the basis is in canonical echelon position, coordinate_rows
    lists one row index per basis column at which that column is 1 and
    all other columns vanish; coordinates of a member vector can then be
    read off directly.
    """

    ambient_dim: int
    basis: Matrix
    coordinate_rows: tuple | None = None

    @property
    def dim(self) -> int:
        return self.basis.cols

    def coords(self, vec: dict):
        """Coordinates of a sparse vector in the basis, or None if the
        vector is outside the subspace."""
        if self.coordinate_rows is not None:
            x = {}
            for k, r in enumerate(self.coordinate_rows):
                v = vec.get(r)
                if v:
                    x[k] = v
            # membership check: basis @ x must reproduce vec exactly
            if self.basis.apply_dict(x) != {r: v for r, v in vec.items() if v}:
                return None
            return x
        sol = solve_many(self.basis, Matrix.from_columns(self.ambient_dim, [vec]))
        if sol is None:
            return None
        return sol.column(0)

    def contains(self, vec: dict) -> bool:
        return self.coords(vec) is not None


@dataclass(frozen=True)
class Cokernel:
    """Quotient of the target of a matrix by its column space.

    projection has full row rank and projection @ M = 0; section embeds
    quotient coordinates back into the ambient space with
    projection @ section = identity.
    """

    projection: Matrix
    dim: int
    section: Matrix


# -- the public operations -------------------------------------------


def rank(M: Matrix) -> int:
    got = M._cache.get("rank")
    if got is None:
        if "rref" in M._cache:
            got = len(M._cache["rref"][0])
        elif "rref_t" in M._cache:
            got = len(M._cache["rref_t"][0])
        else:
            pivots, _ = _echelon(M.row_dicts(), M.cols, reduce=False)
            got = len(pivots)
        M._cache["rank"] = got
    return got


def kernel_basis(M: Matrix) -> Subspace:
    """Echelon-deterministic basis of {x : Mx = 0}."""
    pivots, _ = _rref(M)
    pivot_cols = {c for c, _ in pivots}
    free_cols = [c for c in range(M.cols) if c not in pivot_cols]
    columns = []
    for f in free_cols:
        col = {f: ONE}
        for pc, row in pivots:
            w = row.get(f)
            if w:
                col[pc] = -w
        columns.append(col)
    M._cache.setdefault("rank", len(pivots))
    return Subspace(M.cols, Matrix.from_columns(M.cols, columns),
                    coordinate_rows=tuple(free_cols))


def image_basis(M: Matrix) -> Subspace:
    """Echelon-deterministic basis of the column space."""
    pivots, _ = _rref_of_transpose(M)
    columns = [dict(row) for _, row in pivots]
    M._cache.setdefault("rank", len(pivots))
    return Subspace(M.rows, Matrix.from_columns(M.rows, columns),
                    coordinate_rows=tuple(c for c, _ in pivots))


def cokernel(M: Matrix) -> Cokernel:
    """Projection of the target of M onto a complement of Im M.

    The quotient is coordinatized by the non-pivot rows of the echelon
    form of the column space; the section embeds those coordinates back.
    """
    pivots, _ = _rref_of_transpose(M)
    pivot_coords = [c for c, _ in pivots]
    pivot_set = set(pivot_coords)
    free_coords = [q for q in range(M.rows) if q not in pivot_set]
    ents = {}
    for qi, q in enumerate(free_coords):
        ents[(qi, q)] = ONE
        for pc, row in pivots:
            w = row.get(q)
            if w:
                ents[(qi, pc)] = -w
    projection = Matrix(len(free_coords), M.rows, ents)
    section = Matrix(M.rows, len(free_coords),
                     {(q, qi): ONE for qi, q in enumerate(free_coords)})
    M._cache.setdefault("rank", len(pivots))
    return Cokernel(projection, len(free_coords), section)


def solve(M: Matrix, b, free_value=0):
    """One solution of Mx = b (dense vector), or None when b is outside
    the image.  Free variables are set to free_value (default 0) under
    leftmost-pivot elimination, which makes the selection deterministic.
    """
    if len(b) != M.rows:
        raise ValueError("right-hand side length mismatch")
    col = {i: Q(v) for i, v in enumerate(b) if Q(v)}
    sol = solve_many(M, Matrix.from_columns(M.rows, [col]), free_value=free_value)
    if sol is None:
        return None
    c = sol.column(0)
    return [c.get(i, ZERO) for i in range(M.cols)]

def solve_many(M: Matrix, B: Matrix, free_value=0):
    """Solve MX = B for all columns of B at once, or None if any column
    is inconsistent.  Same deterministic free-variable convention as
    solve()."""
    if B.rows != M.rows:
        raise ValueError("right-hand side row count mismatch")
    fv = Q(free_value)
    n = M.cols
    rows = M.row_dicts()
    for (r, c), v in B.entries.items():
        rows[r][n + c] = v
    pivots, leftover = _echelon(rows, n + B.cols, reduce=True, pivot_limit=n)
    for row in leftover:
        # a surviving row supported only on augmented columns witnesses
        # inconsistency of the corresponding right-hand sides
        if any(c >= n and v for c, v in row.items()):
            return None
    pivot_cols = {c for c, _ in pivots}
    free_cols = [c for c in range(n) if c not in pivot_cols]
    out = {}
    for k in range(B.cols):
        for pc, row in pivots:
            val = row.get(n + k, ZERO)
            if fv:
                for f in free_cols:
                    w = row.get(f)
                    if w:
                        val -= fv * w
            if val:
                out[(pc, k)] = val
        if fv:
            for f in free_cols:
                out[(f, k)] = fv
    return Matrix(n, B.cols, out)


def kron(M: Matrix, N: Matrix) -> Matrix:
    """Kronecker product, leftmost factor most significant: entry
    ((i1, i2), (j1, j2)) lives at (i1 * N.rows + i2, j1 * N.cols + j2).
    This is the same index map used for chain-space basis tensors."""
    ents = {}
    for (r1, c1), v1 in M.entries.items():
        for (r2, c2), v2 in N.entries.items():
            ents[(r1 * N.rows + r2, c1 * N.cols + c2)] = v1 * v2
    return Matrix(M.rows * N.rows, M.cols * N.cols, ents)


def kron_power(M: Matrix, n: int) -> Matrix:
    if n < 1:
        raise ValueError("kron_power needs n >= 1")
    out = M
    for _ in range(n - 1):
        out = kron(out, M)
    return out


def exactness_defect(f: Matrix, g: Matrix) -> int:
    """dim Ker g - rank f for a composable pair with g(f(x)) = 0; zero
    exactly when the pair is exact at the middle space."""
    if g.cols != f.rows:
        raise ValueError("maps are not composable")
    comp = g @ f
    if not comp.is_zero():
        raise CompositionNotZero("g o f != 0; the pair is not a complex")
    return (g.cols - rank(g)) - rank(f)
