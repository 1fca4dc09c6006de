"""Finite-dimensional associative algebras, homomorphisms and extensions.

An algebra is a structure-constant tensor over the exact rationals in a
fixed basis: e_i * e_j = sum_k c[i][j][k] e_k.  Extensions are short
exact sequences 0 -> B -> A -> D -> 0 of algebras given by explicit
matrices for the inclusion and the quotient map.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (
    Matrix, Q, ZERO, ONE, Subspace,
    cokernel, image_basis, kernel_basis, rank, solve,
)


class Algebra:
    """Associative algebra given by structure constants.

    mult maps a basis pair (i, j) to a sparse dict {k: value}; absent
    pairs multiply to zero.  Instances are immutable after construction.
    """

    def __init__(self, dim: int, basis_names=None, mult=None):
        if dim < 0:
            raise ValueError("negative dimension")
        self.dim = dim
        self.basis_names = list(basis_names) if basis_names else [
            "e%d" % i for i in range(dim)]
        if len(self.basis_names) != dim:
            raise ValueError("basis name count does not match dimension")
        table = {}
        if mult:
            for (i, j), comp in mult.items():
                if not (0 <= i < dim and 0 <= j < dim):
                    raise ValueError("structure constant index out of range")
                clean = {}
                for k, v in comp.items():
                    if not 0 <= k < dim:
                        raise ValueError("structure constant index out of range")
                    v = Q(v)
                    if v:
                        clean[k] = v
                if clean:
                    table[(i, j)] = clean
        self.mult = table

    def product_basis(self, i: int, j: int) -> dict:
        """e_i * e_j as a sparse coefficient vector."""
        return self.mult.get((i, j), {})

    def product(self, x: dict, y: dict) -> dict:
        """Product of two elements given as sparse coefficient vectors."""
        out = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, c in self.mult.get((i, j), {}).items():
                    s = out.get(k, ZERO) + xi * yj * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    def left_mult_matrix(self, x: dict) -> Matrix:
        """Matrix of b |-> x * b."""
        ents = {}
        for j in range(self.dim):
            for k, v in self.product(x, {j: ONE}).items():
                ents[(k, j)] = v
        return Matrix(self.dim, self.dim, ents)

    def __repr__(self):
        return "Algebra(dim=%d)" % self.dim


def validate_algebra(alg: Algebra):
    """Exhaustively check associativity.

    Returns a list of violations, one per failing triple (i, j, k), each
    with both evaluated sides; the empty list means the algebra is valid.
    """
    violations = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                left = alg.product(alg.product_basis(i, j), {k: ONE})
                right = alg.product({i: ONE}, alg.product_basis(j, k))
                if left != right:
                    violations.append({"triple": (i, j, k),
                                       "left": left, "right": right})
    return violations


# -- presets ---------------------------------------------------------


def preset(name: str, **params) -> Algebra:
    """Canonical example algebras.

    matrix(k): full k x k matrices, basis e_pq row-major.
    truncated_poly(m): Q[x]/x^m, basis 1, x, ..., x^(m-1).
    zero_mult(d): d-dimensional space with all products zero.
    upper_triangular(k): upper-triangular k x k matrices.
    direct_sum(a, b): product algebra on the concatenated bases.
    field(): the 1-dimensional unital algebra.
    """
    if name == "field":
        return Algebra(1, ["1"], {(0, 0): {0: ONE}})
    if name == "zero_mult":
        d = int(params["d"])
        if d < 0:
            raise ValueError("zero_mult needs d >= 0")
        return Algebra(d, None, {})
    if name == "truncated_poly":
        m = int(params["m"])
        if m <= 0:
            raise ValueError("truncated_poly needs m >= 1")
        names = ["1"] + ["x^%d" % p if p > 1 else "x" for p in range(1, m)]
        mult = {}
        for i in range(m):
            for j in range(m):
                if i + j < m:
                    mult[(i, j)] = {i + j: ONE}
        return Algebra(m, names, mult)
    if name == "matrix":
        k = int(params["k"])
        if k <= 0:
            raise ValueError("matrix needs k >= 1")
        pairs = [(p, q) for p in range(k) for q in range(k)]
        idx = {pq: n for n, pq in enumerate(pairs)}
        names = ["e%d%d" % (p + 1, q + 1) for p, q in pairs]
        mult = {}
        for a, (p, q) in enumerate(pairs):
            for b, (r, s) in enumerate(pairs):
                if q == r:
                    mult[(a, b)] = {idx[(p, s)]: ONE}
        return Algebra(k * k, names, mult)
    if name == "upper_triangular":
        k = int(params["k"])
        if k <= 0:
            raise ValueError("upper_triangular needs k >= 1")
        pairs = [(p, q) for p in range(k) for q in range(p, k)]
        idx = {pq: n for n, pq in enumerate(pairs)}
        names = ["e%d%d" % (p + 1, q + 1) for p, q in pairs]
        mult = {}
        for a, (p, q) in enumerate(pairs):
            for b, (r, s) in enumerate(pairs):
                if q == r:
                    mult[(a, b)] = {idx[(p, s)]: ONE}
        return Algebra(len(pairs), names, mult)
    if name == "direct_sum":
        a: Algebra = params["a"]
        b: Algebra = params["b"]
        names = ["L." + n for n in a.basis_names] + ["R." + n for n in b.basis_names]
        mult = {}
        for (i, j), comp in a.mult.items():
            mult[(i, j)] = dict(comp)
        off = a.dim
        for (i, j), comp in b.mult.items():
            mult[(i + off, j + off)] = {k + off: v for k, v in comp.items()}
        return Algebra(a.dim + b.dim, names, mult)
    raise ValueError("unknown preset %r" % name)


# -- homomorphisms and extensions ------------------------------------


@dataclass(frozen=True)
class AlgebraHom:
    """Linear map between algebras, stored as a target.dim x source.dim
    matrix in the fixed bases."""

    source: Algebra
    target: Algebra
    matrix: Matrix

    def __post_init__(self):
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise ValueError("homomorphism matrix shape mismatch")


def validate_hom(hom: AlgebraHom):
    """Check multiplicativity on all basis pairs; returns violations."""
    violations = []
    for i in range(hom.source.dim):
        fi = hom.matrix.column(i)
        for j in range(hom.source.dim):
            fj = hom.matrix.column(j)
            lhs = hom.matrix.apply_dict(hom.source.product_basis(i, j))
            rhs = hom.target.product(fi, fj)
            if lhs != rhs:
                violations.append({"pair": (i, j), "image_of_product": lhs,
                                   "product_of_images": rhs})
    return violations


@dataclass(frozen=True)
class Extension:
    """0 -> B -i-> A -j-> D -> 0 with i injective onto a two-sided ideal
    and j the quotient map."""

    B: Algebra
    A: Algebra
    D: Algebra
    i: AlgebraHom
    j: AlgebraHom


def validate_extension(ext: Extension):
    """Check all extension invariants; returns None when valid, else a
    dict naming the first failing invariant."""
    if ext.i.source is not ext.B and ext.i.source.dim != ext.B.dim:
        return {"invariant": "shapes", "detail": "i does not start at B"}
    if ext.A.dim != ext.B.dim + ext.D.dim:
        return {"invariant": "dimension",
                "detail": "dim A = %d but dim B + dim D = %d"
                          % (ext.A.dim, ext.B.dim + ext.D.dim)}
    bad = validate_hom(ext.i)
    if bad:
        return {"invariant": "i multiplicative", "detail": bad[0]}
    bad = validate_hom(ext.j)
    if bad:
        return {"invariant": "j multiplicative", "detail": bad[0]}
    if rank(ext.i.matrix) != ext.B.dim:
        return {"invariant": "i injective", "detail": None}
    if rank(ext.j.matrix) != ext.D.dim:
        return {"invariant": "j surjective", "detail": None}
    ker_j = kernel_basis(ext.j.matrix)
    im_i = image_basis(ext.i.matrix)
    if ker_j.dim != im_i.dim:
        return {"invariant": "Im i = Ker j", "detail": "dimension mismatch"}
    for col in im_i.basis.column_dicts():
        if not ker_j.contains(col):
            return {"invariant": "Im i = Ker j", "detail": "Im i not in Ker j"}
    # two-sided ideal check (implied, but verified directly)
    for a in range(ext.A.dim):
        for col in im_i.basis.column_dicts():
            for prod in (ext.A.product({a: ONE}, col), ext.A.product(col, {a: ONE})):
                if prod and not ker_j.contains(prod):
                    return {"invariant": "i(B) two-sided ideal",
                            "detail": {"basis_index": a}}
    return None


# -- unit witnesses --------------------------------------------------


@dataclass(frozen=True)
class UnitWitness:
    """Outcome of the one-sided unit search: side is 'left', 'right',
    'two-sided' or 'none'; element is the coefficient vector when found."""

    side: str
    element: list | None = None

    @property
    def found(self) -> bool:
        return self.side != "none"


def _unit_system(alg: Algebra, side: str):
    # left: sum_i x_i c[i][j][k] = delta_jk ; right: sum_i x_i c[j][i][k]
    ents = {}
    rhs = []
    row = 0
    for j in range(alg.dim):
        for k in range(alg.dim):
            for i in range(alg.dim):
                c = (alg.product_basis(i, j) if side == "left"
                     else alg.product_basis(j, i)).get(k)
                if c:
                    ents[(row, i)] = c
            rhs.append(ONE if j == k else ZERO)
            row += 1
    return Matrix(row, alg.dim, ents), rhs


def find_one_sided_unit(alg: Algebra, side: str) -> UnitWitness:
    """Solve the exact unit equations e*b = b (left) or b*e = b (right)
    for all basis elements b.  Absence is a legal outcome, not an error.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if alg.dim == 0:
        return UnitWitness(side, [])
    M, rhs = _unit_system(alg, side)
    x = solve(M, rhs)
    if x is None:
        return UnitWitness("none")
    return UnitWitness(side, x)


def unit_witness(alg: Algebra) -> UnitWitness:
    """Best available unit: two-sided when both one-sided units exist
    (they then coincide), otherwise whichever side is found."""
    left = find_one_sided_unit(alg, "left")
    right = find_one_sided_unit(alg, "right")
    if left.found and right.found:
        # a left unit and a right unit are automatically equal
        return UnitWitness("two-sided", left.element)
    if left.found:
        return left
    if right.found:
        return right
    return UnitWitness("none")


# -- splittings and quotient construction ----------------------------


def find_splitting(ext: Extension) -> Matrix:
    """A linear right inverse of j (always exists here), computed by
    deterministic columnwise solves."""
    cols = []
    for q in range(ext.D.dim):
        rhs = [ONE if r == q else ZERO for r in range(ext.D.dim)]
        x = solve(ext.j.matrix, rhs)
        if x is None:
            raise ValueError("j is not surjective; extension invalid")
        cols.append({r: v for r, v in enumerate(x) if v})
    return Matrix.from_columns(ext.A.dim, cols)


def quotient_extension(A: Algebra, ideal_basis: Matrix,
                       ideal_names=None) -> Extension:
    """Build 0 -> B -> A -> A/ideal -> 0 from a basis of a two-sided
    ideal, with the deterministic echelon complement as the basis of the
    quotient."""
    if ideal_basis.rows != A.dim:
        raise ValueError("ideal basis ambient dimension mismatch")
    ideal = image_basis(ideal_basis)
    b_dim = ideal.dim
    # B structure constants: products of ideal basis vectors, expressed
    # back in the ideal basis (closure check included)
    bmult = {}
    bcols = ideal.basis.column_dicts()
    for bi, x in enumerate(bcols):
        for bj, y in enumerate(bcols):
            prod = A.product(x, y)
            if not prod:
                continue
            coords = ideal.coords(prod)
            if coords is None:
                raise ValueError("given subspace is not closed under multiplication")
            bmult[(bi, bj)] = coords
    names = list(ideal_names) if ideal_names else ["b%d" % i for i in range(b_dim)]
    B = Algebra(b_dim, names, bmult)

    cok = cokernel(ideal.basis)
    d_dim = cok.dim
    # D multiplies via lifts through the deterministic section
    dmult = {}
    for qi in range(d_dim):
        x = cok.section.column(qi)
        for qj in range(d_dim):
            y = cok.section.column(qj)
            prod = cok.projection.apply_dict(A.product(x, y))
            if prod:
                dmult[(qi, qj)] = prod
    # section columns are single coordinate embeddings; name quotient
    # basis vectors after the ambient coordinates they lift to
    dnames = [A.basis_names[next(iter(cok.section.column(qi)))] + "~"
              for qi in range(d_dim)]
    D = Algebra(d_dim, dnames, dmult)

    i = AlgebraHom(B, A, ideal.basis)
    j = AlgebraHom(A, D, cok.projection)
    ext = Extension(B, A, D, i, j)
    bad = validate_extension(ext)
    if bad is not None:
        raise ValueError("quotient construction produced an invalid extension: %r" % bad)
    return ext
