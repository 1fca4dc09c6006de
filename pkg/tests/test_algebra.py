"""Algebras, homomorphisms, extensions and unit witnesses."""

import pytest

from alghom.algebra import (
    Algebra, AlgebraHom, Extension, find_one_sided_unit, find_splitting,
    preset, quotient_extension, unit_witness, validate_algebra,
    validate_extension, validate_hom,
)
from alghom.corpus import CORPUS, build
from alghom.linalg import Matrix, ONE, Q


ALL_PRESETS = [
    preset("field"),
    preset("zero_mult", d=2),
    preset("truncated_poly", m=3),
    preset("matrix", k=2),
    preset("upper_triangular", k=2),
    preset("direct_sum", a=preset("field"), b=preset("matrix", k=2)),
]


@pytest.mark.parametrize("alg", ALL_PRESETS, ids=lambda a: repr(a))
def test_presets_associative(alg):
    assert validate_algebra(alg) == []


def test_corrupted_structure_constant_detected():
    # break associativity in the 2x2 matrix algebra
    A = preset("matrix", k=2)
    mult = dict(A.mult)
    key = next(iter(mult))
    mult[key] = {0: Q(1), 3: Q(1)}
    bad = Algebra(A.dim, A.basis_names, mult)
    violations = validate_algebra(bad)
    assert violations
    assert all("triple" in v for v in violations)


def test_matrix_units_multiplication():
    A = preset("matrix", k=2)
    # e_pq e_rs = delta_qr e_ps with row-major basis order
    i = A.basis_names.index
    assert A.product_basis(i("e11"), i("e12")) == {i("e12"): ONE}
    assert A.product_basis(i("e12"), i("e21")) == {i("e11"): ONE}
    assert A.product_basis(i("e12"), i("e12")) == {}


def test_unit_witnesses():
    assert unit_witness(preset("field")).side == "two-sided"
    assert unit_witness(preset("matrix", k=3)).side == "two-sided"
    assert unit_witness(preset("zero_mult", d=2)).side == "none"
    assert unit_witness(build("left_unital_corner").B).side == "left"
    assert unit_witness(build("right_unital_corner").B).side == "right"


def test_unit_element_actually_a_unit():
    A = preset("truncated_poly", m=4)
    w = unit_witness(A)
    assert w.side == "two-sided"
    e = {i: c for i, c in enumerate(w.element) if c}
    for k in range(A.dim):
        assert A.product(e, {k: ONE}) == {k: ONE}
        assert A.product({k: ONE}, e) == {k: ONE}


def test_one_sided_unit_search_sides():
    B = build("left_unital_corner").B
    assert find_one_sided_unit(B, "left").found
    assert not find_one_sided_unit(B, "right").found


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_extensions_valid(name):
    assert validate_extension(build(name)) is None


def test_validate_extension_rejects_non_ideal():
    # span{e11} in upper_triangular(2) is not a two-sided ideal
    A = preset("upper_triangular", k=2)
    idx = A.basis_names.index("e11")
    basis = Matrix(A.dim, 1, {(idx, 0): ONE})
    with pytest.raises(ValueError):
        quotient_extension(A, basis, ["e11"])


def test_validate_extension_rejects_broken_maps():
    ext = build("split_product")
    wrong_i = AlgebraHom(ext.B, ext.A, Matrix.zero(ext.A.dim, ext.B.dim))
    bad = Extension(ext.B, ext.A, ext.D, wrong_i, ext.j)
    assert validate_extension(bad) is not None


def test_hom_multiplicativity_check():
    A = preset("field")
    B = preset("zero_mult", d=1)
    not_hom = AlgebraHom(A, B, Matrix.identity(1))
    assert validate_hom(not_hom) is not None


def test_quotient_extension_structure():
    ext = build("nilpotent_corner")
    # D is Q x Q: two orthogonal idempotents
    assert ext.D.dim == 2
    assert validate_algebra(ext.D) == []
    assert unit_witness(ext.D).side == "two-sided"


def test_find_splitting_is_linear_section():
    ext = build("split_product")
    s = find_splitting(ext)
    assert ext.j.matrix @ s == Matrix.identity(ext.D.dim)


def test_extension_admissibility_everywhere():
    """Every finite-dimensional extension admits a linear splitting."""
    for name in sorted(CORPUS):
        ext = build(name)
        s = find_splitting(ext)
        assert ext.j.matrix @ s == Matrix.identity(ext.D.dim)
