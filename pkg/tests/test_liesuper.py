import pytest
from hypothesis import given, strategies as st

from d21a.liesuper import (
    EVEN_NAMES,
    ODD_NAMES,
    AlgebraError,
    build_gamma,
    check_jacobi,
    d21a,
    form_decomposition,
    gamma_generic,
    invariant_form,
    invariant_form_space,
    killing_form,
    sl2,
    structure_parameters,
)
from d21a.scalars import rf

nonzero = st.integers(-7, 7).filter(bool)


def test_dimension_and_parities():
    alg = d21a()
    assert alg.sdim() == (9, 8)
    assert alg.names() == EVEN_NAMES + ODD_NAMES


def test_jacobi_generic_family():
    assert not check_jacobi(gamma_generic())


@given(nonzero, nonzero)
def test_jacobi_at_integer_points(s1, s2):
    # Jacobi holds exactly when s1 + s2 + s3 = 0
    assert not check_jacobi(build_gamma(s1, s2, -s1 - s2))


def test_jacobi_fails_off_the_plane():
    assert check_jacobi(build_gamma(1, 1, 1), limit=1)


def test_supercommutativity_of_bracket():
    alg = d21a()
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = alg.bracket_basis(i, j)
            rhs = alg.bracket_basis(j, i)
            sgn = -(-1) ** (alg.parity(i) * alg.parity(j))
            assert {k: v for k, v in lhs.items()} == {k: v * sgn for k, v in rhs.items()}


def test_structure_parameters_read_back():
    assert structure_parameters(d21a()) == [rf("-1-a"), rf(1), rf("a")]


def test_killing_form_vanishes_but_sl2_does_not():
    assert killing_form(d21a()).is_zero()
    K = killing_form(sl2())
    assert K("H", "H") == 8


def test_invariant_form_unique_and_normalized():
    forms, _ = invariant_form_space(gamma_generic())
    assert len(forms) == 1
    B = invariant_form(d21a())
    assert not B.invariance_defects()
    assert B.is_consistent() and B.is_supersymmetric()
    for i, s in enumerate(structure_parameters(d21a()), start=1):
        assert B(f"H{i}", f"H{i}") == 1 / s
    c = form_decomposition(B)
    assert len(c) == 4 and not c[3].is_zero()


def test_unknown_basis_name():
    with pytest.raises((KeyError, AlgebraError)):
        d21a().index("Z9")
