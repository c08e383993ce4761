import random

import pytest
from hypothesis import given, strategies as st

from d21a.liesuper import build_gamma
from d21a.scalars import rf
from d21a.superfields import (
    M14,
    M24,
    M24_FLAG,
    M34_DIAMOND,
    MODELS,
    SYM33_COORDS,
    SYM33_WEIGHTS,
    Coordinates,
    SuperPolynomial,
    SuperVectorField,
    frame_symmetries,
    homomorphism_defect,
    j_invariant_of,
    lift_homomorphism_check,
    parameter_invariant,
    parse_super,
    random_superpoly,
    s3_orbit,
    sdim_of,
    super_bracket,
    sym33_distribution,
    symmetry_check,
    symmetry_from_pair,
)

seeds = st.integers(0, 10**6)
C = Coordinates(("x", "y"), ("u", "v", "w"))


def rpoly(rng, coords=C, parity=None):
    return random_superpoly(coords, rng, parity if parity is not None else rng.randint(0, 1))


def rfield(rng, coords=C, parity=None):
    parity = parity if parity is not None else rng.randint(0, 1)
    coeffs = {}
    for name in rng.sample(coords.names, 2):
        # coefficient parity must make the field homogeneous
        coeffs[name] = rpoly(rng, coords, (parity + coords.parity(name)) % 2)
    return SuperVectorField(coords, coeffs)


def test_odd_generators_square_to_zero():
    u = SuperPolynomial.gen(C, "u")
    assert (u * u).is_zero()


@given(seeds)
def test_supercommutativity(seed):
    rng = random.Random(seed)
    f, g = rpoly(rng), rpoly(rng)
    assert f * g == g * f * (-1) ** (f.parity * g.parity)


@given(seeds)
def test_derivatives_are_superderivations(seed):
    rng = random.Random(seed)
    f, g = rpoly(rng), rpoly(rng)
    for name in C.names:
        lhs = (f * g).diff(name)
        rhs = f.diff(name) * g + f * g.diff(name) * (-1) ** (f.parity * C.parity(name))
        assert lhs == rhs


@given(seeds)
def test_parse_round_trip(seed):
    f = rpoly(random.Random(seed))
    assert parse_super(str(f), C) == f


@given(seeds)
def test_field_bracket_super_antisymmetry_and_jacobi(seed):
    rng = random.Random(seed)
    X, Y, Z = rfield(rng), rfield(rng), rfield(rng)
    px, py = X.parity, Y.parity
    assert super_bracket(X, Y) == super_bracket(Y, X).__rmul__(-(-1) ** (px * py))
    lhs = super_bracket(X, super_bracket(Y, Z))
    rhs = super_bracket(super_bracket(X, Y), Z) + super_bracket(Y, super_bracket(X, Z)).__rmul__((-1) ** (px * py))
    assert lhs == rhs


@pytest.mark.parametrize("name", sorted(MODELS))
def test_contact_fields_form_a_homomorphism(name):
    model = MODELS[name]
    rng = random.Random(11)
    for _ in range(8):
        f, g = rpoly(rng, model.coords), rpoly(rng, model.coords)
        assert homomorphism_defect(model, f, g).is_zero()


@given(seeds)
def test_odd_bracket_jacobi(seed):
    rng = random.Random(seed)
    m = M34_DIAMOND
    f, g, h = (rpoly(rng, m.coords) for _ in range(3))
    pf, pg = f.parity, g.parity
    lhs = m.bracket(f, m.bracket(g, h))
    rhs = m.bracket(m.bracket(f, g), h) + m.bracket(g, m.bracket(f, h)).scale((-1) ** ((pf + 1) * (pg + 1)))
    assert lhs == rhs


def test_graded_dimensions_of_contact_algebras():
    assert [M14.graded_dims(k) for k in range(-2, 3)] == [(1, 0), (0, 4), (7, 0), (0, 8), (8, 0)]
    assert [M24.graded_dims(k) for k in range(-3, 0)] == [(1, 0), (0, 2), (1, 2)]
    assert M24_FLAG.graded_dims(-4) == (1, 0)


def test_lift_to_one_jets_is_a_homomorphism():
    rng = random.Random(3)
    pairs = [(rpoly(rng, M14.coords), rpoly(rng, M14.coords)) for _ in range(10)]
    assert lift_homomorphism_check(pairs)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=11).filter(lambda a: a not in (0, -1)))
def test_j_invariant_constant_on_s3_orbit(a):
    J = j_invariant_of(a)
    for b in s3_orbit(a):
        assert j_invariant_of(b) == J


@given(st.integers(-6, 6).filter(bool), st.integers(-6, 6).filter(bool))
def test_parameter_invariant_recovers_j(s2, s3):
    if s2 + s3 == 0:
        return
    inv = parameter_invariant(build_gamma(-s2 - s3, s2, s3))
    assert inv.e1.is_zero()
    assert inv.J == j_invariant_of(rf(s3) / rf(s2))


SUB = Coordinates(("y3",), ("xi1", "xi2", "xi3"))


@given(seeds)
def test_pairs_give_symmetries(seed):
    rng = random.Random(seed)
    D = sym33_distribution()
    h = random_superpoly(SUB, rng, rng.randint(0, 1)).embed(SYM33_COORDS)
    g = random_superpoly(SUB, rng, rng.randint(0, 1)).embed(SYM33_COORDS)
    assert symmetry_check(symmetry_from_pair(h, g), D)


def test_printed_pair_formula_needs_h_zero():
    D = sym33_distribution()
    zero = SuperPolynomial(SYM33_COORDS)
    g = parse_super("y3*xi1", SYM33_COORDS)
    h = parse_super("xi1*xi2", SYM33_COORDS)
    assert symmetry_check(symmetry_from_pair(zero, g, printed=True), D)
    assert not symmetry_check(symmetry_from_pair(h, g, printed=True), D)
    assert symmetry_check(symmetry_from_pair(h, g), D)


def test_graded_symmetries_of_the_33_distribution():
    D = sym33_distribution()
    dims = [sdim_of(frame_symmetries(D, SYM33_WEIGHTS, k)) for k in range(-2, 2)]
    assert dims == [(1, 1), (2, 2), (3, 3), (4, 4)]
