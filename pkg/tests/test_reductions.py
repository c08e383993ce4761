import random

import pytest
from hypothesis import given, strategies as st

from d21a.reductions import (
    GL11DecompositionError,
    KacModuleLabel,
    check_all,
    dual,
    embedding_matrix_check,
    family_closed,
    gl11_decompose,
    kac_module,
    kac_tensor_rule,
    odd_exponential,
    grassmann_apply,
    GrassmannVector,
    p2_intermediate_check,
    p2_setup,
    p23_corollary_check,
    p23_embedding_family,
    p23_setup,
    projective_cover,
    sl21_relation_defects,
    supertraceless,
    tensor,
    unit,
    w_relation_defects,
    P2_ORBIT_PARAMS,
)
from d21a.scalars import rf

cs = st.integers(-5, 5).filter(bool)
ns = st.integers(-3, 3)


@given(cs, ns, st.integers(0, 1))
def test_kac_modules_are_representations(c, n, parity):
    assert kac_module(c, n, parity).is_representation()
    assert dual(kac_module(c, n, parity)).is_representation()


@given(ns)
def test_projective_cover(n):
    P = projective_cover(n)
    assert P.is_representation()
    assert gl11_decompose(P) == [KacModuleLabel("projective", rf(n))]


@given(cs, ns, cs, ns)
def test_kac_tensor_rule_matches_decomposition(c1, n1, c2, n2):
    t = tensor(kac_module(c1, n1), kac_module(c2, n2))
    assert t.is_representation()
    assert gl11_decompose(t) == kac_tensor_rule(c1, n1, c2, n2)


def test_symbolic_tensor_rule():
    s2 = rf("s2")
    t = tensor(kac_module(-s2, 0), kac_module(s2, 1))
    assert gl11_decompose(t) == [KacModuleLabel("projective", rf(0))]


def test_typical_label_needs_nonzero_c():
    with pytest.raises(ValueError):
        KacModuleLabel("typical", rf(0), rf(0))


def test_decomposition_rejects_nondiagonal_input():
    rep = kac_module(1, 0)
    rep.generators["N"][0][1] = rf(1)
    with pytest.raises(GL11DecompositionError):
        gl11_decompose(rep)


@given(st.integers(0, 10**6))
def test_odd_exponential_inverse(seed):
    rng = random.Random(seed)
    parities = (0, 0, 1, 1)
    # odd operator: only blocks mixing even and odd coordinates
    X = unit(4, 0, 2, rng.randint(-3, 3))
    X[3][1] = rf(rng.randint(-3, 3))
    plus = odd_exponential(X, "theta", P2_ORBIT_PARAMS, parities)
    minus = odd_exponential([[-x for x in row] for row in X], "theta", P2_ORBIT_PARAMS, parities)
    v = GrassmannVector.from_scalars(P2_ORBIT_PARAMS, [rf(rng.randint(-3, 3)) for _ in range(4)])
    assert grassmann_apply(minus, grassmann_apply(plus, v)) == v


def test_setups_are_representations():
    assert p2_setup().rep.is_representation()
    assert p23_setup().rep.is_representation()
    assert sl21_relation_defects() == []


def test_p2_g0_is_supertraceless():
    S = p2_setup()
    sl = supertraceless(S)
    assert all(sl.contains(v) for v in S.g0_span().basis)


def test_p2_intermediate_subalgebras():
    rep = p2_intermediate_check()
    assert rep.ok
    assert len(rep.found) == 3


def test_p23_corollary_subalgebras():
    rep = p23_corollary_check()
    assert rep.ok
    assert sorted(s.dim for s in rep.found) == [6, 6, 7]


def test_embedding_families():
    checks = embedding_matrix_check()
    assert all(checks.values())
    parities = p23_setup().rep.parities
    assert family_closed(*p23_embedding_family(), parities)
    # the printed diagonal (a1, a2, a1+a3, a2-a3) does not close
    assert not family_closed(*p23_embedding_family(printed=True), parities)


def test_w_relations_reading():
    assert w_relation_defects("theta-nu") == []
    assert w_relation_defects("nu-theta") != []


@pytest.mark.parametrize("case", ["p2I", "p23I"])
def test_check_all(case):
    results = check_all(case)
    assert results and all(results.values()), [k for k, v in results.items() if not v]


def test_check_all_unknown_case():
    with pytest.raises(ValueError):
        check_all("p1I")
