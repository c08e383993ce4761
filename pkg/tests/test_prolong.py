import pytest

from d21a.liesuper import d21a
from d21a.prolong import (
    Mode,
    ProlongationError,
    der0,
    is_fundamental,
    part_indices,
    prolong,
    verify_witness,
    witness_search,
)
from d21a.roots import ParabolicSpec, graded_algebra
from d21a.scalars import random_points, rf


def galg(label, a=None):
    return graded_algebra(ParabolicSpec.parse(label), d21a(a) if a is not None else None)


def test_der0_examples():
    assert der0(galg("p123IV")).sdim == (3, 0)
    assert der0(galg("p1I")).sdim == (7, 0)


def test_der0_of_abelian_m_is_gl():
    # p2I is |1|-graded, so m = g_-1 of sdim (2|2) and der0 = gl(2|2)
    assert der0(galg("p2I")).sdim == (8, 8)


def test_full_prolongation_p123IV():
    rep = prolong(ParabolicSpec.parse("p123IV"), Mode.M)
    assert rep.positive_dims() == [(0, 3), (3, 0), (0, 1), (0, 0)]
    assert rep.terminated_at == 4
    assert rep.locus.issubset(["a", "a+1"])


@pytest.mark.parametrize("label,mode,k,levels", [
    ("p2I", "m-g0", None, [(2, 2), (0, 0)]),
    ("p23I", "m-g0", None, [(2, 2), (1, 1), (0, 0)]),
    ("p1I", "gk", 1, [(0, 4), (1, 0), (0, 0)]),
    ("p12I", "gk", 1, [(1, 2), (0, 2), (1, 0), (0, 0)]),
    ("p123I", "gk", 1, [(2, 1), (0, 2), (0, 1), (1, 0), (0, 0)]),
])
def test_seeded_prolongations_reproduce_g(label, mode, k, levels):
    rep = prolong(ParabolicSpec.parse(label), mode, k=k)
    assert rep.positive_dims() == levels
    g = galg(label)
    for j in range(1, g.depth() + 1):
        assert rep.levels[j] == g.sdim(g.level(j))


def test_p1_grows_towards_contact_algebra():
    rep = prolong(ParabolicSpec.parse("p1I"), "m-g0", cutoff=2)
    assert rep.levels[1] == (0, 8) and rep.levels[2] == (8, 0)
    assert rep.terminated_at is None


def test_zero_level_is_final():
    rep = prolong(ParabolicSpec.parse("p23I"), "m-g0", cutoff=6)
    seen_zero = False
    for j in sorted(rep.levels):
        if seen_zero:
            pytest.fail("levels continue after a zero level")
        seen_zero = rep.levels[j] == (0, 0)


@pytest.mark.parametrize("label,mode,k", [("p123IV", "m", None), ("p23I", "m-g0", None), ("p12I", "gk", 1)])
def test_generic_rank_agrees_with_specializations(label, mode, k):
    generic = prolong(ParabolicSpec.parse(label), mode, k=k)
    for pt in random_points(["a"], 3, seed=5, avoid=generic.locus):
        special = prolong(galg(label, pt["a"]), mode, k=k)
        assert special.levels == generic.levels


def test_gk_requires_k():
    with pytest.raises(ProlongationError):
        prolong(ParabolicSpec.parse("p1I"), "gk")


def test_fundamental():
    g = galg("p123IV")
    assert is_fundamental(g, part_indices(g, -1))


def test_witnesses():
    g = galg("p23I")
    plus = part_indices(g, 1)
    V = [{g.index(n): rf(1)} for n in ("X1", "X2", "X3", "xxy", "xxx")]
    assert verify_witness(g, plus, {g.index("X2"): rf(1)}, V)
    V3 = [{g.index(n): rf(1)} for n in ("X1", "X2", "X3", "xyx", "xxx")]
    assert verify_witness(g, plus, {g.index("X3"): rf(1)}, V3)
    assert not verify_witness(g, plus, {g.index("xxy"): rf(1)}, V)


def test_witness_codimension_checked():
    g = galg("p23I")
    plus = part_indices(g, 1)
    with pytest.raises(ProlongationError):
        verify_witness(g, plus, {g.index("X2"): rf(1)}, [{g.index("X1"): rf(1)}])


def test_no_witness_for_finite_type():
    g = galg("p123IV")
    m = part_indices(g, -1)
    for v in (i for i in m if g.degree(i) == -1):
        others = [i for i in m]
        for drop in others:
            V = [{i: rf(1)} for i in others if i != drop]
            assert not verify_witness(g, m, {v: rf(1)}, V)
    assert witness_search(g) is None


def test_searches():
    assert witness_search(galg("p12I")) is None
    assert witness_search(galg("p123I")) is None
    assert witness_search(galg("p23I")) is not None
    w = witness_search(galg("p2I"))
    assert w is not None and "|1|-graded" in w.note
