import pytest
from hypothesis import given, strategies as st

from d21a.liesuper import d21a
from d21a.roots import (
    DIAGRAMS,
    ParabolicSpec,
    SimpleSystem,
    all_roots,
    all_specs,
    cartan_matrix,
    classify_parabolics,
    even_reflect_root,
    grading,
    odd_reflection,
    reflect_root,
    render_diagram,
    root_decomposition,
    standard_s,
)
from d21a.liesuper import AlgebraError
from d21a.scalars import rf


def weights_by_name():
    alg = d21a()
    return {alg.basis[i].name: r.coords for r, i in root_decomposition(alg)}


def test_root_vectors_have_expected_weights():
    w = weights_by_name()
    assert w["X1"] == (2, 0, 0)
    # xxx is a product of three highest-weight vectors of the sl2 factors
    assert w["xxx"] == (1, 1, 1)
    assert w["yxy"] == (-1, 1, -1)


def test_root_counts():
    roots = [r for r, _ in root_decomposition(d21a())]
    assert sum(r.parity == 0 for r in roots) == 6
    assert sum(r.parity == 1 for r in roots) == 8
    assert {r.coords for r in roots} == {r.coords for r in all_roots()}


def test_odd_roots_isotropic():
    s = standard_s()
    from d21a.roots import inner
    for r in all_roots():
        if r.parity == 1:
            assert inner(r.coords, r.coords, s).is_zero()


@pytest.mark.parametrize("label", DIAGRAMS)
def test_cartan_normalization(label):
    system = SimpleSystem.standard(label)
    C = cartan_matrix(system)
    for j, r in enumerate(system.roots):
        assert C.entries[j][j] == (2 if r.parity == 0 else 0)


def isotropic_nodes(system):
    s = standard_s()
    from d21a.roots import inner
    return [j for j, r in enumerate(system.roots) if r.parity == 1 and inner(r.coords, r.coords, s).is_zero()]


@pytest.mark.parametrize("label", DIAGRAMS)
def test_odd_reflection_moves_only_the_ray(label):
    system = SimpleSystem.standard(label)
    pos = {r.coords for r in system.positive_roots()}
    for j in isotropic_nodes(system):
        alpha = system.roots[j].coords
        new = odd_reflection(system, j)
        new_pos = {r.coords for r in new.positive_roots()}
        ray = {alpha, tuple(2 * x for x in alpha)}
        assert new_pos == (pos - ray) | {tuple(-x for x in alpha)}


def test_odd_reflection_rules():
    s = standard_s()
    alpha = (1, -1, -1)
    assert reflect_root(alpha, alpha, s) == (-1, 1, 1)
    # orthogonal roots are fixed
    for b in all_roots():
        from d21a.roots import inner
        if b.coords != alpha and inner(alpha, b.coords, s).is_zero():
            assert reflect_root(alpha, b.coords, s) == b.coords


def test_odd_reflection_rejects_even_node():
    with pytest.raises(AlgebraError):
        odd_reflection(SimpleSystem.standard("I"), 1)


def test_even_reflections_preserve_parity_classes():
    s = standard_s()
    even = {r.coords for r in all_roots() if r.parity == 0}
    odd = {r.coords for r in all_roots() if r.parity == 1}
    for a in even:
        assert {even_reflect_root(a, b, s) for b in even} == even
        assert {even_reflect_root(a, b, s) for b in odd} == odd


@pytest.mark.parametrize("spec", all_specs(), ids=str)
def test_grading_symmetric_and_total(spec):
    rep = grading(spec)
    tot = [0, 0]
    for k, (sd, _) in rep.levels.items():
        assert sd == rep.levels[-k][0]
        tot[0] += sd[0]
        tot[1] += sd[1]
    assert tuple(tot) == (9, 8)


def test_grading_examples():
    r = grading(ParabolicSpec.parse("p1I"))
    assert r.depth == 2 and r.dims() == [(7, 0), (0, 4), (1, 0)]
    r = grading(ParabolicSpec.parse("p123IV"))
    assert r.depth == 3 and r.dims() == [(3, 0), (0, 3), (3, 0), (0, 1)]
    r = grading(ParabolicSpec.parse("p2I"))
    assert r.g0.sdim == (5, 4) and r.g0.center_dim == 1 and r.g0.label == "gl(2|1)"


@given(st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda a: a not in (0, -1)))
def test_grading_independent_of_parameter(a):
    spec = ParabolicSpec.parse("p23I")
    assert grading(spec, d21a(a)).signature() == grading(spec).signature()


def test_classification():
    cl = classify_parabolics()
    assert len(cl.by_signature) == 6
    assert cl.agree()
    names = lambda c: sorted(str(s) for s in c)
    assert names(cl.class_of(ParabolicSpec.parse("p1I"))) == sorted(["p1I", "p2II", "p3III"])
    assert names(cl.class_of(ParabolicSpec.parse("p123IV"))) == ["p123IV"]


@pytest.mark.parametrize("bad", [("V", (1,)), ("I", ()), ("I", (4,)), ("I", (1, 1))])
def test_invalid_specs(bad):
    with pytest.raises(ValueError):
        ParabolicSpec(*bad)


def test_render_diagram_labels():
    text = render_diagram("I", (1,))
    assert text.startswith("DD-I:") and "[x]" in text and "[a]" in text
    assert "[a + 1]" in render_diagram("IV")


def test_cartan_matrix_at_other_parameters():
    s = [rf(-3), rf(1), rf(2)]
    C = cartan_matrix(SimpleSystem.standard("I"), s)
    assert C.entries[0] == [0, 1, 2]
