"""The twelve end-to-end acceptance checks.

Each ``criterion_N`` function returns a :class:`CheckResult`; ``run_all``
evaluates them in order (or on a thread pool) and is what both
``d21a verify --all`` and ``tests/test_acceptance.py`` consume.  Reference
data (gradings, prolongation levels, cohomology rows, Cartan matrices) are
kept as literal tables below so that a failure always names the first
mismatching entry.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .liesuper import (
    check_jacobi,
    d21a,
    gamma_generic,
    build_gamma,
    invariant_form,
    invariant_form_space,
    killing_form,
    cauchy_characteristics,
    structure_parameters,
)
from .prolong import part_indices, prolong, verify_witness, witness_search
from .realizations import (
    FLAG_STRUCTURE_PRINTED,
    ansatz,
    diamond_frame,
    diamond_generating_functions,
    diamond_symmetries,
    flag_distribution,
    flag_fields,
    flag_parameter,
    p1_pde,
    p1_span,
)
from .reductions import check_all as reductions_check_all
from .roots import (
    DIAGRAMS,
    ParabolicSpec,
    SimpleSystem,
    all_specs,
    cartan_matrix,
    classify_parabolics,
    graded_algebra,
    odd_reflection,
    root_decomposition,
)
from .scalars import rf
from .spencer import cohomology, h1_prolongation_consistency
from .superfields import (
    M14,
    M34_DIAMOND,
    SYM33_COORDS,
    SYM33_WEIGHTS,
    Coordinates,
    frame_symmetries,
    normalizer,
    parameter_invariant,
    pde_solution_space,
    random_superpoly,
    same_span,
    sdim_of,
    span_closure,
    super_bracket,
    sym33_distribution,
    symmetry_check,
    symmetry_from_pair,
    verify_correspondence,
    j_invariant_of,
)


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} [{self.number:2d}] {self.title} ({self.seconds:.2f}s)"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "ok": self.ok,
                "details": list(self.details), "seconds": round(self.seconds, 4)}


class _Collector:
    """Accumulates named boolean sub-checks; the first failure becomes the witness."""

    def __init__(self) -> None:
        self.items: list[tuple[str, bool]] = []

    def check(self, name: str, ok: bool) -> bool:
        self.items.append((name, bool(ok)))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.items)

    def details(self) -> list[str]:
        failed = [n for n, ok in self.items if not ok]
        if failed:
            return [f"failed: {n}" for n in failed]
        return [f"{len(self.items)} sub-checks passed"]


ALLOWED_LOCUS = ("a", "a + 1")

# Runtime budgets are measured in CPU time of the calling thread, so that a
# threaded run of several criteria does not inflate them.

# ---------------------------------------------------------------------------
# reference tables
# ---------------------------------------------------------------------------

CARTAN_REFERENCE = {
    "I": [["0", "1", "a"], ["-1", "2", "0"], ["-1", "0", "2"]],
    "II": [["2", "-1", "0"], ["-1", "0", "1+a"], ["0", "-1", "2"]],
    "III": [["2", "0", "-1"], ["0", "2", "-1"], ["-a", "1+a", "0"]],
    "IV": [["0", "1", "a"], ["1", "0", "-1-a"], ["a", "-1-a", "0"]],
}

# (diagram, node) -> diagram reached by the odd reflection at that node
REFLECTION_ARROWS = {("I", 1): "IV", ("II", 2): "IV", ("III", 3): "IV",
                     ("IV", 1): "I", ("IV", 2): "II", ("IV", 3): "III"}

# members, depth, (g0, g-1, ..., g-depth) sdims, g0 label
CLASS_REFERENCE = [
    (("p1I", "p2II", "p3III"), 2, ((7, 0), (0, 4), (1, 0)), "co(4)"),
    (("p2I", "p3I", "p1II", "p3II", "p1III", "p2III", "p1IV", "p2IV", "p3IV"), 1,
     ((5, 4), (2, 2)), "gl(2|1)"),
    (("p12I", "p13I", "p12II", "p23II", "p13III", "p23III"), 3,
     ((5, 0), (1, 2), (0, 2), (1, 0)), "gl(2)+C"),
    (("p23I", "p13II", "p12III", "p12IV", "p13IV", "p23IV"), 2,
     ((3, 2), (2, 2), (1, 1)), "gl(1|1)+C"),
    (("p123I", "p123II", "p123III"), 4,
     ((3, 0), (2, 1), (0, 2), (0, 1), (1, 0)), "C^{3|0}"),
    (("p123IV",), 3, ((3, 0), (0, 3), (3, 0), (0, 1)), "C^{3|0}"),
]

# spec, mode, k, expected levels j >= first computed level (last entry is the zero level)
PROLONGATION_REFERENCE = [
    ("p123IV", "m", None, {1: (0, 3), 2: (3, 0), 3: (0, 1), 4: (0, 0)}),
    ("p2I", "m-g0", None, {1: (2, 2), 2: (0, 0)}),
    ("p23I", "m-g0", None, {1: (2, 2), 2: (1, 1), 3: (0, 0)}),
    ("p1I", "gk", 1, {2: (1, 0), 3: (0, 0)}),
    ("p12I", "gk", 1, {2: (0, 2), 3: (1, 0), 4: (0, 0)}),
    ("p123I", "gk", 1, {2: (0, 2), 3: (0, 1), 4: (1, 0), 5: (0, 0)}),
]

# spec -> {j: {i: sdim}}
SPENCER_REFERENCE = {
    "p1I": {0: {-2: (1, 0)}, 1: {1: (0, 4)}, 2: {2: (9, 0)}},
    "p2I": {0: {-1: (2, 2)}, 1: {0: (3, 4)}, 2: {2: (4, 4)}},
    "p12I": {0: {-3: (1, 0)}, 1: {-2: (1, 0), 1: (0, 2)}, 2: {2: (3, 0), 3: (0, 2)}},
    "p23I": {0: {-2: (1, 1)}, 1: {-1: (2, 2), 0: (0, 1)}, 2: {0: (1, 1), 2: (2, 2)}},
    "p123I": {0: {-4: (1, 0)}, 1: {-3: (2, 0), 1: (0, 1)},
              2: {-2: (1, 0), 2: (1, 0), 3: (0, 2)}},
    "p123IV": {0: {-3: (0, 1)}, 1: {-1: (0, 3)}, 2: {0: (1, 0), 2: (3, 0)}},
}

# strongest prolongation statement per class (the Figure-2 column)
PROLONGATION_STATEMENT = {
    "p1I": "pr(g<=1)=g", "p2I": "pr(m,g0)=g", "p12I": "pr(g<=1)=g",
    "p23I": "pr(m,g0)=g", "p123I": "pr(g<=1)=g", "p123IV": "pr(m)=g",
}

# spec, level k, sdim, spanning basis vectors
CAUCHY_REFERENCE = [
    ("p12I", 2, (1, 0), ("Y2",)),
    ("p123I", 3, (2, 0), ("Y2", "Y3")),
    ("p123I", 2, (0, 1), ("yxx",)),
]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def criterion_1() -> CheckResult:
    c = _Collector()
    t0 = time.thread_time()
    alg = d21a()
    c.check("super-Jacobi on all basis triples", not check_jacobi(alg))
    c.check("sdim (9|8)", alg.sdim() == (9, 8))
    c.check("structure parameters (-1-a, 1, a)",
            structure_parameters(alg) == [rf("-1-a"), rf(1), rf("a")])
    c.check("runtime < 1 s", time.thread_time() - t0 < 1)
    return CheckResult(1, "Jacobi identity and dimension", c.ok, c.details())


def criterion_2() -> CheckResult:
    c = _Collector()
    alg = d21a()
    c.check("Killing form vanishes", killing_form(alg).is_zero())
    forms, _ = invariant_form_space(alg)
    c.check("invariant forms: 1-dim space", len(forms) == 1)
    B = invariant_form(alg)
    c.check("B is invariant", not B.invariance_defects())
    c.check("B is supersymmetric", B.is_supersymmetric())
    # the form induced on h^*: <eps_i, eps_j> is the inverse Gram matrix of B on H_1..H_3
    s = structure_parameters(alg)
    gram = [[B(f"H{i}", f"H{j}") for j in (1, 2, 3)] for i in (1, 2, 3)]
    diagonal = all(gram[i][j].is_zero() for i in range(3) for j in range(3) if i != j)
    c.check("B diagonal on the Cartan subalgebra", diagonal)
    if diagonal:
        for i in range(3):
            c.check(f"B(eps{i + 1}, eps{i + 1}) = s{i + 1}", 1 / gram[i][i] == s[i])
    return CheckResult(2, "Killing form and invariant form", c.ok, c.details())


def criterion_3() -> CheckResult:
    c = _Collector()
    roots = root_decomposition(d21a())
    c.check("6 even roots", sum(r.parity == 0 for r, _ in roots) == 6)
    c.check("8 odd roots", sum(r.parity == 1 for r, _ in roots) == 8)
    for d in DIAGRAMS:
        got = cartan_matrix(SimpleSystem.standard(d)).entries
        want = [[rf(x) for x in row] for row in CARTAN_REFERENCE[d]]
        c.check(f"Cartan matrix DD-{d}", got == want)
    for (d, node), target in REFLECTION_ARROWS.items():
        new = odd_reflection(SimpleSystem.standard(d), node - 1)
        c.check(f"odd reflection DD-{d} node {node} -> DD-{target}", new.label == target)
    return CheckResult(3, "roots, Cartan matrices, odd reflections", c.ok, c.details())


def criterion_4() -> CheckResult:
    c = _Collector()
    cl = classify_parabolics()
    c.check("28 specs", len(all_specs()) == 28 and sum(map(len, cl.by_signature)) == 28)
    c.check("6 classes", len(cl.by_signature) == 6)
    c.check("signature and orbit partitions coincide", cl.agree())
    found = {tuple(sorted(str(s) for s in cls)) for cls in cl.by_signature}
    for members, depth, dims, label in CLASS_REFERENCE:
        key = tuple(sorted(members))
        c.check(f"class {members[0]} members", key in found)
        rep = cl.reports[ParabolicSpec.parse(members[0])]
        c.check(f"class {members[0]} depth", rep.depth == depth)
        c.check(f"class {members[0]} dims", tuple(rep.dims()) == dims)
        c.check(f"class {members[0]} g0 = {label}", rep.g0.label == label)
    return CheckResult(4, "classification of the 28 parabolics", c.ok, c.details())


def criterion_5() -> CheckResult:
    c = _Collector()
    t0 = time.thread_time()
    for spec, mode, k, want in PROLONGATION_REFERENCE:
        rep = prolong(ParabolicSpec.parse(spec), mode, k=k)
        got = {j: rep.levels[j] for j in want if j in rep.levels}
        tag = f"{spec} mode {mode}" + (f" k={k}" if k is not None else "")
        c.check(f"{tag} levels", got == want)
        c.check(f"{tag} terminates at {max(want)}", rep.terminated_at == max(want))
        c.check(f"{tag} locus {rep.locus.names()} within a(a+1)", rep.locus.issubset(ALLOWED_LOCUS))
        galg = graded_algebra(ParabolicSpec.parse(spec))
        # reproducing g_+: each level matches the dimension of g_j
        mirror = all(rep.levels[j] == galg.sdim(galg.level(j))
                     for j in rep.levels if 1 <= j <= galg.depth())
        c.check(f"{tag} reproduces g_+", mirror)
    c.check("runtime < 10 s", time.thread_time() - t0 < 10)
    return CheckResult(5, "prolongation suite", c.ok, c.details())


def _vec(galg, names):
    return {galg.index(n): rf(1) for n in names}


def criterion_6() -> CheckResult:
    c = _Collector()
    galg = graded_algebra(ParabolicSpec.parse("p23I"))
    # The witnesses are written with X's, i.e. in g_+, which the Chevalley
    # involution X <-> Y, x <-> y identifies with m; check both copies.
    plus, minus = part_indices(galg, 1), part_indices(galg, -1)
    swap = str.maketrans("XYxy", "YXyx")
    for v, V in (("X2", ("X1", "X2", "X3", "xxy", "xxx")), ("X3", ("X1", "X2", "X3", "xyx", "xxx"))):
        c.check(f"p23I witness v={v} in g_+",
                verify_witness(galg, plus, _vec(galg, [v]), [_vec(galg, [n]) for n in V]))
        c.check(f"p23I witness v={v.translate(swap)} in m",
                verify_witness(galg, minus, _vec(galg, [v.translate(swap)]),
                               [_vec(galg, [n.translate(swap)]) for n in V]))
    c.check("p23I witness search finds one", witness_search(galg) is not None)
    for spec in ("p12I", "p123I"):
        g = graded_algebra(ParabolicSpec.parse(spec))
        c.check(f"{spec}: no witness among basis vectors of m", witness_search(g) is None)
        c.check(f"{spec}: no witness among basis vectors of g_+", witness_search(g, part_indices(g, 1)) is None)
    return CheckResult(6, "infinite-type witnesses", c.ok, c.details())


def criterion_7() -> CheckResult:
    c = _Collector()
    t0 = time.thread_time()
    for spec, want in SPENCER_REFERENCE.items():
        table = cohomology(ParabolicSpec.parse(spec))
        for j in (0, 1, 2):
            c.check(f"{spec} H^{j}", table.degree(j) == want[j])
        c.check(f"{spec} d^2 = 0", table.d_squared_zero)
        galg = graded_algebra(ParabolicSpec.parse(spec))
        nu = galg.depth()
        c.check(f"{spec} H^0 = g_-nu", table.degree(0) == {-nu: galg.sdim(galg.level(-nu))})
        c.check(f"{spec} locus within a(a+1)", table.locus.issubset(ALLOWED_LOCUS))
        cons = h1_prolongation_consistency(table, PROLONGATION_STATEMENT[spec])
        c.check(f"{spec} H^1 vs prolongation", cons.consistent)
    c.check("runtime < 2 min", time.thread_time() - t0 < 120)
    return CheckResult(7, "Spencer cohomology", c.ok, c.details())


def criterion_8() -> CheckResult:
    c = _Collector()
    r = p1_span()
    cl = span_closure(r.elements, M14, r.names)
    c.check("span closes with sdim (9|8)", cl.sdim == (9, 8))
    rep = verify_correspondence(cl, d21a(), substitution={"a": rf("(1-eps)/(1+eps)")}, find_orbit=False)
    c.check("matches D(2,1;a) at a=(1-eps)/(1+eps)", rep.match)
    for deg in (2, 3):
        sol = pde_solution_space(p1_pde(), ansatz(M14, deg))
        c.check(f"PDE solutions, even degree <= {deg}", sol.sdim == (9, 8) and same_span(sol.basis, r.elements))
    for k in (1, 2, 3):
        N = normalizer(r.elements, M14, k)
        want = r.level(k)
        c.check(f"normalizer in degree {k}", same_span(N, want) if want else not N)
    return CheckResult(8, "realization of p1I", c.ok, c.details())


def criterion_9() -> CheckResult:
    """The literal parameter claim is checked as stated and may fail; see the details."""
    c = _Collector()
    fr = diamond_frame()
    sy = diamond_symmetries()
    c.check("all 17 fields preserve D", all(symmetry_check(S, fr) for S in sy.elements))
    cl_fields = span_closure(sy.elements, None, sy.names)
    c.check("fields close to sdim (9|8)", cl_fields.sdim == (9, 8))
    g = diamond_generating_functions()
    cl = span_closure(g.elements, M34_DIAMOND, g.names)
    c.check("generating functions close to sdim (9|8)", cl.sdim == (9, 8))
    s1, s2 = rf("s1"), rf("s2")
    s3 = -s1 - s2
    shifted = build_gamma(s2 - s3, s3 - s1, s1 - s2)
    c.check("closure matches Gamma(s2-s3, s3-s1, s1-s2)",
            verify_correspondence(cl, shifted, find_orbit=False).match)
    c.check("closure matches Gamma(s1, s2, s3) as stated",
            verify_correspondence(cl, gamma_generic(), find_orbit=False).match)
    return CheckResult(9, "realization of p123IV", c.ok, c.details())


def criterion_10() -> CheckResult:
    c = _Collector()
    r = flag_fields(flip_signs=True)
    cl = span_closure(r.elements, None, r.names, degrees=r.levels)
    c.check("17 fields close to sdim (9|8)", len(r.elements) == 17 and cl.sdim == (9, 8))
    for x, y, sg, z in FLAG_STRUCTURE_PRINTED:
        c.check(f"[{x},{y}] = {sg}{z}", super_bracket(r.by_name(x), r.by_name(y)) == r.by_name(z).__rmul__(sg))
    inv = parameter_invariant(cl.algebra)
    c.check("trace condition s1+s2+s3 = 0", inv.e1.is_zero())
    c.check("parameter a(kappa) up to the S3 orbit", inv.J == j_invariant_of(flag_parameter()))
    D = flag_distribution()
    c.check("all fields preserve the distribution", all(symmetry_check(e, D) for e in r.elements))
    return CheckResult(10, "realization of p123I", c.ok, c.details())


def criterion_11() -> CheckResult:
    c = _Collector()
    t0 = time.thread_time()
    for case in ("p2I", "p23I"):
        for name, ok in reductions_check_all(case).items():
            c.check(f"{case} {name}", ok)
    c.check("runtime < 10 s", time.thread_time() - t0 < 10)
    return CheckResult(11, "reductions", c.ok, c.details())


def criterion_12(pairs: int = 20, seed: int = 0) -> CheckResult:
    c = _Collector()
    for spec, k, sd, names in CAUCHY_REFERENCE:
        galg = graded_algebra(ParabolicSpec.parse(spec))
        sub = cauchy_characteristics(galg, k)
        c.check(f"{spec} D^{k}: sdim {sd}", sub.sdim() == sd)
        c.check(f"{spec} D^{k}: spanned by {', '.join(names)}",
                sub.dim == len(names) and all(sub.contains(_vec(galg, [n])) for n in names))
    D = sym33_distribution()
    for k, want in zip(range(-2, 2), ((1, 1), (2, 2), (3, 3), (4, 4))):
        c.check(f"graded symmetries of degree {k}: {want}", sdim_of(frame_symmetries(D, SYM33_WEIGHTS, k)) == want)
    rng = random.Random(seed)
    sub_coords = Coordinates(("y3",), ("xi1", "xi2", "xi3"))
    good = 0
    for _ in range(pairs):
        h = random_superpoly(sub_coords, rng, rng.randint(0, 1)).embed(SYM33_COORDS)
        g = random_superpoly(sub_coords, rng, rng.randint(0, 1)).embed(SYM33_COORDS)
        good += symmetry_check(symmetry_from_pair(h, g), D)
    c.check(f"{pairs} random (h, g) pairs give symmetries", good == pairs)
    return CheckResult(12, "Cauchy characteristics and graded symmetries", c.ok, c.details())


CRITERIA: dict[int, Callable[[], CheckResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7, 8: criterion_8,
    9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}

# criteria whose literal statement is known not to hold; see the decisions notes
KNOWN_FAILURES = {9}


def run(number: int) -> CheckResult:
    t0 = time.time()
    try:
        res = CRITERIA[number]()
    except Exception as exc:  # a crash is a failure with the exception as witness
        res = CheckResult(number, CRITERIA[number].__name__, False, [f"error: {exc!r}"])
    res.seconds = time.time() - t0
    return res


def run_all(numbers=None, workers: int = 1) -> list[CheckResult]:
    numbers = sorted(numbers or CRITERIA)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(run, numbers))
    return [run(n) for n in numbers]

