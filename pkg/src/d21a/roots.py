"""Roots, simple systems, Cartan matrices and parabolic gradings of D(2,1;a).

Roots are integer triples in the basis eps_1, eps_2, eps_3 of the dual Cartan
subalgebra (H_i has eigenvalue equal to the i-th coordinate).  The bilinear
form on roots is <eps_i, eps_j> = s_i delta_ij.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import flint

from .liesuper import (
    AlgebraError,
    BasisSuperalgebra,
    Subspace,
    d21a,
    structure_parameters,
)
from .scalars import RationalFunction, SparseMatrix, nullspace, rf

DIAGRAMS = ("I", "II", "III", "IV")

# Simple roots of the four simple systems, in the eps basis.
SIMPLE_ROOTS: dict[str, tuple[tuple[int, int, int], ...]] = {
    "I": ((1, -1, -1), (0, 2, 0), (0, 0, 2)),
    "II": ((0, 2, 0), (-1, -1, 1), (2, 0, 0)),
    "III": ((0, 0, 2), (2, 0, 0), (-1, 1, -1)),
    "IV": ((-1, 1, 1), (1, 1, -1), (1, -1, 1)),
}

# Free rescaling of isotropic rows (rule iii), fixed so that the matrices come
# out in the customary published form.
ISOTROPIC_ROW_SCALE: dict[tuple[str, int], Fraction] = {
    ("I", 0): Fraction(-1, 2),
    ("II", 1): Fraction(1, 2),
    ("III", 2): Fraction(1, 2),
    ("IV", 0): Fraction(1, 2),
    ("IV", 1): Fraction(1, 2),
    ("IV", 2): Fraction(1, 2),
}

# S3 orbit of the parameter a under the permutations of (s1, s2, s3).
S3_ORBIT = ("a", "1/a", "-1-a", "-1-1/a", "-a/(1+a)", "-1/(1+a)")


@dataclass(frozen=True)
class Root:
    coords: tuple[int, int, int]
    parity: int

    def __post_init__(self):
        if self.coords == (0, 0, 0):
            raise ValueError("zero is not a root")

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coords), self.parity)

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if c:
                mag = "" if abs(c) == 1 else str(abs(c))
                parts.append(("-" if c < 0 else "+") + f"{mag}e{i + 1}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def root_parity(coords: Sequence[int]) -> int:
    return 1 if all(abs(c) == 1 for c in coords) else 0


def make_root(coords: Sequence[int]) -> Root:
    c = tuple(int(x) for x in coords)
    return Root(c, root_parity(c))


def inner(u: Sequence[int], v: Sequence[int], s: Sequence[RationalFunction]) -> RationalFunction:
    return sum((s[i] * (u[i] * v[i]) for i in range(3)), RationalFunction.const(0))


# ---------------------------------------------------------------------------
# root decomposition
# ---------------------------------------------------------------------------


def root_decomposition(alg: BasisSuperalgebra, cartan: Sequence[str] = ("H1", "H2", "H3")) -> list[tuple[Root, int]]:
    """Pairs (root, basis index) for every basis vector with a nonzero weight."""
    hs = [alg.index(h) for h in cartan]
    out = []
    for j in range(alg.dim):
        weight = []
        for h in hs:
            v = alg.bracket_basis(h, j)
            if not v:
                weight.append(0)
                continue
            if set(v) != {j} or not v[j].is_constant():
                raise AlgebraError(f"ad {alg.basis[h].name} is not diagonal on {alg.basis[j].name}")
            weight.append(v[j].constant_value())
        if any(weight):
            root = make_root([int(w) for w in weight])
            if root.parity != alg.parity(j):
                raise AlgebraError(f"weight parity mismatch at {alg.basis[j].name}")
            out.append((root, j))
    return out


def all_roots() -> list[Root]:
    even = [make_root(tuple(2 * sg if k == i else 0 for k in range(3))) for i in range(3) for sg in (1, -1)]
    odd = [make_root(c) for c in itertools.product((1, -1), repeat=3)]
    return even + odd


# ---------------------------------------------------------------------------
# simple systems and Cartan matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleSystem:
    roots: tuple[Root, Root, Root]
    label: str | None = None
    parameter: str = "a"

    @classmethod
    def standard(cls, label: str) -> "SimpleSystem":
        return cls(tuple(make_root(c) for c in SIMPLE_ROOTS[label]), label)

    def coords(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(r.coords for r in self.roots)

    def expand(self, beta: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
        """Coefficients of beta in the simple roots."""
        m = flint.fmpq_mat(3, 3, [self.roots[j].coords[i] for i in range(3) for j in range(3)])
        rhs = flint.fmpq_mat(3, 1, list(beta))
        sol = m.solve(rhs)
        return tuple(Fraction(int(sol[i, 0].p), int(sol[i, 0].q)) for i in range(3))

    def positive_roots(self) -> list[Root]:
        out = []
        for r in all_roots():
            c = self.expand(r.coords)
            if any(x.denominator != 1 for x in c):
                raise AlgebraError(f"{r} is not an integral combination of simple roots")
            if all(x >= 0 for x in c):
                out.append(r)
            elif not all(x <= 0 for x in c):
                raise AlgebraError(f"{r} has mixed-sign coefficients in {self.label}")
        return out


def identify(coords: Sequence[Sequence[int]]) -> str | None:
    key = tuple(tuple(c) for c in coords)
    for label, roots in SIMPLE_ROOTS.items():
        if roots == key:
            return label
    return None


@dataclass
class CartanMatrix:
    entries: list[list[RationalFunction]]
    tags: list[str]

    def as_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def standard_s(alg: BasisSuperalgebra | None = None) -> list[RationalFunction]:
    """(s1, s2, s3) of the given algebra, by default (-1-a, 1, a)."""
    return structure_parameters(alg if alg is not None else d21a())


def cartan_matrix(system: SimpleSystem, s: Sequence[RationalFunction] | None = None) -> CartanMatrix:
    s = list(s) if s is not None else standard_s()
    rows, tags = [], []
    for j, aj in enumerate(system.roots):
        raw = [inner(aj.coords, ai.coords, s) for ai in system.roots]
        if aj.parity == 0:
            scale = rf(2) / raw[j]
            tag = "even: C_jj = 2"
        elif not raw[j].is_zero():
            scale = rf(1) / raw[j]
            tag = "odd non-isotropic: C_jj = 1"
        else:
            scale = rf(ISOTROPIC_ROW_SCALE.get((system.label, j), Fraction(1, 2)))
            tag = f"odd isotropic: scaled by {scale}"
        rows.append([x * scale for x in raw])
        tags.append(tag)
    return CartanMatrix(rows, tags)


def reflect_root(alpha: Sequence[int], beta: Sequence[int], s: Sequence[RationalFunction]) -> tuple[int, ...]:
    """Odd reflection r_alpha(beta) for an isotropic odd root alpha."""
    alpha, beta = tuple(alpha), tuple(beta)
    if beta == alpha:
        return tuple(-x for x in alpha)
    if not inner(alpha, beta, s).is_zero():
        return tuple(a + b for a, b in zip(alpha, beta))
    return beta


def even_reflect_root(alpha: Sequence[int], beta: Sequence[int], s: Sequence[RationalFunction]) -> tuple[int, ...]:
    c = inner(beta, alpha, s) * 2 / inner(alpha, alpha, s)
    k = c.constant_value()
    return tuple(int(b - k * a) for a, b in zip(alpha, beta))


def odd_reflection(system: SimpleSystem, j: int, s: Sequence[RationalFunction] | None = None) -> SimpleSystem:
    s = list(s) if s is not None else standard_s()
    alpha = system.roots[j]
    if alpha.parity != 1 or not inner(alpha.coords, alpha.coords, s).is_zero():
        raise AlgebraError(f"simple root {j + 1} of {system.label} is not odd isotropic")
    new = tuple(make_root(reflect_root(alpha.coords, b.coords, s)) for b in system.roots)
    return SimpleSystem(new, identify([r.coords for r in new]), system.parameter)


# ---------------------------------------------------------------------------
# parabolics and gradings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ParabolicSpec:
    diagram: str
    crosses: tuple[int, ...]

    def __post_init__(self):
        if self.diagram not in DIAGRAMS:
            raise ValueError(f"unknown diagram {self.diagram!r}")
        if not self.crosses or any(c not in (1, 2, 3) for c in self.crosses) or len(set(self.crosses)) != len(self.crosses):
            raise ValueError(f"invalid cross set {self.crosses!r}")
        object.__setattr__(self, "crosses", tuple(sorted(self.crosses)))

    @property
    def label(self) -> str:
        return "p" + "".join(map(str, self.crosses)) + self.diagram

    @classmethod
    def parse(cls, text: str) -> "ParabolicSpec":
        t = text.strip()
        if t.startswith("p") or t.startswith("m"):
            t = t[1:]
        digits = "".join(ch for ch in t if ch.isdigit())
        diagram = t[len(digits):]
        return cls(diagram, tuple(int(c) for c in digits))

    def __str__(self) -> str:
        return self.label


def all_specs() -> list[ParabolicSpec]:
    crosses = [c for r in (1, 2, 3) for c in itertools.combinations((1, 2, 3), r)]
    return [ParabolicSpec(d, c) for d in DIAGRAMS for c in crosses]


def basis_degrees(spec: ParabolicSpec, alg: BasisSuperalgebra) -> list[int]:
    system = SimpleSystem.standard(spec.diagram)
    weights = {j: r for r, j in root_decomposition(alg)}
    degrees = []
    for j in range(alg.dim):
        if j not in weights:
            degrees.append(0)
            continue
        c = system.expand(weights[j].coords)
        d = sum(c[i - 1] for i in spec.crosses)
        degrees.append(int(d))
    return degrees


def graded_algebra(spec: ParabolicSpec, alg: BasisSuperalgebra | None = None) -> BasisSuperalgebra:
    alg = alg if alg is not None else d21a()
    return alg.with_degrees(basis_degrees(spec, alg))


@dataclass
class G0Descriptor:
    sdim: tuple[int, int]
    center_dim: int
    derived_sdim: tuple[int, int]

    @property
    def label(self) -> str:
        return G0_LABELS.get((self.sdim, self.center_dim, self.derived_sdim), "?")

    def as_tuple(self):
        return (self.sdim, self.center_dim, self.derived_sdim)


G0_LABELS = {
    ((7, 0), 1, (6, 0)): "co(4)",
    ((5, 4), 1, (4, 4)): "gl(2|1)",
    ((5, 0), 2, (3, 0)): "gl(2)+C",
    ((3, 2), 2, (1, 2)): "gl(1|1)+C",
    ((3, 0), 3, (0, 0)): "C^{3|0}",
}


def g0_descriptor(galg: BasisSuperalgebra) -> G0Descriptor:
    g0 = galg.level(0)
    # center: z in g0 with [z, g0] = 0
    rows: dict[tuple[int, int], dict[int, RationalFunction]] = {}
    for c, i in enumerate(g0):
        for j in g0:
            for k, v in galg.bracket_basis(i, j).items():
                rows.setdefault((j, k), {})[c] = v
    center, _ = nullspace(SparseMatrix.from_row_dicts(list(rows.values()), len(g0)))
    derived = Subspace(galg, [galg.bracket_basis(i, j) for i in g0 for j in g0 if galg.bracket_basis(i, j)])
    ev = od = 0
    for par in (0, 1):
        vecs = [galg.bracket_basis(i, j) for i in g0 for j in g0
                if galg.bracket_basis(i, j) and (galg.parity(i) + galg.parity(j)) % 2 == par]
        d = Subspace(galg, vecs).dim
        if par == 0:
            ev = d
        else:
            od = d
    assert derived.dim == ev + od
    return G0Descriptor(galg.sdim(g0), len(center), (ev, od))


@dataclass
class GradingReport:
    spec: ParabolicSpec
    depth: int
    levels: dict[int, tuple[tuple[int, int], list[str]]]
    g0: G0Descriptor

    def dims(self) -> list[tuple[int, int]]:
        """(g_0, g_-1, ..., g_-depth) super-dimensions."""
        return [self.levels[-k][0] for k in range(self.depth + 1)]

    def signature(self):
        return (self.depth, tuple(self.dims()), self.g0.as_tuple())

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.label,
            "depth": self.depth,
            "levels": {str(k): {"sdim": list(v[0]), "basis": v[1]} for k, v in sorted(self.levels.items())},
            "g0": {"sdim": list(self.g0.sdim), "center": self.g0.center_dim,
                   "derived": list(self.g0.derived_sdim), "label": self.g0.label},
        }


def grading(spec: ParabolicSpec, alg: BasisSuperalgebra | None = None) -> GradingReport:
    galg = graded_algebra(spec, alg)
    depth = galg.depth()
    levels = {}
    for k in range(-depth, depth + 1):
        idx = galg.level(k)
        levels[k] = (galg.sdim(idx), galg.names(idx))
    for k in range(1, depth + 1):
        if levels[k][0] != levels[-k][0]:
            raise AlgebraError(f"{spec}: sdim g_{k} != sdim g_-{k}")
    return GradingReport(spec, depth, levels, g0_descriptor(galg))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _signed_permutations():
    for perm in itertools.permutations(range(3)):
        for signs in itertools.product((1, -1), repeat=3):
            yield perm, signs


def _apply_signed(perm, signs, coords):
    out = [0, 0, 0]
    for i, c in enumerate(coords):
        out[perm[i]] = signs[i] * c
    return tuple(out)


def parameter_change(perm: Sequence[int]) -> RationalFunction:
    """New parameter a' = s'_3/s'_2 after moving slot i to slot perm[i]."""
    s = standard_s()
    new = [None, None, None]
    for i in range(3):
        new[perm[i]] = s[i]
    return new[2] / new[1]


@dataclass
class Equivalence:
    source: ParabolicSpec
    target: ParabolicSpec
    kind: str
    parameter: str


def diagram_isomorphisms():
    """Signed permutations of the eps_i carrying one standard system onto another."""
    out = []
    for d in DIAGRAMS:
        src = SIMPLE_ROOTS[d]
        for perm, signs in _signed_permutations():
            img = [_apply_signed(perm, signs, r) for r in src]
            for d2 in DIAGRAMS:
                tgt = SIMPLE_ROOTS[d2]
                if sorted(img) != sorted(tgt):
                    continue
                node = tuple(tgt.index(r) + 1 for r in img)
                out.append((d, d2, node, perm, signs))
    return out


def reflection_equivalences() -> list[Equivalence]:
    """Edges from odd reflections at uncrossed isotropic nodes and diagram isomorphisms."""
    edges = []
    s = standard_s()
    for spec in all_specs():
        system = SimpleSystem.standard(spec.diagram)
        for j in range(3):
            if j + 1 in spec.crosses:
                continue
            r = system.roots[j]
            if r.parity != 1:
                continue
            new = odd_reflection(system, j, s)
            if new.label is None:
                continue
            edges.append(Equivalence(spec, ParabolicSpec(new.label, spec.crosses), f"odd reflection at node {j + 1}", "a"))
    for d, d2, node, perm, signs in diagram_isomorphisms():
        param = str(parameter_change(perm))
        for c in range(1, 8):
            crosses = tuple(i + 1 for i in range(3) if c >> i & 1)
            src = ParabolicSpec(d, crosses)
            tgt = ParabolicSpec(d2, tuple(node[i - 1] for i in crosses))
            if src != tgt:
                edges.append(Equivalence(src, tgt, f"eps permutation {perm} signs {signs}", param))
    return edges


def _components(nodes, edges) -> list[list]:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: (len(g), g))


@dataclass
class Classification:
    by_signature: list[list[ParabolicSpec]]
    by_orbit: list[list[ParabolicSpec]]
    reports: dict[ParabolicSpec, GradingReport] = field(default_factory=dict)

    @property
    def classes(self) -> list[list[ParabolicSpec]]:
        return self.by_signature

    def agree(self) -> bool:
        norm = lambda cls: sorted(tuple(sorted(c)) for c in cls)
        return norm(self.by_signature) == norm(self.by_orbit)

    def class_of(self, spec: ParabolicSpec) -> list[ParabolicSpec]:
        for c in self.by_signature:
            if spec in c:
                return c
        raise KeyError(spec)


class ClassificationMismatch(AlgebraError):
    pass


def classify_parabolics(alg: BasisSuperalgebra | None = None) -> Classification:
    alg = alg if alg is not None else d21a()
    specs = all_specs()
    reports = {sp: grading(sp, alg) for sp in specs}
    sig_groups: dict = {}
    for sp in specs:
        sig_groups.setdefault(reports[sp].signature(), []).append(sp)
    by_sig = sorted((sorted(g) for g in sig_groups.values()), key=lambda g: (len(g), g))
    by_orbit = _components(specs, [(e.source, e.target) for e in reflection_equivalences()])
    result = Classification(by_sig, by_orbit, reports)
    if not result.agree():
        sig_set = {tuple(c) for c in map(sorted, by_sig)}
        witness = next(c for c in by_orbit if tuple(sorted(c)) not in sig_set)
        raise ClassificationMismatch(f"signature and orbit partitions differ; orbit class {witness}")
    return result


def render_diagram(label: str, crosses: Sequence[int] = (), s: Sequence[RationalFunction] | None = None) -> str:
    """One-line text rendering: nodes (o white, (x) grey), crosses, labelled edges."""
    system = SimpleSystem.standard(label)
    C = cartan_matrix(system, s)
    nodes = []
    for i, r in enumerate(system.roots):
        iso = r.parity == 1
        mark = "X" if (i + 1) in crosses else ""
        nodes.append(f"{i + 1}:{'grey' if iso else 'white'}{mark and '[x]'}")
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            cij, cji = C.entries[i][j], C.entries[j][i]
            if cij.is_zero() and cji.is_zero():
                continue
            mult = [x for x in (cij, cji) if not (x.is_constant() and abs(x.constant_value()) <= 1)]
            if mult:
                lab = mult[0] if not str(mult[0]).startswith("-") else -mult[0]
                edges.append(f"{i + 1}-{j + 1}[{lab}]")
            else:
                edges.append(f"{i + 1}-{j + 1}")
    return f"DD-{label}: " + " ".join(nodes) + " | " + " ".join(edges)
