"""Tanaka-Weisfeiler prolongation of graded nilpotent Lie superalgebras.

Nonnegative levels are stored as homogeneous linear maps on m = g_{<0}:
an element A of degree j sends x in g_{-i} to A(x) of degree j - i, which is
either a vector of m (j < i) or an element of an earlier level.  The bracket
of such an element with x in m is evaluation, [A, x] = A(x).  Level j is the
space of maps satisfying

    A[x, y] = [A x, y] + (-1)^{|x||A|} [x, A y]        for all x, y in m,

which is a linear system in the coordinates of A.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .liesuper import AlgebraError, BasisSuperalgebra, Subspace, sign, vec_add
from .roots import ParabolicSpec, graded_algebra
from .scalars import (
    ExceptionalLocus,
    RationalFunction,
    SparseMatrix,
    nullspace,
    rank_with_locus,
    rf,
)

Key = tuple  # ("m", galg index) or ("p", level, position)


class Mode(str, Enum):
    M = "m"
    M_G0 = "m-g0"
    G_LE_K = "gk"


class ProlongationError(AlgebraError):
    pass


@dataclass
class GradedMapSpace:
    """Basis of degree-j maps on m; ``maps[n][x]`` is the image of m basis index x."""

    degree: int
    maps: list[dict[int, dict[Key, RationalFunction]]]
    parities: list[int]
    names: list[str] = field(default_factory=list)

    @property
    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return (len(self.parities) - odd, odd)

    def __len__(self) -> int:
        return len(self.maps)


@dataclass
class ProlongationReport:
    spec: str
    mode: str
    k: int | None
    levels: dict[int, tuple[int, int]]
    terminated_at: int | None
    cutoff: int
    locus: ExceptionalLocus
    seconds: float = 0.0

    @property
    def terminated(self) -> bool:
        return self.terminated_at is not None

    def positive_dims(self) -> list[tuple[int, int]]:
        return [self.levels[j] for j in sorted(self.levels) if j >= 1]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "mode": self.mode,
            "k": self.k,
            "levels": {str(j): list(v) for j, v in sorted(self.levels.items())},
            "termination": (f"terminated at {self.terminated_at}" if self.terminated else "cutoff reached"),
            "cutoff": self.cutoff,
            "locus": self.locus.names(),
        }


@dataclass
class ProlongationState:
    alg: BasisSuperalgebra
    m: list[int]
    levels: list[GradedMapSpace] = field(default_factory=list)
    mode: Mode = Mode.M
    seed_k: int | None = None
    locus: ExceptionalLocus = field(default_factory=ExceptionalLocus)

    # -- elementary operations --------------------------------------------
    def key_parity(self, key: Key) -> int:
        if key[0] == "m":
            return self.alg.parity(key[1])
        return self.levels[key[1]].parities[key[2]]

    def keys_of_degree(self, d: int) -> list[Key]:
        if d < 0:
            return [("m", i) for i in self.m if self.alg.degree(i) == d]
        if d >= len(self.levels):
            return []
        return [("p", d, n) for n in range(len(self.levels[d]))]

    def bracket_with_m(self, key: Key, y: int) -> dict[Key, RationalFunction]:
        """[key, y] for a basis key and y in m."""
        if key[0] == "m":
            return {("m", k): c for k, c in self.alg.bracket_basis(key[1], y).items()}
        return self.levels[key[1]].maps[key[2]].get(y, {})

    # -- level computation ------------------------------------------------
    def constraint_system(self, j: int, parity: int):
        alg, m = self.alg, self.m
        unknowns: dict[tuple[int, Key], int] = {}
        for x in m:
            for t in self.keys_of_degree(alg.degree(x) + j):
                if self.key_parity(t) == (alg.parity(x) + parity) % 2:
                    unknowns[(x, t)] = len(unknowns)
        by_source: dict[int, list[tuple[Key, int]]] = {}
        for (x, t), u in unknowns.items():
            by_source.setdefault(x, []).append((t, u))
        rows = []
        for x in m:
            px = alg.parity(x)
            for y in m:
                row: dict[tuple, dict[int, RationalFunction]] = {}

                def add(out_key, u, c):
                    r = row.setdefault(out_key, {})
                    v = r.get(u)
                    r[u] = c if v is None else v + c

                # A([x, y])
                for k, c in alg.bracket_basis(x, y).items():
                    for t, u in by_source.get(k, ()):
                        add(t, u, c)
                # - [A x, y]
                for t, u in by_source.get(x, ()):
                    for out, c in self.bracket_with_m(t, y).items():
                        add(out, u, -c)
                # - (-1)^{|x| p} [x, A y] = (-1)^{|x| p} (-1)^{|x||t|} [t, x]
                for t, u in by_source.get(y, ()):
                    s = sign(px * parity + px * self.key_parity(t))
                    for out, c in self.bracket_with_m(t, x).items():
                        add(out, u, c * s)
                for r in row.values():
                    r = {u: c for u, c in r.items() if not c.is_zero()}
                    if r:
                        rows.append(r)
        return unknowns, rows

    def solve_level(self, j: int) -> GradedMapSpace:
        maps, parities = [], []
        for parity in (0, 1):
            unknowns, rows = self.constraint_system(j, parity)
            if not unknowns:
                continue
            basis, locus = nullspace(SparseMatrix.from_row_dicts(rows, len(unknowns)))
            self.locus = self.locus.union(locus)
            inv = {u: xt for xt, u in unknowns.items()}
            for vec in basis:
                A: dict[int, dict[Key, RationalFunction]] = {}
                for u, c in enumerate(vec):
                    if not c.is_zero():
                        x, t = inv[u]
                        A.setdefault(x, {})[t] = c
                maps.append(A)
                parities.append(parity)
        return GradedMapSpace(j, maps, parities)

    def seed_from_algebra(self, level: int) -> GradedMapSpace:
        """Embed g_level into maps on m via the adjoint action."""
        alg = self.alg
        idx = alg.level(level)
        maps = []
        for z in idx:
            A: dict[int, dict[Key, RationalFunction]] = {}
            for x in self.m:
                out = {}
                for k, c in alg.bracket_basis(z, x).items():
                    d = alg.degree(k)
                    if d < 0:
                        out[("m", k)] = c
                    else:
                        out[("p", d, alg.level(d).index(k))] = c
                if out:
                    A[x] = out
            maps.append(A)
        space = GradedMapSpace(level, maps, [alg.parity(z) for z in idx], alg.names(idx))
        if _map_rank(space, self.m) != len(idx):
            raise ProlongationError(f"adjoint action of g_{level} on m is not injective")
        return space

    def is_effective(self, space: GradedMapSpace) -> bool:
        g1 = [x for x in self.m if self.alg.degree(x) == -1]
        return _map_rank(space, g1) == len(space)

    def verify_level(self, space: GradedMapSpace) -> bool:
        """Re-check the defining identity on every basis pair for every map."""
        alg = self.alg
        for A, p in zip(space.maps, space.parities):
            for x in self.m:
                for y in self.m:
                    lhs: dict = {}
                    for k, c in alg.bracket_basis(x, y).items():
                        lhs = vec_add(lhs, A.get(k, {}), c)
                    rhs: dict = {}
                    for t, c in A.get(x, {}).items():
                        rhs = vec_add(rhs, self.bracket_with_m(t, y), c)
                    for t, c in A.get(y, {}).items():
                        s = sign(alg.parity(x) * p + alg.parity(x) * self.key_parity(t))
                        rhs = vec_add(rhs, self.bracket_with_m(t, x), c * (-s))
                    if vec_add(lhs, rhs, -1):
                        return False
        return True


def _map_rank(space: GradedMapSpace, sources: Sequence[int]) -> int:
    cols: dict[tuple, int] = {}
    rows = []
    for A in space.maps:
        row = {}
        for x in sources:
            for t, c in A.get(x, {}).items():
                row[cols.setdefault((x, t), len(cols))] = c
        rows.append(row)
    if not cols:
        return 0
    r, _ = rank_with_locus(SparseMatrix.from_row_dicts(rows, len(cols)))
    return r


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def is_fundamental(alg: BasisSuperalgebra, m: Sequence[int]) -> bool:
    """Whether g_{-1} bracket-generates m."""
    g1 = [i for i in m if alg.degree(i) == -1]
    span = [{i: rf(1)} for i in g1]
    current = list(span)
    while current:
        new = []
        for v in current:
            for x in g1:
                w = alg.bracket({x: rf(1)}, v)
                if w:
                    new.append(w)
        sub = Subspace(alg, span + new)
        if sub.dim == len(Subspace(alg, span).vectors):
            break
        span = sub.vectors
        current = new
    return Subspace(alg, span).dim == len(m)


def _state(galg: BasisSuperalgebra, side: int = -1) -> ProlongationState:
    m = [i for i in range(galg.dim) if galg.degree(i) < 0]
    return ProlongationState(galg, m)


def der0(galg: BasisSuperalgebra) -> GradedMapSpace:
    """Grade-preserving derivations of m = g_{<0}."""
    st = _state(galg)
    if not is_fundamental(galg, st.m):
        raise ProlongationError("m is not generated by g_-1")
    return st.solve_level(0)


def prolong(galg: BasisSuperalgebra | ParabolicSpec, mode: Mode | str = Mode.M, cutoff: int = 6,
            k: int | None = None, spec_label: str = "") -> ProlongationReport:
    """Compute pr(m), pr(m, g0) or pr(g_{<=k}) level by level."""
    t0 = time.time()
    if isinstance(galg, ParabolicSpec):
        spec_label = spec_label or galg.label
        galg = graded_algebra(galg)
    mode = Mode(mode)
    st = _state(galg)
    st.mode = mode
    if not is_fundamental(galg, st.m):
        raise ProlongationError("m is not generated by g_-1")
    if mode is Mode.M:
        first = 0
    elif mode is Mode.M_G0:
        st.levels.append(st.seed_from_algebra(0))
        first = 1
    else:
        if k is None or k < 0:
            raise ProlongationError("mode gk needs k >= 0")
        top = max(galg.degree(i) for i in range(galg.dim))
        for lvl in range(0, min(k, top) + 1):
            st.levels.append(st.seed_from_algebra(lvl))
        for lvl in range(top + 1, k + 1):
            st.levels.append(GradedMapSpace(lvl, [], []))
        first = k + 1
        st.seed_k = k
    levels = {j: st.levels[j].sdim for j in range(len(st.levels))}
    terminated = None
    for j in range(first, cutoff + 1):
        space = st.solve_level(j)
        if not st.is_effective(space):
            raise ProlongationError(f"level {j} fails effectivity")
        st.levels.append(space)
        levels[j] = space.sdim
        if len(space) == 0:
            terminated = j
            break
    report = ProlongationReport(spec_label, mode.value, k, levels, terminated, cutoff, st.locus,
                                time.time() - t0)
    report.state = st  # type: ignore[attr-defined]
    return report


# ---------------------------------------------------------------------------
# infinite type
# ---------------------------------------------------------------------------


@dataclass
class Witness:
    v: dict
    V: list[dict]
    note: str = ""


def part_indices(galg: BasisSuperalgebra, side: int = -1) -> list[int]:
    """Indices of g_{<0} (side=-1) or g_{>0} (side=+1)."""
    return [i for i in range(galg.dim) if galg.degree(i) * side > 0]


def verify_witness(galg: BasisSuperalgebra, m: Sequence[int], v: Mapping[int, RationalFunction],
                   V: Sequence[Mapping[int, RationalFunction]]) -> bool:
    """True iff V is a hyperplane of span(m) and [v, V] = 0."""
    msub = Subspace(galg, [{i: rf(1)} for i in m])
    Vs = Subspace(galg, [dict(x) for x in V])
    if not all(msub.contains(dict(x)) for x in V):
        raise ProlongationError("V is not contained in m")
    if Vs.dim != len(m) - 1:
        raise ProlongationError(f"V has codimension {len(m) - Vs.dim}, expected 1")
    return all(not galg.bracket(dict(v), x) for x in Vs.vectors)


def witness_search(galg: BasisSuperalgebra, m: Sequence[int] | None = None,
                   pool: Sequence[Mapping[int, RationalFunction]] | None = None) -> Witness | None:
    """Look for v in the degree +-1 part with rank(ad_v restricted to m) <= 1."""
    m = list(m) if m is not None else part_indices(galg, -1)
    side = -1 if galg.degree(m[0]) < 0 else 1
    if max(abs(galg.degree(i)) for i in m) == 1:
        return Witness({}, [], note="|1|-graded: m is abelian, pr(m) = m (x) S(m*) is infinite")
    if pool is None:
        pool = [{i: rf(1)} for i in m if galg.degree(i) == side]
    for v in pool:
        rows = {}
        for c, x in enumerate(m):
            for t, val in galg.bracket(dict(v), {x: rf(1)}).items():
                rows.setdefault(t, {})[c] = val
        M = SparseMatrix.from_row_dicts(list(rows.values()), len(m))
        r, _ = rank_with_locus(M)
        if r <= 1:
            ker, _ = nullspace(M)
            V = [{m[c]: x for c, x in enumerate(vec) if not x.is_zero()} for vec in ker]
            if r == 0:
                V = V[:-1]
            return Witness(dict(v), V)
    return None
