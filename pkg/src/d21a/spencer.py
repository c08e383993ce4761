"""Weight-sliced Chevalley-Eilenberg (generalized Spencer) cohomology H^{i,j}(m, g).

Cochains are written in ghost form: every basis vector e_a of m gets a dual
generator c^a of parity |e_a| + 1, so duals of even vectors anticommute and
duals of odd vectors commute.  A cochain is a sum of monomials M (x) v with
v in g, and the differential is

    d = sum_a c^a rho(e_a) - 1/2 sum_{a,b,k} (-1)^{|a||b|+|a|} f_ab^k c^a c^b d/dc^k,

where rho is the adjoint action of m on g.  The weight of M (x) v is
deg(v) minus the degrees of the m-vectors whose duals occur in M; the map
parity is |v| plus the parities of those vectors.  Both are preserved by d,
so the complex splits into independent slices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .liesuper import BasisSuperalgebra, sign
from .roots import ParabolicSpec, graded_algebra
from .scalars import (
    FAST_PRIME,
    ExceptionalLocus,
    RationalFunction,
    SparseMatrix,
    random_points,
    rank_at,
    rank_with_locus,
)

Monomial = tuple  # exponent per m basis vector


@dataclass
class SuperExteriorBasis:
    """Degree-n monomials in the duals of m: skew in even duals, symmetric in odd duals."""

    degree: int
    parities: tuple[int, ...]
    degrees: tuple[int, ...]
    monomials: list[Monomial] = field(default_factory=list)

    def __post_init__(self):
        if not self.monomials:
            self.monomials = list(_monomials(self.parities, self.degree))

    def weight(self, M: Monomial) -> int:
        return -sum(e * d for e, d in zip(M, self.degrees))

    def map_parity(self, M: Monomial) -> int:
        return sum(e * p for e, p in zip(M, self.parities)) % 2

    def __len__(self) -> int:
        return len(self.monomials)


def _monomials(parities: Sequence[int], n: int):
    k = len(parities)

    def rec(i, left):
        if i == k:
            if left == 0:
                yield ()
            return
        top = left if parities[i] == 1 else min(1, left)
        for e in range(top + 1):
            for rest in rec(i + 1, left - e):
                yield (e,) + rest

    yield from rec(0, n)


def expected_count(n_even: int, n_odd: int, n: int) -> int:
    from math import comb

    return sum(comb(n_even, p) * comb(n_odd + n - p - 1, n - p) if n - p > 0 else comb(n_even, p)
               for p in range(0, min(n_even, n) + 1))


# ---------------------------------------------------------------------------
# the complex
# ---------------------------------------------------------------------------


class SpencerComplex:
    """Cochain complex of m = g_{<0} with values in g (restricted adjoint module)."""

    def __init__(self, galg: BasisSuperalgebra, quad_sign=(1, 0, 1), quad_scale=Fraction(-1, 2)):
        self.g = galg
        self.m = [i for i in range(galg.dim) if galg.degree(i) < 0]
        self.pm = tuple(galg.parity(i) for i in self.m)
        self.dm = tuple(galg.degree(i) for i in self.m)
        self._pos = {x: a for a, x in enumerate(self.m)}
        self.quad_sign = quad_sign
        self.quad_scale = quad_scale
        self._ext: dict[int, SuperExteriorBasis] = {}
        # structure constants of m in local indices
        self.f: dict[tuple[int, int], dict[int, RationalFunction]] = {}
        for a, x in enumerate(self.m):
            for b, y in enumerate(self.m):
                v = galg.bracket_basis(x, y)
                if v:
                    self.f[(a, b)] = {self._pos[k]: c for k, c in v.items()}

    def ext(self, n: int) -> SuperExteriorBasis:
        if n not in self._ext:
            self._ext[n] = SuperExteriorBasis(n, self.pm, self.dm)
        return self._ext[n]

    # ghost algebra ---------------------------------------------------------
    def ghost_parity(self, M: Monomial) -> int:
        return sum(e * (p + 1) for e, p in zip(M, self.pm)) % 2

    def mul_left(self, a: int, M: Monomial) -> tuple[int, Monomial] | None:
        """c^a * M as (sign, monomial), or None if zero."""
        if self.pm[a] == 0:  # odd ghost
            if M[a]:
                return None
            s = sum(M[b] for b in range(a) if self.pm[b] == 0) % 2
            return (sign(s), M[:a] + (1,) + M[a + 1:])
        return (1, M[:a] + (M[a] + 1,) + M[a + 1:])

    def deriv(self, k: int, M: Monomial) -> tuple[int, Monomial] | None:
        """Left derivative d/dc^k applied to M."""
        if not M[k]:
            return None
        new = M[:k] + (M[k] - 1,) + M[k + 1:]
        if self.pm[k] == 0:
            s = sum(M[b] for b in range(k) if self.pm[b] == 0) % 2
            return (sign(s), new)
        return (M[k], new)

    # cochains ------------------------------------------------------------------
    def cochain_basis(self, n: int, weight: int | None = None, parity: int | None = None) -> list[tuple[Monomial, int]]:
        E = self.ext(n)
        out = []
        for M in E.monomials:
            wM = E.weight(M)
            pM = E.map_parity(M)
            for v in range(self.g.dim):
                if weight is not None and wM + self.g.degree(v) != weight:
                    continue
                if parity is not None and (pM + self.g.parity(v)) % 2 != parity:
                    continue
                out.append((M, v))
        return out

    def slices(self, n: int) -> set[tuple[int, int]]:
        E = self.ext(n)
        out = set()
        for M in E.monomials:
            for v in range(self.g.dim):
                out.add((E.weight(M) + self.g.degree(v), (E.map_parity(M) + self.g.parity(v)) % 2))
        return out

    def apply(self, M: Monomial, v: int) -> dict[tuple[Monomial, int], RationalFunction]:
        """d(M (x) e_v) as a sparse combination of basis cochains."""
        out: dict[tuple[Monomial, int], RationalFunction] = {}

        def add(key, c):
            x = out.get(key)
            out[key] = c if x is None else x + c

        gp = self.ghost_parity(M)
        for a, x in enumerate(self.m):
            w = self.g.bracket_basis(x, v)
            if not w:
                continue
            r = self.mul_left(a, M)
            if r is None:
                continue
            s = r[0] * sign(self.pm[a] * gp)
            for k, c in w.items():
                add((r[1], k), c * s)
        al, be, ga = self.quad_sign
        for k in range(len(self.m)):
            d = self.deriv(k, M)
            if d is None:
                continue
            for (a, b), fab in self.f.items():
                c = fab.get(k)
                if c is None:
                    continue
                r1 = self.mul_left(b, d[1])
                if r1 is None:
                    continue
                r2 = self.mul_left(a, r1[1])
                if r2 is None:
                    continue
                pa, pb = self.pm[a], self.pm[b]
                s = d[0] * r1[0] * r2[0] * sign(al * pa * pb + be * pb + ga * pa)
                add((r2[1], v), c * (self.quad_scale * s))
        return {k: c for k, c in out.items() if not c.is_zero()}

    def differential(self, n: int, weight: int, parity: int) -> tuple[SparseMatrix, list, list]:
        src = self.cochain_basis(n, weight, parity)
        tgt = self.cochain_basis(n + 1, weight, parity)
        tindex = {k: i for i, k in enumerate(tgt)}
        ent = {}
        for j, (M, v) in enumerate(src):
            for key, c in self.apply(M, v).items():
                ent[(tindex[key], j)] = c
        M = SparseMatrix.__new__(SparseMatrix)
        M.rows, M.cols, M.entries = len(tgt), len(src), ent
        return M, src, tgt


def ce_differential(galg: BasisSuperalgebra, n: int, weight: int, parity: int | None = None) -> SparseMatrix:
    """Matrix of d: C^n -> C^{n+1} on a weight slice (both parities if parity is None)."""
    cx = SpencerComplex(galg)
    if parity is not None:
        return cx.differential(n, weight, parity)[0]
    src = cx.cochain_basis(n, weight)
    tgt = cx.cochain_basis(n + 1, weight)
    tindex = {k: i for i, k in enumerate(tgt)}
    ent = {}
    for j, (M, v) in enumerate(src):
        for key, c in cx.apply(M, v).items():
            ent[(tindex[key], j)] = c
    return SparseMatrix(len(tgt), len(src), ent)


# ---------------------------------------------------------------------------
# cohomology
# ---------------------------------------------------------------------------


@dataclass
class CohomologyTable:
    spec: str
    entries: list[tuple[int, int, tuple[int, int]]]  # (weight i, degree j, sdim)
    locus: ExceptionalLocus = field(default_factory=ExceptionalLocus)
    d_squared_zero: bool = True
    seconds: float = 0.0

    def degree(self, j: int) -> dict[int, tuple[int, int]]:
        return {i: s for i, jj, s in self.entries if jj == j}

    def render(self) -> str:
        rows = []
        for j in sorted({e[1] for e in self.entries}):
            terms = [f"C^{{{p}|{q}}}_{i}" for i, (p, q) in sorted(self.degree(j).items())]
            rows.append(f"H^{j}: " + " + ".join(terms))
        return "\n".join(rows)

    def to_dict(self) -> dict:
        return {"spec": self.spec,
                "H": {str(j): {str(i): list(s) for i, s in sorted(self.degree(j).items())}
                      for j in sorted({e[1] for e in self.entries})},
                "locus": self.locus.names(), "d_squared_zero": self.d_squared_zero}


def _rank(M: SparseMatrix, fast_points, symbolic: bool) -> tuple[int, ExceptionalLocus]:
    if M.rows == 0 or M.cols == 0 or not M.entries:
        return 0, ExceptionalLocus()
    if symbolic:
        return rank_with_locus(M)
    ranks = {rank_at(M, pt, FAST_PRIME) for pt in fast_points}
    return max(ranks), ExceptionalLocus()


def cohomology(spec: ParabolicSpec | BasisSuperalgebra, j_max: int = 2, symbolic: bool = True,
               point: Mapping[str, Fraction] | None = None, seed: int = 0, check_d2: bool = True) -> CohomologyTable:
    """H^{i,j}(m, g) for j <= j_max by rank-nullity on every (weight, parity) slice.

    With ``symbolic=False`` ranks are taken at random rational points (or at
    ``point``) modulo a large prime; the symbolic mode works over Q(a) and
    reports the exceptional locus of all pivots.
    """
    t0 = time.time()
    label = spec.label if isinstance(spec, ParabolicSpec) else ""
    galg = graded_algebra(spec) if isinstance(spec, ParabolicSpec) else spec
    if point is not None:
        galg = galg.specialize(point)
    cx = SpencerComplex(galg)
    params = galg.parameters
    fast_points = random_points(params, 3, seed) if params else [{}]
    locus = ExceptionalLocus()
    ranks: dict[tuple[int, int, int], int] = {}
    d2_ok = True
    for n in range(0, j_max + 1):
        for (w, p) in sorted(cx.slices(n)):
            D, _, _ = cx.differential(n, w, p)
            r, loc = _rank(D, fast_points, symbolic and bool(params))
            locus = locus.union(loc)
            ranks[(n, w, p)] = r
            if check_d2 and n >= 1:
                Dprev, _, _ = cx.differential(n - 1, w, p)
                if Dprev.cols and D.cols and not (D @ Dprev).is_zero():
                    d2_ok = False
    entries = []
    for n in range(0, j_max + 1):
        dims: dict[int, list[int]] = {}
        for (w, p) in cx.slices(n):
            c = len(cx.cochain_basis(n, w, p))
            h = c - ranks.get((n, w, p), 0) - ranks.get((n - 1, w, p), 0)
            if h:
                dims.setdefault(w, [0, 0])[p] += h
        for w in sorted(dims):
            entries.append((w, n, tuple(dims[w])))
    return CohomologyTable(label, entries, locus, d2_ok, time.time() - t0)


def d_squared_defects(galg: BasisSuperalgebra, n_max: int = 2, **kw) -> list[tuple[int, int, int]]:
    """Slices (n, weight, parity) where d_{n} d_{n-1} != 0."""
    cx = SpencerComplex(galg, **kw)
    bad = []
    for n in range(1, n_max + 1):
        for (w, p) in sorted(cx.slices(n)):
            D1, _, _ = cx.differential(n, w, p)
            D0, _, _ = cx.differential(n - 1, w, p)
            if D0.cols and D1.cols and not (D1 @ D0).is_zero():
                bad.append((n, w, p))
    return bad


# ---------------------------------------------------------------------------
# consistency with prolongation
# ---------------------------------------------------------------------------


@dataclass
class ConsistencyReport:
    spec: str
    h1_weights: list[int]
    predicted: str
    expected: str | None
    consistent: bool


def predicted_statement(h1_weights: Sequence[int]) -> str:
    """Strongest prolongation statement implied by the weights carrying H^1."""
    nonneg = [i for i in h1_weights if i >= 0]
    if not nonneg:
        return "pr(m)=g"
    pos = [i for i in nonneg if i > 0]
    if not pos:
        return "pr(m,g0)=g"
    return f"pr(g<={max(pos)})=g"


def h1_prolongation_consistency(table: CohomologyTable, expected: str | None = None) -> ConsistencyReport:
    weights = sorted(table.degree(1))
    pred = predicted_statement(weights)
    return ConsistencyReport(table.spec, weights, pred, expected, expected is None or expected == pred)
