"""Finite-dimensional Lie superalgebras given by structure constants.

The central object is :class:`BasisSuperalgebra`, a basis with parities (and
optionally integer degrees) together with a sparse bracket table over
:class:`~d21a.scalars.RationalFunction`.  :func:`build_gamma` produces the
17-dimensional algebra Gamma(s1, s2, s3) whose even part is three copies of
sl(2) and whose odd part is the triple tensor product of their standard
representations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import (
    ExceptionalLocus,
    RationalFunction,
    SparseMatrix,
    merge_variables,
    nullspace,
    rf,
)

Vector = dict  # index -> RationalFunction, no zero entries


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


def vec_add(u: Vector, v: Vector, c: RationalFunction | int = 1) -> Vector:
    """Return u + c*v."""
    out = dict(u)
    c = rf(c)
    for k, x in v.items():
        y = out.get(k)
        z = x * c if y is None else y + x * c
        if z.is_zero():
            out.pop(k, None)
        else:
            out[k] = z
    return out


def vec_scale(u: Vector, c) -> Vector:
    c = rf(c)
    if c.is_zero():
        return {}
    return {k: x * c for k, x in u.items()}


def vec_is_zero(u: Vector) -> bool:
    return all(x.is_zero() for x in u.values())


def sign(k: int) -> int:
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    name: str
    parity: int  # 0 even, 1 odd
    degree: int | None = None


class BasisSuperalgebra:
    """Basis-indexed Lie superalgebra with sparse structure constants.

    ``brackets[(i, j)]`` holds the coordinates of [e_i, e_j]; only nonzero
    brackets are stored, and the table is closed under the super-antisymmetry
    rule on construction.
    """

    def __init__(self, basis: Sequence[BasisElement], brackets: Mapping[tuple[int, int], Vector],
                 parameters: Sequence[str] = ()):
        self.basis = list(basis)
        names = [b.name for b in self.basis]
        if len(set(names)) != len(names):
            raise AlgebraError("basis names must be unique")
        self._index = {n: i for i, n in enumerate(names)}
        self.parameters = tuple(parameters)
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), v in brackets.items():
            v = {k: rf(c) for k, c in v.items() if not rf(c).is_zero()}
            if not v:
                continue
            pi, pj = self.basis[i].parity, self.basis[j].parity
            for k in v:
                if self.basis[k].parity != (pi + pj) % 2:
                    raise AlgebraError(f"[{names[i]},{names[j]}] has wrong parity component {names[k]}")
            table[(i, j)] = v
            mirror = vec_scale(v, -sign(pi * pj))
            if (j, i) in brackets:
                other = {k: rf(c) for k, c in brackets[(j, i)].items() if not rf(c).is_zero()}
                if not vec_is_zero(vec_add(other, mirror, -1)):
                    raise AlgebraError(f"bracket table not super-antisymmetric at ({names[i]},{names[j]})")
            table[(j, i)] = mirror
        self.table = table
        if any(b.degree is not None for b in self.basis):
            self._check_degrees()

    # -- basic accessors ---------------------------------------------------
    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sdim(self, indices: Iterable[int] | None = None) -> tuple[int, int]:
        idx = range(self.dim) if indices is None else indices
        return _sdim(self.basis[i].parity for i in idx)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"no basis element named {name!r}") from None

    def names(self, indices: Iterable[int] | None = None) -> list[str]:
        idx = range(self.dim) if indices is None else indices
        return [self.basis[i].name for i in idx]

    def parity(self, i: int) -> int:
        return self.basis[i].parity

    def degree(self, i: int) -> int:
        d = self.basis[i].degree
        if d is None:
            raise AlgebraError("algebra carries no grading")
        return d

    @property
    def graded(self) -> bool:
        return all(b.degree is not None for b in self.basis)

    def vec(self, spec: Mapping[str, object] | str) -> Vector:
        """Vector from a name or a {name: coefficient} mapping."""
        if isinstance(spec, str):
            return {self.index(spec): RationalFunction.const(1)}
        return {self.index(n): rf(c) for n, c in spec.items() if rf(c) != 0}

    # -- brackets ----------------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def bracket(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.table.get((i, j))
                if w:
                    out = vec_add(out, w, a * b)
        return out

    def bracket_names(self, x: str, y: str) -> Vector:
        return self.bracket_basis(self.index(x), self.index(y))

    def format(self, v: Vector) -> str:
        if not v:
            return "0"
        parts = []
        for k in sorted(v):
            c = v[k]
            parts.append(f"({c})*{self.basis[k].name}")
        return " + ".join(parts)

    def ad_matrix(self, u: Vector) -> SparseMatrix:
        """Matrix of ad_u in the basis (columns = images of basis vectors)."""
        ent = {}
        for j in range(self.dim):
            for k, c in self.bracket(u, {j: RationalFunction.const(1)}).items():
                ent[(k, j)] = c
        return SparseMatrix(self.dim, self.dim, ent)

    # -- gradings ----------------------------------------------------------
    def with_degrees(self, degrees: Sequence[int]) -> "BasisSuperalgebra":
        basis = [BasisElement(b.name, b.parity, int(d)) for b, d in zip(self.basis, degrees)]
        return BasisSuperalgebra(basis, self.table, self.parameters)

    def _check_degrees(self) -> None:
        for (i, j), v in self.table.items():
            d = self.basis[i].degree + self.basis[j].degree
            for k in v:
                if self.basis[k].degree != d:
                    raise AlgebraError(
                        f"grading not additive on [{self.basis[i].name},{self.basis[j].name}] -> {self.basis[k].name}")

    def level(self, k: int) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.degree == k]

    def depth(self) -> int:
        return -min(b.degree for b in self.basis)

    def negative_part(self) -> list[int]:
        return [i for i, b in enumerate(self.basis) if b.degree < 0]

    def subalgebra(self, indices: Sequence[int]) -> "BasisSuperalgebra":
        """Restriction to a bracket-closed span of basis vectors."""
        pos = {i: n for n, i in enumerate(indices)}
        tab = {}
        for a in indices:
            for b in indices:
                v = self.table.get((a, b))
                if not v:
                    continue
                if any(k not in pos for k in v):
                    raise AlgebraError("index set is not closed under the bracket")
                tab[(pos[a], pos[b])] = {pos[k]: c for k, c in v.items()}
        return BasisSuperalgebra([self.basis[i] for i in indices], tab, self.parameters)

    def specialize(self, point: Mapping[str, object]) -> "BasisSuperalgebra":
        tab = {}
        for key, v in self.table.items():
            tab[key] = {k: c.subs(point) for k, c in v.items()}
        params = tuple(p for p in self.parameters if p not in point)
        return BasisSuperalgebra(self.basis, tab, params)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> str:
        basis = []
        for b in self.basis:
            d = {"name": b.name, "parity": b.parity}
            if b.degree is not None:
                d["degree"] = b.degree
            basis.append(d)
        brackets = []
        for (i, j), v in sorted(self.table.items()):
            if i <= j:
                brackets.append({"i": i, "j": j, "terms": [{"k": k, "coeff": str(c)} for k, c in sorted(v.items())]})
        return json.dumps({"parameters": list(self.parameters), "basis": basis, "brackets": brackets})

    @classmethod
    def from_json(cls, text: str) -> "BasisSuperalgebra":
        data = json.loads(text)
        basis = [BasisElement(b["name"], int(b["parity"]), b.get("degree")) for b in data["basis"]]
        tab = {}
        for br in data["brackets"]:
            tab[(br["i"], br["j"])] = {t["k"]: rf(t["coeff"]) for t in br["terms"]}
        return cls(basis, tab, data.get("parameters", ()))


def _sdim(parities: Iterable[int]) -> tuple[int, int]:
    ps = list(parities)
    odd = sum(ps)
    return (len(ps) - odd, odd)


# ---------------------------------------------------------------------------
# Gamma(s1, s2, s3)
# ---------------------------------------------------------------------------

EVEN_NAMES = [f"{t}{i}" for i in (1, 2, 3) for t in ("X", "H", "Y")]
ODD_NAMES = ["".join(w) for w in itertools.product("xy", repeat=3)]

_HALF = Fraction(1, 2)


def _eta(v: str, w: str) -> int:
    if v == "x" and w == "y":
        return 1
    if v == "y" and w == "x":
        return -1
    return 0


def _phi(v: str, w: str) -> tuple[str, Fraction]:
    """phi(vw) as (sl2 basis letter, coefficient): x^2->X, -2xy->H, -y^2->Y."""
    pair = "".join(sorted(v + w))
    return {"xx": ("X", Fraction(1)), "xy": ("H", -_HALF), "yy": ("Y", Fraction(-1))}[pair]


def _sl2_act(letter: str, v: str) -> tuple[str, int] | None:
    """Action of X = x d/dy, H = x d/dx - y d/dy, Y = y d/dx on a letter."""
    if letter == "X":
        return ("x", 1) if v == "y" else None
    if letter == "Y":
        return ("y", 1) if v == "x" else None
    return (v, 1 if v == "x" else -1)


def build_gamma(s1, s2, s3) -> BasisSuperalgebra:
    """The algebra Gamma(s1, s2, s3) in the basis X_i, H_i, Y_i, xxx, ..., yyy."""
    s = [rf(s1), rf(s2), rf(s3)]
    params = merge_variables(*(x.variables for x in s))
    basis = [BasisElement(n, 0) for n in EVEN_NAMES] + [BasisElement(n, 1) for n in ODD_NAMES]
    idx = {b.name: i for i, b in enumerate(basis)}
    one = RationalFunction.const(1, params)
    tab: dict[tuple[int, int], Vector] = {}

    def put(x: str, y: str, terms: Mapping[str, RationalFunction]):
        v = {idx[k]: c for k, c in terms.items() if not c.is_zero()}
        if v:
            tab[(idx[x], idx[y])] = v

    for i in "123":
        put(f"H{i}", f"X{i}", {f"X{i}": 2 * one})
        put(f"H{i}", f"Y{i}", {f"Y{i}": -2 * one})
        put(f"X{i}", f"Y{i}", {f"H{i}": one})
    for slot in range(3):
        for letter in "XHY":
            g = f"{letter}{slot + 1}"
            for w in ODD_NAMES:
                r = _sl2_act(letter, w[slot])
                if r is None:
                    continue
                new = w[:slot] + r[0] + w[slot + 1:]
                put(g, w, {new: r[1] * one})
    for a, v in enumerate(ODD_NAMES):
        for w in ODD_NAMES[a:]:
            terms: dict[str, RationalFunction] = {}
            for slot in range(3):
                others = 1
                for o in range(3):
                    if o != slot:
                        others *= _eta(v[o], w[o])
                if others == 0:
                    continue
                letter, c = _phi(v[slot], w[slot])
                key = f"{letter}{slot + 1}"
                terms[key] = terms.get(key, 0 * one) + s[slot] * (c * others)
            put(v, w, terms)
    return BasisSuperalgebra(basis, tab, params)


def d21a(a=None) -> BasisSuperalgebra:
    """D(2,1;a) = Gamma(-1-a, 1, a); ``a`` defaults to the symbolic parameter."""
    a = RationalFunction.gen("a") if a is None else rf(a)
    return build_gamma(-1 - a, rf(1), a)


def gamma_generic() -> BasisSuperalgebra:
    """Gamma(s1, s2, -s1-s2) over Q(s1, s2)."""
    s1 = RationalFunction.gen("s1", ("s1", "s2"))
    s2 = RationalFunction.gen("s2", ("s1", "s2"))
    return build_gamma(s1, s2, -s1 - s2)


def sl2() -> BasisSuperalgebra:
    basis = [BasisElement("X", 0), BasisElement("H", 0), BasisElement("Y", 0)]
    one = RationalFunction.const(1)
    return BasisSuperalgebra(basis, {(1, 0): {0: 2 * one}, (1, 2): {2: -2 * one}, (0, 2): {1: one}})


# ---------------------------------------------------------------------------
# Jacobi identity and bilinear forms
# ---------------------------------------------------------------------------


@dataclass
class JacobiViolation:
    triple: tuple[str, str, str]
    residual: str


def check_jacobi(alg: BasisSuperalgebra, limit: int | None = None) -> list[JacobiViolation]:
    """Basis triples where [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]] fails."""
    out = []
    n = alg.dim
    unit = [{i: RationalFunction.const(1)} for i in range(n)]
    for x in range(n):
        for y in range(n):
            xy = alg.bracket_basis(x, y)
            sxy = sign(alg.parity(x) * alg.parity(y))
            for z in range(n):
                lhs = alg.bracket(unit[x], alg.bracket_basis(y, z))
                rhs = vec_add(alg.bracket(xy, unit[z]), alg.bracket(unit[y], alg.bracket_basis(x, z)), sxy)
                diff = vec_add(lhs, rhs, -1)
                if not vec_is_zero(diff):
                    out.append(JacobiViolation((alg.basis[x].name, alg.basis[y].name, alg.basis[z].name),
                                               alg.format(diff)))
                    if limit is not None and len(out) >= limit:
                        return out
    return out


@dataclass
class BilinearForm:
    """Matrix of a bilinear form indexed by basis pairs (zeros omitted)."""

    algebra: BasisSuperalgebra
    matrix: dict[tuple[int, int], RationalFunction] = field(default_factory=dict)

    def __call__(self, u: Vector | str, v: Vector | str) -> RationalFunction:
        if isinstance(u, str):
            u = self.algebra.vec(u)
        if isinstance(v, str):
            v = self.algebra.vec(v)
        total = RationalFunction.const(0)
        for i, a in u.items():
            for j, b in v.items():
                c = self.matrix.get((i, j))
                if c is not None:
                    total = total + a * b * c
        return total

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.matrix.values())

    def is_consistent(self) -> bool:
        alg = self.algebra
        return all(alg.parity(i) == alg.parity(j) for (i, j), c in self.matrix.items() if not c.is_zero())

    def is_supersymmetric(self) -> bool:
        alg = self.algebra
        for (i, j), c in self.matrix.items():
            other = self.matrix.get((j, i), RationalFunction.const(0))
            if c - other * sign(alg.parity(i) * alg.parity(j)) != 0:
                return False
        return True

    def invariance_defects(self) -> list[tuple[str, str, str]]:
        """Triples with B([u,v],w) != B(u,[v,w])."""
        alg = self.algebra
        bad = []
        for u in range(alg.dim):
            for v in range(alg.dim):
                uv = alg.bracket_basis(u, v)
                for w in range(alg.dim):
                    lhs = self(uv, {w: RationalFunction.const(1)})
                    rhs = self({u: RationalFunction.const(1)}, alg.bracket_basis(v, w))
                    if lhs != rhs:
                        bad.append((alg.basis[u].name, alg.basis[v].name, alg.basis[w].name))
        return bad


def killing_form(alg: BasisSuperalgebra) -> BilinearForm:
    """Supertrace form str(ad_x ad_y)."""
    n = alg.dim
    ads = [alg.ad_matrix({i: RationalFunction.const(1)}).row_dicts() for i in range(n)]
    cols = []
    for i in range(n):
        c: dict[int, dict[int, RationalFunction]] = {}
        for r, row in enumerate(ads[i]):
            for k, v in row.items():
                c.setdefault(k, {})[r] = v
        cols.append(c)
    mat = {}
    for x in range(n):
        for y in range(n):
            tot = RationalFunction.const(0)
            # str(ad_x ad_y) = sum_k (-1)^{|k|} sum_l ad_x[k,l] ad_y[l,k]
            for k in range(n):
                sk = sign(alg.parity(k))
                for l, v in ads[x][k].items():
                    w = ads[y][l].get(k)
                    if w is not None:
                        tot = tot + v * w * sk
            if not tot.is_zero():
                mat[(x, y)] = tot
    return BilinearForm(alg, mat)


def invariant_form_space(alg: BasisSuperalgebra) -> tuple[list[BilinearForm], ExceptionalLocus]:
    """Basis of consistent, supersymmetric, invariant bilinear forms."""
    n = alg.dim
    unknowns: dict[tuple[int, int], int] = {}
    for i in range(n):
        for j in range(i, n):
            if alg.parity(i) != alg.parity(j):
                continue
            if i == j and alg.parity(i) == 1:
                continue
            unknowns[(i, j)] = len(unknowns)

    def coord(i: int, j: int) -> tuple[int, int] | None:
        """(unknown index, sign) such that B(e_i, e_j) = sign * unknown."""
        if (i, j) in unknowns:
            return unknowns[(i, j)], 1
        if (j, i) in unknowns:
            return unknowns[(j, i)], sign(alg.parity(i) * alg.parity(j))
        return None

    rows = []
    for u in range(n):
        for v in range(n):
            uv = alg.bracket_basis(u, v)
            for w in range(n):
                row: dict[int, RationalFunction] = {}
                for k, c in uv.items():
                    t = coord(k, w)
                    if t:
                        row[t[0]] = row.get(t[0], RationalFunction.const(0)) + c * t[1]
                for k, c in alg.bracket_basis(v, w).items():
                    t = coord(u, k)
                    if t:
                        row[t[0]] = row.get(t[0], RationalFunction.const(0)) - c * t[1]
                row = {k: c for k, c in row.items() if not c.is_zero()}
                if row:
                    rows.append(row)
    basis, locus = nullspace(SparseMatrix.from_row_dicts(rows, len(unknowns)))
    forms = []
    for vec in basis:
        mat = {}
        for (i, j), k in unknowns.items():
            if not vec[k].is_zero():
                mat[(i, j)] = vec[k]
                if i != j:
                    mat[(j, i)] = vec[k] * sign(alg.parity(i) * alg.parity(j))
        forms.append(BilinearForm(alg, mat))
    return forms, locus


def invariant_form(alg: BasisSuperalgebra, s: Sequence | None = None) -> BilinearForm:
    """The invariant form normalized by B(H_i, H_i) = 1/s_i.

    ``s`` defaults to the values read off the bracket [xxx, yyy] =
    -(s1 H1 + s2 H2 + s3 H3)/2.
    """
    forms, _ = invariant_form_space(alg)
    if len(forms) != 1:
        raise AlgebraError(f"invariant form space has dimension {len(forms)}, expected 1")
    s = list(s) if s is not None else structure_parameters(alg)
    form = forms[0]
    h1 = form("H1", "H1")
    scale = (rf(1) / s[0]) / h1
    return BilinearForm(alg, {k: v * scale for k, v in form.matrix.items()})


def structure_parameters(alg: BasisSuperalgebra) -> list[RationalFunction]:
    """Recover (s1, s2, s3) from [xxx, yyy] = -(s1 H1 + s2 H2 + s3 H3)/2."""
    v = alg.bracket_names("xxx", "yyy")
    return [v.get(alg.index(f"H{i}"), RationalFunction.const(0)) * (-2) for i in (1, 2, 3)]


def restricted_killing_forms(alg: BasisSuperalgebra) -> list[BilinearForm]:
    """Killing forms K_i of the three sl(2) summands, extended by zero."""
    out = []
    for i in "123":
        X, H, Y = (alg.index(f"{t}{i}") for t in "XHY")
        four = RationalFunction.const(4)
        out.append(BilinearForm(alg, {(H, H): 2 * four, (X, Y): four, (Y, X): four}))
    return out


def odd_pairing(alg: BasisSuperalgebra) -> BilinearForm:
    """A(v1v2v3, w1w2w3) = eta(v1,w1) eta(v2,w2) eta(v3,w3) on the odd part."""
    mat = {}
    for v in ODD_NAMES:
        for w in ODD_NAMES:
            c = _eta(v[0], w[0]) * _eta(v[1], w[1]) * _eta(v[2], w[2])
            if c:
                mat[(alg.index(v), alg.index(w))] = RationalFunction.const(c)
    return BilinearForm(alg, mat)


def form_decomposition(B: BilinearForm) -> list[RationalFunction]:
    """Coefficients (c1, c2, c3, c4) with B = c1 K1 + c2 K2 + c3 K3 + c4 A."""
    alg = B.algebra
    pieces = restricted_killing_forms(alg) + [odd_pairing(alg)]
    keys = sorted(set(B.matrix) | {k for p in pieces for k in p.matrix})
    rows = []
    for key in keys:
        row = {c: p.matrix[key] for c, p in enumerate(pieces) if key in p.matrix}
        row[4] = -B.matrix.get(key, RationalFunction.const(0))
        rows.append({k: v for k, v in row.items() if not v.is_zero()})
    basis, _ = nullspace(SparseMatrix.from_row_dicts(rows, 5))
    if len(basis) != 1 or basis[0][4].is_zero():
        raise AlgebraError("form is not a combination of K_i and A")
    v = basis[0]
    return [v[i] / v[4] for i in range(4)]


# ---------------------------------------------------------------------------
# subspaces and Cauchy characteristics
# ---------------------------------------------------------------------------


@dataclass
class Subspace:
    algebra: BasisSuperalgebra
    vectors: list[Vector]

    def __post_init__(self):
        self._echelon = []
        kept = []
        for v in self.vectors:
            r = self._reduce(v)
            if r:
                piv = min(r)
                inv = r[piv].inverse()
                r = vec_scale(r, inv)
                self._echelon = [vec_add(e, r, -e[piv]) if piv in e else e for e in self._echelon]
                self._echelon.append(r)
                kept.append(v)
        self.vectors = kept

    def _reduce(self, v: Vector) -> Vector:
        v = dict(v)
        for e in self._echelon:
            piv = min(e)
            if piv in v:
                v = vec_add(v, e, -v[piv])
        return v

    def contains(self, v: Vector) -> bool:
        return not self._reduce(v)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def sdim(self) -> tuple[int, int]:
        alg = self.algebra
        ev = odd = 0
        for v in self.vectors:
            ps = {alg.parity(k) for k in v}
            if ps == {0}:
                ev += 1
            elif ps == {1}:
                odd += 1
            else:
                raise AlgebraError("subspace is not spanned by parity-homogeneous vectors")
        return (ev, odd)

    def describe(self) -> list[str]:
        return [self.algebra.format(v) for v in self.vectors]


def cauchy_characteristics(alg: BasisSuperalgebra, k: int) -> Subspace:
    """Symbol-level Cauchy characteristics of D^k = g_{-1} + ... + g_{-k}."""
    if not alg.graded:
        raise AlgebraError("algebra needs a Z-grading")
    depth = alg.depth()
    if k < 1 or k > depth:
        raise AlgebraError(f"level {k} outside 1..{depth}")
    D = [i for i in range(alg.dim) if -k <= alg.degree(i) <= -1]
    vectors: list[Vector] = []
    for parity in (0, 1):
        unknowns = [i for i in D if alg.parity(i) == parity]
        rows: dict[tuple[int, int], dict[int, RationalFunction]] = {}
        for c, i in enumerate(unknowns):
            for u in D:
                for t, val in alg.bracket_basis(i, u).items():
                    if alg.degree(t) < -k:
                        rows.setdefault((u, t), {})[c] = val
        M = SparseMatrix.from_row_dicts(list(rows.values()), len(unknowns))
        basis, _ = nullspace(M)
        for vec in basis:
            vectors.append({unknowns[c]: x for c, x in enumerate(vec) if not x.is_zero()})
    return Subspace(alg, vectors)
