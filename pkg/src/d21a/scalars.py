"""Exact scalars: multivariate rational functions over Q and sparse linear algebra.

Polynomials are backed by FLINT's ``fmpq_mpoly`` (via python-flint).  Every
rational function carries the ordered tuple of parameter names it lives in;
binary operations between values over different parameter tuples first move
both operands into the union context.

The linear-algebra routines run Gaussian elimination over the fraction field
and record every non-constant pivot.  The squarefree factors of those pivots
form the :class:`ExceptionalLocus`: at any specialization of the parameters
avoiding it, the same elimination goes through verbatim, so the generic rank
is also the specialized rank.
"""

from __future__ import annotations

import ast
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import flint

# Preferred ordering of the parameter names that occur in practice; anything
# else is sorted alphabetically after these.
CANONICAL_ORDER = ("a", "eps", "kappa", "s1", "s2", "s3")

Number = Union[int, Fraction]


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at one of its poles."""


def _var_key(name: str) -> tuple[int, str]:
    try:
        return (CANONICAL_ORDER.index(name), name)
    except ValueError:
        return (len(CANONICAL_ORDER), name)


def merge_variables(*groups: Sequence[str]) -> tuple[str, ...]:
    names = set()
    for g in groups:
        names.update(g)
    return tuple(sorted(names, key=_var_key))


@lru_cache(maxsize=None)
def _ctx(variables: tuple[str, ...]):
    return flint.fmpq_mpoly_ctx.get(variables, "lex")


def _to_fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _lift(p, variables: tuple[str, ...]):
    """Move an fmpq_mpoly into the context of ``variables`` (a superset)."""
    src = p.context().names()
    if src == variables:
        return p
    target = _ctx(variables)
    pos = [variables.index(n) for n in src]
    out = {}
    for mon, c in p.terms():
        e = [0] * len(variables)
        for i, k in zip(pos, mon):
            e[i] = k
        out[tuple(e)] = c
    return target.from_dict(out)


# ---------------------------------------------------------------------------
# Polynomial
# ---------------------------------------------------------------------------


class Polynomial:
    """Polynomial with rational coefficients in named parameters."""

    __slots__ = ("_p",)

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[tuple, Number] | None = None):
        variables = tuple(variables)
        ctx = _ctx(variables)
        data = {tuple(k): _to_fmpq(v) for k, v in (terms or {}).items() if v != 0}
        for k in data:
            if len(k) != len(variables):
                raise ValueError(f"exponent vector {k} has wrong arity for {variables}")
        self._p = ctx.from_dict(data)

    @classmethod
    def _wrap(cls, p) -> "Polynomial":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    @classmethod
    def gen(cls, name: str) -> "Polynomial":
        return cls((name,), {(1,): 1})

    @property
    def variables(self) -> tuple[str, ...]:
        return self._p.context().names()

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in self._p.terms()}

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def degree(self) -> int:
        return -1 if self._p.is_zero() else self._p.total_degree()

    def squarefree_factors(self) -> list["Polynomial"]:
        """Distinct irreducible non-constant factors, made monic."""
        if self._p.is_zero() or self._p.is_constant():
            return []
        _, facs = self._p.factor()
        return [Polynomial._wrap(f) for f, _ in facs if not f.is_constant()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        vs = merge_variables(self.variables, other.variables)
        return _lift(self._p, vs) == _lift(other._p, vs)

    def __hash__(self) -> int:
        return hash(str(self))

    def __str__(self) -> str:
        return _poly_str(self._p)

    __repr__ = __str__


def _poly_str(p) -> str:
    if p.is_zero():
        return "0"
    names = p.context().names()
    out = []
    for mon, c in p.terms():
        c = Fraction(int(c.p), int(c.q))
        factors = []
        for n, k in zip(names, mon):
            if k == 1:
                factors.append(n)
            elif k > 1:
                factors.append(f"{n}^{k}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------


class RationalFunction:
    """Element of Q(p1, ..., pm) in canonical reduced form.

    The numerator and denominator are coprime and the denominator has leading
    coefficient 1 in lex order.  Zero is stored as 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, variables: Sequence[str] | None = None):
        if isinstance(num, Polynomial):
            num = num._p
        if isinstance(den, Polynomial):
            den = den._p
        if not isinstance(num, flint.fmpq_mpoly):
            num = _ctx(tuple(variables or ())).from_dict({(0,) * len(variables or ()): _to_fmpq(num)} if num else {})
        if not isinstance(den, flint.fmpq_mpoly):
            den = num.context().from_dict({(0,) * len(num.context().names()): _to_fmpq(den)})
        if num.context() is not den.context():
            vs = merge_variables(num.context().names(), den.context().names())
            num, den = _lift(num, vs), _lift(den, vs)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canon(num, den)

    @classmethod
    def _raw(cls, num, den) -> "RationalFunction":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def const(cls, c: Number, variables: Sequence[str] = ()) -> "RationalFunction":
        ctx = _ctx(tuple(variables))
        n = len(ctx.names())
        q = _to_fmpq(c)
        num = ctx.from_dict({(0,) * n: q}) if q != 0 else ctx.from_dict({})
        return cls._raw(num, ctx.from_dict({(0,) * n: 1}))

    @classmethod
    def gen(cls, name: str, variables: Sequence[str] | None = None) -> "RationalFunction":
        vs = tuple(variables) if variables else (name,)
        ctx = _ctx(vs)
        e = [0] * len(vs)
        e[vs.index(name)] = 1
        return cls._raw(ctx.from_dict({tuple(e): 1}), ctx.from_dict({(0,) * len(vs): 1}))

    # -- structure ---------------------------------------------------------
    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.context().names()

    @property
    def numerator(self) -> Polynomial:
        return Polynomial._wrap(self.num)

    @property
    def denominator(self) -> Polynomial:
        return Polynomial._wrap(self.den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _const_of(self.num) / _const_of(self.den)

    def degree(self) -> int:
        return max(self.num.total_degree() if not self.num.is_zero() else 0, self.den.total_degree())

    def lift(self, variables: Sequence[str]) -> "RationalFunction":
        vs = tuple(variables)
        if self.variables == vs:
            return self
        return RationalFunction._raw(_lift(self.num, vs), _lift(self.den, vs))

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return RationalFunction.const(other, self.variables)
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return NotImplemented

    def _pair(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return None, None
        if self.num.context() is other.num.context():
            return self, other
        vs = merge_variables(self.variables, other.variables)
        return self.lift(vs), other.lift(vs)

    def __add__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        if y.num.is_zero():
            return x
        if x.num.is_zero():
            return y
        if x.den == y.den:
            if x.den.is_one():
                return RationalFunction._raw(x.num + y.num, x.den)
            return RationalFunction._raw(*_canon(x.num + y.num, x.den))
        return RationalFunction._raw(*_canon(x.num * y.den + y.num * x.den, x.den * y.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return x + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        if x.num.is_zero() or y.num.is_zero():
            return RationalFunction._raw(x.num.context().from_dict({}), _one(x.num.context()))
        if x.den.is_one() and y.den.is_one():
            return RationalFunction._raw(x.num * y.num, x.den)
        g1 = x.num.gcd(y.den)
        g2 = y.num.gcd(x.den)
        num = (x.num / g1) * (y.num / g2)
        den = (x.den / g2) * (y.den / g1)
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        num, den = self.den, self.num
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return RationalFunction._raw(num, den)

    def __truediv__(self, other):
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._raw(self.num**k, self.den**k)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        x, y = self._pair(other)
        if x is None:
            return NotImplemented
        return x.num == y.num and x.den == y.den

    def __hash__(self) -> int:
        return hash(str(self))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- evaluation and printing ------------------------------------------
    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        return evaluate(self, point)

    def subs(self, values: Mapping[str, "RationalFunction | Number"]) -> "RationalFunction":
        """Substitute rational functions for (some of) the parameters."""
        vals = {k: (v if isinstance(v, RationalFunction) else RationalFunction.const(v)) for k, v in values.items()}
        keep = tuple(n for n in self.variables if n not in vals)
        gens = {n: RationalFunction.gen(n, keep) for n in keep}
        gens.update(vals)
        return _eval_poly(self.num, gens) / _eval_poly(self.den, gens)

    def __str__(self) -> str:
        if self.den.is_one() and all(c.q == 1 for c in self.num.coeffs()):
            return _poly_str(self.num)
        num, den = _integral(self.num, self.den)
        if den.is_one():
            return _poly_str(num)
        return f"{_wrap_str(num)}/{_wrap_str(den)}"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _wrap_str(p) -> str:
    s = _poly_str(p)
    return s if len(p) == 1 else f"({s})"


def _one(ctx):
    return ctx.from_dict({(0,) * len(ctx.names()): 1})


def _const_of(p) -> Fraction:
    if p.is_zero():
        return Fraction(0)
    c = p.leading_coefficient()
    return Fraction(int(c.p), int(c.q))


def _canon(num, den):
    if num.is_zero():
        return num, _one(num.context())
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num, den = num / g, den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return num, den


def _integral(num, den):
    """Scale numerator and denominator to integer coefficients for printing."""
    from math import lcm

    m = 1
    for c in list(num.coeffs()) + list(den.coeffs()):
        m = lcm(m, int(c.q))
    num, den = num * m, den * m
    # pull out a common integer content
    from math import gcd

    g = 0
    for c in list(num.coeffs()) + list(den.coeffs()):
        g = gcd(g, int(c.p))
    if g > 1:
        num, den = num / g, den / g
    return num, den


def _eval_poly(p, gens: Mapping[str, RationalFunction]) -> RationalFunction:
    names = p.context().names()
    total = RationalFunction.const(0)
    for mon, c in p.terms():
        term = RationalFunction.const(Fraction(int(c.p), int(c.q)))
        for n, k in zip(names, mon):
            if k:
                term = term * gens[n] ** k
        total = total + term
    return total


def rf(x, variables: Sequence[str] = ()) -> RationalFunction:
    """Coerce ints, Fractions, strings and polynomials to a RationalFunction."""
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    return RationalFunction.const(Fraction(x), variables)


def field_arith(x: RationalFunction, y: RationalFunction, op: str) -> RationalFunction:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if rf(y).is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def evaluate(x: RationalFunction, point: Mapping[str, Number]) -> Fraction:
    """Exact value at a rational point that assigns every parameter of ``x``."""
    x = rf(x)
    names = x.variables
    missing = [n for n in names if n not in point]
    if missing:
        raise KeyError(f"point does not assign {missing}")
    vals = [_to_fmpq(point[n]) for n in names]
    if names:
        d = x.den(*vals)
        if d == 0:
            raise PoleError(f"{x} has a pole at {dict(point)}")
        v = x.num(*vals) / d
    else:
        v = _to_fmpq(_const_of(x.num))
    return Fraction(int(v.p), int(v.q))


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _split_top_level(s: str, ch: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for c in s:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        if c == ch and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur))
    return parts


def _eval_ast(node, names: tuple[str, ...]) -> RationalFunction:
    if isinstance(node, ast.Expression):
        return _eval_ast(node.body, names)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return RationalFunction.const(node.value, names)
    if isinstance(node, ast.Name):
        return RationalFunction.gen(node.id, names)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_ast(node.operand, names)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_ast(node.left, names)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** node.right.value
        right = _eval_ast(node.right, names)
        ops = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}
        for k, v in ops.items():
            if isinstance(node.op, k):
                return field_arith(left, right, v)
    raise ValueError(f"unsupported syntax in rational function: {ast.dump(node)}")


def parse_rational(text: str) -> RationalFunction:
    """Parse ``poly/poly`` (or any +,-,*,/,^ expression) into a RationalFunction."""
    s = text.strip().replace("^", "**")
    tree = ast.parse(s, mode="eval")
    names = tuple(sorted({n.id for n in ast.walk(tree) if isinstance(n, ast.Name)}, key=_var_key))
    parts = _split_top_level(s, "/")
    if len(parts) == 2 and "/" not in parts[0] and "/" not in parts[1]:
        num = _eval_ast(ast.parse(parts[0].strip(), mode="eval"), names)
        den = _eval_ast(ast.parse(parts[1].strip(), mode="eval"), names)
        return field_arith(num, den, "div")
    return _eval_ast(tree, names)


# ---------------------------------------------------------------------------
# Sparse matrices and elimination
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalLocus:
    """Squarefree polynomial factors whose zeros may invalidate a generic statement."""

    factors: tuple[Polynomial, ...] = ()

    @classmethod
    def from_polys(cls, polys: Iterable[Polynomial]) -> "ExceptionalLocus":
        seen: dict[str, Polynomial] = {}
        for p in polys:
            for f in p.squarefree_factors():
                seen.setdefault(str(f), f)
        return cls(tuple(seen[k] for k in sorted(seen)))

    def union(self, *others: "ExceptionalLocus") -> "ExceptionalLocus":
        return ExceptionalLocus.from_polys(list(self.factors) + [f for o in others for f in o.factors])

    def names(self) -> list[str]:
        return [str(f) for f in self.factors]

    def contains_point(self, point: Mapping[str, Number]) -> bool:
        return any(evaluate(RationalFunction(f), point) == 0 for f in self.factors)

    def issubset(self, allowed: Iterable[str]) -> bool:
        allowed_set = {str(parse_rational(s).numerator) for s in allowed}
        return all(str(f) in allowed_set for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass
class SparseMatrix:
    rows: int
    cols: int
    entries: dict[tuple[int, int], RationalFunction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry {(i, j)} outside {self.rows}x{self.cols}")
            v = rf(v)
            if not v.is_zero():
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "SparseMatrix":
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        ent = {(i, j): rf(v) for i, r in enumerate(rows) for j, v in enumerate(r) if v != 0}
        return cls(len(rows), ncols, ent)

    @classmethod
    def from_row_dicts(cls, rows: Sequence[Mapping[int, RationalFunction]], cols: int) -> "SparseMatrix":
        obj = cls.__new__(cls)
        obj.rows, obj.cols = len(rows), cols
        obj.entries = {(i, j): v for i, r in enumerate(rows) for j, v in r.items() if not v.is_zero()}
        return obj

    def row_dicts(self) -> list[dict[int, RationalFunction]]:
        out: list[dict[int, RationalFunction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def variables(self) -> tuple[str, ...]:
        return merge_variables(*(v.variables for v in self.entries.values()))

    def matvec(self, vec: Sequence[RationalFunction]) -> list[RationalFunction]:
        out = [RationalFunction.const(0) for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            if not rf(vec[j]).is_zero():
                out[i] = out[i] + v * vec[j]
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, RationalFunction]]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], RationalFunction] = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                key = (i, j)
                acc[key] = acc[key] + u * v if key in acc else u * v
        return SparseMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def evaluate(self, point: Mapping[str, Number]) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = evaluate(v, point)
        return out


def _unify_rows(rows: list[dict[int, RationalFunction]]) -> list[dict[int, RationalFunction]]:
    vs = merge_variables(*(v.variables for r in rows for v in r.values()))
    return [{j: v.lift(vs) for j, v in r.items()} for r in rows]


def _pivot_cost(v: RationalFunction) -> int:
    return 0 if v.is_constant() else 1 + v.degree()


def _eliminate(rows: list[dict[int, RationalFunction]], reduce_above: bool):
    """Sparse Gauss-Jordan elimination.

    Returns (pivots, rows, locus_polys) where ``pivots`` lists (row, col)
    pairs and each pivot row is normalized to have a 1 in its pivot column.
    Pivots are chosen to be constant whenever possible, then by row length.
    """
    rows = _unify_rows([dict(r) for r in rows])
    col_index: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_index.setdefault(j, set()).add(i)
    active = set(i for i, r in enumerate(rows) if r)
    pivots: list[tuple[int, int]] = []
    locus: list[Polynomial] = []
    for r in rows:
        for v in r.values():
            if not v.den.is_constant():
                locus.append(v.denominator)
    while active:
        best = None
        best_key = None
        for i in active:
            r = rows[i]
            n = len(r)
            for j, v in r.items():
                key = (_pivot_cost(v), n * len(col_index[j]), j)
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j)
            if best_key is not None and best_key[0] == 0 and best_key[1] <= 1:
                break
        i, j = best
        active.discard(i)
        prow = rows[i]
        p = prow[j]
        if not p.is_constant():
            locus.append(p.numerator)
            locus.append(p.denominator)
        inv = p.inverse()
        if not (p.is_constant() and p.constant_value() == 1):
            prow = {k: v * inv for k, v in prow.items()}
            rows[i] = prow
        prow[j] = RationalFunction.const(1, p.variables)
        pivots.append((i, j))
        targets = [t for t in col_index[j] if t != i and (reduce_above or t in active)]
        for t in targets:
            r = rows[t]
            f = r[j]
            for k, v in prow.items():
                if k == j:
                    continue
                nv = r[k] - f * v if k in r else -(f * v)
                if nv.is_zero():
                    if k in r:
                        del r[k]
                        col_index[k].discard(t)
                else:
                    if k not in r:
                        col_index.setdefault(k, set()).add(t)
                    r[k] = nv
            del r[j]
            col_index[j].discard(t)
            if not r:
                active.discard(t)
        # the pivot column now only lives in the pivot row
        col_index[j] = {i} if not reduce_above else col_index[j] | {i}
        # pivot row no longer participates in pivot search but stays in index
    return pivots, rows, ExceptionalLocus.from_polys(locus)


def rank_with_locus(M: SparseMatrix) -> tuple[int, ExceptionalLocus]:
    pivots, _, locus = _eliminate(M.row_dicts(), reduce_above=False)
    return len(pivots), locus


def nullspace(M: SparseMatrix) -> tuple[list[list[RationalFunction]], ExceptionalLocus]:
    """Basis of the generic kernel (one vector per free column)."""
    pivots, rows, locus = _eliminate(M.row_dicts(), reduce_above=True)
    vs = M.variables()
    pivot_cols = {j: i for i, j in pivots}
    zero = RationalFunction.const(0, vs)
    one = RationalFunction.const(1, vs)
    basis = []
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        vec = [zero] * M.cols
        vec[f] = one
        for j, i in pivot_cols.items():
            v = rows[i].get(f)
            if v is not None:
                vec[j] = -v
        basis.append(vec)
    return basis, locus


# ---------------------------------------------------------------------------
# Fast evaluation mode
# ---------------------------------------------------------------------------

FAST_PRIME = 2**61 - 1


def _mod_value(x: RationalFunction, point: Mapping[str, Number], p: int) -> int:
    v = evaluate(x, point)
    return v.numerator * pow(v.denominator, -1, p) % p


def rank_at(M: SparseMatrix, point: Mapping[str, Number], modulus: int | None = None) -> int:
    """Rank of M specialized at ``point``; over GF(modulus) when a modulus is given."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if modulus is None:
        mat = flint.fmpq_mat(M.rows, M.cols)
        for (i, j), v in M.entries.items():
            mat[i, j] = _to_fmpq(evaluate(v, point))
        return mat.rank()
    mat = flint.nmod_mat(M.rows, M.cols, modulus)
    for (i, j), v in M.entries.items():
        mat[i, j] = _mod_value(v, point, modulus)
    return mat.rank()


def random_points(variables: Sequence[str], count: int, seed: int = 0, avoid: ExceptionalLocus | None = None,
                  forbidden: Iterable[Number] = (0, -1)) -> list[dict[str, Fraction]]:
    """Random rational points, skipping the given locus and forbidden coordinate values."""
    rng = random.Random(seed)
    bad = set(Fraction(x) for x in forbidden)
    out = []
    while len(out) < count:
        pt = {v: Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for v in variables}
        if any(x in bad for x in pt.values()):
            continue
        if avoid is not None and avoid.contains_point(pt):
            continue
        out.append(pt)
    return out
