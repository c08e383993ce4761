"""Supercommutative polynomials, supervector fields and contact models.

Polynomials live in the free supercommutative algebra on named even and odd
coordinates.  A monomial is stored as ``(even exponents, odd bitmask)``; odd
generators are always kept in increasing index order, and the Koszul sign
produced by reordering is folded into the coefficient.  Vector fields are left
derivations ``sum_z c_z d_z`` with the coefficient written to the left of the
partial derivative.

On top of this engine sit the three contact models used for the explicit
realizations (:data:`MODELS`), linear-algebra helpers for spans, PDE solution
spaces, normalizers and distribution symmetries, and a parameter invariant
that identifies a realized algebra inside the D(2,1;a) family.
"""

from __future__ import annotations

import ast
import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .liesuper import BasisElement, BasisSuperalgebra, invariant_form_space
from .liesuper import vec_add, vec_is_zero
from .scalars import (
    RationalFunction,
    SparseMatrix,
    nullspace,
    rf,
)

Key = tuple  # (even exponents, odd mask)


class SuperfieldError(ValueError):
    pass


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _koszul(m1: int, m2: int) -> int:
    """Sign of xi^{m1} * xi^{m2} rewritten in increasing order (0 if they overlap)."""
    if m1 & m2:
        return 0
    s = 0
    m = m2
    while m:
        low = m & -m
        j = low.bit_length() - 1
        s += _popcount(m1 >> (j + 1))
        m ^= low
    return -1 if s % 2 else 1


# ---------------------------------------------------------------------------
# coordinates and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Coordinates:
    even: tuple[str, ...]
    odd: tuple[str, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return self.even + self.odd

    def parity(self, name: str) -> int:
        if name in self.even:
            return 0
        if name in self.odd:
            return 1
        raise KeyError(name)

    def extend(self, even: Sequence[str] = (), odd: Sequence[str] = ()) -> "Coordinates":
        return Coordinates(self.even + tuple(even), self.odd + tuple(odd))


class SuperPolynomial:
    """Element of Q(params)[even coords] tensor Lambda[odd coords]."""

    __slots__ = ("coords", "terms")

    def __init__(self, coords: Coordinates, terms: Mapping[Key, object] | None = None):
        self.coords = coords
        clean = {}
        for k, c in (terms or {}).items():
            c = rf(c)
            if not c.is_zero():
                clean[k] = c
        self.terms: dict[Key, RationalFunction] = clean

    @classmethod
    def _make(cls, coords: Coordinates, terms: dict) -> "SuperPolynomial":
        obj = cls.__new__(cls)
        obj.coords = coords
        obj.terms = terms
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, coords: Coordinates, c=1) -> "SuperPolynomial":
        return cls(coords, {((0,) * len(coords.even), 0): c})

    @classmethod
    def gen(cls, coords: Coordinates, name: str) -> "SuperPolynomial":
        zero = [0] * len(coords.even)
        if name in coords.even:
            zero[coords.even.index(name)] = 1
            return cls(coords, {(tuple(zero), 0): 1})
        return cls(coords, {(tuple(zero), 1 << coords.odd.index(name)): 1})

    @classmethod
    def monomial(cls, coords: Coordinates, exps: Sequence[int], mask: int, c=1) -> "SuperPolynomial":
        return cls(coords, {(tuple(exps), mask): c})

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def parity(self) -> int | None:
        ps = {_popcount(m) % 2 for (_, m) in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parity_parts(self) -> dict[int, "SuperPolynomial"]:
        parts: dict[int, dict] = {}
        for k, c in self.terms.items():
            parts.setdefault(_popcount(k[1]) % 2, {})[k] = c
        return {p: SuperPolynomial._make(self.coords, t) for p, t in parts.items()}

    def weight_of(self, key: Key, weights: Mapping[str, int]) -> int:
        exps, mask = key
        w = sum(e * weights[n] for e, n in zip(exps, self.coords.even))
        w += sum(weights[n] for i, n in enumerate(self.coords.odd) if mask >> i & 1)
        return w

    def weights(self, weights: Mapping[str, int]) -> set[int]:
        return {self.weight_of(k, weights) for k in self.terms}

    def degree_in(self, name: str) -> int:
        i = self.coords.even.index(name)
        return max((k[0][i] for k in self.terms), default=0)

    def coefficient(self, exps: Sequence[int], mask: int) -> RationalFunction:
        return self.terms.get((tuple(exps), mask), RationalFunction.const(0))

    def constant_term(self) -> RationalFunction:
        return self.coefficient((0,) * len(self.coords.even), 0)

    # -- arithmetic --------------------------------------------------------
    def _other(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            if other.coords != self.coords:
                raise SuperfieldError("coordinate systems differ")
            return other
        return SuperPolynomial.const(self.coords, rf(other))

    def __add__(self, other):
        if isinstance(other, SuperVectorField):
            return NotImplemented
        other = self._other(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            if k in out:
                v = out[k] + c
                if v.is_zero():
                    del out[k]
                else:
                    out[k] = v
            else:
                out[k] = c
        return SuperPolynomial._make(self.coords, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._make(self.coords, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, SuperVectorField):
            return NotImplemented
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SuperVectorField):
            return other.__rmul__(self)
        other = self._other(other)
        out: dict[Key, RationalFunction] = {}
        for (e1, m1), c1 in self.terms.items():
            for (e2, m2), c2 in other.terms.items():
                s = _koszul(m1, m2)
                if not s:
                    continue
                k = (tuple(a + b for a, b in zip(e1, e2)), m1 | m2)
                v = c1 * c2 if s > 0 else -(c1 * c2)
                if k in out:
                    v = out[k] + v
                    if v.is_zero():
                        del out[k]
                        continue
                out[k] = v
        return SuperPolynomial._make(self.coords, out)

    def __rmul__(self, other):
        return self._other(other) * self

    def __truediv__(self, other):
        c = rf(other)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        out = SuperPolynomial.const(self.coords)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "SuperPolynomial":
        c = rf(c)
        if c.is_zero():
            return SuperPolynomial._make(self.coords, {})
        return SuperPolynomial._make(self.coords, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RationalFunction)):
            other = SuperPolynomial.const(self.coords, other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    # -- calculus ----------------------------------------------------------
    def diff(self, name: str) -> "SuperPolynomial":
        """Left partial derivative."""
        out: dict[Key, RationalFunction] = {}
        if name in self.coords.even:
            i = self.coords.even.index(name)
            for (e, m), c in self.terms.items():
                if e[i]:
                    ne = list(e)
                    ne[i] -= 1
                    out[(tuple(ne), m)] = c * e[i]
        else:
            i = self.coords.odd.index(name)
            bit = 1 << i
            for (e, m), c in self.terms.items():
                if m & bit:
                    s = _popcount(m & (bit - 1)) % 2
                    out[(e, m ^ bit)] = -c if s else c
        return SuperPolynomial._make(self.coords, out)

    def subs_params(self, values: Mapping[str, object]) -> "SuperPolynomial":
        return SuperPolynomial(self.coords, {k: c.subs(values) for k, c in self.terms.items()})

    def rename(self, mapping: Mapping[str, str], params: Mapping[str, object] | None = None) -> "SuperPolynomial":
        """Apply a permutation of coordinates (even to even, odd to odd)."""
        out = SuperPolynomial._make(self.coords, {})
        for (e, m), c in self.terms.items():
            term = SuperPolynomial.const(self.coords, c.subs(params) if params else c)
            for n, k in zip(self.coords.even, e):
                if k:
                    term = term * SuperPolynomial.gen(self.coords, mapping.get(n, n)) ** k
            for i, n in enumerate(self.coords.odd):
                if m >> i & 1:
                    term = term * SuperPolynomial.gen(self.coords, mapping.get(n, n))
            out = out + term
        return out

    def embed(self, coords: Coordinates) -> "SuperPolynomial":
        """Re-express in a larger coordinate system containing this one."""
        out = {}
        for (e, m), c in self.terms.items():
            ne = [0] * len(coords.even)
            for n, k in zip(self.coords.even, e):
                ne[coords.even.index(n)] = k
            nm = 0
            for i, n in enumerate(self.coords.odd):
                if m >> i & 1:
                    nm |= 1 << coords.odd.index(n)
            # odd order is preserved when the new odd list keeps relative order
            out[(tuple(ne), nm)] = c
        return SuperPolynomial._make(coords, out)

    # -- printing ----------------------------------------------------------
    def _mon_str(self, key: Key) -> str:
        e, m = key
        parts = []
        for n, k in zip(self.coords.even, e):
            if k == 1:
                parts.append(n)
            elif k > 1:
                parts.append(f"{n}^{k}")
        parts += [n for i, n in enumerate(self.coords.odd) if m >> i & 1]
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for key in sorted(self.terms, key=lambda k: (_popcount(k[1]) + sum(k[0]), k)):
            c = self.terms[key]
            mon = self._mon_str(key)
            cs = str(c)
            if not mon:
                out.append(cs if len(c.num) <= 1 or c.den.total_degree() else f"({cs})")
            elif cs == "1":
                out.append(mon)
            elif cs == "-1":
                out.append("-" + mon)
            else:
                single = len(c.num) == 1 and c.den.is_one()
                out.append(f"{cs}*{mon}" if single else f"({cs})*{mon}")
        return " + ".join(out).replace("+ -", "- ")

    __repr__ = __str__


# ---------------------------------------------------------------------------
# vector fields
# ---------------------------------------------------------------------------


class SuperVectorField:
    """Left derivation sum_z c_z d_z with polynomial coefficients."""

    __slots__ = ("coords", "coeffs")

    def __init__(self, coords: Coordinates, coeffs: Mapping[str, SuperPolynomial] | None = None):
        self.coords = coords
        self.coeffs: dict[str, SuperPolynomial] = {
            z: c for z, c in (coeffs or {}).items() if not c.is_zero()
        }

    @classmethod
    def partial(cls, coords: Coordinates, name: str) -> "SuperVectorField":
        return cls(coords, {name: SuperPolynomial.const(coords)})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def parity(self) -> int | None:
        ps = set()
        for z, c in self.coeffs.items():
            for p in c.parity_parts():
                ps.add((p + self.coords.parity(z)) % 2)
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def parity_parts(self) -> dict[int, "SuperVectorField"]:
        parts: dict[int, dict[str, SuperPolynomial]] = {}
        for z, c in self.coeffs.items():
            for p, piece in c.parity_parts().items():
                q = (p + self.coords.parity(z)) % 2
                parts.setdefault(q, {})[z] = piece
        return {p: SuperVectorField(self.coords, d) for p, d in parts.items()}

    def coefficient(self, name: str) -> SuperPolynomial:
        return self.coeffs.get(name, SuperPolynomial._make(self.coords, {}))

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        out = SuperPolynomial._make(self.coords, {})
        for z, c in self.coeffs.items():
            d = f.diff(z)
            if not d.is_zero():
                out = out + c * d
        return out

    def __add__(self, other):
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        out = dict(self.coeffs)
        for z, c in other.coeffs.items():
            out[z] = out[z] + c if z in out else c
        return SuperVectorField(self.coords, out)

    def __neg__(self):
        return SuperVectorField(self.coords, {z: -c for z, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, other):
        """Left multiplication by a polynomial or scalar coefficient."""
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.const(self.coords, rf(other))
        return SuperVectorField(self.coords, {z: other * c for z, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.__rmul__(other)
        raise SuperfieldError("coefficients must be written to the left of a vector field")

    def __truediv__(self, other):
        return self.__rmul__(rf(other).inverse())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperVectorField):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(str(self))

    def subs_params(self, values: Mapping[str, object]) -> "SuperVectorField":
        return SuperVectorField(self.coords, {z: c.subs_params(values) for z, c in self.coeffs.items()})

    def rename(self, mapping: Mapping[str, str], params: Mapping[str, object] | None = None) -> "SuperVectorField":
        return SuperVectorField(self.coords, {mapping.get(z, z): c.rename(mapping, params)
                                              for z, c in self.coeffs.items()})

    def embed(self, coords: Coordinates) -> "SuperVectorField":
        return SuperVectorField(coords, {z: c.embed(coords) for z, c in self.coeffs.items()})

    def weights(self, weights: Mapping[str, int]) -> set[int]:
        return {w - weights[z] for z, c in self.coeffs.items() for w in c.weights(weights)}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for z in self.coords.names:
            if z in self.coeffs:
                c = self.coeffs[z]
                cs = str(c)
                if cs == "1":
                    parts.append(f"d_{z}")
                elif len(c.terms) == 1 and not cs.startswith("("):
                    parts.append(f"{cs}*d_{z}")
                else:
                    parts.append(f"({cs})*d_{z}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _field_bracket_homogeneous(X: SuperVectorField, Y: SuperVectorField, px: int, py: int) -> SuperVectorField:
    s = -1 if px * py else 1
    out: dict[str, SuperPolynomial] = {}
    for z in set(X.coeffs) | set(Y.coeffs):
        c = X(Y.coefficient(z))
        d = Y(X.coefficient(z))
        out[z] = c - d if s > 0 else c + d
    return SuperVectorField(X.coords, out)


def super_bracket(X: SuperVectorField, Y: SuperVectorField) -> SuperVectorField:
    """X o Y - (-1)^{|X||Y|} Y o X, extended bilinearly to inhomogeneous fields."""
    if X.coords != Y.coords:
        raise SuperfieldError("coordinate systems differ")
    out = SuperVectorField(X.coords)
    for px, Xp in X.parity_parts().items():
        for py, Yp in Y.parity_parts().items():
            out = out + _field_bracket_homogeneous(Xp, Yp, px, py)
    return out


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------


_DSLASH = re.compile(r"d/d([A-Za-z_][A-Za-z0-9_]*)")


def parse_super(text: str, coords: Coordinates, env: Mapping[str, object] | None = None):
    """Parse a polynomial or vector-field expression.

    Coordinates are referenced by name, ``d_x1`` (or ``d/dx1``) is the partial
    derivative along ``x1``, ``^`` and ``**`` are powers, and every other
    identifier is a scalar parameter unless it is bound in ``env``.
    Coefficients must be written to the left of derivatives.
    """
    env = dict(env or {})
    src = _DSLASH.sub(r"d_\1", text.strip()).replace("^", "**")
    tree = ast.parse(src, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return SuperPolynomial.const(coords, node.value)
        if isinstance(node, ast.Name):
            n = node.id
            if n in env:
                v = env[n]
                if isinstance(v, (SuperPolynomial, SuperVectorField)):
                    return v
                return SuperPolynomial.const(coords, rf(v))
            if n in coords.names:
                return SuperPolynomial.gen(coords, n)
            if n.startswith("d_") and n[2:] in coords.names:
                return SuperVectorField.partial(coords, n[2:])
            return SuperPolynomial.const(coords, RationalFunction.gen(n))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise SuperfieldError("exponents must be integer literals")
                return left ** node.right.value
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                if isinstance(left, SuperVectorField) and isinstance(right, SuperVectorField):
                    raise SuperfieldError("product of two vector fields")
                if isinstance(left, SuperVectorField):
                    if isinstance(right, SuperPolynomial) and right.terms and set(right.terms) == {
                            ((0,) * len(coords.even), 0)}:
                        return left * right.constant_term()
                    raise SuperfieldError("coefficients must be written to the left of a vector field")
                return left * right
            if isinstance(node.op, ast.Div):
                if not isinstance(right, SuperPolynomial) or set(right.terms) - {((0,) * len(coords.even), 0)}:
                    raise SuperfieldError("division only by scalars")
                return left / right.constant_term()
        raise SuperfieldError(f"unsupported syntax: {ast.dump(node)}")

    return ev(tree)


# ---------------------------------------------------------------------------
# monomial enumeration and random elements
# ---------------------------------------------------------------------------


def monomials(coords: Coordinates, max_even_degree: int | Mapping[str, int]) -> list[Key]:
    """All monomials with even exponents bounded per coordinate."""
    if isinstance(max_even_degree, int):
        bounds = [max_even_degree] * len(coords.even)
    else:
        bounds = [max_even_degree.get(n, 0) for n in coords.even]
    out = []
    for e in itertools.product(*(range(b + 1) for b in bounds)):
        for m in range(1 << len(coords.odd)):
            out.append((tuple(e), m))
    return out


def monomials_of_weight(coords: Coordinates, weights: Mapping[str, int], w: int) -> list[Key]:
    """Monomials of total weight ``w`` (all weights must be positive)."""
    if w < 0:
        return []
    out = []
    odd_w = [weights[n] for n in coords.odd]
    for m in range(1 << len(coords.odd)):
        wo = sum(x for i, x in enumerate(odd_w) if m >> i & 1)
        rest = w - wo
        if rest < 0:
            continue

        def rec(i, left, acc):
            if i == len(coords.even):
                if left == 0:
                    out.append((tuple(acc), m))
                return
            step = weights[coords.even[i]]
            for k in range(left // step + 1):
                rec(i + 1, left - k * step, acc + [k])

        rec(0, rest, [])
    return out


def random_superpoly(coords: Coordinates, rng: random.Random, parity: int | None = None,
                     max_even_degree: int = 2, n_terms: int = 3, params: Sequence[str] = ()) -> SuperPolynomial:
    """Small random polynomial with integer (optionally parameter-linear) coefficients."""
    pool = [k for k in monomials(coords, max_even_degree) if parity is None or _popcount(k[1]) % 2 == parity]
    terms: dict[Key, RationalFunction] = {}
    for k in rng.sample(pool, min(n_terms, len(pool))):
        c = rf(rng.choice([-3, -2, -1, 1, 2, 3]))
        if params and rng.random() < 0.5:
            c = c * RationalFunction.gen(rng.choice(list(params)))
        terms[k] = c
    return SuperPolynomial(coords, terms)


# ---------------------------------------------------------------------------
# contact models
# ---------------------------------------------------------------------------


def _split_apply(f: SuperPolynomial, fn: Callable[[SuperPolynomial, int], object]):
    parts = f.parity_parts()
    out = None
    for p, piece in parts.items():
        v = fn(piece, p)
        out = v if out is None else out + v
    return out


@dataclass(frozen=True)
class ContactModel:
    """A contact structure in Darboux form with its generating-function calculus.

    ``weights`` grade generating functions, and the weight of X_f is
    ``w(f) - shift``.  ``odd_form`` marks the odd contact form, whose
    Lagrange-Jacobi bracket is parity-reversing.
    """

    name: str
    coords: Coordinates
    weights: Mapping[str, int]
    shift: int
    odd_form: bool
    form: str
    _field: Callable = field(repr=False, compare=False, default=None)
    _bracket: Callable = field(repr=False, compare=False, default=None)

    def poly(self, text: str) -> SuperPolynomial:
        return parse_super(text, self.coords)

    def contact_field(self, f: SuperPolynomial | str) -> SuperVectorField:
        f = self.poly(f) if isinstance(f, str) else f
        out = _split_apply(f, lambda piece, p: self._field(self, piece, p))
        return out if out is not None else SuperVectorField(self.coords)

    def bracket(self, f: SuperPolynomial | str, g: SuperPolynomial | str) -> SuperPolynomial:
        f = self.poly(f) if isinstance(f, str) else f
        g = self.poly(g) if isinstance(g, str) else g
        out = SuperPolynomial._make(self.coords, {})
        for p, fp in f.parity_parts().items():
            for q, gq in g.parity_parts().items():
                out = out + self._bracket(self, fp, p, gq, q)
        return out

    def field_parity(self, f: SuperPolynomial) -> int | None:
        p = f.parity
        if p is None:
            return None
        return (p + 1) % 2 if self.odd_form else p

    def level(self, f: SuperPolynomial) -> int:
        ws = f.weights(self.weights)
        if len(ws) != 1:
            raise SuperfieldError(f"{f} is not weight-homogeneous")
        return ws.pop() - self.shift

    def graded_dims(self, k: int) -> tuple[int, int]:
        """Super-dimension of the degree-k piece of the contact algebra."""
        ev = od = 0
        for key in monomials_of_weight(self.coords, self.weights, k + self.shift):
            p = _popcount(key[1]) % 2
            if self.odd_form:
                p = (p + 1) % 2
            if p:
                od += 1
            else:
                ev += 1
        return ev, od


def _m14_D(model, j):
    c = model.coords
    return SuperVectorField(c, {f"xi{j}": SuperPolynomial.const(c), "x": SuperPolynomial.gen(c, f"xi{j}")})


def _m14_field(model, f, p):
    c = model.coords
    X = f * SuperVectorField.partial(c, "x")
    half = Fraction(1, 2) * (-1) ** p
    for j in range(1, 5):
        D = _m14_D(model, j)
        X = X + (D(f).scale(half)) * D
    return X


def _m14_bracket(model, f, p, g, q):
    out = f * g.diff("x") - (g * f.diff("x")).scale((-1) ** (p * q))
    half = Fraction(1, 2) * (-1) ** p
    for j in range(1, 5):
        D = _m14_D(model, j)
        out = out + (D(f) * D(g)).scale(half)
    return out


def _m24_D(model, j):
    c = model.coords
    return SuperVectorField(c, {f"theta{j}": SuperPolynomial.const(c), "y": SuperPolynomial.gen(c, f"nu{j}")})


def _m24_field(model, f, p):
    c = model.coords
    X = f * SuperVectorField.partial(c, "y")
    s = (-1) ** p
    for j in (1, 2):
        D = _m24_D(model, j)
        X = X + D(f).scale(s) * SuperVectorField.partial(c, f"nu{j}") + f.diff(f"nu{j}").scale(s) * D
    return X


def _m24_bracket(model, f, p, g, q):
    out = f * g.diff("y") - (g * f.diff("y")).scale((-1) ** (p * q))
    s = (-1) ** p
    for j in (1, 2):
        D = _m24_D(model, j)
        out = out + (f.diff(f"nu{j}") * D(g) + D(f) * g.diff(f"nu{j}")).scale(s)
    return out


def _odd_D(model, i):
    c = model.coords
    return SuperVectorField(c, {f"xi{i}": SuperPolynomial.const(c), "psi": SuperPolynomial.gen(c, f"psi{i}")})


def _odd_field(model, f, p):
    c = model.coords
    X = f * SuperVectorField.partial(c, "psi")
    s = (-1) ** p
    for i in (1, 2, 3):
        D = _odd_D(model, i)
        X = X - f.diff(f"psi{i}") * D - D(f).scale(s) * SuperVectorField.partial(c, f"psi{i}")
    return X


def _odd_bracket(model, f, p, g, q):
    s = (-1) ** p
    out = f * g.diff("psi") + (f.diff("psi") * g).scale(s)
    for i in (1, 2, 3):
        D = _odd_D(model, i)
        out = out - f.diff(f"psi{i}") * D(g) - (D(f) * g.diff(f"psi{i}")).scale(s)
    return out


M14 = ContactModel(
    name="M14",
    coords=Coordinates(("x",), ("xi1", "xi2", "xi3", "xi4")),
    weights={"x": 2, "xi1": 1, "xi2": 1, "xi3": 1, "xi4": 1},
    shift=2,
    odd_form=False,
    form="dx + sum_i xi_i dxi_i",
    _field=_m14_field,
    _bracket=_m14_bracket,
)

M24 = ContactModel(
    name="M24",
    coords=Coordinates(("y",), ("theta1", "theta2", "nu1", "nu2")),
    weights={"y": 3, "theta1": 1, "theta2": 1, "nu1": 2, "nu2": 2},
    shift=3,
    odd_form=False,
    form="dy + nu1 dtheta1 + nu2 dtheta2",
    _field=_m24_field,
    _bracket=_m24_bracket,
)

# Same contact structure as M24 with the flag weights of the (3|4)-dimensional
# twistor space.
M24_FLAG = ContactModel(
    name="M24_flag",
    coords=M24.coords,
    weights={"y": 4, "theta1": 1, "theta2": 2, "nu1": 3, "nu2": 2},
    shift=4,
    odd_form=False,
    form=M24.form,
    _field=_m24_field,
    _bracket=_m24_bracket,
)

M34_DIAMOND = ContactModel(
    name="M34_diamond",
    coords=Coordinates(("psi1", "psi2", "psi3"), ("xi1", "xi2", "xi3", "psi")),
    weights={"psi1": 2, "psi2": 2, "psi3": 2, "xi1": 1, "xi2": 1, "xi3": 1, "psi": 3},
    shift=3,
    odd_form=True,
    form="dpsi - sum_i (dxi_i) psi_i",
    _field=_odd_field,
    _bracket=_odd_bracket,
)

MODELS = {m.name: m for m in (M14, M24, M24_FLAG, M34_DIAMOND)}


def contact_field(f: SuperPolynomial | str, model: ContactModel | str) -> SuperVectorField:
    model = MODELS[model] if isinstance(model, str) else model
    return model.contact_field(f)


def lagrange_jacobi(f, g, model: ContactModel | str) -> SuperPolynomial:
    model = MODELS[model] if isinstance(model, str) else model
    return model.bracket(f, g)


# ---------------------------------------------------------------------------
# linear spans
# ---------------------------------------------------------------------------


def _flatten(x) -> dict:
    if isinstance(x, SuperPolynomial):
        return dict(x.terms)
    if isinstance(x, SuperVectorField):
        return {(z,) + k: c for z, cz in x.coeffs.items() for k, c in cz.terms.items()}
    raise TypeError(type(x))


def _sort_key(k):
    return repr(k)


class LinearSpan:
    """Echelon form of a list of polynomials or fields, tracking combinations."""

    def __init__(self, elements: Sequence):
        self.elements = list(elements)
        self._rows: list[tuple[object, dict, dict]] = []  # (pivot, vector, combo)
        self.independent = True
        for i, x in enumerate(self.elements):
            vec, combo = self._reduce(_flatten(x), {i: RationalFunction.const(1)})
            if not vec:
                self.independent = False
                continue
            piv = min(vec, key=_sort_key)
            inv = vec[piv].inverse()
            vec = {k: v * inv for k, v in vec.items()}
            combo = {k: v * inv for k, v in combo.items()}
            self._rows.append((piv, vec, combo))

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: dict, combo: dict | None = None):
        vec = dict(vec)
        combo = dict(combo or {})
        for piv, row, rc in self._rows:
            c = vec.get(piv)
            if c is None:
                continue
            for k, v in row.items():
                nv = vec.get(k, RationalFunction.const(0)) - c * v
                if nv.is_zero():
                    vec.pop(k, None)
                else:
                    vec[k] = nv
            for k, v in rc.items():
                nv = combo.get(k, RationalFunction.const(0)) - c * v
                if nv.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = nv
        return vec, combo

    def contains(self, x) -> bool:
        vec, _ = self._reduce(_flatten(x))
        return not vec

    def coordinates(self, x) -> dict[int, RationalFunction] | None:
        """Coefficients c_i with x = sum c_i elements[i], or None if outside the span."""
        vec, combo = self._reduce(_flatten(x))
        if vec:
            return None
        return {k: -v for k, v in combo.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# closure and parameter identification
# ---------------------------------------------------------------------------


@dataclass
class Closure:
    algebra: BasisSuperalgebra
    elements: list
    sdim: tuple[int, int]


def span_closure(generators: Sequence, bracket: Callable | ContactModel | None = None,
                 names: Sequence[str] | None = None, parities: Sequence[int] | None = None,
                 degrees: Sequence[int] | None = None) -> Closure:
    """Check that a homogeneous span is closed and return its structure constants.

    ``bracket`` is a contact model (generating functions) or None for vector
    fields.  Raises :class:`SuperfieldError` naming an escaping bracket.
    """
    gens = list(generators)
    if isinstance(bracket, ContactModel):
        model = bracket
        br = model.bracket
        par = parities or [model.field_parity(g) for g in gens]
        if degrees is None:
            degrees = [model.level(g) for g in gens]
    else:
        br = bracket or super_bracket
        par = parities or [g.parity for g in gens]
    if any(p is None for p in par):
        raise SuperfieldError("generators must be parity-homogeneous")
    names = list(names or [f"g{i}" for i in range(len(gens))])
    span = LinearSpan(gens)
    if not span.independent:
        raise SuperfieldError("generators are linearly dependent")
    table = {}
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            w = br(gens[i], gens[j])
            if w.is_zero():
                continue
            co = span.coordinates(w)
            if co is None:
                raise SuperfieldError(f"[{names[i]}, {names[j]}] = {w} leaves the span")
            table[(i, j)] = co
    basis = [BasisElement(n, p, None if degrees is None else d)
             for n, p, d in zip(names, par, degrees or [None] * len(gens))]
    alg = BasisSuperalgebra(basis, table)
    return Closure(alg, gens, alg.sdim())


def _matrix_power_trace(M: list[list[RationalFunction]], k: int) -> RationalFunction:
    n = len(M)
    P = [row[:] for row in M]
    for _ in range(k - 1):
        P = [[sum((P[i][l] * M[l][j] for l in range(n) if not P[i][l].is_zero() and not M[l][j].is_zero()),
                  RationalFunction.const(0)) for j in range(n)] for i in range(n)]
    return sum((P[i][i] for i in range(n)), RationalFunction.const(0))


def _solve_square(A: list[list[RationalFunction]], B: list[list[RationalFunction]]) -> list[list[RationalFunction]]:
    """Return A^{-1} B by Gauss-Jordan."""
    n = len(A)
    M = [A[i][:] + B[i][:] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not M[r][c].is_zero()), None)
        if piv is None:
            raise SuperfieldError("invariant form is degenerate on the even part")
        M[c], M[piv] = M[piv], M[c]
        inv = M[c][c].inverse()
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and not M[r][c].is_zero():
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


@dataclass
class ParameterInvariant:
    """Symmetric data of the structure parameters (s1, s2, s3) up to scale.

    ``e1`` must vanish for the D(2,1;a) family; ``J = e2^3/e3^2`` is invariant
    under rescaling and permutations of the s_i, so two algebras of the family
    are isomorphic exactly when their J values agree.
    """

    e1: RationalFunction
    e2: RationalFunction
    e3: RationalFunction

    @property
    def J(self) -> RationalFunction:
        return self.e2 ** 3 / self.e3 ** 2


def parameter_invariant(alg: BasisSuperalgebra) -> ParameterInvariant:
    """Recover the symmetric functions of the s_i from forms on the even part.

    With B the (unique up to scale) invariant form and K(u,v) the trace of
    ad_u ad_v on the even part, the operator B^{-1}K is scalar on each sl(2)
    summand and proportional to s_i there.
    """
    forms, _ = invariant_form_space(alg)
    if len(forms) != 1:
        raise SuperfieldError(f"invariant form space has dimension {len(forms)}")
    B = forms[0]
    ev = [i for i in range(alg.dim) if alg.parity(i) == 0]
    pos = {i: n for n, i in enumerate(ev)}
    zero = RationalFunction.const(0)
    ads = {}
    for i in ev:
        m = [[zero] * len(ev) for _ in ev]
        for j in ev:
            for k, c in alg.bracket_basis(i, j).items():
                m[pos[k]][pos[j]] = c
        ads[i] = m
    n = len(ev)
    K = [[zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            A, Bm = ads[ev[a]], ads[ev[b]]
            t = zero
            for r in range(n):
                for l in range(n):
                    if not A[r][l].is_zero() and not Bm[l][r].is_zero():
                        t = t + A[r][l] * Bm[l][r]
            K[a][b] = K[b][a] = t
    Bmat = [[B.matrix.get((i, j), zero) for j in ev] for i in ev]
    M = _solve_square(Bmat, K)
    mult = Fraction(n, 3)
    p1 = _matrix_power_trace(M, 1) / mult
    p2 = _matrix_power_trace(M, 2) / mult
    p3 = _matrix_power_trace(M, 3) / mult
    e1 = p1
    e2 = (e1 * e1 - p2) / 2
    e3 = (e1 ** 3 - 3 * e1 * p2 + 2 * p3) / 6
    return ParameterInvariant(e1, e2, e3)


def j_invariant_of(a) -> RationalFunction:
    """J for s = (-1-a, 1, a)."""
    a = rf(a)
    s = [-1 - a, rf(1), a]
    e2 = s[0] * s[1] + s[1] * s[2] + s[2] * s[0]
    e3 = s[0] * s[1] * s[2]
    return e2 ** 3 / e3 ** 2


def s3_orbit(a) -> list[RationalFunction]:
    """The six values a, 1/a, -1-a, -1/(1+a), -a/(1+a), -(1+a)/a."""
    a = rf(a)
    return [a, 1 / a, -1 - a, -1 / (1 + a), -a / (1 + a), -(1 + a) / a]


def parameter_orbit(inv: ParameterInvariant, var: str = "t") -> list[RationalFunction]:
    """Values of a (over the parameter field) whose J matches ``inv``.

    Solves J(t) = J by factoring the numerator of the difference and keeping
    the factors linear in t.
    """
    t = RationalFunction.gen(var)
    diff = j_invariant_of(t) - inv.J
    num = diff.num
    names = num.context().names()
    ti = names.index(var)
    roots = []
    _, facs = num.factor()
    for fac, _mult in facs:
        if fac.degrees()[ti] != 1:
            continue
        c1 = fac.derivative(ti)
        c0 = fac - c1 * fac.context().gens()[ti]
        roots.append(-RationalFunction(c0) / RationalFunction(c1))
    return roots


@dataclass
class CorrespondenceReport:
    match: bool
    closure_J: RationalFunction
    target_J: RationalFunction
    trace_free: bool
    orbit: list[RationalFunction]
    mapping_checked: bool = False
    failure: str | None = None


def verify_correspondence(closure: BasisSuperalgebra | Closure, target: BasisSuperalgebra,
                          mapping: Mapping[str, Mapping[str, object]] | None = None,
                          substitution: Mapping[str, object] | None = None,
                          find_orbit: bool = True) -> CorrespondenceReport:
    """Compare a realized algebra with a member of the D(2,1;a) family.

    The parameter comparison uses the invariant J, so it is insensitive to
    the S3 action on a.  If ``mapping`` is given (closure basis name ->
    target vector as ``{name: coefficient}``) it is also checked to be a
    bracket homomorphism, identically after ``substitution``.
    """
    alg = closure.algebra if isinstance(closure, Closure) else closure
    ci = parameter_invariant(alg)
    ti = parameter_invariant(target)
    tJ = ti.J.subs(substitution) if substitution else ti.J
    match = ci.e1.is_zero() and ti.e1.is_zero() and ci.J == tJ
    orbit = parameter_orbit(ci) if find_orbit else []
    rep = CorrespondenceReport(match, ci.J, tJ, ci.e1.is_zero(), orbit)
    if not match:
        rep.failure = f"parameter invariants differ: {ci.J} vs {tJ}"
    if mapping is not None:
        rep.mapping_checked = True
        img = {n: {target.index(k): rf(v).subs(substitution) if substitution else rf(v)
                   for k, v in mapping[n].items()} for n in alg.names()}
        for i, x in enumerate(alg.names()):
            for j, y in enumerate(alg.names()):
                lhs: dict = {}
                for k, c in alg.bracket_basis(i, j).items():
                    lhs = vec_add(lhs, img[alg.names()[k]], c.subs(substitution) if substitution else c)
                rhs = target.bracket(img[x], img[y])
                if not vec_is_zero(vec_add(lhs, rhs, -1)):
                    rep.match = False
                    rep.failure = f"bracket [{x},{y}] not preserved"
                    return rep
    return rep


# ---------------------------------------------------------------------------
# PDE solution spaces and normalizers
# ---------------------------------------------------------------------------


def _solve_linear_images(basis: Sequence[SuperPolynomial], images: Sequence[Sequence]) -> list[list[RationalFunction]]:
    """Kernel of the map basis[i] -> images[i] (each a list of polys or fields)."""
    keys: dict = {}
    cols: list[dict] = []
    for imgs in images:
        col = {}
        for r, im in enumerate(imgs):
            for k, c in _flatten(im).items():
                kk = (r, k)
                if kk not in keys:
                    keys[kk] = len(keys)
                col[keys[kk]] = c
        cols.append(col)
    rows: list[dict[int, RationalFunction]] = [dict() for _ in range(len(keys))]
    for j, col in enumerate(cols):
        for i, c in col.items():
            rows[i][j] = c
    vecs, _ = nullspace(SparseMatrix.from_row_dicts(rows, len(basis)))
    return vecs


def _combine(basis: Sequence, vec: Sequence[RationalFunction]):
    out = None
    for b, c in zip(basis, vec):
        if c.is_zero():
            continue
        term = b.scale(c) if isinstance(b, SuperPolynomial) else b.__rmul__(c)
        out = term if out is None else out + term
    return out


@dataclass
class SolutionSpace:
    basis: list[SuperPolynomial]
    sdim: tuple[int, int]


def pde_solution_space(operators: Sequence[Callable[[SuperPolynomial], SuperPolynomial]],
                       ansatz: Sequence[SuperPolynomial]) -> SolutionSpace:
    """Polynomials in span(ansatz) annihilated by every (linear) operator.

    The ansatz is split by parity so the returned basis is parity-homogeneous.
    """
    out: list[SuperPolynomial] = []
    ev = od = 0
    for p in (0, 1):
        part = [m for m in ansatz if m.parity == p]
        if not part:
            continue
        images = [[op(m) for op in operators] for m in part]
        for vec in _solve_linear_images(part, images):
            out.append(_combine(part, vec))
            if p:
                od += 1
            else:
                ev += 1
    return SolutionSpace(out, (ev, od))


def same_span(xs: Sequence, ys: Sequence) -> bool:
    A, B = LinearSpan(xs), LinearSpan(ys)
    return A.dim == B.dim and all(A.contains(y) for y in ys)


def normalizer(sub: Sequence[SuperPolynomial], model: ContactModel, level: int) -> list[SuperPolynomial]:
    """Degree-``level`` part of {w in c : {w, sub} in span(sub)}."""
    cand = [SuperPolynomial._make(model.coords, {k: RationalFunction.const(1)})
            for k in monomials_of_weight(model.coords, model.weights, level + model.shift)]
    span = LinearSpan(sub)
    # annihilators: express membership by reducing against the echelon form
    # of sub; the reduced vector depends linearly on w.
    out: list[SuperPolynomial] = []
    for p in (0, 1):
        part = [m for m in cand if m.parity == p]
        if not part:
            continue
        images = []
        for m in part:
            imgs = []
            for s in sub:
                vec, _ = span._reduce(_flatten(model.bracket(m, s)))
                imgs.append(SuperPolynomial._make(model.coords, {k: v for k, v in vec.items()}))
            images.append(imgs)
        for vec in _solve_linear_images(part, images):
            out.append(_combine(part, vec))
    return out


# ---------------------------------------------------------------------------
# distributions and symmetries
# ---------------------------------------------------------------------------


@dataclass
class DistributionFrame:
    """Frame v_1..v_r whose coefficients along ``leading`` form the identity."""

    fields: list[SuperVectorField]
    leading: list[str]

    def __post_init__(self):
        if len(self.fields) != len(self.leading):
            raise SuperfieldError("one leading coordinate per generator")
        for i, v in enumerate(self.fields):
            for j, z in enumerate(self.leading):
                c = v.coefficient(z)
                want = 1 if i == j else 0
                if not (c == want):
                    raise SuperfieldError(f"leading submatrix is not the identity at ({i}, {z})")

    @property
    def coords(self) -> Coordinates:
        return self.fields[0].coords

    def remainder(self, W: SuperVectorField) -> SuperVectorField:
        """W minus its projection read off the leading coordinates."""
        R = W
        for v, z in zip(self.fields, self.leading):
            c = W.coefficient(z)
            if not c.is_zero():
                R = R - c * v
        return R

    def contains(self, W: SuperVectorField) -> bool:
        return self.remainder(W).is_zero()


def symmetry_check(S: SuperVectorField, frame: DistributionFrame) -> bool:
    """True iff [S, v_i] lies in the module spanned by the frame for every i."""
    return all(frame.contains(super_bracket(S, v)) for v in frame.fields)


def symmetry_defects(S: SuperVectorField, frame: DistributionFrame) -> list[SuperVectorField]:
    return [frame.remainder(super_bracket(S, v)) for v in frame.fields]


def _field_monomials(coords: Coordinates, weights: Mapping[str, int], k: int) -> list[SuperVectorField]:
    out = []
    for z in coords.names:
        for key in monomials_of_weight(coords, weights, k + weights[z]):
            out.append(SuperVectorField(coords, {z: SuperPolynomial._make(coords, {key: RationalFunction.const(1)})}))
    return out


def frame_symmetries(frame: DistributionFrame, weights: Mapping[str, int], k: int) -> list[SuperVectorField]:
    """Basis of weight-k polynomial symmetries of the distribution."""
    out = []
    for p in (0, 1):
        cand = [f for f in _field_monomials(frame.coords, weights, k) if f.parity == p]
        if not cand:
            continue
        images = [symmetry_defects(f, frame) for f in cand]
        for vec in _solve_linear_images(cand, images):
            out.append(_combine(cand, vec))
    return out


def commutant(fields: Sequence[SuperVectorField], weights: Mapping[str, int], k: int) -> list[SuperVectorField]:
    """Weight-k polynomial fields supercommuting with every given field."""
    coords = fields[0].coords
    out = []
    for p in (0, 1):
        cand = [f for f in _field_monomials(coords, weights, k) if f.parity == p]
        if not cand:
            continue
        images = [[super_bracket(f, g) for g in fields] for f in cand]
        for vec in _solve_linear_images(cand, images):
            out.append(_combine(cand, vec))
    return out


def sdim_of(elements: Iterable) -> tuple[int, int]:
    ev = od = 0
    for x in elements:
        p = x.parity
        if p is None:
            raise SuperfieldError(f"{x} is not parity-homogeneous")
        if p:
            od += 1
        else:
            ev += 1
    return ev, od


# ---------------------------------------------------------------------------
# symmetries from a pair of functions
# ---------------------------------------------------------------------------

SYM33_COORDS = Coordinates(("y1", "y2", "y3"), ("xi1", "xi2", "xi3"))
SYM33_WEIGHTS = {"y1": 1, "y2": 1, "xi1": 1, "xi2": 1, "y3": 2, "xi3": 2}


def sym33_frame() -> dict[str, SuperVectorField]:
    c = SYM33_COORDS
    P = lambda t: parse_super(t, c)
    return {
        "e1": P("d_y1"), "e2": P("d_y2"), "e3": P("d_y3"),
        "f1": P("d_xi1 + xi2*d_y3 + y1*d_xi3"),
        "f2": P("d_xi2 + xi1*d_y3 + y2*d_xi3"),
        "f3": P("d_xi3"),
    }


def sym33_distribution() -> DistributionFrame:
    fr = sym33_frame()
    return DistributionFrame([fr["e1"], fr["e2"], fr["f1"], fr["f2"]], ["y1", "y2", "xi1", "xi2"])


def symmetry_from_pair(h: SuperPolynomial, g: SuperPolynomial, printed: bool = False) -> SuperVectorField:
    """Symmetry of the (2|2) distribution on C^{3|3} built from h and g.

    Both functions may depend on y3, xi1, xi2, xi3 only; inhomogeneous input
    is split into parity components.  With ``s = (-1)^|h|`` the field is

        h e3 + s/2 (f2(h) f1 + f1(h) f2) + g~ f3 - sum_i (-1)^|g~| f_i(g~) e_i,
        g~ = g - s/2 (fb2(h) y1 + fb1(h) y2 + y1 y2 d_xi3 h),

    where ``fb_i = f_i - y_i d_xi3``.  ``printed=True`` gives the variant with
    coefficients -1/2, +1/2 and the e_i terms taken from g; that one only
    works for h = 0 (see the decisions ledger).
    """
    c = SYM33_COORDS
    for f in (h, g):
        for (e, m) in f.terms:
            if e[0] or e[1]:
                raise SuperfieldError("h and g may not depend on y1, y2")
    fr = sym33_frame()
    y1, y2 = SuperPolynomial.gen(c, "y1"), SuperPolynomial.gen(c, "y2")
    X = SuperVectorField(c)
    half = Fraction(1, 2)
    if printed:
        for p, hp in h.parity_parts().items():
            s = (-1) ** p
            f1h, f2h = fr["f1"](hp), fr["f2"](hp)
            X = X + (f2h.scale(-half * s)) * fr["f1"] + (f1h.scale(-half * s)) * fr["f2"] + hp * fr["e3"]
            X = X + ((f2h * y1 + f1h * y2).scale(half * s)) * fr["f3"]
        for q, gq in g.parity_parts().items():
            s = (-1) ** q
            X = X + gq * fr["f3"]
            X = X + fr["f1"](gq).scale(-s) * fr["e1"] + fr["f2"](gq).scale(-s) * fr["e2"]
        return X
    fb1 = parse_super("d_xi1 + xi2*d_y3", c)
    fb2 = parse_super("d_xi2 + xi1*d_y3", c)
    gt = g
    for p, hp in h.parity_parts().items():
        s = (-1) ** p
        X = X + hp * fr["e3"]
        X = X + fr["f2"](hp).scale(half * s) * fr["f1"] + fr["f1"](hp).scale(half * s) * fr["f2"]
        corr = fb2(hp) * y1 + fb1(hp) * y2 + y1 * y2 * hp.diff("xi3")
        gt = gt - corr.scale(half * s)
    for q, gq in gt.parity_parts().items():
        s = (-1) ** q
        X = X + gq * fr["f3"]
        X = X + fr["f1"](gq).scale(-s) * fr["e1"] + fr["f2"](gq).scale(-s) * fr["e2"]
    return X


# ---------------------------------------------------------------------------
# lift to J^0
# ---------------------------------------------------------------------------

J0_COORDS = M14.coords.extend(even=("h",))


def lifted_field(f: SuperPolynomial) -> SuperVectorField:
    """X_f + f_x h d_h on the coordinates (x, xi_i, h)."""
    X = M14.contact_field(f).embed(J0_COORDS)
    fx = f.diff("x").embed(J0_COORDS)
    return X + (fx * SuperPolynomial.gen(J0_COORDS, "h")) * SuperVectorField.partial(J0_COORDS, "h")


def lift_homomorphism_check(pairs: Iterable[tuple[SuperPolynomial, SuperPolynomial]]) -> bool:
    for f, g in pairs:
        lhs = super_bracket(lifted_field(f), lifted_field(g))
        rhs = lifted_field(M14.bracket(f, g))
        if not (lhs == rhs):
            return False
    return True


def homomorphism_defect(model: ContactModel, f: SuperPolynomial, g: SuperPolynomial) -> SuperVectorField:
    """[X_f, X_g] - X_{f,g}; zero for a correct contact calculus."""
    return super_bracket(model.contact_field(f), model.contact_field(g)) - model.contact_field(model.bracket(f, g))
