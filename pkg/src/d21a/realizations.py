"""Explicit realizations of D(2,1;a) by generating functions and vector fields.

Each builder returns plain lists of :class:`SuperPolynomial` or
:class:`SuperVectorField` together with names and grading levels, ready for
:func:`span_closure`, :func:`pde_solution_space` or :func:`symmetry_check`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .scalars import RationalFunction, rf
from .superfields import (
    M14,
    M24,
    M34_DIAMOND,
    ContactModel,
    Coordinates,
    DistributionFrame,
    SuperPolynomial,
    SuperVectorField,
    parse_super,
)

S3_ELIMINATED = {"s3": rf("-s1-s2")}


@dataclass
class Realization:
    """Named, graded generators together with the model (None for plain fields)."""

    name: str
    elements: list
    names: list[str]
    levels: list[int]
    model: ContactModel | None = None
    params: tuple[str, ...] = ()
    notes: dict = field(default_factory=dict)

    def by_name(self, n: str):
        return self.elements[self.names.index(n)]

    def level(self, k: int) -> list:
        return [e for e, l in zip(self.elements, self.levels) if l == k]


# ---------------------------------------------------------------------------
# M^{1|4}: the reduced contact algebra in Darboux coordinates
# ---------------------------------------------------------------------------


def xi_dual(i: int) -> SuperPolynomial:
    """d/dxi_i of nu = xi1 xi2 xi3 xi4."""
    return M14.poly("xi1*xi2*xi3*xi4").diff(f"xi{i}")


def p1_span(eps: object = "eps") -> Realization:
    """Generating functions 1, xi_i, x, xi_i xi_j, x xi_i + eps xi_i^v, x^2/2 - eps nu."""
    e = rf(eps)
    P = M14.poly
    nu = P("xi1*xi2*xi3*xi4")
    elems, names, levels = [P("1")], ["1"], [-2]
    for i in range(1, 5):
        elems.append(P(f"xi{i}"))
        names.append(f"xi{i}")
        levels.append(-1)
    elems.append(P("x"))
    names.append("x")
    levels.append(0)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            elems.append(P(f"xi{i}*xi{j}"))
            names.append(f"xi{i}xi{j}")
            levels.append(0)
    for i in range(1, 5):
        elems.append(P(f"x*xi{i}") + xi_dual(i).scale(e))
        names.append(f"xxi{i}")
        levels.append(1)
    elems.append(P("x^2/2") - nu.scale(e))
    names.append("top")
    levels.append(2)
    return Realization("p1I", elems, names, levels, M14, ("eps",))


def p1_c0() -> Realization:
    P = M14.poly
    names = ["x"] + [f"xi{i}xi{j}" for i in range(1, 5) for j in range(i + 1, 5)]
    elems = [P("x")] + [P(f"xi{i}*xi{j}") for i in range(1, 5) for j in range(i + 1, 5)]
    return Realization("c0", elems, names, [0] * 7, M14)


def _compose(*ops: Callable) -> Callable:
    """ops[0] o ops[1] o ... (the last one acts first)."""
    def run(f):
        for op in reversed(ops):
            f = op(f)
        return f
    return run


def _d(name: str) -> Callable:
    return lambda f: f.diff(name)


def _mul(p: SuperPolynomial) -> Callable:
    return lambda f: p * f


def _lin(*pairs) -> Callable:
    """sum c_i op_i."""
    def run(f):
        out = None
        for c, op in pairs:
            v = op(f).scale(rf(c))
            out = v if out is None else out + v
        return out
    return run


def p1_pde(eps: object = "eps") -> list[Callable]:
    """Linear operators of the system whose solutions are the p1I generating functions."""
    e = rf(eps)
    c = M14.coords
    ops = [_lin((e, _compose(_d("x"), _d("x"))),
                (1, _compose(_d("xi1"), _d("xi2"), _d("xi3"), _d("xi4"))))]
    for i in range(1, 5):
        rest = [j for j in range(1, 5) if j != i]
        # xi_i^v = s * xi_j xi_k xi_l; the matching operator is s * d_j d_k d_l
        dual = xi_dual(i)
        s = next(iter(dual.terms.values()))
        D_dual = _lin((s, _compose(*(_d(f"xi{j}") for j in rest))))
        inner = _lin((e, _compose(_d("x"), _d(f"xi{i}"))), (1, D_dual))
        ops.append(_compose(_mul(SuperPolynomial.gen(c, f"xi{i}")), inner))
    for i in range(1, 5):
        for j in range(i + 1, 5):
            ops.append(_compose(_d("x"), _d(f"xi{i}"), _d(f"xi{j}")))
    return ops


def ansatz(model: ContactModel, even_degree: int) -> list[SuperPolynomial]:
    from .superfields import monomials
    return [SuperPolynomial.monomial(model.coords, e, m) for e, m in monomials(model.coords, even_degree)]


# ---------------------------------------------------------------------------
# M^{2|4}: reduced algebra in the (y | theta, nu) coordinates
# ---------------------------------------------------------------------------

P12_GENERATORS = [
    ("1", -3, "1"),
    ("theta1", -2, "theta1"),
    ("theta2", -2, "theta2"),
    ("theta1theta2", -1, "theta1*theta2"),
    ("nu1", -1, "nu1"),
    ("nu2", -1, "nu2"),
    ("y", 0, "y"),
    ("theta1nu1", 0, "theta1*nu1"),
    ("theta1nu2", 0, "theta1*nu2"),
    ("theta2nu1", 0, "theta2*nu1"),
    ("theta2nu2", 0, "theta2*nu2"),
    ("nu1nu2", 1, "nu1*nu2"),
    ("g1a", 1, "y*theta1 + a*theta1*theta2*nu2"),
    ("g1b", 1, "y*theta2 - a*theta1*theta2*nu1"),
    ("g2a", 2, "y*nu1 + (a+1)*theta2*nu1*nu2"),
    ("g2b", 2, "y*nu2 - (a+1)*theta1*nu1*nu2"),
    ("g3", 3, "y^2 - (theta1*nu1 + theta2*nu2)*y - (a+1)*theta1*theta2*nu1*nu2"),
]


def p12_span() -> Realization:
    elems = [M24.poly(t) for _, _, t in P12_GENERATORS]
    return Realization("p12I", elems, [n for n, _, _ in P12_GENERATORS],
                       [l for _, l, _ in P12_GENERATORS], M24, ("a",))


def p12_pde(literal: bool = False) -> list[Callable]:
    """Operators cutting out the p12I generating functions.

    The two k-indexed families are printed with the triple-derivative term
    carrying the index k; the solution space only matches the algebra when
    that term carries the complementary index 3-k, which is the default.
    ``literal=True`` gives the printed index placement.
    """
    a = rf("a")
    d = _d
    C = _compose
    ops = [
        _lin((a + 1, C(d("y"), d("y"))), (2, C(d("theta1"), d("theta2"), d("nu1"), d("nu2")))),
        C(d("y"), d("theta1"), d("nu2")),
        C(d("y"), d("theta2"), d("nu1")),
        C(d("y"), d("theta1"), d("theta2")),
        C(d("y"), d("nu1"), d("nu2")),
        _lin((1, C(d("y"), d("theta1"), d("nu1"))), (-1, C(d("y"), d("theta2"), d("nu2")))),
    ]
    for k in (1, 2):
        sgn = (-1) ** k
        j = k if literal else 3 - k
        ops.append(_lin((a + 1, C(d("y"), d(f"nu{k}"))), (-sgn, C(d(f"theta{j}"), d("nu1"), d("nu2")))))
        nu_k = SuperPolynomial.gen(M24.coords, f"nu{k}")
        inner = _lin((a, C(d("y"), d(f"theta{k}"))), (-sgn, C(d("theta1"), d("theta2"), d(f"nu{j}"))))
        ops.append(C(_mul(nu_k), inner))
    return ops


# ---------------------------------------------------------------------------
# M^{3|4}_diamond: vector fields and generating functions
# ---------------------------------------------------------------------------

DIAMOND_COORDS = Coordinates(("x12", "x31", "x23"), ("xi1", "xi2", "xi3", "theta"))
DIAMOND_WEIGHTS = {"xi1": 1, "xi2": 1, "xi3": 1, "x12": 2, "x23": 2, "x31": 2, "theta": 3}

# cyclic relabelling 1 -> 2 -> 3 -> 1 on coordinates and parameters
_CYCLE = {"xi1": "xi2", "xi2": "xi3", "xi3": "xi1", "x12": "x23", "x23": "x31", "x31": "x12"}
_CYCLE_PARAMS = {"s1": RationalFunction.gen("s2"), "s2": RationalFunction.gen("s3"),
                 "s3": RationalFunction.gen("s1")}
_CYCLE_PSI = {"xi1": "xi2", "xi2": "xi3", "xi3": "xi1", "psi1": "psi2", "psi2": "psi3", "psi3": "psi1"}


def _cyc(x, mapping=_CYCLE):
    return x.rename(mapping, _CYCLE_PARAMS)


def _orbit(x, mapping=_CYCLE) -> list:
    y = _cyc(x, mapping)
    return [x, y, _cyc(y, mapping)]


def _eliminate_s3(x):
    return x.subs_params(S3_ELIMINATED)


def _D(text: str) -> SuperVectorField:
    return parse_super(text, DIAMOND_COORDS)


def diamond_frame(eliminate: bool = True) -> DistributionFrame:
    v1 = _D("d_xi1 + xi2*d_x12 + s1*xi2*xi3*d_theta")
    vs = _orbit(v1)
    if eliminate:
        vs = [_eliminate_s3(v) for v in vs]
    return DistributionFrame(vs, ["xi1", "xi2", "xi3"])


DIAMOND_S1 = "d_xi1 - xi3*d_x31 + (s3*xi2*xi3 + (s2-s3)*x23)*d_theta"
DIAMOND_Z1 = "xi1*d_xi1 + x12*d_x12 + x31*d_x31 + theta*d_theta"
DIAMOND_R12 = ("(s1-s2)*x12*(xi1*d_xi1 + xi2*d_xi2 - xi3*d_xi3 + x12*d_x12 + theta*d_theta)"
               " + (theta - s2*xi1*xi2*xi3)*d_xi3 + xi2*theta*d_x23 + s2*xi1*xi2*theta*d_theta")
# As printed, the d_xi1 coefficient contains x12*(... - x31*x12), which has
# weight 5 instead of 4; the weight-homogeneous reading drops one x12.
DIAMOND_TOP_XI_PRINTED = "((s1-s2)*(s3-s1)*x12*(xi3*xi1 - x31*x12) - (s2-s3)*xi1*theta)*d_xi1"
DIAMOND_TOP_XI = "((s1-s2)*(s3-s1)*x12*(xi3*xi1 - x31) - (s2-s3)*xi1*theta)*d_xi1"
DIAMOND_TOP_X = "((s1-s2)*x12*(s3*xi1*xi2*xi3 + x23*(s2-s3)*xi1 - theta))*d_x12"
DIAMOND_TOP_THETA = ("(s2*(s2-s3)*(s1-s3)*x23*x31*xi1*xi2 + s3*(s3-s1)*(s2-s1)*x31*x12*xi2*xi3"
                     " + s1*(s1-s2)*(s3-s2)*x12*x23*xi3*xi1 - (s1-s2)*(s2-s3)*(s3-s1)*x12*x23*x31)*d_theta")


def diamond_symmetries(eliminate: bool = True, printed_top: bool = False) -> Realization:
    """The seventeen symmetries of the diamond distribution, with cyclic images."""
    S = _orbit(_D(DIAMOND_S1))
    Z = _orbit(_D(DIAMOND_Z1))
    R1 = (parse_super("(s1-s2)*x12", DIAMOND_COORDS) * S[1]
          + parse_super("(s3-s1)*x31", DIAMOND_COORDS) * S[2]
          + _D("-(s1-s2)*xi1*xi2*d_xi2 + (theta - s1*xi1*xi2*xi3)*d_x23 - (s1-s2)*(s3-s1)*x12*x31*d_theta"))
    R = _orbit(R1)
    R12 = _orbit(_D(DIAMOND_R12))
    top = _D(DIAMOND_TOP_THETA)
    top_xi = DIAMOND_TOP_XI_PRINTED if printed_top else DIAMOND_TOP_XI
    for t in _orbit(_D(top_xi)) + _orbit(_D(DIAMOND_TOP_X)):
        top = top + t
    elems = ([_D("d_theta")] + [_D("d_x12"), _D("d_x23"), _D("d_x31")] + S + Z + R + R12 + [top])
    names = (["d_theta", "d_x12", "d_x23", "d_x31", "S1", "S2", "S3", "Z1", "Z2", "Z3",
              "R1", "R2", "R3", "R12", "R23", "R31", "T"])
    levels = [-3, -2, -2, -2, -1, -1, -1, 0, 0, 0, 1, 1, 1, 2, 2, 2, 3]
    if eliminate:
        elems = [_eliminate_s3(e) for e in elems]
    return Realization("p123IV", elems, names, levels, None, ("s1", "s2"))


DIAMOND_GF = [
    ("1", -3, "1"),
    ("xi1", -2, "xi1"),
    ("psi1 - s1*xi2*xi3", -1, None),
    ("psi - psi1*xi1", 0, None),
    ("psi2*psi3 + (s2*psi2*xi2 - s3*psi3*xi3 + (s3-s2)*psi)*xi1", 1, None),
    ("psi*(psi1 - s1*xi2*xi3) + psi1*(s1*xi1*xi2*xi3 - psi2*xi2 - psi3*xi3)", 2, None),
    ("psi1*psi2*psi3 - psi*((s2-s3)*psi1*xi1 + (s3-s1)*psi2*xi2 + (s1-s2)*psi3*xi3)"
     " + 2*s1*psi2*psi3*xi2*xi3 + 2*s2*psi3*psi1*xi3*xi1 + 2*s3*psi1*psi2*xi1*xi2", 3, "top"),
]


def diamond_generating_functions(eliminate: bool = True) -> Realization:
    m = M34_DIAMOND
    elems, names, levels = [], [], []
    for text, lvl, single in DIAMOND_GF:
        f = parse_super(text, m.coords)
        group = [f] if single in ("1", "top") else _orbit(f, _CYCLE_PSI)
        for i, g in enumerate(group):
            elems.append(g)
            levels.append(lvl)
            names.append(f"f{lvl}" if len(group) == 1 else f"f{lvl}_{i + 1}")
    if eliminate:
        elems = [e.subs_params(S3_ELIMINATED) for e in elems]
    return Realization("p123IV_gf", elems, names, levels, m, ("s1", "s2"))


def diamond_psi_frame(eliminate: bool = True) -> DistributionFrame:
    c = M34_DIAMOND.coords
    v1 = parse_super("d_xi1 + psi1*d_psi - s3*xi3*d_psi2 + s2*xi2*d_psi3", c)
    vs = _orbit(v1, _CYCLE_PSI)
    if eliminate:
        vs = [v.subs_params(S3_ELIMINATED) for v in vs]
    return DistributionFrame(vs, ["xi1", "xi2", "xi3"])


# ---------------------------------------------------------------------------
# M^{3|4}: the seventeen vector fields of the Borel case
# ---------------------------------------------------------------------------

FLAG_COORDS = Coordinates(("x1", "x2", "x3"), ("xi1", "xi2", "xi3", "xi4"))
FLAG_WEIGHTS = {"x1": 1, "x2": 1, "xi1": 1, "xi2": 2, "xi3": 2, "xi4": 3, "x3": 4}

FLAG_FIELDS = [
    ("u1m", -1, "d_x1 + xi1*d_xi2 + kappa*xi1*xi3*d_x3 + x2*xi1*d_xi4"),
    ("u2m", -1, "d_x2 + xi1*d_xi3 + xi1*xi2*d_x3 + x1*xi1*d_xi4"),
    ("u3m", -4, "(kappa+1)*d_x3"),
    ("v1m", -1, "d_xi1"),
    ("v2m", -2, "d_xi2 + kappa*xi3*d_x3 + x2*d_xi4"),
    ("v3m", -2, "d_xi3 + xi2*d_x3 + x1*d_xi4"),
    ("v4m", -3, "d_xi4 + (kappa+1)*xi1*d_x3"),
    ("u1z", 0, "x1*d_x1 + xi2*d_xi2 + xi4*d_xi4 + x3*d_x3"),
    ("u2z", 0, "x2*d_x2 + xi3*d_xi3 + xi4*d_xi4 + x3*d_x3"),
    ("u3z", 0, "xi1*d_xi1 + xi2*d_xi2 + xi3*d_xi3 + xi4*d_xi4 + 2*x3*d_x3"),
    ("u1p", 1, "x1^2*d_x1 - xi2*d_xi1 - (x2*xi2 + x1*xi3 - xi4)*d_xi3 - x1*(x2*xi2 - xi4)*d_xi4"
               " - kappa*xi2*(x1*xi3 - xi4)*d_x3"),
    ("u2p", 1, "x2^2*d_x2 - xi3*d_xi1 - (x2*xi2 + x1*xi3 - xi4)*d_xi2 - x2*(x1*xi3 - xi4)*d_xi4"
               " - xi3*(x2*xi2 - xi4)*d_x3"),
    ("v1p", 1, "(a+1)*(x1*xi1 - xi2)*d_x1 + (a*kappa-1)*(x2*xi1 - xi3)*d_x2 + (a+1)*xi1*xi2*d_xi2"
               " + (a*kappa-1)*xi1*xi3*d_xi3 + (a*x3 + a*(kappa+1)*xi1*xi4 - xi2*xi3)*d_xi4"
               " + a*(kappa+1)*x3*xi1*d_x3"),
    ("v2p", 2, "-(a+1)*x1*(x1*xi1 - xi2)*d_x1 + (a*kappa-1)*(x1*xi3 - xi4)*d_x2 + (a+1)*xi1*xi2*d_xi1"
               " + ((a+1)*xi1*(x2*xi2 + x1*xi3 - xi4) - a*(x3 + xi2*xi3))*d_xi3"
               " + x1*((a+1)*xi1*(x2*xi2 - xi4) + xi2*xi3 - a*x3)*d_xi4"
               " + ((a+1)*kappa*xi1*(x1*xi2*xi3 - xi2*xi4) - a*x3*xi2)*d_x3"),
    ("v3p", 2, "(a+1)*(x2*xi2 - xi4)*d_x1 - (a*kappa-1)*x2*(x2*xi1 - xi3)*d_x2 + (a*kappa-1)*xi1*xi3*d_xi1"
               " + ((a*kappa-1)*xi1*(x2*xi2 + x1*xi3 - xi4) + a*(kappa*xi2*xi3 - x3))*d_xi2"
               " + x2*((a*kappa-1)*xi1*(x1*xi3 - xi4) + xi2*xi3 - a*x3)*d_xi4"
               " - ((a*kappa-1)*xi3*(x2*xi1*xi2 - xi1*xi4) + a*kappa*x3*xi3)*d_x3"),
    ("v4p", 3, "-(a+1)*x1*(x2*xi2 - xi4)*d_x1 - (a*kappa-1)*x2*(x1*xi3 - xi4)*d_x2 + (xi2*xi3 - a*x3)*d_xi1"
               " - (a*kappa-1)*xi2*(x1*xi3 - xi4)*d_xi2 - (a+1)*xi3*(x2*xi2 - xi4)*d_xi3"
               " - (kappa+1)*xi2*xi3*xi4*d_x3"),
    ("u3p", 4, "a*(a+1)*(kappa+1)*(x1*x2*xi1*xi2 - x1*xi1*xi4 + xi2*xi4)*d_x1"
               " + a*(a*kappa-1)*(kappa+1)*(x1*x2*xi1*xi3 - x2*xi1*xi4 + xi3*xi4)*d_x2"
               " + a*(kappa+1)*xi1*(a*x3 - xi2*xi3)*d_xi1"
               " + a*(kappa+1)*((a*kappa-1)*xi1*xi2*(x1*xi3 - xi4) + a*x3*xi2)*d_xi2"
               " - a*(kappa+1)*((a+1)*xi1*(x2*xi2*xi3 + xi3*xi4) - a*x3*xi3)*d_xi3"
               " + a*(kappa+1)*xi4*(a*x3 - xi2*xi3)*d_xi4"
               " + a*(kappa+1)*((kappa+1)*xi1*xi2*xi3*xi4 + a*x3^2)*d_x3"),
]

# Structure equations among the negative fields as printed; each entry is
# (left, right, sign, result): [left, right] = sign * result.
FLAG_STRUCTURE_PRINTED = [
    ("u1m", "v1m", 1, "v2m"),
    ("u2m", "v1m", 1, "v3m"),
    ("u2m", "v2m", 1, "v4m"),
    ("u1m", "v3m", 1, "v4m"),
    ("v1m", "v4m", -1, "u3m"),
    ("v2m", "v3m", 1, "u3m"),
]

# The printed equations hold after rescaling these fields by -1.
FLAG_SIGN_FLIP = ("v2m", "v3m", "v4m")

# The third generator of the distribution as printed (y_i renamed xi_i).
FLAG_DISTRIBUTION_PRINTED = [
    "d_x1 + xi3*d_xi4",
    "d_x2 + xi2*d_xi4",
    "d_xi1 + x1*d_xi2 + x2*d_xi3 + x1*x2*d_xi3 + (kappa*x1*xi3 + x2*xi2 - (kappa+1)*xi4)*d_xi4",
]


def flag_fields(kappa: object | None = None, flip_signs: bool = False) -> Realization:
    """The Borel-case realization; ``kappa`` may be fixed to a number."""
    env = {} if kappa is None else {"kappa": rf(kappa)}
    elems, names, levels = [], [], []
    for n, l, text in FLAG_FIELDS:
        f = parse_super(text, FLAG_COORDS, env)
        if flip_signs and n in FLAG_SIGN_FLIP:
            f = -f
        elems.append(f)
        names.append(n)
        levels.append(l)
    params = ("a",) if kappa is not None else ("a", "kappa")
    return Realization("p123I", elems, names, levels, None, params)


def flag_parameter(a=None, kappa=None) -> RationalFunction:
    """a(kappa) = (a kappa - 1)/(a + 1)."""
    a = rf("a") if a is None else rf(a)
    kappa = rf("kappa") if kappa is None else rf(kappa)
    return (a * kappa - 1) / (a + 1)


def flag_printed_distribution(kappa: object | None = None) -> list:
    env = {} if kappa is None else {"kappa": rf(kappa)}
    return [parse_super(t, FLAG_COORDS, env) for t in FLAG_DISTRIBUTION_PRINTED]


def normalize_frame(fields: Sequence[SuperVectorField], leading: Sequence[str]) -> DistributionFrame:
    """Row-reduce fields (over constants) so the leading block is the identity."""
    rows = list(fields)
    for i, z in enumerate(leading):
        piv = next((r for r in range(i, len(rows)) if rows[r].coefficient(z).constant_term() != 0), None)
        if piv is None:
            raise ValueError(f"no field with a constant {z}-component")
        rows[i], rows[piv] = rows[piv], rows[i]
        c = rows[i].coefficient(z).constant_term()
        rows[i] = rows[i] / c
        for r in range(len(rows)):
            if r != i:
                cr = rows[r].coefficient(z).constant_term()
                if cr != 0:
                    rows[r] = rows[r] - rows[i].__rmul__(cr)
    return DistributionFrame(rows, list(leading))


def flag_distribution(kappa: object | None = None) -> DistributionFrame:
    """Weight -1 fields commuting with the negative part; they span the distribution."""
    from .superfields import commutant
    real = flag_fields(kappa)
    neg = [e for e, l in zip(real.elements, real.levels) if l < 0]
    fr = commutant(neg, FLAG_WEIGHTS, -1)
    return normalize_frame(fr, ["x1", "x2", "xi1"])
