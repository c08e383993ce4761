"""Exact computations with the exceptional Lie superalgebra D(2,1;a).

Modules:

* ``scalars``      rational functions in the parameters, sparse exact elimination
* ``liesuper``     structure constants, Jacobi checks, invariant forms
* ``roots``        roots, Cartan matrices, odd reflections, the 28 parabolics
* ``prolong``      Tanaka-Weisfeiler prolongation and infinite-type witnesses
* ``spencer``      weight-sliced Chevalley-Eilenberg (Spencer) cohomology
* ``superfields``  super polynomials, vector fields and contact brackets
* ``realizations`` explicit symmetry algebras of the parabolic geometries
* ``reductions``   g0-reductions for the p2I and p23I gradings
* ``acceptance``   the end-to-end checks behind ``d21a verify``
"""

from .liesuper import d21a, gamma_generic, build_gamma
from .roots import ParabolicSpec, grading, classify_parabolics
from .prolong import prolong
from .spencer import cohomology

__version__ = "0.1.0"

__all__ = [
    "d21a",
    "gamma_generic",
    "build_gamma",
    "ParabolicSpec",
    "grading",
    "classify_parabolics",
    "prolong",
    "cohomology",
]
