"""Exact arithmetic for positivity in *-algebras.

Subpackages cover the scalar field Q(i, sqrt2), commutative and Weyl
*-algebras with exact normal ordering, truncated ladder positivity, number
fields with trace forms, cyclic algebras, matrix *-algebras with the
averaging action, bimodule projections, quadratic modules with induction
and restriction, and Gram-matrix certificate verification.
"""

__version__ = "0.1.0"
