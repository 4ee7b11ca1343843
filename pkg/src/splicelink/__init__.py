"""Splice diagrams at infinity of polynomially parametrised plane curves."""

from .algebra import TowerPoly, UniPoly, parse_poly
from .approx_roots import approximate_root, approximate_roots, verify_pole_orders
from .atlas import enumerate_chains, emit_atlas
from .errors import SpliceError
from .moduli import (build_positive_braid_curve, equation_count, expected_dimension,
                     solve_for_x, solve_with_retries)
from .recognize import ParamCurve, expand_at_infinity, preprocess, recognize
from .semigroup import normal_form, tower
from .splice import PuiseuxChain, genus, invariants, linking_number, validate

__all__ = [
    "ParamCurve", "PuiseuxChain", "SpliceError", "TowerPoly", "UniPoly",
    "approximate_root", "approximate_roots", "build_positive_braid_curve",
    "emit_atlas", "enumerate_chains", "equation_count", "expand_at_infinity",
    "expected_dimension", "genus", "invariants", "linking_number", "normal_form",
    "parse_poly", "preprocess", "recognize", "solve_for_x", "solve_with_retries",
    "tower", "validate", "verify_pole_orders",
]
