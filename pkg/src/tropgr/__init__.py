"""Exact computations on the tropical Grassmannian TGr(2,n) and its section."""

from .degeneration import gr24_catalog, initial_degeneration, initial_ideal_gens, multiplicity_certificate
from .exact import NEG_INF, ValuedCoeff, log_abs, parse_coeff, residue
from .grammar import parse_poly
from .laurent import LaurentPoly
from .newick import format_newick, parse_newick
from .plucker import PluckerMatrix, TropPoint, is_saturated, realize_stratum, trop_pluecker, validate_point
from .quotient import cut_metrics, project_mod_lineality, split_complex, verify_descent
from .section import section_point, verify_gluing, verify_section
from .trees import enumerate_trivalent, infer_type, metric_from_tree, neighbor_joining

__all__ = [
    "NEG_INF",
    "LaurentPoly",
    "PluckerMatrix",
    "TropPoint",
    "ValuedCoeff",
    "cut_metrics",
    "enumerate_trivalent",
    "format_newick",
    "gr24_catalog",
    "infer_type",
    "initial_degeneration",
    "initial_ideal_gens",
    "is_saturated",
    "log_abs",
    "metric_from_tree",
    "multiplicity_certificate",
    "neighbor_joining",
    "parse_coeff",
    "parse_newick",
    "parse_poly",
    "project_mod_lineality",
    "realize_stratum",
    "residue",
    "section_point",
    "split_complex",
    "trop_pluecker",
    "validate_point",
    "verify_descent",
    "verify_gluing",
    "verify_section",
]
