"""Relative rank for finite matroids and a finite/cofinite infinite exemplar."""

from .matroid import (
    AxiomError,
    AxiomReport,
    Matroid,
    from_explicit_family,
    graphic,
    linear_gf2,
    minor,
    uniform,
)
from .sets import INF, ExtendedNat, GroundSet, SubsetMask, diff_size, nested_pairs
from .table import (
    RelRankTable,
    check_axioms,
    duality_identity,
    plus_criterion,
    r_independents,
    reconstruct,
    redundancy_report,
    span_criterion,
    table_from_matroid,
    zoom_identity,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "AxiomError",
    "AxiomReport",
    "ExtendedNat",
    "GroundSet",
    "Matroid",
    "RelRankTable",
    "SubsetMask",
    "check_axioms",
    "diff_size",
    "duality_identity",
    "from_explicit_family",
    "graphic",
    "linear_gf2",
    "minor",
    "nested_pairs",
    "plus_criterion",
    "r_independents",
    "reconstruct",
    "redundancy_report",
    "span_criterion",
    "table_from_matroid",
    "uniform",
    "zoom_identity",
]
