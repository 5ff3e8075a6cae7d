"""Exact-arithmetic engine for finite W-superalgebras of gl(M|N) attached to
signed pyramids, and for the matching truncated shifted super Yangians of
gl(1|n) given by generators and relations."""

from .algebra import SuperAlgebra, EnvelopingElement, bracket_basis
from .pyramid import (SignedPyramid, ShiftMatrix, TruncationSpec,
                      PyramidError, canonical_json)
from .series import TruncatedSeries, SeriesMatrix, gauss_decompose
from .wsuper import WModel, ParabolicFamily, ColumnRemoval, TensorElement
from .yangian import (AdmissibleShape, GeneratorSymbol, YangianExpression,
                      RelationInstance, relation_catalog, export_catalog,
                      tau_map, word_reversal, instance_match_keys,
                      iota_map, pbw_dimension,
                      graded_dimensions,
                      baby_comultiplication, TensorExpression)
from .verify import (CheckReport, Environment, evaluate, check_main_theorem,
                     check_relations, check_dimensions, check_baby,
                     check_shift_independence, sabotage_selftest,
                     replay_counterexample)

__all__ = [
    "SuperAlgebra", "EnvelopingElement", "bracket_basis",
    "SignedPyramid", "ShiftMatrix", "TruncationSpec", "PyramidError",
    "canonical_json",
    "TruncatedSeries", "SeriesMatrix", "gauss_decompose",
    "WModel", "ParabolicFamily", "ColumnRemoval", "TensorElement",
    "AdmissibleShape", "GeneratorSymbol", "YangianExpression",
    "RelationInstance", "relation_catalog", "export_catalog",
    "tau_map", "word_reversal", "instance_match_keys",
    "iota_map", "pbw_dimension",
    "graded_dimensions",
    "baby_comultiplication", "TensorExpression",
    "CheckReport", "Environment", "evaluate", "check_main_theorem",
    "check_relations", "check_dimensions", "check_baby",
    "check_shift_independence", "sabotage_selftest", "replay_counterexample",
]
