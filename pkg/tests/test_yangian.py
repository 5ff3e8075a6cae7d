"""Tests for the presentation side: symbols, relation catalog, symmetry
maps, and filtered dimension counts."""

import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wyang import (SignedPyramid, ShiftMatrix, TruncationSpec,
                   AdmissibleShape, GeneratorSymbol, YangianExpression,
                   relation_catalog, export_catalog, tau_map, word_reversal,
                   instance_match_keys, iota_map, pbw_dimension,
                   graded_dimensions, ColumnRemoval, WModel)
from wyang.yangian import (make_symbol, symbol_parity, pbw_generator_degrees,
                           reduced_shift, TensorExpression)


def sample_spec():
    return SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)]).to_shift_and_level()


def sample_shape():
    spec = sample_spec()
    return AdmissibleShape(spec.sigma, (1, 1, 1), level=spec.level)


def aux_spec():
    return SignedPyramid([("+", 1, 0), ("-", 3, 0), ("-", 3, 0)]).to_shift_and_level()


# ----- symbols and expressions ---------------------------------------------

def test_symbol_validation():
    make_symbol("D", 1, 1, 1, 1, 0)
    make_symbol("E", 1, 2, 1, 1, 1)
    with pytest.raises(ValueError):
        make_symbol("E", 2, 1, 1, 1, 1)       # E needs a < b
    with pytest.raises(ValueError):
        make_symbol("D", 1, 2, 1, 1, 0)       # D is diagonal
    with pytest.raises(ValueError):
        make_symbol("X", 1, 1, 1, 1, 0)


def test_symbol_parity():
    assert symbol_parity(make_symbol("E", 1, 2, 1, 1, 1)) == 1
    assert symbol_parity(make_symbol("E", 2, 3, 1, 1, 1)) == 0
    assert symbol_parity(make_symbol("F", 2, 1, 1, 1, 1)) == 1
    assert symbol_parity(make_symbol("D", 2, 2, 1, 1, 1)) == 0


def test_bracket_of_equal_even_symbols_vanishes():
    d = YangianExpression.symbol(make_symbol("D", 2, 2, 1, 1, 1))
    assert d.bracket(d).is_zero()


def test_bracket_koszul_convention():
    e = YangianExpression.symbol(make_symbol("E", 1, 2, 1, 1, 1))
    f = YangianExpression.symbol(make_symbol("F", 2, 1, 1, 1, 1))
    # both odd: [e, f] = ef + fe
    assert e.bracket(f) == e * f + f * e
    d = YangianExpression.symbol(make_symbol("D", 1, 1, 1, 1, 1))
    assert e.bracket(d) == e * d - d * e


def test_expression_serialization_round_trip():
    e = YangianExpression.symbol(make_symbol("E", 1, 2, 1, 1, 2))
    d = YangianExpression.symbol(make_symbol("D", 2, 2, 1, 1, 1))
    expr = e * d * Fraction(3, 7) - d + YangianExpression.scalar(5)
    back = YangianExpression.deserialize(expr.serialize())
    assert back == expr


def test_canonical_key_is_scale_invariant():
    e = YangianExpression.symbol(make_symbol("E", 1, 2, 1, 1, 2))
    d = YangianExpression.symbol(make_symbol("D", 2, 2, 1, 1, 1))
    expr = e * d - d * 2
    assert expr.canonical_key() == (expr * Fraction(-5, 3)).canonical_key()
    assert expr.canonical_key() != (expr + d).canonical_key()


# ----- admissible shapes ----------------------------------------------------

def test_shape_validation():
    spec = sample_spec()
    AdmissibleShape(spec.sigma, (1, 1, 1), level=spec.level)
    with pytest.raises(ValueError):
        AdmissibleShape(spec.sigma, (1, 2), level=spec.level)  # block not zero
    with pytest.raises(ValueError):
        AdmissibleShape(spec.sigma, (2, 1), level=spec.level)  # first block != 1
    with pytest.raises(ValueError):
        AdmissibleShape(spec.sigma, (1, 1), level=spec.level)  # wrong sum


def test_windows_on_sample():
    sh = sample_shape()
    assert [sh.p(a) for a in (1, 2, 3)] == [2, 3, 4]
    assert sh.s(1, 2) == 1 and sh.s(2, 1) == 0
    assert sh.s(2, 3) == 0 and sh.s(3, 2) == 1
    # in_window enforces the shift lower bound only; the truncation cap
    # enters through generator_symbols and the vanishing check
    assert sh.window_start("E", 1, 2) == 1
    assert not sh.in_window(make_symbol("E", 1, 2, 1, 1, 1))
    assert sh.in_window(make_symbol("E", 1, 2, 1, 1, 2))
    assert sh.in_window(make_symbol("D", 1, 1, 1, 1, 0))
    assert not sh.in_window(make_symbol("F", 3, 2, 1, 1, 1))
    assert sh.in_window(make_symbol("F", 3, 2, 1, 1, 2))
    # the enumerated basis respects the truncation caps
    syms = sh.generator_symbols()
    assert make_symbol("E", 1, 2, 1, 1, 3) in syms
    assert make_symbol("E", 1, 2, 1, 1, 4) not in syms
    assert make_symbol("D", 1, 1, 1, 1, 2) in syms
    assert make_symbol("D", 1, 1, 1, 1, 3) not in syms


def test_truncated_generator_count_matches_centralizer():
    p = SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)])
    sh = sample_shape()
    assert len(list(sh.generator_symbols())) == len(p.centralizer_basis()) == 23


def admissible_by_brute_force(sigma, mu):
    edges = [0]
    for m in mu:
        edges.append(edges[-1] + m)
    if mu[0] != 1 or edges[-1] != sigma.size:
        return False
    for lo, hi in zip(edges, edges[1:]):
        for i in range(lo + 1, hi + 1):
            for j in range(lo + 1, hi + 1):
                if sigma[i, j] != 0:
                    return False
    return True


def compositions(total):
    if total == 0:
        yield ()
        return
    for head in range(1, total + 1):
        for rest in compositions(total - head):
            yield (head,) + rest


def build_shift(upper, lower):
    n1 = len(upper) + 1
    s = [[0] * n1 for _ in range(n1)]
    for i in range(n1):
        for j in range(n1):
            if i < j:
                s[i][j] = sum(upper[i:j])
            elif i > j:
                s[i][j] = sum(lower[j:i])
    return ShiftMatrix(s)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=2, max_value=5).flatmap(
    lambda n1: st.tuples(
        st.tuples(*[st.integers(0, 2)] * (n1 - 1)),
        st.tuples(*[st.integers(0, 2)] * (n1 - 1)))))
def test_minimal_shape_by_brute_force(diags):
    sigma = build_shift(*diags)
    mu_min = sigma.minimal_admissible_shape()
    assert admissible_by_brute_force(sigma, mu_min)
    for mu in compositions(sigma.size):
        want = admissible_by_brute_force(sigma, mu)
        assert sigma.is_admissible(mu) == want
        # the minimal shape is the coarsest: every admissible shape cuts
        # wherever it cuts
        if want:
            cuts = {sum(mu[:k]) for k in range(len(mu) + 1)}
            assert {sum(mu_min[:k]) for k in range(len(mu_min) + 1)} <= cuts


# ----- relation catalog -----------------------------------------------------

GOLDEN_COUNTS_R3 = {
    "d-unit": 3, "d-dprime-inverse": 12, "dd-commutator": 81,
    "de-commutator": 36, "df-commutator": 36, "ee-same-block": 18,
    "ff-same-block": 18, "ef-cartan": 36, "ee-adjacent-grading": 4,
    "ff-adjacent-grading": 4, "eee-serre": 36, "fff-serre": 36,
}


def test_catalog_golden_counts():
    cat = relation_catalog(sample_shape(), 3)
    assert len(cat) == 320
    by_family = {}
    for inst in cat:
        by_family[inst.rel_id] = by_family.get(inst.rel_id, 0) + 1
    assert by_family == GOLDEN_COUNTS_R3
    assert sum(1 for inst in cat if inst.flagged) == 66
    # a larger sweep, frozen as a regression baseline
    assert len(relation_catalog(sample_shape(), 5)) == 978


def test_catalog_is_deterministic():
    a = relation_catalog(sample_shape(), 3)
    b = relation_catalog(sample_shape(), 3)
    assert [i.to_json() for i in a] == [i.to_json() for i in b]
    assert [i.sort_key() for i in a] == sorted(i.sort_key() for i in a)


def test_flagged_instances_mention_out_of_window_symbols():
    sh = sample_shape()
    for inst in relation_catalog(sh, 3):
        bad = [s for s in (inst.lhs - inst.rhs).symbols()
               if not sh.in_window(s)]
        assert bool(inst.flagged) == bool(bad)
        assert set(inst.flagged) == set(bad)


def test_catalog_export_is_json_lines():
    cat = relation_catalog(sample_shape(), 2)
    buf = io.StringIO()
    export_catalog(cat, buf)
    lines = buf.getvalue().strip().split("\n")
    assert len(lines) == len(cat)
    for line, inst in zip(lines, cat):
        data = json.loads(line)
        assert data["id"] == inst.rel_id
        assert set(data) >= {"id", "binding", "lhs", "rhs", "flagged"}
        assert YangianExpression.deserialize(data["lhs"]) == inst.lhs


# ----- symmetry maps --------------------------------------------------------

def test_tau_is_an_involution():
    for inst in relation_catalog(sample_shape(), 2):
        expr = inst.lhs - inst.rhs * Fraction(2, 3)
        assert tau_map(tau_map(expr)) == expr


def test_tau_carries_catalog_to_transposed_catalog():
    spec = sample_spec()
    sh = sample_shape()
    sht = AdmissibleShape(spec.sigma.transpose(), (1, 1, 1), level=spec.level)
    keys = set()
    for inst in relation_catalog(sht, 3):
        keys |= instance_match_keys(inst)
    for inst in relation_catalog(sh, 3):
        img = tau_map(inst.lhs - inst.rhs)
        assert img.canonical_key() in keys, inst


def test_word_reversal_sign():
    e = YangianExpression.symbol(make_symbol("E", 1, 2, 1, 1, 1))
    f = YangianExpression.symbol(make_symbol("F", 2, 1, 1, 1, 1))
    d = YangianExpression.symbol(make_symbol("D", 1, 1, 1, 1, 1))
    # two odd letters pick up one sign, a single letter none
    assert word_reversal(e * f) == -(f * e)
    assert word_reversal(e * d) == d * e
    assert word_reversal(e * f, signed=False) == f * e


def test_iota_with_equal_shift_is_identity():
    sh = sample_shape()
    for inst in relation_catalog(sh, 2):
        expr = inst.lhs - inst.rhs
        assert iota_map(expr, sh, sh) == expr


def test_iota_requires_matching_superdiagonal_sums():
    spec = sample_spec()
    sh = sample_shape()
    other = AdmissibleShape(spec.sigma.transpose(), (1, 1, 1), level=spec.level)
    # sigma is not symmetric, but sigma^t keeps the superdiagonal sums
    e = YangianExpression.symbol(make_symbol("E", 1, 2, 1, 1, 2))
    moved = iota_map(e, sh, other)
    assert list(moved.symbols())[0].r == 2 - sh.s(1, 2) + other.s(1, 2)
    bad_sigma = ShiftMatrix([[0, 2, 2], [0, 0, 0], [1, 1, 0]])
    bad = AdmissibleShape(bad_sigma, (1, 1, 1), level=spec.level + 1)
    with pytest.raises(ValueError):
        iota_map(e, sh, bad)


# ----- filtered dimensions --------------------------------------------------

def test_graded_dimensions_closed_forms():
    # cumulative filtered dimensions of the free supercommutative algebra
    assert graded_dimensions([(1, 0)], 3) == [1, 2, 3, 4]
    assert graded_dimensions([(1, 1)], 3) == [1, 2, 2, 2]
    assert graded_dimensions([(1, 0), (1, 1)], 2) == [1, 3, 5]
    assert graded_dimensions([(2, 0)], 5) == [1, 1, 2, 2, 3, 3]


def test_pbw_dimension_anchor():
    assert pbw_dimension(sample_spec(), (1, 1, 1), 1) == 6


def test_pbw_dimensions_golden():
    sh = sample_shape()
    assert graded_dimensions(pbw_generator_degrees(sh), 4) == [1, 6, 29, 111, 370]


def test_pbw_dimensions_independent_of_shape():
    spec = aux_spec()
    dims = {}
    for mu in ((1, 1, 1), (1, 2)):
        sh = AdmissibleShape(spec.sigma, mu, level=spec.level)
        dims[mu] = graded_dimensions(pbw_generator_degrees(sh), 4)
    assert dims[(1, 1, 1)] == dims[(1, 2)] == [1, 8, 38, 142, 453]


def test_pbw_dimensions_grow_with_level():
    spec = aux_spec()
    low = AdmissibleShape(spec.sigma, (1, 2), level=spec.level)
    high = AdmissibleShape(spec.sigma, (1, 2), level=spec.level + 1)
    dlow = graded_dimensions(pbw_generator_degrees(low), 4)
    dhigh = graded_dimensions(pbw_generator_degrees(high), 4)
    assert all(a <= b for a, b in zip(dlow, dhigh))
    assert dlow != dhigh


# ----- one-column shift reduction ------------------------------------------

def test_reduced_shift_matches_column_removal():
    p = SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)])
    model = WModel(p)
    removal = ColumnRemoval(model, (1, 1, 1), 3, "L")
    assert (reduced_shift(model.sigma, (1, 1, 1), "L").entries
            == removal.expected_dot_shift())
    mirror = WModel(p.mirror())
    removal_r = ColumnRemoval(mirror, (1, 1, 1), 3, "R")
    assert (reduced_shift(mirror.sigma, (1, 1, 1), "R").entries
            == removal_r.expected_dot_shift())


def test_reduced_shift_side_condition():
    p = SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)])
    with pytest.raises(ValueError):
        reduced_shift(p.to_shift_and_level().sigma, (1, 1, 1), "R")


def test_tensor_expression_round_trip():
    e = make_symbol("E", 1, 2, 1, 1, 1)
    t = (TensorExpression.of(YangianExpression.symbol(e), ((1, 1),))
         - TensorExpression.of(YangianExpression.scalar(2)))
    data = t.serialize()
    assert isinstance(data, list) and len(data) == 2
    assert not (t - t).serialize()
