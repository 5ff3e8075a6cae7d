"""Tests for signed pyramids, the shift-matrix dictionary, and the geometry
feeding the invariant construction."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wyang import (SignedPyramid, ShiftMatrix, TruncationSpec, PyramidError,
                   canonical_json)


def sample_pyramid():
    """The 9-box gl(2|7) pyramid used as the running worked example."""
    return SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)])


def test_box_numbering_down_columns():
    p = sample_pyramid()
    assert (p.M, p.N) == (2, 7)
    # barred boxes occupy columns 2,3 of row 1
    assert p.box_at(1, 2) == 0 and p.box_at(1, 3) == 1
    # unbarred numbering runs down columns, left to right
    assert p.box_at(3, 1) == 2
    assert p.box_at(2, 2) == 3 and p.box_at(3, 2) == 4
    assert p.box_at(2, 3) == 5 and p.box_at(3, 3) == 6
    assert p.box_at(2, 4) == 7 and p.box_at(3, 4) == 8
    with pytest.raises(PyramidError):
        p.box_at(1, 1)


def test_grading_element_values():
    p = sample_pyramid()
    assert p.build_h() == (1, -1, 3, 1, 1, -1, -1, -3, -3)


def test_nilpotent_is_sum_of_row_adjacencies():
    p = sample_pyramid()
    alg = p.algebra()
    expected = (alg.gen(0, 1)                       # row 1: b1 -> b2
                + alg.gen(3, 5) + alg.gen(5, 7)     # row 2: 2 -> 4 -> 6
                + alg.gen(2, 4) + alg.gen(4, 6) + alg.gen(6, 8))  # row 3
    assert p.build_e() == expected
    assert p.build_e().kazhdan_degree() == 2


def test_shift_matrix_extraction():
    p = sample_pyramid()
    spec = p.to_shift_and_level()
    assert spec.sigma.entries == ((0, 1, 1), (0, 0, 0), (1, 1, 0))
    assert spec.level == 4
    assert spec.p == (2, 3, 4)


def test_shift_matrix_extraction_four_rows():
    p = SignedPyramid([("+", 2, 2), ("-", 3, 2), ("-", 4, 1), ("-", 6, 0)])
    spec = p.to_shift_and_level()
    assert spec.sigma.entries == ((0, 1, 1, 2), (0, 0, 0, 1),
                                  (1, 1, 0, 1), (2, 2, 1, 0))
    assert spec.level == 6


def test_rho_and_super_height():
    p = sample_pyramid()
    rho, h = p.rho()
    assert h == -1
    assert rho == (4, 3, 2, 1)


def test_shift_matrix_validation():
    with pytest.raises(PyramidError):
        ShiftMatrix([[0, 1], [0, 1]])       # nonzero diagonal
    with pytest.raises(PyramidError):
        ShiftMatrix([[0, 1, 3], [0, 0, 1], [1, 1, 0]])  # additivity fails
    with pytest.raises(PyramidError):
        ShiftMatrix([[0, -1], [0, 0]])


def test_pyramid_validation():
    with pytest.raises(PyramidError):
        SignedPyramid([])
    with pytest.raises(PyramidError):
        SignedPyramid([("+", 3, 0), ("-", 2, 0)])   # top wider than bottom
    with pytest.raises(PyramidError):
        SignedPyramid([("+", 1, 3), ("-", 3, 0)])   # top sticks out right
    with pytest.raises(PyramidError):
        SignedPyramid([("*", 2, 0), ("-", 2, 0)])
    with pytest.raises(PyramidError):
        SignedPyramid([("+", 0, 0)])


def test_level_too_small_rejected():
    sigma = ShiftMatrix([[0, 1, 1], [0, 0, 0], [1, 1, 0]])
    with pytest.raises(PyramidError):
        TruncationSpec(sigma, 1)
    # level 2 gives p_1 = 0: a legal spec but not drawable as a pyramid
    spec = TruncationSpec(sigma, 2)
    assert spec.p[0] == 0
    with pytest.raises(PyramidError):
        SignedPyramid.from_shift_and_level(spec)


def shift_matrix_strategy(n1):
    ent = st.integers(min_value=0, max_value=2)
    return st.tuples(st.tuples(*[ent] * (n1 - 1)), st.tuples(*[ent] * (n1 - 1)))


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


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=4).flatmap(shift_matrix_strategy),
       st.integers(min_value=1, max_value=3))
def test_shift_level_round_trip(diags, extra):
    sigma = build_shift(*diags)
    n1 = sigma.size
    level = sigma[1, n1] + sigma[n1, 1] + extra
    spec = TruncationSpec(sigma, level)
    p = SignedPyramid.from_shift_and_level(spec)
    back = p.to_shift_and_level()
    assert back.sigma == sigma and back.level == level
    assert SignedPyramid.from_shift_and_level(back) == p


def test_json_round_trip_is_canonical():
    p = sample_pyramid()
    blob = canonical_json(p.to_dict())
    assert SignedPyramid.from_dict(json.loads(blob)) == p
    assert canonical_json(SignedPyramid.from_dict(json.loads(blob)).to_dict()) == blob
    spec = p.to_shift_and_level()
    blob2 = canonical_json(spec.to_dict())
    assert TruncationSpec.from_dict(json.loads(blob2)) == spec


def test_mirror_transposes_shift_matrix():
    p = SignedPyramid([("+", 2, 2), ("-", 3, 2), ("-", 4, 1), ("-", 6, 0)])
    m = p.mirror()
    assert m.to_shift_and_level().sigma == p.to_shift_and_level().sigma.transpose()
    assert m.mirror() == p


def test_good_grading_axioms_hold():
    for rows in ([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)],
                 [("+", 1, 0), ("-", 1, 0)],
                 [("+", 2, 2), ("-", 3, 2), ("-", 4, 1), ("-", 6, 0)]):
        report = SignedPyramid(rows).check_good_grading()
        assert report["passed"], report


def test_good_grading_detects_bad_h():
    p = SignedPyramid([("+", 1, 0), ("-", 2, 0)])
    h = list(p.build_h())
    h[0] += 2
    report = p.check_good_grading(h_override=h)
    assert not report["passed"]


def test_twisted_generator_bracket_identity():
    """The commutator of twisted generators in the worked example, all pairs."""
    p = sample_pyramid()
    alg = p.algebra()
    rho = p.rho_vector()
    dim = alg.dim
    til = [[p.tilde_e(i, j) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for h in range(dim):
                for k in range(dim):
                    lhs = til[i][j].bracket(til[h][k])
                    rhs = alg.zero()
                    if h == j:
                        rhs = rhs + til[i][k] - alg.scalar(
                            (i == k) * (-1) ** alg.index_parity(i)
                            * rho[p.box_col[i] - 1])
                    if i == k:
                        sgn = -1 if (alg.gen_parity((i, j)) and alg.gen_parity((h, k))) else 1
                        rhs = rhs - (til[h][j] - alg.scalar(
                            (h == j) * (-1) ** alg.index_parity(j)
                            * rho[p.box_col[j] - 1])) * sgn
                    assert lhs == rhs, (i, j, h, k)


def test_character_values():
    p = sample_pyramid()
    alg = p.algebra()
    hits = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            if p.box_col[i] > p.box_col[j]:
                v = p.chi_tilde(i, j)
                if v:
                    hits.append((i, j, v))
                    assert (p.box_row[i] == p.box_row[j]
                            and p.box_col[i] == p.box_col[j] + 1)
                    assert v == (-1) ** (alg.index_parity(i) + 1)
                    assert p.chi_plain(i, j) == -v
    # one hit per horizontal adjacency read right-to-left
    assert len(hits) == 6


def test_centralizer_basis_matches_kernel():
    for rows in ([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)],
                 [("+", 1, 1), ("-", 2, 1), ("-", 3, 0)],
                 [("+", 2, 0), ("-", 2, 0)]):
        p = SignedPyramid(rows)
        e = p.build_e()
        basis = p.centralizer_basis()
        for elem, i, j, r in basis:
            assert e.bracket(elem).is_zero(), (i, j, r)
            assert elem.kazhdan_degree() == r
            expect_parity = 1 if (i == 1) != (j == 1) else 0
            assert elem.parity() == expect_parity
        assert len(basis) == p.centralizer_nullity()


def test_centralizer_count_on_sample():
    assert len(sample_pyramid().centralizer_basis()) == 23
