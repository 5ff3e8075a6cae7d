"""Tests for truncated series arithmetic and block LDU factorization."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wyang import (SignedPyramid, SuperAlgebra, TruncatedSeries, SeriesMatrix,
                   WModel, gauss_decompose)
from wyang.series import assemble, block_ranges


def small_alg():
    return SuperAlgebra(1, 2)


def series_from_coeffs(alg, scalars, order):
    return TruncatedSeries(alg, [alg.scalar(c) for c in scalars], order)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3), min_size=1, max_size=6),
       st.fractions(min_value=-3, max_value=3).filter(lambda c: c != 0))
def test_scalar_series_inverse(tail, lead):
    alg = small_alg()
    s = series_from_coeffs(alg, [lead] + tail, 6)
    prod = s * s.inverse()
    assert prod == TruncatedSeries.one(alg, 6)
    assert s.inverse() * s == TruncatedSeries.one(alg, 6)


def test_inverse_with_noncommuting_coefficients():
    alg = small_alg()
    order = 5
    x, y = alg.gen(0, 1), alg.gen(1, 2)
    s = TruncatedSeries(alg, [alg.one(), x, y, x * y], order)
    one = TruncatedSeries.one(alg, order)
    assert s * s.inverse() == one
    assert s.inverse() * s == one


def test_inverse_needs_scalar_constant_term():
    alg = small_alg()
    bad = TruncatedSeries(alg, [alg.gen(0, 0)], 3)
    with pytest.raises(ValueError):
        bad.inverse()
    with pytest.raises(ValueError):
        TruncatedSeries.zero(alg, 3).inverse()


def test_series_product_truncates():
    alg = small_alg()
    u = series_from_coeffs(alg, [0, 1], 3)  # u^{-1}
    p = u * u * u * u
    assert p.is_zero()  # order 4 term falls off the end
    assert (u * u * u)[3] == alg.one()


def test_matrix_inverse_round_trip():
    alg = small_alg()
    order = 4
    one = TruncatedSeries.one(alg, order)
    zero = TruncatedSeries.zero(alg, order)
    x = TruncatedSeries(alg, [alg.zero(), alg.gen(0, 1)], order)
    y = TruncatedSeries(alg, [alg.zero(), alg.gen(1, 2), alg.gen(2, 1)], order)
    par = (0, 1, 1)
    m = SeriesMatrix([[one, x, y], [zero, one, x], [y, zero, one]],
                     row_par=par, col_par=par)
    ident = SeriesMatrix.identity(alg, 3, order, par=par)
    assert m * m.inverse() == ident
    assert m.inverse() * m == ident


def test_matrix_product_associativity_with_parities():
    alg = small_alg()
    order = 3
    par = (0, 1, 1)
    gens = [alg.gen(0, 1), alg.gen(1, 0), alg.gen(1, 2), alg.gen(2, 2)]

    def mat(shift):
        return SeriesMatrix([
            [TruncatedSeries(alg, [alg.one() if i == j else alg.zero(),
                                   gens[(i + j + shift) % 4]], order)
             for j in range(3)] for i in range(3)],
            row_par=par, col_par=par)

    a, b, c = mat(0), mat(1), mat(2)
    assert (a * b) * c == a * (b * c)


def test_block_ranges():
    assert [list(r) for r in block_ranges((1, 2, 1))] == [[0], [1, 2], [3]]


def test_gauss_factorization_reassembles():
    """F * D * E multiplies back to the sign-twisted invariant matrix."""
    p = SignedPyramid([("+", 2, 1), ("-", 3, 1), ("-", 4, 0)])
    model = WModel(p)
    order = 4
    T = model.T_matrix(order)
    for mu in ((1, 1, 1), (1, 2)):
        F, D, E, Dinv = gauss_decompose(T, mu)
        back = assemble(F, D, E, mu, model.alg, order,
                        par=T.row_par)
        assert back == T
        for a, (blk, inv) in enumerate(zip(D, Dinv)):
            n = blk.nrows
            ident = SeriesMatrix.identity(
                model.alg, n, order,
                par=[T.row_par[i] for i in block_ranges(mu)[a]])
            assert blk * inv == ident
