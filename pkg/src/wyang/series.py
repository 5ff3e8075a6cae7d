"""Truncated power series in u^{-1} with enveloping-algebra coefficients,
and block Gauss (LDU) factorization of matrices of such series.

A series is stored as coefficients of u^0, u^{-1}, ..., u^{-R}; all
arithmetic silently truncates at order R.  Matrix factorization follows the
Schur-complement recursion, keeping left/right factors in the order required
by noncommutative coefficients.
"""

from fractions import Fraction


class TruncatedSeries:
    """sum_{r=0}^{R} c_r u^{-r} with c_r in a fixed enveloping algebra."""

    __slots__ = ("alg", "order", "coeffs")

    def __init__(self, alg, coeffs, order):
        self.alg = alg
        self.order = order
        cs = list(coeffs[:order + 1])
        while len(cs) < order + 1:
            cs.append(alg.zero())
        self.coeffs = cs

    @staticmethod
    def zero(alg, order):
        return TruncatedSeries(alg, [], order)

    @staticmethod
    def one(alg, order):
        return TruncatedSeries(alg, [alg.one()], order)

    @staticmethod
    def constant(alg, x, order):
        return TruncatedSeries(alg, [x], order)

    def __getitem__(self, r):
        if 0 <= r <= self.order:
            return self.coeffs[r]
        return self.alg.zero()

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries)
                and self.order == other.order
                and all(a == b for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(
            self.alg, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries(
            self.alg, [a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __neg__(self):
        return TruncatedSeries(self.alg, [-c for c in self.coeffs], self.order)

    def _check(self, other):
        if other.alg is not self.alg or other.order != self.order:
            raise ValueError("series mismatch")

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._check(other)
            out = [self.alg.zero() for _ in range(self.order + 1)]
            for r, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for s in range(self.order + 1 - r):
                    b = other.coeffs[s]
                    if not b.is_zero():
                        out[r + s] = out[r + s] + a * b
            return TruncatedSeries(self.alg, out, self.order)
        return TruncatedSeries(self.alg, [c * other for c in self.coeffs], self.order)

    def __rmul__(self, other):
        # scalar on the left
        return self * other

    def inverse(self):
        """Inverse of a series whose constant term is a nonzero scalar."""
        c0 = self.coeffs[0]
        const = c0.constant_term()
        if c0.is_zero() or c0 != self.alg.scalar(const):
            raise ValueError("constant term is not a nonzero scalar")
        inv0 = int(const) if const in (1, -1) else Fraction(1) / const
        # self = c0 (1 - X) with X of strictly positive order
        x = TruncatedSeries(
            self.alg,
            [self.alg.zero()] + [-(c * inv0) for c in self.coeffs[1:]],
            self.order)
        acc = TruncatedSeries.one(self.alg, self.order)
        power = TruncatedSeries.one(self.alg, self.order)
        for _ in range(self.order):
            power = power * x
            if power.is_zero():
                break
            acc = acc + power
        return acc * inv0

    def __repr__(self):
        bits = ["(%r)u^-%d" % (c, r) for r, c in enumerate(self.coeffs)
                if not c.is_zero()]
        return " + ".join(bits) if bits else "0"


class SeriesMatrix:
    """Dense matrix of TruncatedSeries, all sharing one algebra and order.

    When row/column parities are attached, the matrix is regarded as living
    in A tensor Mat with Mat a matrix superalgebra: the product picks up the
    Koszul sign (-1)^{|b_{kj}|(par_i + par_k)} when the matrix unit E_{ik}
    moves past the entry b_{kj}, whose parity is par_k + par_j.
    """

    def __init__(self, entries, row_par=None, col_par=None):
        self.entries = [list(row) for row in entries]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        first = self.entries[0][0]
        self.alg = first.alg
        self.order = first.order
        self.row_par = tuple(row_par) if row_par is not None else (0,) * self.nrows
        self.col_par = tuple(col_par) if col_par is not None else (0,) * self.ncols

    @staticmethod
    def identity(alg, n, order, par=None):
        return SeriesMatrix([
            [TruncatedSeries.one(alg, order) if i == j
             else TruncatedSeries.zero(alg, order) for j in range(n)]
            for i in range(n)], row_par=par, col_par=par)

    @staticmethod
    def zeros(alg, nrows, ncols, order, row_par=None, col_par=None):
        return SeriesMatrix([
            [TruncatedSeries.zero(alg, order) for _ in range(ncols)]
            for _ in range(nrows)], row_par=row_par, col_par=col_par)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __eq__(self, other):
        return (isinstance(other, SeriesMatrix)
                and self.nrows == other.nrows and self.ncols == other.ncols
                and all(a == b for ra, rb in zip(self.entries, other.entries)
                        for a, b in zip(ra, rb)))

    def __add__(self, other):
        return SeriesMatrix([[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.entries, other.entries)],
                            row_par=self.row_par, col_par=self.col_par)

    def __sub__(self, other):
        return SeriesMatrix([[a - b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.entries, other.entries)],
                            row_par=self.row_par, col_par=self.col_par)

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("matrix shape mismatch")
        if self.col_par != other.row_par:
            raise ValueError("parity structure mismatch")
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = TruncatedSeries.zero(self.alg, self.order)
                for k in range(self.ncols):
                    b_par = (other.row_par[k] + other.col_par[j]) % 2
                    sign = -1 if (b_par and (self.row_par[i] + self.col_par[k]) % 2) else 1
                    term = self.entries[i][k] * other.entries[k][j]
                    acc = acc + (term if sign > 0 else -term)
                row.append(acc)
            out.append(row)
        return SeriesMatrix(out, row_par=self.row_par, col_par=other.col_par)

    def inverse(self):
        """Inverse of a square matrix whose constant term is the identity."""
        if self.nrows != self.ncols:
            raise ValueError("not square")
        n = self.nrows
        ident = SeriesMatrix.identity(self.alg, n, self.order, par=self.row_par)
        for i in range(n):
            for j in range(n):
                c0 = self.entries[i][j].coeffs[0]
                expect = self.alg.one() if i == j else self.alg.zero()
                if c0 != expect:
                    raise ValueError("constant term is not the identity matrix")
        nil = ident - self
        acc = ident
        power = ident
        for _ in range(self.order):
            power = power * nil
            if all(e.is_zero() for row in power.entries for e in row):
                break
            acc = acc + power
        return acc

    def submatrix(self, rows, cols):
        return SeriesMatrix([[self.entries[i][j] for j in cols] for i in rows],
                            row_par=[self.row_par[i] for i in rows],
                            col_par=[self.col_par[j] for j in cols])


def block_ranges(mu):
    """Index ranges of the diagonal blocks for a composition mu."""
    out = []
    start = 0
    for m in mu:
        out.append(range(start, start + m))
        start += m
    return out


def gauss_decompose(T, mu):
    """Block LDU factorization T = F * D * E for block shape mu.

    Returns (F, D, E, Dinv): D and Dinv are lists of the diagonal blocks of
    D(u) and their inverses; E maps (a, b) with a < b to the (a, b) block of
    E(u); F maps (a, b) with a > b to the (a, b) block of F(u).  The constant
    term of T must be the identity.
    """
    ranges = block_ranges(mu)
    m1 = len(mu)
    # working copy of the Schur complement, as block grid
    S = [[T.submatrix(ranges[a], ranges[b]) for b in range(m1)] for a in range(m1)]
    D, Dinv, E, F = [], [], {}, {}
    for k in range(m1):
        Dk = S[k][k]
        Dk_inv = Dk.inverse()
        D.append(Dk)
        Dinv.append(Dk_inv)
        for b in range(k + 1, m1):
            E[(k, b)] = Dk_inv * S[k][b]
        for a in range(k + 1, m1):
            F[(a, k)] = S[a][k] * Dk_inv
        for a in range(k + 1, m1):
            for b in range(k + 1, m1):
                S[a][b] = S[a][b] - S[a][k] * (Dk_inv * S[k][b])
    return F, D, E, Dinv


def assemble(F, D, E, mu, alg, order, par=None):
    """Rebuild the full matrix from a block LDU factorization (for testing)."""
    ranges = block_ranges(mu)
    n = sum(mu)
    m1 = len(mu)

    def full(blocks):
        out = SeriesMatrix.identity(alg, n, order, par=par)
        for (a, b), blk in blocks.items():
            rs, cs = ranges[a], ranges[b]
            for i, ri in enumerate(rs):
                for j, cj in enumerate(cs):
                    out.entries[ri][cj] = blk.entries[i][j]
        return out

    Dfull = SeriesMatrix.zeros(alg, n, n, order, row_par=par, col_par=par)
    for a in range(m1):
        for i, ri in enumerate(ranges[a]):
            for j, cj in enumerate(ranges[a]):
                Dfull.entries[ri][cj] = D[a].entries[i][j]
    return full(F) * Dfull * full(E)
