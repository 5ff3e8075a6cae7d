"""The invariant side: the finite W-superalgebra inside U(p).

A WModel wraps one signed pyramid and provides the projection pr_chi, the
chi-twisted action of m, the master invariants T^{(r)}_{i,j;signs}, their
generating series, and the parabolic generator families obtained both from
closed summation formulas and from block Gauss decomposition of the twisted
T-matrix.  Everything is exact.
"""

from fractions import Fraction

from .algebra import SuperAlgebra, EnvelopingElement
from .pyramid import SignedPyramid, PyramidError
from .series import TruncatedSeries, SeriesMatrix, gauss_decompose

_ZERO = Fraction(0)


def pa(i):
    """Row parity for the (1|n) index set: the top row is even."""
    return 0 if i == 1 else 1


def eps_twist(i, j):
    """The sign (-1)^{pa(j)(pa(i)+1)} twisting the T-matrix entries."""
    return -1 if (i == 1 and j >= 2) else 1


class WModel:
    """Invariant machinery for one pyramid in main-theorem mode."""

    def __init__(self, pyramid):
        pyramid.require_main_mode()
        self.pyramid = pyramid
        self.alg = pyramid.algebra()
        self.spec = pyramid.to_shift_and_level()
        self.sigma = self.spec.sigma
        self.n1 = pyramid.n_rows
        self.ell = pyramid.ell
        self.rho = pyramid.rho_vector()
        self._tilde = {}
        self._chains = {}
        self._boxes_by_row = {}
        for idx in range(self.alg.dim):
            self._boxes_by_row.setdefault(pyramid.box_row[idx], []).append(idx)
        self._parabolic = {}
        self._T_matrix = {}

    def tilde(self, i, j):
        key = (i, j)
        if key not in self._tilde:
            self._tilde[key] = self.pyramid.tilde_e(i, j)
        return self._tilde[key]

    # ----- projection along the chi-shifted left ideal ---------------------

    def m_generator_pairs(self):
        py = self.pyramid
        return [(i, j) for i in range(self.alg.dim) for j in range(self.alg.dim)
                if py.box_col[i] > py.box_col[j]]

    def pr_chi(self, x):
        """Projection U(g) -> U(p): substitute chi-values for the m-tail of
        each normal monomial."""
        alg = self.alg
        py = self.pyramid
        out = {}
        for mono, c in x.terms.items():
            coeff = c
            head = []
            for g, e in mono:
                if alg.in_m(g):
                    v = py.chi_plain(*g)
                    if not v:
                        coeff = _ZERO
                        break
                    coeff *= v ** e
                else:
                    head.append((g, e))
            if coeff:
                key = tuple(head)
                v = out.get(key, _ZERO) + coeff
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return EnvelopingElement(alg, out)

    def in_p(self, x):
        return all(not self.alg.in_m(g) for mono in x.terms for g, _ in mono)

    def twisted_action(self, a, y):
        """pr_chi([a, y]) for a supported on m-generators and y in U(p)."""
        for mono in a.terms:
            for g, _ in mono:
                if not self.alg.in_m(g):
                    raise ValueError("twisting element is not in m")
        return self.pr_chi(a.bracket(y))

    def is_m_invariant(self, y):
        if not self.in_p(y):
            raise ValueError("element is not in U(p)")
        for i, j in self.m_generator_pairs():
            if not self.twisted_action(self.alg.gen(i, j), y).is_zero():
                return False
        return True

    # ----- master invariants ----------------------------------------------

    def level_signs(self, x):
        """The sign vector with - on rows 1..x and + below."""
        if not (0 <= x <= self.n1):
            raise ValueError("sign level out of range")
        return tuple(-1 if k <= x else 1 for k in range(1, self.n1 + 1))

    def _factor_chains(self, cur_row, rem, bound, signs):
        """Sum over admissible factor chains starting in cur_row with total
        degree rem; returns a map end_row -> element.  bound constrains the
        first factor's starting column: ('>', c) after a + row, ('<=', c)
        after a - row."""
        key = (cur_row, rem, bound, signs)
        cached = self._chains.get(key)
        if cached is not None:
            return cached
        alg = self.alg
        py = self.pyramid
        out = {}
        for i1 in self._boxes_by_row[cur_row]:
            c_i = py.box_col[i1]
            if bound is not None:
                if bound[0] == ">" and not (c_i > bound[1]):
                    continue
                if bound[0] == "<=" and not (c_i <= bound[1]):
                    continue
            for j1 in range(alg.dim):
                c_j = py.box_col[j1]
                deg = c_j - c_i + 1
                if c_j < c_i or deg > rem:
                    continue
                base = self.tilde(i1, j1) * ((-1) ** alg.index_parity(i1))
                end = py.box_row[j1]
                if deg == rem:
                    out[end] = out.get(end, alg.zero()) + base
                else:
                    sgn = signs[end - 1]
                    nbound = (">", c_j) if sgn > 0 else ("<=", c_j)
                    sub = self._factor_chains(end, rem - deg, nbound, signs)
                    for er, el in sub.items():
                        out[er] = out.get(er, alg.zero()) + base * el * sgn
        out = {k: v for k, v in out.items() if not v.is_zero()}
        self._chains[key] = out
        return out

    def T_invariant(self, i, j, signs, r):
        """T^{(r)}_{i,j;signs}: the degree-r master invariant in U(p)."""
        if isinstance(signs, int):
            signs = self.level_signs(signs)
        signs = tuple(1 if s > 0 else -1 for s in signs)
        if len(signs) != self.n1:
            raise ValueError("need one sign per row")
        if not (1 <= i <= self.n1 and 1 <= j <= self.n1):
            raise ValueError("row index out of range")
        if r < 0:
            raise ValueError("negative degree")
        if r == 0:
            return self.alg.scalar(signs[i - 1]) if i == j else self.alg.zero()
        out = self._factor_chains(i, r, None, signs).get(j, self.alg.zero())
        assert out.kazhdan_degree() <= r
        assert self.in_p(out)
        return out

    def t_series(self, i, j, x, R):
        coeffs = [self.T_invariant(i, j, x, r) for r in range(R + 1)]
        return TruncatedSeries(self.alg, coeffs, R)

    def T_matrix(self, R):
        """The (n+1) x (n+1) sign-twisted matrix of T_{i,j;0} series."""
        if R not in self._T_matrix:
            par = [pa(i) for i in range(1, self.n1 + 1)]
            self._T_matrix[R] = SeriesMatrix([
                [self.t_series(i, j, 0, R) * eps_twist(i, j)
                 for j in range(1, self.n1 + 1)]
                for i in range(1, self.n1 + 1)], row_par=par, col_par=par)
        return self._T_matrix[R]

    def parabolic(self, mu, R):
        key = (tuple(mu), R)
        if key not in self._parabolic:
            self._parabolic[key] = ParabolicFamily(self, mu, R)
        return self._parabolic[key]


class ParabolicFamily:
    """The named generator families D/D'/E/F for one admissible shape,
    with both the closed-formula route and the Gauss route."""

    def __init__(self, model, mu, R):
        self.model = model
        self.mu = tuple(int(x) for x in mu)
        self.R = R
        if not model.sigma.is_admissible(self.mu):
            raise ValueError("shape %r is not admissible for this pyramid" % (mu,))
        self.m1 = len(self.mu)
        self._gauss = None
        self._cache = {}

    def mu_before(self, a):
        return sum(self.mu[:a - 1])

    def mu_through(self, a):
        return sum(self.mu[:a])

    def s_mu(self, a, b):
        return self.model.sigma[self.mu_through(a), self.mu_through(b)]

    def p_mu(self, a):
        return self.model.spec.p[self.mu_through(a) - 1]

    def window_start(self, family, a):
        """Smallest degree of a generator of the given family at block a."""
        if family == "D":
            return 0
        if family == "E":
            return self.s_mu(a, a + 1) + 1
        if family == "F":
            return self.s_mu(a + 1, a) + 1
        raise ValueError("unknown family %r" % family)

    def is_odd(self, family, a):
        return family in ("E", "F") and a == 1

    # ----- closed formulas --------------------------------------------------

    def D(self, a, i, j, r):
        return self._get(("D", a, i, j, r), lambda: self.model.T_invariant(
            self.mu_before(a) + i, self.mu_before(a) + j, self.mu_before(a), r))

    def Dprime(self, a, i, j, r):
        return self._get(("Dp", a, i, j, r), lambda: -self.model.T_invariant(
            self.mu_before(a) + i, self.mu_before(a) + j, self.mu_through(a), r))

    def E(self, a, i, j, r):
        return self._get(("E", a, i, j, r), lambda: self.model.T_invariant(
            self.mu_before(a) + i, self.mu_through(a) + j, self.mu_through(a), r))

    def F(self, a, i, j, r):
        return self._get(("F", a, i, j, r), lambda: self.model.T_invariant(
            self.mu_through(a) + i, self.mu_before(a) + j, self.mu_through(a), r))

    def _get(self, key, thunk):
        if key not in self._cache:
            self._cache[key] = thunk()
        return self._cache[key]

    # ----- composites -------------------------------------------------------

    def E_composite(self, a, b, i, j, r, pivot=1):
        if not (1 <= a < b <= self.m1):
            raise ValueError("bad block pair")
        if b == a + 1:
            return self.E(a, i, j, r)
        # the recursion steps through block b-1 with the upper boundary
        # shift in both factors, keeping every factor inside its window
        s_up = self.model.sigma[self.mu_through(b - 1), self.mu_through(b)]
        left = self.E_composite(a, b - 1, i, pivot, r - s_up)
        right = self.E(b - 1, pivot, j, s_up + 1)
        return -left.bracket(right)

    def F_composite(self, b, a, i, j, r, pivot=1):
        if not (1 <= a < b <= self.m1):
            raise ValueError("bad block pair")
        if b == a + 1:
            return self.F(a, i, j, r)
        s_down = self.model.sigma[self.mu_through(b), self.mu_through(b - 1)]
        left = self.F(b - 1, i, pivot, s_down + 1)
        right = self.F_composite(b - 1, a, pivot, j, r - s_down)
        return -left.bracket(right)

    # ----- Gauss route ------------------------------------------------------

    def _ensure_gauss(self):
        if self._gauss is None:
            T = self.model.T_matrix(self.R)
            self._gauss = gauss_decompose(T, self.mu)
        return self._gauss

    def _unscrew(self, block, gi, gj, i, j, r):
        # strip the eps twist from a Gauss block entry
        return block.entries[i - 1][j - 1][r] * eps_twist(gi, gj)

    def gauss_D(self, a, i, j, r):
        _, Dblocks, _, _ = self._ensure_gauss()
        return self._unscrew(Dblocks[a - 1], self.mu_before(a) + i,
                             self.mu_before(a) + j, i, j, r)

    def gauss_Dprime(self, a, i, j, r):
        _, _, _, Dinv = self._ensure_gauss()
        return self._unscrew(Dinv[a - 1], self.mu_before(a) + i,
                             self.mu_before(a) + j, i, j, r)

    def gauss_E(self, a, i, j, r):
        _, _, Eblocks, _ = self._ensure_gauss()
        return self._unscrew(Eblocks[(a - 1, a)], self.mu_before(a) + i,
                             self.mu_through(a) + j, i, j, r)

    def gauss_F(self, a, i, j, r):
        Fblocks, _, _, _ = self._ensure_gauss()
        return self._unscrew(Fblocks[(a, a - 1)], self.mu_through(a) + i,
                             self.mu_before(a) + j, i, j, r)

    def check_gauss_agreement(self, r_max=None):
        """Compare closed formulas against the Gauss factorization; returns
        the list of disagreeing instances (empty = full agreement)."""
        r_max = self.R if r_max is None else min(r_max, self.R)
        bad = []
        for a in range(1, self.m1 + 1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(r_max + 1):
                        if self.D(a, i, j, r) != self.gauss_D(a, i, j, r):
                            bad.append(("D", a, i, j, r))
                        if self.Dprime(a, i, j, r) != self.gauss_Dprime(a, i, j, r):
                            bad.append(("D'", a, i, j, r))
        for a in range(1, self.m1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a] + 1):
                    for r in range(1, r_max + 1):
                        if self.E(a, i, j, r) != self.gauss_E(a, i, j, r):
                            bad.append(("E", a, i, j, r))
            for i in range(1, self.mu[a] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(1, r_max + 1):
                        if self.F(a, i, j, r) != self.gauss_F(a, i, j, r):
                            bad.append(("F", a, i, j, r))
        return bad


# ----- one-column reduction ----------------------------------------------


def gl_even(beta):
    """gl_beta as a purely even SuperAlgebra (no box geometry)."""
    return SuperAlgebra(beta, 0)


class TensorElement:
    """Element of U(p') (x) U(gl_beta) (or the reversed order).

    The gl_beta factor is purely even, so multiplication is componentwise
    with no extra signs; which side the even factor sits on only matters
    for display.  Stored as a map aux-monomial -> main-algebra element.
    """

    __slots__ = ("main", "aux", "terms")

    def __init__(self, main, aux, terms):
        self.main = main
        self.aux = aux
        self.terms = {m: x for m, x in terms.items() if not x.is_zero()}

    @staticmethod
    def zero(main, aux):
        return TensorElement(main, aux, {})

    @staticmethod
    def of(main_elem, aux_elem):
        out = {}
        for mono, c in aux_elem.terms.items():
            out[mono] = main_elem * c
        return TensorElement(main_elem.alg, aux_elem.alg, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and self.main is other.main and self.aux is other.aux
                and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for m, x in other.terms.items():
            v = out.get(m)
            out[m] = x if v is None else v + x
        return TensorElement(self.main, self.aux, out)

    def __neg__(self):
        return TensorElement(self.main, self.aux,
                             {m: -x for m, x in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return TensorElement(self.main, self.aux,
                                 {m: x * other for m, x in self.terms.items()})
        out = TensorElement.zero(self.main, self.aux)
        for m1, x1 in self.terms.items():
            a1 = EnvelopingElement(self.aux, {m1: Fraction(1)})
            for m2, x2 in other.terms.items():
                a2 = EnvelopingElement(self.aux, {m2: Fraction(1)})
                out = out + TensorElement.of(x1 * x2, a1 * a2)
        return out

    __rmul__ = __mul__

    def _parity_parts(self):
        ev, od = {}, {}
        for m, x in self.terms.items():
            e, o = x.even_part(), x.odd_part()
            if not e.is_zero():
                ev[m] = e
            if not o.is_zero():
                od[m] = o
        return (TensorElement(self.main, self.aux, ev),
                TensorElement(self.main, self.aux, od))

    def bracket(self, other):
        xe, xo = self._parity_parts()
        oe, oo = other._parity_parts()
        out = TensorElement.zero(self.main, self.aux)
        for x, px in ((xe, 0), (xo, 1)):
            if x.is_zero():
                continue
            for y, py in ((oe, 0), (oo, 1)):
                if y.is_zero():
                    continue
                sign = -1 if (px and py) else 1
                out = out + (x * y - (y * x) * sign)
        return out

    def counit_aux(self, diag):
        """Apply the counit with eps(e_{k,k}) = -diag, eps(e_{k,l}) = 0 for
        k != l, to the gl_beta factor and return the main-factor element."""
        out = self.main.zero()
        for mono, x in self.terms.items():
            val = Fraction(1)
            for (k, l), e in mono:
                if k != l:
                    val = Fraction(0)
                    break
                val *= Fraction(-diag) ** e
            if val:
                out = out + x * val
        return out


class ColumnRemoval:
    """Induction-step checker: removes the short outer column of a pyramid
    and relates the invariant generator families of the two pyramids.

    side "R" removes the rightmost column (needs sigma[m,m+1] != 0 at the
    block boundary); side "L" removes the leftmost one (transposed
    condition).  mu must be the minimal admissible shape.
    """

    def __init__(self, model, mu, R, side):
        self.model = model
        self.mu = tuple(int(x) for x in mu)
        self.R = R
        self.side = side
        py = model.pyramid
        sigma = model.sigma
        if self.mu != sigma.minimal_admissible_shape():
            raise ValueError("shape is not the minimal admissible one")
        self.m1 = len(self.mu)
        self.m = self.m1 - 1
        self.beta = self.mu[-1]
        n1 = model.n1
        self.n = n1 - 1
        boundary = n1 - self.beta
        if side == "R":
            if sigma[boundary, boundary + 1] == 0:
                raise ValueError("right removal undefined for this pyramid")
        elif side == "L":
            if sigma[boundary + 1, boundary] == 0:
                raise ValueError("left removal undefined for this pyramid")
        else:
            raise ValueError("side must be R or L")
        self.dot_pyramid = self._removed_pyramid()
        self.dot_model = WModel(self.dot_pyramid)
        self.family = model.parabolic(self.mu, R)
        self.dot_family = self.dot_model.parabolic(self.mu, R)
        self.aux = gl_even(self.beta)
        self.tilde_diag = self.n - 1 - self.beta
        self._index_map, self._rho_delta = self._build_embedding()
        self._check_embedding_consistency()
        self._psi_table = None

    # -- pyramid surgery ----------------------------------------------------

    def _removed_pyramid(self):
        py = self.model.pyramid
        ell = py.ell
        rows = []
        for sign, length, offset in py.rows:
            if self.side == "R":
                if offset + length == ell:
                    rows.append((sign, length - 1, offset))
                else:
                    rows.append((sign, length, offset))
            else:
                if offset == 0:
                    rows.append((sign, length - 1, 0))
                else:
                    rows.append((sign, length, offset - 1))
        return SignedPyramid(rows)

    def expected_dot_shift(self):
        """The one-column shift matrix predicted combinatorially."""
        sigma = self.model.sigma
        n1 = self.model.n1
        boundary = n1 - self.beta
        out = []
        for i in range(1, n1 + 1):
            row = []
            for j in range(1, n1 + 1):
                v = sigma[i, j]
                if self.side == "R" and i <= boundary < j:
                    v -= 1
                if self.side == "L" and j <= boundary < i:
                    v -= 1
                row.append(v)
            out.append(row)
        return tuple(tuple(r) for r in out)

    # -- embedding of the smaller enveloping algebra -------------------------

    def _build_embedding(self):
        py = self.model.pyramid
        dot = self.dot_pyramid
        rho = py.rho_vector()
        dot_rho = dot.rho_vector()
        index_map = {}
        if self.side == "R":
            for idx in range(self.dot_model.alg.dim):
                index_map[idx] = idx
            delta = {c: rho[c - 1] - dot_rho[c - 1]
                     for c in range(1, py.ell)}
        else:
            # boxes keep their geometric position; numbering shifts because
            # the first column holds the lowest-numbered unbarred boxes
            dM = dot.M
            for idx in range(self.dot_model.alg.dim):
                index_map[idx] = idx if idx < dM else idx + self.beta
            delta = {c + 1: rho[c] - dot_rho[c - 1]
                     for c in range(1, py.ell)}
        return index_map, delta

    def embed(self, x):
        """Embed a U(p') element into U(p), matching twisted generators."""
        alg = self.model.alg
        dot_py = self.dot_pyramid
        out = alg.zero()
        for mono, c in x.terms.items():
            acc = alg.scalar(c)
            for (i, j), e in mono:
                gi, gj = self._index_map[i], self._index_map[j]
                img = alg.gen(gi, gj)
                if i == j:
                    col = dot_py.box_col[i]
                    target_col = self.model.pyramid.box_col[gi]
                    shift = (self._rho_delta[target_col]
                             if self.side == "L" else self._rho_delta[col])
                    img = img + alg.scalar(
                        (-1) ** alg.index_parity(i) * shift)
                for _ in range(e):
                    acc = acc * img
            out = out + acc
        return out

    def _check_embedding_consistency(self):
        """The embedding must carry twisted generators to twisted
        generators with the same box indices (side R) or the
        column-shifted ones (side L)."""
        dot = self.dot_pyramid
        py = self.model.pyramid
        for i in range(self.dot_model.alg.dim):
            for j in range(self.dot_model.alg.dim):
                lhs = self.embed(self.dot_model.tilde(i, j))
                rhs = self.model.tilde(self._index_map[i], self._index_map[j])
                if lhs != rhs:
                    raise AssertionError(
                        "embedding mismatch at %r" % ((i, j),))

    # -- outer-column boxes --------------------------------------------------

    def _outer_box(self, k):
        """Box k (1-based) of the removed column, in the big pyramid."""
        py = self.model.pyramid
        row = self.model.n1 - self.beta + k
        col = py.ell if self.side == "R" else 1
        return py.box_at(row, col)

    def _inner_box(self, k):
        """Box k of the column adjacent to the removed one."""
        py = self.model.pyramid
        row = self.model.n1 - self.beta + k
        col = py.ell - 1 if self.side == "R" else 2
        return py.box_at(row, col)

    # -- the recursion check -------------------------------------------------

    def _correction(self, family, a, i, j, r, h):
        """The delta_{a,..} correction term of the one-column recursions."""
        model = self.model
        getter = (self.dot_family.D if family == "D" else
                  self.dot_family.E if self.side == "R" else self.dot_family.F)
        out = model.alg.zero()
        if self.side == "R":
            for k in range(1, self.beta + 1):
                dot = self.embed(getter(a, i, k, r - 1))
                out = out - dot * model.tilde(self._outer_box(k),
                                              self._outer_box(j))
            dot_h = self.embed(getter(a, i, h, r - 1))
            out = out + dot_h.bracket(
                model.tilde(self._inner_box(h), self._outer_box(j)))
        else:
            for k in range(1, self.beta + 1):
                dot = self.embed(getter(a, k, j, r - 1))
                out = out - model.tilde(self._outer_box(i),
                                        self._outer_box(k)) * dot
            dot_h = self.embed(getter(a, h, j, r - 1))
            out = out + model.tilde(self._outer_box(i),
                                    self._inner_box(h)).bracket(dot_h)
        return out

    def check_recursions(self, r_max=None):
        """Verify the one-column generator recursions; returns failures."""
        r_max = self.R if r_max is None else min(r_max, self.R)
        fam = self.family
        dot = self.dot_family
        bad = []
        # D family: correction only in the last diagonal block
        for a in range(1, self.m1 + 1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(1, r_max + 1):
                        lhs = fam.D(a, i, j, r)
                        rhs = self.embed(dot.D(a, i, j, r))
                        if a == self.m1:
                            for h in range(1, self.beta + 1):
                                got = rhs + self._correction("D", a, i, j, r, h)
                                if lhs != got:
                                    bad.append(("D", a, i, j, r, h))
                        elif lhs != rhs:
                            bad.append(("D", a, i, j, r, None))
        # one of E/F picks up the correction at block m, the other is flat
        corr_fam = "E" if self.side == "R" else "F"
        for a in range(1, self.m1):
            ew = fam.window_start("E", a)
            fw = fam.window_start("F", a)
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a] + 1):
                    for r in range(ew, r_max + 1):
                        lhs = fam.E(a, i, j, r)
                        if corr_fam == "E" and a == self.m:
                            rhs0 = self.embed(dot.E(a, i, j, r))
                            for h in range(1, self.beta + 1):
                                got = rhs0 + self._correction("E", a, i, j, r, h)
                                if lhs != got:
                                    bad.append(("E", a, i, j, r, h))
                        else:
                            if lhs != self.embed(dot.E(a, i, j, r)):
                                bad.append(("E", a, i, j, r, None))
            for i in range(1, self.mu[a] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(fw, r_max + 1):
                        lhs = fam.F(a, i, j, r)
                        if corr_fam == "F" and a == self.m:
                            rhs0 = self.embed(dot.F(a, i, j, r))
                            for h in range(1, self.beta + 1):
                                got = rhs0 + self._correction("F", a, i, j, r, h)
                                if lhs != got:
                                    bad.append(("F", a, i, j, r, h))
                        else:
                            if lhs != self.embed(dot.F(a, i, j, r)):
                                bad.append(("F", a, i, j, r, None))
        return bad

    # -- the splitting homomorphism psi --------------------------------------

    def aux_tilde(self, k, j):
        """Shifted matrix unit of the gl_beta factor, 1-based indices."""
        out = self.aux.gen(k - 1, j - 1)
        if k == j:
            out = out + self.aux.scalar(self.tilde_diag)
        return out

    def _psi_gen(self, i, j):
        """psi on the twisted generator with box indices (i, j) in p."""
        py = self.model.pyramid
        ci, cj = py.box_col[i], py.box_col[j]
        main, aux = self.dot_model.alg, self.aux
        if self.side == "R":
            outer = py.ell
            if cj < outer:
                return TensorElement.of(self.dot_model.tilde(i, j), aux.one())
            if ci < outer:
                return TensorElement.zero(main, aux)
            base = self.model.alg.dim - self.beta
            return TensorElement.of(main.one(),
                                    self.aux_tilde(i - base + 1, j - base + 1))
        if ci == 1 and cj == 1:
            base = py.M
            return TensorElement.of(main.one(),
                                    self.aux_tilde(i - base + 1, j - base + 1))
        if ci == 1:
            return TensorElement.zero(main, aux)
        back = {v: k for k, v in self._index_map.items()}
        return TensorElement.of(self.dot_model.tilde(back[i], back[j]),
                                aux.one())

    def psi(self, x):
        """The multiplicative splitting map on U(p), element by element."""
        if self._psi_table is None:
            self._psi_table = {}
        alg = self.model.alg
        py = self.model.pyramid
        out = TensorElement.zero(self.dot_model.alg, self.aux)
        one = TensorElement.of(self.dot_model.alg.one(), self.aux.one())
        for mono, c in x.terms.items():
            acc = one * Fraction(c)
            for g, e in mono:
                img = self._psi_table.get(g)
                if img is None:
                    if alg.in_m(g):
                        raise ValueError("psi is only defined on U(p)")
                    i, j = g
                    coldiff = py.box_col[j] - py.box_col[i]
                    img = self._psi_gen(i, j) * Fraction((-1) ** coldiff)
                    if i == j:
                        rho = py.rho_vector()[py.box_col[i] - 1]
                        img = img - one * Fraction(
                            (-1) ** alg.index_parity(i) * rho)
                    self._psi_table[g] = img
                for _ in range(e):
                    acc = acc * img
            out = out + acc
        return out

    def _expected_tensor(self, family, a, i, j, r):
        """The displayed psi-image of a named generator."""
        dot = self.dot_family
        getter = {"D": dot.D, "E": dot.E, "F": dot.F}[family]
        flat = TensorElement.of(getter(a, i, j, r), self.aux.one())
        corr_block = {"D": self.m1, "E": self.m, "F": self.m}[family]
        corr_here = (family == "D" or
                     family == ("E" if self.side == "R" else "F"))
        if not corr_here or a != corr_block:
            return flat
        out = flat
        for k in range(1, self.beta + 1):
            if self.side == "R":
                out = out - TensorElement.of(getter(a, i, k, r - 1),
                                             self.aux_tilde(k, j))
            else:
                out = out - TensorElement.of(getter(a, k, j, r - 1),
                                             self.aux_tilde(i, k))
        return out

    def check_psi(self, r_max=None):
        """psi on every named generator equals the displayed tensor form."""
        r_max = self.R if r_max is None else min(r_max, self.R)
        fam = self.family
        bad = []
        for a in range(1, self.m1 + 1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(1, r_max + 1):
                        if self.psi(fam.D(a, i, j, r)) != self._expected_tensor(
                                "D", a, i, j, r):
                            bad.append(("D", a, i, j, r))
        for a in range(1, self.m1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a] + 1):
                    for r in range(fam.window_start("E", a), r_max + 1):
                        if self.psi(fam.E(a, i, j, r)) != self._expected_tensor(
                                "E", a, i, j, r):
                            bad.append(("E", a, i, j, r))
            for i in range(1, self.mu[a] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(fam.window_start("F", a), r_max + 1):
                        if self.psi(fam.F(a, i, j, r)) != self._expected_tensor(
                                "F", a, i, j, r):
                            bad.append(("F", a, i, j, r))
        return bad

    def check_counit_retraction(self, r_max=None):
        """Multiplying out psi after killing the gl_beta factor recovers the
        same-named generator of the smaller pyramid."""
        r_max = self.R if r_max is None else min(r_max, self.R)
        fam, dot = self.family, self.dot_family
        bad = []
        for a in range(1, self.m1 + 1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(1, r_max + 1):
                        got = self.psi(fam.D(a, i, j, r)).counit_aux(
                            self.tilde_diag)
                        if got != dot.D(a, i, j, r):
                            bad.append(("D", a, i, j, r))
        for a in range(1, self.m1):
            for i in range(1, self.mu[a - 1] + 1):
                for j in range(1, self.mu[a] + 1):
                    for r in range(fam.window_start("E", a), r_max + 1):
                        got = self.psi(fam.E(a, i, j, r)).counit_aux(
                            self.tilde_diag)
                        if got != dot.E(a, i, j, r):
                            bad.append(("E", a, i, j, r))
            for i in range(1, self.mu[a] + 1):
                for j in range(1, self.mu[a - 1] + 1):
                    for r in range(fam.window_start("F", a), r_max + 1):
                        got = self.psi(fam.F(a, i, j, r)).counit_aux(
                            self.tilde_diag)
                        if got != dot.F(a, i, j, r):
                            bad.append(("F", a, i, j, r))
        return bad

    def check_composites(self, r_max=None):
        """The psi-images of the two-step composites: flat tensors away from
        the outer block and the bracket-plus-correction form at it."""
        r_max = self.R if r_max is None else min(r_max, self.R)
        if self.m < 2:
            return []
        fam, dot = self.family, self.dot_family
        sig = self.model.sigma
        bad = []
        for a in range(1, self.m1 - 1):
            for b in range(a + 2, self.m1 + 1):
                s_ab = fam.s_mu(a, b)
                for i in range(1, self.mu[a - 1] + 1):
                    for j in range(1, self.mu[b - 1] + 1):
                        for r in range(s_ab + 1, r_max + 1):
                            self._composite_case(bad, a, b, i, j, r)
                s_ba = fam.s_mu(b, a)
                for i in range(1, self.mu[b - 1] + 1):
                    for j in range(1, self.mu[a - 1] + 1):
                        for r in range(s_ba + 1, r_max + 1):
                            self._composite_case_f(bad, a, b, i, j, r)
        return bad

    def _composite_case(self, bad, a, b, i, j, r):
        fam, dot = self.family, self.dot_family
        got = self.psi(fam.E_composite(a, b, i, j, r))
        one = self.aux.one()
        if b < self.m1 or self.side == "L":
            want = TensorElement.of(dot.E_composite(a, b, i, j, r), one)
            if got != want:
                bad.append(("E", a, b, i, j, r, None))
            return
        s_up = fam.s_mu(self.m, self.m1)
        for h in range(1, self.mu[self.m - 1] + 1):
            left = dot.E_composite(a, self.m, i, h, r - s_up)
            head = -left.bracket(dot.E(self.m, h, j, s_up + 1))
            want = TensorElement.of(head, one)
            for k in range(1, self.beta + 1):
                want = want - TensorElement.of(
                    dot.E_composite(a, b, i, k, r - 1), self.aux_tilde(k, j))
            if got != want:
                bad.append(("E", a, b, i, j, r, h))

    def _composite_case_f(self, bad, a, b, i, j, r):
        fam, dot = self.family, self.dot_family
        got = self.psi(fam.F_composite(b, a, i, j, r))
        one = self.aux.one()
        if self.side == "R" or b < self.m1:
            want = TensorElement.of(dot.F_composite(b, a, i, j, r), one)
            if got != want:
                bad.append(("F", b, a, i, j, r, None))
            return
        s = fam.s_mu(self.m1, self.m)
        for h in range(1, self.mu[self.m - 1] + 1):
            head = -dot.F(self.m, i, h, s + 1).bracket(
                dot.F_composite(self.m, a, h, j, r - s))
            want = TensorElement.of(head, one)
            for k in range(1, self.beta + 1):
                want = want - TensorElement.of(
                    dot.F_composite(b, a, k, j, r - 1), self.aux_tilde(i, k))
            if got != want:
                bad.append(("F", b, a, i, j, r, h))
