"""Signed pyramids and their dictionary with (e, h) pairs and shift matrices.

A signed pyramid is a stack of rows (top to bottom), each a connected
horizontal strip carrying a sign.  Row intervals are nested downward.  Boxes
are numbered down columns from left to right: "+" boxes b1..bM, "-" boxes
1..N.  The pyramid is the single source of truth for the nilpotent e, the
grading element h, the Kazhdan degrees, the shift matrix with level, and the
scalar shifts entering the twisted generators.
"""

from collections import namedtuple
from fractions import Fraction
import json

from .algebra import SuperAlgebra
from . import linalg


class PyramidError(ValueError):
    pass


Row = namedtuple("Row", ["sign", "length", "left_offset"])


class ShiftMatrix:
    """(n+1) x (n+1) nonnegative integer matrix with zero diagonal satisfying
    s_{i,j} + s_{j,k} = s_{i,k} on aligned triples."""

    def __init__(self, entries):
        self.entries = tuple(tuple(int(x) for x in row) for row in entries)
        self.size = len(self.entries)
        for row in self.entries:
            if len(row) != self.size:
                raise PyramidError("shift matrix is not square")
        for i in range(self.size):
            if self.entries[i][i] != 0:
                raise PyramidError("shift matrix has nonzero diagonal")
            for j in range(self.size):
                if self.entries[i][j] < 0:
                    raise PyramidError("shift matrix has a negative entry")
        for i in range(self.size):
            for j in range(self.size):
                for k in range(self.size):
                    if abs(i - j) + abs(j - k) == abs(i - k):
                        if self.entries[i][j] + self.entries[j][k] != self.entries[i][k]:
                            raise PyramidError(
                                "additivity fails on aligned triple (%d,%d,%d)"
                                % (i + 1, j + 1, k + 1))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, ShiftMatrix) and self.entries == other.entries

    def transpose(self):
        return ShiftMatrix(tuple(zip(*self.entries)))

    def is_admissible(self, mu):
        """Whether the composition mu (with mu[0] = 1) has zero diagonal
        blocks in this matrix."""
        mu = tuple(int(x) for x in mu)
        if not mu or mu[0] != 1 or any(x < 1 for x in mu) or sum(mu) != self.size:
            return False
        start = 0
        for width in mu:
            for i in range(start, start + width):
                for j in range(start, start + width):
                    if self.entries[i][j] != 0:
                        return False
            start += width
        return True

    def minimal_admissible_shape(self):
        """The coarsest admissible composition: the first part is always 1,
        the rest are the maximal runs of rows with pairwise zero shifts."""
        mu = [1]
        start = 1
        while start < self.size:
            width = 1
            while start + width < self.size and all(
                    self.entries[i][j] == 0
                    for i in range(start, start + width + 1)
                    for j in range(start, start + width + 1)):
                width += 1
            mu.append(width)
            start += width
        return tuple(mu)

    def __repr__(self):
        return "ShiftMatrix(%r)" % (self.entries,)


class TruncationSpec:
    """A shift matrix together with a level; derives the row lengths p_i."""

    def __init__(self, sigma, level):
        if not isinstance(sigma, ShiftMatrix):
            sigma = ShiftMatrix(sigma)
        self.sigma = sigma
        self.level = int(level)
        n1 = sigma.size
        if self.level < sigma[1, n1] + sigma[n1, 1]:
            raise PyramidError("level %d below s_{1,n+1} + s_{n+1,1} = %d"
                               % (self.level, sigma[1, n1] + sigma[n1, 1]))
        self.p = tuple(self.level - sigma[i, n1] - sigma[n1, i]
                       for i in range(1, n1 + 1))

    def to_dict(self):
        return {"sigma": [list(r) for r in self.sigma.entries], "level": self.level}

    @staticmethod
    def from_dict(data):
        return TruncationSpec(data["sigma"], data["level"])

    def __eq__(self, other):
        return (isinstance(other, TruncationSpec)
                and self.sigma == other.sigma and self.level == other.level)


class SignedPyramid:
    """A validated signed pyramid with cached geometry."""

    def __init__(self, rows):
        rows = [Row(str(s), int(l), int(o)) for (s, l, o) in
                ((r["sign"], r["length"], r["left_offset"]) if isinstance(r, dict)
                 else r for r in rows)]
        if not rows:
            raise PyramidError("empty pyramid")
        shift = min(r.left_offset for r in rows)
        rows = [Row(r.sign, r.length, r.left_offset - shift) for r in rows]
        for r in rows:
            if r.sign not in ("+", "-"):
                raise PyramidError("row sign must be '+' or '-'")
            if r.length < 1:
                raise PyramidError("row of nonpositive length")
            if r.left_offset < 0:
                raise PyramidError("negative row offset")
        for above, below in zip(rows, rows[1:]):
            if not (below.left_offset <= above.left_offset
                    and above.left_offset + above.length
                    <= below.left_offset + below.length):
                raise PyramidError(
                    "row interval [%d,%d] not nested in the row below [%d,%d]"
                    % (above.left_offset + 1, above.left_offset + above.length,
                       below.left_offset + 1, below.left_offset + below.length))
        self.rows = tuple(rows)
        self.n_rows = len(rows)
        self.ell = rows[-1].left_offset + rows[-1].length
        if rows[-1].left_offset != 0 or self.ell != max(
                r.left_offset + r.length for r in rows):
            raise PyramidError("bottom row does not span the full base")
        self._number_boxes()

    # ----- numbering and geometry -----------------------------------------

    def row_interval(self, t):
        """Columns [lo, hi] covered by row label t (1-based, top to bottom)."""
        r = self.rows[t - 1]
        return (r.left_offset + 1, r.left_offset + r.length)

    def covers(self, t, c):
        lo, hi = self.row_interval(t)
        return lo <= c <= hi

    def _number_boxes(self):
        barred, unbarred = [], []
        for c in range(1, self.ell + 1):
            for t in range(1, self.n_rows + 1):
                if self.covers(t, c):
                    (barred if self.rows[t - 1].sign == "+" else unbarred).append((t, c))
        self.M = len(barred)
        self.N = len(unbarred)
        boxes = barred + unbarred
        self.box_row = tuple(t for t, _ in boxes)
        self.box_col = tuple(c for _, c in boxes)
        self._box_at = {(t, c): i for i, (t, c) in enumerate(boxes)}
        self._alg = None

    def box_at(self, t, c):
        """Internal index of the box in row t, column c."""
        try:
            return self._box_at[(t, c)]
        except KeyError:
            raise PyramidError("no box at row %d, column %d" % (t, c))

    def algebra(self):
        if self._alg is None:
            self._alg = SuperAlgebra(self.M, self.N, col=self.box_col, row=self.box_row)
        return self._alg

    def column_height(self, c):
        return sum(1 for t in range(1, self.n_rows + 1) if self.covers(t, c))

    def super_column_height(self, c):
        q = 0
        for t in range(1, self.n_rows + 1):
            if self.covers(t, c):
                q += 1 if self.rows[t - 1].sign == "+" else -1
        return q

    def is_main_mode(self):
        """True when the top row is the only '+' row."""
        return (self.rows[0].sign == "+"
                and all(r.sign == "-" for r in self.rows[1:]))

    def require_main_mode(self):
        if not self.is_main_mode():
            raise PyramidError("operation requires the top row to be the only '+' row")

    # ----- e and h ---------------------------------------------------------

    def build_e(self):
        alg = self.algebra()
        out = alg.zero()
        for t in range(1, self.n_rows + 1):
            lo, hi = self.row_interval(t)
            for c in range(lo, hi):
                out = out + alg.gen(self.box_at(t, c), self.box_at(t, c + 1))
        return out

    def x_coordinate(self, c):
        """Center x-coordinate of column c for 2x2 boxes centered at the origin."""
        return 2 * c - 1 - self.ell

    def build_h(self):
        return tuple(-self.x_coordinate(self.box_col[i])
                     for i in range(self.M + self.N))

    # ----- good grading ----------------------------------------------------

    def check_good_grading(self, h_override=None):
        """Verify the five good-grading axioms plus evenness for ad h on e."""
        alg = self.algebra()
        h = tuple(h_override) if h_override is not None else self.build_h()
        e = self.build_e()
        gens = [(i, j) for i in range(alg.dim) for j in range(alg.dim)]
        eig = {g: h[g[0]] - h[g[1]] for g in gens}
        report = {"axioms": {}, "first_failure": None, "passed": True}

        def record(name, ok):
            report["axioms"][name] = bool(ok)
            if not ok and report["first_failure"] is None:
                report["first_failure"] = name
                report["passed"] = False

        h_elem = alg.zero()
        for i in range(alg.dim):
            h_elem = h_elem + alg.gen(i, i) * h[i]
        record("ad_h_e_is_2e", h_elem.bracket(e) == e * 2)
        record("integer_grading", all(isinstance(v, int) for v in eig.values()))
        ident = alg.zero()
        for i in range(alg.dim):
            ident = ident + alg.gen(i, i)
        record("center_in_degree_0", h_elem.bracket(ident).is_zero())

        by_deg = {}
        for g in gens:
            by_deg.setdefault(eig[g], []).append(g)
        ad_e = {}
        for g in gens:
            img = e.bracket(alg.gen(*g))
            ad_e[g] = {m[0][0]: c for m, c in img.terms.items()}
        inj = True
        surj = True
        degs = sorted(by_deg)
        for j in degs:
            src = by_deg[j]
            tgt = by_deg.get(j + 2, [])
            pos = {g: k for k, g in enumerate(tgt)}
            mat = [[Fraction(0)] * len(tgt) for _ in src]
            for k, g in enumerate(src):
                for gg, c in ad_e[g].items():
                    mat[k][pos[gg]] = c
            rk = linalg.rank(mat) if src and tgt else 0
            if j <= -1 and rk != len(src):
                inj = False
            if j >= -1 and rk != len(tgt):
                surj = False
        record("ad_e_injective_below", inj)
        record("ad_e_surjective_above", surj)
        record("even_grading", all(v % 2 == 0 for v in eig.values()))
        return report

    # ----- shift matrix dictionary ----------------------------------------

    def right_end(self, t):
        r = self.rows[t - 1]
        return r.left_offset + r.length

    def to_shift_and_level(self):
        self.require_main_mode()
        n1 = self.n_rows
        s = [[0] * n1 for _ in range(n1)]
        for i in range(1, n1 + 1):
            for j in range(1, n1 + 1):
                if i >= j:
                    s[i - 1][j - 1] = self.rows[j - 1].left_offset - self.rows[i - 1].left_offset
                else:
                    s[i - 1][j - 1] = self.right_end(j) - self.right_end(i)
        return TruncationSpec(ShiftMatrix(s), self.ell)

    @staticmethod
    def from_shift_and_level(spec):
        n1 = spec.sigma.size
        rows = []
        for i in range(1, n1 + 1):
            p_i = spec.p[i - 1]
            if p_i < 1:
                raise PyramidError("row %d would be empty at this level" % i)
            rows.append(Row("+" if i == 1 else "-", p_i, spec.sigma[n1, i]))
        return SignedPyramid(rows)

    # ----- rho, twisted generators, character ------------------------------

    def rho(self):
        """(rho_1..rho_ell) and the super height; rejects ambiguous heights."""
        self.require_main_mode()
        qc = [self.super_column_height(c) for c in range(1, self.ell + 1)]
        hmax = max(self.column_height(c) for c in range(1, self.ell + 1))
        tall = [qc[c - 1] for c in range(1, self.ell + 1)
                if self.column_height(c) == hmax]
        if len(set(tall)) != 1:
            raise PyramidError("ambiguous super height on this pyramid")
        h = tall[0]
        rho = []
        for r in range(1, self.ell + 1):
            rho.append(h - sum(qc[r - 1:]))
        return tuple(rho), h

    def rho_vector(self):
        return self.rho()[0]

    def tilde_e(self, i, j):
        """The twisted generator as an element of U(gl(M|N))."""
        alg = self.algebra()
        sign = (-1) ** (self.box_col[j] - self.box_col[i])
        out = alg.gen(i, j)
        if i == j:
            rho = self.rho_vector()
            out = out + alg.scalar(
                (-1) ** alg.index_parity(i) * rho[self.box_col[i] - 1])
        return out * sign

    def chi_tilde(self, i, j):
        """Character value on the twisted generator; requires it to lie in m."""
        if not (self.box_col[i] > self.box_col[j]):
            raise PyramidError("generator not in m")
        alg = self.algebra()
        if (self.box_row[i] == self.box_row[j]
                and self.box_col[i] == self.box_col[j] + 1):
            return Fraction((-1) ** (alg.index_parity(i) + 1))
        return Fraction(0)

    def chi_plain(self, i, j):
        """Character value on the plain generator e_{i,j} in m."""
        if not (self.box_col[i] > self.box_col[j]):
            raise PyramidError("generator not in m")
        alg = self.algebra()
        if (self.box_row[i] == self.box_row[j]
                and self.box_col[i] == self.box_col[j] + 1):
            return Fraction((-1) ** alg.index_parity(i))
        return Fraction(0)

    # ----- centralizer -----------------------------------------------------

    def centralizer_basis(self):
        """The standard basis of the centralizer of e, with Kazhdan degrees.

        Returns a list of (element, i, j, r) covering the window
        s_{i,j} < r <= s_{i,j} + p_{min(i,j)} over row pairs.
        """
        alg = self.algebra()
        n1 = self.n_rows
        s = [[0] * n1 for _ in range(n1)]
        for i in range(1, n1 + 1):
            for j in range(1, n1 + 1):
                if i >= j:
                    s[i - 1][j - 1] = self.rows[j - 1].left_offset - self.rows[i - 1].left_offset
                else:
                    s[i - 1][j - 1] = self.right_end(j) - self.right_end(i)
        out = []
        for i in range(1, n1 + 1):
            for j in range(1, n1 + 1):
                pmin = self.rows[min(i, j) - 1].length
                for r in range(s[i - 1][j - 1] + 1, s[i - 1][j - 1] + pmin + 1):
                    elem = alg.zero()
                    for hh in range(alg.dim):
                        for kk in range(alg.dim):
                            if (self.box_row[hh] == i and self.box_row[kk] == j
                                    and self.box_col[kk] - self.box_col[hh] == r - 1):
                                elem = elem + alg.gen(hh, kk)
                    out.append((elem, i, j, r))
        return out

    def centralizer_nullity(self):
        """dim ker(ad e) computed by dense linear algebra, for cross-checking."""
        alg = self.algebra()
        e = self.build_e()
        gens = [(i, j) for i in range(alg.dim) for j in range(alg.dim)]
        pos = {g: k for k, g in enumerate(gens)}
        mat = []
        for g in gens:
            img = e.bracket(alg.gen(*g))
            row = [Fraction(0)] * len(gens)
            for m, c in img.terms.items():
                row[pos[m[0][0]]] = c
            mat.append(row)
        return linalg.nullity(mat)

    # ----- transformations and serialization -------------------------------

    def mirror(self):
        """The horizontally flipped pyramid (reverses the column order)."""
        return SignedPyramid([
            Row(r.sign, r.length, self.ell - (r.left_offset + r.length))
            for r in self.rows])

    def shift_rows(self, offsets):
        """Replace the row offsets; the result must again be a valid pyramid."""
        if len(offsets) != self.n_rows:
            raise PyramidError("need one offset per row")
        return SignedPyramid([
            Row(r.sign, r.length, int(o)) for r, o in zip(self.rows, offsets)])

    def to_dict(self):
        return {"rows": [{"sign": r.sign, "length": r.length,
                          "left_offset": r.left_offset} for r in self.rows]}

    @staticmethod
    def from_dict(data):
        return SignedPyramid(data["rows"])

    def __eq__(self, other):
        return isinstance(other, SignedPyramid) and self.rows == other.rows

    def __repr__(self):
        return "SignedPyramid(%r)" % (list(self.rows),)


def canonical_json(data):
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def validate(candidate):
    """Build a SignedPyramid from row data, raising PyramidError on bad input."""
    if isinstance(candidate, SignedPyramid):
        return candidate
    if isinstance(candidate, dict):
        return SignedPyramid.from_dict(candidate)
    return SignedPyramid(candidate)
