"""Exact PBW arithmetic in the universal enveloping algebra of gl(M|N).

Basis indices are ordered barred-first: b1 < ... < bM < 1 < ... < N, encoded
internally as integers 0..M+N-1 (the first M are barred).  A generator e_{i,j}
is the pair (i, j); its parity is p(i) + p(j) mod 2 where p(i) = 0 iff i is
barred.  Elements are finite rational combinations of ordered supermonomials:
factors strictly increasing in the global generator order, odd generators with
exponent 1.  All coefficients are exact rationals.

Internally the straightening engine packs each generator (i, j) into the
single integer i*(M+N)+j, so the hot loops work on tuples of small ints and
flat lookup tables; the compressed monomials seen through ``terms`` and the
public generator API keep the (i, j) pair form.
"""

from fractions import Fraction
import sys

sys.setrecursionlimit(100000)

# Coefficients are exact rationals, stored as plain ints whenever the
# denominator is 1 (the overwhelmingly common case in the straightening
# recursion; int arithmetic is far cheaper than Fraction).
_ZERO = 0
_ONE = 1


def _exact(c):
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class SuperAlgebra:
    """gl(M|N) together with an optional box geometry (col/row of each index).

    The geometry drives the Kazhdan degree and the p/m split: e_{i,j} lies in
    m exactly when col(i) > col(j).  The global PBW order puts all m-generators
    after all p-generators (so projections along the m-part act on the tail of
    a normal monomial), and orders lexicographically by (i, j) within each
    group.
    """

    def __init__(self, M, N, col=None, row=None):
        self.M = M
        self.N = N
        self.dim = M + N
        self.col = tuple(col) if col is not None else None
        self.row = tuple(row) if row is not None else None
        if self.col is not None and len(self.col) != self.dim:
            raise ValueError("col table has wrong length")
        if self.row is not None and len(self.row) != self.dim:
            raise ValueError("row table has wrong length")
        dim = self.dim
        sq = dim * dim
        # flat per-code tables; code(e_{i,j}) = i*dim + j
        self._pair = [(i, j) for i in range(dim) for j in range(dim)]
        self._par_t = [(self.index_parity(i) + self.index_parity(j)) % 2
                       for (i, j) in self._pair]
        # PBW order as a single comparable int: (in_m, i, j) lexicographically
        self._ok_t = [(sq if self.in_m(g) else 0) + g[0] * dim + g[1]
                      for g in self._pair]
        self._nf_cache = {}
        self._ins_cache = {}
        self._brki = {}
        self._comp = {}
        # Straightening memo caps.  A cap is also enforced mid-product (the
        # fold checks cache sizes as it walks), so even a single huge product
        # stays within a bounded footprint at the cost of recomputation.
        # Word normal forms carry whole expansions as values, so their cap is
        # much lower than the single-generator insert memo.
        self.nf_cache_limit = 400000
        self.pair_cache_limit = 20000

    def trim_cache(self):
        if len(self._nf_cache) > self.pair_cache_limit:
            self._nf_cache.clear()
        if len(self._ins_cache) > self.nf_cache_limit:
            self._ins_cache.clear()
        if len(self._comp) > self.nf_cache_limit:
            self._comp.clear()

    def index_parity(self, i):
        return 0 if i < self.M else 1

    def gen_parity(self, g):
        return self._par_t[g[0] * self.dim + g[1]]

    def gen_degree(self, g):
        """Kazhdan degree col(j) - col(i) + 1 of e_{i,j}."""
        if self.col is None:
            return 1
        return self.col[g[1]] - self.col[g[0]] + 1

    def in_m(self, g):
        if self.col is None:
            return False
        return self.col[g[0]] > self.col[g[1]]

    def order_key(self, g):
        return (1 if self.in_m(g) else 0, g[0], g[1])

    def bracket_gens(self, a, b):
        """Supercommutator [e_a, e_b] as a map generator -> coefficient."""
        dim = self.dim
        pair = self._pair
        out = self._brk_int(a[0] * dim + a[1], b[0] * dim + b[1])
        return {pair[g]: c for g, c in out.items()}

    def _brk_int(self, a, b):
        """bracket_gens on packed generator codes."""
        cached = self._brki.get((a, b))
        if cached is not None:
            return cached
        dim = self.dim
        i, j = divmod(a, dim)
        h, k = divmod(b, dim)
        out = {}
        if j == h:
            out[i * dim + k] = 1
        if k == i:
            sign = -1 if (self._par_t[a] and self._par_t[b]) else 1
            g = h * dim + j
            out[g] = out.get(g, _ZERO) - sign
        out = {g: c for g, c in out.items() if c}
        self._brki[(a, b)] = out
        return out

    def check_index(self, i):
        if not (0 <= i < self.dim):
            raise IndexError("basis index out of range: %r" % (i,))

    # ----- element constructors -------------------------------------------

    def zero(self):
        return EnvelopingElement(self, {})

    def scalar(self, c):
        c = _exact(c)
        return EnvelopingElement(self, {(): c} if c else {})

    def one(self):
        return self.scalar(1)

    def gen(self, i, j):
        self.check_index(i)
        self.check_index(j)
        return EnvelopingElement(self, {(((i, j), 1),): _ONE})

    # ----- normal form ----------------------------------------------------

    def _word(self, mono):
        """Packed-int product word of a compressed monomial."""
        dim = self.dim
        word = []
        for (i, j), e in mono:
            word.extend([i * dim + j] * e)
        return tuple(word)

    def normalize(self, word):
        """PBW normal form of a packed product word of generators.

        Returns a map monomial -> coefficient, computed by folding the word
        through the memoized insert-one-generator straightening.
        """
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        cur = {(): _ONE}
        for g in word:
            ins = self._insert
            nxt = {}
            for mono, c in cur.items():
                for m2, c2 in ins(mono, g).items():
                    v = nxt.get(m2, _ZERO) + c * c2
                    if v:
                        nxt[m2] = v
                    else:
                        nxt.pop(m2, None)
            cur = nxt
        out = {self._compress(m): c for m, c in cur.items()}
        self._nf_cache[word] = out
        return out

    def _insert(self, mono, g):
        """Right-multiply a normal (sorted, uncompressed) packed monomial by
        one generator; adjacent equal odd generators square to zero."""
        key = (mono, g)
        cached = self._ins_cache.get(key)
        if cached is not None:
            return cached
        ok = self._ok_t
        par = self._par_t
        if not mono:
            out = {(g,): _ONE}
        else:
            a = mono[-1]
            if a == g:
                out = {} if par[g] else {mono + (g,): _ONE}
            elif ok[a] < ok[g]:
                out = {mono + (g,): _ONE}
            else:
                prefix = mono[:-1]
                sign = -1 if (par[a] and par[g]) else 1
                out = {}
                for m2, c2 in self._insert(prefix, g).items():
                    c2 = sign * c2
                    for m3, c3 in self._insert(m2, a).items():
                        v = out.get(m3, _ZERO) + c2 * c3
                        if v:
                            out[m3] = v
                        else:
                            out.pop(m3, None)
                for cgen, cc in self._brk_int(a, g).items():
                    for m2, c2 in self._insert(prefix, cgen).items():
                        v = out.get(m2, _ZERO) + cc * c2
                        if v:
                            out[m2] = v
                        else:
                            out.pop(m2, None)
        self._ins_cache[key] = out
        return out

    def _compress(self, word):
        """Packed word -> compressed ((i, j), exp) monomial."""
        cached = self._comp.get(word)
        if cached is not None:
            return cached
        pair = self._pair
        factors = []
        for g in word:
            if factors and factors[-1][0] == g:
                factors[-1] = (g, factors[-1][1] + 1)
            else:
                factors.append((g, 1))
        out = tuple((pair[g], e) for g, e in factors)
        self._comp[word] = out
        return out

    # ----- index display ---------------------------------------------------

    def index_name(self, i):
        return "b%d" % (i + 1) if i < self.M else "%d" % (i - self.M + 1)

    def parse_index(self, name):
        if name.startswith("b"):
            k = int(name[1:])
            if not (1 <= k <= self.M):
                raise ValueError("bad barred index %r" % name)
            return k - 1
        k = int(name)
        if not (1 <= k <= self.N):
            raise ValueError("bad unbarred index %r" % name)
        return self.M + k - 1


def _ad_gen(alg, g, elem):
    """[e_g, elem] for a packed generator g, via the Leibniz rule on each
    normal monomial of elem."""
    pg = alg._par_t[g]
    par = alg._par_t
    brk = alg._brk_int
    normalize = alg.normalize
    nf_cache = alg._nf_cache
    nf_limit = alg.pair_cache_limit * 4
    out = {}
    for mono, cb in elem.terms.items():
        if len(nf_cache) > nf_limit:
            nf_cache.clear()
        w = alg._word(mono)
        p = 0
        for j, bj in enumerate(w):
            br = brk(g, bj)
            if br:
                sign = -1 if (pg and p) else 1
                for cgen, cc in br.items():
                    coef = cb * cc * sign
                    for m2, c2 in normalize(w[:j] + (cgen,) + w[j + 1:]).items():
                        v = out.get(m2, _ZERO) + coef * c2
                        if v:
                            out[m2] = v
                        else:
                            out.pop(m2, None)
            p ^= par[bj]
    return EnvelopingElement(alg, out)


class EnvelopingElement:
    """A normal-form element of U(gl(M|N)) with exact rational coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, EnvelopingElement):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, _ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return EnvelopingElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvelopingElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def _coerce(self, other):
        if isinstance(other, EnvelopingElement):
            if other.alg is not self.alg:
                raise ValueError("elements over different algebras")
            return other
        return self.alg.scalar(other)

    def __mul__(self, other):
        if not isinstance(other, EnvelopingElement):
            c = _exact(other)
            if not c:
                return self.alg.zero()
            return EnvelopingElement(self.alg, {m: c * v for m, v in self.terms.items()})
        if other.alg is not self.alg:
            raise ValueError("elements over different algebras")
        alg = self.alg
        ins_cache = alg._ins_cache
        ins = alg._insert
        compress = alg._compress
        comp_cache = alg._comp
        ins_limit = alg.nf_cache_limit
        out = {}
        word = alg._word
        left = {word(m1): c1 for m1, c1 in self.terms.items()}
        rights = [(word(m2), 0, c2) for m2, c2 in other.terms.items()]

        # Walk the trie of right-factor words, folding the whole left element
        # one letter at a time: shared right prefixes are folded once, and
        # intermediate monomials merge (and cancel) as they go.
        def fold(cur, items):
            by_letter = {}
            for w2, pos, c2 in items:
                if pos == len(w2):
                    for m, cm in cur.items():
                        m = compress(m)
                        v = out.get(m, _ZERO) + cm * c2
                        if v:
                            out[m] = v
                        else:
                            out.pop(m, None)
                else:
                    by_letter.setdefault(w2[pos], []).append((w2, pos + 1, c2))
            for g, subs in by_letter.items():
                if len(ins_cache) > ins_limit:
                    ins_cache.clear()
                if len(comp_cache) > ins_limit:
                    comp_cache.clear()
                nxt = {}
                for mono, cm in cur.items():
                    got = ins_cache.get((mono, g))
                    if got is None:
                        got = ins(mono, g)
                    for mm, cc in got.items():
                        v = nxt.get(mm, _ZERO) + cm * cc
                        if v:
                            nxt[mm] = v
                        else:
                            nxt.pop(mm, None)
                fold(nxt, subs)

        fold(left, rights)
        alg.trim_cache()
        return EnvelopingElement(alg, out)

    def __rmul__(self, other):
        # scalars commute with everything
        return self * other

    def parity(self):
        """Parity of a homogeneous element; raises on mixed parity."""
        pars = {self._monomial_parity(m) for m in self.terms}
        if not pars:
            return 0
        if len(pars) > 1:
            raise ValueError("element is not parity-homogeneous")
        return pars.pop()

    def _monomial_parity(self, mono):
        return sum(self.alg.gen_parity(g) * e for g, e in mono) % 2

    def even_part(self):
        return EnvelopingElement(
            self.alg, {m: c for m, c in self.terms.items() if self._monomial_parity(m) == 0})

    def odd_part(self):
        return EnvelopingElement(
            self.alg, {m: c for m, c in self.terms.items() if self._monomial_parity(m) == 1})

    def _letters(self):
        return sum(e for m in self.terms for _, e in m)

    def bracket(self, other):
        """Supercommutator [x, y] = xy - (-1)^{|x||y|} yx, bilinear in parts.

        Computed as an iterated derivation rather than as two full products:
        the intermediates stay commutator-sized instead of product-sized.
        The derivation runs over the cheaper side; super antisymmetry
        [x, y] = -(-1)^{|x||y|} [y, x] reorients the other case.
        """
        other = self._coerce(other)
        alg = self.alg
        out = alg.zero()
        xs = ((0, self.even_part()), (1, self.odd_part()))
        ys = ((0, other.even_part()), (1, other.odd_part()))
        for pa, x in xs:
            if x.is_zero():
                continue
            for pb, y in ys:
                if y.is_zero():
                    continue
                # cost ~ (letters of the derivation side) x (size of the
                # other side's ad-images)
                if x._letters() * len(y.terms) <= y._letters() * len(x.terms):
                    out = out + x._bracket_homogeneous(y, pb)
                else:
                    sign = 1 if (pa and pb) else -1
                    out = out + y._bracket_homogeneous(x, pa) * sign
        return out

    def _bracket_homogeneous(self, other, pb):
        """[self, other] with other parity-homogeneous of parity pb, via
        [u g, y] = u [g, y] + (-1)^{|g||y|} [u, y] g on each monomial.

        Walks self's words in sorted order keeping only the current chain of
        prefix values alive, so memory stays bounded by (max word length) x
        (commutator size) instead of (number of prefixes) x (size).
        """
        alg = self.alg
        par = alg._par_t
        pair = alg._pair
        dtab = {}
        gelem = {}
        out = {}
        chain = []  # (prefix word, [prefix, other]) along the current word
        for w, c in sorted((alg._word(m), cv) for m, cv in self.terms.items()):
            while chain and w[:len(chain[-1][0])] != chain[-1][0]:
                chain.pop()
            if chain:
                u, val = chain[-1]
            else:
                u, val = (), alg.zero()
            for idx in range(len(u), len(w)):
                g = w[idx]
                dg = dtab.get(g)
                if dg is None:
                    dg = dtab[g] = _ad_gen(alg, g, other)
                if dg.terms:
                    nv = EnvelopingElement(alg, {alg._compress(u): _ONE}) * dg
                else:
                    nv = alg.zero()
                if val.terms:
                    ge = gelem.get(g)
                    if ge is None:
                        ge = gelem[g] = alg.gen(*pair[g])
                    sign = -1 if (pb and par[g]) else 1
                    nv = nv + (val * ge) * sign
                u = w[:idx + 1]
                val = nv
                chain.append((u, val))
            for m, cv in val.terms.items():
                v = out.get(m, _ZERO) + c * cv
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return EnvelopingElement(alg, out)

    def kazhdan_degree(self):
        """Max over monomials of the summed generator degrees (0 for 0)."""
        if self.alg.col is None:
            raise ValueError("algebra has no box geometry")
        best = 0
        for m in self.terms:
            d = sum(self.alg.gen_degree(g) * e for g, e in m)
            if d > best:
                best = d
        return best

    def constant_term(self):
        return self.terms.get((), _ZERO)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def serialize(self):
        """Canonical list-of-terms form with "b<k>"/"<k>" index names."""
        alg = self.alg
        out = []
        for mono, coeff in self.sorted_terms():
            frac = Fraction(coeff)
            out.append({
                "monomial": [[alg.index_name(i), alg.index_name(j), e]
                             for (i, j), e in mono],
                "coeff": "%d/%d" % (frac.numerator, frac.denominator),
            })
        return out

    @staticmethod
    def deserialize(alg, data):
        total = alg.zero()
        for term in data:
            num, den = term["coeff"].split("/")
            x = alg.scalar(Fraction(int(num), int(den)))
            for iname, jname, e in term["monomial"]:
                g = alg.gen(alg.parse_index(iname), alg.parse_index(jname))
                for _ in range(e):
                    x = x * g
            total = total + x
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        alg = self.alg
        bits = []
        for mono, coeff in self.sorted_terms():
            factors = "".join(
                "e[%s,%s]%s" % (alg.index_name(i), alg.index_name(j),
                                "" if e == 1 else "^%d" % e)
                for (i, j), e in mono) or "1"
            bits.append("%s*%s" % (coeff, factors))
        return " + ".join(bits)


def bracket_basis(alg, a, b):
    """[e_a, e_b] for generator pairs, as a normal-form element."""
    alg.check_index(a[0]); alg.check_index(a[1])
    alg.check_index(b[0]); alg.check_index(b[1])
    out = alg.zero()
    for g, c in alg.bracket_gens(tuple(a), tuple(b)).items():
        out = out + alg.gen(*g) * c
    return out
