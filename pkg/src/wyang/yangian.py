"""The presentation side: generator symbols, formal expressions, the full
defining-relation catalog, truncated PBW enumeration, and the formal maps
(transposition anti-automorphism, degree reshuffle, one-column
comultiplications).

Everything here is syntactic.  Expressions are never rewritten to a normal
form; their meaning is fixed by evaluating them in a generator-image
environment (see the verify module).
"""

from collections import namedtuple
from fractions import Fraction
import json

from .pyramid import PyramidError


# A generator symbol D/Dp/E/F with block indices (a, b), inner indices
# (i, j) inside the blocks, and degree r.  For D and Dp we keep b == a; for
# E the symbol sits above the diagonal (a < b) and for F below (a > b), so
# the window lower bound is the shift entry s^mu_{a,b} in both cases.
# Adjacent generators are (a, a+1) and (a+1, a); other pairs are the
# bracket-defined composites.
GeneratorSymbol = namedtuple("GeneratorSymbol", "family a b i j r")


def make_symbol(family, a, b, i, j, r):
    if family in ("D", "Dp"):
        if a != b:
            raise ValueError("diagonal symbol with a != b")
    elif family == "E":
        if not a < b:
            raise ValueError("E symbol needs a < b")
    elif family == "F":
        if not a > b:
            raise ValueError("F symbol needs a > b")
    else:
        raise ValueError("unknown family %r" % (family,))
    return GeneratorSymbol(family, a, b, i, j, r)


def symbol_parity(sym):
    """Odd exactly for E/F symbols with one block index in the barred block."""
    if sym.family in ("E", "F") and (sym.a == 1) != (sym.b == 1):
        return 1
    return 0


def word_parity(word):
    return sum(symbol_parity(s) for s in word) % 2


def block_parity(a):
    """Parity sign exponent attached to the a-th diagonal block."""
    return 0 if a == 1 else 1


def _fmt_symbol(sym):
    if sym.family in ("D", "Dp"):
        return "%s_%d[%d,%d]^(%d)" % (sym.family, sym.a, sym.i, sym.j, sym.r)
    return "%s_%d,%d[%d,%d]^(%d)" % (sym.family, sym.a, sym.b, sym.i, sym.j, sym.r)


class YangianExpression:
    """Formal sum of scalar-weighted ordered words in generator symbols.

    Words are plain tuples; multiplication concatenates, the bracket uses
    the Koszul rule on word parities.  Identical words cancel through the
    coefficient dictionary, which is what removes the out-of-window terms
    in the same-block E/E and F/F relations.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[w] = Fraction(c)

    @staticmethod
    def zero():
        return YangianExpression()

    @staticmethod
    def scalar(c):
        c = Fraction(c)
        return YangianExpression({(): c} if c else {})

    @staticmethod
    def symbol(sym):
        return YangianExpression({(sym,): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, YangianExpression) and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = YangianExpression()
        res.terms = out
        return res

    def __neg__(self):
        res = YangianExpression()
        res.terms = {w: -c for w, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, YangianExpression):
            other = YangianExpression.scalar(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        res = YangianExpression()
        res.terms = out
        return res

    def __rmul__(self, other):
        # scalars commute with formal words
        return self * other

    def bracket(self, other):
        """Supercommutator [x, y] = xy - (-1)^{|x||y|} yx, word by word."""
        out = YangianExpression.zero()
        for w1, c1 in self.terms.items():
            p1 = word_parity(w1)
            for w2, c2 in other.terms.items():
                sign = -1 if (p1 and word_parity(w2)) else 1
                out = out + YangianExpression({w1 + w2: c1 * c2})
                out = out + YangianExpression({w2 + w1: -sign * c1 * c2})
        return out

    def symbols(self):
        seen = set()
        for w in self.terms:
            seen.update(w)
        return seen

    def map_symbols(self, f):
        """Apply a symbol-wise substitution (no reordering, no signs)."""
        out = YangianExpression.zero()
        for w, c in self.terms.items():
            nw = tuple(f(s) for s in w)
            out = out + YangianExpression({nw: c})
        return out

    def serialize(self):
        items = []
        for w in sorted(self.terms, key=_word_key):
            items.append({
                "word": [list(s) for s in w],
                "coeff": str(self.terms[w]),
            })
        return items

    @staticmethod
    def deserialize(items):
        out = YangianExpression.zero()
        for it in items:
            w = tuple(GeneratorSymbol(*entry) for entry in it["word"])
            out = out + YangianExpression({w: Fraction(it["coeff"])})
        return out

    def canonical_key(self):
        """Hashable form, scaled so the lexicographically first word has
        coefficient 1; used to match expressions up to a scalar."""
        if not self.terms:
            return ()
        first = min(self.terms, key=_word_key)
        scale = self.terms[first]
        return tuple(sorted(
            ((w, self.terms[w] / scale) for w in self.terms),
            key=lambda wc: _word_key(wc[0])))

    def __repr__(self):
        bits = []
        for w in sorted(self.terms, key=_word_key):
            c = self.terms[w]
            txt = "*".join(_fmt_symbol(s) for s in w) if w else "1"
            bits.append("%s %s" % (c, txt))
        return " + ".join(bits) if bits else "0"


def _word_key(word):
    return tuple((s.family, s.a, s.b, s.i, s.j, s.r) for s in word)


class AdmissibleShape:
    """A block shape mu = (1 | mu_2, ..., mu_{m+1}) compatible with a shift
    matrix: the shift entries vanish inside every diagonal block.

    Carries the block-corner shorthand s(a, b) for the shift entries, the
    per-block truncation bounds p(a) when a level is attached, and the
    generator windows of the truncated presentation.
    """

    def __init__(self, sigma, mu, level=None):
        mu = tuple(int(x) for x in mu)
        if not mu or mu[0] != 1 or any(x < 1 for x in mu):
            raise PyramidError("shape must start with the one-box barred block")
        if sum(mu) != sigma.size:
            raise PyramidError("shape does not sum to the matrix size")
        if not sigma.is_admissible(mu):
            raise PyramidError("shape is not admissible for this shift matrix")
        self.sigma = sigma
        self.mu = mu
        self.m = len(mu) - 1
        self.level = level
        edges = []
        acc = 0
        for x in mu:
            acc += x
            edges.append(acc)
        self._edge = edges  # edges[a-1] = mu_1 + ... + mu_a
        if level is not None:
            n1 = sigma.size
            if level < sigma[1, n1] + sigma[n1, 1]:
                raise PyramidError("level smaller than the total shift")

    def s(self, a, b):
        if a == b:
            return 0
        return self.sigma[self._edge[a - 1], self._edge[b - 1]]

    def p(self, a):
        if self.level is None:
            raise PyramidError("no level attached to this shape")
        n1 = self.sigma.size
        i = self._edge[a - 1]
        return self.level - self.sigma[i, n1] - self.sigma[n1, i]

    def block_size(self, a):
        return self.mu[a - 1]

    def window_start(self, family, a, b):
        """Degrees of the family run strictly above this bound.  Diagonal
        symbols start at degree 0 (pinned to the identity there)."""
        if family in ("D", "Dp"):
            return -1
        return self.s(a, b)

    def in_window(self, sym):
        return sym.r > self.window_start(sym.family, sym.a, sym.b)

    def is_minimal(self):
        return self.mu == self.sigma.minimal_admissible_shape()

    def generator_symbols(self, include_composites=True):
        """The truncated-presentation basis generators: D up to p(a), E/F in
        the shifted windows capped by p of the smaller block index."""
        out = []
        for a in range(1, self.m + 2):
            for i in range(1, self.block_size(a) + 1):
                for j in range(1, self.block_size(a) + 1):
                    for r in range(1, self.p(a) + 1):
                        out.append(make_symbol("D", a, a, i, j, r))
        for a in range(1, self.m + 2):
            for b in range(a + 1, self.m + 2):
                if b != a + 1 and not include_composites:
                    continue
                se, sf = self.s(a, b), self.s(b, a)
                for i in range(1, self.block_size(a) + 1):
                    for j in range(1, self.block_size(b) + 1):
                        for r in range(se + 1, se + self.p(a) + 1):
                            out.append(make_symbol("E", a, b, i, j, r))
                for i in range(1, self.block_size(b) + 1):
                    for j in range(1, self.block_size(a) + 1):
                        for r in range(sf + 1, sf + self.p(a) + 1):
                            out.append(make_symbol("F", b, a, i, j, r))
        return out


# ---------------------------------------------------------------------------
# relation catalog


class RelationInstance:
    """One fully bound defining relation: an id, the index binding, and the
    two sides as formal expressions.  `flagged` lists any symbols that
    remain outside their degree windows after cancellation; such instances
    cannot be imposed in the shifted presentation and are reported rather
    than silently dropped."""

    __slots__ = ("rel_id", "binding", "lhs", "rhs", "flagged", "plan")

    def __init__(self, rel_id, binding, lhs, rhs, shape, plan=None):
        self.rel_id = rel_id
        self.binding = dict(binding)
        self.lhs = lhs
        self.rhs = rhs
        # optional bracket-structured recipe for the left side; evaluators
        # may use it to keep intermediates commutator-sized
        self.plan = plan
        bad = set()
        for sym in (lhs - rhs).symbols():
            if not shape.in_window(sym):
                bad.add(sym)
        self.flagged = sorted(bad)

    def sort_key(self):
        return (self.rel_id, tuple(sorted(self.binding.items())))

    def to_json(self):
        return json.dumps({
            "id": self.rel_id,
            "binding": {k: v for k, v in sorted(self.binding.items())},
            "lhs": self.lhs.serialize(),
            "rhs": self.rhs.serialize(),
            "flagged": [list(s) for s in self.flagged],
        }, sort_keys=True, separators=(",", ":"))

    def __repr__(self):
        return "RelationInstance(%s, %r)" % (self.rel_id, self.binding)


def _D(a, i, j, r):
    return YangianExpression.symbol(make_symbol("D", a, a, i, j, r))


def _Dp(a, i, j, r):
    return YangianExpression.symbol(make_symbol("Dp", a, a, i, j, r))


def _E(a, i, j, r):
    return YangianExpression.symbol(make_symbol("E", a, a + 1, i, j, r))


def _F(a, i, j, r):
    return YangianExpression.symbol(make_symbol("F", a + 1, a, i, j, r))


def _sp(expr):
    """Plan leaf for a single-symbol expression."""
    (word,) = expr.terms
    return ("sym", word[0])


def _comm(x, y):
    return ("comm", x, y)


def relation_catalog(shape, r_max):
    """Every defining relation of the block presentation, instantiated over
    all index bindings whose explicit degrees are at most r_max.

    Adjacent E/F degrees start at the window edge; instances in which an
    out-of-window symbol survives cancellation come back flagged.
    """
    out = []
    m = shape.m
    mu = shape.block_size

    def add(rel_id, binding, lhs, rhs, plan=None):
        out.append(RelationInstance(rel_id, binding, lhs, rhs, shape, plan))

    def erange(a):
        return range(max(shape.s(a, a + 1), 1), r_max + 1)

    def frange(a):
        return range(max(shape.s(a + 1, a), 1), r_max + 1)

    one = YangianExpression.scalar(1)

    for a in range(1, m + 2):
        for i in range(1, mu(a) + 1):
            for j in range(1, mu(a) + 1):
                add("d-unit", {"a": a, "i": i, "j": j},
                    _D(a, i, j, 0), one * (1 if i == j else 0))
                for r in range(0, r_max + 1):
                    lhs = YangianExpression.zero()
                    for t in range(0, r + 1):
                        for p in range(1, mu(a) + 1):
                            lhs = lhs + _D(a, i, p, t) * _Dp(a, p, j, r - t)
                    rhs = one * (1 if (r == 0 and i == j) else 0)
                    add("d-dprime-inverse", {"a": a, "i": i, "j": j, "r": r},
                        lhs, rhs)

    # diagonal-diagonal commutators
    for a in range(1, m + 2):
        for b in range(1, m + 2):
            for i in range(1, mu(a) + 1):
                for j in range(1, mu(a) + 1):
                    for h in range(1, mu(b) + 1):
                        for k in range(1, mu(b) + 1):
                            for r in range(1, r_max + 1):
                                for s in range(1, r_max + 1):
                                    x, y = _D(a, i, j, r), _D(b, h, k, s)
                                    lhs = x.bracket(y)
                                    plan = _comm(_sp(x), _sp(y))
                                    rhs = YangianExpression.zero()
                                    if a == b:
                                        sgn = (-1) ** block_parity(a)
                                        for t in range(0, min(r, s)):
                                            rhs = rhs + sgn * (
                                                _D(a, h, j, t) * _D(a, i, k, r + s - 1 - t)
                                                - _D(a, h, j, r + s - 1 - t) * _D(a, i, k, t))
                                    add("dd-commutator",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        lhs, rhs, plan)

    # diagonal against raising / lowering
    for a in range(1, m + 2):
        for b in range(1, m + 1):
            if a != b and a != b + 1:
                continue
            for i in range(1, mu(a) + 1):
                for j in range(1, mu(a) + 1):
                    for h in range(1, mu(b) + 1):
                        for k in range(1, mu(b + 1) + 1):
                            for r in range(1, r_max + 1):
                                for s in erange(b):
                                    x, y = _D(a, i, j, r), _E(b, h, k, s)
                                    lhs = x.bracket(y)
                                    plan = _comm(_sp(x), _sp(y))
                                    rhs = YangianExpression.zero()
                                    if a == b and h == j:
                                        sgn = 1 if b == 1 else -1
                                        for t in range(0, r):
                                            for p in range(1, mu(a) + 1):
                                                rhs = rhs + sgn * (
                                                    _D(a, i, p, t) * _E(a, p, k, r + s - 1 - t))
                                    if a == b + 1:
                                        for t in range(0, r):
                                            rhs = rhs + _D(a, i, k, t) * _E(b, h, j, r + s - 1 - t)
                                    add("de-commutator",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        lhs, rhs, plan)
                    for h in range(1, mu(b + 1) + 1):
                        for k in range(1, mu(b) + 1):
                            for r in range(1, r_max + 1):
                                for s in frange(b):
                                    x, y = _D(a, i, j, r), _F(b, h, k, s)
                                    lhs = x.bracket(y)
                                    plan = _comm(_sp(x), _sp(y))
                                    rhs = YangianExpression.zero()
                                    if a == b and k == i:
                                        sgn = -1 if b == 1 else 1
                                        for t in range(0, r):
                                            for p in range(1, mu(a) + 1):
                                                rhs = rhs + sgn * (
                                                    _F(b, h, p, r + s - 1 - t) * _D(a, p, j, t))
                                    if a == b + 1:
                                        for t in range(0, r):
                                            rhs = rhs - _F(b, i, k, r + s - 1 - t) * _D(a, h, j, t)
                                    add("df-commutator",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        lhs, rhs, plan)

    # same-block E/E and F/F; the t-sums below the window cancel pairwise
    for a in range(1, m + 1):
        asign = 1 if a == 1 else -1
        for i in range(1, mu(a) + 1):
            for h in range(1, mu(a) + 1):
                for j in range(1, mu(a + 1) + 1):
                    for k in range(1, mu(a + 1) + 1):
                        for r in erange(a):
                            for s in erange(a):
                                x, y = _E(a, i, j, r), _E(a, h, k, s)
                                lhs = x.bracket(y)
                                plan = _comm(_sp(x), _sp(y))
                                # both branches of the display orient this
                                # sum the same way: +(t<r) - (t<s)
                                rhs = YangianExpression.zero()
                                for t in range(1, r):
                                    rhs = rhs + (
                                        _E(a, i, k, t) * _E(a, h, j, r + s - 1 - t))
                                for t in range(1, s):
                                    rhs = rhs - (
                                        _E(a, i, k, t) * _E(a, h, j, r + s - 1 - t))
                                add("ee-same-block",
                                    {"a": a, "i": i, "j": j, "h": h, "k": k,
                                     "r": r, "s": s}, lhs, rhs, plan)
        for i in range(1, mu(a + 1) + 1):
            for h in range(1, mu(a + 1) + 1):
                for j in range(1, mu(a) + 1):
                    for k in range(1, mu(a) + 1):
                        for r in frange(a):
                            for s in frange(a):
                                x, y = _F(a, i, j, r), _F(a, h, k, s)
                                lhs = x.bracket(y)
                                plan = _comm(_sp(x), _sp(y))
                                rhs = YangianExpression.zero()
                                for t in range(1, r):
                                    rhs = rhs + asign * (
                                        _F(a, i, k, r + s - 1 - t) * _F(a, h, j, t))
                                for t in range(1, s):
                                    rhs = rhs - asign * (
                                        _F(a, i, k, r + s - 1 - t) * _F(a, h, j, t))
                                add("ff-same-block",
                                    {"a": a, "i": i, "j": j, "h": h, "k": k,
                                     "r": r, "s": s}, lhs, rhs, plan)

    # E against F: the Cartan product
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            for i in range(1, mu(a) + 1):
                for j in range(1, mu(a + 1) + 1):
                    for h in range(1, mu(b + 1) + 1):
                        for k in range(1, mu(b) + 1):
                            for r in erange(a):
                                for s in frange(b):
                                    x, y = _E(a, i, j, r), _F(b, h, k, s)
                                    lhs = x.bracket(y)
                                    plan = _comm(_sp(x), _sp(y))
                                    rhs = YangianExpression.zero()
                                    if a == b:
                                        for t in range(0, r + s):
                                            rhs = rhs + (
                                                _D(a + 1, h, j, r + s - 1 - t)
                                                * _Dp(a, i, k, t))
                                    add("ef-cartan",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        lhs, rhs, plan)

    # adjacent-block grading identities
    for a in range(1, m):
        for i in range(1, mu(a) + 1):
            for j in range(1, mu(a + 1) + 1):
                for h in range(1, mu(a + 1) + 1):
                    for k in range(1, mu(a + 2) + 1):
                        for r in range(max(shape.s(a, a + 1), 1), r_max):
                            for s in range(max(shape.s(a + 1, a + 2), 1), r_max):
                                x1, y1 = _E(a, i, j, r + 1), _E(a + 1, h, k, s)
                                x2, y2 = _E(a, i, j, r), _E(a + 1, h, k, s + 1)
                                lhs = x1.bracket(y1) - x2.bracket(y2)
                                plan = ("sum", ((1, _comm(_sp(x1), _sp(y1))),
                                                (-1, _comm(_sp(x2), _sp(y2)))))
                                rhs = YangianExpression.zero()
                                if h == j:
                                    for q in range(1, mu(a + 1) + 1):
                                        rhs = rhs - _E(a, i, q, r) * _E(a + 1, q, k, s)
                                add("ee-adjacent-grading",
                                    {"a": a, "i": i, "j": j, "h": h, "k": k,
                                     "r": r, "s": s}, lhs, rhs, plan)
        for i in range(1, mu(a + 1) + 1):
            for j in range(1, mu(a) + 1):
                for h in range(1, mu(a + 2) + 1):
                    for k in range(1, mu(a + 1) + 1):
                        for r in range(max(shape.s(a + 1, a), 1), r_max):
                            for s in range(max(shape.s(a + 2, a + 1), 1), r_max):
                                x1, y1 = _F(a, i, j, r + 1), _F(a + 1, h, k, s)
                                x2, y2 = _F(a, i, j, r), _F(a + 1, h, k, s + 1)
                                lhs = x1.bracket(y1) - x2.bracket(y2)
                                plan = ("sum", ((1, _comm(_sp(x1), _sp(y1))),
                                                (-1, _comm(_sp(x2), _sp(y2)))))
                                rhs = YangianExpression.zero()
                                if i == k:
                                    for q in range(1, mu(a + 1) + 1):
                                        rhs = rhs + _F(a + 1, h, q, s) * _F(a, q, j, r)
                                add("ff-adjacent-grading",
                                    {"a": a, "i": i, "j": j, "h": h, "k": k,
                                     "r": r, "s": s}, lhs, rhs, plan)

    # vanishing brackets between distant blocks / mismatched inner indices
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            for i in range(1, mu(a) + 1):
                for j in range(1, mu(a + 1) + 1):
                    for h in range(1, mu(b) + 1):
                        for k in range(1, mu(b + 1) + 1):
                            if b == a + 1 and h == j:
                                continue
                            for r in erange(a):
                                for s in erange(b):
                                    x, y = _E(a, i, j, r), _E(b, h, k, s)
                                    add("ee-vanishing",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        x.bracket(y),
                                        YangianExpression.zero(),
                                        _comm(_sp(x), _sp(y)))
            for i in range(1, mu(a + 1) + 1):
                for j in range(1, mu(a) + 1):
                    for h in range(1, mu(b + 1) + 1):
                        for k in range(1, mu(b) + 1):
                            if b == a + 1 and i == k:
                                continue
                            for r in frange(a):
                                for s in frange(b):
                                    x, y = _F(a, i, j, r), _F(b, h, k, s)
                                    add("ff-vanishing",
                                        {"a": a, "b": b, "i": i, "j": j,
                                         "h": h, "k": k, "r": r, "s": s},
                                        x.bracket(y),
                                        YangianExpression.zero(),
                                        _comm(_sp(x), _sp(y)))

    # cubic (Serre-type) relations, for neighbouring blocks only: for
    # |a - b| > 1 both inner brackets already vanish by the relations above
    for a in range(1, m + 1):
        for b in (a - 1, a + 1):
            if not 1 <= b <= m:
                continue
            for i in range(1, mu(a) + 1):
                for j in range(1, mu(a + 1) + 1):
                    for h in range(1, mu(a) + 1):
                        for k in range(1, mu(a + 1) + 1):
                            for f in range(1, mu(b) + 1):
                                for g in range(1, mu(b + 1) + 1):
                                    for r in erange(a):
                                        for s in erange(a):
                                            if s < r:
                                                continue
                                            for l in erange(b):
                                                x1 = _E(a, i, j, r)
                                                x2 = _E(a, h, k, s)
                                                y = _E(b, f, g, l)
                                                lhs = (x1.bracket(x2.bracket(y))
                                                       + x2.bracket(x1.bracket(y)))
                                                plan = ("sum", (
                                                    (1, _comm(_sp(x1), _comm(_sp(x2), _sp(y)))),
                                                    (1, _comm(_sp(x2), _comm(_sp(x1), _sp(y))))))
                                                add("eee-serre",
                                                    {"a": a, "b": b, "i": i, "j": j,
                                                     "h": h, "k": k, "f": f, "g": g,
                                                     "r": r, "s": s, "l": l},
                                                    lhs, YangianExpression.zero(), plan)
            for i in range(1, mu(a + 1) + 1):
                for j in range(1, mu(a) + 1):
                    for h in range(1, mu(a + 1) + 1):
                        for k in range(1, mu(a) + 1):
                            for f in range(1, mu(b + 1) + 1):
                                for g in range(1, mu(b) + 1):
                                    for r in frange(a):
                                        for s in frange(a):
                                            if s < r:
                                                continue
                                            for l in frange(b):
                                                x1 = _F(a, i, j, r)
                                                x2 = _F(a, h, k, s)
                                                y = _F(b, f, g, l)
                                                lhs = (x1.bracket(x2.bracket(y))
                                                       + x2.bracket(x1.bracket(y)))
                                                plan = ("sum", (
                                                    (1, _comm(_sp(x1), _comm(_sp(x2), _sp(y)))),
                                                    (1, _comm(_sp(x2), _comm(_sp(x1), _sp(y))))))
                                                add("fff-serre",
                                                    {"a": a, "b": b, "i": i, "j": j,
                                                     "h": h, "k": k, "f": f, "g": g,
                                                     "r": r, "s": s, "l": l},
                                                    lhs, YangianExpression.zero(), plan)

    out.sort(key=RelationInstance.sort_key)
    return out


def export_catalog(instances, stream):
    """Write one JSON object per line, in the catalog's stable order."""
    for inst in instances:
        stream.write(inst.to_json())
        stream.write("\n")


# ---------------------------------------------------------------------------
# formal maps


def tau_symbol(sym):
    if sym.family in ("D", "Dp"):
        return GeneratorSymbol(sym.family, sym.a, sym.b, sym.j, sym.i, sym.r)
    fam = "F" if sym.family == "E" else "E"
    return GeneratorSymbol(fam, sym.b, sym.a, sym.j, sym.i, sym.r)


def tau_map(expr, signed=True):
    """The transposition anti-automorphism: swap E and F, transpose inner
    indices, reverse every word.  With signed=True the reversal of a word
    with k odd letters picks up (-1)^{k(k-1)/2}, the sign a product of odd
    elements acquires under a super anti-automorphism."""
    out = YangianExpression.zero()
    for w, c in expr.terms.items():
        rw = tuple(tau_symbol(s) for s in reversed(w))
        if signed:
            odd = sum(symbol_parity(s) for s in w)
            if (odd * (odd - 1) // 2) % 2:
                c = -c
        out = out + YangianExpression({rw: c})
    return out


def word_reversal(expr, signed=True):
    """Reverse every word in place (no symbol renaming), with the standard
    super anti-automorphism sign.  Applied to a relation written as a
    product identity, this yields the equally valid reversed orientation
    (e.g. the two-sided series inverse)."""
    out = YangianExpression.zero()
    for w, c in expr.terms.items():
        if signed:
            odd = sum(symbol_parity(s) for s in w)
            if (odd * (odd - 1) // 2) % 2:
                c = -c
        out = out + YangianExpression({tuple(reversed(w)): c})
    return out


def instance_match_keys(inst, signed=True):
    """Canonical keys identifying a relation instance up to display
    orientation.

    A product identity can be displayed with either side's words in either
    order (the reversed orientation of an inverse identity, or a sum of
    products whose factors commute by the catalog's own mixed relations, is
    the same relation).  The transposition anti-automorphism reverses word
    order, so matching its images against a catalog requires identifying
    these orientations."""
    d = inst.lhs - inst.rhs
    variants = (d,
                word_reversal(d, signed),
                inst.lhs - word_reversal(inst.rhs, signed),
                word_reversal(inst.lhs, signed) - inst.rhs)
    return {v.canonical_key() for v in variants}


def iota_map(expr, shape_from, shape_to):
    """Degree reshuffle between two shift matrices with equal superdiagonal
    sums: E/F degrees move by the difference of the corresponding shift
    entries, diagonal symbols are untouched."""
    if shape_from.mu != shape_to.mu:
        raise PyramidError("shapes must share the same block sizes")
    n1 = shape_from.sigma.size
    for i in range(1, n1):
        if (shape_from.sigma[i, i + 1] + shape_from.sigma[i + 1, i]
                != shape_to.sigma[i, i + 1] + shape_to.sigma[i + 1, i]):
            raise PyramidError("superdiagonal sums differ; no degree reshuffle")

    def f(sym):
        if sym.family in ("D", "Dp"):
            return sym
        shift = shape_to.s(sym.a, sym.b) - shape_from.s(sym.a, sym.b)
        return sym._replace(r=sym.r + shift)

    return expr.map_symbols(f)


# ---------------------------------------------------------------------------
# truncated PBW enumeration


def graded_dimensions(generators, d_max):
    """Filtered dimensions of the free supercommutative superalgebra on a
    multiset of (degree, parity) generators: list of dim F_d for d <= d_max.
    """
    # polynomial coefficients of the graded dimension series, truncated
    poly = [0] * (d_max + 1)
    poly[0] = 1
    for deg, par in generators:
        if deg <= 0:
            raise ValueError("generator degrees must be positive")
        if par:
            factor = [0] * (d_max + 1)
            factor[0] = 1
            if deg <= d_max:
                factor[deg] = 1
            new = [0] * (d_max + 1)
            for i, c in enumerate(poly):
                if not c:
                    continue
                for jdx in range(0, d_max + 1 - i):
                    if factor[jdx]:
                        new[i + jdx] += c * factor[jdx]
            poly = new
        else:
            # multiply by 1/(1 - x^deg) truncated: running sum trick
            for d in range(deg, d_max + 1):
                poly[d] += poly[d - deg]
    dims = []
    acc = 0
    for d in range(d_max + 1):
        acc += poly[d]
        dims.append(acc)
    return dims


def pbw_generator_degrees(shape):
    """(degree, parity) for every basis generator of the truncated algebra."""
    return [(sym.r, symbol_parity(sym)) for sym in shape.generator_symbols()]


def pbw_dimension(spec, mu, d):
    """Number of ordered supermonomials of filtered degree <= d in the
    basis generators of the level-`spec.level` truncation."""
    shape = AdmissibleShape(spec.sigma, mu, level=spec.level)
    return graded_dimensions(pbw_generator_degrees(shape), d)[d]


# ---------------------------------------------------------------------------
# one-column comultiplications (formal side)


class TensorExpression:
    """Formal sum  sum_c  main_word (x) aux_word  with scalar coefficients.

    main words are tuples of GeneratorSymbols read in the smaller algebra;
    aux words are tuples of (k, j) pairs standing for the shifted matrix
    units in the auxiliary even block.  The auxiliary factor is purely
    even, so the two slots commute without signs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[key] = Fraction(c)

    @staticmethod
    def zero():
        return TensorExpression()

    @staticmethod
    def of(main, aux_word=()):
        """main: YangianExpression; aux_word: tuple of (k, j) pairs."""
        out = TensorExpression()
        for w, c in main.terms.items():
            out.terms[(w, tuple(aux_word))] = c
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorExpression) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        res = TensorExpression()
        res.terms = out
        return res

    def __neg__(self):
        res = TensorExpression()
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def serialize(self):
        items = []
        for (mw, aw) in sorted(self.terms, key=lambda k: (_word_key(k[0]), k[1])):
            items.append({
                "main": [list(s) for s in mw],
                "aux": [list(p) for p in aw],
                "coeff": str(self.terms[(mw, aw)]),
            })
        return items


def reduced_shift(sigma, mu, side):
    """The shift matrix of the one-column-smaller algebra: the boundary
    superdiagonal entry drops by one on the side being removed."""
    shape = AdmissibleShape(sigma, mu)
    if mu != tuple(sigma.minimal_admissible_shape()):
        raise PyramidError("one-column maps need the minimal shape")
    n1 = sigma.size
    beta = mu[-1]
    cut = n1 - beta
    rows = []
    for i in range(1, n1 + 1):
        row = []
        for j in range(1, n1 + 1):
            v = sigma[i, j]
            if side == "R" and i <= cut < j:
                v -= 1
            elif side == "L" and j <= cut < i:
                v -= 1
            row.append(v)
        rows.append(row)
    if side == "R" and sigma[cut, cut + 1] == 0:
        raise PyramidError("right-hand one-column map undefined: boundary shift is zero")
    if side == "L" and sigma[cut + 1, cut] == 0:
        raise PyramidError("left-hand one-column map undefined: boundary shift is zero")
    from .pyramid import ShiftMatrix
    return ShiftMatrix(rows)


def baby_comultiplication(side, sigma, mu, gen):
    """Image of an adjacent generator under the one-column comultiplication.

    The main slot carries same-named generators of the smaller algebra; the
    aux slot carries the shifted matrix units of the even beta-block.  Only
    the block touching the removed column picks up a correction term."""
    reduced_shift(sigma, mu, side)  # validates side condition and minimality
    shape = AdmissibleShape(sigma, mu)
    m = shape.m
    beta = mu[-1]
    if gen.family == "D":
        a, i, j, r = gen.a, gen.i, gen.j, gen.r
        flat = TensorExpression.of(_D(a, i, j, r))
        if a == m + 1 and r >= 1:
            for k in range(1, beta + 1):
                if side == "R":
                    flat = flat - TensorExpression.of(_D(a, i, k, r - 1), ((k, j),))
                else:
                    flat = flat - TensorExpression.of(_D(a, k, j, r - 1), ((i, k),))
        return flat
    if gen.family == "E":
        if gen.b != gen.a + 1:
            raise PyramidError("only adjacent generators have displayed images")
        a, i, j, r = gen.a, gen.i, gen.j, gen.r
        flat = TensorExpression.of(_E(a, i, j, r))
        if side == "R" and a == m:
            for k in range(1, beta + 1):
                flat = flat - TensorExpression.of(_E(a, i, k, r - 1), ((k, j),))
        return flat
    if gen.family == "F":
        if gen.a != gen.b + 1:
            raise PyramidError("only adjacent generators have displayed images")
        a, i, j, r = gen.b, gen.i, gen.j, gen.r
        flat = TensorExpression.of(_F(a, i, j, r))
        if side == "L" and a == m:
            for k in range(1, beta + 1):
                flat = flat - TensorExpression.of(_F(a, k, j, r - 1), ((i, k),))
        return flat
    raise PyramidError("no displayed image for family %r" % (gen.family,))
