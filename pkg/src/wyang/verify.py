"""Theorem harness: evaluates the formal presentation inside U(p) and runs
the check suites (defining relations, m-invariance, truncation, dimensions,
one-column comultiplications, row-shift independence).

A failure always carries a replayable counterexample: the serialized
relation instance together with both evaluated sides.
"""

import json
import multiprocessing
import time
from fractions import Fraction

from .algebra import EnvelopingElement
from .pyramid import SignedPyramid, PyramidError
from .wsuper import WModel, ColumnRemoval, TensorElement
from .yangian import (AdmissibleShape, relation_catalog, GeneratorSymbol,
                      symbol_parity, graded_dimensions, pbw_generator_degrees,
                      baby_comultiplication, YangianExpression)


class UnboundSymbolError(KeyError):
    def __init__(self, sym):
        super().__init__(sym)
        self.symbol = sym


class CheckReport:
    """Outcome of one check suite, JSON-serializable."""

    def __init__(self, check_id):
        self.check_id = check_id
        self.instances = 0
        self.skipped = 0
        self.failures = []
        self.millis = 0
        self.notes = []

    @property
    def status(self):
        if self.failures:
            return "fail"
        if self.instances == 0 and self.skipped:
            return "skipped"
        return "pass"

    def passed(self):
        return self.status == "pass"

    def to_dict(self):
        return {
            "id": self.check_id,
            "status": self.status,
            "instances": self.instances,
            "skipped": self.skipped,
            "failures": self.failures,
            "notes": self.notes,
            "millis": self.millis,
        }

    def __repr__(self):
        return "CheckReport(%s: %s, %d instances, %d skipped, %d failures)" % (
            self.check_id, self.status, self.instances, self.skipped,
            len(self.failures))


class Environment:
    """Lazy generator-image table: maps presentation symbols to their
    invariant images in U(p), with word-level product memoization."""

    def __init__(self, model, mu):
        self.model = model
        self.shape = AdmissibleShape(model.sigma, mu, level=model.ell)
        self.family = model.parabolic(mu, model.ell + 2)
        self.alg = model.alg
        self._words = {}
        self._words_weight = 0

    def lookup(self, sym):
        if not self.shape.in_window(sym):
            raise UnboundSymbolError(sym)
        fam = self.family
        if sym.family == "D":
            return fam.D(sym.a, sym.i, sym.j, sym.r)
        if sym.family == "Dp":
            return fam.Dprime(sym.a, sym.i, sym.j, sym.r)
        if sym.family == "E":
            if sym.b == sym.a + 1:
                return fam.E(sym.a, sym.i, sym.j, sym.r)
            return fam.E_composite(sym.a, sym.b, sym.i, sym.j, sym.r)
        if sym.family == "F":
            if sym.a == sym.b + 1:
                return fam.F(sym.b, sym.i, sym.j, sym.r)
            return fam.F_composite(sym.a, sym.b, sym.i, sym.j, sym.r)
        raise UnboundSymbolError(sym)

    def _word_value(self, w):
        if not w:
            return self.alg.one()
        v = self._words.get(w)
        if v is None:
            v = self._word_value(w[:-1]) * self.lookup(w[-1])
            # budget the memo by total stored terms, not entry count:
            # high-degree values dwarf low-degree ones
            if self._words_weight > 2000000:
                self._words.clear()
                self._words_weight = 0
            self._words[w] = v
            self._words_weight += len(v.terms)
        return v

    def evaluate(self, expr):
        out = self.alg.zero()
        for w, c in expr.terms.items():
            if len(w) > 2:
                # memoize only the reusable short prefixes; full-length
                # values are one-shot and would crowd out the memo
                v = self._word_value(w[:-1]) * self.lookup(w[-1])
            else:
                v = self._word_value(w)
            out = out + v * c
        return out

    def evaluate_plan(self, plan):
        """Evaluate a bracket-structured recipe; nested commutators keep the
        intermediates far smaller than expanding into products first."""
        kind = plan[0]
        if kind == "sym":
            return self.lookup(plan[1])
        if kind == "comm":
            return self.evaluate_plan(plan[1]).bracket(self.evaluate_plan(plan[2]))
        if kind == "sum":
            out = self.alg.zero()
            for c, sub in plan[1]:
                out = out + self.evaluate_plan(sub) * c
            return out
        raise ValueError("unknown plan node %r" % (plan[0],))


def evaluate(expr, env):
    """Homomorphic evaluation of a formal expression in the image algebra."""
    return env.evaluate(expr)


def _counterexample(inst, lhs_val, rhs_val):
    return {
        "instance": json.loads(inst.to_json()),
        "lhs_value": lhs_val.serialize(),
        "rhs_value": rhs_val.serialize(),
    }


def _lhs_value(env, inst):
    if inst.plan is not None:
        try:
            return env.evaluate_plan(inst.plan)
        except UnboundSymbolError:
            # the recipe names a symbol whose occurrences cancel in the
            # expanded display; only the expansion is evaluable then
            pass
    return env.evaluate(inst.lhs)


def _run_relation_instances(env, instances, report):
    for inst in instances:
        if inst.flagged:
            report.skipped += 1
            continue
        lhs = _lhs_value(env, inst)
        rhs = env.evaluate(inst.rhs)
        report.instances += 1
        if lhs != rhs:
            report.failures.append(_counterexample(inst, lhs, rhs))


# -- multiprocessing support for the relation sweep -------------------------

def _relation_worker(args):
    pyramid_dict, mu, r_max, lo, hi = args
    pyramid = SignedPyramid.from_dict(pyramid_dict)
    model = WModel(pyramid)
    env = Environment(model, mu)
    shape = env.shape
    instances = relation_catalog(shape, r_max)[lo:hi]
    rep = CheckReport("chunk")
    _run_relation_instances(env, instances, rep)
    return rep.instances, rep.skipped, rep.failures


def _default_mu(model):
    return model.sigma.minimal_admissible_shape()


def check_relations(pyramid, mu=None, r_max=None, jobs=1):
    """Evaluate every catalog instance in U(p); out-of-window instances are
    reported as skipped."""
    t0 = time.time()
    model = WModel(pyramid)
    mu = tuple(mu) if mu else _default_mu(model)
    r_max = model.ell + 2 if r_max is None else r_max
    report = CheckReport("relations")
    env = Environment(model, mu)
    instances = relation_catalog(env.shape, r_max)
    if jobs > 1:
        total = len(instances)
        step = (total + jobs - 1) // jobs
        argsets = [(pyramid.to_dict(), mu, r_max, lo, min(lo + step, total))
                   for lo in range(0, total, step)]
        with multiprocessing.Pool(jobs) as pool:
            for cnt, skp, fails in pool.map(_relation_worker, argsets):
                report.instances += cnt
                report.skipped += skp
                report.failures.extend(fails)
    else:
        _run_relation_instances(env, instances, report)
    report.millis = int((time.time() - t0) * 1000)
    return report


def check_main_theorem(pyramid, mu=None, r_max=None, jobs=1):
    """The flagship suite: m-invariance and filtered degree of every
    generator image, the full relation sweep, and truncation vanishing."""
    t0 = time.time()
    model = WModel(pyramid)
    mu = tuple(mu) if mu else _default_mu(model)
    r_max = model.ell + 2 if r_max is None else r_max
    report = CheckReport("main-theorem")
    env = Environment(model, mu)
    shape = env.shape

    # (a) + (d): images of the truncated-basis generators
    for sym in shape.generator_symbols():
        img = env.lookup(sym)
        report.instances += 1
        if not model.is_m_invariant(img):
            report.failures.append({
                "part": "m-invariance", "symbol": list(sym),
                "value": img.serialize()})
        if not img.is_zero() and img.kazhdan_degree() > sym.r:
            report.failures.append({
                "part": "filtered-degree", "symbol": list(sym),
                "degree": img.kazhdan_degree(), "value": img.serialize()})

    # (c): the truncation ideal vanishes identically in the image
    p1 = shape.p(1)
    for r in range(p1 + 1, r_max + 1):
        img = env.family.D(1, 1, 1, r)
        report.instances += 1
        if not img.is_zero():
            report.failures.append({
                "part": "truncation", "r": r, "value": img.serialize()})

    # (b): the relation sweep
    rel = check_relations(pyramid, mu, r_max, jobs=jobs)
    report.instances += rel.instances
    report.skipped += rel.skipped
    for f in rel.failures:
        f = dict(f)
        f["part"] = "relation"
        report.failures.append(f)

    report.millis = int((time.time() - t0) * 1000)
    return report


def check_dimensions(pyramid, d_max=6):
    """Filtered dimension of the truncated presentation (PBW count) against
    the free supercommutative count over the centralizer basis."""
    t0 = time.time()
    model = WModel(pyramid)
    mu = _default_mu(model)
    shape = AdmissibleShape(model.sigma, mu, level=model.ell)
    report = CheckReport("dimensions")
    left = graded_dimensions(pbw_generator_degrees(shape), d_max)
    cgens = [(r, 1 if (i == 1) != (j == 1) else 0)
             for _, i, j, r in pyramid.centralizer_basis()]
    right = graded_dimensions(cgens, d_max)
    for d in range(d_max + 1):
        report.instances += 1
        if left[d] != right[d]:
            report.failures.append({
                "d": d, "presentation": left[d], "centralizer": right[d]})
    report.notes.append({"dims": left})
    report.millis = int((time.time() - t0) * 1000)
    return report


def _evaluate_tensor(texpr, dot_env, removal):
    out = TensorElement.zero(removal.dot_model.alg, removal.aux)
    for (mw, aw), c in texpr.terms.items():
        main = dot_env._word_value(mw) * c
        aux = removal.aux.one()
        for (k, j) in aw:
            aux = aux * removal.aux_tilde(k, j)
        out = out + TensorElement.of(main, aux)
    return out


def check_baby(pyramid, side, r_max=None):
    """One-column comultiplication suite: the splitting map on every named
    generator matches the formal comultiplication image, the one-column
    recursions hold, the counit retracts, and the composite images match."""
    t0 = time.time()
    model = WModel(pyramid)
    mu = _default_mu(model)
    r_max = model.ell + 2 if r_max is None else r_max
    report = CheckReport("baby-%s" % side)
    try:
        removal = ColumnRemoval(model, mu, r_max, side)
    except ValueError as exc:
        report.skipped += 1
        report.notes.append({"reason": str(exc)})
        report.millis = int((time.time() - t0) * 1000)
        return report

    dot_env = Environment(removal.dot_model, mu)
    fam = removal.family
    sigma = model.sigma

    # psi on each named generator vs. the formal comultiplication image
    for sym in _adjacent_symbols(fam, removal.m1, r_max):
        texpr = baby_comultiplication(side, sigma, mu, sym)
        want = _evaluate_tensor(texpr, dot_env, removal)
        if sym.family == "D":
            big = fam.D(sym.a, sym.i, sym.j, sym.r)
        elif sym.family == "E":
            big = fam.E(sym.a, sym.i, sym.j, sym.r)
        else:
            big = fam.F(sym.b, sym.i, sym.j, sym.r)
        got = removal.psi(big)
        report.instances += 1
        if got != want:
            report.failures.append({
                "part": "comultiplication", "symbol": list(sym)})

    for tag, bad in (("recursion", removal.check_recursions(r_max)),
                     ("counit", removal.check_counit_retraction(r_max)),
                     ("composite", removal.check_composites(r_max))):
        report.instances += 1
        if bad:
            report.failures.append({"part": tag, "cases": [list(map(str, b)) for b in bad]})

    report.millis = int((time.time() - t0) * 1000)
    return report


def _adjacent_symbols(fam, m1, r_max):
    out = []
    for a in range(1, m1 + 1):
        for i in range(1, fam.mu[a - 1] + 1):
            for j in range(1, fam.mu[a - 1] + 1):
                for r in range(1, r_max + 1):
                    out.append(GeneratorSymbol("D", a, a, i, j, r))
    for a in range(1, m1):
        for i in range(1, fam.mu[a - 1] + 1):
            for j in range(1, fam.mu[a] + 1):
                for r in range(fam.window_start("E", a), r_max + 1):
                    out.append(GeneratorSymbol("E", a, a + 1, i, j, r))
        for i in range(1, fam.mu[a] + 1):
            for j in range(1, fam.mu[a - 1] + 1):
                for r in range(fam.window_start("F", a), r_max + 1):
                    out.append(GeneratorSymbol("F", a + 1, a, i, j, r))
    return out


def check_shift_independence(pyramid, shifted, d_max=6):
    """The combinatorial halves of row-shift independence: equal
    superdiagonal sums and equal filtered dimension counts."""
    t0 = time.time()
    rows_a = sorted((sign, length) for sign, length, _ in pyramid.rows)
    rows_b = sorted((sign, length) for sign, length, _ in shifted.rows)
    if rows_a != rows_b:
        raise PyramidError("not a horizontal row-shift pair")
    spec_a = pyramid.to_shift_and_level()
    spec_b = shifted.to_shift_and_level()
    if spec_a.level != spec_b.level:
        raise PyramidError("row-shift pair must share the level")
    report = CheckReport("shift-independence")
    n1 = spec_a.sigma.size
    for i in range(1, n1):
        report.instances += 1
        sa = spec_a.sigma[i, i + 1] + spec_a.sigma[i + 1, i]
        sb = spec_b.sigma[i, i + 1] + spec_b.sigma[i + 1, i]
        if sa != sb:
            report.failures.append({"part": "superdiagonal-sum", "i": i,
                                    "left": sa, "right": sb})
    mu_a = spec_a.sigma.minimal_admissible_shape()
    mu_b = spec_b.sigma.minimal_admissible_shape()
    da = graded_dimensions(pbw_generator_degrees(
        AdmissibleShape(spec_a.sigma, mu_a, level=spec_a.level)), d_max)
    db = graded_dimensions(pbw_generator_degrees(
        AdmissibleShape(spec_b.sigma, mu_b, level=spec_b.level)), d_max)
    for d in range(d_max + 1):
        report.instances += 1
        if da[d] != db[d]:
            report.failures.append({"part": "dimension", "d": d,
                                    "left": da[d], "right": db[d]})
    report.millis = int((time.time() - t0) * 1000)
    return report


def sabotage_selftest(pyramid, mu=None, r_max=3):
    """Harness self-test: corrupt one relation and confirm the sweep fails
    with a counterexample."""
    t0 = time.time()
    model = WModel(pyramid)
    mu = tuple(mu) if mu else _default_mu(model)
    env = Environment(model, mu)
    instances = relation_catalog(env.shape, r_max)
    report = CheckReport("sabotage-selftest")
    target = None
    for inst in instances:
        if inst.rel_id == "ef-cartan" and not inst.flagged and not inst.rhs.is_zero():
            target = inst
            break
    if target is None:
        raise PyramidError("no corruptible instance found")
    target.rhs = -target.rhs  # flip the sign: the relation must now fail
    _run_relation_instances(env, [target], report)
    report.millis = int((time.time() - t0) * 1000)
    return report


def replay_counterexample(pyramid, mu, counterexample):
    """Re-evaluate a serialized counterexample; returns (lhs, rhs) freshly
    computed, for bit-exact comparison with the recorded values."""
    model = WModel(pyramid)
    env = Environment(model, tuple(mu))
    inst = counterexample["instance"]
    lhs = env.evaluate(YangianExpression.deserialize(inst["lhs"]))
    rhs = env.evaluate(YangianExpression.deserialize(inst["rhs"]))
    return lhs, rhs
