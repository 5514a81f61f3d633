"""Built-in corpus of modules with hand-derived values, and the harness that checks them.

Each ``*.json`` file next to this module holds one entry: a job, the expected
values with a provenance note each, and the tags of the checks it takes part in.
``verify_all`` runs every tagged check and reports computed against expected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from ..bourbaki import generic_bourbaki, verify_bourbaki, _mu_ideal
from ..divisors import (check_norm_isomorphic, cokernel_presentation, det0, det0_via_wedge, is_free_local,
                        is_ideal_module, nonfree_locus_ideal, nonfree_locus_matches, norm_representative)
from ..errors import DivModError
from ..groebner import Ideal, dimension, format_ideal, height, height_and_grade, ideal_equal
from ..jobs import parse_job
from ..matrix import evaluate_at_origin, minors, scalar_rank
from ..presmod import (EmbeddedModule, exterior_power, fitting_ideal, image_in_free, is_pd_at_most_one,
                       mu_local, presentation_of_embedded, quotient_by_generators, theta_image)
from ..rees import analytic_spread, classify_module, fiber_cone, rees_presentation, reduction_number
from ..ring import GREVLEX

SEEDS_COMPARED = 2


@dataclass
class CorpusEntry:
    name: str
    description: str
    job: dict
    expected: dict
    provenance: dict
    tags: list

    @classmethod
    def from_json(cls, obj):
        return cls(obj["name"], obj.get("description", ""), obj["job"], obj["expected"],
                   obj.get("provenance", {}), list(obj.get("tags", [])))


@dataclass
class Check:
    entry: str
    tag: str
    name: str
    passed: bool
    computed: object = None
    expected: object = None

    def to_dict(self):
        return {"entry": self.entry, "tag": self.tag, "check": self.name, "pass": self.passed,
                "computed": self.computed, "expected": self.expected}


@dataclass
class Summary:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return sum(c.passed for c in self.checks)

    @property
    def failed(self):
        return len(self.checks) - self.passed

    @property
    def ok(self):
        return self.failed == 0

    def by_tag(self):
        out = {}
        for c in self.checks:
            t = out.setdefault(c.tag, [0, 0])
            t[0 if c.passed else 1] += 1
        return dict(sorted(out.items()))

    def to_dict(self):
        return {"passed": self.passed, "failed": self.failed,
                "tags": {k: {"passed": v[0], "failed": v[1]} for k, v in self.by_tag().items()},
                "checks": [c.to_dict() for c in self.checks]}


def load_corpus():
    """All shipped entries, sorted by file name."""
    files = sorted((p for p in resources.files(__name__).iterdir() if p.name.endswith(".json")),
                   key=lambda p: p.name)
    return [CorpusEntry.from_json(json.loads(p.read_text())) for p in files]


def gb_strings(i: Ideal):
    return [str(g) for g in _canon(i)]


def _canon(i: Ideal):
    return i.groebner(GREVLEX)


class _Run:
    """Checks for one entry; every public check method is named after its tag."""

    def __init__(self, entry: CorpusEntry, seed: int):
        self.entry = entry
        self.seed = seed
        self.job = parse_job(entry.job)
        self.E = self.job.require_embedded("the corpus harness")
        self.M = presentation_of_embedded(self.E)
        self.exp = entry.expected
        self.e = self.E.ambient_rank
        self.out = []

    def record(self, tag, name, passed, computed=None, expected=None):
        self.out.append(Check(self.entry.name, tag, name, bool(passed), computed, expected))

    def compare(self, tag, name, computed, key=None):
        """Record equality against the expected value under ``key`` (if the entry has one)."""
        key = key or name
        if key not in self.exp:
            return
        self.record(tag, name, computed == self.exp[key], computed, self.exp[key])

    @property
    def free(self):
        return is_free_local(self.E)

    # -- divisors ----------------------------------------------------------

    def det0_cokernel(self, tag):
        d = det0(self.E)
        f0 = fitting_ideal(cokernel_presentation(self.E), 0)
        self.record(tag, "det0 = F_0(G/E)", ideal_equal(d, f0), format_ideal(f0), format_ideal(d))
        self.record(tag, "det0 wedge path = minors path", ideal_equal(d, det0_via_wedge(self.E)))
        self.compare(tag, "det0", gb_strings(d))

    def norm_inclusion(self, tag):
        cert = norm_representative(self.M, self.seed)
        fe = fitting_ideal(self.M, self.e)
        self.record(tag, "I(rho) in F_e(E)", cert.ideal.issubset(fe), format_ideal(cert.ideal), format_ideal(fe))
        self.compare(tag, "norm_ideal", gb_strings(cert.ideal))

    def norm_equality_pd1(self, tag):
        cert = norm_representative(self.M, self.seed)
        pd1 = is_pd_at_most_one(self.M)
        self.compare(tag, "pd_one", pd1)
        if pd1:
            fe = fitting_ideal(self.M, self.e)
            self.record(tag, "I(rho) = F_e(E) = F_0(G/E)",
                        ideal_equal(cert.ideal, fe) and ideal_equal(fe, det0(self.E)), format_ideal(cert.ideal),
                        format_ideal(fe))

    def norm_isomorphism(self, tag):
        self.record(tag, "det0 isomorphic to the norm representative", check_norm_isomorphic(self.E, self.seed))

    def fitting_chain(self, tag):
        n = self.M.n
        fits = [fitting_ideal(self.M, i) for i in range(n + 1)]
        self.compare(tag, "fitting", {str(i): gb_strings(f) for i, f in enumerate(fits)})
        below = all(f.is_zero() for f in fits[:self.M.rank])
        chain = all(fits[i].issubset(fits[i + 1]) for i in range(n))
        self.record(tag, "F_i = 0 below the rank", below)
        self.record(tag, "F_i ascending up to (1)", chain and fits[n].is_unit())
        self.compare(tag, "rank", self.M.rank)

    def fitting_independence(self, tag):
        cols = self.E.columns()
        extra = [a + b for a, b in zip(cols[0], cols[-1])]
        E2 = EmbeddedModule.from_columns(self.E.ring, cols + [extra], self.e)
        M2 = presentation_of_embedded(E2)
        same = all(ideal_equal(fitting_ideal(self.M, i), fitting_ideal(M2, i)) for i in range(self.M.n + 2))
        self.record(tag, "Fitting ideals unchanged by a redundant generator", same)

    def freeness(self, tag):
        free = self.free
        mu = mu_local(self.M)
        self.compare(tag, "mu", mu)
        self.compare(tag, "free_local", free)
        self.record(tag, "free iff mu = rank", free == (mu == self.M.rank), mu, self.M.rank)
        if not free or "ideal_module" in self.exp:
            self.compare(tag, "ideal_module", is_ideal_module(self.E))

    def nonfree_locus(self, tag):
        loc = nonfree_locus_ideal(self.E)
        self.compare(tag, "nonfree_locus", gb_strings(loc))
        self.record(tag, "V(locus) = V(F_e(E))", nonfree_locus_matches(self.E, self.M))

    def theta(self, tag):
        phi = self.M.phi
        if phi.ncols and phi.nrows >= phi.ncols:
            im = theta_image(phi)
            self.record(tag, "theta image = maximal minors of phi", ideal_equal(im, Ideal(phi.ring, minors(phi, phi.ncols))))
        self.record(tag, "theta image of A^T = det0", ideal_equal(theta_image(self.E.A.transpose()), det0(self.E)))

    def zak(self, tag):
        from ..divisors import zak_report
        rep = zak_report(self.E, self.seed)
        got = {k: rep[k] for k in ("spread_det0", "ht_F0", "ht_Fe_E1", "ht_Fe")}
        self.compare(tag, "zak", got)
        self.record(tag, "l(det0) >= ht F_0(G/E)", rep["zak"], rep["spread_det0"], rep["ht_F0"])
        self.record(tag, "l(det0) >= ht F_e(E1)", rep["zak2"], rep["spread_det0"], rep["ht_Fe_E1"])
        if rep["pd_one"]:
            self.record(tag, "l(det0) >= ht F_e(E) (pd 1)", rep["zak3"], rep["spread_det0"], rep["ht_Fe"])

    def spread_exterior(self, tag):
        top = image_in_free(exterior_power(self.M, self.e))
        a = analytic_spread(top)
        b = analytic_spread(EmbeddedModule.from_ideal(det0(self.E)))
        self.record(tag, "l(top exterior power) = l(det0)", a == b, a, b)

    # -- bourbaki ----------------------------------------------------------

    def _bourbaki(self, seed):
        key = ("bourbaki", seed)
        if key not in self.__dict__:
            self.__dict__[key] = generic_bourbaki(self.E, seed=seed)
        return self.__dict__[key]

    def bourbaki(self, tag):
        r = self._bourbaki(self.seed)
        self.compare(tag, "bourbaki_ideal", gb_strings(r.ideal))
        for k, v in sorted(r.certificates.items()):
            self.record(tag, f"certificate {k}", v is not False, v)
        rep = verify_bourbaki(r, self.E)
        self.record(tag, "mu(Ebar) = mu(E) - e + 1", rep["mu"]["pass"], rep["mu"]["computed"], rep["mu"]["expected"])
        self.record(tag, "Ebar has rank 1", rep["rank_one"]["pass"])
        if rep["pd"] is not None:
            self.record(tag, "pd(I) = pd(E) = 1", rep["pd"]["pass"])

    def bourbaki_spread(self, tag):
        rep = verify_bourbaki(self._bourbaki(self.seed), self.E)
        s = rep["spread"]
        self.record(tag, "l(E) = l(I) + e - 1", s["pass"], s["computed"], s["expected"])

    def bourbaki_seeds(self, tag):
        rs = [self._bourbaki(self.seed + 101 * k) for k in range(SEEDS_COMPARED)]
        inv = []
        for r in rs:
            degs = sorted(g.total_degree() for g in r.ideal.groebner())
            inv.append((_mu_ideal(r.ideal), height(r.ideal), degs))
        self.record(tag, "mu, height and basis degrees agree across seeds", all(x == inv[0] for x in inv),
                    [list(map(str, x)) for x in inv])
        f1 = [fitting_ideal(r.ebar, 1) for r in rs]
        self.record(tag, "F_1(Ebar) agrees across seeds", all(ideal_equal(f, f1[0]) for f in f1))

    def norm_bourbaki_pd1(self, tag):
        if not is_pd_at_most_one(self.M):
            return
        r = self._bourbaki(self.seed)
        cert = norm_representative(r.presentation, self.seed)
        fe = fitting_ideal(r.presentation, self.e)
        self.record(tag, "I(rho) = F_e(E'') for the Bourbaki generators", ideal_equal(cert.ideal, fe),
                    format_ideal(cert.ideal), format_ideal(fe))

    # -- rees --------------------------------------------------------------

    def deviation_chain(self, tag):
        c = classify_module(self.E)
        self.record(tag, "mu >= l >= ht F_e + e - 1", c.mu >= c.spread >= c.ht + self.e - 1,
                    [c.mu, c.spread, c.ht + self.e - 1])

    def classify(self, tag):
        self.compare(tag, "classify", classify_module(self.E).to_dict())
        fc = fiber_cone(self.E)
        self.compare(tag, "spread", fc.dimension)
        self.compare(tag, "fiber_ideal", gb_strings(fc.ideal))
        if "rees_K" in self.exp:
            self.compare(tag, "rees_K", gb_strings(rees_presentation(self.E).K))

    def mu_e_plus_one(self, tag):
        c = classify_module(self.E)
        if c.mu != self.e + 1:
            return
        r = self._bourbaki(self.seed)
        I = r.ideal
        spread_i = analytic_spread(EmbeddedModule.from_ideal(I))
        ht_i, grade_i = height_and_grade(I)
        self.record(tag, "principal class with grade = ht = 2", c.principal_class and c.grade == c.ht == 2)
        self.record(tag, "mu(I) = l(I) = ht(I) = 2", _mu_ideal(I) == spread_i == ht_i == grade_i == 2,
                    [_mu_ideal(I), spread_i, ht_i])

    def height_bound_pd1(self, tag):
        if is_pd_at_most_one(self.M) and not self.free:
            h = height(fitting_ideal(self.M, self.e))
            self.record(tag, "ht F_e(E) <= e + 1", h <= self.e + 1, h, self.e + 1)

    def base_change(self, tag):
        ring = self.E.ring
        (w,) = ring.fresh_names("w", 1)
        big = ring.extend([w])
        Ew = self.E.to_ring(big)
        self.record(tag, "det0(E[w]) = det0(E)[w]", ideal_equal(det0(Ew), det0(self.E).to_ring(big)))

    def _reductions(self):
        default = [{"u": list(range(self.E.ngens)), "r": 0}]
        return self.exp.get("reductions", default)

    def reduction_number(self, tag):
        rmax = self.job.options["rmax"]
        for red in self._reductions():
            out = reduction_number(red["u"], self.E, rmax)
            self.record(tag, f"r_U(E) for U = {red['u']}", out.r == red["r"], out.r, red["r"])

    def reduction_mu_split(self, tag):
        for red in self._reductions():
            U = self.E.select(red["u"])
            mu_u = mu_local(presentation_of_embedded(U))
            mu_q = mu_local(quotient_by_generators(self.M, red["u"]))
            mu_e = mu_local(self.M)
            self.record(tag, f"mu(E) = mu(U) + mu(E/U) for U = {red['u']}", mu_e == mu_u + mu_q,
                        [mu_u, mu_q], mu_e)
            if "mu_u" in red:
                self.record(tag, f"mu(U), mu(E/U) for U = {red['u']}", [mu_u, mu_q] == [red["mu_u"], red["mu_quotient"]],
                            [mu_u, mu_q], [red["mu_u"], red["mu_quotient"]])

    def reduction_not_in_mE(self, tag):
        F = self.E.ring.field
        rel = [list(c) for c in zip(*evaluate_at_origin(self.M.phi))] if self.M.phi.ncols else []
        base = scalar_rank(rel, F) if rel else 0
        for red in self._reductions():
            unit = [[F.coerce(int(i == j)) for i in range(self.M.n)] for j in red["u"]]
            grows = scalar_rank(rel + unit, F) > base
            self.record(tag, f"U = {red['u']} not inside mE", grows)

    def reduction_mu_spread(self, tag):
        spread = analytic_spread(self.E)
        for red in self._reductions():
            mu_u = mu_local(presentation_of_embedded(self.E.select(red["u"])))
            self.record(tag, f"mu(U) >= l(E) for U = {red['u']}", mu_u >= spread, mu_u, spread)
            if red.get("minimal"):
                self.record(tag, f"mu(U) = l(E) for minimal U = {red['u']}", mu_u == spread, mu_u, spread)

    def reduction_fitting_pd1(self, tag):
        if not is_pd_at_most_one(self.M):
            return
        rmax = self.job.options["rmax"]
        for red in self._reductions():
            if "fitting_r" not in red:
                continue
            U = self.E.select(red["u"])
            MU = presentation_of_embedded(U)
            fu = EmbeddedModule.from_ideal(Ideal(U.ring, _canon(fitting_ideal(MU, self.e))))
            fe = EmbeddedModule.from_ideal(Ideal(U.ring, _canon(fitting_ideal(self.M, self.e))))
            out = reduction_number(fu, fe, rmax)
            mod = reduction_number(red["u"], self.E, rmax)
            self.record(tag, f"F_e(U) reduction of F_e(E) with the same number, U = {red['u']}",
                        out.r == red["fitting_r"] == mod.r, out.r, red["fitting_r"])

    def dimension_oracle(self, tag):
        ideals = [det0(self.E)] + [fitting_ideal(self.M, i) for i in range(self.M.n + 1)]
        ideals.append(fiber_cone(self.E).ideal)
        ok = True
        for i in ideals:
            gb = i.groebner()
            if any(g.is_constant() for g in gb):
                continue
            leads = [g.lead_monomial() for g in gb]
            if dimension(i) != _brute_force_dimension(leads, i.ring.ngens):
                ok = False
        self.record(tag, "dimension = brute-force independent-set size", ok)


def _brute_force_dimension(leads, nvars):
    from itertools import combinations
    supports = [frozenset(k for k, a in enumerate(e) if a) for e in leads]
    for size in range(nvars, -1, -1):
        for X in combinations(range(nvars), size):
            if not any(s <= set(X) for s in supports):
                return size
    return 0


def run_entry(entry: CorpusEntry, seed: int = 0, tag: str = None):
    run = _Run(entry, seed)
    for t in entry.tags:
        if tag is not None and t != tag:
            continue
        method = getattr(run, t.replace("-", "_"), None)
        if method is None:
            run.record(t, "unknown tag", False)
            continue
        try:
            method(t)
        except DivModError as exc:
            run.record(t, f"raised {type(exc).__name__}", False, str(exc))
    return run.out


def verify_all(filter_tag: str = None, seed: int = 0, entries=None) -> Summary:
    """Run every entry (or those carrying ``filter_tag``) and collect the checks in order."""
    entries = load_corpus() if entries is None else entries
    summary = Summary()
    for entry in entries:
        if filter_tag is not None and filter_tag not in entry.tags:
            continue
        summary.checks.extend(run_entry(entry, seed, filter_tag))
    return summary


__all__ = ["CorpusEntry", "Check", "Summary", "load_corpus", "verify_all", "run_entry", "gb_strings"]
