"""Built-in verification battery: every headline value recomputed from scratch.

Each check recomputes an exact quantity two independent ways (enumeration vs
closed form, bound vs witness, implementation vs classification) and reports
one pass/fail line. ``quick`` keeps the per-family budget small so the whole
battery stays under a few seconds; the full battery sweeps all 512 digraphs
on three labeled vertices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from . import kernels
from .bounds import entropy_report, fix_bounds_report
from .canonical import (
    absolute_minrank_bounds,
    canonicalize,
    chain_bound,
    independent_set_bound,
    minrank_classify,
)
from .constructions import (
    canonical_upper_witness,
    conjunctive,
    conjunctive_rank,
    loopfull_maxfix,
    maxper_witness,
    maxrank_witness,
    modular_complete,
    nilpotent_class_two,
    packing_plus_one_witness,
    star_witness,
)
from .digraph import Digraph, fingerprint, structure_stats
from .enumeration import enumerate_stats, family_size, univariate_baseline
from .fds import interaction_graph, nilpotency_class, periodic_rank, rank
from .invariants import blowup, cycle_packing_number, max_cycle_cover, max_independent_arcs
from . import fixtures as fx


@dataclass
class CheckResult:
    name: str
    passed: bool
    expected: str
    actual: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name}: expected {self.expected}; actual {self.actual}: "
            f"{verdict} ({self.seconds:.2f}s)"
        )


def all_digraphs(n: int) -> list[Digraph]:
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
    out = []
    for bits in range(1 << len(pairs)):
        arcs = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
        out.append(Digraph(n, arcs))
    return out


class VerifySuite:
    """Runs the battery; enumeration sweeps are cached across checks."""

    def __init__(self, quick: bool = False, q3_budget: int = 2_000_000):
        self.quick = quick
        self.q3_budget = q3_budget
        self._cache: dict = {}
        self._sweep: list[Digraph] | None = None

    def sweep_graphs(self) -> list[Digraph]:
        if self._sweep is None:
            self._sweep = all_digraphs(2) if self.quick else all_digraphs(3)
        return self._sweep

    def stats(self, d: Digraph, q: int, strict: bool):
        key = (fingerprint(d), q, strict)
        if key not in self._cache:
            self._cache[key] = enumerate_stats(d, q, strict=strict)
        return self._cache[key]

    # --- individual checks -----------------------------------------------

    def check_figure_values(self):
        u = independent_set_bound(canonicalize(fx.FIG1))
        crank = conjunctive_rank(fx.FIG1)
        return "independent-set bound 8 and conjunctive rank 7 on the two-level fixture", \
            (u, crank) == (8, 7), "(8, 7)", str((u, crank))

    def check_star_theorem(self):
        report = self.stats(fx.STAR3, 2, True)
        crank = conjunctive_rank(fx.STAR3)
        bounds = absolute_minrank_bounds(fx.STAR3)
        c = canonicalize(fx.STAR3)
        got = (
            report.function_count,
            report.rank.minimum,
            crank,
            bounds.lower,
            bounds.upper,
            chain_bound(c),
            independent_set_bound(c),
        )
        return "hub-with-3-looped-satellites: 2000 strict systems, min rank 5, " \
            "conjunctive rank 8, alphabet-free bracket 4 = 4", \
            got == (2000, 5, 8, 4, 4, 4, 4), "(2000, 5, 8, 4, 4, 4, 4)", str(got)

    def check_classification_sweep(self):
        implied = {"one": 1, "two": 2}
        bad = []
        total = 0
        for d in self.sweep_graphs():
            verdict = minrank_classify(d)
            minrank = self.stats(d, 2, True).rank.minimum
            total += 1
            full = 2 ** d.n
            want = implied.get(verdict, full if verdict == "full" else None)
            if verdict == "other":
                if not (2 < minrank < full):
                    bad.append((fingerprint(d), verdict, minrank))
            elif minrank != want:
                bad.append((fingerprint(d), verdict, minrank))
        return f"classification verdicts match enumerated min rank on {total} digraphs", \
            not bad, "0 mismatches", f"{len(bad)} mismatches {bad[:3]}"

    def check_canonical_invariance(self, samples: int = 50):
        rng = random.Random(421)
        n = 2 if self.quick else 3
        pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
        bad = []
        for _ in range(samples):
            arcs = [p for p in pairs if rng.random() < 0.5]
            d = Digraph(n, arcs)
            mr_d = self.stats(d, 2, True).rank.minimum
            cd = canonicalize(d).as_digraph()
            mr_c = enumerate_stats(cd, 2, strict=True).rank.minimum
            if mr_d != mr_c:
                bad.append((fingerprint(d), mr_d, mr_c))
        return f"min rank survives canonicalization on {samples} random digraphs", \
            not bad, "0 mismatches", f"{len(bad)} mismatches {bad[:3]}"

    def check_average_fixed_points(self):
        bad = []
        total = 0
        for d in self.sweep_graphs():
            for strict in (True, False):
                avg = self.stats(d, 2, strict).fixed_points.average
                total += 1
                if avg != 1:
                    bad.append((fingerprint(d), strict, str(avg)))
        return f"average fixed points is exactly 1 over {total} families", \
            not bad, "all equal 1", f"{len(bad)} off {bad[:3]}"

    def check_min_fixed_points(self):
        bad = []
        for d in self.sweep_graphs():
            expect = 1 if structure_stats(d).acyclic else 0
            got = self.stats(d, 2, True).fixed_points.minimum
            if got != expect:
                bad.append((fingerprint(d), expect, got))
        return "strict minimum fixed points: 1 on acyclic graphs, else 0", \
            not bad, "0 mismatches", f"{len(bad)} mismatches {bad[:3]}"

    def check_max_rank_periodic(self):
        bad = []
        checked_q3 = 0
        for d in self.sweep_graphs():
            a1 = max_independent_arcs(d)
            an = max_cycle_cover(d)
            st = self.stats(d, 2, False)
            if st.rank.maximum != 2 ** a1 or st.periodic_rank.maximum != 2 ** an:
                bad.append((fingerprint(d), 2, st.rank.maximum, st.periodic_rank.maximum))
            if family_size(d, 3, False) <= self.q3_budget:
                st3 = self.stats(d, 3, False)
                if st3.rank.maximum != 3 ** a1 or st3.periodic_rank.maximum != 3 ** an:
                    bad.append((fingerprint(d), 3, st3.rank.maximum, st3.periodic_rank.maximum))
                checked_q3 += 1
            if family_size(d, 3, True) <= self.q3_budget:
                st3s = self.stats(d, 3, True)
                if st3s.rank.maximum != 3 ** a1 or st3s.periodic_rank.maximum != 3 ** an:
                    bad.append((fingerprint(d), "3 strict", st3s.rank.maximum,
                                st3s.periodic_rank.maximum))
        # strict q=2 can fall short of the cover power: looped 2-cycle regression
        reg = enumerate_stats(fx.C2_LOOPED, 2, strict=True)
        strict_gap = reg.periodic_rank.maximum < 2 ** max_cycle_cover(fx.C2_LOOPED)
        ok = not bad and strict_gap
        return (
            f"loose max rank/periodic rank hit the arc/cover powers "
            f"(q=3 on {checked_q3} within budget); strict q=2 looped 2-cycle falls short",
            ok,
            "powers match, regression gap present",
            f"{len(bad)} mismatches {bad[:3]}, gap={strict_gap}",
        )

    def check_loopfull_formula(self):
        bad = []
        total = 0
        ns = (1, 2) if self.quick else (1, 2, 3)
        for n in ns:
            for d in all_digraphs(n):
                if not d.is_loopless():
                    continue
                full = fx.add_loops(d)
                expect = loopfull_maxfix(d, 2)
                got = enumerate_stats(full, 2, strict=True).fixed_points.maximum
                total += 1
                if got != expect:
                    bad.append((fingerprint(d), expect, got))
        return f"in-domination closed form equals enumerated strict max fixed points " \
            f"on {total} loop-completed graphs", not bad, "0 mismatches", \
            f"{len(bad)} mismatches {bad[:3]}"

    def check_entropy_values(self):
        h5 = entropy_report(fx.C5_SYM).value
        h3 = entropy_report(fx.C3).value
        ok = abs(float(h5) - 2.5) <= 1e-6 and abs(float(h3) - 1.0) <= 1e-6
        return "entropy exponents: 5/2 on the undirected 5-cycle, 1 on the 3-cycle", \
            ok, "(5/2, 1)", f"({h5}, {h3})"

    def check_bounds_sandwich(self):
        bad = []
        for d in self.sweep_graphs():
            rep = fix_bounds_report(d, 2)
            maxfix = self.stats(d, 2, False).fixed_points.maximum
            if not rep.best_lower <= maxfix <= rep.best_upper:
                bad.append((fingerprint(d), rep.best_lower, maxfix, rep.best_upper))
        k3 = fix_bounds_report(fx.K3, 2)
        c3 = fix_bounds_report(fx.C3, 2)
        tight = (k3.best_lower, k3.best_upper, c3.best_lower, c3.best_upper) == (4, 4, 2, 2)
        return "enumerated max fixed points sits inside the bound bracket; " \
            "triangle tight at 4, 3-cycle at 2", not bad and tight, \
            "0 escapes, tight brackets", f"{len(bad)} escapes {bad[:3]}, tight={tight}"

    def check_fractional_realization(self):
        got = cycle_packing_number(blowup(fx.C5_SYM, 2))
        return "doubling the undirected 5-cycle realizes the fractional packing 5", \
            got == 5, "5", str(got)

    def check_univariate(self):
        bad = []
        for q in (2, 3, 4):
            b = univariate_baseline(q)
            if b.closed_form_average_rank != b.enumerated_average_rank:
                bad.append((q, "avg"))
            if b.fixed_point_free_count != (q - 1) ** q:
                bad.append((q, "ffree"))
        return "univariate averages match the closed form and the fixed-point-free count", \
            not bad, "exact at q=2,3,4", f"failures {bad}" if bad else "exact at q=2,3,4"

    def check_nilpotency(self):
        rng = random.Random(7)
        bad = []
        for _ in range(20):
            n = rng.randint(1, 3)
            pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1)]
            d = Digraph(n, [p for p in pairs if rng.random() < 0.5])
            f = nilpotent_class_two(d, 3)
            nil, cls = nilpotency_class(f)
            if periodic_rank(f) != 1 or not nil or cls > 2:
                bad.append(fingerprint(d))
        shift_family = enumerate_stats(fx.C3, 2, strict=True)
        bijective = shift_family.periodic_rank.histogram == {8: 8}
        return "class-two witnesses collapse in two steps; strict 3-cycle systems " \
            "stay bijective", not bad and bijective, "all collapse, all bijective", \
            f"bad witnesses {bad[:3]}, bijective={bijective}"

    def check_witness_conformance(self):
        bad = []
        for name, d in fx.CATALOG.items():
            if interaction_graph(conjunctive(d)) != d:
                bad.append((name, "conjunctive"))
            if interaction_graph(nilpotent_class_two(d, 3)) != d:
                bad.append((name, "class-two"))
            c = canonicalize(d)
            if c.sinks:
                w = canonical_upper_witness(c)
                if interaction_graph(w) != c.as_digraph():
                    bad.append((name, "canonical-upper"))
                if rank(w) != independent_set_bound(c):
                    bad.append((name, "canonical-upper-rank"))
            for q in (2, 3):
                wp = maxper_witness(d, q)
                if not interaction_graph(wp).arcs <= d.arcs:
                    bad.append((name, f"maxper q={q}"))
                if periodic_rank(wp) != q ** max_cycle_cover(d):
                    bad.append((name, f"maxper-value q={q}"))
                wr = maxrank_witness(d, q)
                if not interaction_graph(wr).arcs <= d.arcs:
                    bad.append((name, f"maxrank q={q}"))
                if rank(wr) != q ** max_independent_arcs(d):
                    bad.append((name, f"maxrank-value q={q}"))
        for n in (3, 5):
            w = star_witness(n)
            target = fx.hub_with_looped_satellites(n)
            if interaction_graph(w) != target:
                bad.append((f"star-{n}", "graph"))
            if rank(w) != 2 ** ((n + 1) // 2) + 2 ** (n // 2) - 1:
                bad.append((f"star-{n}", "rank"))
        for n, q in ((2, 2), (2, 3), (3, 2)):
            w = modular_complete(n, q)
            if interaction_graph(w) != fx.complete(n):
                bad.append((f"modular-{n}-{q}", "graph"))
        pk = packing_plus_one_witness(fx.C3_LOOPED, [(1,), (2,), (3,)])
        if interaction_graph(pk) != fx.C3_LOOPED:
            bad.append(("looped-3-cycle", "packing-plus-one"))
        return "every witness reproduces or stays inside its target graph at its " \
            "promised value", not bad, "0 deviations", f"{len(bad)} deviations {bad[:4]}"

    # --- driver ------------------------------------------------------------

    def run(self) -> list[CheckResult]:
        kernels.warmup()
        checks = [
            self.check_figure_values,
            self.check_star_theorem,
            self.check_classification_sweep,
            self.check_canonical_invariance,
            self.check_average_fixed_points,
            self.check_min_fixed_points,
            self.check_max_rank_periodic,
            self.check_loopfull_formula,
            self.check_entropy_values,
            self.check_bounds_sandwich,
            self.check_fractional_realization,
            self.check_univariate,
            self.check_nilpotency,
            self.check_witness_conformance,
        ]
        results = []
        for fn in checks:
            t0 = time.perf_counter()
            name, passed, expected, actual = fn()
            results.append(
                CheckResult(name, passed, expected, actual, time.perf_counter() - t0)
            )
        return results


def run_battery(quick: bool = False) -> list[CheckResult]:
    return VerifySuite(quick=quick).run()
