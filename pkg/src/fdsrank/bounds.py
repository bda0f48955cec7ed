"""Upper and lower bounds on the maximum number of fixed points.

``fix_bounds_report`` assembles every applicable bound for a graph and
alphabet into one consistency-checked record. Constituents that exceed their
guards are omitted and recorded as skipped, never approximated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import ratlp
from .digraph import Digraph, structure_stats
from .errors import InconsistentBounds, SizeLimitExceeded
from .invariants import (
    clique_partition_number,
    cycle_packing_number,
    transversal_number,
)

CODE_STATE_CAP = 1 << 14
ENTROPY_VERTEX_CAP = 12
ENTROPY_EXACT_CAP = 8
FLOAT_REPORT_TOL = 1e-6


# --- maximum code size ----------------------------------------------------------

def _max_clique_bitset(adj: list[int], n: int) -> int:
    best = 0

    def color_order(cand: int):
        order: list[int] = []
        bound: list[int] = []
        color = 0
        rest = cand
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(adj[v] | (1 << v))
                rest &= ~(1 << v)
                order.append(v)
                bound.append(color)
        return order, bound

    def expand(size: int, cand: int) -> None:
        nonlocal best
        order, bound = color_order(cand)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = order[i]
            cand &= ~(1 << v)
            if size + 1 > best:
                best = size + 1
            nxt = cand & adj[v]
            if nxt:
                expand(size + 1, nxt)

    expand(0, (1 << n) - 1)
    return best


@lru_cache(maxsize=1024)
def max_code_size(n: int, q: int, d) -> int:
    """Largest set of q-ary words of length n at pairwise Hamming distance >= d."""
    if d is None or (isinstance(d, float) and math.isinf(d)) or d > n:
        return 1
    if d <= 1:
        return q ** n
    total = q ** n
    if total > CODE_STATE_CAP:
        raise SizeLimitExceeded(
            f"code search over {total} words exceeds {CODE_STATE_CAP}", projected=total
        )
    words = []
    for w in range(total):
        digits = []
        r = w
        for _ in range(n):
            digits.append(r % q)
            r //= q
        words.append(tuple(digits))
    adj = [0] * total
    for i in range(total):
        for j in range(i + 1, total):
            dist = sum(a != b for a, b in zip(words[i], words[j]))
            if dist >= d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return _max_clique_bitset(adj, total)


# --- entropy linear program -------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EntropyReport:
    value: object  # Fraction on the exact path, float otherwise
    exact: bool
    peeled: tuple[int, ...]  # iteratively removed in-degree-0 vertices
    method: str

    @property
    def degenerate(self) -> bool:
        return bool(self.peeled)


def entropy_report(d: Digraph, exact_cap: int = ENTROPY_EXACT_CAP) -> EntropyReport:
    """Optimal value of the shared-entropy program bounding log_q of max fixed points.

    Vertices with no in-arcs force their coordinate in every fixed point, so
    the program is posed on the iteratively source-peeled core; a fully
    peeled graph reports exponent 0.
    """
    core = set(d.vertices())
    peeled: list[int] = []
    while True:
        srcs = [v for v in core if not any(u in core and (u, v) in d.arcs for u in core)]
        if not srcs:
            break
        core -= set(srcs)
        peeled.extend(srcs)
    if not core:
        return EntropyReport(Fraction(0), True, tuple(sorted(peeled)), "peeled-empty")
    if len(core) > ENTROPY_VERTEX_CAP:
        raise SizeLimitExceeded(
            f"entropy program capped at {ENTROPY_VERTEX_CAP} core vertices",
            projected=len(core),
        )

    verts = sorted(core)
    pos = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    full = (1 << k) - 1
    nin_mask = [0] * k
    for u, v in d.arcs:
        if u in core and v in core:
            nin_mask[pos[v]] |= 1 << pos[u]

    parent = list(range(full + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        a, b = find(nin_mask[i]), find(nin_mask[i] | (1 << i))
        if a != b:
            parent[max(a, b)] = min(a, b)

    const: dict[int, Fraction] = {find(0): Fraction(0)}
    for i in range(k):
        root = find(1 << i)
        if root in const and const[root] != 1:
            raise AssertionError("pinned-value clash survived source peeling")
        const[root] = Fraction(1)

    var_index: dict[int, int] = {}
    for mask in range(full + 1):
        root = find(mask)
        if root not in const and root not in var_index:
            var_index[root] = len(var_index)

    def term(mask: int, coef: int, row: dict, folded: list) -> None:
        root = find(mask)
        if root in const:
            folded[0] += coef * const[root]
        else:
            j = var_index[root]
            row[j] = row.get(j, 0) + coef

    rows, senses, rhs = [], [], []

    def add_le(terms) -> None:
        # sum coef*h(mask) <= 0 after folding constants
        row: dict[int, int] = {}
        folded = [Fraction(0)]
        for mask, coef in terms:
            term(mask, coef, row, folded)
        row = {j: c for j, c in row.items() if c}
        if not row:
            if folded[0] > 0:
                raise AssertionError("constant constraint violated in entropy program")
            return
        rows.append(row)
        senses.append("<=")
        rhs.append(-folded[0])

    for mask in range(full + 1):
        for i in range(k):
            if mask & (1 << i):
                continue
            add_le([(mask, 1), (mask | (1 << i), -1)])
            for j in range(i + 1, k):
                if mask & (1 << j):
                    continue
                add_le(
                    [
                        (mask | (1 << i) | (1 << j), 1),
                        (mask, 1),
                        (mask | (1 << i), -1),
                        (mask | (1 << j), -1),
                    ]
                )

    full_root = find(full)
    if full_root in const:
        return EntropyReport(const[full_root], True, tuple(sorted(peeled)), "pinned")

    nvar = len(var_index)
    c = [0] * nvar
    c[var_index[full_root]] = 1

    if k <= exact_cap:
        # solve the dual so the tableau keeps one row per variable
        m = len(rows)
        dual_rows = [dict() for _ in range(nvar)]
        for i, row in enumerate(rows):
            for j, a in row.items():
                dual_rows[j][i] = a
        res = ratlp.solve_exact(rhs, dual_rows, [">="] * nvar, c, maximize=False)
        if res.status != ratlp.OPTIMAL:
            raise AssertionError(f"entropy dual came back {res.status}")
        return EntropyReport(Fraction(res.value), True, tuple(sorted(peeled)), "exact-dual")
    res = ratlp.solve_float(c, rows, senses, rhs, maximize=True)
    if res.status != ratlp.OPTIMAL:
        raise AssertionError(f"entropy program came back {res.status}")
    return EntropyReport(float(res.value), False, tuple(sorted(peeled)), "float")


def entropy_H(d: Digraph, exact_cap: int = ENTROPY_EXACT_CAP):
    """Scalar exponent from :func:`entropy_report`."""
    return entropy_report(d, exact_cap).value


def _floor_power(q: int, exponent) -> int:
    """floor(q**exponent) for Fraction exactly, for float with reporting tolerance."""
    if isinstance(exponent, Fraction):
        num, den = exponent.numerator, exponent.denominator
        if num < 0:
            return 0
        target = q ** num
        hi = 1
        while hi ** den <= target:
            hi *= 2
        lo = hi // 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if mid ** den <= target:
                lo = mid
            else:
                hi = mid
        return lo
    return int(math.floor(q ** exponent + FLOAT_REPORT_TOL))


# --- combined report -----------------------------------------------------------------

@dataclass(eq=False)
class BoundsReport:
    target: str
    strict: bool
    q: int
    upper: dict[str, int] = field(default_factory=dict)
    lower: dict[str, int] = field(default_factory=dict)
    provenance: dict[str, str] = field(default_factory=dict)
    skipped: dict[str, str] = field(default_factory=dict)
    entropy_exponent: object = None
    best_upper: int = 0
    best_lower: int = 0
    consistent: bool = True

    def to_json_dict(self) -> dict:
        return {
            "target": self.target,
            "strict": self.strict,
            "q": self.q,
            "upper": dict(sorted(self.upper.items())),
            "lower": dict(sorted(self.lower.items())),
            "best_upper": self.best_upper,
            "best_lower": self.best_lower,
            "consistent": self.consistent,
            "entropy_exponent": None
            if self.entropy_exponent is None
            else str(self.entropy_exponent),
            "provenance": dict(sorted(self.provenance.items())),
            "skipped": dict(sorted(self.skipped.items())),
        }


def fix_bounds_report(d: Digraph, q: int, strict: bool = False) -> BoundsReport:
    """Every applicable fixed-point bound for the family, with a consistency verdict."""
    report = BoundsReport(target="max_fixed_points", strict=strict, q=q)
    stats = structure_stats(d)

    def attempt(name, kind, fn, why):
        try:
            value = fn()
        except SizeLimitExceeded as exc:
            report.skipped[name] = f"size({exc.projected})"
            return
        (report.upper if kind == "upper" else report.lower)[name] = int(value)
        report.provenance[name] = why

    g = stats.girth
    attempt(
        "girth",
        "upper",
        lambda: max_code_size(d.n, q, None if math.isinf(g) else int(g)),
        "distinct fixed points differ on a cycle, so they form a code at girth distance",
    )
    attempt(
        "feedback",
        "upper",
        lambda: q ** transversal_number(d),
        "fixed points are determined by their values on a feedback vertex set",
    )

    def entropy_bound():
        rep = entropy_report(d)
        report.entropy_exponent = rep.value
        return _floor_power(q, rep.value)

    attempt("entropy", "upper", entropy_bound, "entropy program exponent, floored")

    all_looped = all((v, v) in d.arcs for v in d.vertices())
    if all_looped:
        def loopfull_value():
            from .constructions import loopfull_maxfix

            base = Digraph(d.n, {(u, v) for u, v in d.arcs if u != v})
            return loopfull_maxfix(base, q)

        attempt(
            "loopfull",
            "lower",
            loopfull_value,
            "exact in-domination closed form for loop-on-every-vertex graphs",
        )

    if strict:
        if q >= 3:
            attempt(
                "ghost",
                "lower",
                lambda: fix_bounds_report(d, q - 1, strict=False).best_lower,
                "padding letters never used by a smaller-alphabet witness",
            )
        if q == 2:
            attempt(
                "packing_plus_one",
                "lower",
                lambda: cycle_packing_number(d) + 1,
                "threshold states over a maximum cycle packing",
            )
    else:
        attempt(
            "clique_cover",
            "lower",
            lambda: q ** (d.n - clique_partition_number(d)),
            "modular-sum witness on each clique of a minimum partition",
        )
        attempt(
            "packing",
            "lower",
            lambda: q ** cycle_packing_number(d),
            "independent shift witnesses on a maximum cycle packing",
        )
        attempt(
            "code",
            "lower",
            lambda: max_code_size(d.n, q, d.n - stats.min_in_degree + 1),
            "codeword fixed points at distance past the minimum in-degree deficit",
        )
        attempt(
            "degree",
            "lower",
            lambda: -(-(q ** stats.min_in_degree) // d.n),
            "counting argument on the minimum in-degree, rounded up",
        )

    # the whole state space / a constant witness back the trivial extremes
    report.best_upper = min(report.upper.values(), default=q ** d.n)
    report.best_lower = max(report.lower.values(), default=1)
    for lname, lval in report.lower.items():
        for uname, uval in report.upper.items():
            if lval > uval:
                report.consistent = False
                raise InconsistentBounds(
                    f"lower bound {lname}={lval} exceeds upper bound {uname}={uval} "
                    f"on {d!r} at q={q}"
                )
    return report
