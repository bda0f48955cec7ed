"""Exhaustive statistics over all systems with a prescribed interaction graph.

``enumerate_stats`` sweeps the full table product for a digraph: the strict
family fixes the interaction graph exactly (every local table must depend
essentially on each declared input), the loose family only requires
containment. Averages are exact rationals; a function-count guard (default
1e8, overridable via the FDSRANK_MAX_FUNCS environment variable) refuses
oversized sweeps with the projected count.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from .digraph import Digraph, fingerprint
from .errors import SizeLimitExceeded
from .fds import DEFAULT_MAX_STATES

DEFAULT_MAX_FUNCS = 10 ** 8
TABLE_CELL_CAP = 1 << 26


def resolve_max_funcs(override=None) -> int:
    if override is not None:
        return int(override)
    env = os.environ.get("FDSRANK_MAX_FUNCS")
    if env:
        return int(env)
    return DEFAULT_MAX_FUNCS


def essential_table_count(q: int, d: int) -> int:
    """Number of q-ary tables on d inputs depending essentially on all of them."""
    return sum((-1) ** k * math.comb(d, k) * q ** (q ** (d - k)) for k in range(d + 1))


@lru_cache(maxsize=64)
def _all_tables(q: int, d: int) -> np.ndarray:
    """Matrix of every table on d inputs: row t holds the q^d outputs of table t."""
    count = q ** (q ** d)
    powers = q ** np.arange(q ** d, dtype=np.int64)
    return ((np.arange(count, dtype=np.int64)[:, None] // powers[None, :]) % q).astype(
        np.int64
    )


@lru_cache(maxsize=64)
def _essential_selector(q: int, d: int) -> np.ndarray:
    """Indices of the tables essential in every input."""
    tables = _all_tables(q, d)
    count = tables.shape[0]
    keep = np.ones(count, dtype=bool)
    idx = np.arange(q ** d, dtype=np.int64)
    for j in range(d):
        stride = q ** j
        digit = (idx // stride) % q
        zeroed = idx - digit * stride
        keep &= (tables != tables[:, zeroed]).any(axis=1)
    return np.nonzero(keep)[0].astype(np.int64)


@dataclass(frozen=True, eq=False)
class QuantityStats:
    minimum: int
    maximum: int
    average: Fraction
    histogram: dict[int, int]


@dataclass(frozen=True, eq=False)
class StatsReport:
    graph: str
    q: int
    strict: bool
    function_count: int
    rank: QuantityStats
    periodic_rank: QuantityStats
    fixed_points: QuantityStats
    fixed_point_free_fraction: Fraction

    def quantities(self) -> dict[str, QuantityStats]:
        return {
            "rank": self.rank,
            "periodic_rank": self.periodic_rank,
            "fixed_points": self.fixed_points,
        }

    def to_json_dict(self) -> dict:
        def qdict(s: QuantityStats) -> dict:
            return {
                "min": s.minimum,
                "max": s.maximum,
                "average": str(s.average),
                "histogram": {str(k): v for k, v in sorted(s.histogram.items())},
            }

        return {
            "graph": self.graph,
            "q": self.q,
            "strict": self.strict,
            "function_count": self.function_count,
            "rank": qdict(self.rank),
            "periodic_rank": qdict(self.periodic_rank),
            "fixed_points": qdict(self.fixed_points),
            "fixed_point_free_fraction": str(self.fixed_point_free_fraction),
        }

    def to_text_table(self) -> str:
        rows = [
            ("quantity", "min", "max", "average"),
            ("rank", str(self.rank.minimum), str(self.rank.maximum), str(self.rank.average)),
            (
                "periodic_rank",
                str(self.periodic_rank.minimum),
                str(self.periodic_rank.maximum),
                str(self.periodic_rank.average),
            ),
            (
                "fixed_points",
                str(self.fixed_points.minimum),
                str(self.fixed_points.maximum),
                str(self.fixed_points.average),
            ),
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)) for r in rows]
        head = f"functions: {self.function_count} (strict={self.strict}, q={self.q})"
        return "\n".join([head] + lines) + "\n"


def _quantity_from_hist(hist: np.ndarray, total: int) -> QuantityStats:
    nz = np.nonzero(hist)[0]
    histogram = {int(v): int(hist[v]) for v in nz}
    weighted = sum(v * c for v, c in histogram.items())
    return QuantityStats(
        minimum=int(nz.min()),
        maximum=int(nz.max()),
        average=Fraction(weighted, total),
        histogram=histogram,
    )


def family_size(d: Digraph, q: int, strict: bool) -> int:
    """Exact number of systems in the family, computed before any materialization."""
    ins = d.in_map()
    total = 1
    for v in d.vertices():
        k = len(ins[v])
        total *= essential_table_count(q, k) if strict else q ** (q ** k)
    return total


def _vertex_value_rows(d: Digraph, q: int, strict: bool):
    """Per-vertex weighted table-value matrices of shape (tables, states)."""
    ins = d.in_map()
    n_states = q ** d.n
    states = np.arange(n_states, dtype=np.int64)
    rows = []
    for v in d.vertices():
        inputs = sorted(ins[v])
        k = len(inputs)
        proj = np.zeros(n_states, dtype=np.int64)
        stride = 1
        for u in inputs:
            proj += ((states // q ** (u - 1)) % q) * stride
            stride *= q
        tables = _all_tables(q, k)
        if strict:
            tables = tables[_essential_selector(q, k)]
        rows.append(tables[:, proj] * q ** (v - 1))
    return rows


def enumerate_stats(
    d: Digraph,
    q: int,
    strict: bool = False,
    max_funcs: int | None = None,
    max_states: int = DEFAULT_MAX_STATES,
    backend: str | None = None,
) -> StatsReport:
    """Exact min/average/max and histograms of rank, periodic rank, fixed points."""
    total = family_size(d, q, strict)
    limit = resolve_max_funcs(max_funcs)
    if total > limit:
        raise SizeLimitExceeded(
            f"family has {total} systems, over the guard {limit}", projected=total
        )
    n_states = q ** d.n
    if n_states > max_states:
        raise SizeLimitExceeded(
            f"state space {n_states} exceeds the scan guard {max_states}",
            projected=n_states,
        )
    cells = sum(q ** (q ** len(d.in_neighbors(v))) for v in d.vertices()) * n_states
    if cells > TABLE_CELL_CAP:
        raise SizeLimitExceeded(
            f"table materialization needs {cells} cells, over {TABLE_CELL_CAP}",
            projected=cells,
        )
    rows = _vertex_value_rows(d, q, strict)
    # outermost vertex carries the parallel grain: put the largest table list first
    order = sorted(range(d.n), key=lambda v: -rows[v].shape[0])
    rows = [rows[v] for v in order]
    counts = np.array([r.shape[0] for r in rows], dtype=np.int64)
    w = np.zeros((d.n, int(counts.max()), n_states), dtype=np.int64)
    for v, r in enumerate(rows):
        w[v, : r.shape[0]] = r
    hist_rank, hist_per, hist_fix = kernels.family_histograms(w, counts, n_states, backend)
    assert int(hist_rank.sum()) == total
    assert int(hist_per.sum()) == total
    assert int(hist_fix.sum()) == total
    return StatsReport(
        graph=fingerprint(d),
        q=q,
        strict=strict,
        function_count=total,
        rank=_quantity_from_hist(hist_rank, total),
        periodic_rank=_quantity_from_hist(hist_per, total),
        fixed_points=_quantity_from_hist(hist_fix, total),
        fixed_point_free_fraction=Fraction(int(hist_fix[0]), total),
    )


def minrank_exact(
    d: Digraph,
    q: int,
    max_states: int = DEFAULT_MAX_STATES,
) -> int:
    """Minimum rank over the strict family, by branch and bound over local tables.

    Partial table assignments are priced by the number of distinct projected
    image tuples, multiplied by the canonical product bound of the unassigned
    remainder whenever the two blocks read disjoint coordinates.
    """
    from .canonical import canonicalize, product_bound
    from .constructions import conjunctive, extend_alphabet
    from .fds import rank as fds_rank

    n_states = q ** d.n
    if n_states > max_states:
        raise SizeLimitExceeded(
            f"state space {n_states} exceeds the scan guard {max_states}",
            projected=n_states,
        )
    cells = sum(
        essential_table_count(q, len(d.in_neighbors(v))) for v in d.vertices()
    ) * n_states
    if cells > TABLE_CELL_CAP:
        raise SizeLimitExceeded(
            f"table materialization needs {cells} cells, over {TABLE_CELL_CAP}",
            projected=cells,
        )

    witness = conjunctive(d)
    while witness.q < q:
        witness = extend_alphabet(witness)
    incumbent = fds_rank(witness, max_states)

    global_lower = product_bound(canonicalize(d))
    if incumbent <= global_lower:
        return incumbent

    ins = d.in_map()
    n_states = q ** d.n
    states = np.arange(n_states, dtype=np.int64)
    value_rows = []
    for v in d.vertices():
        inputs = sorted(ins[v])
        proj = np.zeros(n_states, dtype=np.int64)
        stride = 1
        for u in inputs:
            proj += ((states // q ** (u - 1)) % q) * stride
            stride *= q
        tables = _all_tables(q, len(inputs))[_essential_selector(q, len(inputs))]
        value_rows.append(tables[:, proj])

    # product factors for suffixes whose coordinates are disjoint from the prefix
    factors = [1] * (d.n + 1)
    for k in range(1, d.n):
        prefix_coords = set()
        for v in range(1, k + 1):
            prefix_coords |= ins[v]
        rest_coords = set()
        for v in range(k + 1, d.n + 1):
            rest_coords |= ins[v]
        if prefix_coords & rest_coords:
            continue
        rest_arcs = [(u, v) for u, v in d.arcs if v > k]
        if rest_arcs:
            factors[k] = product_bound(canonicalize(Digraph(d.n, rest_arcs)))

    def search(depth: int, cls: np.ndarray, n_cls: int) -> None:
        nonlocal incumbent
        if incumbent <= global_lower:
            return
        if depth == d.n:
            if n_cls < incumbent:
                incumbent = n_cls
            return
        rows = value_rows[depth]
        for t in range(rows.shape[0]):
            key = cls * q + rows[t]
            uniq, new_cls = np.unique(key, return_inverse=True)
            cnt = int(uniq.size)
            if cnt * factors[depth + 1] >= incumbent:
                continue
            search(depth + 1, new_cls.astype(np.int64), cnt)

    search(0, np.zeros(n_states, dtype=np.int64), 1)
    return incumbent


@dataclass(frozen=True, eq=False)
class UnivariateBaseline:
    q: int
    closed_form_average_rank: Fraction
    enumerated_average_rank: Fraction
    fixed_point_free_count: int
    rank_histogram: dict[int, int]


def univariate_baseline(
    q: int, max_funcs: int | None = None, backend: str | None = None
) -> UnivariateBaseline:
    """Average rank over all q^q self-maps, closed form next to brute force."""
    total = q ** q
    limit = resolve_max_funcs(max_funcs)
    if total > limit:
        raise SizeLimitExceeded(
            f"{total} univariate maps, over the guard {limit}", projected=total
        )
    hist_rank, _hist_per, hist_fix = kernels.univariate_histograms(q, backend)
    enumerated = Fraction(
        sum(v * int(c) for v, c in enumerate(hist_rank)), total
    )
    closed = (1 - Fraction(q - 1, q) ** q) * q
    if closed != enumerated:
        raise AssertionError(
            f"closed form {closed} disagrees with enumeration {enumerated} at q={q}"
        )
    return UnivariateBaseline(
        q=q,
        closed_form_average_rank=closed,
        enumerated_average_rank=enumerated,
        fixed_point_free_count=int(hist_fix[0]),
        rank_histogram={v: int(c) for v, c in enumerate(hist_rank) if c},
    )
