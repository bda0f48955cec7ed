"""Bipartite source/sink reduction of a digraph and the minimum-rank bounds on it.

The reduction doubles the graph into source copies and sink copies, then
strips redundant sinks and sources until no rule applies. Redundant vertices
are removed one at a time, largest index first, each removal justified
against the current graph; this keeps every removal step rank-preserving
(removing all simultaneously-redundant sinks at once is unsound when three
or more sinks cover each other, e.g. the complete looped triangle).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import Digraph, weak_components
from .errors import SizeLimitExceeded

INDEPENDENT_SET_SINK_CAP = 30
PRODUCT_BOUND_SINK_CAP = 20


@dataclass(frozen=True, eq=False)
class CanonicalGraph:
    """Sources feed sinks; ids are 1..|A| for sources, |A|+1..|A|+|B| for sinks.

    ``provenance`` maps each canonical id back to ``(original_vertex, copy)``
    where copy 0 is the source side and copy 1 the sink side.
    """

    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]
    provenance: dict[int, tuple[int, int]]

    def sink_inputs(self) -> dict[int, frozenset[int]]:
        ins: dict[int, set[int]] = {b: set() for b in self.sinks}
        for a, b in self.arcs:
            ins[b].add(a)
        return {b: frozenset(s) for b, s in ins.items()}

    def as_digraph(self) -> Digraph:
        n = len(self.sources) + len(self.sinks)
        return Digraph(max(n, 1), self.arcs) if n else Digraph(1, [])

    def is_empty(self) -> bool:
        return not self.sources and not self.sinks


def canonicalize(d: Digraph) -> CanonicalGraph:
    """Source/sink double of ``d`` with redundant vertices stripped to a fixpoint."""
    ins = d.in_map()
    sink_in = {v: frozenset(ins[v]) for v in d.vertices()}
    alive = set(d.vertices())

    def redundant_sink(v: int) -> bool:
        nv = sink_in[v]
        if not nv:
            return True
        witnesses = [u for u in alive if u != v and sink_in[u] and sink_in[u] <= nv]
        if not witnesses:
            return False
        union = frozenset().union(*(sink_in[u] for u in witnesses))
        if union != nv:
            return False
        return len(witnesses) >= 2 or witnesses[0] < v

    while True:
        removable = [v for v in sorted(alive, reverse=True) if redundant_sink(v)]
        if not removable:
            break
        alive.remove(removable[0])

    sink_list = sorted(alive)
    out_to_alive = {
        u: frozenset(w for w in d.out_neighbors(u) if w in alive) for u in d.vertices()
    }
    source_list = [
        u
        for u in d.vertices()
        if out_to_alive[u]
        and not any(u2 < u and out_to_alive[u2] == out_to_alive[u] for u2 in d.vertices())
    ]

    src_id = {u: i + 1 for i, u in enumerate(source_list)}
    snk_id = {v: len(source_list) + j + 1 for j, v in enumerate(sink_list)}
    arcs = frozenset(
        (src_id[u], snk_id[v]) for u in source_list for v in out_to_alive[u]
    )
    provenance = {src_id[u]: (u, 0) for u in source_list}
    provenance.update({snk_id[v]: (v, 1) for v in sink_list})
    return CanonicalGraph(
        sources=tuple(src_id[u] for u in source_list),
        sinks=tuple(snk_id[v] for v in sink_list),
        arcs=arcs,
        provenance=provenance,
    )


def format_canonical(c: CanonicalGraph) -> str:
    """Graph text format plus a trailing provenance comment block."""
    from .digraph import format_digraph

    body = format_digraph(c.as_digraph())
    prov = "".join(
        f"# provenance {cid} {orig} {copy}\n"
        for cid, (orig, copy) in sorted(c.provenance.items())
    )
    return body + prov


# --- bounds on the minimum rank of a canonical graph --------------------------

def _conflict_adjacency(c: CanonicalGraph) -> dict[int, set[int]]:
    ins = c.sink_inputs()
    adj: dict[int, set[int]] = {b: set() for b in c.sinks}
    for b1, b2 in itertools.combinations(c.sinks, 2):
        if ins[b1] & ins[b2]:
            adj[b1].add(b2)
            adj[b2].add(b1)
    return adj


def _count_independent_sets(vertices: frozenset[int], adj, memo) -> int:
    if not vertices:
        return 1
    if vertices in memo:
        return memo[vertices]
    # split off a connected component
    start = next(iter(vertices))
    comp = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in vertices and w not in comp:
                comp.add(w)
                stack.append(w)
    if comp != vertices:
        result = _count_independent_sets(
            frozenset(comp), adj, memo
        ) * _count_independent_sets(vertices - comp, adj, memo)
    else:
        v = max(vertices, key=lambda u: len(adj[u] & vertices))
        if not adj[v] & vertices:
            result = 1 << len(vertices)
        else:
            without = _count_independent_sets(vertices - {v}, adj, memo)
            closed = frozenset(vertices - {v} - adj[v])
            with_v = _count_independent_sets(closed, adj, memo)
            result = without + with_v
    memo[vertices] = result
    return result


def independent_set_bound(c: CanonicalGraph) -> int:
    """Number of independent sets (empty set included) of the sink conflict graph."""
    if len(c.sinks) > INDEPENDENT_SET_SINK_CAP:
        raise SizeLimitExceeded(
            f"independent-set count capped at {INDEPENDENT_SET_SINK_CAP} sinks",
            projected=len(c.sinks),
        )
    adj = _conflict_adjacency(c)
    return _count_independent_sets(frozenset(c.sinks), adj, {})


def _sink_masks(c: CanonicalGraph) -> list[int]:
    """In-neighborhoods of sinks as source bitmasks, in sink order."""
    ins = c.sink_inputs()
    src_pos = {a: i for i, a in enumerate(c.sources)}
    return [sum(1 << src_pos[a] for a in ins[b]) for b in c.sinks]


def chain_bound(c: CanonicalGraph) -> int:
    """Longest sink sequence where each adds an unseen source, plus one."""
    if len(c.sinks) > PRODUCT_BOUND_SINK_CAP:
        raise SizeLimitExceeded(
            f"chain bound capped at {PRODUCT_BOUND_SINK_CAP} sinks", projected=len(c.sinks)
        )
    nin = _sink_masks(c)
    k = len(nin)
    best = 0
    valid = [False] * (1 << k)
    valid[0] = True
    union = [0] * (1 << k)
    for mask in range(1, 1 << k):
        low = mask & -mask
        union[mask] = union[mask ^ low] | nin[low.bit_length() - 1]
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            prev = mask ^ bit
            if valid[prev] and nin[bit.bit_length() - 1] & ~union[prev]:
                valid[mask] = True
                best = max(best, bin(mask).count("1"))
                break
    return best + 1


def product_bound(c: CanonicalGraph) -> int:
    """Least fixpoint of the increment / product / monotonicity raise rules.

    Works per connected component of the conflict graph and multiplies, since
    sinks in different components have disjoint in-neighborhoods.
    """
    if len(c.sinks) > PRODUCT_BOUND_SINK_CAP:
        raise SizeLimitExceeded(
            f"product bound capped at {PRODUCT_BOUND_SINK_CAP} sinks",
            projected=len(c.sinks),
        )
    adj = _conflict_adjacency(c)
    nin_by_sink = dict(zip(c.sinks, _sink_masks(c)))
    remaining = set(c.sinks)
    total = 1
    while remaining:
        start = next(iter(remaining))
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in remaining and w not in comp:
                    comp.add(w)
                    stack.append(w)
        remaining -= comp
        total *= _product_bound_component(sorted(comp), nin_by_sink)
    return total


def _product_bound_component(sinks: list[int], nin_by_sink) -> int:
    k = len(sinks)
    nin = [nin_by_sink[b] for b in sinks]
    full = (1 << k) - 1
    union = [0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        union[mask] = union[mask ^ low] | nin[low.bit_length() - 1]
    r = [1] * (full + 1)
    changed = True
    while changed:
        changed = False
        for mask in range(1, full + 1):
            best = r[mask]
            m = mask
            while m:
                bit = m & -m
                m ^= bit
                prev = mask ^ bit
                cand = r[prev]
                if nin[bit.bit_length() - 1] & ~union[prev]:
                    cand += 1
                if cand > best:
                    best = cand
            # products over splits with disjoint source sets
            sub = (mask - 1) & mask
            while sub > mask ^ sub:  # each unordered split once
                rest = mask ^ sub
                if union[sub] & union[rest] == 0:
                    cand = r[sub] * r[rest]
                    if cand > best:
                        best = cand
                sub = (sub - 1) & mask
            if best > r[mask]:
                r[mask] = best
                changed = True
    return r[full]


# --- tightness and classification ---------------------------------------------

@dataclass(frozen=True, eq=False)
class TightnessVerdict:
    tight: bool
    lower: int
    upper: int
    witness: Digraph | None = None


def tightness_classify(c: CanonicalGraph) -> TightnessVerdict:
    """Decide whether chain and independent-set bounds meet at |B|+1.

    When they do, reconstruct a witness graph made of looped right-side
    vertices (one per sink) plus helper left-side vertices, whose
    canonicalization reproduces ``c``.
    """
    lower = chain_bound(c)
    upper = independent_set_bound(c)
    n_sinks = len(c.sinks)
    if not (lower == upper == n_sinks + 1):
        return TightnessVerdict(False, lower, upper)
    if n_sinks == 0:
        return TightnessVerdict(True, lower, upper, Digraph(1, []))
    witness = _reconstruct_tight_witness(c)
    return TightnessVerdict(True, lower, upper, witness)


def _reconstruct_tight_witness(c: CanonicalGraph) -> Digraph:
    ins = c.sink_inputs()
    out_deg = {a: sum(1 for b in c.sinks if a in ins[b]) for a in c.sources}
    n = len(c.sinks)

    def build(order: list[int], picks: list[int]) -> Digraph | None:
        leftover = [a for a in c.sources if a not in picks]
        r_of_sink = {b: i + 1 for i, b in enumerate(order)}
        a_owner = {a: i + 1 for i, a in enumerate(picks)}
        arcs = set()
        for b in order:
            j = r_of_sink[b]
            for a in ins[b]:
                if a in a_owner:
                    arcs.add((a_owner[a], j))
                else:
                    arcs.add((n + 1 + leftover.index(a), j))
        h = Digraph(n + len(leftover), arcs)
        # verify: loops on the right side, every right pair linked directly
        # or through a common in-neighbor
        if any((i, i) not in h.arcs for i in range(1, n + 1)):
            return None
        hins = h.in_map()
        for i, j in itertools.combinations(range(1, n + 1), 2):
            if (i, j) in h.arcs or (j, i) in h.arcs:
                continue
            if not hins[i] & hins[j]:
                return None
        return h

    def search(order, picks, covered):
        if len(order) == n:
            return build(order, picks)
        for b in sorted(set(c.sinks) - set(order)):
            fresh = ins[b] - covered
            if not fresh:
                continue
            # prefer low fan-out sources: high fan-out ones serve as shared helpers
            for a in sorted(fresh, key=lambda a: (out_deg[a], a)):
                h = search(order + [b], picks + [a], covered | ins[b])
                if h is not None:
                    return h
        return None

    h = search([], [], frozenset())
    if h is None:
        raise AssertionError("tight canonical graph without a reconstructible witness")
    return h


def minrank_classify(d: Digraph) -> str:
    """Verdicts ``one``, ``two``, ``full`` or ``other``.

    ``one``: no arcs; ``two``: some set S equals the in-neighborhood of every
    non-source; ``full``: disjoint union of cycles (all degrees exactly one).
    The first three pin the minimum rank at 1, 2 and 2^n respectively.
    """
    if not d.arcs:
        return "one"
    ins = d.in_map()
    non_source = [frozenset(ins[v]) for v in d.vertices() if ins[v]]
    if non_source and all(s == non_source[0] for s in non_source):
        return "two"
    outs = d.out_map()
    if all(len(ins[v]) == 1 and len(outs[v]) == 1 for v in d.vertices()):
        return "full"
    return "other"


@dataclass(frozen=True, eq=False)
class MinrankBounds:
    lower: int
    upper: int
    stabilization_q: int
    exact: bool


def conjunctive_rank_of_canonical(c: CanonicalGraph) -> int:
    """Rank of the all-AND network on a canonical graph, component by component.

    Sources output constant 1; each sink outputs the conjunction of its
    sources, so the rank is the number of distinct sink-indicator patterns,
    multiplied over connected components.
    """
    ins = c.sink_inputs()
    comp_of: dict[int, int] = {}
    for idx, comp in enumerate(weak_components(c.as_digraph())):
        for v in comp:
            comp_of[v] = idx
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for a in c.sources:
        groups.setdefault(comp_of[a], ([], []))[0].append(a)
    for b in c.sinks:
        groups.setdefault(comp_of[b], ([], []))[1].append(b)
    total = 1
    for sources, sinks in groups.values():
        patterns = set()
        for bits in itertools.product((0, 1), repeat=len(sources)):
            x = dict(zip(sources, bits))
            patterns.add(tuple(all(x[a] for a in ins[b]) for b in sinks))
        total *= len(patterns)
    return total


def absolute_minrank_bounds(d: Digraph) -> MinrankBounds:
    """Alphabet-free minimum-rank bracket with its stabilization alphabet.

    The lower bound multiplies the product bound over the components of the
    canonical graph; the upper bound multiplies per-component minima of the
    conjunctive rank and the independent-set count. The minimum rank provably
    stops decreasing at alphabet size (n+1)*m.
    """
    c = canonicalize(d)
    lower = 1
    upper = 1
    for comp in weak_components(c.as_digraph()):
        if not any(v in c.provenance for v in comp):
            continue
        piece = _sub_canonical(c, set(comp))
        lower *= product_bound(piece)
        upper *= min(conjunctive_rank_of_canonical(piece), independent_set_bound(piece))
    return MinrankBounds(
        lower=lower,
        upper=upper,
        stabilization_q=max(2, (d.n + 1) * d.m),
        exact=lower == upper,
    )


def _sub_canonical(c: CanonicalGraph, keep: set[int]) -> CanonicalGraph:
    sources = tuple(a for a in c.sources if a in keep)
    sinks = tuple(b for b in c.sinks if b in keep)
    arcs = frozenset((a, b) for a, b in c.arcs if a in keep and b in keep)
    prov = {v: c.provenance[v] for v in sources + sinks}
    return CanonicalGraph(sources, sinks, arcs, prov)


# --- small-graph isomorphism ----------------------------------------------------

def digraph_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    """Exact isomorphism test by joint color refinement plus backtracking."""
    if d1.n != d2.n or d1.m != d2.m:
        return False

    ins1, outs1 = d1.in_map(), d1.out_map()
    ins2, outs2 = d2.in_map(), d2.out_map()
    palette: dict = {}

    def canon(key):
        return palette.setdefault(key, len(palette))

    fp1 = {v: canon((len(ins1[v]), len(outs1[v]), (v, v) in d1.arcs)) for v in d1.vertices()}
    fp2 = {v: canon((len(ins2[v]), len(outs2[v]), (v, v) in d2.arcs)) for v in d2.vertices()}
    for _ in range(d1.n):
        palette = {}
        fp1 = {
            v: canon((fp1[v],
                      tuple(sorted(fp1[u] for u in ins1[v])),
                      tuple(sorted(fp1[w] for w in outs1[v]))))
            for v in d1.vertices()
        }
        fp2 = {
            v: canon((fp2[v],
                      tuple(sorted(fp2[u] for u in ins2[v])),
                      tuple(sorted(fp2[w] for w in outs2[v]))))
            for v in d2.vertices()
        }
    if sorted(fp1.values()) != sorted(fp2.values()):
        return False
    order = sorted(d1.vertices(), key=lambda v: (fp1[v], v))
    cands = {v: [w for w in d2.vertices() if fp2[w] == fp1[v]] for v in d1.vertices()}

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, w: int) -> bool:
        for u, x in mapping.items():
            if ((u, v) in d1.arcs) != ((x, w) in d2.arcs):
                return False
            if ((v, u) in d1.arcs) != ((w, x) in d2.arcs):
                return False
        return ((v, v) in d1.arcs) == ((w, w) in d2.arcs)

    def assign(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in cands[v]:
            if w not in used and consistent(v, w):
                mapping[v] = w
                used.add(w)
                if assign(i + 1):
                    return True
                del mapping[v]
                used.remove(w)
        return False

    return assign(0)


def canonical_isomorphic(c1: CanonicalGraph, c2: CanonicalGraph) -> bool:
    if len(c1.sources) != len(c2.sources) or len(c1.sinks) != len(c2.sinks):
        return False
    return digraph_isomorphic(c1.as_digraph(), c2.as_digraph())
