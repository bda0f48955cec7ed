"""Explicit witness networks: systems built to hit a bound exactly.

Strict witnesses reproduce their target graph as interaction graph;
loose witnesses (``maxper_witness``, ``maxrank_witness``) only stay inside it.
"""

from __future__ import annotations

import numpy as np

from .canonical import CanonicalGraph, canonicalize, conjunctive_rank_of_canonical
from .digraph import Digraph
from .errors import AlphabetTooSmall, BadPacking, EvenN, LoopsPresent
from .fds import DEFAULT_MAX_STATES, Fds, make_fds, rank as fds_rank
from .invariants import cycle_cover_certificate, independent_arc_certificate, in_dominating_profile


def _table(q: int, inputs, fn) -> list[int]:
    """Tabulate fn over little-endian input tuples (first input least significant)."""
    d = len(inputs)
    out = []
    for idx in range(q ** d):
        digits = []
        r = idx
        for _ in range(d):
            digits.append(r % q)
            r //= q
        out.append(int(fn(dict(zip(inputs, digits)))))
    return out


def conjunctive(d: Digraph) -> Fds:
    """Every vertex is the AND of its in-neighbors; empty conjunctions are 1."""
    ins = d.in_map()
    inputs = [sorted(ins[v]) for v in d.vertices()]
    tables = []
    for v in d.vertices():
        k = len(ins[v])
        t = np.zeros(2 ** k, dtype=np.int64)
        t[-1] = 1
        tables.append(t)
    return make_fds(d.n, 2, inputs, tables)


def conjunctive_rank(d: Digraph, max_states: int = DEFAULT_MAX_STATES) -> int:
    """Rank of the AND network, computed on the canonical reduction.

    Cross-checked against the direct whole-space evaluation whenever the
    state space permits it.
    """
    c = canonicalize(d)
    value = conjunctive_rank_of_canonical(c)
    if 2 ** d.n <= max_states:
        direct = fds_rank(conjunctive(d), max_states)
        assert direct == value, f"canonical rank {value} != direct rank {direct}"
    return value


def extend_alphabet(f: Fds) -> Fds:
    """Same system over alphabet q+1; extra letters behave like q-1."""
    q, big = f.q, f.q + 1
    tables = []
    for v in range(f.n):
        d = len(f.inputs[v])
        idx = np.arange(big ** d, dtype=np.int64)
        old = np.zeros(big ** d, dtype=np.int64)
        stride_new, stride_old = 1, 1
        for _ in range(d):
            digit = np.minimum((idx // stride_new) % big, q - 1)
            old += digit * stride_old
            stride_new *= big
            stride_old *= q
        tables.append(f.tables[v][old])
    return make_fds(f.n, big, f.inputs, tables)


def nilpotent_class_two(d: Digraph, q: int) -> Fds:
    """Second iterate constant: outputs 0 on {0,1}-inputs and 1 otherwise."""
    if q < 3:
        raise AlphabetTooSmall(f"construction needs q >= 3, got {q}")
    ins = d.in_map()
    inputs = [sorted(ins[v]) for v in d.vertices()]
    tables = [
        _table(q, inputs[v - 1], lambda x: 0 if all(c <= 1 for c in x.values()) else 1)
        for v in d.vertices()
    ]
    return make_fds(d.n, q, inputs, tables)


def canonical_upper_witness(c: CanonicalGraph) -> Fds:
    """System on a canonical graph whose image enumerates conflict-free sink sets.

    Sink number j fires exactly when all its sources read j-1, so the
    reachable sink patterns are the independent sets of the conflict graph
    and the rank equals the independent-set bound.
    """
    if not c.sinks:
        raise ValueError("needs at least one sink")
    q = max(len(c.sinks), 2)
    ins = c.sink_inputs()
    n = len(c.sources) + len(c.sinks)
    inputs: list[list[int]] = [[] for _ in range(n)]
    tables: list[list[int]] = [[0] for _ in range(n)]
    for j, b in enumerate(c.sinks, start=1):
        srcs = sorted(ins[b])
        inputs[b - 1] = srcs
        tables[b - 1] = _table(
            q, srcs, lambda x, j=j: 1 if all(v == j - 1 for v in x.values()) else 0
        )
    return make_fds(n, q, inputs, tables)


def star_witness(n: int) -> Fds:
    """Boolean system on the hub-and-looped-satellites graph with minimal rank.

    The hub is constant 1; the first ceil(n/2) satellites keep their value
    only under a high hub, the rest only under a low hub.
    """
    if n < 3 or n % 2 == 0:
        raise EvenN(f"satellite count must be odd and >= 3, got {n}")
    ins: list[list[int]] = [[]]
    tables: list[list[int]] = [[1]]
    high = (n + 1) // 2
    for v in range(2, n + 2):
        ins.append([1, v])
        if v <= high + 1:
            tables.append(_table(2, [1, v], lambda x, v=v: x[1] & x[v]))
        else:
            tables.append(_table(2, [1, v], lambda x, v=v: (1 - x[1]) & x[v]))
    return make_fds(n + 1, 2, ins, tables)


def modular_complete(n: int, q: int) -> Fds:
    """Negated coordinate sums on the complete graph; fixed points are the
    states with coordinate sum divisible by q."""
    if n < 2:
        raise ValueError(f"needs at least 2 vertices, got {n}")
    inputs = [[u for u in range(1, n + 1) if u != v] for v in range(1, n + 1)]
    tables = []
    for v in range(1, n + 1):
        k = n - 1
        idx = np.arange(q ** k, dtype=np.int64)
        tot = np.zeros(q ** k, dtype=np.int64)
        stride = 1
        for _ in range(k):
            tot += (idx // stride) % q
            stride *= q
        tables.append((-tot) % q)
    return make_fds(n, q, inputs, tables)


def maxper_witness(d: Digraph, q: int) -> Fds:
    """Shift along a maximum disjoint-cycle cover; uncovered vertices die to 0."""
    cycles = cycle_cover_certificate(d)
    pred: dict[int, int] = {}
    for cyc in cycles:
        for i, v in enumerate(cyc):
            pred[v] = cyc[i - 1]
    inputs = []
    tables = []
    for v in d.vertices():
        if v in pred:
            inputs.append([pred[v]])
            tables.append(np.arange(q, dtype=np.int64))
        else:
            inputs.append([])
            tables.append(np.zeros(1, dtype=np.int64))
    return make_fds(d.n, q, inputs, tables)


def maxrank_witness(d: Digraph, q: int) -> Fds:
    """Copy along a maximum independent arc family; other vertices go to 0."""
    fam = independent_arc_certificate(d)
    source_of = {v: u for u, v in fam}
    inputs = []
    tables = []
    for v in d.vertices():
        if v in source_of:
            inputs.append([source_of[v]])
            tables.append(np.arange(q, dtype=np.int64))
        else:
            inputs.append([])
            tables.append(np.zeros(1, dtype=np.int64))
    return make_fds(d.n, q, inputs, tables)


def packing_plus_one_witness(d: Digraph, packing) -> Fds:
    """Boolean system over a covering cycle packing whose fixed points are the
    threshold states: all ones up to some cycle, all zeros after.

    In-neighbors from earlier cycles (and same-cycle chords) join the
    conjunction; in-neighbors from later cycles join the disjunction.
    """
    cycles = [tuple(c) for c in packing]
    position: dict[int, int] = {}
    pred: dict[int, int] = {}
    for i, cyc in enumerate(cycles):
        for j, v in enumerate(cyc):
            if v in position:
                raise BadPacking(f"vertex {v} appears in two cycles")
            position[v] = i
            pred[v] = cyc[j - 1]
    if set(position) != set(d.vertices()):
        missing = sorted(set(d.vertices()) - set(position))
        raise BadPacking(f"cycles do not cover vertices {missing}")
    for v, u in pred.items():
        if (u, v) not in d.arcs:
            raise BadPacking(f"cycle step {u}->{v} is not an arc")

    ins = d.in_map()
    inputs = []
    tables = []
    for v in d.vertices():
        i = position[v]
        conj = {pred[v]}
        disj = set()
        for u in ins[v]:
            if u == pred[v]:
                continue
            if position[u] <= i:
                conj.add(u)
            else:
                disj.add(u)
        srcs = sorted(ins[v])
        inputs.append(srcs)
        tables.append(
            _table(
                2,
                srcs,
                lambda x, conj=conj, disj=disj: int(
                    all(x[u] for u in conj) or any(x[t] for t in disj)
                ),
            )
        )
    return make_fds(d.n, 2, inputs, tables)


def threshold_states(d: Digraph, packing) -> list[tuple[int, ...]]:
    """The packing's fixed points by construction: ones on a prefix of cycles."""
    states = []
    for k in range(len(packing) + 1):
        x = [0] * d.n
        for cyc in packing[:k]:
            for v in cyc:
                x[v - 1] = 1
        states.append(tuple(x))
    return states


def loopfull_maxfix(d: Digraph, q: int) -> int:
    """Closed form for the top fixed-point count after adding a loop everywhere."""
    if not d.is_loopless():
        raise LoopsPresent("closed form starts from a loopless graph")
    profile = in_dominating_profile(d)
    return sum((q - 1) ** k * profile[k] for k in range(len(profile)))
