"""Independent brute-force oracles.

Everything here is deliberately naive (subset enumeration, dict-based
evaluation), shares no code with the package implementations, and is only
feasible on tiny inputs. Tests freeze oracle outputs or compare them against
the real implementations directly.
"""

from __future__ import annotations

import itertools


def brute_feedback_vertex_number(d) -> int:
    """Smallest vertex set whose removal leaves no directed cycle."""
    verts = list(d.vertices())
    for k in range(d.n + 1):
        for removed in itertools.combinations(verts, k):
            if not _has_cycle(d, set(removed)):
                return k
    return d.n


def _has_cycle(d, removed) -> bool:
    keep = [v for v in d.vertices() if v not in removed]
    color = {v: 0 for v in keep}
    outs = {v: [w for w in keep if (v, w) in d.arcs] for v in keep}

    def dfs(v):
        color[v] = 1
        for w in outs[v]:
            if color[w] == 1 or (color[w] == 0 and dfs(w)):
                return True
        color[v] = 2
        return False

    return any(color[v] == 0 and dfs(v) for v in keep)


def brute_simple_cycles(d) -> list[tuple[int, ...]]:
    cycles = []
    for k in range(1, d.n + 1):
        for verts in itertools.permutations(d.vertices(), k):
            if verts[0] != min(verts):
                continue
            if all((verts[i], verts[(i + 1) % k]) in d.arcs for i in range(k)):
                cycles.append(verts)
    return cycles


def brute_cycle_packing(d) -> int:
    cycles = [frozenset(c) for c in brute_simple_cycles(d)]
    best = 0
    for k in range(len(cycles), 0, -1):
        if k <= best:
            break
        for combo in itertools.combinations(cycles, k):
            total = sum(len(c) for c in combo)
            if total == len(frozenset().union(*combo)):
                best = k
                break
    return best


def brute_max_independent_arcs(d) -> int:
    arcs = sorted(d.arcs)
    best = 0
    for k in range(len(arcs), 0, -1):
        if k <= best:
            break
        for combo in itertools.combinations(arcs, k):
            tails = {u for u, _ in combo}
            heads = {v for _, v in combo}
            if len(tails) == k and len(heads) == k:
                best = k
                break
    return best


def brute_max_cycle_cover(d) -> int:
    """Largest vertex set carrying an arc-supported permutation of itself."""
    best = 0
    verts = list(d.vertices())
    for k in range(d.n, 0, -1):
        if k <= best:
            break
        for subset in itertools.combinations(verts, k):
            for images in itertools.permutations(subset):
                if all((v, w) in d.arcs for v, w in zip(subset, images)):
                    best = k
                    break
            if best == k:
                break
    return best


def brute_clique_partition(d) -> int:
    """Minimum number of parts, each pairwise joined by arcs both ways."""

    def is_clique(part):
        return all(
            (u, v) in d.arcs and (v, u) in d.arcs
            for u, v in itertools.combinations(part, 2)
        )

    def solve(remaining):
        if not remaining:
            return 0
        first = remaining[0]
        rest = remaining[1:]
        best = 1 + solve(rest)
        for k in range(1, len(rest) + 1):
            for extra in itertools.combinations(rest, k):
                part = (first,) + extra
                if is_clique(part):
                    left = [v for v in rest if v not in extra]
                    best = min(best, 1 + solve(left))
        return best

    return solve(list(d.vertices()))


def brute_independent_set_count(vertices, edges) -> int:
    count = 0
    vlist = sorted(vertices)
    for k in range(len(vlist) + 1):
        for combo in itertools.combinations(vlist, k):
            s = set(combo)
            if all(not (a in s and b in s) for a, b in edges):
                count += 1
    return count


def brute_chain_bound(sink_inputs: dict) -> int:
    """Longest sequence of sinks, each contributing an unseen source, plus one."""
    sinks = sorted(sink_inputs)
    best = 0
    for k in range(len(sinks), 0, -1):
        if best:
            break
        for perm in itertools.permutations(sinks, k):
            seen = set()
            ok = True
            for b in perm:
                if sink_inputs[b] <= seen:
                    ok = False
                    break
                seen |= sink_inputs[b]
            if ok:
                best = k
                break
    return best + 1


def brute_in_dominating_profile(d) -> tuple[int, ...]:
    ins = d.in_map()
    needy = [v for v in d.vertices() if ins[v]]
    profile = [0] * (d.n + 1)
    for k in range(d.n + 1):
        for combo in itertools.combinations(list(d.vertices()), k):
            s = set(combo)
            if all(v in s or ins[v] & s for v in needy):
                profile[k] += 1
    return tuple(profile)


def brute_max_code_size(n, q, dist) -> int:
    words = list(itertools.product(range(q), repeat=n))

    def hamming(a, b):
        return sum(x != y for x, y in zip(a, b))

    best = 0
    for k in range(len(words), 0, -1):
        if k <= best:
            break
        for combo in itertools.combinations(words, k):
            if all(hamming(a, b) >= dist for a, b in itertools.combinations(combo, 2)):
                best = k
                break
    return best


# --- dict-based system evaluation (independent of the numpy paths) ---------

def eval_map(f) -> dict[tuple, tuple]:
    """Whole-space map as a dict over state tuples."""
    out = {}
    for state in itertools.product(range(f.q), repeat=f.n):
        img = []
        for v in range(f.n):
            idx = 0
            for u in reversed(f.inputs[v]):
                idx = idx * f.q + state[u - 1]
            img.append(int(f.tables[v][idx]))
        out[state] = tuple(img)
    return out


def brute_rank(f) -> int:
    return len(set(eval_map(f).values()))


def brute_fixed_points(f) -> list[tuple]:
    return sorted(x for x, y in eval_map(f).items() if x == y)


def brute_periodic_rank(f) -> int:
    m = eval_map(f)
    periodic = 0
    for x in m:
        cur = x
        for _ in range(len(m)):
            cur = m[cur]
            if cur == x:
                periodic += 1
                break
    return periodic


def brute_interaction_arcs(f) -> set[tuple[int, int]]:
    m = eval_map(f)
    arcs = set()
    states = list(itertools.product(range(f.q), repeat=f.n))
    for v in range(f.n):
        for u in range(1, f.n + 1):
            found = False
            for a in states:
                for c in range(f.q):
                    b = list(a)
                    b[u - 1] = c
                    if m[tuple(b)][v] != m[a][v]:
                        found = True
                        break
                if found:
                    break
            if found:
                arcs.add((u, v + 1))
    return arcs
