"""Small named graphs used by the verification suite and the docs."""

from .digraph import Digraph


def empty(n: int) -> Digraph:
    return Digraph(n, [])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(v, v % n + 1) for v in range(1, n + 1)])


def looped_cycle(n: int) -> Digraph:
    """Directed n-cycle with a loop on every vertex."""
    arcs = [(v, v % n + 1) for v in range(1, n + 1)] + [(v, v) for v in range(1, n + 1)]
    return Digraph(n, arcs)


def complete(n: int) -> Digraph:
    """All ordered pairs of distinct vertices, loopless."""
    return Digraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


def symmetric_cycle(n: int) -> Digraph:
    """Undirected n-cycle encoded as arc pairs in both directions."""
    arcs = []
    for v in range(1, n + 1):
        w = v % n + 1
        arcs += [(v, w), (w, v)]
    return Digraph(n, arcs)


def hub_with_looped_satellites(k: int) -> Digraph:
    """Vertex 1 feeding k looped satellites: arcs 1->v and v->v for v in 2..k+1."""
    arcs = [(1, v) for v in range(2, k + 2)] + [(v, v) for v in range(2, k + 2)]
    return Digraph(k + 1, arcs)


def add_loops(d: Digraph) -> Digraph:
    """The graph with a loop added on every vertex."""
    return Digraph(d.n, set(d.arcs) | {(v, v) for v in d.vertices()})


E3 = empty(3)
L1 = Digraph(1, [(1, 1)])
P1 = Digraph(2, [(1, 2)])
C3 = directed_cycle(3)
C3_LOOPED = looped_cycle(3)
C2_LOOPED = looped_cycle(2)
K3 = complete(3)
C5_SYM = symmetric_cycle(5)
STAR3 = hub_with_looped_satellites(3)
# Three sources (1..3) over four sinks (4..7); sink in-neighborhoods form a path
# when intersected pairwise.
FIG1 = Digraph(7, [(1, 4), (1, 5), (2, 5), (2, 6), (3, 6), (3, 7)])

CATALOG: dict[str, Digraph] = {
    "E3": E3,
    "L1": L1,
    "P1": P1,
    "C3": C3,
    "C3o": C3_LOOPED,
    "C2o": C2_LOOPED,
    "K3": K3,
    "C5sym": C5_SYM,
    "STAR3": STAR3,
    "FIG1": FIG1,
}
