"""Finite dynamical systems as per-vertex lookup tables over declared inputs.

States are tuples over the alphabet {0..q-1}. A state serializes to the
integer sum(x_v * q^(v-1)), i.e. coordinate 1 is least significant; every
report in the package uses this order.
"""

from __future__ import annotations

import numpy as np

from .digraph import Digraph
from .errors import (
    GraphFormatError,
    ShapeMismatch,
    SizeLimitExceeded,
    ValueOutOfRange,
)

DEFAULT_MAX_STATES = 1 << 24


class Fds:
    """Immutable lookup-table system; build through :func:`make_fds`."""

    __slots__ = ("n", "q", "inputs", "tables", "_map")

    def __init__(self, n, q, inputs, tables):
        self.n = n
        self.q = q
        self.inputs = inputs  # tuple of tuples of 1-based vertex ids
        self.tables = tables  # tuple of int64 arrays, little-endian indexed
        self._map = None

    def state_count(self) -> int:
        return self.q ** self.n

    def declared_graph(self) -> Digraph:
        return Digraph(self.n, {(u, v + 1) for v, ins in enumerate(self.inputs) for u in ins})

    def __repr__(self):
        return f"Fds(n={self.n}, q={self.q}, in_degrees={[len(i) for i in self.inputs]})"


def make_fds(n, q, declared_inputs, tables) -> Fds:
    """Validate shapes and entries and build an :class:`Fds`."""
    if n < 1:
        raise ShapeMismatch(f"vertex count must be positive, got {n}")
    if q < 2:
        raise ValueOutOfRange(f"alphabet size must be at least 2, got {q}")
    if len(declared_inputs) != n or len(tables) != n:
        raise ShapeMismatch(
            f"need {n} input lists and {n} tables, got "
            f"{len(declared_inputs)} and {len(tables)}"
        )
    inputs = []
    tabs = []
    for v, (ins, table) in enumerate(zip(declared_inputs, tables), start=1):
        ins = tuple(int(u) for u in ins)
        if len(set(ins)) != len(ins):
            raise ShapeMismatch(f"vertex {v}: repeated declared input")
        for u in ins:
            if not 1 <= u <= n:
                raise ShapeMismatch(f"vertex {v}: declared input {u} outside 1..{n}")
        arr = np.asarray(table, dtype=np.int64).ravel()
        if arr.size != q ** len(ins):
            raise ShapeMismatch(
                f"vertex {v}: table has {arr.size} entries, expected {q ** len(ins)}"
            )
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ValueOutOfRange(f"vertex {v}: table entry outside 0..{q - 1}")
        inputs.append(ins)
        tabs.append(arr)
    return Fds(n, q, tuple(inputs), tuple(tabs))


# --- state helpers -------------------------------------------------------------

def state_to_index(x, q) -> int:
    idx = 0
    for v in reversed(range(len(x))):
        idx = idx * q + int(x[v])
    return idx


def index_to_state(idx, n, q) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        out.append(idx % q)
        idx //= q
    return tuple(out)


def evaluate(f: Fds, x) -> tuple[int, ...]:
    """One synchronous step from an explicit state tuple."""
    out = []
    for v in range(f.n):
        idx = 0
        for j in reversed(f.inputs[v]):
            idx = idx * f.q + x[j - 1]
        out.append(int(f.tables[v][idx]))
    return tuple(out)


def evaluate_trajectory(f: Fds, x, k: int) -> list[tuple[int, ...]]:
    """The k+1 states x, f(x), ..., f^k(x)."""
    if k < 0:
        raise ValueError("step count must be non-negative")
    traj = [tuple(int(c) for c in x)]
    for _ in range(k):
        traj.append(evaluate(f, traj[-1]))
    return traj


def _check_states(f: Fds, max_states: int) -> int:
    m = f.state_count()
    if m > max_states:
        raise SizeLimitExceeded(
            f"state space {f.q}^{f.n} = {m} exceeds the scan guard {max_states}",
            projected=m,
        )
    return m


def map_array(f: Fds, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """The whole-space transition map on serialized states."""
    m = _check_states(f, max_states)
    if f._map is not None:
        return f._map
    states = np.arange(m, dtype=np.int64)
    total = np.zeros(m, dtype=np.int64)
    weight = 1
    for v in range(f.n):
        idx = np.zeros(m, dtype=np.int64)
        stride = 1
        for u in f.inputs[v]:
            idx += ((states // f.q ** (u - 1)) % f.q) * stride
            stride *= f.q
        total += f.tables[v][idx] * weight
        weight *= f.q
    f._map = total
    return total


def rank(f: Fds, max_states: int = DEFAULT_MAX_STATES) -> int:
    """Number of distinct images."""
    return int(np.unique(map_array(f, max_states)).size)


def fixed_points(f: Fds, max_states: int = DEFAULT_MAX_STATES) -> list[tuple[int, ...]]:
    m = map_array(f, max_states)
    idxs = np.nonzero(m == np.arange(m.size, dtype=np.int64))[0]
    return [index_to_state(int(i), f.n, f.q) for i in idxs]


def periodic_rank(f: Fds, max_states: int = DEFAULT_MAX_STATES) -> int:
    """Size of the eventual image, by iterating image sets until stable."""
    m = map_array(f, max_states)
    s = np.unique(m)
    while True:
        t = np.unique(m[s])
        if t.size == s.size:
            return int(s.size)
        s = t


def nilpotency_class(f: Fds, max_states: int = DEFAULT_MAX_STATES):
    """(nilpotent, class): class is the least k with f^k constant, else None."""
    m = map_array(f, max_states)
    s = np.unique(m)
    k = 1
    while s.size > 1:
        t = np.unique(m[s])
        if t.size == s.size:
            return False, None
        s = t
        k += 1
    return True, k


def interaction_graph(f: Fds, max_states: int = DEFAULT_MAX_STATES) -> Digraph:
    """Arcs u->v exactly where the table of v changes along coordinate u."""
    arcs = []
    for v in range(f.n):
        table = f.tables[v]
        d = len(f.inputs[v])
        idx = np.arange(f.q ** d, dtype=np.int64)
        for j, u in enumerate(f.inputs[v]):
            stride = f.q ** j
            digit = (idx // stride) % f.q
            zeroed = idx - digit * stride
            if np.any(table != table[zeroed]):
                arcs.append((u, v + 1))
    return Digraph(f.n, arcs)


# --- text format ----------------------------------------------------------------
#
# Header "fds n <N> q <Q>", then one line per vertex:
# "v <id> inputs <i1 .. ik> table <t0 t1 ...>", table little-endian indexed.

def format_fds(f: Fds) -> str:
    lines = [f"fds n {f.n} q {f.q}"]
    for v in range(f.n):
        ins = " ".join(str(u) for u in f.inputs[v])
        tab = " ".join(str(int(t)) for t in f.tables[v])
        middle = f" {ins}" if ins else ""
        lines.append(f"v {v + 1} inputs{middle} table {tab}")
    return "\n".join(lines) + "\n"


def parse_fds(text: str) -> Fds:
    n = q = None
    inputs: dict[int, tuple[int, ...]] = {}
    tables: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 5 or parts[0] != "fds" or parts[1] != "n" or parts[3] != "q":
                raise GraphFormatError(lineno, f"expected 'fds n <N> q <Q>', got {line!r}")
            try:
                n, q = int(parts[2]), int(parts[4])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer dimensions in header")
            continue
        if parts[0] != "v":
            raise GraphFormatError(lineno, f"expected a 'v' line, got {line!r}")
        try:
            vid = int(parts[1])
            kw1 = parts.index("inputs")
            kw2 = parts.index("table")
            ins = tuple(int(t) for t in parts[kw1 + 1:kw2])
            tab = [int(t) for t in parts[kw2 + 1:]]
        except (ValueError, IndexError):
            raise GraphFormatError(lineno, f"malformed vertex line {line!r}")
        if vid in inputs:
            raise GraphFormatError(lineno, f"vertex {vid} defined twice")
        inputs[vid] = ins
        tables[vid] = tab
    if n is None:
        raise GraphFormatError(1, "missing 'fds n <N> q <Q>' header")
    if sorted(inputs) != list(range(1, n + 1)):
        raise GraphFormatError(1, f"need exactly vertices 1..{n}, got {sorted(inputs)}")
    return make_fds(n, q, [inputs[v] for v in range(1, n + 1)],
                    [tables[v] for v in range(1, n + 1)])


def read_fds(path) -> Fds:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fds(fh.read())
