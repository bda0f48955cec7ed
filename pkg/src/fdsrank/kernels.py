"""Hot enumeration kernels: numba-jitted with a pure-numpy fallback.

The kernels sweep every combination of per-vertex local tables and histogram
three quantities of the induced map on serialized states: image count,
eventual-image count and fixed-point count. Setting the environment variable
``FDSRANK_NO_NUMBA`` (to any non-empty value) selects the numpy path; it is
also selected automatically when numba is unavailable. Both paths produce
bit-identical histograms.

Kernel inputs: ``w`` of shape (n_vertices, max_tables, n_states) where row
``w[v, t]`` is the already weighted contribution of table ``t`` at vertex
``v`` (local value times q^(v-1)), and ``counts[v]`` gives how many rows of
``w[v]`` are live. The map of a combination is the sum of its chosen rows.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

try:
    # the TBB on this image is older than numba wants; the automatic fallback
    # threading layer is fine, so silence the advisory
    warnings.filterwarnings(
        "ignore", message=".*TBB threading layer.*", category=Warning
    )
    from numba import njit, prange

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap

    prange = range


def numba_enabled() -> bool:
    if os.environ.get("FDSRANK_NO_NUMBA"):
        return False
    return NUMBA_AVAILABLE


def active_backend() -> str:
    return "numba" if numba_enabled() else "numpy"


@njit(cache=True, parallel=True)
def _family_histograms_numba(w, counts, n_states):  # pragma: no cover - jitted
    n = counts.shape[0]
    c0 = counts[0]
    hists = np.zeros((c0, 3, n_states + 1), dtype=np.int64)
    for t0 in prange(c0):
        prefix = np.empty((n, n_states), dtype=np.int64)
        digits = np.zeros(n, dtype=np.int64)
        for x in range(n_states):
            prefix[0, x] = w[0, t0, x]
        for v in range(1, n):
            for x in range(n_states):
                prefix[v, x] = prefix[v - 1, x] + w[v, 0, x]
        seen = np.full(n_states, -1, dtype=np.int64)
        a = np.empty(n_states, dtype=np.int64)
        b = np.empty(n_states, dtype=np.int64)
        hr = hists[t0, 0]
        hp = hists[t0, 1]
        hf = hists[t0, 2]
        stamp = 0
        while True:
            mp = prefix[n - 1]
            stamp += 1
            r = 0
            for x in range(n_states):
                y = mp[x]
                if seen[y] != stamp:
                    seen[y] = stamp
                    r += 1
            hr[r] += 1
            fx = 0
            for x in range(n_states):
                if mp[x] == x:
                    fx += 1
            hf[fx] += 1
            for x in range(n_states):
                a[x] = mp[x]
            k = 1
            while k < n_states:
                for x in range(n_states):
                    b[x] = a[a[x]]
                a, b = b, a
                k <<= 1
            stamp += 1
            p = 0
            for x in range(n_states):
                y = a[x]
                if seen[y] != stamp:
                    seen[y] = stamp
                    p += 1
            hp[p] += 1
            v = n - 1
            while v >= 1:
                digits[v] += 1
                if digits[v] < counts[v]:
                    break
                digits[v] = 0
                v -= 1
            if v < 1:
                break
            for u in range(v, n):
                tu = digits[u]
                for x in range(n_states):
                    prefix[u, x] = prefix[u - 1, x] + w[u, tu, x]
    out = np.zeros((3, n_states + 1), dtype=np.int64)
    for t0 in range(c0):
        for i in range(3):
            for j in range(n_states + 1):
                out[i, j] += hists[t0, i, j]
    return out


def _family_histograms_numpy(w, counts, n_states, chunk=1 << 14):
    n = len(counts)
    total = 1
    strides = np.empty(n, dtype=np.int64)
    for v in range(n - 1, -1, -1):
        strides[v] = total
        total *= int(counts[v])
    out = np.zeros((3, n_states + 1), dtype=np.int64)
    xs = np.arange(n_states, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        maps = np.zeros((idx.size, n_states), dtype=np.int64)
        for v in range(n):
            dv = (idx // strides[v]) % counts[v]
            maps += w[v, dv]
        srt = np.sort(maps, axis=1)
        ranks = 1 + (srt[:, 1:] != srt[:, :-1]).sum(axis=1)
        out[0] += np.bincount(ranks, minlength=n_states + 1)
        fixes = (maps == xs).sum(axis=1)
        out[2] += np.bincount(fixes, minlength=n_states + 1)
        a = maps
        k = 1
        while k < n_states:
            a = np.take_along_axis(a, a, axis=1)
            k <<= 1
        srt = np.sort(a, axis=1)
        pers = 1 + (srt[:, 1:] != srt[:, :-1]).sum(axis=1)
        out[1] += np.bincount(pers, minlength=n_states + 1)
    return out


def family_histograms(w: np.ndarray, counts: np.ndarray, n_states: int,
                      backend: str | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Histograms (rank, periodic rank, fixed points) over the table product.

    ``backend`` forces ``"numba"`` or ``"numpy"``; default follows the env flag.
    """
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        out = _family_histograms_numba(
            np.ascontiguousarray(w, dtype=np.int64),
            np.ascontiguousarray(counts, dtype=np.int64),
            n_states,
        )
    elif backend == "numpy":
        out = _family_histograms_numpy(w, counts, n_states)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return out[0], out[1], out[2]


@njit(cache=True)
def _univariate_histograms_numba(q):  # pragma: no cover - jitted
    total = 1
    for _ in range(q):
        total *= q
    out = np.zeros((3, q + 1), dtype=np.int64)
    digits = np.zeros(q, dtype=np.int64)  # digits IS the map on q states
    seen = np.full(q, -1, dtype=np.int64)
    a = np.empty(q, dtype=np.int64)
    b = np.empty(q, dtype=np.int64)
    stamp = 0
    for _ in range(total):
        stamp += 1
        r = 0
        for x in range(q):
            y = digits[x]
            if seen[y] != stamp:
                seen[y] = stamp
                r += 1
        out[0, r] += 1
        fx = 0
        for x in range(q):
            if digits[x] == x:
                fx += 1
        out[2, fx] += 1
        for x in range(q):
            a[x] = digits[x]
        k = 1
        while k < q:
            for x in range(q):
                b[x] = a[a[x]]
            a, b = b, a
            k <<= 1
        stamp += 1
        p = 0
        for x in range(q):
            y = a[x]
            if seen[y] != stamp:
                seen[y] = stamp
                p += 1
        out[1, p] += 1
        v = 0
        while v < q:
            digits[v] += 1
            if digits[v] < q:
                break
            digits[v] = 0
            v += 1
    return out


def _univariate_histograms_numpy(q, chunk=1 << 14):
    total = q ** q
    out = np.zeros((3, q + 1), dtype=np.int64)
    powers = q ** np.arange(q, dtype=np.int64)
    xs = np.arange(q, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        maps = (idx[:, None] // powers[None, :]) % q
        srt = np.sort(maps, axis=1)
        out[0] += np.bincount(1 + (srt[:, 1:] != srt[:, :-1]).sum(axis=1), minlength=q + 1)
        out[2] += np.bincount((maps == xs).sum(axis=1), minlength=q + 1)
        a = maps
        k = 1
        while k < q:
            a = np.take_along_axis(a, a, axis=1)
            k <<= 1
        srt = np.sort(a, axis=1)
        out[1] += np.bincount(1 + (srt[:, 1:] != srt[:, :-1]).sum(axis=1), minlength=q + 1)
    return out


def univariate_histograms(q: int, backend: str | None = None):
    """Histograms over all q^q self-maps of the alphabet."""
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        out = _univariate_histograms_numba(q)
    elif backend == "numpy":
        out = _univariate_histograms_numpy(q)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return out[0], out[1], out[2]


def warmup() -> None:
    """Trigger jit compilation on toy inputs so timed runs measure compute only."""
    if not numba_enabled():
        return
    # two single-input vertices over q=2: four states, map values stay below 4
    w = np.zeros((2, 2, 4), dtype=np.int64)
    w[0, 1] = [1, 1, 1, 1]
    w[1, 1] = [2, 2, 2, 2]
    family_histograms(w, np.array([2, 2], dtype=np.int64), 4, backend="numba")
    univariate_histograms(2, backend="numba")
