"""Enumeration sweep kernels: numba-compiled hot path, pure-numpy fallback.

A sweep walks factor assignments alpha = start..stop-1 (bit k of the
integer is the value of factor k), keeps the assignments whose packed
constraint XOR-accumulation matches ``bwords``, and writes the packed
point ``cwords ^ XOR of active generator columns`` for each survivor
into ``out``. Monomial tests are precomputed masks: column j is active
for alpha iff (alpha & mask_j) == mask_j.

Backend is picked once at import from LOGICZONO_BACKEND ("numba" or
"numpy", default numba when importable) and can be switched at runtime
with set_backend().
"""

from __future__ import annotations

import os

import numpy as np

_U64 = np.uint64


def sweep_chunk_numpy(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit):
    """Vectorized fallback; same contract as the jitted kernel."""
    alphas = np.arange(start, stop, dtype=np.uint64)
    na = alphas.shape[0]
    q = rmasks.shape[0]
    if q:
        acc = np.zeros((na, bwords.shape[0]), dtype=np.uint64)
        for i in range(q):
            hit = (alphas & rmasks[i]) == rmasks[i]
            acc[hit] ^= awords[i]
        sat = (acc == bwords).all(axis=1)
    else:
        sat = np.ones(na, dtype=bool) if bwords.size == 0 else np.zeros(na, dtype=bool)
        if bwords.size and not bwords.any():
            sat[:] = True
    vals = np.broadcast_to(cwords, (na, cwords.shape[0])).copy()
    for j in range(emasks.shape[0]):
        hit = (alphas & emasks[j]) == emasks[j]
        vals[hit] ^= gwords[j]
    vals = vals[sat]
    cnt = min(vals.shape[0], limit)
    out[:cnt] = vals[:cnt]
    return cnt


try:
    from numba import njit

    @njit(cache=True)
    def _sweep_jit(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit):  # pragma: no cover
        nw = cwords.shape[0]
        mw = bwords.shape[0]
        h = emasks.shape[0]
        q = rmasks.shape[0]
        acc = np.empty(mw, dtype=np.uint64)
        val = np.empty(nw, dtype=np.uint64)
        cnt = 0
        for a in range(start, stop):
            au = _U64(a)
            for t in range(mw):
                acc[t] = _U64(0)
            for i in range(q):
                if au & rmasks[i] == rmasks[i]:
                    for t in range(mw):
                        acc[t] ^= awords[i, t]
            ok = True
            for t in range(mw):
                if acc[t] != bwords[t]:
                    ok = False
                    break
            if not ok:
                continue
            for t in range(nw):
                val[t] = cwords[t]
            for j in range(h):
                if au & emasks[j] == emasks[j]:
                    for t in range(nw):
                        val[t] ^= gwords[j, t]
            for t in range(nw):
                out[cnt, t] = val[t]
            cnt += 1
            if cnt >= limit:
                break
        return cnt

    def sweep_chunk_numba(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit):
        return int(_sweep_jit(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit))

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    sweep_chunk_numba = None
    HAVE_NUMBA = False


def _initial_backend() -> str:
    name = os.environ.get("LOGICZONO_BACKEND", "").strip().lower()
    if name in ("numba", "numpy"):
        if name == "numba" and not HAVE_NUMBA:
            return "numpy"
        return name
    return "numba" if HAVE_NUMBA else "numpy"


_BACKEND = _initial_backend()


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise ValueError("numba backend requested but numba is not importable")
    global _BACKEND
    _BACKEND = name


def sweep_chunk(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit):
    if _BACKEND == "numba":
        return sweep_chunk_numba(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit)
    return sweep_chunk_numpy(start, stop, emasks, gwords, cwords, rmasks, awords, bwords, out, limit)
