"""Array kernels for the decision pipeline.

Each kernel exists twice: a loop form compiled with numba ``@njit`` and a
vectorized numpy form. Both accumulate sums in the same order, so they agree
bit for bit. The numba path is used when numba imports and the environment
variable ``GREYGRAPH_DISABLE_NUMBA`` is unset (or ``0``); otherwise the numpy
path is used.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_DISABLED = os.environ.get("GREYGRAPH_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


# ---------------------------------------------------------------------------
# loop forms (numba source)

def _normalize_loops(lo, hi, is_cost):
    n, m = lo.shape
    rl = np.empty((n, m))
    ru = np.empty((n, m))
    zmin = np.empty(m)
    zmax = np.empty(m)
    for j in range(m):
        a = lo[0, j]
        b = hi[0, j]
        for i in range(1, n):
            if lo[i, j] < a:
                a = lo[i, j]
            if hi[i, j] > b:
                b = hi[i, j]
        zmin[j] = a
        zmax[j] = b
        d = b - a
        for i in range(n):
            if d == 0.0:
                rl[i, j] = 0.5
                ru[i, j] = 0.5
            elif is_cost[j]:
                rl[i, j] = (b - hi[i, j]) / d
                ru[i, j] = (b - lo[i, j]) / d
            else:
                rl[i, j] = (lo[i, j] - a) / d
                ru[i, j] = (hi[i, j] - a) / d
    return rl, ru, zmin, zmax


def _kernel_greyness_loops(rl, ru):
    n, m = rl.shape
    k = np.empty((n, m))
    g = np.empty((n, m))
    for i in range(n):
        for j in range(m):
            k[i, j] = (rl[i, j] + ru[i, j]) / 2.0
            g[i, j] = ru[i, j] - rl[i, j]
    return k, g


def _grey_matmul_loops(ak, ag, bk, bg, skip_crisp_zero):
    # C[i, j] = sum_p B[p, j] * A[i, p]; greyness = max_p (B[p, j].g v A[i, p].g)
    n, m = ak.shape
    q = bk.shape[1]
    ck = np.empty((n, q))
    cg = np.empty((n, q))
    for i in range(n):
        for j in range(q):
            acc = 0.0
            grey = 0.0
            for p in range(m):
                acc += bk[p, j] * ak[i, p]
                if skip_crisp_zero and bk[p, j] == 0.0 and bg[p, j] == 0.0:
                    continue
                if bg[p, j] > grey:
                    grey = bg[p, j]
                if ag[i, p] > grey:
                    grey = ag[i, p]
            ck[i, j] = acc
            cg[i, j] = grey
    return ck, cg


def _relative_scores_loops(xk, xg):
    n = xk.shape[0]
    gamma = np.empty(n)
    delta = np.empty(n)
    for i in range(n):
        gamma[i] = 1.0 / (1.0 + xg[i])
        delta[i] = gamma[i] * xk[i]
    return gamma, delta


# ---------------------------------------------------------------------------
# vectorized numpy forms

def _normalize_numpy(lo, hi, is_cost):
    zmin = lo.min(axis=0)
    zmax = hi.max(axis=0)
    d = zmax - zmin
    flat = d == 0.0
    safe = np.where(flat, 1.0, d)
    rl = np.where(is_cost, (zmax - hi) / safe, (lo - zmin) / safe)
    ru = np.where(is_cost, (zmax - lo) / safe, (hi - zmin) / safe)
    rl = np.where(flat, 0.5, rl)
    ru = np.where(flat, 0.5, ru)
    return rl, ru, zmin, zmax


def _kernel_greyness_numpy(rl, ru):
    return (rl + ru) / 2.0, ru - rl


def _grey_matmul_numpy(ak, ag, bk, bg, skip_crisp_zero):
    n, m = ak.shape
    q = bk.shape[1]
    ck = np.zeros((n, q))
    cg = np.zeros((n, q))
    for p in range(m):
        # sequential accumulation over p matches the loop form exactly
        ck += ak[:, p, None] * bk[None, p, :]
        term = np.maximum(bg[None, p, :], ag[:, p, None])
        if skip_crisp_zero:
            live = ~((bk[p] == 0.0) & (bg[p] == 0.0))
            term = np.where(live[None, :], term, 0.0)
        np.maximum(cg, term, out=cg)
    return ck, cg


def _relative_scores_numpy(xk, xg):
    gamma = 1.0 / (1.0 + xg)
    return gamma, gamma * xk


NUMPY = SimpleNamespace(
    name="numpy",
    normalize=_normalize_numpy,
    kernel_greyness=_kernel_greyness_numpy,
    grey_matmul=_grey_matmul_numpy,
    relative_scores=_relative_scores_numpy,
)

if HAVE_NUMBA:
    NUMBA = SimpleNamespace(
        name="numba",
        normalize=njit(cache=True)(_normalize_loops),
        kernel_greyness=njit(cache=True)(_kernel_greyness_loops),
        grey_matmul=njit(cache=True)(_grey_matmul_loops),
        relative_scores=njit(cache=True)(_relative_scores_loops),
    )
else:  # pragma: no cover
    NUMBA = None

BACKENDS = {"numpy": NUMPY}
if NUMBA is not None:
    BACKENDS["numba"] = NUMBA

_active = NUMBA if (NUMBA is not None and not _DISABLED) else NUMPY


def active_backend() -> str:
    return _active.name


def get_backend(name: str | None = None) -> SimpleNamespace:
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; have {sorted(BACKENDS)}") from None


def _as_f64(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


def normalize(lo, hi, is_cost, backend=None):
    """Column-wise range normalization of interval bounds.

    Returns ``(r_lower, r_upper, z_min, z_max)``. Columns with zero range map
    every entry to the crisp midpoint 0.5.
    """
    be = get_backend(backend)
    return be.normalize(_as_f64(lo), _as_f64(hi), np.ascontiguousarray(is_cost, dtype=np.bool_))


def kernel_greyness(rl, ru, backend=None):
    return get_backend(backend).kernel_greyness(_as_f64(rl), _as_f64(ru))


def grey_matmul(ak, ag, bk, bg, skip_crisp_zero=True, backend=None):
    """Grey matrix product ``A B`` with kernel sums and greyness maxima.

    With ``skip_crisp_zero`` a term whose right-hand coefficient is the crisp
    zero ``(0, 0)`` does not contribute to the greyness maximum.
    """
    return get_backend(backend).grey_matmul(
        _as_f64(ak), _as_f64(ag), _as_f64(bk), _as_f64(bg), bool(skip_crisp_zero)
    )


def relative_scores(xk, xg, backend=None):
    return get_backend(backend).relative_scores(_as_f64(xk), _as_f64(xg))


def warmup(backend=None) -> None:
    """Compile the kernels (a no-op on the numpy path) on a tiny input."""
    lo = np.array([[0.0, 1.0], [1.0, 1.0]])
    rl, ru, _, _ = normalize(lo, lo + 1.0, np.array([True, False]), backend)
    k, g = kernel_greyness(rl, ru, backend)
    ck, cg = grey_matmul(k, g, np.eye(2), np.zeros((2, 2)), True, backend)
    relative_scores(ck[:, 0], cg[:, 0], backend)
