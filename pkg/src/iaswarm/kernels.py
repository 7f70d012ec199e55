"""Batched interference-leakage kernels.

Every kernel maps a stack of real decision vectors ``X`` (shape ``(P, n)``)
to ``P`` leakage values. Two implementations exist: a numba kernel that
loops over scalars, and a numpy kernel built on batched ``matmul``. Which
one :func:`leakage_batch` dispatches to is decided in :mod:`iaswarm._accel`.

The decision-vector layout is described by a :class:`KernelLayout`; see
:func:`iaswarm.mimo.encode` for the packing convention.
"""
from dataclasses import dataclass

import numpy as np

from . import _accel


@dataclass(frozen=True)
class KernelLayout:
    """Flat description of a scenario plus its channels.

    ``voff[i]`` and ``uoff[i]`` are complex-scalar offsets of ``vec(V_i)``
    and ``vec(U_i^H)`` in the decision vector. Channels are zero-padded to
    ``(K, K, max N, max M)`` and split into real and imaginary planes.
    """
    M: np.ndarray
    N: np.ndarray
    d: np.ndarray
    voff: np.ndarray
    uoff: np.ndarray
    Hre: np.ndarray
    Him: np.ndarray

    @property
    def K(self):
        return int(self.M.shape[0])

    @property
    def n_real(self):
        return int(2 * np.sum((self.M + self.N) * self.d))


def make_layout(M, N, d, H):
    """Build a :class:`KernelLayout` from per-user sizes and a channel grid.

    ``H`` is a K-by-K nested sequence of complex arrays, ``H[i][j]`` of
    shape ``(N[i], M[j])``.
    """
    M = np.asarray(M, dtype=np.int64)
    N = np.asarray(N, dtype=np.int64)
    d = np.asarray(d, dtype=np.int64)
    K = M.shape[0]
    vsz = M * d
    usz = N * d
    voff = np.concatenate(([0], np.cumsum(vsz)[:-1])).astype(np.int64)
    uoff = (np.sum(vsz) + np.concatenate(([0], np.cumsum(usz)[:-1]))).astype(np.int64)
    Hre = np.zeros((K, K, int(N.max()), int(M.max())))
    Him = np.zeros_like(Hre)
    for i in range(K):
        for j in range(K):
            h = np.asarray(H[i][j])
            Hre[i, j, :N[i], :M[j]] = h.real
            Him[i, j, :N[i], :M[j]] = h.imag
    return KernelLayout(M, N, d, voff, uoff, Hre, Him)


def _leakage_batch_py(X, M, N, d, voff, uoff, Hre, Him, normalized, out):
    K = M.shape[0]
    nmax = Hre.shape[2]
    dmax = 0
    for i in range(K):
        if d[i] > dmax:
            dmax = d[i]
    wre = np.empty(nmax)
    wim = np.empty(nmax)
    vscale = np.empty((K, dmax))
    uscale = np.empty((K, dmax))
    for b in range(X.shape[0]):
        x = X[b]
        degenerate = False
        for i in range(K):
            for c in range(d[i]):
                vs = 1.0
                us = 1.0
                if normalized:
                    acc = 0.0
                    base = 2 * (voff[i] + c * M[i])
                    for q in range(2 * M[i]):
                        acc += x[base + q] * x[base + q]
                    if acc < 1e-24:
                        degenerate = True
                    vs = 1.0 / acc if acc > 0.0 else 0.0
                    acc = 0.0
                    for p in range(N[i]):
                        k = 2 * (uoff[i] + p * d[i] + c)
                        acc += x[k] * x[k] + x[k + 1] * x[k + 1]
                    if acc < 1e-24:
                        degenerate = True
                    us = 1.0 / acc if acc > 0.0 else 0.0
                vscale[i, c] = vs
                uscale[i, c] = us
        if degenerate:
            out[b] = np.inf
            continue
        total = 0.0
        for i in range(K):
            for j in range(K):
                if i == j:
                    continue
                for col in range(d[j]):
                    # w = H_ij @ V_j[:, col]
                    vb = 2 * (voff[j] + col * M[j])
                    for p in range(N[i]):
                        sre = 0.0
                        sim = 0.0
                        for q in range(M[j]):
                            hr = Hre[i, j, p, q]
                            hi = Him[i, j, p, q]
                            xr = x[vb + 2 * q]
                            xi = x[vb + 2 * q + 1]
                            sre += hr * xr - hi * xi
                            sim += hr * xi + hi * xr
                        wre[p] = sre
                        wim[p] = sim
                    for row in range(d[i]):
                        # (U_i^H)[row, :] @ w
                        sre = 0.0
                        sim = 0.0
                        for p in range(N[i]):
                            k = 2 * (uoff[i] + p * d[i] + row)
                            ur = x[k]
                            ui = x[k + 1]
                            sre += ur * wre[p] - ui * wim[p]
                            sim += ur * wim[p] + ui * wre[p]
                        total += (sre * sre + sim * sim) * uscale[i, row] * vscale[j, col]
        out[b] = total
    return out


if _accel.USE_NUMBA:
    _leakage_batch_nb = _accel.njit(cache=True)(_leakage_batch_py)
else:
    _leakage_batch_nb = None


def leakage_batch_numba(X, layout, normalized=False):
    if _leakage_batch_nb is None:
        raise RuntimeError("numba backend is not available")
    X = np.ascontiguousarray(X, dtype=np.float64)
    out = np.empty(X.shape[0])
    return _leakage_batch_nb(X, layout.M, layout.N, layout.d, layout.voff,
                             layout.uoff, layout.Hre, layout.Him,
                             bool(normalized), out)


def leakage_batch_numpy(X, layout, normalized=False):
    X = np.asarray(X, dtype=np.float64)
    P = X.shape[0]
    Xc = X[:, 0::2] + 1j * X[:, 1::2]
    K = layout.K
    V, UH = [], []
    for i in range(K):
        m, n_, di = int(layout.M[i]), int(layout.N[i]), int(layout.d[i])
        vo, uo = int(layout.voff[i]), int(layout.uoff[i])
        # column-major vec: reshape (cols, rows) then swap
        V.append(Xc[:, vo:vo + m * di].reshape(P, di, m).transpose(0, 2, 1))
        UH.append(Xc[:, uo:uo + n_ * di].reshape(P, n_, di).transpose(0, 2, 1))
    total = np.zeros(P)
    degenerate = np.zeros(P, dtype=bool)
    if normalized:
        vn = [np.sum(np.abs(v) ** 2, axis=1) for v in V]    # (P, d)
        un = [np.sum(np.abs(u) ** 2, axis=2) for u in UH]   # (P, d)
        for a in vn + un:
            degenerate |= np.any(a < 1e-24, axis=1)
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(K):
            for j in range(K):
                if i == j:
                    continue
                h = layout.Hre[i, j, :layout.N[i], :layout.M[j]] \
                    + 1j * layout.Him[i, j, :layout.N[i], :layout.M[j]]
                r2 = np.abs(UH[i] @ (h @ V[j])) ** 2
                if normalized:
                    r2 = r2 / un[i][:, :, None] / vn[j][:, None, :]
                total += r2.sum(axis=(1, 2))
    total[degenerate] = np.inf
    return total


def leakage_batch(X, layout, normalized=False):
    """Leakage of every row of ``X`` using the active backend."""
    if _accel.USE_NUMBA:
        return leakage_batch_numba(X, layout, normalized)
    return leakage_batch_numpy(X, layout, normalized)
