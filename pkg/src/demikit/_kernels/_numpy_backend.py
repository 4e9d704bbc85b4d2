"""Pure-numpy fallback for the pair-scan kernels.

Mirrors the compiled backend operation for operation: accumulation runs
axis by axis in the same order, reductions keep the first maximizer in
row-major order, so values and witness indices agree bit for bit with
the Cython module.  Pair scans are chunked over rows to bound memory at
O(chunk * n * dim).
"""

from __future__ import annotations

import numpy as np

_CHUNK = 512


def _axis_sumsq(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """sum_d (a-b)^2 with broadcasting, accumulated axis by axis."""
    out = np.zeros(np.broadcast_shapes(a.shape[:-1], b.shape[:-1]))
    for ax in range(a.shape[-1]):
        diff = a[..., ax] - b[..., ax]
        out += diff * diff
    return out


def _scan_update(best, bi, bj, viol, row_offset):
    """Fold one chunk's violation matrix into the running maximum."""
    flat = np.argmax(viol)
    value = viol.flat[flat]
    if value > best:
        i, j = np.unravel_index(flat, viol.shape)
        return float(value), int(i) + row_offset, int(j)
    return best, bi, bj


def pair_max_ne(x: np.ndarray, tx: np.ndarray):
    n = x.shape[0]
    best, bi, bj = -np.inf, -1, -1
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        s1 = _axis_sumsq(tx[start:stop, None, :], tx[None, :, :])
        s2 = _axis_sumsq(x[start:stop, None, :], x[None, :, :])
        viol = np.sqrt(s1) - np.sqrt(s2)
        rows = np.arange(start, stop)
        viol[rows - start, rows] = -np.inf
        best, bi, bj = _scan_update(best, bi, bj, viol, start)
    return best, bi, bj


def _pair_terms(x, tx, start, stop):
    """s1, s2, s3 for the chunk: image, argument and displacement gaps."""
    d = x.shape[1]
    shape = (stop - start, x.shape[0])
    s1 = np.zeros(shape)
    s2 = np.zeros(shape)
    s3 = np.zeros(shape)
    for ax in range(d):
        dt = tx[start:stop, None, ax] - tx[None, :, ax]
        dx = x[start:stop, None, ax] - x[None, :, ax]
        s1 += dt * dt
        s2 += dx * dx
        dd = dx - dt
        s3 += dd * dd
    return s1, s2, s3


def pair_max_spc(x: np.ndarray, tx: np.ndarray, k: float):
    n = x.shape[0]
    best, bi, bj = -np.inf, -1, -1
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        s1, s2, s3 = _pair_terms(x, tx, start, stop)
        viol = s1 - s2 - k * s3
        rows = np.arange(start, stop)
        viol[rows - start, rows] = -np.inf
        best, bi, bj = _scan_update(best, bi, bj, viol, start)
    return best, bi, bj


def pair_sup_spc_ratio(x: np.ndarray, tx: np.ndarray, floor: float):
    n = x.shape[0]
    floor_sq = floor * floor
    best, bi, bj = -np.inf, -1, -1
    for start in range(0, n, _CHUNK):
        stop = min(start + _CHUNK, n)
        s1, s2, s3 = _pair_terms(x, tx, start, stop)
        ok = s3 > floor_sq
        ratio = np.where(ok, (s1 - s2) / np.where(ok, s3, 1.0), -np.inf)
        rows = np.arange(start, stop)
        ratio[rows - start, rows] = -np.inf
        best, bi, bj = _scan_update(best, bi, bj, ratio, start)
    return best, bi, bj


def fix_max_qne(x: np.ndarray, tx: np.ndarray, fp: np.ndarray):
    s1 = _axis_sumsq(tx[:, None, :], fp[None, :, :])
    s2 = _axis_sumsq(x[:, None, :], fp[None, :, :])
    viol = np.sqrt(s1) - np.sqrt(s2)
    return _scan_update(-np.inf, -1, -1, viol, 0)


def _residual_sumsq(x, tx):
    out = np.zeros(x.shape[0])
    for ax in range(x.shape[1]):
        diff = x[:, ax] - tx[:, ax]
        out += diff * diff
    return out


def fix_max_dc(x: np.ndarray, tx: np.ndarray, fp: np.ndarray, k: float):
    s1 = _axis_sumsq(tx[:, None, :], fp[None, :, :])
    s2 = _axis_sumsq(x[:, None, :], fp[None, :, :])
    sr = _residual_sumsq(x, tx)
    viol = s1 - s2 - (k * sr)[:, None]
    return _scan_update(-np.inf, -1, -1, viol, 0)


def fix_sup_dc_ratio(x: np.ndarray, tx: np.ndarray, fp: np.ndarray, floor: float):
    s1 = _axis_sumsq(tx[:, None, :], fp[None, :, :])
    s2 = _axis_sumsq(x[:, None, :], fp[None, :, :])
    sr = _residual_sumsq(x, tx)
    ok = sr > floor * floor
    safe = np.where(ok, sr, 1.0)
    ratio = np.where(ok[:, None], (s1 - s2) / safe[:, None], -np.inf)
    return _scan_update(-np.inf, -1, -1, ratio, 0)


def fix_max_inner(x: np.ndarray, tx: np.ndarray, fp: np.ndarray, lam: float):
    sr = _residual_sumsq(x, tx)
    dot = np.zeros((x.shape[0], fp.shape[0]))
    for ax in range(x.shape[1]):
        dot += ((x[:, ax] - tx[:, ax])[:, None]
                * (x[:, ax][:, None] - fp[None, :, ax]))
    viol = (lam * sr)[:, None] - dot
    return _scan_update(-np.inf, -1, -1, viol, 0)
