# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled pair-scan kernels.

Inner loops over all ordered sample pairs (i != j) or over samples x
fixed points.  All functions take C-contiguous float64 arrays and return
(value, i, j); the first maximizer in row-major order wins ties, which
keeps witnesses deterministic and identical to the numpy backend.
"""

from libc.math cimport INFINITY, sqrt


def pair_max_ne(double[:, ::1] x, double[:, ::1] tx):
    """max over ordered pairs i != j of ||Tx_i-Tx_j|| - ||x_i-x_j||."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, diff, v, best = -INFINITY
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s1 = 0.0
            s2 = 0.0
            for a in range(d):
                diff = tx[i, a] - tx[j, a]
                s1 += diff * diff
                diff = x[i, a] - x[j, a]
                s2 += diff * diff
            v = sqrt(s1) - sqrt(s2)
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def pair_max_spc(double[:, ::1] x, double[:, ::1] tx, double k):
    """max over ordered pairs i != j of
    ||Tx_i-Tx_j||^2 - ||x_i-x_j||^2 - k*||(x_i-x_j)-(Tx_i-Tx_j)||^2."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, s3, dt, dx, v, best = -INFINITY
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            for a in range(d):
                dt = tx[i, a] - tx[j, a]
                dx = x[i, a] - x[j, a]
                s1 += dt * dt
                s2 += dx * dx
                dt = dx - dt
                s3 += dt * dt
            v = s1 - s2 - k * s3
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def pair_sup_spc_ratio(double[:, ::1] x, double[:, ::1] tx, double floor):
    """sup over ordered pairs with ||(x_i-x_j)-(Tx_i-Tx_j)|| > floor of
    (||Tx_i-Tx_j||^2 - ||x_i-x_j||^2) / ||(x_i-x_j)-(Tx_i-Tx_j)||^2."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, s3, dt, dx, v, best = -INFINITY
    cdef double floor_sq = floor * floor
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            s1 = 0.0
            s2 = 0.0
            s3 = 0.0
            for a in range(d):
                dt = tx[i, a] - tx[j, a]
                dx = x[i, a] - x[j, a]
                s1 += dt * dt
                s2 += dx * dx
                dt = dx - dt
                s3 += dt * dt
            if s3 <= floor_sq:
                continue
            v = (s1 - s2) / s3
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def fix_max_qne(double[:, ::1] x, double[:, ::1] tx, double[:, ::1] fp):
    """max over samples i and fixed points m of ||Tx_i-y_m|| - ||x_i-y_m||."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], m = fp.shape[0]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, diff, v, best = -INFINITY
    for i in range(n):
        for j in range(m):
            s1 = 0.0
            s2 = 0.0
            for a in range(d):
                diff = tx[i, a] - fp[j, a]
                s1 += diff * diff
                diff = x[i, a] - fp[j, a]
                s2 += diff * diff
            v = sqrt(s1) - sqrt(s2)
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def fix_max_dc(double[:, ::1] x, double[:, ::1] tx, double[:, ::1] fp, double k):
    """max over (i, m) of ||Tx_i-y_m||^2 - ||x_i-y_m||^2 - k*||x_i-Tx_i||^2."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], m = fp.shape[0]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, sr, diff, v, best = -INFINITY
    for i in range(n):
        sr = 0.0
        for a in range(d):
            diff = x[i, a] - tx[i, a]
            sr += diff * diff
        for j in range(m):
            s1 = 0.0
            s2 = 0.0
            for a in range(d):
                diff = tx[i, a] - fp[j, a]
                s1 += diff * diff
                diff = x[i, a] - fp[j, a]
                s2 += diff * diff
            v = s1 - s2 - k * sr
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def fix_sup_dc_ratio(double[:, ::1] x, double[:, ::1] tx, double[:, ::1] fp,
                     double floor):
    """sup over (i, m) with ||x_i-Tx_i|| > floor of
    (||Tx_i-y_m||^2 - ||x_i-y_m||^2) / ||x_i-Tx_i||^2."""
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], m = fp.shape[0]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double s1, s2, sr, diff, v, best = -INFINITY
    cdef double floor_sq = floor * floor
    for i in range(n):
        sr = 0.0
        for a in range(d):
            diff = x[i, a] - tx[i, a]
            sr += diff * diff
        if sr <= floor_sq:
            continue
        for j in range(m):
            s1 = 0.0
            s2 = 0.0
            for a in range(d):
                diff = tx[i, a] - fp[j, a]
                s1 += diff * diff
                diff = x[i, a] - fp[j, a]
                s2 += diff * diff
            v = (s1 - s2) / sr
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj


def fix_max_inner(double[:, ::1] x, double[:, ::1] tx, double[:, ::1] fp,
                  double lam):
    """max over (i, m) of lam*||Tx_i-x_i||^2 - <x_i-Tx_i, x_i-y_m>.

    Nonpositive everywhere means the inner-product inequality
    <x-Tx, x-y> >= lam*||Tx-x||^2 holds on the samples.
    """
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1], m = fp.shape[0]
    cdef Py_ssize_t i, j, a, bi = -1, bj = -1
    cdef double sr, dot, diff, v, best = -INFINITY
    for i in range(n):
        sr = 0.0
        for a in range(d):
            diff = x[i, a] - tx[i, a]
            sr += diff * diff
        for j in range(m):
            dot = 0.0
            for a in range(d):
                dot += (x[i, a] - tx[i, a]) * (x[i, a] - fp[j, a])
            v = lam * sr - dot
            if v > best:
                best = v
                bi = i
                bj = j
    return best, bi, bj
