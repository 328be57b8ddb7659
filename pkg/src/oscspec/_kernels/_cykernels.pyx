# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: Numerov sweeps and branch-continued complex square roots."""

import numpy as np

cdef extern from "complex.h" nogil:
    double complex csqrt(double complex)
    double cabs(double complex)

DEF RESCALE = 1e250


def numerov_count(double[::1] w, double h, double u1, double u2):
    cdef Py_ssize_t M = w.shape[0] - 1
    cdef double hh12 = h * h / 12.0
    cdef double fprev = 1.0 + hh12 * w[1]
    cdef double fcur = 1.0 + hh12 * w[2]
    cdef double fnext, un
    cdef double up = u1, u = u2
    cdef long nodes = 0
    cdef Py_ssize_t i
    if (u1 < 0.0) != (u2 < 0.0) and u1 != 0.0:
        nodes += 1
    for i in range(2, M):
        fnext = 1.0 + hh12 * w[i + 1]
        un = ((12.0 - 10.0 * fcur) * u - fprev * up) / fnext
        if (un < 0.0 and u > 0.0) or (un > 0.0 and u < 0.0):
            nodes += 1
        up = u
        u = un
        fprev = fcur
        fcur = fnext
        if u > RESCALE or u < -RESCALE:
            up *= 1.0 / RESCALE
            u *= 1.0 / RESCALE
    return nodes


def numerov_forward(double[::1] w, double h, double u1, double u2, Py_ssize_t stop):
    cdef double hh12 = h * h / 12.0
    out = np.zeros(stop + 1)
    cdef double[::1] u = out
    cdef Py_ssize_t i
    u[1] = u1
    if stop >= 2:
        u[2] = u2
    for i in range(2, stop):
        u[i + 1] = ((12.0 - 10.0 * (1.0 + hh12 * w[i])) * u[i]
                    - (1.0 + hh12 * w[i - 1]) * u[i - 1]) / (1.0 + hh12 * w[i + 1])
    return out


def numerov_backward(double[::1] w, double h, double u_end, double u_end_minus, Py_ssize_t stop):
    cdef Py_ssize_t M = w.shape[0] - 1
    cdef double hh12 = h * h / 12.0
    out = np.zeros(M - stop + 1)
    cdef double[::1] u = out
    cdef Py_ssize_t i, j
    u[M - stop] = u_end
    if M - stop >= 1:
        u[M - stop - 1] = u_end_minus
    for i in range(M - 1, stop, -1):
        j = i - stop
        u[j - 1] = ((12.0 - 10.0 * (1.0 + hh12 * w[i])) * u[j]
                    - (1.0 + hh12 * w[i + 1]) * u[j + 1]) / (1.0 + hh12 * w[i - 1])
    return out


def continue_sqrt(double complex[::1] p, double complex seed):
    cdef Py_ssize_t n = p.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double complex wv, prev
    cdef Py_ssize_t i
    if n == 0:
        return out
    wv = csqrt(p[0])
    if cabs(wv - seed) > cabs(wv + seed):
        wv = -wv
    o[0] = wv
    prev = wv
    for i in range(1, n):
        wv = csqrt(p[i])
        if cabs(wv - prev) > cabs(wv + prev):
            wv = -wv
        o[i] = wv
        prev = wv
    return out
