# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels; signatures mirror twophase._kernels_py."""

from libc.math cimport sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def gradient(double[:, ::1] u, double[:, ::1] gx, double[:, ::1] gy):
    cdef Py_ssize_t h = u.shape[0], w = u.shape[1]
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(h):
            for i in range(w - 1):
                gx[j, i] = u[j, i + 1] - u[j, i]
            gx[j, w - 1] = 0.0
        for j in range(h - 1):
            for i in range(w):
                gy[j, i] = u[j + 1, i] - u[j, i]
        for i in range(w):
            gy[h - 1, i] = 0.0


def divergence(double[:, ::1] wx, double[:, ::1] wy, double[:, ::1] out):
    cdef Py_ssize_t h = wx.shape[0], w = wx.shape[1]
    cdef Py_ssize_t i, j
    cdef double acc
    with nogil:
        for j in range(h):
            for i in range(w):
                acc = 0.0
                if w > 1:
                    if i == 0:
                        acc += wx[j, 0]
                    elif i < w - 1:
                        acc += wx[j, i] - wx[j, i - 1]
                    else:
                        acc -= wx[j, w - 2]
                if h > 1:
                    if j == 0:
                        acc += wy[0, i]
                    elif j < h - 1:
                        acc += wy[j, i] - wy[j - 1, i]
                    else:
                        acc -= wy[h - 2, i]
                out[j, i] = acc


def jacobi_sweep(double[:, ::1] u, double[:, ::1] rhs, double[:, ::1] out,
                 bint clamp):
    cdef Py_ssize_t h = u.shape[0], w = u.shape[1]
    cdef Py_ssize_t i, j
    cdef double nbr, val
    cdef int deg
    with nogil:
        for j in range(h):
            for i in range(w):
                nbr = 0.0
                deg = 0
                if i > 0:
                    nbr += u[j, i - 1]; deg += 1
                if i < w - 1:
                    nbr += u[j, i + 1]; deg += 1
                if j > 0:
                    nbr += u[j - 1, i]; deg += 1
                if j < h - 1:
                    nbr += u[j + 1, i]; deg += 1
                if deg == 0:
                    val = u[j, i]
                else:
                    val = (nbr - rhs[j, i]) / deg
                if clamp:
                    if val < 0.0:
                        val = 0.0
                    elif val > 1.0:
                        val = 1.0
                out[j, i] = val


def shrink(double[:, ::1] zx, double[:, ::1] zy, double[:, ::1] g,
           double gamma, double[:, ::1] dx, double[:, ::1] dy):
    cdef Py_ssize_t h = zx.shape[0], w = zx.shape[1]
    cdef Py_ssize_t i, j
    cdef double mag, keep
    with nogil:
        for j in range(h):
            for i in range(w):
                mag = sqrt(zx[j, i] * zx[j, i] + zy[j, i] * zy[j, i])
                keep = mag - g[j, i] / gamma
                if mag > 0.0 and keep > 0.0:
                    dx[j, i] = zx[j, i] * (keep / mag)
                    dy[j, i] = zy[j, i] * (keep / mag)
                else:
                    dx[j, i] = 0.0
                    dy[j, i] = 0.0


def bregman_update(double[:, ::1] bx, double[:, ::1] by,
                   double[:, ::1] gx, double[:, ::1] gy,
                   double[:, ::1] dx, double[:, ::1] dy, double tau):
    cdef Py_ssize_t h = bx.shape[0], w = bx.shape[1]
    cdef Py_ssize_t i, j
    with nogil:
        for j in range(h):
            for i in range(w):
                bx[j, i] += tau * (gx[j, i] - dx[j, i])
                by[j, i] += tau * (gy[j, i] - dy[j, i])


def residual(double[:, ::1] f, double c1, double c2, double[:, ::1] out):
    cdef Py_ssize_t h = f.shape[0], w = f.shape[1]
    cdef Py_ssize_t i, j
    cdef double a, b
    with nogil:
        for j in range(h):
            for i in range(w):
                a = f[j, i] - c1
                b = f[j, i] - c2
                out[j, i] = a * a - b * b


def region_sums(double[:, ::1] f, double[:, ::1] u, double threshold):
    cdef Py_ssize_t h = f.shape[0], w = f.shape[1]
    cdef Py_ssize_t i, j, n1 = 0
    cdef double s1 = 0.0, s2 = 0.0
    with nogil:
        for j in range(h):
            for i in range(w):
                if u[j, i] >= threshold:
                    s1 += f[j, i]
                    n1 += 1
                else:
                    s2 += f[j, i]
    return s1, n1, s2, h * w - n1


def energy_value(double[:, ::1] u, double[:, ::1] g, double[:, ::1] r,
                 double lam):
    cdef Py_ssize_t h = u.shape[0], w = u.shape[1]
    cdef Py_ssize_t i, j
    cdef double gx, gy, tv = 0.0, fit = 0.0
    with nogil:
        for j in range(h):
            for i in range(w):
                gx = u[j, i + 1] - u[j, i] if i < w - 1 else 0.0
                gy = u[j + 1, i] - u[j, i] if j < h - 1 else 0.0
                tv += g[j, i] * sqrt(gx * gx + gy * gy)
                fit += r[j, i] * u[j, i]
    return tv + lam * fit
