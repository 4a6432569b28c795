"""Pure-NumPy implementations of the per-pixel kernels.

Mirrors the signatures of the compiled module ``twophase._kernels``; the
active implementation is chosen by :mod:`twophase.backend`. All arrays are
C-contiguous float64 of identical shape (height, width); x is axis 1 and y
is axis 0.
"""

import numpy as np


def gradient(u, gx, gy):
    """Forward differences, zero at the far edge of each axis."""
    gx[:, :-1] = u[:, 1:] - u[:, :-1]
    gx[:, -1] = 0.0
    gy[:-1, :] = u[1:, :] - u[:-1, :]
    gy[-1, :] = 0.0


def divergence(wx, wy, out):
    """Negated adjoint of the forward-difference gradient.

    Along a 1-pixel axis the gradient is identically zero, so the adjoint
    contribution vanishes there as well.
    """
    out[...] = 0.0
    if wx.shape[1] > 1:
        out[:, 0] = wx[:, 0]
        out[:, 1:-1] = wx[:, 1:-1] - wx[:, :-2]
        out[:, -1] = -wx[:, -2]
    if wy.shape[0] > 1:
        out[0, :] += wy[0, :]
        out[1:-1, :] += wy[1:-1, :] - wy[:-2, :]
        out[-1, :] -= wy[-2, :]


def jacobi_sweep(u, rhs, out, clamp):
    """One simultaneous relaxation pass for (div grad)u = rhs.

    The diagonal at each pixel equals its number of in-grid 4-neighbours
    (4 interior, 3 edge, 2 corner), matching the composed operator exactly.
    Reads only ``u``; writes ``out``. On a 1x1 grid the operator vanishes
    and ``u`` is returned unchanged (modulo clamping).
    """
    nbr = np.zeros_like(u)
    nbr[:, :-1] += u[:, 1:]
    nbr[:, 1:] += u[:, :-1]
    nbr[:-1, :] += u[1:, :]
    nbr[1:, :] += u[:-1, :]
    deg = np.zeros(u.shape)
    deg[:, :-1] += 1.0
    deg[:, 1:] += 1.0
    deg[:-1, :] += 1.0
    deg[1:, :] += 1.0
    if u.size == 1:
        out[...] = u
    else:
        np.divide(nbr - rhs, deg, out=out)
    if clamp:
        np.clip(out, 0.0, 1.0, out=out)


def shrink(zx, zy, g, gamma, dx, dy):
    """Vector soft threshold: (z/|z|) * max(|z| - g/gamma, 0), 0 where z = 0."""
    mag = np.hypot(zx, zy)
    safe = np.where(mag > 0.0, mag, 1.0)
    scale = np.maximum(mag - g / gamma, 0.0) / safe
    np.multiply(zx, scale, out=dx)
    np.multiply(zy, scale, out=dy)


def bregman_update(bx, by, gx, gy, dx, dy, tau):
    """In-place damped update b += tau * (grad u - d)."""
    bx += tau * (gx - dx)
    by += tau * (gy - dy)


def residual(f, c1, c2, out):
    """Pointwise (f - c1)^2 - (f - c2)^2."""
    np.subtract((f - c1) ** 2, (f - c2) ** 2, out=out)


def region_sums(f, u, threshold):
    """Sums and counts of f over {u >= threshold} and its complement."""
    fg = u >= threshold
    n1 = int(np.count_nonzero(fg))
    s1 = float(f[fg].sum())
    return s1, n1, float(f.sum()) - s1, f.size - n1


def energy_value(u, g, r, lam):
    """Total energy: sum of g*|grad u| plus lam * sum of r*u."""
    gx = np.empty_like(u)
    gy = np.empty_like(u)
    gradient(u, gx, gy)
    return float(np.sum(g * np.hypot(gx, gy)) + lam * np.sum(r * u))
