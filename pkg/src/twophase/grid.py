"""Dense 2-D fields and discrete differential operators.

A scalar field is a C-contiguous float64 array of shape (height, width):
x is the column index (axis 1) and y is the row index (axis 0), so the
pixel at coordinates (i, j) is ``field[j, i]``. A vector field pairs two
scalar fields of identical shape, one per component.

The gradient uses forward differences with a zero at the far edge of each
axis; the divergence is the negated adjoint of that gradient, so that for
all fields u, w of matching shape

    <grad u, w> = -<u, div w>,

and the Laplacian is exactly the composition div(grad(u)): the 5-point
stencil in the interior, with effective diagonal 3 on edges and 2 at
corners. Every operator returns a new array; inputs are never aliased.
"""

from typing import NamedTuple

import numpy as np

from . import backend


class VectorField(NamedTuple):
    """x- and y-components, two scalar fields of identical shape."""

    x: np.ndarray
    y: np.ndarray


def as_field(values) -> np.ndarray:
    """Coerce to a C-contiguous float64 2-D field."""
    f = np.ascontiguousarray(values, dtype=np.float64)
    if f.ndim != 2:
        raise ValueError(f"field must be 2-D, got shape {f.shape}")
    return f


def zeros_like(u: np.ndarray) -> VectorField:
    return VectorField(np.zeros_like(u), np.zeros_like(u))


def gradient(u: np.ndarray) -> VectorField:
    """Forward-difference gradient of a scalar field.

    The x-component at (i, j) is u[j, i+1] - u[j, i] for i < width-1 and
    0 in the last column; the y-component is the analogue in j.
    """
    u = as_field(u)
    gx = np.empty_like(u)
    gy = np.empty_like(u)
    backend.get().gradient(u, gx, gy)
    return VectorField(gx, gy)


def divergence(w: VectorField) -> np.ndarray:
    """Discrete divergence, the negated adjoint gradient.

    x-contribution: w.x[j, 0] in the first column, w.x[j, i] - w.x[j, i-1]
    in the interior, -w.x[j, width-2] in the last column; y analogous.
    """
    wx = as_field(w.x)
    wy = as_field(w.y)
    if wx.shape != wy.shape:
        raise ValueError(f"component shapes differ: {wx.shape} vs {wy.shape}")
    out = np.empty_like(wx)
    backend.get().divergence(wx, wy, out)
    return out


def laplacian(u: np.ndarray) -> np.ndarray:
    """The composition divergence(gradient(u))."""
    return divergence(gradient(u))
