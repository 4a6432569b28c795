"""Split Bregman minimizer for the discretized two-phase segmentation energy.

The energy of a region indicator u in [0, 1] for image f with edge weight g
and region averages c1, c2 is

    E(u) = sum g*|grad u|  +  lam * sum ((f - c1)^2 - (f - c2)^2) * u.

Each outer iteration performs, in order: one clamped Jacobi sweep for the
u-subproblem, the closed-form shrinkage for the d-subproblem, the region
average update, the damped Bregman update b += tau*(grad u - d), and an
energy evaluation. Iterations stop when the energy rises above the moving
average of the previous ``avg_window`` values or settles within a relative
tolerance of it (semi-convergence guard), never before ``avg_window + 1``
iterations have completed.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from . import backend, grid
from .grid import VectorField
from .weight import WeightParams, edge_weight


class StopReason(str, Enum):
    ENERGY_RISE = "energy_rise"
    TOLERANCE_MET = "tolerance_met"
    MAX_ITERS = "max_iters"


@dataclass
class SolverParams:
    """Model and iteration parameters.

    lam:          data fidelity weight (higher = less regularization)
    gamma:        quadratic penalty of the split constraint d = grad u
    tau:          Bregman step size
    avg_window:   moving-average length m of the stopping rule
    tol:          relative energy tolerance of the stopping rule
    max_iters:    safety cap on outer iterations
    snapshot_every: observer cadence in iterations (0 = off)
    threshold:    region split level for u (ties go to foreground)
    weight:       edge-stopping weight parameters
    """

    lam: float = 1.0
    gamma: float = 0.1
    tau: float = 0.01
    avg_window: int = 10
    tol: float = 1e-4
    max_iters: int = 10000
    snapshot_every: int = 0
    threshold: float = 0.5
    weight: WeightParams = field(default_factory=WeightParams)

    def __post_init__(self):
        for name in ("lam", "gamma", "tau", "tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.avg_window < 1:
            raise ValueError(f"avg_window must be >= 1, got {self.avg_window}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.snapshot_every < 0:
            raise ValueError(f"snapshot_every must be >= 0, got {self.snapshot_every}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")


@dataclass
class SolverState:
    """Iterate bundle: u in [0,1], split variable d, Bregman variable b."""

    u: np.ndarray
    d: VectorField
    b: VectorField
    c1: float
    c2: float
    energy_trace: list
    iteration: int = 0


@dataclass
class SegmentationResult:
    mask: np.ndarray
    u_final: np.ndarray
    c1: float
    c2: float
    energy_trace: list
    iterations: int
    stop_reason: StopReason
    elapsed_seconds: float


Observer = Callable[[int, np.ndarray, float], None]


def residual_field(f: np.ndarray, c1: float, c2: float) -> np.ndarray:
    """r = (f - c1)^2 - (f - c2)^2 pointwise."""
    r = np.empty_like(f)
    backend.get().residual(f, c1, c2, r)
    return r


def solve_d(u: np.ndarray, b: VectorField, g: np.ndarray,
            gamma: float) -> VectorField:
    """Closed-form d-subproblem: shrink z = grad u + b by g/gamma.

    Returns (z/|z|) * max(|z| - g/gamma, 0), the zero vector where z = 0.
    """
    gu = grid.gradient(u)
    dx = np.empty_like(u)
    dy = np.empty_like(u)
    backend.get().shrink(gu.x + b.x, gu.y + b.y, g, gamma, dx, dy)
    return VectorField(dx, dy)


def jacobi_sweep(u: np.ndarray, rhs: np.ndarray, clamp: bool = True) -> np.ndarray:
    """One Jacobi pass for (div grad)u = rhs, reading only the given u.

    The diagonal at each pixel is its in-grid 4-neighbour count, so the
    fixed point solves the composed-operator equation on the whole grid,
    boundaries included. With ``clamp`` the result is boxed into [0, 1].
    """
    out = np.empty_like(u)
    backend.get().jacobi_sweep(u, rhs, out, clamp)
    return out


def solve_u(state: SolverState, r: np.ndarray, params: SolverParams) -> np.ndarray:
    """Approximate u-subproblem solve: one clamped Jacobi sweep for

        (div grad)u = (lam/gamma) * r + div(d - b).
    """
    w = VectorField(state.d.x - state.b.x, state.d.y - state.b.y)
    rhs = (params.lam / params.gamma) * r + grid.divergence(w)
    return jacobi_sweep(state.u, rhs, clamp=True)


def update_averages(f: np.ndarray, u: np.ndarray, threshold: float):
    """Region means of f over {u >= threshold} and {u < threshold}.

    Returns (c1, c2, n1, n2); an empty region reports its mean as None so
    the caller can retain the previous value instead of dividing by zero.
    """
    s1, n1, s2, n2 = backend.get().region_sums(f, u, threshold)
    c1 = s1 / n1 if n1 else None
    c2 = s2 / n2 if n2 else None
    return c1, c2, n1, n2


def update_bregman(b: VectorField, u_next: np.ndarray, d_next: VectorField,
                   tau: float) -> VectorField:
    """Damped Bregman update: b + tau * (grad u_next - d_next)."""
    gu = grid.gradient(u_next)
    bx = b.x.copy()
    by = b.y.copy()
    backend.get().bregman_update(bx, by, gu.x, gu.y, d_next.x, d_next.y, tau)
    return VectorField(bx, by)


def energy(u: np.ndarray, f: np.ndarray, g: np.ndarray, c1: float, c2: float,
           lam: float) -> float:
    """E(u) = sum g*|grad u| + lam * sum r*u (may be negative)."""
    r = residual_field(f, c1, c2)
    return backend.get().energy_value(u, g, r, lam)


def initialize(f: np.ndarray) -> np.ndarray:
    """Min-max normalization of f; all 0.5 for a constant image."""
    fmin = float(f.min())
    fmax = float(f.max())
    if fmax == fmin:
        return np.full_like(f, 0.5)
    return (f - fmin) / (fmax - fmin)


def should_stop(energy_trace, m: int, tol: float):
    """Evaluate the stopping rule on the energy trace so far.

    Never fires before m+1 iterations have completed (the moving average
    needs m values). Afterwards, with Ebar the mean of the m energies
    preceding the last entry E, stops on E > Ebar (energy rise) or
    |E - Ebar| < tol*|E0| (tolerance met). The scale uses |E0| because the
    discrete energy may be negative.
    """
    k = len(energy_trace) - 1
    if k < m + 1:
        return False, None
    e_bar = sum(energy_trace[k - m:k]) / m
    e_k = energy_trace[k]
    if e_k > e_bar:
        return True, StopReason.ENERGY_RISE
    if abs(e_k - e_bar) < tol * abs(energy_trace[0]):
        return True, StopReason.TOLERANCE_MET
    return False, None


def segment(f: np.ndarray, params: Optional[SolverParams] = None,
            observer: Optional[Observer] = None) -> SegmentationResult:
    """Run the full minimization on an image with values in [0, 1].

    The observer, if given, receives (iteration, read-only u snapshot,
    current energy) every ``params.snapshot_every`` iterations (iteration 0
    included); it must not mutate solver state. A constant image returns
    immediately with an all-background mask.
    """
    t0 = time.perf_counter()
    if params is None:
        params = SolverParams()
    f = grid.as_field(f)
    if f.size == 0:
        raise ValueError("cannot segment an empty field")

    if float(f.max()) == float(f.min()):
        zeros = np.zeros_like(f)
        const = float(f.flat[0])
        return SegmentationResult(
            mask=np.zeros(f.shape, dtype=np.uint8), u_final=zeros,
            c1=const, c2=const, energy_trace=[0.0], iterations=0,
            stop_reason=StopReason.TOLERANCE_MET,
            elapsed_seconds=time.perf_counter() - t0)

    g = edge_weight(f, params.weight)
    state = SolverState(
        u=initialize(f), d=grid.zeros_like(f), b=grid.zeros_like(f),
        c1=0.0, c2=0.0, energy_trace=[])
    c1, c2, _, _ = update_averages(f, state.u, params.threshold)
    state.c1 = c1 if c1 is not None else c2
    state.c2 = c2 if c2 is not None else state.c1
    state.energy_trace.append(
        energy(state.u, f, g, state.c1, state.c2, params.lam))

    def emit(k):
        if observer is not None and params.snapshot_every > 0 \
                and k % params.snapshot_every == 0:
            snap = state.u.copy()
            snap.setflags(write=False)
            observer(k, snap, state.energy_trace[-1])

    emit(0)
    reason = StopReason.MAX_ITERS
    while state.iteration < params.max_iters:
        r = residual_field(f, state.c1, state.c2)
        state.u = solve_u(state, r, params)
        state.d = solve_d(state.u, state.b, g, params.gamma)
        c1, c2, _, _ = update_averages(f, state.u, params.threshold)
        if c1 is not None:
            state.c1 = c1
        if c2 is not None:
            state.c2 = c2
        state.b = update_bregman(state.b, state.u, state.d, params.tau)
        state.energy_trace.append(
            energy(state.u, f, g, state.c1, state.c2, params.lam))
        state.iteration += 1
        emit(state.iteration)
        stop, why = should_stop(state.energy_trace, params.avg_window, params.tol)
        if stop:
            reason = why
            break

    mask = (state.u >= params.threshold).astype(np.uint8)
    return SegmentationResult(
        mask=mask, u_final=state.u, c1=state.c1, c2=state.c2,
        energy_trace=state.energy_trace, iterations=state.iteration,
        stop_reason=reason, elapsed_seconds=time.perf_counter() - t0)
