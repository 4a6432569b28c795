"""Kernel backend selection.

At import time the compiled extension (``twophase._kernels``) is preferred;
if it is missing the NumPy implementation is used. The environment variable
``TWOPHASE_BACKEND`` overrides the choice (``auto``, ``compiled``,
``numpy``), and :func:`use` switches it at runtime for benchmarks and
backend-parity tests.

``TWOPHASE_THREADS`` caps internal parallelism (0 = auto, meaning all
cores). The current kernels are single-threaded, so any cap is trivially
honoured; the value is parsed and exposed via :func:`thread_cap`.
"""

import os

from . import _kernels_py

try:
    from . import _kernels
except ImportError:
    _kernels = None

# TODO: parallelize the map-style compiled kernels with OpenMP prange and
# route thread_cap() into them.

_IMPLS = {"numpy": _kernels_py}
if _kernels is not None:
    _IMPLS["compiled"] = _kernels


def available():
    """Names of the backends importable in this installation."""
    return sorted(_IMPLS)


def use(name):
    """Force a backend by name ('auto' picks compiled when available)."""
    global _active, _active_name
    if name == "auto":
        name = "compiled" if _kernels is not None else "numpy"
    if name not in _IMPLS:
        raise ValueError(
            f"unknown backend {name!r}; available: {', '.join(available())}"
        )
    _active = _IMPLS[name]
    _active_name = name
    return _active


def get():
    """The active kernel implementation module."""
    return _active


def name():
    """Name of the active backend ('compiled' or 'numpy')."""
    return _active_name


def thread_cap():
    """Maximum threads the kernels may use (from TWOPHASE_THREADS)."""
    raw = os.environ.get("TWOPHASE_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return cap


_active = None
_active_name = ""
try:
    use(os.environ.get("TWOPHASE_BACKEND", "auto").lower())
except ValueError as exc:
    import warnings

    warnings.warn(f"{exc}; falling back to auto", stacklevel=1)
    use("auto")
