"""Two-phase grayscale image segmentation.

Minimizes the weighted-TV region-indicator energy with split Bregman
iterations and thresholds the relaxed indicator into a binary mask; an
Otsu baseline, image I/O, and a CLI round out the toolkit. Hot per-pixel
kernels run in a compiled extension when available, with a NumPy fallback
(see :mod:`twophase.backend`).
"""

from . import backend
from .baseline import Histogram, histogram_256, otsu_segment, otsu_threshold
from .errors import (DegenerateImageError, EmptyImageError, ImageFormatError,
                     TwophaseError)
from .grid import VectorField, as_field, divergence, gradient, laplacian
from .imgio import (ImageSource, probe_image, read_image, write_energy_csv,
                    write_field, write_mask)
from .solver import (SegmentationResult, SolverParams, SolverState,
                     StopReason, energy, segment)
from .weight import WeightParams, edge_weight, gaussian_kernel

__version__ = "0.1.0"

__all__ = [
    "DegenerateImageError", "EmptyImageError", "Histogram", "ImageFormatError",
    "ImageSource", "SegmentationResult", "SolverParams", "SolverState",
    "StopReason", "TwophaseError", "VectorField", "WeightParams", "as_field",
    "backend", "divergence", "edge_weight", "energy", "gaussian_kernel",
    "gradient", "histogram_256", "laplacian", "otsu_segment", "otsu_threshold",
    "probe_image", "read_image", "segment", "write_energy_csv", "write_field",
    "write_mask", "__version__",
]
