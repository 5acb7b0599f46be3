"""Band-limited reproducing-kernel models of frequency-domain sound fields."""
from .kernel import KernelSpec, kernel_eval, kernel_matrix, sphere_area
from .reconstruct import FittedModel, evaluate, fit
from .scenario import SampleSet, Scenario
from .spectrum import SpectrumEstimate, direction_grid, estimate_spectrum

__all__ = [
    "KernelSpec",
    "kernel_eval",
    "kernel_matrix",
    "sphere_area",
    "FittedModel",
    "fit",
    "evaluate",
    "SampleSet",
    "Scenario",
    "SpectrumEstimate",
    "direction_grid",
    "estimate_spectrum",
]

__version__ = "0.1.0"
