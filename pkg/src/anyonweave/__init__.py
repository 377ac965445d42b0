"""Braid group representations of unrolled quantum sl2 at q = i, with weave search."""
__version__ = "0.1.0"

from .burau import BurauSpace, burau_generator, squier_form
from .errors import (
    AnyonWeaveError,
    DegenerateBasis,
    DimensionMismatch,
    EmptySpace,
    IndefiniteForm,
    IndexOutOfRange,
    LeakageDetected,
    NonInvertibleBlock,
    SingularAlpha,
    SingularChangeOfBasis,
    UnknownGate,
)
from .fusion import FusionSpace, Path, braid_generator, braid_word_matrix, dimension, enumerate_paths, signature
from .gates import AnyonModel, fibonacci_model, gate, unrolled_model
from .oracle import OracleRep, trace_compare
from .synth import SweepConfig, Weave, best_approx, run_sweep

__all__ = [
    "__version__",
    "AnyonModel", "AnyonWeaveError", "BurauSpace", "DegenerateBasis", "DimensionMismatch",
    "EmptySpace", "FusionSpace", "IndefiniteForm", "IndexOutOfRange", "LeakageDetected",
    "NonInvertibleBlock", "OracleRep", "Path", "SingularAlpha", "SingularChangeOfBasis",
    "SweepConfig", "UnknownGate", "Weave", "best_approx", "braid_generator", "braid_word_matrix",
    "burau_generator", "dimension", "enumerate_paths", "fibonacci_model", "gate", "run_sweep",
    "signature", "squier_form", "trace_compare", "unrolled_model",
]
