r"""Arithmetic at the fourth root of unity :math:`q = e^{i\pi/2}`.

All brackets are the normalized quantum integers
:math:`[x] = (q^x - q^{-x}) / (q - q^{-1}) = \sin(\pi x / 2)`, which are real.
Functions accept scalars or numpy arrays.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularAlpha

#: Distance to an integer below which a parameter is treated as singular.
DEFAULT_TOL = 1e-9


def q_pow(x):
    r"""Return :math:`q^x = e^{i \pi x / 2}`."""
    return np.exp(0.5j * np.pi * np.asarray(x, dtype=float))[()]


def bracket(x):
    r"""Return the quantum integer :math:`[x] = \sin(\pi x / 2)`."""
    return np.sin(0.5 * np.pi * np.asarray(x, dtype=float))[()]


def curly(x):
    r"""Return the unnormalized bracket :math:`\{x\} = q^x - q^{-x} = 2i [x]`."""
    return 2j * bracket(x)


def mod_dim(alpha: float, tol: float = DEFAULT_TOL) -> float:
    r"""Modified dimension :math:`\mathsf{d}(\alpha) = -1/[\alpha + 1]`.

    Raises
    ------
    SingularAlpha
        If :math:`[\alpha + 1]` is within `tol` of zero, i.e. `alpha` is an odd integer.
    """
    b = bracket(alpha + 1)
    if abs(b) < tol:
        raise SingularAlpha(f"[alpha+1] vanishes at alpha={alpha!r}")
    return float(-1.0 / b)


def is_singular_alpha(alpha: float, tol: float = DEFAULT_TOL) -> bool:
    """True iff `alpha` lies within `tol` of an integer."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return bool(abs(alpha - round(alpha)) < tol)


def require_nonzero_bracket(x: float, what: str, tol: float = DEFAULT_TOL) -> float:
    """Return ``bracket(x)``, raising :class:`SingularAlpha` if it vanishes."""
    b = float(bracket(x))
    if abs(b) < tol:
        raise SingularAlpha(f"bracket [{what}] = [{x:.12g}] vanishes")
    return b
